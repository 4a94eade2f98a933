//! Text syntax: `c*x0^a*x1^b + ...`, terms in descending degrevlex order.
//! A coefficient of one and an exponent of one are omitted.

use std::fmt;
use std::sync::Arc;

use super::{Monomial, Polynomial};
use crate::error::{Error, Result};
use crate::field::{Elem, FieldSpec};

fn format_monomial(m: &Monomial) -> String {
    m.pairs()
        .map(|(v, e)| if e == 1 { format!("x{v}") } else { format!("x{v}^{e}") })
        .collect::<Vec<_>>()
        .join("*")
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (m, c) in self.terms().rev() {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let coeff = self.field.format(c);
            if m.is_one() {
                f.write_str(&coeff)?;
            } else if c == Elem::ONE {
                f.write_str(&format_monomial(m))?;
            } else {
                write!(f, "{coeff}*{}", format_monomial(m))?;
            }
        }
        Ok(())
    }
}

/// Splits at top-level `+`/`-`, keeping the sign with each piece.
fn split_terms(s: &str) -> Result<Vec<(bool, String)>> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    let mut negative = false;
    for ch in s.chars() {
        match ch {
            '[' => {
                depth += 1;
                cur.push(ch);
            }
            ']' => {
                depth -= 1;
                if depth < 0 {
                    return Err(Error::Parse(format!("unbalanced `]` in `{s}`")));
                }
                cur.push(ch);
            }
            '+' | '-' if depth == 0 => {
                let piece = cur.trim().to_string();
                // a sign directly after `^` or `*` is not a term separator
                if piece.ends_with('^') || piece.ends_with('*') {
                    return Err(Error::Parse(format!("dangling operator before `{ch}` in `{s}`")));
                }
                if !piece.is_empty() {
                    out.push((negative, piece));
                    negative = false;
                }
                if ch == '-' {
                    negative = !negative;
                }
                cur.clear();
            }
            c if c.is_whitespace() => {}
            _ => cur.push(ch),
        }
    }
    if depth != 0 {
        return Err(Error::Parse(format!("unbalanced `[` in `{s}`")));
    }
    let piece = cur.trim().to_string();
    if piece.is_empty() {
        return Err(Error::Parse(format!("empty term in `{s}`")));
    }
    out.push((negative, piece));
    Ok(out)
}

impl Polynomial {
    /// Parses the text syntax. Accepts `-` between terms and integer
    /// coefficients outside `[0, p)`.
    pub fn parse(field: &Arc<FieldSpec>, nvars: usize, s: &str) -> Result<Polynomial> {
        if s.trim().is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut out = Polynomial::zero(field, nvars);
        for (negative, term) in split_terms(s)? {
            let mut coeff = Elem::ONE;
            let mut mono = Monomial::one();
            for factor in term.split('*') {
                if factor.is_empty() {
                    return Err(Error::Parse(format!("empty factor in `{term}`")));
                }
                if let Some(rest) = factor.strip_prefix('x') {
                    let (idx, exp) = match rest.split_once('^') {
                        Some((i, e)) => (i, e),
                        None => (rest, "1"),
                    };
                    let idx: usize = idx
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad variable `{factor}`")))?;
                    let exp: u32 = exp
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad exponent in `{factor}`")))?;
                    if idx >= nvars {
                        return Err(Error::Parse(format!("variable x{idx} out of range for {nvars} variables")));
                    }
                    mono = mono.mul(&Monomial::var_pow(idx, exp));
                } else {
                    coeff = field.mul(coeff, field.parse(factor)?);
                }
            }
            if negative {
                coeff = field.neg(coeff);
            }
            out.add_term(mono, coeff);
        }
        Ok(out)
    }

    /// Parses with `nvars` taken as one more than the largest variable index
    /// mentioned (at least `min_vars`).
    pub fn parse_infer(field: &Arc<FieldSpec>, min_vars: usize, s: &str) -> Result<Polynomial> {
        let mut max = None::<usize>;
        let bytes: Vec<char> = s.chars().collect();
        let mut i = 0;
        while i < bytes.len() {
            if bytes[i] == 'x' {
                let mut j = i + 1;
                while j < bytes.len() && bytes[j].is_ascii_digit() {
                    j += 1;
                }
                if let Ok(v) = bytes[i + 1..j].iter().collect::<String>().parse::<usize>() {
                    max = Some(max.map_or(v, |m| m.max(v)));
                }
                i = j;
            } else {
                i += 1;
            }
        }
        let nvars = max.map_or(0, |m| m + 1).max(min_vars);
        Self::parse(field, nvars, s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn canonical_text() {
        let f = FieldSpec::new(5, 1).unwrap();
        let p = Polynomial::parse(&f, 3, "x2 + 3*x0^2*x1 - 1 + x0*x2").unwrap();
        assert_eq!(p.to_string(), "3*x0^2*x1 + x0*x2 + x2 + 4");
        assert_eq!(Polynomial::zero(&f, 3).to_string(), "0");
        let f4 = FieldSpec::new(2, 2).unwrap();
        let q = Polynomial::parse(&f4, 2, "[0,1]*x0 + x1^2").unwrap();
        assert_eq!(q.to_string(), "x1^2 + [0,1]*x0");
    }

    #[test]
    fn parse_errors() {
        let f = FieldSpec::new(5, 1).unwrap();
        assert!(Polynomial::parse(&f, 2, "x3").is_err());
        assert!(Polynomial::parse(&f, 2, "x0 +").is_err());
        assert!(Polynomial::parse(&f, 2, "x0^").is_err());
        assert!(Polynomial::parse(&f, 2, "[1,2]*x0").is_err());
        assert!(Polynomial::parse(&f, 2, "").is_err());
    }

    proptest! {
        #[test]
        fn serializer_round_trips(seed in 0u64..10_000, pk in 0usize..3) {
            let (p, k) = [(5, 1), (2, 2), (3, 2)][pk];
            let f = FieldSpec::new(p, k).unwrap();
            let mut rng = crate::random::rng(seed);
            let poly = crate::random::random_poly(&f, 3, 3, &mut rng);
            let text = poly.to_string();
            let back = Polynomial::parse(&f, 3, &text).unwrap();
            prop_assert_eq!(&back, &poly);
            prop_assert_eq!(back.to_string(), text);
        }
    }
}
