use super::{Monomial, Polynomial};
use crate::error::{Error, Result};

/// Monic gcd of a nonempty list of polynomials (zeros are ignored).
pub fn multivar_gcd(fs: &[Polynomial]) -> Result<Polynomial> {
    let first = fs.first().ok_or(Error::ZeroInput)?;
    for f in fs {
        first.check_compatible(f)?;
    }
    let mut acc = Polynomial::zero(first.field(), first.nvars());
    for f in fs {
        acc = gcd2(&acc, f);
        if acc.is_constant() && !acc.is_zero() {
            break;
        }
    }
    if acc.is_zero() {
        return Err(Error::ZeroInput);
    }
    Ok(acc)
}

fn gcd2(f: &Polynomial, g: &Polynomial) -> Polynomial {
    if f.is_zero() {
        return g.monic();
    }
    if g.is_zero() {
        return f.monic();
    }
    if f.is_constant() || g.is_constant() {
        return Polynomial::one(f.field(), f.nvars());
    }
    let v = f.max_var().max(g.max_var()).expect("nonconstant");
    if !f.uses_var(v) {
        return gcd2(f, &content(g, v));
    }
    if !g.uses_var(v) {
        return gcd2(&content(f, v), g);
    }
    let (cf, cg) = (content(f, v), content(g, v));
    let c = gcd2(&cf, &cg);
    let mut a = f.exact_div(&cf).expect("content divides");
    let mut b = g.exact_div(&cg).expect("content divides");
    if a.degree_in(v) < b.degree_in(v) {
        std::mem::swap(&mut a, &mut b);
    }
    loop {
        let r = pseudo_rem(&a, &b, v);
        if r.is_zero() {
            break;
        }
        if r.degree_in(v) == Some(0) {
            // b and a are coprime in the v-direction
            return c.monic();
        }
        a = b;
        b = primitive_part(&r, v);
    }
    (&c * &primitive_part(&b, v)).monic()
}

/// Gcd of the coefficients of `f` as a polynomial in `x_var`.
fn content(f: &Polynomial, var: usize) -> Polynomial {
    f.coefficients_in(var)
        .iter()
        .fold(Polynomial::zero(f.field(), f.nvars()), |acc, c| gcd2(&acc, c))
}

fn primitive_part(f: &Polynomial, var: usize) -> Polynomial {
    f.exact_div(&content(f, var)).expect("content divides")
}

/// Pseudo-remainder of `a` by `b` with respect to `x_var`.
fn pseudo_rem(a: &Polynomial, b: &Polynomial, var: usize) -> Polynomial {
    let db = b.degree_in(var).unwrap_or(0);
    let bcoeffs = b.coefficients_in(var);
    let lcb = &bcoeffs[db as usize];
    let mut r = a.clone();
    while let Some(dr) = r.degree_in(var) {
        if r.is_zero() || dr < db {
            break;
        }
        let lcr = r.coefficients_in(var)[dr as usize].clone();
        let shift = Polynomial::term(r.field(), r.nvars(), crate::field::Elem::ONE, Monomial::var_pow(var, dr - db));
        r = &(lcb * &r) - &(&(&lcr * &shift) * b);
    }
    r
}
