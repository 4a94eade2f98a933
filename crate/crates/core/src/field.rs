//! Finite fields `F_p` and `F_{p^k}` for `k <= 4`.
//!
//! Elements are stored as their canonical integer encoding
//! `c_0 + c_1 p + ... + c_{k-1} p^{k-1}`, where `c_0 + c_1 t + ... ` is the
//! residue class modulo the defining polynomial. Multiplication goes through
//! discrete log / exp tables built once per field.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest supported field order.
pub const MAX_ORDER: u64 = 1 << 20;

/// Largest supported extension degree.
pub const MAX_EXTENSION: u32 = 4;

/// Canonical encoding of a field element inside a known [`FieldSpec`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Elem(pub(crate) u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// The integer encoding `sum c_i p^i`.
    #[inline]
    pub fn index(self) -> u32 {
        self.0
    }
}

/// A finite field `F_{p^k}` presented as `F_p[t] / (modulus)`.
pub struct FieldSpec {
    p: u32,
    k: u32,
    order: u32,
    /// Monic modulus, low degree first, length `k + 1`. Empty for `k = 1`.
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldSpec")
            .field("p", &self.p)
            .field("k", &self.k)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.k == other.k && self.modulus == other.modulus
    }
}

impl Eq for FieldSpec {}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

// Dense polynomials over F_p used only while setting up a field.
fn trim(mut a: Vec<u32>) -> Vec<u32> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn poly_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let b = trim(b.to_vec());
    let mut r = trim(a.to_vec());
    let lead_inv = inv_mod(*b.last().expect("nonzero divisor"), p);
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let c = (*r.last().unwrap() as u64 * lead_inv as u64 % p as u64) as u32;
        for (i, &bi) in b.iter().enumerate() {
            let sub = (c as u64 * bi as u64 % p as u64) as u32;
            r[shift + i] = (r[shift + i] + p - sub) % p;
        }
        r = trim(r);
    }
    r
}

fn inv_mod(a: u32, p: u32) -> u32 {
    pow_mod(a, p - 2, p)
}

fn pow_mod(a: u32, mut e: u32, p: u32) -> u32 {
    let (mut base, mut acc) = (a as u64 % p as u64, 1u64);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    acc as u32
}

/// Exhaustive trial division by every monic polynomial of degree `1..=deg/2`.
fn is_irreducible(modulus: &[u32], p: u32) -> bool {
    let deg = modulus.len() - 1;
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for idx in 0..count {
            let mut cand = Vec::with_capacity(d + 1);
            let mut rest = idx;
            for _ in 0..d {
                cand.push((rest % p as u64) as u32);
                rest /= p as u64;
            }
            cand.push(1);
            if poly_rem(modulus, &cand, p).is_empty() {
                return false;
            }
        }
    }
    true
}

impl FieldSpec {
    /// Prime field or extension with the deterministic default modulus: the
    /// smallest monic irreducible polynomial when coefficient lists
    /// `[c_0, .., c_{k-1}]` are compared lexicographically.
    pub fn new(p: u32, k: u32) -> Result<Arc<FieldSpec>> {
        Self::check_params(p, k)?;
        if k == 1 {
            return Self::build(p, 1, Vec::new());
        }
        let count = (p as u64).pow(k);
        for idx in 0..count {
            // c_0 is the most significant digit of the search order
            let mut coeffs = vec![0u32; k as usize];
            let mut rest = idx;
            for slot in coeffs.iter_mut().rev() {
                *slot = (rest % p as u64) as u32;
                rest /= p as u64;
            }
            coeffs.push(1);
            if is_irreducible(&coeffs, p) {
                return Self::build(p, k, coeffs);
            }
        }
        Err(Error::Field(format!("no irreducible polynomial of degree {k} over F_{p}")))
    }

    /// Extension defined by an explicit monic modulus `[c_0, .., c_{k-1}, 1]`.
    pub fn with_modulus(p: u32, modulus: &[u32]) -> Result<Arc<FieldSpec>> {
        if modulus.len() < 2 {
            return Self::new(p, 1);
        }
        let k = (modulus.len() - 1) as u32;
        Self::check_params(p, k)?;
        if modulus.iter().any(|&c| c >= p) || *modulus.last().unwrap() != 1 {
            return Err(Error::Field("modulus must be monic with coefficients in [0, p)".into()));
        }
        if k == 1 {
            return Self::new(p, 1);
        }
        if !is_irreducible(modulus, p) {
            return Err(Error::Field(format!("modulus {modulus:?} is reducible over F_{p}")));
        }
        Self::build(p, k, modulus.to_vec())
    }

    fn check_params(p: u32, k: u32) -> Result<()> {
        if !is_prime(p as u64) {
            return Err(Error::Field(format!("{p} is not prime")));
        }
        if k == 0 || k > MAX_EXTENSION {
            return Err(Error::Field(format!("extension degree {k} outside 1..={MAX_EXTENSION}")));
        }
        if (p as u64).checked_pow(k).is_none_or(|q| q > MAX_ORDER) {
            return Err(Error::Field(format!("field of order {p}^{k} is too large")));
        }
        Ok(())
    }

    fn build(p: u32, k: u32, modulus: Vec<u32>) -> Result<Arc<FieldSpec>> {
        let order = p.pow(k);
        let mut spec = FieldSpec { p, k, order, modulus, exp: Vec::new(), log: Vec::new() };
        if order == 2 {
            spec.exp = vec![1];
            spec.log = vec![0, 0];
            return Ok(Arc::new(spec));
        }
        let group = order - 1;
        for g in 2..order {
            let mut exp = Vec::with_capacity(group as usize);
            let mut x = 1u32;
            let mut primitive = true;
            for i in 0..group {
                if i > 0 && x == 1 {
                    primitive = false;
                    break;
                }
                exp.push(x);
                x = spec.slow_mul(x, g);
            }
            if primitive && x == 1 {
                let mut log = vec![0u32; order as usize];
                for (i, &v) in exp.iter().enumerate() {
                    log[v as usize] = i as u32;
                }
                spec.exp = exp;
                spec.log = log;
                return Ok(Arc::new(spec));
            }
        }
        Err(Error::Field("no primitive element found".into()))
    }

    fn digits(&self, a: u32) -> [u32; MAX_EXTENSION as usize] {
        let mut out = [0u32; MAX_EXTENSION as usize];
        let mut rest = a;
        for slot in out.iter_mut().take(self.k as usize) {
            *slot = rest % self.p;
            rest /= self.p;
        }
        out
    }

    fn undigits(&self, d: &[u32]) -> u32 {
        d.iter().take(self.k as usize).rev().fold(0, |acc, &c| acc * self.p + c)
    }

    fn slow_mul(&self, a: u32, b: u32) -> u32 {
        if self.k == 1 {
            return (a as u64 * b as u64 % self.p as u64) as u32;
        }
        let (da, db) = (self.digits(a), self.digits(b));
        let k = self.k as usize;
        let mut prod = vec![0u32; 2 * k - 1];
        for i in 0..k {
            for j in 0..k {
                prod[i + j] = ((prod[i + j] as u64 + da[i] as u64 * db[j] as u64) % self.p as u64) as u32;
            }
        }
        let r = poly_rem(&prod, &self.modulus, self.p);
        self.undigits(&r)
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Monic modulus `[c_0, .., c_{k-1}, 1]`; empty for prime fields.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn zero(&self) -> Elem {
        Elem::ZERO
    }

    pub fn one(&self) -> Elem {
        Elem::ONE
    }

    /// Image of an integer under `Z -> F_p -> F_{p^k}`.
    pub fn from_int(&self, n: i64) -> Elem {
        Elem(n.rem_euclid(self.p as i64) as u32)
    }

    pub fn from_coords(&self, coords: &[u32]) -> Result<Elem> {
        if coords.len() != self.k as usize || coords.iter().any(|&c| c >= self.p) {
            return Err(Error::Field(format!(
                "element needs {} coordinates in [0, {})",
                self.k, self.p
            )));
        }
        Ok(Elem(self.undigits(coords)))
    }

    pub fn coords(&self, a: Elem) -> Vec<u32> {
        self.digits(a.0)[..self.k as usize].to_vec()
    }

    /// Element from its integer encoding; `None` when out of range.
    pub fn elem(&self, index: u32) -> Option<Elem> {
        (index < self.order).then_some(Elem(index))
    }

    /// The class of `t` (a generator of the extension); `None` for prime fields.
    pub fn gen(&self) -> Option<Elem> {
        (self.k > 1).then_some(Elem(self.p))
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.order).map(Elem)
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        if self.k == 1 {
            let s = a.0 + b.0;
            return Elem(if s >= self.p { s - self.p } else { s });
        }
        let (da, db) = (self.digits(a.0), self.digits(b.0));
        let mut out = [0u32; MAX_EXTENSION as usize];
        for i in 0..self.k as usize {
            let s = da[i] + db[i];
            out[i] = if s >= self.p { s - self.p } else { s };
        }
        Elem(self.undigits(&out))
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        if self.k == 1 {
            return Elem(if a.0 == 0 { 0 } else { self.p - a.0 });
        }
        let da = self.digits(a.0);
        let mut out = [0u32; MAX_EXTENSION as usize];
        for i in 0..self.k as usize {
            out[i] = if da[i] == 0 { 0 } else { self.p - da[i] };
        }
        Elem(self.undigits(&out))
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.0 == 0 || b.0 == 0 {
            return Elem::ZERO;
        }
        if self.k == 1 {
            return Elem((a.0 as u64 * b.0 as u64 % self.p as u64) as u32);
        }
        let group = self.order - 1;
        let s = self.log[a.0 as usize] + self.log[b.0 as usize];
        Elem(self.exp[(if s >= group { s - group } else { s }) as usize])
    }

    pub fn inv(&self, a: Elem) -> Option<Elem> {
        if a.is_zero() {
            return None;
        }
        let group = self.order - 1;
        let l = self.log[a.0 as usize];
        Some(Elem(self.exp[((group - l) % group) as usize]))
    }

    pub fn div(&self, a: Elem, b: Elem) -> Option<Elem> {
        self.inv(b).map(|bi| self.mul(a, bi))
    }

    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        if e == 0 {
            return Elem::ONE;
        }
        if a.is_zero() {
            return Elem::ZERO;
        }
        let group = (self.order - 1) as u64;
        let l = self.log[a.0 as usize] as u64;
        Elem(self.exp[((l * (e % group)) % group) as usize])
    }

    /// `a^p`.
    pub fn frobenius(&self, a: Elem) -> Elem {
        self.pow(a, self.p as u64)
    }

    /// The unique `b` with `b^p = a`, namely `a^{p^{k-1}}`.
    pub fn frobenius_inv(&self, a: Elem) -> Elem {
        self.pow(a, (self.p as u64).pow(self.k - 1))
    }

    /// True when `a` lies in the prime field.
    pub fn is_prime_field_elem(&self, a: Elem) -> bool {
        a.0 < self.p
    }

    /// Canonical text: bare integer for `k = 1`, `[c0,c1,..]` otherwise.
    pub fn format(&self, a: Elem) -> String {
        if self.k == 1 {
            return a.0.to_string();
        }
        let parts: Vec<String> = self.coords(a).iter().map(|c| c.to_string()).collect();
        format!("[{}]", parts.join(","))
    }

    /// Parses the canonical text (integers are reduced mod `p`; negative
    /// integers are accepted).
    pub fn parse(&self, s: &str) -> Result<Elem> {
        let s = s.trim();
        if let Some(inner) = s.strip_prefix('[') {
            let inner = inner
                .strip_suffix(']')
                .ok_or_else(|| Error::Parse(format!("unterminated element literal `{s}`")))?;
            let coords: Vec<u32> = inner
                .split(',')
                .map(|c| {
                    c.trim()
                        .parse::<i64>()
                        .map(|v| v.rem_euclid(self.p as i64) as u32)
                        .map_err(|_| Error::Parse(format!("bad coordinate `{c}` in `{s}`")))
                })
                .collect::<Result<_>>()?;
            return self.from_coords(&coords);
        }
        s.parse::<i64>()
            .map(|v| self.from_int(v))
            .map_err(|_| Error::Parse(format!("bad field element `{s}`")))
    }
}

/// Same field, either the very same allocation or an equal presentation.
pub fn same_field(a: &Arc<FieldSpec>, b: &Arc<FieldSpec>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// A field element bundled with its field, for standalone checked arithmetic.
#[derive(Clone, Debug)]
pub struct FieldElement {
    spec: Arc<FieldSpec>,
    value: Elem,
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        same_field(&self.spec, &other.spec) && self.value == other.value
    }
}

impl Eq for FieldElement {}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl FieldElement {
    pub fn new(spec: &Arc<FieldSpec>, value: Elem) -> Self {
        FieldElement { spec: spec.clone(), value }
    }

    pub fn from_int(spec: &Arc<FieldSpec>, n: i64) -> Self {
        Self::new(spec, spec.from_int(n))
    }

    pub fn parse(spec: &Arc<FieldSpec>, s: &str) -> Result<Self> {
        Ok(Self::new(spec, spec.parse(s)?))
    }

    pub fn spec(&self) -> &Arc<FieldSpec> {
        &self.spec
    }

    pub fn value(&self) -> Elem {
        self.value
    }

    pub fn coords(&self) -> Vec<u32> {
        self.spec.coords(self.value)
    }

    pub fn arith(&self, other: &FieldElement, op: FieldOp) -> Result<FieldElement> {
        if !same_field(&self.spec, &other.spec) {
            return Err(Error::FieldMismatch);
        }
        let f = &self.spec;
        let (a, b) = (self.value, other.value);
        let value = match op {
            FieldOp::Add => f.add(a, b),
            FieldOp::Sub => f.sub(a, b),
            FieldOp::Mul => f.mul(a, b),
            FieldOp::Div => f.div(a, b).ok_or(Error::DivisionByZero)?,
        };
        Ok(Self::new(f, value))
    }

    pub fn frobenius(&self, inverse: bool) -> FieldElement {
        let v = if inverse {
            self.spec.frobenius_inv(self.value)
        } else {
            self.spec.frobenius(self.value)
        };
        Self::new(&self.spec, v)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.spec.format(self.value))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(f: &Arc<FieldSpec>, s: &str) -> FieldElement {
        FieldElement::parse(f, s).unwrap()
    }

    #[test]
    fn prime_field_arith() {
        let f5 = FieldSpec::new(5, 1).unwrap();
        assert_eq!(el(&f5, "3").arith(&el(&f5, "4"), FieldOp::Mul).unwrap(), el(&f5, "2"));
        let f7 = FieldSpec::new(7, 1).unwrap();
        // brute-force inverse table of F_7
        let inv5 = (1..7).find(|x| (5 * x) % 7 == 1).unwrap();
        assert_eq!(inv5, 3);
        let q = el(&f7, "3").arith(&el(&f7, "5"), FieldOp::Div).unwrap();
        assert_eq!(q, FieldElement::from_int(&f7, (3 * inv5) % 7));
        assert_eq!(q, el(&f7, "2"));
    }

    #[test]
    fn f4_modulus_and_products() {
        let f4 = FieldSpec::new(2, 2).unwrap();
        assert_eq!(f4.modulus(), &[1, 1, 1]);
        let t = el(&f4, "[0,1]");
        assert_eq!(t.arith(&t, FieldOp::Mul).unwrap(), el(&f4, "[1,1]"));
    }

    #[test]
    fn frobenius_examples() {
        let f3 = FieldSpec::new(3, 1).unwrap();
        assert_eq!(el(&f3, "2").frobenius(false), el(&f3, "2"));
        let f4 = FieldSpec::new(2, 2).unwrap();
        let t = el(&f4, "[0,1]");
        let t1 = el(&f4, "[1,1]");
        assert_eq!(t.frobenius(false), t1);
        assert_eq!(t1.frobenius(false), t);
        assert_eq!(t.frobenius(true), t1);
        // exhaustive check that b^2 = t singles out b = t + 1
        let roots: Vec<_> = f4.elements().filter(|&b| f4.mul(b, b) == t.value()).collect();
        assert_eq!(roots, vec![t1.value()]);
    }

    #[test]
    fn errors() {
        let f5 = FieldSpec::new(5, 1).unwrap();
        let f7 = FieldSpec::new(7, 1).unwrap();
        assert!(matches!(el(&f5, "1").arith(&el(&f7, "1"), FieldOp::Add), Err(Error::FieldMismatch)));
        assert!(matches!(el(&f5, "1").arith(&el(&f5, "0"), FieldOp::Div), Err(Error::DivisionByZero)));
        assert!(FieldSpec::new(4, 1).is_err());
        assert!(FieldSpec::new(2, 5).is_err());
        assert!(FieldSpec::with_modulus(2, &[1, 0, 1]).is_err());
    }

    #[test]
    fn frobenius_is_field_automorphism_exhaustive() {
        for &(p, k) in &[(2, 1), (2, 2), (2, 3), (2, 4), (3, 1), (3, 2), (3, 3), (3, 4), (5, 1), (5, 2), (7, 2)] {
            let f = FieldSpec::new(p, k).unwrap();
            if f.order() > 81 {
                continue;
            }
            for a in f.elements() {
                assert_eq!(f.frobenius(f.frobenius_inv(a)), a);
                assert_eq!(f.frobenius_inv(f.frobenius(a)), a);
                for b in f.elements() {
                    assert_eq!(f.frobenius(f.mul(a, b)), f.mul(f.frobenius(a), f.frobenius(b)));
                    assert_eq!(f.frobenius(f.add(a, b)), f.add(f.frobenius(a), f.frobenius(b)));
                }
            }
        }
    }

    #[test]
    fn field_axioms_exhaustive() {
        for &(p, k) in &[(2, 1), (2, 2), (2, 3), (2, 4), (3, 1), (3, 2), (5, 1), (5, 2), (7, 1), (11, 1), (13, 1), (17, 1), (19, 1), (23, 1)] {
            let f = FieldSpec::new(p, k).unwrap();
            assert!(f.order() <= 25);
            for a in f.elements() {
                assert_eq!(f.add(a, f.neg(a)), Elem::ZERO);
                assert_eq!(f.mul(a, Elem::ONE), a);
                if !a.is_zero() {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), Elem::ONE);
                }
                for b in f.elements() {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    assert_eq!(f.mul(a, b), f.slow_mul(a.0, b.0).into_elem());
                    for c in f.elements() {
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                        assert_eq!(f.mul(a, f.mul(b, c)), f.mul(f.mul(a, b), c));
                        assert_eq!(f.add(a, f.add(b, c)), f.add(f.add(a, b), c));
                    }
                }
            }
        }
    }

    trait IntoElem {
        fn into_elem(self) -> Elem;
    }
    impl IntoElem for u32 {
        fn into_elem(self) -> Elem {
            Elem(self)
        }
    }

    #[test]
    fn text_round_trip() {
        let f9 = FieldSpec::new(3, 2).unwrap();
        for a in f9.elements() {
            assert_eq!(f9.parse(&f9.format(a)).unwrap(), a);
        }
        let f5 = FieldSpec::new(5, 1).unwrap();
        assert_eq!(f5.parse("-1").unwrap(), f5.from_int(4));
    }
}
