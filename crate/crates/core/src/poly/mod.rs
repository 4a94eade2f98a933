//! Sparse multivariate polynomials over a [`FieldSpec`].

mod gcd;
mod monomial;
mod text;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

pub use gcd::multivar_gcd;
pub use monomial::Monomial;

use crate::error::{Error, Result};
use crate::field::{same_field, Elem, FieldSpec};

/// Polynomial in `x_0, .., x_{nvars-1}`. Terms are kept in a map ordered by
/// degrevlex, so the leading term is the last entry.
#[derive(Clone)]
pub struct Polynomial {
    field: Arc<FieldSpec>,
    nvars: usize,
    terms: BTreeMap<Monomial, Elem>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        same_field(&self.field, &other.field) && self.nvars == other.nvars && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl std::hash::Hash for Polynomial {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.nvars.hash(state);
        for (m, c) in &self.terms {
            m.hash(state);
            c.hash(state);
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
    ExactDiv,
}

impl Polynomial {
    pub fn zero(field: &Arc<FieldSpec>, nvars: usize) -> Self {
        Polynomial { field: field.clone(), nvars, terms: BTreeMap::new() }
    }

    pub fn constant(field: &Arc<FieldSpec>, nvars: usize, c: Elem) -> Self {
        Self::term(field, nvars, c, Monomial::one())
    }

    pub fn one(field: &Arc<FieldSpec>, nvars: usize) -> Self {
        Self::constant(field, nvars, Elem::ONE)
    }

    pub fn var(field: &Arc<FieldSpec>, nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable x{i} out of range for {nvars} variables");
        Self::term(field, nvars, Elem::ONE, Monomial::var(i))
    }

    pub fn term(field: &Arc<FieldSpec>, nvars: usize, c: Elem, m: Monomial) -> Self {
        debug_assert!(m.max_var().is_none_or(|v| v < nvars));
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { field: field.clone(), nvars, terms }
    }

    /// Builds a polynomial from terms, combining repeats and dropping zeros.
    pub fn from_terms(field: &Arc<FieldSpec>, nvars: usize, terms: impl IntoIterator<Item = (Monomial, Elem)>) -> Self {
        let mut p = Self::zero(field, nvars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending degrevlex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, Elem)> + '_ {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    pub fn coeff(&self, m: &Monomial) -> Elem {
        self.terms.get(m).copied().unwrap_or(Elem::ZERO)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, Elem)> {
        self.terms.iter().next_back().map(|(m, &c)| (m, c))
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.keys().next_back()
    }

    pub fn leading_coeff(&self) -> Elem {
        self.leading_term().map_or(Elem::ZERO, |(_, c)| c)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Common total degree of all terms, `None` when the terms disagree.
    pub fn homogeneous_degree(&self) -> Result<Option<u32>> {
        let mut degs = self.terms.keys().map(Monomial::degree);
        let first = degs.next().ok_or(Error::ZeroInput)?;
        Ok(degs.all(|d| d == first).then_some(first))
    }

    /// True when zero or homogeneous of degree `d`.
    pub fn is_homogeneous_of(&self, d: u32) -> bool {
        self.terms.keys().all(|m| m.degree() == d)
    }

    pub fn uses_var(&self, var: usize) -> bool {
        self.terms.keys().any(|m| m.exponent(var) > 0)
    }

    pub fn max_var(&self) -> Option<usize> {
        self.terms.keys().filter_map(Monomial::max_var).max()
    }

    /// Bit set of the variables that occur.
    pub fn support_mask(&self) -> u64 {
        self.terms.keys().fold(0, |m, t| m | t.support_mask())
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Elem) {
        if c.is_zero() {
            return;
        }
        let f = &self.field;
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = f.add(*o.get(), c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub(crate) fn pop_leading(&mut self) -> Option<(Monomial, Elem)> {
        self.terms.pop_last()
    }

    fn check_compatible(&self, other: &Polynomial) -> Result<()> {
        if !same_field(&self.field, &other.field) {
            return Err(Error::FieldMismatch);
        }
        if self.nvars != other.nvars {
            return Err(Error::VariableMismatch(self.nvars, other.nvars));
        }
        Ok(())
    }

    fn assert_compatible(&self, other: &Polynomial) {
        if let Err(e) = self.check_compatible(other) {
            panic!("{e}");
        }
    }

    /// Checked arithmetic; the operator impls panic on mismatched operands
    /// instead.
    pub fn arith(&self, other: &Polynomial, op: PolyOp) -> Result<Polynomial> {
        self.check_compatible(other)?;
        Ok(match op {
            PolyOp::Add => self + other,
            PolyOp::Sub => self - other,
            PolyOp::Mul => self * other,
            PolyOp::ExactDiv => self.exact_div(other)?,
        })
    }

    pub fn scale(&self, c: Elem) -> Polynomial {
        if c.is_zero() {
            return Self::zero(&self.field, self.nvars);
        }
        let f = &self.field;
        Polynomial {
            field: f.clone(),
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, &a)| (m.clone(), f.mul(a, c))).collect(),
        }
    }

    pub fn mul_term(&self, c: Elem, m: &Monomial) -> Polynomial {
        if c.is_zero() {
            return Self::zero(&self.field, self.nvars);
        }
        let f = &self.field;
        Polynomial {
            field: f.clone(),
            nvars: self.nvars,
            terms: self.terms.iter().map(|(t, &a)| (t.mul(m), f.mul(a, c))).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Polynomial {
        let mut acc = Self::one(&self.field, self.nvars);
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Rescales so the degrevlex-leading coefficient is one. Zero stays zero.
    pub fn monic(&self) -> Polynomial {
        match self.field.inv(self.leading_coeff()) {
            Some(inv) => self.scale(inv),
            None => self.clone(),
        }
    }

    /// `m`-fold partial derivative in `x_var`.
    pub fn partial_derivative(&self, var: usize, order: u32) -> Polynomial {
        assert!(var < self.nvars, "variable x{var} out of range");
        let f = &self.field;
        let mut out = Self::zero(f, self.nvars);
        for (m, &c) in &self.terms {
            let e = m.exponent(var);
            if e < order {
                continue;
            }
            // falling factorial e (e-1) .. (e-order+1), reduced mod p
            let mut factor = Elem::ONE;
            for j in 0..order {
                factor = f.mul(factor, f.from_int((e - j) as i64));
                if factor.is_zero() {
                    break;
                }
            }
            if factor.is_zero() {
                continue;
            }
            out.add_term(m.lower(var, order).unwrap(), f.mul(c, factor));
        }
        out
    }

    pub fn derivative(&self, var: usize) -> Polynomial {
        self.partial_derivative(var, 1)
    }

    /// The `g` with `g^p = self`, computed term by term with the inverse
    /// Frobenius on coefficients.
    pub fn pth_root(&self) -> Result<Polynomial> {
        let f = &self.field;
        let p = f.characteristic();
        let mut out = Self::zero(f, self.nvars);
        for (m, &c) in &self.terms {
            let root = m.pth_root(p).ok_or(Error::NotPthPower)?;
            out.add_term(root, f.frobenius_inv(c));
        }
        Ok(out)
    }

    /// Quotient and remainder of multivariate division by a single divisor.
    pub fn div_rem(&self, divisor: &Polynomial) -> Result<(Polynomial, Polynomial)> {
        self.check_compatible(divisor)?;
        let (lm, lc) = divisor.leading_term().ok_or(Error::DivisionByZero)?;
        let (lm, lc_inv) = (lm.clone(), self.field.inv(lc).unwrap());
        let f = &self.field;
        let mut rest = self.clone();
        let mut quot = Self::zero(f, self.nvars);
        let mut rem = Self::zero(f, self.nvars);
        while let Some((m, c)) = rest.pop_leading() {
            match m.div(&lm) {
                Some(t) => {
                    let coef = f.mul(c, lc_inv);
                    for (dm, &dc) in divisor.terms.iter().rev().skip(1) {
                        rest.add_term(dm.mul(&t), f.neg(f.mul(coef, dc)));
                    }
                    quot.add_term(t, coef);
                }
                None => rem.add_term(m, c),
            }
        }
        Ok((quot, rem))
    }

    /// `self / divisor`, failing unless the division is exact.
    pub fn exact_div(&self, divisor: &Polynomial) -> Result<Polynomial> {
        let (q, r) = self.div_rem(divisor)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::InexactDivision)
        }
    }

    pub fn divides(&self, other: &Polynomial) -> bool {
        matches!(other.div_rem(self), Ok((_, r)) if r.is_zero())
    }

    pub fn eval(&self, point: &[Elem]) -> Elem {
        assert_eq!(point.len(), self.nvars);
        let f = &self.field;
        let mut acc = Elem::ZERO;
        for (m, &c) in &self.terms {
            let mut t = c;
            for (v, e) in m.pairs() {
                t = f.mul(t, f.pow(point[v], e as u64));
            }
            acc = f.add(acc, t);
        }
        acc
    }

    /// Substitute `x_i -> sum_j matrix[i][j] x_j` (the pullback by the linear
    /// map with that matrix). `matrix` has `nvars` rows.
    pub fn linear_substitute(&self, matrix: &[Vec<Elem>]) -> Polynomial {
        assert_eq!(matrix.len(), self.nvars);
        let f = &self.field;
        let images: Vec<Polynomial> = matrix
            .iter()
            .map(|row| Polynomial::from_terms(f, self.nvars, row.iter().enumerate().map(|(j, &c)| (Monomial::var(j), c))))
            .collect();
        let mut out = Self::zero(f, self.nvars);
        for (m, &c) in &self.terms {
            let mut t = Self::constant(f, self.nvars, c);
            for (v, e) in m.pairs() {
                t = &t * &images[v].pow(e);
            }
            out = &out + &t;
        }
        out
    }

    /// Same polynomial viewed in `nvars` variables; fails if a variable past
    /// the new range is used.
    pub fn with_nvars(&self, nvars: usize) -> Result<Polynomial> {
        if let Some(v) = self.max_var() {
            if v >= nvars {
                return Err(Error::Precondition(format!("x{v} does not exist with {nvars} variables")));
            }
        }
        Ok(Polynomial { field: self.field.clone(), nvars, terms: self.terms.clone() })
    }

    /// Coefficients of the powers of `x_var`: entry `i` multiplies `x_var^i`.
    pub fn coefficients_in(&self, var: usize) -> Vec<Polynomial> {
        let mut out: Vec<Polynomial> = Vec::new();
        for (m, &c) in &self.terms {
            let (rest, e) = m.split_var(var);
            let e = e as usize;
            if out.len() <= e {
                out.resize(e + 1, Self::zero(&self.field, self.nvars));
            }
            out[e].add_term(rest, c);
        }
        out
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.exponent(var)).max()
    }

    /// Every exponent of every variable in `vars` is divisible by `p`.
    pub fn is_pth_power_in(&self, vars: &[usize]) -> bool {
        let p = self.field.characteristic();
        self.terms.keys().all(|m| vars.iter().all(|&v| m.exponent(v) % p == 0))
    }
}

/// All monomials of total degree `d` in `nvars` variables, in descending
/// degrevlex order.
pub fn monomials_of_degree(nvars: usize, d: u32) -> Vec<Monomial> {
    fn rec(var: usize, nvars: usize, left: u32, acc: &mut Vec<(usize, u32)>, out: &mut Vec<Monomial>) {
        if var + 1 == nvars {
            acc.push((var, left));
            out.push(Monomial::from_pairs(acc.iter().copied()));
            acc.pop();
            return;
        }
        for e in (0..=left).rev() {
            acc.push((var, e));
            rec(var + 1, nvars, left - e, acc, out);
            acc.pop();
        }
    }
    if nvars == 0 {
        return if d == 0 { vec![Monomial::one()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    rec(0, nvars, d, &mut Vec::new(), &mut out);
    out.sort_by(|a, b| b.cmp(a));
    out
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &'a Polynomial) -> Polynomial {
        self.assert_compatible(rhs);
        let (big, small) = if self.terms.len() >= rhs.terms.len() { (self, rhs) } else { (rhs, self) };
        let mut out = big.clone();
        for (m, &c) in &small.terms {
            out.add_term(m.clone(), c);
        }
        out
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &'a Polynomial) -> Polynomial {
        self.assert_compatible(rhs);
        let mut out = self.clone();
        for (m, &c) in &rhs.terms {
            out.add_term(m.clone(), self.field.neg(c));
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        self.scale(self.field.neg(Elem::ONE))
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &'a Polynomial) -> Polynomial {
        self.assert_compatible(rhs);
        let f = &self.field;
        let mut out = Polynomial::zero(f, self.nvars);
        for (ma, &ca) in &self.terms {
            for (mb, &cb) in &rhs.terms {
                out.add_term(ma.mul(mb), f.mul(ca, cb));
            }
        }
        out
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: Polynomial) -> Polynomial {
        &self + &rhs
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Polynomial) -> Polynomial {
        &self - &rhs
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}
