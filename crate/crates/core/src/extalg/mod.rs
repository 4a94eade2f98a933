//! Polynomial differential forms and multivector fields on affine space.
//!
//! Sign conventions: `d(c dx_I) = sum_j (dc/dx_j) dx_j ^ dx_I` (the new index
//! is wedged on the left) and `i_v` contracts the leftmost slot first.

mod fields;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use smallvec::SmallVec;

pub use fields::{Multivector, VectorField};

use crate::error::{Error, Result};
use crate::field::{same_field, Elem, FieldSpec};
use crate::poly::{Monomial, Polynomial};

/// Strictly increasing index tuple `(i_1 < .. < i_q)`.
pub type Idx = SmallVec<[u8; 4]>;

/// All strictly increasing `q`-tuples in `0..nvars`, lexicographically.
pub fn index_tuples(nvars: usize, q: usize) -> Vec<Idx> {
    fn rec(start: usize, nvars: usize, left: usize, cur: &mut Idx, out: &mut Vec<Idx>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for i in start..nvars {
            if nvars - i < left {
                break;
            }
            cur.push(i as u8);
            rec(i + 1, nvars, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, nvars, q, &mut Idx::new(), &mut out);
    out
}

/// Merges two disjoint increasing tuples; returns the merged tuple and whether
/// the shuffle is odd. `None` if they share an index.
pub(crate) fn merge_sign(a: &[u8], b: &[u8]) -> Option<(Idx, bool)> {
    let mut inversions = 0usize;
    for &i in a {
        for &j in b {
            if i == j {
                return None;
            }
            if i > j {
                inversions += 1;
            }
        }
    }
    let mut merged: Idx = a.iter().chain(b.iter()).copied().collect();
    merged.sort_unstable();
    Some((merged, inversions % 2 == 1))
}

/// Polynomial `q`-form `sum_I a_I dx_I` on `A^{nvars}`.
#[derive(Clone)]
pub struct DifferentialForm {
    field: Arc<FieldSpec>,
    nvars: usize,
    q: usize,
    terms: BTreeMap<Idx, Polynomial>,
}

impl PartialEq for DifferentialForm {
    fn eq(&self, other: &Self) -> bool {
        same_field(&self.field, &other.field) && self.nvars == other.nvars && self.q == other.q && self.terms == other.terms
    }
}

impl Eq for DifferentialForm {}

impl DifferentialForm {
    pub fn zero(field: &Arc<FieldSpec>, nvars: usize, q: usize) -> Self {
        DifferentialForm { field: field.clone(), nvars, q, terms: BTreeMap::new() }
    }

    /// The 0-form given by a function.
    pub fn function(f: &Polynomial) -> Self {
        let mut out = Self::zero(f.field(), f.nvars(), 0);
        out.add_term(Idx::new(), f.clone());
        out
    }

    /// `coeff * dx_I`; `idx` need not be sorted (the sign is absorbed).
    pub fn monomial_form(coeff: &Polynomial, idx: &[usize]) -> Self {
        let mut out = Self::zero(coeff.field(), coeff.nvars(), idx.len());
        let mut inversions = 0usize;
        for (a, &i) in idx.iter().enumerate() {
            for &j in &idx[a + 1..] {
                if i == j {
                    return out;
                }
                inversions += (i > j) as usize;
            }
        }
        let mut sorted = idx.to_vec();
        sorted.sort_unstable();
        let odd = inversions % 2 == 1;
        let c = if odd { -coeff } else { coeff.clone() };
        out.add_term(sorted.iter().map(|&i| i as u8).collect(), c);
        out
    }

    /// `dx_{i_1} ^ .. ^ dx_{i_q}` with unit coefficient.
    pub fn basis(field: &Arc<FieldSpec>, nvars: usize, idx: &[usize]) -> Self {
        Self::monomial_form(&Polynomial::one(field, nvars), idx)
    }

    /// `dx_0 ^ .. ^ dx_{nvars-1}`.
    pub fn volume(field: &Arc<FieldSpec>, nvars: usize) -> Self {
        Self::basis(field, nvars, &(0..nvars).collect::<Vec<_>>())
    }

    /// `sum_i coeffs[i] dx_i`.
    pub fn one_form(field: &Arc<FieldSpec>, nvars: usize, coeffs: &[Polynomial]) -> Self {
        assert_eq!(coeffs.len(), nvars);
        let mut out = Self::zero(field, nvars, 1);
        for (i, c) in coeffs.iter().enumerate() {
            out.add_term(Idx::from_slice(&[i as u8]), c.clone());
        }
        out
    }

    pub fn from_terms(field: &Arc<FieldSpec>, nvars: usize, q: usize, terms: impl IntoIterator<Item = (Idx, Polynomial)>) -> Result<Self> {
        let mut out = Self::zero(field, nvars, q);
        for (idx, c) in terms {
            if idx.len() != q || idx.windows(2).any(|w| w[0] >= w[1]) || idx.iter().any(|&i| i as usize >= nvars) {
                return Err(Error::Grade(format!("index tuple {idx:?} is not a strictly increasing {q}-tuple below {nvars}")));
            }
            if !same_field(c.field(), field) {
                return Err(Error::FieldMismatch);
            }
            if c.nvars() != nvars {
                return Err(Error::VariableMismatch(nvars, c.nvars()));
            }
            out.add_term(idx, c);
        }
        Ok(out)
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Form degree `q`.
    pub fn grade(&self) -> usize {
        self.q
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Idx, &Polynomial)> {
        self.terms.iter()
    }

    pub fn coeff(&self, idx: &[u8]) -> Polynomial {
        self.terms.get(idx).cloned().unwrap_or_else(|| Polynomial::zero(&self.field, self.nvars))
    }

    /// Coefficient of `dx_i` in a 1-form.
    pub fn component(&self, i: usize) -> Polynomial {
        self.coeff(&[i as u8])
    }

    /// The nonzero coefficients, in index order.
    pub fn coefficients(&self) -> Vec<Polynomial> {
        self.terms.values().cloned().collect()
    }

    /// The function of a 0-form.
    pub fn as_function(&self) -> Polynomial {
        assert_eq!(self.q, 0, "not a 0-form");
        self.coeff(&[])
    }

    fn add_term(&mut self, idx: Idx, c: Polynomial) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&idx) {
            Some(existing) => {
                let s = &*existing + &c;
                if s.is_zero() {
                    self.terms.remove(&idx);
                } else {
                    *existing = s;
                }
            }
            None => {
                self.terms.insert(idx, c);
            }
        }
    }

    fn check_compatible(&self, other: &DifferentialForm) -> Result<()> {
        if !same_field(&self.field, &other.field) {
            return Err(Error::FieldMismatch);
        }
        if self.nvars != other.nvars {
            return Err(Error::VariableMismatch(self.nvars, other.nvars));
        }
        Ok(())
    }

    pub fn add(&self, other: &DifferentialForm) -> Result<DifferentialForm> {
        self.check_compatible(other)?;
        if self.q != other.q && !self.is_zero() && !other.is_zero() {
            return Err(Error::Grade(format!("cannot add a {}-form and a {}-form", self.q, other.q)));
        }
        let mut out = if self.is_zero() && self.q != other.q { other.clone() } else { self.clone() };
        if !(self.is_zero() && self.q != other.q) {
            for (i, c) in &other.terms {
                out.add_term(i.clone(), c.clone());
            }
        }
        Ok(out)
    }

    pub fn sub(&self, other: &DifferentialForm) -> Result<DifferentialForm> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> DifferentialForm {
        self.scale(self.field.neg(Elem::ONE))
    }

    pub fn scale(&self, c: Elem) -> DifferentialForm {
        let mut out = Self::zero(&self.field, self.nvars, self.q);
        if c.is_zero() {
            return out;
        }
        for (i, a) in &self.terms {
            out.terms.insert(i.clone(), a.scale(c));
        }
        out
    }

    pub fn mul_poly(&self, g: &Polynomial) -> DifferentialForm {
        let mut out = Self::zero(&self.field, self.nvars, self.q);
        for (i, a) in &self.terms {
            out.add_term(i.clone(), a * g);
        }
        out
    }

    /// The form degree `e`: every coefficient is homogeneous of degree `e - q`.
    pub fn homogeneous_degree(&self) -> Result<usize> {
        let mut degree = None;
        for c in self.terms.values() {
            let d = c.homogeneous_degree()?.ok_or(Error::Inhomogeneous)?;
            match degree {
                None => degree = Some(d),
                Some(e) if e != d => return Err(Error::Inhomogeneous),
                _ => {}
            }
        }
        degree.map(|d| d as usize + self.q).ok_or(Error::ZeroInput)
    }

    /// Graded-antisymmetric product.
    pub fn wedge(&self, other: &DifferentialForm) -> Result<DifferentialForm> {
        self.check_compatible(other)?;
        let mut out = Self::zero(&self.field, self.nvars, self.q + other.q);
        for (i, a) in &self.terms {
            for (j, b) in &other.terms {
                if let Some((idx, odd)) = merge_sign(i, j) {
                    let prod = a * b;
                    out.add_term(idx, if odd { -&prod } else { prod });
                }
            }
        }
        Ok(out)
    }

    /// Exterior derivative.
    pub fn d(&self) -> DifferentialForm {
        let mut out = Self::zero(&self.field, self.nvars, self.q + 1);
        for (idx, c) in &self.terms {
            for j in 0..self.nvars {
                if idx.contains(&(j as u8)) {
                    continue;
                }
                let dc = c.derivative(j);
                if dc.is_zero() {
                    continue;
                }
                let (merged, odd) = merge_sign(&[j as u8], idx).unwrap();
                out.add_term(merged, if odd { -&dc } else { dc });
            }
        }
        out
    }

    /// Interior product with a polynomial vector field.
    pub fn contract(&self, v: &VectorField) -> Result<DifferentialForm> {
        if !same_field(&self.field, v.field()) {
            return Err(Error::FieldMismatch);
        }
        if self.nvars != v.nvars() {
            return Err(Error::VariableMismatch(self.nvars, v.nvars()));
        }
        if self.q == 0 {
            return Err(Error::Grade("cannot contract a 0-form with a vector field".into()));
        }
        let mut out = Self::zero(&self.field, self.nvars, self.q - 1);
        for (idx, c) in &self.terms {
            for (pos, &i) in idx.iter().enumerate() {
                let vi = v.component(i as usize);
                if vi.is_zero() {
                    continue;
                }
                let rest: Idx = idx.iter().copied().filter(|&x| x != i).collect();
                let t = c * vi;
                out.add_term(rest, if pos % 2 == 1 { -&t } else { t });
            }
        }
        Ok(out)
    }

    /// Interior product with the constant field `d/dx_j`.
    pub fn contract_coordinate(&self, j: usize) -> DifferentialForm {
        assert!(self.q > 0, "cannot contract a 0-form");
        let mut out = Self::zero(&self.field, self.nvars, self.q - 1);
        for (idx, c) in &self.terms {
            if let Some(pos) = idx.iter().position(|&x| x as usize == j) {
                let rest: Idx = idx.iter().copied().filter(|&x| x as usize != j).collect();
                out.add_term(rest, if pos % 2 == 1 { -c } else { c.clone() });
            }
        }
        out
    }

    /// Interior product with a constant multivector; for a basis term
    /// `d_{j1} ^ .. ^ d_{jm}` (increasing) the highest index is applied first.
    pub fn contract_multivector(&self, v: &Multivector) -> Result<DifferentialForm> {
        if !same_field(&self.field, v.field()) {
            return Err(Error::FieldMismatch);
        }
        if self.nvars != v.nvars() {
            return Err(Error::VariableMismatch(self.nvars, v.nvars()));
        }
        if v.grade() > self.q {
            return Err(Error::Grade(format!("cannot contract a {}-form with a {}-vector", self.q, v.grade())));
        }
        let mut out = Self::zero(&self.field, self.nvars, self.q - v.grade());
        for (idx, &s) in v.terms() {
            let mut t = self.scale(s);
            for &j in idx.iter().rev() {
                t = t.contract_coordinate(j as usize);
            }
            out = out.add(&t)?;
        }
        Ok(out)
    }

    /// Pullback along the linear map `x -> M x`: `x_i -> sum_j M[i][j] x_j`
    /// and `dx_i -> sum_j M[i][j] dx_j`.
    pub fn linear_pullback(&self, matrix: &[Vec<Elem>]) -> DifferentialForm {
        let f = &self.field;
        let dx: Vec<DifferentialForm> = matrix
            .iter()
            .map(|row| {
                let coeffs: Vec<Polynomial> = row.iter().map(|&c| Polynomial::constant(f, self.nvars, c)).collect();
                Self::one_form(f, self.nvars, &coeffs)
            })
            .collect();
        let mut out = Self::zero(f, self.nvars, self.q);
        for (idx, c) in &self.terms {
            let mut t = Self::function(&c.linear_substitute(matrix));
            for &i in idx.iter() {
                t = t.wedge(&dx[i as usize]).unwrap();
            }
            out = out.add(&t).unwrap();
        }
        out
    }

    /// Same form in `nvars` variables (extra variables unused).
    pub fn with_nvars(&self, nvars: usize) -> Result<DifferentialForm> {
        if let Some(&m) = self.terms.keys().flat_map(|i| i.iter()).max() {
            if m as usize >= nvars {
                return Err(Error::Precondition(format!("dx{m} does not exist with {nvars} variables")));
            }
        }
        let mut out = Self::zero(&self.field, nvars, self.q);
        for (i, c) in &self.terms {
            out.terms.insert(i.clone(), c.with_nvars(nvars)?);
        }
        Ok(out)
    }

    /// Coordinates `(index tuple, monomial) -> coefficient`.
    pub fn flatten(&self) -> BTreeMap<(Idx, Monomial), Elem> {
        let mut out = BTreeMap::new();
        for (i, c) in &self.terms {
            for (m, a) in c.terms() {
                out.insert((i.clone(), m.clone()), a);
            }
        }
        out
    }

    /// The scalar `c` with `other = c * self`, if any. Zero forms are only
    /// proportional to zero forms.
    pub fn proportionality(&self, other: &DifferentialForm) -> Option<Elem> {
        if self.q != other.q || self.nvars != other.nvars || !same_field(&self.field, &other.field) {
            return None;
        }
        let (a, b) = (self.flatten(), other.flatten());
        if a.len() != b.len() {
            return None;
        }
        let Some(((k, &va), _)) = a.iter().next().map(|e| (e, ())) else {
            return Some(Elem::ONE);
        };
        let vb = *b.get(k)?;
        let c = self.field.div(vb, va)?;
        a.iter()
            .all(|(key, &x)| b.get(key) == Some(&self.field.mul(x, c)))
            .then_some(c)
    }

    /// True when the two forms differ by a nonzero scalar.
    pub fn is_proportional(&self, other: &DifferentialForm) -> bool {
        self.proportionality(other).is_some_and(|c| !c.is_zero() || self.is_zero())
    }

    /// Values of the coefficients at a point.
    pub fn eval(&self, point: &[Elem]) -> BTreeMap<Idx, Elem> {
        self.terms
            .iter()
            .map(|(i, c)| (i.clone(), c.eval(point)))
            .filter(|(_, v)| !v.is_zero())
            .collect()
    }

    /// True if any coefficient mentions `x_var` or `dx_var` occurs.
    pub fn uses_var(&self, var: usize) -> bool {
        self.terms.iter().any(|(i, c)| i.contains(&(var as u8)) || c.uses_var(var))
    }
}

impl fmt::Display for DifferentialForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(i, c)| {
                let dx: Vec<String> = i.iter().map(|j| format!("dx{j}")).collect();
                if dx.is_empty() {
                    format!("({c})")
                } else {
                    format!("({c}) {}", dx.join("^"))
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

impl fmt::Debug for DifferentialForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-form[{self}]", self.q)
    }
}

/// `i_R d a + d i_R a == e a` for a homogeneous form `a` of degree `e`.
pub fn euler_check(a: &DifferentialForm) -> Result<bool> {
    let e = a.homogeneous_degree()?;
    let r = VectorField::radial(a.field(), a.nvars());
    let lhs_1 = a.d().contract(&r)?;
    let lhs = if a.grade() == 0 {
        lhs_1
    } else {
        lhs_1.add(&a.contract(&r)?.d())?
    };
    let rhs = a.scale(a.field().from_int(e as i64));
    Ok(lhs == rhs)
}

/// `i_{v_1} .. i_{v_m} (dx_0 ^ .. ^ dx_n)` (the last field is applied first),
/// optionally followed by the radial field.
pub fn top_contraction(field: &Arc<FieldSpec>, nvars: usize, vs: &[VectorField], include_radial: bool) -> Result<DifferentialForm> {
    if vs.len() + include_radial as usize > nvars {
        return Err(Error::Grade(format!("{} contractions of a {nvars}-form", vs.len() + include_radial as usize)));
    }
    let mut form = DifferentialForm::volume(field, nvars);
    for v in vs.iter().rev() {
        form = form.contract(v)?;
    }
    if include_radial {
        form = form.contract(&VectorField::radial(field, nvars))?;
    }
    Ok(form)
}

/// Input of [`jouanolou_correspondence`].
#[derive(Clone, Debug)]
pub enum JouanolouInput {
    /// A closed homogeneous `(q+1)`-form.
    Closed(DifferentialForm),
    /// A projective `q`-form (`i_R omega = 0`).
    Projective(DifferentialForm),
}

/// The bijection between projective `q`-forms of degree `e` and closed
/// `(q+1)`-forms of degree `e`, valid when `p` does not divide `e`:
/// `omega -> d omega` and `beta -> e^{-1} i_R beta`.
pub fn jouanolou_correspondence(input: &JouanolouInput) -> Result<DifferentialForm> {
    let form = match input {
        JouanolouInput::Closed(b) | JouanolouInput::Projective(b) => b,
    };
    let e = form.homogeneous_degree()?;
    let f = form.field();
    let e_elem = f.from_int(e as i64);
    if e_elem.is_zero() {
        return Err(Error::Precondition(format!("p = {} divides the degree {e}", f.characteristic())));
    }
    let r = VectorField::radial(f, form.nvars());
    match input {
        JouanolouInput::Closed(beta) => {
            if !beta.d().is_zero() {
                return Err(Error::Precondition("form is not closed".into()));
            }
            Ok(beta.contract(&r)?.scale(f.inv(e_elem).unwrap()))
        }
        JouanolouInput::Projective(omega) => {
            if !omega.contract(&r)?.is_zero() {
                return Err(Error::Precondition("form is not annihilated by the radial field".into()));
            }
            Ok(omega.d())
        }
    }
}
