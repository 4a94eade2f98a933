use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use super::{index_tuples, Idx};
use crate::error::{Error, Result};
use crate::field::{same_field, Elem, FieldSpec};
use crate::poly::Polynomial;

/// Polynomial derivation `sum_i a_i d/dx_i`.
#[derive(Clone, PartialEq, Eq)]
pub struct VectorField {
    field: Arc<FieldSpec>,
    nvars: usize,
    components: Vec<Polynomial>,
}

impl VectorField {
    pub fn new(components: Vec<Polynomial>) -> Result<Self> {
        let first = components.first().ok_or(Error::Precondition("vector field with no components".into()))?;
        let (field, nvars) = (first.field().clone(), first.nvars());
        if components.len() != nvars {
            return Err(Error::VariableMismatch(nvars, components.len()));
        }
        for c in &components {
            if !same_field(c.field(), &field) {
                return Err(Error::FieldMismatch);
            }
            if c.nvars() != nvars {
                return Err(Error::VariableMismatch(nvars, c.nvars()));
            }
        }
        Ok(VectorField { field, nvars, components })
    }

    pub fn zero(field: &Arc<FieldSpec>, nvars: usize) -> Self {
        VectorField { field: field.clone(), nvars, components: vec![Polynomial::zero(field, nvars); nvars] }
    }

    /// `R = sum_i x_i d/dx_i`.
    pub fn radial(field: &Arc<FieldSpec>, nvars: usize) -> Self {
        let components = (0..nvars).map(|i| Polynomial::var(field, nvars, i)).collect();
        VectorField { field: field.clone(), nvars, components }
    }

    /// `d/dx_i`.
    pub fn coordinate(field: &Arc<FieldSpec>, nvars: usize, i: usize) -> Self {
        let mut v = Self::zero(field, nvars);
        v.components[i] = Polynomial::one(field, nvars);
        v
    }

    /// The linear field `x -> M x`, i.e. component `i` is `sum_j M[i][j] x_j`.
    pub fn linear(field: &Arc<FieldSpec>, matrix: &[Vec<Elem>]) -> Self {
        let nvars = matrix.len();
        let components = matrix
            .iter()
            .map(|row| {
                Polynomial::from_terms(
                    field,
                    nvars,
                    row.iter().enumerate().map(|(j, &c)| (crate::poly::Monomial::var(j), c)),
                )
            })
            .collect();
        VectorField { field: field.clone(), nvars, components }
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn component(&self, i: usize) -> &Polynomial {
        &self.components[i]
    }

    pub fn components(&self) -> &[Polynomial] {
        &self.components
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Polynomial::is_zero)
    }

    fn check_compatible(&self, other: &VectorField) -> Result<()> {
        if !same_field(&self.field, &other.field) {
            return Err(Error::FieldMismatch);
        }
        if self.nvars != other.nvars {
            return Err(Error::VariableMismatch(self.nvars, other.nvars));
        }
        Ok(())
    }

    /// `v(f) = sum_i a_i df/dx_i`.
    pub fn apply(&self, f: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero(&self.field, self.nvars);
        for (i, a) in self.components.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let df = f.derivative(i);
            if !df.is_zero() {
                out = &out + &(a * &df);
            }
        }
        out
    }

    pub fn add(&self, other: &VectorField) -> Result<VectorField> {
        self.check_compatible(other)?;
        let components = self.components.iter().zip(&other.components).map(|(a, b)| a + b).collect();
        Ok(VectorField { field: self.field.clone(), nvars: self.nvars, components })
    }

    pub fn scale(&self, c: Elem) -> VectorField {
        let components = self.components.iter().map(|a| a.scale(c)).collect();
        VectorField { field: self.field.clone(), nvars: self.nvars, components }
    }

    pub fn mul_poly(&self, g: &Polynomial) -> VectorField {
        let components = self.components.iter().map(|a| a * g).collect();
        VectorField { field: self.field.clone(), nvars: self.nvars, components }
    }

    /// `[v, w]` with components `v(w_i) - w(v_i)`.
    pub fn lie_bracket(&self, other: &VectorField) -> Result<VectorField> {
        self.check_compatible(other)?;
        let components = (0..self.nvars)
            .map(|i| &self.apply(&other.components[i]) - &other.apply(&self.components[i]))
            .collect();
        Ok(VectorField { field: self.field.clone(), nvars: self.nvars, components })
    }

    /// The derivation `v^p`: component `i` is `v` applied `p` times to `x_i`.
    pub fn pth_power(&self) -> VectorField {
        let p = self.field.characteristic();
        let components = (0..self.nvars)
            .map(|i| {
                let mut g = Polynomial::var(&self.field, self.nvars, i);
                for _ in 0..p {
                    if g.is_zero() {
                        break;
                    }
                    g = self.apply(&g);
                }
                g
            })
            .collect();
        VectorField { field: self.field.clone(), nvars: self.nvars, components }
    }

    /// Coordinates `(component, monomial) -> coefficient`.
    pub fn flatten(&self) -> BTreeMap<(usize, crate::poly::Monomial), Elem> {
        let mut out = BTreeMap::new();
        for (i, c) in self.components.iter().enumerate() {
            for (m, a) in c.terms() {
                out.insert((i, m.clone()), a);
            }
        }
        out
    }
}

impl fmt::Debug for VectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .components
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| format!("({c}) d{i}"))
            .collect();
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

/// Constant multivector `sum_J c_J d_{j1} ^ .. ^ d_{jm}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Multivector {
    field: Arc<FieldSpec>,
    nvars: usize,
    grade: usize,
    terms: BTreeMap<Idx, Elem>,
}

impl Multivector {
    pub fn scalar(field: &Arc<FieldSpec>, nvars: usize, c: Elem) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Idx::new(), c);
        }
        Multivector { field: field.clone(), nvars, grade: 0, terms }
    }

    /// Basis element for an increasing index tuple.
    pub fn basis(field: &Arc<FieldSpec>, nvars: usize, idx: &[u8]) -> Result<Self> {
        if idx.windows(2).any(|w| w[0] >= w[1]) || idx.iter().any(|&i| i as usize >= nvars) {
            return Err(Error::Grade(format!("{idx:?} is not an increasing tuple below {nvars}")));
        }
        let mut terms = BTreeMap::new();
        terms.insert(Idx::from_slice(idx), Elem::ONE);
        Ok(Multivector { field: field.clone(), nvars, grade: idx.len(), terms })
    }

    /// All basis multivectors of a given grade.
    pub fn basis_of_grade(field: &Arc<FieldSpec>, nvars: usize, grade: usize) -> Vec<Self> {
        index_tuples(nvars, grade)
            .into_iter()
            .map(|idx| Self::basis(field, nvars, &idx).unwrap())
            .collect()
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn grade(&self) -> usize {
        self.grade
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Idx, &Elem)> {
        self.terms.iter()
    }
}
