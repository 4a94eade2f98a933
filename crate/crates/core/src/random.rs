//! Seeded random instances. Every generator takes an explicit RNG so runs are
//! reproducible from a recorded seed.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::extalg::{index_tuples, DifferentialForm, VectorField};
use crate::field::{Elem, FieldSpec};
use crate::poly::{monomials_of_degree, Monomial, Polynomial};

pub type Rng64 = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng64 {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn elem(field: &FieldSpec, rng: &mut impl Rng) -> Elem {
    field.elem(rng.gen_range(0..field.order())).unwrap()
}

pub fn nonzero_elem(field: &FieldSpec, rng: &mut impl Rng) -> Elem {
    field.elem(rng.gen_range(1..field.order())).unwrap()
}

/// Sparse random polynomial of total degree at most `max_deg`.
pub fn random_poly(field: &Arc<FieldSpec>, nvars: usize, max_deg: u32, rng: &mut impl Rng) -> Polynomial {
    let nterms = rng.gen_range(0..=6);
    Polynomial::from_terms(
        field,
        nvars,
        (0..nterms).map(|_| {
            let exps: Vec<u32> = (0..nvars).map(|_| rng.gen_range(0..=max_deg)).collect();
            let mut m = Monomial::from_exponents(&exps);
            while m.degree() > max_deg {
                let v = m.max_var().unwrap();
                m = m.lower(v, 1).unwrap();
            }
            (m, elem(field, rng))
        }),
    )
}

/// Dense random homogeneous polynomial of degree `d` (every monomial gets a
/// uniformly random coefficient).
pub fn random_homogeneous(field: &Arc<FieldSpec>, nvars: usize, d: u32, rng: &mut impl Rng) -> Polynomial {
    Polynomial::from_terms(
        field,
        nvars,
        monomials_of_degree(nvars, d).into_iter().map(|m| (m, elem(field, rng))),
    )
}

/// Random invertible `n x n` matrix.
pub fn random_gl(field: &Arc<FieldSpec>, n: usize, rng: &mut impl Rng) -> Vec<Vec<Elem>> {
    loop {
        let m: Vec<Vec<Elem>> = (0..n).map(|_| (0..n).map(|_| elem(field, rng)).collect()).collect();
        if crate::linalg::Matrix::from_rows(field, &m).rank() == n {
            return m;
        }
    }
}

/// Random `q`-form whose coefficients are dense homogeneous of degree `d`
/// (so the form is homogeneous of degree `d + q` unless it vanishes).
pub fn random_homogeneous_form(field: &Arc<FieldSpec>, nvars: usize, q: usize, d: u32, rng: &mut impl Rng) -> DifferentialForm {
    let terms: Vec<_> = index_tuples(nvars, q)
        .into_iter()
        .map(|idx| (idx, random_homogeneous(field, nvars, d, rng)))
        .collect();
    DifferentialForm::from_terms(field, nvars, q, terms).unwrap()
}

/// Sparse random `q`-form with coefficients of degree at most `max_deg`.
pub fn random_form(field: &Arc<FieldSpec>, nvars: usize, q: usize, max_deg: u32, rng: &mut impl Rng) -> DifferentialForm {
    let terms: Vec<_> = index_tuples(nvars, q)
        .into_iter()
        .filter_map(|idx| rng.gen_bool(0.6).then(|| (idx, random_poly(field, nvars, max_deg, rng))))
        .collect();
    DifferentialForm::from_terms(field, nvars, q, terms).unwrap()
}

/// Random vector field with sparse components of degree at most `max_deg`.
pub fn random_vector_field(field: &Arc<FieldSpec>, nvars: usize, max_deg: u32, rng: &mut impl Rng) -> VectorField {
    VectorField::new((0..nvars).map(|_| random_poly(field, nvars, max_deg, rng)).collect()).unwrap()
}
