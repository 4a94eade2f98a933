use std::sync::Arc;

use crate::extalg::DifferentialForm;
use crate::field::FieldSpec;
use crate::poly::Polynomial;

pub fn poly(field: &Arc<FieldSpec>, nvars: usize, s: &str) -> Polynomial {
    Polynomial::parse(field, nvars, s).unwrap()
}

/// 1-form `sum_i coeffs[i] dx_i`.
pub fn one_form(field: &Arc<FieldSpec>, nvars: usize, coeffs: &[&str]) -> DifferentialForm {
    let polys: Vec<Polynomial> = coeffs.iter().map(|c| poly(field, nvars, c)).collect();
    DifferentialForm::one_form(field, nvars, &polys)
}
