//! p-curvature values and the degeneracy divisor, the Cartier operator on
//! closed polynomial 1-forms, and the 2-form `omega ^ C(omega)` of a
//! logarithmic form.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::extalg::{DifferentialForm, VectorField};
use crate::foliation::{tangent_fields, LogPresentation, ProjectiveQForm};
use crate::linalg::Matrix;
use crate::poly::{monomials_of_degree, multivar_gcd, Monomial, Polynomial};

/// p-curvature values on the tangent fields of degree at most `max_degree`.
#[derive(Clone, Debug)]
pub struct PCurvatureReport {
    /// `(v, omega(v^p))` for every basis tangent field `v`.
    pub values: Vec<(VectorField, Polynomial)>,
    /// Monic gcd of the nonzero values; `None` when all vanish.
    pub divisor_poly: Option<Polynomial>,
    pub divisor_degree: Option<u32>,
    /// `deg F - 1 - (deg D - deg F - 2) / p`, when that is an integer.
    pub inferred_pkernel_degree: Option<i64>,
    pub p_closed_up_to_degree: bool,
    pub max_degree: u32,
    pub foliation_degree: usize,
}

/// Evaluates `omega(v^p)` on tangent field bases of every degree up to
/// `max_degree` and extracts the divisorial part of the image.
pub fn p_curvature(omega: &ProjectiveQForm, max_degree: u32) -> Result<PCurvatureReport> {
    if omega.q() != 1 {
        return Err(Error::Grade("p-curvature is computed for 1-forms".into()));
    }
    let form = omega.form();
    if !form.wedge(&form.d())?.is_zero() {
        return Err(Error::Precondition("form is not integrable".into()));
    }
    let fields: Vec<VectorField> = (0..=max_degree).flat_map(|d| tangent_fields(omega, d).fields).collect();
    let values: Vec<Polynomial> = crate::par::map(&fields, |v| {
        form.contract(&v.pth_power()).expect("grades match").as_function()
    });
    let nonzero: Vec<Polynomial> = values.iter().filter(|v| !v.is_zero()).cloned().collect();
    let p = form.field().characteristic() as i64;
    let deg_f = omega.degree() as i64;
    let (divisor_poly, divisor_degree, inferred) = if nonzero.is_empty() {
        (None, None, None)
    } else {
        let g = multivar_gcd(&nonzero)?;
        for v in &nonzero {
            if !g.divides(v) {
                return Err(Error::Invariant("gcd does not divide a p-curvature value".into()));
            }
        }
        let deg = g.total_degree().unwrap();
        let excess = deg as i64 - deg_f - 2;
        let inferred = (excess.rem_euclid(p) == 0).then(|| deg_f - 1 - excess / p);
        (Some(g), Some(deg), inferred)
    };
    Ok(PCurvatureReport {
        values: fields.into_iter().zip(values).collect(),
        p_closed_up_to_degree: divisor_poly.is_none(),
        divisor_poly,
        divisor_degree,
        inferred_pkernel_degree: inferred,
        max_degree,
        foliation_degree: omega.degree(),
    })
}

/// Default degree bound: coefficient degree plus `p`.
pub fn default_max_degree(omega: &ProjectiveQForm) -> u32 {
    (omega.twist() - 1) as u32 + omega.field().characteristic()
}

/// Cartier operator on a closed polynomial 1-form:
/// `C(sum a_i dx_i) = sum (-d^{p-1} a_i / dx_i^{p-1})^{1/p} dx_i`.
pub fn cartier_polynomial(alpha: &DifferentialForm) -> Result<DifferentialForm> {
    if alpha.grade() != 1 {
        return Err(Error::Grade("the Cartier operator is applied to 1-forms".into()));
    }
    if !alpha.d().is_zero() {
        return Err(Error::Precondition("form is not closed".into()));
    }
    let p = alpha.field().characteristic();
    let nvars = alpha.nvars();
    let mut coeffs = Vec::with_capacity(nvars);
    for i in 0..nvars {
        let a = alpha.component(i);
        let c = (-&a.partial_derivative(i, p - 1))
            .pth_root()
            .map_err(|_| Error::Invariant(format!("dx{i} coefficient is not a p-th power after differentiation")))?;
        coeffs.push(c);
    }
    Ok(DifferentialForm::one_form(alpha.field(), nvars, &coeffs))
}

/// `C(sum l_i df_i/f_i) = sum l_i^{1/p} df_i/f_i`.
pub fn cartier_log(l: &LogPresentation) -> LogPresentation {
    let f = l.field();
    l.with_lambdas(l.lambdas().iter().map(|&x| f.frobenius_inv(x)).collect())
}

/// `c_ij = l_i l_j^{1/p} - l_j l_i^{1/p}` for `i < j`.
pub fn cartier_pair_coefficients(l: &LogPresentation) -> BTreeMap<(usize, usize), crate::field::Elem> {
    let f = l.field();
    let lam = l.lambdas();
    let mu: Vec<_> = lam.iter().map(|&x| f.frobenius_inv(x)).collect();
    let mut out = BTreeMap::new();
    for i in 0..lam.len() {
        for j in i + 1..lam.len() {
            out.insert((i, j), f.sub(f.mul(lam[i], mu[j]), f.mul(lam[j], mu[i])));
        }
    }
    out
}

/// The polynomial 2-form `h omega ^ C(omega)` with `h = prod f_i`, computed
/// as `(h omega) ^ (h C(omega))` divided exactly by `h`.
pub fn cartier_transform_form(l: &LogPresentation) -> Result<DifferentialForm> {
    if l.factors().len() < 2 {
        return Err(Error::Precondition("need at least two factors".into()));
    }
    let h = l.product();
    let w = l.polynomial_form().wedge(&cartier_log(l).polynomial_form())?;
    let terms = w
        .terms()
        .map(|(idx, c)| Ok((idx.clone(), c.exact_div(&h).map_err(|_| Error::Invariant("theta does not clear".into()))?)))
        .collect::<Result<Vec<_>>>()?;
    DifferentialForm::from_terms(l.field(), l.nvars(), 2, terms)
}

/// A polynomial `f` with `df = alpha` and no constant term, if one exists.
pub fn exact_primitive(alpha: &DifferentialForm) -> Result<Option<Polynomial>> {
    if alpha.grade() != 1 {
        return Err(Error::Grade("primitives are taken of 1-forms".into()));
    }
    let field = alpha.field();
    let nvars = alpha.nvars();
    if alpha.is_zero() {
        return Ok(Some(Polynomial::zero(field, nvars)));
    }
    let top = alpha.coefficients().iter().filter_map(Polynomial::total_degree).max().unwrap();
    let monos: Vec<Monomial> = (1..=top + 1).flat_map(|d| monomials_of_degree(nvars, d)).collect();
    let target = alpha.flatten();
    let images: Vec<_> = monos
        .iter()
        .map(|m| DifferentialForm::function(&Polynomial::term(field, nvars, crate::field::Elem::ONE, m.clone())).d().flatten())
        .collect();
    let mut labels: Vec<_> = target.keys().cloned().collect();
    for img in &images {
        labels.extend(img.keys().cloned());
    }
    labels.sort();
    labels.dedup();
    if labels.is_empty() {
        return Ok(None);
    }
    let mut m = Matrix::zeros(field, labels.len(), monos.len());
    for (col, img) in images.iter().enumerate() {
        for (k, &v) in img {
            m.set(labels.binary_search(k).unwrap(), col, v);
        }
    }
    let b: Vec<_> = labels.iter().map(|k| target.get(k).copied().unwrap_or(crate::field::Elem::ZERO)).collect();
    Ok(m.solve(&b).map(|x| Polynomial::from_terms(field, nvars, monos.into_iter().zip(x))))
}
