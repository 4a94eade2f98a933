//! Projective forms, the integrability and saturation predicates, the
//! constructors of the component families, tangent fields and first-order
//! deformations.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::extalg::{index_tuples, top_contraction, DifferentialForm, Idx, Multivector, VectorField};
use crate::field::{same_field, Elem, FieldSpec};
use crate::ideals::zero_locus_codim;
use crate::linalg::{kernel_of_images, rank_of_images, EchelonBasis};
use crate::poly::{monomials_of_degree, multivar_gcd, Monomial, Polynomial};
use crate::random::{nonzero_elem, random_homogeneous};

/// Homogeneous `q`-form on `A^{n+1}` killed by the radial field; its degree
/// as a distribution is `d = e - q - 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectiveQForm {
    form: DifferentialForm,
    n: usize,
    q: usize,
    d: usize,
}

impl ProjectiveQForm {
    pub fn new(form: DifferentialForm) -> Result<Self> {
        let q = form.grade();
        if q == 0 || form.nvars() == 0 {
            return Err(Error::Precondition("a projective form has positive degree".into()));
        }
        let e = form.homogeneous_degree()?;
        if e < q + 1 {
            return Err(Error::Precondition(format!("form degree {e} is below {}", q + 1)));
        }
        let r = VectorField::radial(form.field(), form.nvars());
        if !form.contract(&r)?.is_zero() {
            return Err(Error::Precondition("form is not annihilated by the radial field".into()));
        }
        Ok(ProjectiveQForm { n: form.nvars() - 1, q, d: e - q - 1, form })
    }

    pub fn form(&self) -> &DifferentialForm {
        &self.form
    }

    pub fn into_form(self) -> DifferentialForm {
        self.form
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        self.form.field()
    }

    /// Dimension of the ambient projective space.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> usize {
        self.q
    }

    /// Degree `d` of the distribution.
    pub fn degree(&self) -> usize {
        self.d
    }

    /// Form degree `e = d + q + 1`.
    pub fn twist(&self) -> usize {
        self.d + self.q + 1
    }
}

/// Residues and factors of a logarithmic 1-form `prod f_i * sum l_i df_i/f_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogPresentation {
    field: Arc<FieldSpec>,
    lambdas: Vec<Elem>,
    factors: Vec<Polynomial>,
}

impl LogPresentation {
    /// Checks shapes, homogeneity and pairwise coprimality; the residue
    /// constraint is checked by [`construct_log`].
    pub fn new(lambdas: Vec<Elem>, factors: Vec<Polynomial>) -> Result<Self> {
        if factors.is_empty() || lambdas.len() != factors.len() {
            return Err(Error::Precondition(format!("{} residues for {} factors", lambdas.len(), factors.len())));
        }
        let field = factors[0].field().clone();
        let nvars = factors[0].nvars();
        for f in &factors {
            if !same_field(f.field(), &field) {
                return Err(Error::FieldMismatch);
            }
            if f.nvars() != nvars {
                return Err(Error::VariableMismatch(nvars, f.nvars()));
            }
            match f.homogeneous_degree()? {
                Some(d) if d >= 1 => {}
                Some(_) => return Err(Error::Precondition("constant factor".into())),
                None => return Err(Error::Inhomogeneous),
            }
        }
        for i in 0..factors.len() {
            for j in i + 1..factors.len() {
                if !multivar_gcd(&[factors[i].clone(), factors[j].clone()])?.is_constant() {
                    return Err(Error::Precondition(format!("factors {i} and {j} share a factor")));
                }
            }
        }
        Ok(LogPresentation { field, lambdas, factors })
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }

    pub fn lambdas(&self) -> &[Elem] {
        &self.lambdas
    }

    pub fn factors(&self) -> &[Polynomial] {
        &self.factors
    }

    pub fn nvars(&self) -> usize {
        self.factors[0].nvars()
    }

    pub fn degrees(&self) -> Vec<u32> {
        self.factors.iter().map(|f| f.total_degree().unwrap()).collect()
    }

    /// `sum d_i l_i` in the field.
    pub fn residue_sum(&self) -> Elem {
        let f = &self.field;
        self.lambdas
            .iter()
            .zip(self.degrees())
            .fold(Elem::ZERO, |acc, (&l, d)| f.add(acc, f.mul(l, f.from_int(d as i64))))
    }

    pub fn satisfies_residue_constraint(&self) -> bool {
        self.residue_sum().is_zero()
    }

    /// `h = prod f_i`.
    pub fn product(&self) -> Polynomial {
        self.factors
            .iter()
            .fold(Polynomial::one(&self.field, self.nvars()), |acc, f| &acc * f)
    }

    /// Same factors with new residues.
    pub fn with_lambdas(&self, lambdas: Vec<Elem>) -> LogPresentation {
        assert_eq!(lambdas.len(), self.factors.len());
        LogPresentation { field: self.field.clone(), lambdas, factors: self.factors.clone() }
    }

    /// The polynomial 1-form `sum_i l_i (prod_{j != i} f_j) df_i`, with no
    /// constraint checks.
    pub fn polynomial_form(&self) -> DifferentialForm {
        let nvars = self.nvars();
        let mut out = DifferentialForm::zero(&self.field, nvars, 1);
        for (i, (&l, fi)) in self.lambdas.iter().zip(&self.factors).enumerate() {
            if l.is_zero() {
                continue;
            }
            let others = self
                .factors
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .fold(Polynomial::one(&self.field, nvars), |acc, (_, f)| &acc * f);
            let dfi = DifferentialForm::function(fi).d();
            out = out.add(&dfi.mul_poly(&others.scale(l))).unwrap();
        }
        out
    }
}

/// Membership data for the defining conditions of foliations and
/// distributions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FoliationReport {
    pub is_projective: bool,
    pub is_saturated: bool,
    pub is_locally_decomposable: bool,
    pub is_integrable: bool,
    pub degree: i64,
    pub sing_codim: usize,
}

/// Checks projectiveness, saturation and the Pluecker conditions with all
/// constant basis `(q-1)`-vectors.
pub fn validate(omega: &DifferentialForm, q: usize, n: usize) -> Result<FoliationReport> {
    if omega.grade() != q {
        return Err(Error::Grade(format!("expected a {q}-form, got a {}-form", omega.grade())));
    }
    if omega.nvars() != n + 1 {
        return Err(Error::VariableMismatch(n + 1, omega.nvars()));
    }
    if q == 0 {
        return Err(Error::Grade("0-forms do not define distributions".into()));
    }
    let e = omega.homogeneous_degree()?;
    let field = omega.field();
    let is_projective = omega.contract(&VectorField::radial(field, n + 1))?.is_zero();
    let sing_codim = zero_locus_codim(&omega.coefficients())?;
    let domega = omega.d();
    let mut decomposable = true;
    let mut integrable = true;
    for v in Multivector::basis_of_grade(field, n + 1, q - 1) {
        let iv = omega.contract_multivector(&v)?;
        if decomposable && !iv.wedge(omega)?.is_zero() {
            decomposable = false;
        }
        if integrable && !iv.wedge(&domega)?.is_zero() {
            integrable = false;
        }
        if !decomposable {
            break;
        }
    }
    Ok(FoliationReport {
        is_projective,
        is_saturated: sing_codim >= 2,
        is_locally_decomposable: decomposable,
        is_integrable: decomposable && integrable,
        degree: e as i64 - q as i64 - 1,
        sing_codim,
    })
}

/// `F = sum_{i=1}^{n} x_{i-1} x_i^{pe-1}` in `n + 1` variables.
pub fn jouanolou_polynomial(field: &Arc<FieldSpec>, n: usize, e: u32) -> Polynomial {
    let pe = field.characteristic() * e;
    Polynomial::from_terms(
        field,
        n + 1,
        (1..=n).map(|i| (Monomial::from_pairs([(i - 1, 1), (i, pe - 1)]), Elem::ONE)),
    )
}

/// `dF` for a homogeneous `F` of degree divisible by `p`.
pub fn construct_closed(f: &Polynomial) -> Result<ProjectiveQForm> {
    let deg = f.homogeneous_degree()?.ok_or(Error::Inhomogeneous)?;
    let p = f.field().characteristic();
    if deg % p != 0 {
        return Err(Error::Precondition(format!("p = {p} does not divide deg F = {deg}")));
    }
    let df = DifferentialForm::function(f).d();
    if df.is_zero() {
        return Err(Error::Precondition("dF = 0: F is a p-th power".into()));
    }
    ProjectiveQForm::new(df)
}

/// The logarithmic form of a presentation satisfying `sum d_i l_i = 0`.
pub fn construct_log(l: &LogPresentation, n: usize) -> Result<ProjectiveQForm> {
    if l.nvars() != n + 1 {
        return Err(Error::VariableMismatch(n + 1, l.nvars()));
    }
    if !l.satisfies_residue_constraint() {
        return Err(Error::Precondition("residues violate sum d_i l_i = 0".into()));
    }
    let omega = l.polynomial_form();
    if omega.is_zero() {
        return Err(Error::Precondition("logarithmic form vanishes".into()));
    }
    ProjectiveQForm::new(omega)
}

/// A projective 1-form on the plane viewed on `P^n` through the projection
/// to the first three coordinates.
pub fn construct_linear_pullback(beta: &ProjectiveQForm, n: usize) -> Result<ProjectiveQForm> {
    if beta.q() != 1 {
        return Err(Error::Grade("pullback expects a 1-form".into()));
    }
    if n < 2 {
        return Err(Error::Precondition("target dimension below 2".into()));
    }
    let form = beta.form();
    if (3..form.nvars()).any(|v| form.uses_var(v)) {
        return Err(Error::Precondition("form involves variables beyond x2".into()));
    }
    let shrunk = form.with_nvars(3)?;
    ProjectiveQForm::new(shrunk.with_nvars(n + 1)?)
}

/// The two linear fields generating the exceptional example.
pub fn exceptional_fields(field: &Arc<FieldSpec>) -> (VectorField, VectorField) {
    let x = |i: usize| Polynomial::var(field, 4, i);
    let z = Polynomial::zero(field, 4);
    let vs = VectorField::new(vec![
        z.clone(),
        x(1).scale(field.from_int(-1)),
        x(2).scale(field.from_int(-2)),
        x(3).scale(field.from_int(-3)),
    ])
    .unwrap();
    let vn = VectorField::new(vec![z, x(0), x(1), x(2)]).unwrap();
    (vs, vn)
}

/// `i_R i_{v_s} i_{v_n} (dx_0 ^ .. ^ dx_3)`.
pub fn construct_exceptional(field: &Arc<FieldSpec>) -> ProjectiveQForm {
    let (vs, vn) = exceptional_fields(field);
    let omega = top_contraction(field, 4, &[vs, vn], true).unwrap();
    ProjectiveQForm::new(omega).expect("the exceptional form is projective")
}

/// Coefficient slots `(dx_I, monomial)` of `q`-forms with degree-`c`
/// coefficients.
fn form_slots(nvars: usize, q: usize, c: u32) -> Vec<(Idx, Monomial)> {
    let monos = monomials_of_degree(nvars, c);
    index_tuples(nvars, q)
        .into_iter()
        .flat_map(|idx| monos.iter().map(move |m| (idx.clone(), m.clone())))
        .collect()
}

fn assemble_form(field: &Arc<FieldSpec>, nvars: usize, q: usize, slots: &[(Idx, Monomial)], v: &[Elem]) -> DifferentialForm {
    let mut coeffs: BTreeMap<Idx, Vec<(Monomial, Elem)>> = BTreeMap::new();
    for ((idx, m), &c) in slots.iter().zip(v) {
        if !c.is_zero() {
            coeffs.entry(idx.clone()).or_default().push((m.clone(), c));
        }
    }
    DifferentialForm::from_terms(
        field,
        nvars,
        q,
        coeffs.into_iter().map(|(idx, t)| (idx, Polynomial::from_terms(field, nvars, t))),
    )
    .unwrap()
}

/// Basis of the projective `q`-forms of degree `e` on `A^{nvars}` (kernel of
/// `i_R`), in a fixed deterministic order.
pub fn projective_forms_basis(field: &Arc<FieldSpec>, nvars: usize, q: usize, e: usize) -> Vec<DifferentialForm> {
    if q == 0 || e < q {
        return Vec::new();
    }
    let slots = form_slots(nvars, q, (e - q) as u32);
    let r = VectorField::radial(field, nvars);
    let images: Vec<_> = slots
        .iter()
        .map(|(idx, m)| {
            let t = Polynomial::term(field, nvars, Elem::ONE, m.clone());
            let idx_usize: Vec<usize> = idx.iter().map(|&i| i as usize).collect();
            DifferentialForm::monomial_form(&t, &idx_usize).contract(&r).unwrap().flatten()
        })
        .collect();
    kernel_of_images(field, &images)
        .into_iter()
        .map(|v| assemble_form(field, nvars, q, &slots, &v))
        .collect()
}

/// Dimension of the closed projective 1-forms of degree `e`.
pub fn closed_projective_dimension(field: &Arc<FieldSpec>, nvars: usize, e: usize) -> usize {
    let basis = projective_forms_basis(field, nvars, 1, e);
    let images: Vec<_> = basis.iter().map(|b| b.d().flatten()).collect();
    basis.len() - rank_of_images(field, &images)
}

/// Basis of the tangent fields with homogeneous components of degree `D`.
/// The first entries are the multiples `g R` (flagged trivial).
#[derive(Clone, Debug)]
pub struct TangentFields {
    pub fields: Vec<VectorField>,
    pub trivial: Vec<bool>,
}

impl TangentFields {
    pub fn len(&self) -> usize {
        self.fields.len()
    }

    pub fn is_empty(&self) -> bool {
        self.fields.is_empty()
    }

    pub fn num_trivial(&self) -> usize {
        self.trivial.iter().filter(|&&t| t).count()
    }
}

/// Vector fields `v` of degree `D` with `i_v omega = 0`.
pub fn tangent_fields(omega: &ProjectiveQForm, degree: u32) -> TangentFields {
    let form = omega.form();
    let field = form.field();
    let nvars = form.nvars();
    let monos = monomials_of_degree(nvars, degree);
    let slots: Vec<(usize, Monomial)> = (0..nvars).flat_map(|i| monos.iter().map(move |m| (i, m.clone()))).collect();
    let slot_index: BTreeMap<(usize, Monomial), usize> = slots.iter().cloned().enumerate().map(|(k, s)| (s, k)).collect();
    let images: Vec<_> = slots
        .iter()
        .map(|(i, m)| {
            let comp = Polynomial::term(field, nvars, Elem::ONE, m.clone());
            form.contract(&VectorField::coordinate(field, nvars, *i).mul_poly(&comp)).unwrap().flatten()
        })
        .collect();
    let kernel = kernel_of_images(field, &images);

    let to_field = |v: &[Elem]| {
        let comps = (0..nvars)
            .map(|i| {
                Polynomial::from_terms(
                    field,
                    nvars,
                    slots.iter().zip(v).filter(|((j, _), _)| *j == i).map(|((_, m), &c)| (m.clone(), c)),
                )
            })
            .collect();
        VectorField::new(comps).unwrap()
    };

    let mut span = EchelonBasis::new(field);
    let mut out = TangentFields { fields: Vec::new(), trivial: Vec::new() };
    if degree >= 1 {
        for g in monomials_of_degree(nvars, degree - 1) {
            let mut v = vec![Elem::ZERO; slots.len()];
            for i in 0..nvars {
                v[slot_index[&(i, g.mul(&Monomial::var(i)))]] = Elem::ONE;
            }
            if span.insert(v.clone()) {
                out.fields.push(to_field(&v));
                out.trivial.push(true);
            }
        }
    }
    for v in kernel {
        if span.insert(v.clone()) {
            out.fields.push(to_field(&v));
            out.trivial.push(false);
        }
    }
    out
}

/// `dim { eta projective of the same degree : omega ^ d eta + eta ^ d omega = 0 }`.
pub fn deformation_tangent_space(omega: &ProjectiveQForm) -> Result<usize> {
    if omega.q() != 1 {
        return Err(Error::Grade("deformations are computed for 1-forms".into()));
    }
    let form = omega.form();
    let field = form.field();
    let basis = projective_forms_basis(field, form.nvars(), 1, omega.twist());
    let domega = form.d();
    let images: Vec<_> = basis
        .iter()
        .map(|eta| {
            form.wedge(&eta.d())
                .and_then(|a| a.add(&eta.wedge(&domega)?))
                .map(|a| a.flatten())
        })
        .collect::<Result<_>>()?;
    Ok(basis.len() - rank_of_images(field, &images))
}

/// Random degree-`d` foliation on the plane: `i_R i_X (dx_0 ^ dx_1 ^ dx_2)` for
/// a random homogeneous field `X` of degree `d`. Resamples until nonzero and
/// saturated.
pub fn random_plane_foliation(field: &Arc<FieldSpec>, d: u32, rng: &mut impl Rng) -> ProjectiveQForm {
    loop {
        let x = VectorField::new((0..3).map(|_| random_homogeneous(field, 3, d, rng)).collect()).unwrap();
        let beta = top_contraction(field, 3, &[x], true).unwrap();
        if beta.is_zero() {
            continue;
        }
        if zero_locus_codim(&beta.coefficients()).unwrap() >= 2 {
            return ProjectiveQForm::new(beta).unwrap();
        }
    }
}

/// Random presentation with the given factor degrees on `A^{nvars}`.
/// Residues are random nonzero elements, with the last one whose degree is a
/// unit mod `p` solved from the residue constraint (it may be forced to zero). Factors are resampled
/// until pairwise coprime.
pub fn random_log_presentation(field: &Arc<FieldSpec>, nvars: usize, degrees: &[u32], rng: &mut impl Rng) -> LogPresentation {
    let p = field.characteristic();
    loop {
        let factors: Vec<Polynomial> = degrees.iter().map(|&d| random_homogeneous(field, nvars, d, rng)).collect();
        let mut lambdas: Vec<Elem> = degrees.iter().map(|_| nonzero_elem(field, rng)).collect();
        if let Some(j) = degrees.iter().rposition(|&d| d % p != 0) {
            let rest = (0..degrees.len())
                .filter(|&i| i != j)
                .fold(Elem::ZERO, |acc, i| field.add(acc, field.mul(lambdas[i], field.from_int(degrees[i] as i64))));
            lambdas[j] = field.neg(field.div(rest, field.from_int(degrees[j] as i64)).unwrap());
            // a zero residue is forced when every other degree is divisible by p
            let forced = degrees.iter().enumerate().all(|(i, &d)| i == j || d % p == 0);
            if lambdas[j].is_zero() && !forced {
                continue;
            }
        }
        if let Ok(l) = LogPresentation::new(lambdas, factors) {
            return l;
        }
    }
}
