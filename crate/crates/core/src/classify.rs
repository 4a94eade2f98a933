//! Normal forms of linear locally decomposable forms, component labels for
//! foliations of degree 0 and 1, the linear-pullback test, Kupka and
//! normal-crossing criteria, and exhaustive or sampled censuses.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::SeedableRng;
use serde::ser::Serializer;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::extalg::{DifferentialForm, Multivector, VectorField};
use crate::field::{Elem, FieldSpec};
use crate::foliation::{construct_exceptional, exceptional_fields, projective_forms_basis, validate, LogPresentation, ProjectiveQForm};
use crate::frobenius::exact_primitive;
use crate::ideals::zero_locus_codim;
use crate::linalg::{kernel_of_images, EchelonBasis, Matrix};
use crate::poly::{monomials_of_degree, multivar_gcd, Polynomial};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CaseTag {
    CaseA,
    CaseB,
    NotLinearLD,
}

/// Normal-form decision for a form with linear coefficients. Both witness
/// bases are always computed; `tag` is `CaseB` whenever the annihilator is
/// large enough, even if Case A also holds.
#[derive(Clone, Debug)]
pub struct NormalFormCase {
    pub tag: CaseTag,
    /// Basis of constant covectors `xi` with `Theta ^ xi = 0`.
    pub covectors: Vec<Vec<Elem>>,
    /// Basis of constant vectors `v` with `i_v Theta = 0`.
    pub annihilator: Vec<Vec<Elem>>,
    pub case_a: bool,
    pub case_b: bool,
}

fn constant_one_form(field: &Arc<FieldSpec>, xi: &[Elem]) -> DifferentialForm {
    let n = xi.len();
    let coeffs: Vec<Polynomial> = xi.iter().map(|&c| Polynomial::constant(field, n, c)).collect();
    DifferentialForm::one_form(field, n, &coeffs)
}

fn linear_poly(field: &Arc<FieldSpec>, xi: &[Elem]) -> Polynomial {
    let n = xi.len();
    (0..n).fold(Polynomial::zero(field, n), |acc, i| &acc + &Polynomial::var(field, n, i).scale(xi[i]))
}

/// Constant vectors `v` killing every form in `forms` under contraction.
fn constant_annihilator(forms: &[&DifferentialForm]) -> Vec<Vec<Elem>> {
    let f = forms[0].field();
    let n = forms[0].nvars();
    let images: Vec<_> = (0..n)
        .map(|j| {
            let mut img = BTreeMap::new();
            for (k, form) in forms.iter().enumerate() {
                for ((idx, m), c) in form.contract_coordinate(j).flatten() {
                    img.insert((k, idx, m), c);
                }
            }
            img
        })
        .collect();
    kernel_of_images(f, &images)
}

pub fn medeiros_case(theta: &DifferentialForm) -> Result<NormalFormCase> {
    let qp = theta.grade();
    if qp == 0 || theta.is_zero() {
        return Err(Error::Precondition("need a nonzero form of positive grade".into()));
    }
    if theta.coefficients().iter().any(|c| !c.is_zero() && !c.is_homogeneous_of(1)) {
        return Err(Error::Precondition("coefficients are not homogeneous linear".into()));
    }
    let field = theta.field();
    let n = theta.nvars();
    for v in Multivector::basis_of_grade(field, n, qp - 1) {
        if !theta.contract_multivector(&v)?.wedge(theta)?.is_zero() {
            return Ok(NormalFormCase { tag: CaseTag::NotLinearLD, covectors: vec![], annihilator: vec![], case_a: false, case_b: false });
        }
    }
    let images: Vec<_> = (0..n)
        .map(|i| theta.wedge(&DifferentialForm::basis(field, n, &[i])).map(|w| w.flatten()))
        .collect::<Result<_>>()?;
    let covectors = kernel_of_images(field, &images);
    let annihilator = constant_annihilator(&[theta]);
    let case_a = !covectors.is_empty() && covectors.len() + 1 >= qp;
    let case_b = annihilator.len() + qp + 1 >= n;
    let tag = if case_b {
        CaseTag::CaseB
    } else if case_a {
        CaseTag::CaseA
    } else {
        return Err(Error::Invariant("linear decomposable form fits neither normal form".into()));
    };
    Ok(NormalFormCase { tag, covectors, annihilator, case_a, case_b })
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum LabelKind {
    Closed,
    Lin,
    QLin,
    Log(Vec<u32>),
    Exceptional,
    Unclassified,
}

impl LabelKind {
    pub fn name(&self) -> String {
        match self {
            LabelKind::Log(ds) => format!("Log({})", ds.iter().map(u32::to_string).collect::<Vec<_>>().join(",")),
            other => format!("{other:?}"),
        }
    }
}

/// Data certifying a label.
#[derive(Clone, Debug)]
pub enum Witness {
    None,
    /// `omega = df`.
    Primitive(Polynomial),
    /// `omega` proportional to `i_R(dl_0 ^ .. ^ dl_q)`.
    LinearForms(Vec<Polynomial>),
    Log(LogPresentation),
    /// Columns of `basis_change` are the new coordinate directions; the
    /// last `w_dim` span the constant symmetries.
    Pullback { w_dim: usize, basis_change: Vec<Vec<Elem>>, pulled_back: DifferentialForm },
    Fields(Vec<VectorField>),
}

fn field_to_value(v: &VectorField) -> Value {
    Value::Array(v.components().iter().map(|c| Value::String(c.to_string())).collect())
}

impl Witness {
    pub fn to_value(&self) -> Value {
        match self {
            Witness::None => Value::Null,
            Witness::Primitive(f) => json!({ "primitive": f.to_string() }),
            Witness::LinearForms(ls) => json!({ "linear_forms": ls.iter().map(|l| l.to_string()).collect::<Vec<_>>() }),
            Witness::Log(l) => json!({
                "lambdas": l.lambdas().iter().map(|&x| l.field().format(x)).collect::<Vec<_>>(),
                "factors": l.factors().iter().map(|f| f.to_string()).collect::<Vec<_>>(),
            }),
            Witness::Pullback { w_dim, basis_change, pulled_back } => {
                let f = pulled_back.field();
                json!({
                    "w_dim": w_dim,
                    "basis_change": basis_change.iter().map(|r| r.iter().map(|&x| f.format(x)).collect::<Vec<_>>()).collect::<Vec<_>>(),
                    "pulled_back": pulled_back.to_string(),
                })
            }
            Witness::Fields(vs) => json!({ "fields": vs.iter().map(field_to_value).collect::<Vec<_>>() }),
        }
    }
}

impl Serialize for Witness {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_value().serialize(s)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ComponentLabel {
    pub kind: LabelKind,
    pub label: String,
    /// Further components the form was verified to lie on.
    pub also: Vec<LabelKind>,
    pub diagnostic: String,
    pub witness: Witness,
}

impl ComponentLabel {
    fn new(kind: LabelKind, diagnostic: impl Into<String>, witness: Witness) -> Self {
        ComponentLabel { label: kind.name(), kind, also: Vec::new(), diagnostic: diagnostic.into(), witness }
    }

    fn unclassified(diagnostic: impl Into<String>) -> Self {
        Self::new(LabelKind::Unclassified, diagnostic, Witness::None)
    }
}

/// Saturation via the coefficient gcd: the singular set has a divisorial
/// part exactly when the coefficients share a nonconstant factor.
pub fn is_saturated_fast(form: &DifferentialForm) -> Result<bool> {
    let coeffs: Vec<Polynomial> = form.coefficients().into_iter().filter(|c| !c.is_zero()).collect();
    if coeffs.is_empty() {
        return Err(Error::ZeroInput);
    }
    Ok(multivar_gcd(&coeffs)?.is_constant())
}

fn is_integrable_1form(form: &DifferentialForm) -> bool {
    form.wedge(&form.d()).map(|w| w.is_zero()).unwrap_or(false)
}

fn require(omega: &ProjectiveQForm, degree: usize) -> Result<()> {
    if omega.degree() != degree {
        return Err(Error::Precondition(format!("expected degree {degree}, got {}", omega.degree())));
    }
    let rep = validate(omega.form(), omega.q(), omega.n())?;
    if !rep.is_integrable {
        return Err(Error::Precondition("form is not integrable".into()));
    }
    if !rep.is_saturated {
        return Err(Error::Precondition(format!("form is not saturated (singular codimension {})", rep.sing_codim)));
    }
    Ok(())
}

fn closed_label(form: &DifferentialForm) -> Result<ComponentLabel> {
    Ok(match exact_primitive(form)? {
        Some(f) => ComponentLabel::new(LabelKind::Closed, "closed and exact", Witness::Primitive(f)),
        None => ComponentLabel::unclassified("closed but no polynomial primitive"),
    })
}

pub fn classify_degree0(omega: &ProjectiveQForm) -> Result<ComponentLabel> {
    require(omega, 0)?;
    degree0_label(omega)
}

/// [`classify_degree0`] without re-checking integrability and saturation.
pub fn degree0_label(omega: &ProjectiveQForm) -> Result<ComponentLabel> {
    let form = omega.form();
    let field = form.field();
    let (n, q) = (omega.n(), omega.q());
    if field.characteristic() == 2 && q == 1 {
        if !form.d().is_zero() {
            return Ok(ComponentLabel::unclassified("degree 0 in characteristic 2 but not closed"));
        }
        return closed_label(form);
    }
    let w = constant_annihilator(&[form]);
    if w.len() != n - q {
        return Ok(ComponentLabel::unclassified(format!("constant annihilator has dimension {}, expected {}", w.len(), n - q)));
    }
    let ls = if w.is_empty() { Matrix::identity(field, n + 1).to_rows() } else { Matrix::from_rows(field, &w).kernel() };
    let mut theta = DifferentialForm::function(&Polynomial::one(field, n + 1));
    for xi in &ls {
        theta = theta.wedge(&constant_one_form(field, xi))?;
    }
    let theta = theta.contract(&VectorField::radial(field, n + 1))?;
    if !form.is_proportional(&theta) {
        return Ok(ComponentLabel::unclassified("not the contraction of a constant decomposable form"));
    }
    let ls = ls.iter().map(|xi| linear_poly(field, xi)).collect();
    Ok(ComponentLabel::new(LabelKind::Lin, "linear projection", Witness::LinearForms(ls)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum PullbackKind {
    Lin,
    QLin,
    Fail,
}

#[derive(Clone, Debug)]
pub struct PullbackTest {
    pub kind: PullbackKind,
    pub w_dim: usize,
    pub basis_change: Option<Vec<Vec<Elem>>>,
    pub pulled_back: Option<DifferentialForm>,
}

/// Looks for `n - 2` constant symmetries `v` (`i_v omega = i_v d omega = 0`)
/// and tests whether the form descends to the remaining coordinates.
pub fn linear_pullback_test(omega: &ProjectiveQForm) -> PullbackTest {
    let form = omega.form();
    let field = form.field();
    let nvars = form.nvars();
    let domega = form.d();
    let w = constant_annihilator(&[form, &domega]);
    let w_dim = w.len();
    let fail = PullbackTest { kind: PullbackKind::Fail, w_dim, basis_change: None, pulled_back: None };
    if w_dim + 2 < omega.n() || w_dim >= nvars {
        return fail;
    }
    let mut span = EchelonBasis::new(field);
    for v in &w {
        span.insert(v.clone());
    }
    let mut columns = Vec::with_capacity(nvars);
    for i in 0..nvars {
        let mut e = vec![Elem::ZERO; nvars];
        e[i] = Elem::ONE;
        if span.insert(e.clone()) {
            columns.push(e);
        }
    }
    let kept = columns.len();
    columns.extend(w);
    let matrix: Vec<Vec<Elem>> = (0..nvars).map(|i| columns.iter().map(|c| c[i]).collect()).collect();
    let pulled = form.linear_pullback(&matrix);
    let tail: Vec<usize> = (kept..nvars).collect();
    let kind = if tail.iter().all(|&v| !pulled.uses_var(v)) {
        PullbackKind::Lin
    } else if pulled.coefficients().iter().all(|c| c.is_pth_power_in(&tail)) {
        PullbackKind::QLin
    } else {
        PullbackKind::Fail
    };
    PullbackTest { kind, w_dim, basis_change: Some(matrix), pulled_back: Some(pulled) }
}

fn pullback_label(omega: &ProjectiveQForm) -> Option<ComponentLabel> {
    let t = linear_pullback_test(omega);
    let kind = match t.kind {
        PullbackKind::Lin => LabelKind::Lin,
        PullbackKind::QLin => LabelKind::QLin,
        PullbackKind::Fail => return None,
    };
    let witness = Witness::Pullback { w_dim: t.w_dim, basis_change: t.basis_change.unwrap(), pulled_back: t.pulled_back.unwrap() };
    Some(ComponentLabel::new(kind, "pullback under a linear projection", witness))
}

/// From `d omega = df ^ dl` with `l = xi . x`, recover `omega ~ 2 f dl - l df`.
fn recover_log12(omega: &ProjectiveQForm, domega: &DifferentialForm, xi: &[Elem]) -> Result<Option<LogPresentation>> {
    let field = domega.field();
    let nvars = domega.nvars();
    let dl = constant_one_form(field, xi);
    let monos = monomials_of_degree(nvars, 2);
    let images: Vec<_> = monos
        .iter()
        .map(|m| {
            let t = Polynomial::term(field, nvars, Elem::ONE, m.clone());
            DifferentialForm::function(&t).d().wedge(&dl).map(|w| w.flatten())
        })
        .collect::<Result<_>>()?;
    let (mat, labels) = crate::linalg::matrix_from_images(field, &images);
    let target = domega.flatten();
    let known: std::collections::BTreeSet<_> = labels.iter().collect();
    if target.keys().any(|k| !known.contains(k)) {
        return Ok(None);
    }
    let b: Vec<Elem> = labels.iter().map(|k| target.get(k).copied().unwrap_or(Elem::ZERO)).collect();
    let Some(sol) = mat.solve(&b) else { return Ok(None) };
    let f = Polynomial::from_terms(field, nvars, monos.into_iter().zip(sol));
    let l = linear_poly(field, xi);
    let pres = match LogPresentation::new(vec![field.from_int(2), field.from_int(-1)], vec![l, f]) {
        Ok(p) => p,
        Err(_) => return Ok(None),
    };
    Ok(omega.form().is_proportional(&pres.polynomial_form()).then_some(pres))
}

pub fn classify_degree1(omega: &ProjectiveQForm) -> Result<ComponentLabel> {
    if omega.q() != 1 {
        return Err(Error::Grade("degree-1 classification is for 1-forms".into()));
    }
    require(omega, 1)?;
    degree1_label(omega)
}

/// [`classify_degree1`] without re-checking integrability and saturation.
pub fn degree1_label(omega: &ProjectiveQForm) -> Result<ComponentLabel> {
    let form = omega.form();
    let p = form.field().characteristic();
    let domega = form.d();
    if domega.is_zero() {
        if p != 3 {
            return Ok(ComponentLabel::unclassified(format!("closed degree-1 form with p = {p} not dividing e = 3")));
        }
        return closed_label(form);
    }
    let nf = medeiros_case(&domega)?;
    if nf.tag == CaseTag::NotLinearLD {
        return Ok(ComponentLabel::unclassified("d omega is not decomposable"));
    }
    let mut log = None;
    if nf.case_a && p >= 5 {
        for xi in &nf.covectors {
            if let Some(pres) = recover_log12(omega, &domega, xi)? {
                log = Some(pres);
                break;
            }
        }
    }
    let pullback = if nf.case_b { pullback_label(omega) } else { None };
    Ok(match (log, pullback) {
        (Some(pres), pullback) => {
            let mut label = ComponentLabel::new(LabelKind::Log(vec![1, 2]), "d omega = df ^ dl", Witness::Log(pres));
            label.also.extend(pullback.map(|l| l.kind));
            label
        }
        (None, Some(label)) => label,
        (None, None) if p == 2 && nf.case_a => ComponentLabel::unclassified(
            "p = 2: d omega = beta ^ dl with beta closed but not exact, and no constant symmetry (not a linear pullback)",
        ),
        (None, None) => ComponentLabel::unclassified(format!("normal form {:?} without a matching construction", nf.tag)),
    })
}

/// Label for an integrable saturated form of any degree. Degrees 0 and 1
/// are decided; above that only the constructed families are recognised.
pub fn classify(omega: &ProjectiveQForm) -> Result<ComponentLabel> {
    match (omega.degree(), omega.q()) {
        (0, _) => classify_degree0(omega),
        (1, 1) => classify_degree1(omega),
        (d, q) => {
            require(omega, d)?;
            let form = omega.form();
            let field = form.field();
            if q == 1 && d == 2 && omega.n() == 3 && form.is_proportional(construct_exceptional(field).form()) {
                let (vs, vn) = exceptional_fields(field);
                return Ok(ComponentLabel::new(LabelKind::Exceptional, "i_R i_vs i_vn of the volume form", Witness::Fields(vec![vs, vn])));
            }
            if q == 1 && form.d().is_zero() {
                return closed_label(form);
            }
            if q == 1 {
                if let Some(label) = pullback_label(omega) {
                    return Ok(label);
                }
            }
            Ok(ComponentLabel::unclassified(format!("degree {d} with q = {q} is outside the decided range")))
        }
    }
}

/// Codimension of the zero locus of `d omega` on the affine cone; `None`
/// when `omega` is closed.
pub fn kupka_codim(omega: &ProjectiveQForm) -> Result<Option<usize>> {
    let domega = omega.form().d();
    if domega.is_zero() {
        return Ok(None);
    }
    zero_locus_codim(&domega.coefficients()).map(Some)
}

/// Generators of the ideal of points where the divisor `h = 0` fails to be
/// normal crossing in codimension two.
pub fn nc2_ideal(h: &Polynomial) -> Result<Vec<Polynomial>> {
    if h.is_zero() {
        return Err(Error::ZeroInput);
    }
    let field = h.field();
    let n = h.nvars();
    let mut ders: Vec<VectorField> = (0..n).map(|i| VectorField::coordinate(field, n, i)).collect();
    for i in 0..n {
        for j in i + 1..n {
            ders.push(VectorField::coordinate(field, n, i).add(&VectorField::coordinate(field, n, j))?);
        }
    }
    let mut gens = vec![h.clone()];
    gens.extend((0..n).map(|i| h.derivative(i)));
    let first: Vec<Polynomial> = ders.iter().map(|v| v.apply(h)).collect();
    for a in 0..ders.len() {
        for b in a + 1..ders.len() {
            let aa = ders[a].apply(&first[a]);
            let bb = ders[b].apply(&first[b]);
            let ba = ders[b].apply(&first[a]);
            let ab = ders[a].apply(&first[b]);
            gens.push(&(&aa * &bb) - &(&ba * &ab));
        }
    }
    Ok(gens)
}

/// True when the zero locus of [`nc2_ideal`] has codimension at least three.
pub fn nc2_test(h: &Polynomial) -> Result<bool> {
    Ok(zero_locus_codim(&nc2_ideal(h)?)? >= 3)
}

/// Matrix `M` of a linear field `v = sum_i (M x)_i d/dx_i`.
pub fn linear_field_matrix(v: &VectorField) -> Result<Matrix> {
    let field = v.field();
    let n = v.nvars();
    let mut m = Matrix::zeros(field, n, n);
    for (i, comp) in v.components().iter().enumerate() {
        if !comp.is_zero() && !comp.is_homogeneous_of(1) {
            return Err(Error::Precondition("vector field is not linear".into()));
        }
        for (mono, c) in comp.terms() {
            let j = mono.max_var().unwrap();
            m.set(i, j, c);
        }
    }
    Ok(m)
}

/// `dim { X : XM = MX }`.
pub fn centralizer_dim(m: &Matrix) -> Result<usize> {
    let n = m.rows();
    if m.cols() != n {
        return Err(Error::Precondition("matrix is not square".into()));
    }
    let field = m.field().clone();
    let images: Vec<BTreeMap<(usize, usize), Elem>> = (0..n * n)
        .map(|k| {
            let mut x = Matrix::zeros(&field, n, n);
            x.set(k / n, k % n, Elem::ONE);
            let (xm, mx) = (x.mul(m), m.mul(&x));
            let mut img = BTreeMap::new();
            for r in 0..n {
                for c in 0..n {
                    let v = field.sub(xm.get(r, c), mx.get(r, c));
                    if !v.is_zero() {
                        img.insert((r, c), v);
                    }
                }
            }
            img
        })
        .collect();
    Ok(kernel_of_images(&field, &images).len())
}

/// Largest `q^dim` a full census will enumerate.
pub const FULL_CENSUS_LIMIT: u64 = 1 << 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CensusMode {
    Full,
    Sample { samples: usize, seed: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CensusConfig {
    pub p: u32,
    pub k: u32,
    pub n: usize,
    pub degree: usize,
    pub mode: CensusMode,
}

/// Counts per filter stage and per label. Merging is associative and the
/// retained examples are the lowest-indexed ones, so the result does not
/// depend on how work was split.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Tally {
    pub examined: u64,
    pub zero: u64,
    pub not_integrable: u64,
    pub not_saturated: u64,
    pub classified: u64,
    pub labels: BTreeMap<String, u64>,
    pub unclassified: u64,
    pub unclassified_examples: Vec<(u64, String)>,
}

const MAX_EXAMPLES: usize = 5;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Outcome {
    Zero,
    NotIntegrable,
    NotSaturated,
    Label(LabelKind, String),
}

impl Tally {
    fn record(mut self, index: u64, outcome: Outcome) -> Tally {
        self.examined += 1;
        match outcome {
            Outcome::Zero => self.zero += 1,
            Outcome::NotIntegrable => self.not_integrable += 1,
            Outcome::NotSaturated => self.not_saturated += 1,
            Outcome::Label(kind, form) => {
                self.classified += 1;
                *self.labels.entry(kind.name()).or_default() += 1;
                if kind == LabelKind::Unclassified {
                    self.unclassified += 1;
                    self.unclassified_examples.push((index, form));
                    self.unclassified_examples.sort();
                    self.unclassified_examples.truncate(MAX_EXAMPLES);
                }
            }
        }
        self
    }

    pub fn merge(mut self, other: Tally) -> Tally {
        self.examined += other.examined;
        self.zero += other.zero;
        self.not_integrable += other.not_integrable;
        self.not_saturated += other.not_saturated;
        self.classified += other.classified;
        for (k, v) in other.labels {
            *self.labels.entry(k).or_default() += v;
        }
        self.unclassified += other.unclassified;
        self.unclassified_examples.extend(other.unclassified_examples);
        self.unclassified_examples.sort();
        self.unclassified_examples.truncate(MAX_EXAMPLES);
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusReport {
    pub p: u32,
    pub k: u32,
    pub n: usize,
    pub degree: usize,
    pub mode: String,
    pub samples: Option<usize>,
    pub seed: Option<u64>,
    pub basis_dim: usize,
    pub space_size: Option<u64>,
    pub tally: Tally,
}

/// Everything shared by the workers of one census.
pub struct Census {
    config: CensusConfig,
    field: Arc<FieldSpec>,
    basis: Vec<DifferentialForm>,
    space_size: Option<u64>,
}

impl Census {
    pub fn new(config: CensusConfig) -> Result<Census> {
        if config.degree > 1 {
            return Err(Error::Precondition("census covers degrees 0 and 1".into()));
        }
        if config.n < 2 {
            return Err(Error::Precondition("census needs n >= 2".into()));
        }
        let field = FieldSpec::new(config.p, config.k)?;
        let basis = projective_forms_basis(&field, config.n + 1, 1, config.degree + 2);
        let space_size = match config.mode {
            CensusMode::Full => {
                let size = (field.order() as u64).checked_pow(basis.len() as u32).filter(|&s| s <= FULL_CENSUS_LIMIT);
                Some(size.ok_or_else(|| {
                    Error::TooLarge(format!("{}^{} forms exceed the full-census limit 2^24", field.order(), basis.len()))
                })?)
            }
            CensusMode::Sample { .. } => None,
        };
        Ok(Census { config, field, basis, space_size })
    }

    pub fn basis(&self) -> &[DifferentialForm] {
        &self.basis
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }

    /// The `index`-th vector of the full enumeration (base-`q` digits).
    pub fn full_vector(&self, mut index: u64) -> Vec<Elem> {
        let q = self.field.order() as u64;
        (0..self.basis.len())
            .map(|_| {
                let digit = (index % q) as u32;
                index /= q;
                self.field.elem(digit).unwrap()
            })
            .collect()
    }

    /// Coefficient vectors of a sampled census, drawn sequentially from a
    /// seeded ChaCha8 stream; zero vectors are redrawn.
    pub fn sample_vectors(&self, samples: usize, seed: u64) -> Vec<Vec<Elem>> {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        (0..samples)
            .map(|_| loop {
                let v: Vec<Elem> = self.basis.iter().map(|_| crate::random::elem(&self.field, &mut rng)).collect();
                if v.iter().any(|c| !c.is_zero()) {
                    break v;
                }
            })
            .collect()
    }

    pub fn form_of(&self, v: &[Elem]) -> DifferentialForm {
        let mut out = DifferentialForm::zero(&self.field, self.config.n + 1, 1);
        for (b, &c) in self.basis.iter().zip(v) {
            if !c.is_zero() {
                out = out.add(&b.scale(c)).unwrap();
            }
        }
        out
    }

    fn outcome(&self, v: &[Elem]) -> Outcome {
        let form = self.form_of(v);
        if form.is_zero() {
            return Outcome::Zero;
        }
        if !is_integrable_1form(&form) {
            return Outcome::NotIntegrable;
        }
        if !is_saturated_fast(&form).expect("nonzero form") {
            return Outcome::NotSaturated;
        }
        let text = form.to_string();
        let omega = ProjectiveQForm::new(form).expect("basis forms are projective");
        let label = match self.config.degree {
            0 => degree0_label(&omega),
            _ => degree1_label(&omega),
        };
        match label {
            Ok(l) => Outcome::Label(l.kind, text),
            Err(e) => Outcome::Label(LabelKind::Unclassified, format!("{text} ({e})")),
        }
    }

    fn report(&self, tally: Tally) -> CensusReport {
        let (mode, samples, seed) = match self.config.mode {
            CensusMode::Full => ("full".to_string(), None, None),
            CensusMode::Sample { samples, seed } => ("sample".to_string(), Some(samples), Some(seed)),
        };
        CensusReport {
            p: self.config.p,
            k: self.config.k,
            n: self.config.n,
            degree: self.config.degree,
            mode,
            samples,
            seed,
            basis_dim: self.basis.len(),
            space_size: self.space_size,
            tally,
        }
    }

    pub fn run_sequential(&self) -> CensusReport {
        let tally = match self.config.mode {
            CensusMode::Full => (1..self.space_size.unwrap())
                .fold(Tally::default(), |t, i| t.record(i, self.outcome(&self.full_vector(i)))),
            CensusMode::Sample { samples, seed } => self
                .sample_vectors(samples, seed)
                .iter()
                .enumerate()
                .fold(Tally::default(), |t, (i, v)| t.record(i as u64, self.outcome(v))),
        };
        self.report(tally)
    }

    #[cfg(feature = "parallel")]
    pub fn run_parallel(&self) -> CensusReport {
        use rayon::prelude::*;
        let tally = match self.config.mode {
            CensusMode::Full => (1..self.space_size.unwrap())
                .into_par_iter()
                .fold(Tally::default, |t, i| t.record(i, self.outcome(&self.full_vector(i))))
                .reduce(Tally::default, Tally::merge),
            CensusMode::Sample { samples, seed } => self
                .sample_vectors(samples, seed)
                .par_iter()
                .enumerate()
                .fold(Tally::default, |t, (i, v)| t.record(i as u64, self.outcome(v)))
                .reduce(Tally::default, Tally::merge),
        };
        self.report(tally)
    }

    /// Parallel when the `parallel` feature is enabled.
    pub fn run(&self) -> CensusReport {
        #[cfg(feature = "parallel")]
        {
            self.run_parallel()
        }
        #[cfg(not(feature = "parallel"))]
        {
            self.run_sequential()
        }
    }
}

pub fn census(config: CensusConfig) -> Result<CensusReport> {
    Ok(Census::new(config)?.run())
}
