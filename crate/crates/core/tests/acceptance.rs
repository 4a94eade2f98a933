//! Acceptance suite: one PASS/FAIL line per criterion, each checked against
//! an oracle that does not route through the code path under test.
//!
//! Runs as a plain binary so the summary is always printed. The process
//! fails only on failures outside [`KNOWN_FAILURES`].

use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::{Duration, Instant};

use pfol::classify::{
    self, centralizer_dim, classify_degree1, kupka_codim, linear_field_matrix, nc2_test, Census, CensusConfig,
    CensusMode, LabelKind,
};
use pfol::extalg::{DifferentialForm, VectorField};
use pfol::field::{Elem, FieldSpec};
use pfol::foliation::{
    construct_closed, construct_exceptional, construct_linear_pullback, construct_log, deformation_tangent_space,
    exceptional_fields, jouanolou_polynomial, random_log_presentation, random_plane_foliation, validate,
    ProjectiveQForm,
};
use pfol::frobenius::{cartier_polynomial, p_curvature};
use pfol::ideals::{groebner, zero_locus_codim};
use pfol::poly::Polynomial;
use pfol::random::{random_gl, random_homogeneous, random_homogeneous_form, rng};

/// Criteria that fail for a documented reason in the reference data.
const KNOWN_FAILURES: &[u32] = &[3, 8];

struct Outcome {
    ok: bool,
    detail: String,
}

fn gf(p: u32, k: u32) -> Arc<FieldSpec> {
    FieldSpec::new(p, k).unwrap()
}

fn poly(f: &Arc<FieldSpec>, nvars: usize, s: &str) -> Polynomial {
    Polynomial::parse(f, nvars, s).unwrap()
}

fn point(f: &Arc<FieldSpec>, v: [i64; 4]) -> Vec<Elem> {
    v.iter().map(|&x| f.from_int(x)).collect()
}

/// Collects failed checks; `ok` when none failed.
#[derive(Default)]
struct Checks {
    failed: Vec<String>,
    notes: Vec<String>,
}

impl Checks {
    fn check(&mut self, cond: bool, what: impl Into<String>) {
        if !cond {
            self.failed.push(what.into());
        }
    }

    fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    fn finish(self) -> Outcome {
        let ok = self.failed.is_empty();
        let mut parts = self.notes;
        if !ok {
            parts.push(format!("failed: {}", self.failed.join("; ")));
        }
        Outcome { ok, detail: parts.join(", ") }
    }
}

fn euler_identity() -> Outcome {
    let mut c = Checks::default();
    let mut total = 0;
    for p in [2u32, 3, 5, 7] {
        let f = gf(p, 1);
        for q in [1usize, 2] {
            let mut r = rng(1000 * p as u64 + q as u64);
            let mut done = 0;
            while done < 200 {
                let coeff_deg = (done % 5) as u32;
                let a = random_homogeneous_form(&f, 4, q, coeff_deg, &mut r);
                if a.is_zero() {
                    continue;
                }
                let e = coeff_deg as i64 + q as i64;
                let radial = VectorField::radial(&f, 4);
                let lhs = a.d().contract(&radial).unwrap().add(&a.contract(&radial).unwrap().d()).unwrap();
                c.check(lhs == a.scale(f.from_int(e)), format!("p={p} q={q} form #{done}"));
                done += 1;
                total += 1;
            }
        }
    }
    c.note(format!("{total} forms"));
    c.finish()
}

/// The displayed expansion: `x1^{pe-1} dx0 + sum_i (-x_{i-1} x_i^{pe-2} + x_{i+1}^{pe-1}) dx_i`.
fn displayed_df(f: &Arc<FieldSpec>, n: usize, pe: u32) -> DifferentialForm {
    let x = |i: usize| if i <= n { Polynomial::var(f, n + 1, i) } else { Polynomial::zero(f, n + 1) };
    let mut coeffs = vec![x(1).pow(pe - 1)];
    for i in 1..=n {
        coeffs.push(&x(i + 1).pow(pe - 1) - &(&x(i - 1) * &x(i).pow(pe - 2)));
    }
    DifferentialForm::one_form(f, n + 1, &coeffs)
}

fn closed_jouanolou() -> Outcome {
    let mut c = Checks::default();
    for (p, e, n) in [(2u32, 2u32, 3usize), (3, 1, 3), (5, 1, 3), (3, 1, 4)] {
        let f = gf(p, 1);
        let omega = construct_closed(&jouanolou_polynomial(&f, n, e)).unwrap();
        c.check(omega.form() == &displayed_df(&f, n, p * e), format!("dF display ({p},{e},{n})"));
        let dim = groebner(&omega.form().coefficients()).unwrap().dimension();
        c.check(dim == 1, format!("({p},{e},{n}) dimension {dim}"));
        // The zero set must be the line x1 = .. = xn = 0.
        let mut on_line = vec![Elem::ZERO; n + 1];
        on_line[0] = Elem::ONE;
        c.check(omega.form().coefficients().iter().all(|a| a.eval(&on_line).is_zero()), "line lies in zero set");
    }
    let f2 = gf(2, 1);
    let omega = construct_closed(&jouanolou_polynomial(&f2, 3, 1)).unwrap();
    c.check(omega.form() == &displayed_df(&f2, 3, 2), "dF display (2,1,3)");
    let dim = groebner(&omega.form().coefficients()).unwrap().dimension();
    c.check(dim == 0, format!("(2,1,3) dimension {dim}"));
    c.note("dimensions 1,1,1,1 and 0 for (p,e)=(2,1)");
    c.finish()
}

fn affine_example() -> Outcome {
    let mut c = Checks::default();
    let mut codims = Vec::new();
    for p in [3u32, 5, 7, 11] {
        let f = gf(p, 1);
        let omega = construct_exceptional(&f);
        let shown = DifferentialForm::one_form(
            &f,
            4,
            &[
                poly(&f, 4, "-x0*x2*x3 + 2*x1^2*x3 - x1*x2^2"),
                poly(&f, 4, "-3*x0*x1*x3 + 2*x0*x2^2"),
                poly(&f, 4, "3*x0^2*x3 - x0*x1*x2"),
                poly(&f, 4, "-2*x0^2*x2 + x0*x1^2"),
            ],
        );
        let scalar = omega.form().proportionality(&shown);
        c.check(scalar.is_some(), format!("p={p}: omega not proportional to display"));
        let domega = omega.form().d();
        if let Some(s) = scalar {
            let shown_d = DifferentialForm::from_terms(
                &f,
                4,
                2,
                [
                    ([0u8, 1], "7*x1*x3 - 3*x2^2"),
                    ([0, 2], "-7*x0*x3 - x1*x2"),
                    ([0, 3], "3*x0*x2 + x1^2"),
                    ([1, 2], "5*x0*x2"),
                    ([1, 3], "-5*x0*x1"),
                    ([2, 3], "5*x0^2"),
                ]
                .into_iter()
                .map(|(i, s)| (i.into_iter().collect(), poly(&f, 4, s))),
            )
            .unwrap();
            // The displayed d omega carries the opposite overall sign.
            c.check(domega == shown_d.scale(f.neg(s)), format!("p={p}: d omega differs from display"));
        }
        let codim = kupka_codim(&omega).unwrap().unwrap();
        codims.push(format!("p={p}: {codim}"));
        let vanishes = |v: [i64; 4]| domega.eval(&point(&f, v)).is_empty();
        match p {
            3 => {
                c.check(codim == 2, "p=3 codim 2");
                c.check(vanishes([0, 0, 1, 0]) && vanishes([0, 0, 1, 1]), "p=3 line x0=x1=0");
            }
            5 => {
                c.check(vanishes([1, 0, 0, 0]) && vanishes([0, 0, 0, 1]), "p=5 listed points");
                c.check(codim == 3, format!("p=5 two-point cone expects codim 3, measured {codim}"));
                if vanishes([1, 1, 3, 1]) {
                    c.note("p=5 d omega also vanishes at (1:1:3:1) on the twisted cubic (1:t:3t^2:t^3)");
                }
            }
            _ => {
                c.check(codim == 3, format!("p={p} codim 3"));
                c.check(vanishes([0, 0, 0, 1]), format!("p={p} (0:0:0:1) singular"));
                c.check(!vanishes([1, 0, 0, 0]), format!("p={p} d omega(1,0,0,0) != 0"));
            }
        }
    }
    c.note(format!("kupka codims {}", codims.join(" ")));
    let f = gf(7, 1);
    let (vs, vn) = exceptional_fields(&f);
    c.check(vs.lie_bracket(&vn).unwrap() == vn, "[v_s, v_n] = v_n");
    let cd = centralizer_dim(&linear_field_matrix(&vn).unwrap()).unwrap();
    c.check(cd == 4, format!("centralizer dim {cd}"));
    c.finish()
}

/// `x` with `x^p = a`, by search over the field.
fn pth_root_by_search(f: &FieldSpec, a: Elem) -> Elem {
    f.elements().find(|&x| f.pow(x, f.characteristic() as u64) == a).unwrap()
}

fn cartier_cross_check() -> Outcome {
    let mut c = Checks::default();
    let shapes: [&[u32]; 4] = [&[1, 1], &[1, 2], &[2, 2], &[1, 1, 1]];
    for (p, k) in [(2u32, 2u32), (3, 2), (5, 2)] {
        let f = gf(p, k);
        let mut r = rng(40 + p as u64);
        for i in 0..20 {
            let l = random_log_presentation(&f, 4, shapes[i % shapes.len()], &mut r);
            let h = l.product();
            let alpha = l.polynomial_form().mul_poly(&h.pow(p - 1));
            let lhs = cartier_polynomial(&alpha).unwrap();
            let mut rhs = DifferentialForm::zero(&f, 4, 1);
            for (j, (&lam, fj)) in l.lambdas().iter().zip(l.factors()).enumerate() {
                let others = l
                    .factors()
                    .iter()
                    .enumerate()
                    .filter(|(m, _)| *m != j)
                    .fold(Polynomial::one(&f, 4), |acc, (_, g)| &acc * g);
                let term = DifferentialForm::function(fj).d().mul_poly(&others.scale(pth_root_by_search(&f, lam)));
                rhs = rhs.add(&term).unwrap();
            }
            c.check(lhs == rhs, format!("({p},{k}) presentation #{i}"));
        }
        let mut r = rng(90 + p as u64);
        for i in 0..50 {
            let g = random_homogeneous(&f, 4, 1 + (i % 5) as u32, &mut r);
            let dg = DifferentialForm::function(&g).d();
            c.check(cartier_polynomial(&dg).unwrap().is_zero(), format!("({p},{k}) C(df) #{i}"));
        }
    }
    c.note("C(h^p omega_log) = sum lambda_i^{1/p} (prod_{j!=i} f_j) df_i on 60 presentations, C(df)=0 on 150");
    c.finish()
}

fn pcurvature_log_quadrics() -> Outcome {
    let mut c = Checks::default();
    let f = gf(2, 2);
    let t = f.gen().unwrap();
    let mut used = Vec::new();
    let mut seed = 0u64;
    while used.len() < 10 && seed < 200 {
        seed += 1;
        let l = random_log_presentation(&f, 4, &[2, 2], &mut rng(seed)).with_lambdas(vec![t, f.one()]);
        // Generic: smooth quadrics meeting transversally, i.e. the union is
        // normal crossing in codimension two.
        if !nc2_test(&l.product()).unwrap() {
            continue;
        }
        used.push(seed);
        let omega = construct_log(&l, 3).unwrap();
        let rep = p_curvature(&omega, 3).unwrap();
        c.check(rep.divisor_poly.as_ref() == Some(&l.product().monic()), format!("seed {seed}: gcd != f1 f2"));
        c.check(rep.divisor_degree == Some(4), format!("seed {seed}: deg {:?}", rep.divisor_degree));
        c.check(rep.inferred_pkernel_degree == Some(1), format!("seed {seed}: inferred {:?}", rep.inferred_pkernel_degree));
    }
    c.check(used.len() == 10, "ten generic pairs");
    c.note(format!("seeds {used:?}, deg 4, inferred 1"));
    c.finish()
}

fn pullback_degeneracy() -> Outcome {
    let mut c = Checks::default();
    let f = gf(2, 1);
    let mut degrees = Vec::new();
    for seed in 1..=5u64 {
        let beta = random_plane_foliation(&f, 2, &mut rng(seed));
        let omega = construct_linear_pullback(&beta, 3).unwrap();
        let rep = p_curvature(&omega, 3).unwrap();
        degrees.push(rep.divisor_degree);
        // d + 2 + p (d - 1) with d = 2, p = 2.
        c.check(rep.divisor_degree == Some(6), format!("seed {seed}: deg {:?}", rep.divisor_degree));
    }
    c.note(format!("measured degrees {degrees:?}"));
    c.finish()
}

/// Number of 2-dimensional subspaces of `F_q^4`.
fn grassmannian_2_4(q: u64) -> u64 {
    (q.pow(4) - 1) * (q.pow(4) - q) / ((q * q - 1) * (q * q - q))
}

fn census_degree0() -> Outcome {
    let mut c = Checks::default();
    let cs = Census::new(CensusConfig { p: 2, k: 1, n: 3, degree: 0, mode: CensusMode::Full }).unwrap();
    let rep = cs.run();
    let t = &rep.tally;
    c.check(t.examined == 63 && t.unclassified == 0, format!("p=2 examined {} unclassified {}", t.examined, t.unclassified));
    c.check(t.labels.get("Closed") == Some(&63), format!("p=2 labels {:?}", t.labels));
    for i in 1..64u64 {
        let form = cs.form_of(&cs.full_vector(i));
        let ok = form.d().is_zero()
            && pfol::frobenius::exact_primitive(&form)
                .unwrap()
                .is_some_and(|g| DifferentialForm::function(&g).d() == form);
        c.check(ok, format!("p=2 form #{i} not exact"));
    }
    let rep = classify::census(CensusConfig { p: 3, k: 1, n: 3, degree: 0, mode: CensusMode::Full }).unwrap();
    let t = &rep.tally;
    // Lin forms i_R(dl0 ^ dl1): one line of forms per plane of linear forms.
    let expected = grassmannian_2_4(3) * 2;
    c.check(t.unclassified == 0, format!("p=3 unclassified {}", t.unclassified));
    c.check(t.labels.keys().all(|k| k == "Lin"), format!("p=3 labels {:?}", t.labels));
    c.check(t.classified == expected, format!("p=3 classified {} expected {expected}", t.classified));
    c.note(format!("p=2: 63 Closed and exact; p=3: {} Lin of {} nonzero", t.classified, t.examined));
    c.finish()
}

fn is_or_also(l: &classify::ComponentLabel, k: &LabelKind) -> bool {
    &l.kind == k || l.also.contains(k)
}

fn census_degree1() -> Outcome {
    let mut c = Checks::default();
    let mut summary = Vec::new();
    for (p, allowed) in [(2u32, &["Lin"][..]), (3, &["Lin", "Closed"][..])] {
        let mode = CensusMode::Sample { samples: 10_000, seed: 42 };
        let cs = Census::new(CensusConfig { p, k: 1, n: 3, degree: 1, mode }).unwrap();
        let rep = cs.run();
        let t = &rep.tally;
        if t.unclassified > 0 {
            let vectors = cs.sample_vectors(10_000, 42);
            let genuine = t.unclassified_examples.iter().all(|(i, _)| {
                let form = cs.form_of(&vectors[*i as usize]);
                let v = validate(&form, 1, 3).unwrap();
                let omega = ProjectiveQForm::new(form).unwrap();
                v.is_integrable && v.is_saturated && classify::linear_pullback_test(&omega).w_dim == 0
            });
            c.note(format!(
                "p={p}: {} unclassified, retained examples {} integrable saturated forms without constant symmetry (first: {})",
                t.unclassified,
                if genuine { "are" } else { "are NOT all" },
                t.unclassified_examples[0].1
            ));
        }
        c.check(t.unclassified == 0, format!("p={p} unclassified {}", t.unclassified));
        c.check(t.labels.keys().all(|k| allowed.contains(&k.as_str())), format!("p={p} labels {:?}", t.labels));
        c.check(t.examined == 10_000, "sample count");
        summary.push(format!("p={p} {:?}", t.labels));
    }
    let f = gf(5, 1);
    let mut r = rng(55);
    let (mut log_ok, mut lin_ok, mut redraws) = (0, 0, 0);
    while log_ok + lin_ok < 400 {
        let want_log = log_ok < 200;
        let omega = if want_log {
            let l = random_log_presentation(&f, 4, &[1, 2], &mut r);
            construct_log(&l, 3)
        } else {
            let beta = random_plane_foliation(&f, 1, &mut r);
            let m = random_gl(&f, 4, &mut r);
            construct_linear_pullback(&beta, 3).and_then(|w| ProjectiveQForm::new(w.form().linear_pullback(&m)))
        };
        let Ok(omega) = omega else {
            redraws += 1;
            continue;
        };
        let rep = validate(omega.form(), 1, 3).unwrap();
        if !(rep.is_saturated && rep.is_integrable) || omega.degree() != 1 {
            redraws += 1;
            continue;
        }
        let label = classify_degree1(&omega);
        let target = if want_log { LabelKind::Log(vec![1, 2]) } else { LabelKind::Lin };
        match label {
            Ok(l) if is_or_also(&l, &target) => {
                if want_log {
                    log_ok += 1
                } else {
                    lin_ok += 1
                }
            }
            other => {
                c.check(false, format!("p=5 {} misclassified: {:?}", target.name(), other.map(|l| l.label)));
                if want_log {
                    log_ok += 1
                } else {
                    lin_ok += 1
                }
            }
        }
    }
    summary.push(format!("p=5 200 Log(1,2) + 200 Lin ({redraws} degenerate draws skipped)"));
    c.note(summary.join("; "));
    c.finish()
}

/// Rank of an integer matrix modulo a prime.
fn rank_mod(mut rows: Vec<Vec<i64>>, p: i64) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(piv) = (rank..rows.len()).find(|&r| rows[r][col].rem_euclid(p) != 0) else { continue };
        rows.swap(rank, piv);
        let inv = (1..p).find(|&x| (x * rows[rank][col]).rem_euclid(p) == 1).unwrap();
        for v in rows[rank].iter_mut() {
            *v = (*v * inv).rem_euclid(p);
        }
        for r in 0..rows.len() {
            if r != rank && rows[r][col].rem_euclid(p) != 0 {
                let m = rows[r][col];
                let pivot_row = rows[rank].clone();
                for (v, w) in rows[r].iter_mut().zip(pivot_row) {
                    *v = (*v - m * w).rem_euclid(p);
                }
            }
        }
        rank += 1;
    }
    rank
}

fn exponents(nvars: usize, d: u32) -> Vec<Vec<u32>> {
    if nvars == 0 {
        return if d == 0 { vec![vec![]] } else { vec![] };
    }
    (0..=d)
        .flat_map(|a| exponents(nvars - 1, d - a).into_iter().map(move |mut rest| {
            rest.insert(0, a);
            rest
        }))
        .collect()
}

/// `dim { sum a_i dx_i : a_i of degree e-1, sum x_i a_i = 0, d = 0 }` over
/// `F_p`, from dense coefficient matrices.
fn closed_projective_dim_oracle(p: u32, nvars: usize, e: u32) -> usize {
    let monos = exponents(nvars, e - 1);
    let unknowns: Vec<(usize, &Vec<u32>)> = (0..nvars).flat_map(|i| monos.iter().map(move |m| (i, m))).collect();
    let mut eqs: BTreeMap<String, Vec<i64>> = BTreeMap::new();
    let mut put = |key: String, col: usize, v: i64| {
        eqs.entry(key).or_insert_with(|| vec![0; unknowns.len()])[col] += v;
    };
    for (col, (i, m)) in unknowns.iter().enumerate() {
        let mut xm = (*m).clone();
        xm[*i] += 1;
        put(format!("R{xm:?}"), col, 1);
        // d(m dx_i) = sum_j m_j x^{m - e_j} dx_j ^ dx_i.
        for j in 0..nvars {
            if j != *i && m[j] > 0 {
                let mut dm = (*m).clone();
                dm[j] -= 1;
                let (a, b, sign) = if j < *i { (j, *i, 1) } else { (*i, j, -1) };
                put(format!("d{a},{b}{dm:?}"), col, sign * m[j] as i64);
            }
        }
    }
    unknowns.len() - rank_mod(eqs.into_values().collect(), p as i64)
}

fn deformation_space() -> Outcome {
    let mut c = Checks::default();
    let f2 = gf(2, 1);
    let omega = construct_closed(&poly(&f2, 4, "x0*x1")).unwrap();
    let tangent = deformation_tangent_space(&omega).unwrap();
    let oracle = closed_projective_dim_oracle(2, 4, 2);
    c.check(tangent == 6 && oracle == 6, format!("p=2: tangent {tangent}, closed {oracle}"));
    let f3 = gf(3, 1);
    let omega = construct_closed(&jouanolou_polynomial(&f3, 3, 1)).unwrap();
    let tangent = deformation_tangent_space(&omega).unwrap();
    let oracle = closed_projective_dim_oracle(3, 4, 3);
    c.check(tangent == oracle, format!("p=3: tangent {tangent}, closed {oracle}"));
    c.note(format!("p=2: 6 = 6; p=3: {tangent} = {oracle}"));
    c.finish()
}

fn nc2_suite() -> Outcome {
    let mut c = Checks::default();
    let f = gf(5, 1);
    let mut r = rng(10);
    for (h, expected) in [("x0*x1*x2", true), ("x0^2*x1 + x0*x1^2", false), ("x0^2", false)] {
        let h = poly(&f, 3, h);
        c.check(nc2_test(&h).unwrap() == expected, format!("{h}"));
        // Independent view of the failing cases: the bad locus contains a line.
        if !expected {
            let gens = classify::nc2_ideal(&h).unwrap();
            let line = [Elem::ZERO, Elem::ZERO, Elem::ONE];
            c.check(gens.iter().all(|g| g.eval(&line).is_zero()), format!("{h}: x2-axis in bad locus"));
        } else {
            c.check(zero_locus_codim(&classify::nc2_ideal(&h).unwrap()).unwrap() == 3, "origin only");
        }
        for i in 0..20 {
            let g = h.linear_substitute(&random_gl(&f, 3, &mut r));
            c.check(nc2_test(&g).unwrap() == expected, format!("{h} conjugate #{i}"));
        }
    }
    c.note("3 examples x 21 coordinate systems");
    c.finish()
}

fn pencils_p_closed() -> Outcome {
    let mut c = Checks::default();
    for p in [2u32, 3, 5] {
        let f = gf(p, 1);
        let mut r = rng(p as u64);
        for i in 0..4 {
            let m = if i == 0 { (0..4).map(|a| (0..4).map(|b| if a == b { f.one() } else { f.zero() }).collect()).collect() } else { random_gl(&f, 4, &mut r) };
            let base = DifferentialForm::basis(&f, 4, &[0, 1]).contract(&VectorField::radial(&f, 4)).unwrap();
            let omega = ProjectiveQForm::new(base.linear_pullback(&m)).unwrap();
            let rep = p_curvature(&omega, 3).unwrap();
            c.check(rep.p_closed_up_to_degree, format!("p={p} pencil #{i}"));
            c.check(rep.values.iter().all(|(_, v)| v.is_zero()), format!("p={p} pencil #{i} values"));
        }
    }
    c.note("4 pencils per p, all values zero up to D=3");
    c.finish()
}

type Criterion = (u32, &'static str, u64, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 11] = [
        (1, "Euler identity on random homogeneous forms", 10, euler_identity),
        (2, "closed form dF: display and zero-set dimension", 5, closed_jouanolou),
        (3, "exceptional example: display, Kupka sets, Lie data", 10, affine_example),
        (4, "Cartier operator on logarithmic forms", 30, cartier_cross_check),
        (5, "p-curvature divisor of a log quadric pair", 120, pcurvature_log_quadrics),
        (6, "p-curvature divisor of a linear pullback", 120, pullback_degeneracy),
        (7, "degree-0 full census", 300, census_degree0),
        (8, "degree-1 census and constructed instances", 600, census_degree1),
        (9, "deformation tangent space", 60, deformation_space),
        (10, "normal crossing in codimension two", 60, nc2_suite),
        (11, "p-closedness of degree-0 foliations", 30, pencils_p_closed),
    ];
    let filter: Option<u32> = std::env::args().skip(1).find_map(|a| a.parse().ok());
    let mut unexpected = Vec::new();
    for (id, name, limit, run) in criteria {
        if filter.is_some_and(|f| f != id) {
            continue;
        }
        let start = Instant::now();
        let out = run();
        let elapsed = start.elapsed();
        let in_time = elapsed < Duration::from_secs(limit);
        let pass = out.ok && in_time;
        let timing = format!("{:.2}s, limit {limit}s{}", elapsed.as_secs_f64(), if in_time { "" } else { " EXCEEDED" });
        println!("criterion {id:>2} {} {name} [{timing}] {}", if pass { "PASS" } else { "FAIL" }, out.detail);
        if !pass && !KNOWN_FAILURES.contains(&id) {
            unexpected.push(id);
        }
    }
    if !unexpected.is_empty() {
        eprintln!("unexpected acceptance failures: {unexpected:?}");
        std::process::exit(1);
    }
}
