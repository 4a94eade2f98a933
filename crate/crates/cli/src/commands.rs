use std::path::Path;

use serde_json::{json, Value};

use pfol::classify::{self, Census, CensusConfig, CensusMode};
use pfol::extalg::{DifferentialForm, VectorField};
use pfol::field::FieldSpec;
use pfol::foliation::{self, LogPresentation, ProjectiveQForm};
use pfol::frobenius;
use pfol::io;
use pfol::poly::Polynomial;
use pfol::random::rng;

use crate::report::{CliError, InputDigest};
use crate::{Command, Family, Mode};

type Outcome = Result<(Vec<InputDigest>, Value), CliError>;

pub fn name(c: &Command) -> &'static str {
    match c {
        Command::Check { .. } => "check",
        Command::Construct { .. } => "construct",
        Command::Pcurvature { .. } => "pcurvature",
        Command::Cartier { .. } => "cartier",
        Command::Classify { .. } => "classify",
        Command::Census { .. } => "census",
        Command::Nc2 { .. } => "nc2",
    }
}

pub fn run(c: &Command) -> Outcome {
    match c {
        Command::Check { form_file } => check(form_file),
        Command::Construct { family, p, k, n, poly, e, factors, lambdas, degrees, degree, q, seed, out } => {
            let field = FieldSpec::new(*p, *k)?;
            let omega = match family {
                Family::Closed => {
                    let f = match poly {
                        Some(s) => Polynomial::parse(&field, n + 1, s)?,
                        None => foliation::jouanolou_polynomial(&field, *n, *e),
                    };
                    foliation::construct_closed(&f)?
                }
                Family::Log => foliation::construct_log(&log_presentation(&field, *n, factors, lambdas, degrees, *seed)?, *n)?,
                Family::Pullback => {
                    let beta = foliation::random_plane_foliation(&field, *degree, &mut rng(*seed));
                    foliation::construct_linear_pullback(&beta, *n)?
                }
                Family::Exceptional => {
                    if *n != 3 {
                        return Err(CliError::Input("the exceptional family lives on P^3 (--n 3)".into()));
                    }
                    foliation::construct_exceptional(&field)
                }
                Family::Pencil => pencil(&field, *n, *q)?,
            };
            let text = io::form_to_json(omega.form());
            if let Some(path) = out {
                std::fs::write(path, &text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
            }
            let form: Value = serde_json::from_str(&text).expect("form files are JSON");
            Ok((Vec::new(), json!({ "seed": seed, "degree": omega.degree(), "form": form })))
        }
        Command::Pcurvature { form_file, max_degree } => {
            let (digest, text) = read(form_file)?;
            let omega = ProjectiveQForm::new(io::form_from_json(&text)?)?;
            let d = max_degree.unwrap_or_else(|| frobenius::default_max_degree(&omega));
            let rep = frobenius::p_curvature(&omega, d)?;
            Ok((vec![digest], io::pcurvature_to_value(&rep)))
        }
        Command::Cartier { input } => cartier(input),
        Command::Classify { form_file } => {
            let (digest, text) = read(form_file)?;
            let omega = ProjectiveQForm::new(io::form_from_json(&text)?)?;
            let label = classify::classify(&omega)?;
            let kupka = classify::kupka_codim(&omega)?;
            let mut v = serde_json::to_value(&label).expect("serializable");
            v["degree"] = json!(omega.degree());
            v["kupka_codim"] = json!(kupka);
            Ok((vec![digest], v))
        }
        Command::Census { p, k, n, degree, mode, n_samples, seed, workers } => {
            let mode = match mode {
                Mode::Full => CensusMode::Full,
                Mode::Sample => CensusMode::Sample { samples: *n_samples, seed: *seed },
            };
            let census = Census::new(CensusConfig { p: *p, k: *k, n: *n, degree: *degree, mode })?;
            let report = if *workers == 1 {
                census.run_sequential()
            } else {
                let pool = rayon::ThreadPoolBuilder::new()
                    .num_threads(*workers)
                    .build()
                    .map_err(|e| CliError::Input(format!("thread pool: {e}")))?;
                pool.install(|| census.run())
            };
            let mut v = serde_json::to_value(&report).expect("serializable");
            v["workers"] = json!(workers);
            Ok((Vec::new(), v))
        }
        Command::Nc2 { poly_file, p, k, nvars } => {
            let (digest, text) = read(poly_file)?;
            let field = FieldSpec::new(*p, *k)?;
            let h = match nvars {
                Some(m) => Polynomial::parse(&field, *m, text.trim())?,
                None => Polynomial::parse_infer(&field, 1, text.trim())?,
            };
            let gens = classify::nc2_ideal(&h)?;
            let codim = pfol::ideals::zero_locus_codim(&gens)?;
            Ok((
                vec![digest],
                json!({ "poly": h.to_string(), "nvars": h.nvars(), "bad_locus_codim": codim, "nc2": codim >= 3 }),
            ))
        }
    }
}

fn read(path: &Path) -> Result<(InputDigest, String), CliError> {
    let bytes = std::fs::read(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let digest = InputDigest::of(&path.display().to_string(), &bytes);
    let text = String::from_utf8(bytes).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    Ok((digest, text))
}

fn check(path: &Path) -> Outcome {
    let (digest, text) = read(path)?;
    let form = io::form_from_json(&text)?;
    let n = form
        .nvars()
        .checked_sub(1)
        .ok_or_else(|| CliError::Input("form has no variables".into()))?;
    let rep = foliation::validate(&form, form.grade(), n)?;
    let mut v = serde_json::to_value(&rep).expect("serializable");
    v["q"] = json!(form.grade());
    v["n"] = json!(n);
    Ok((vec![digest], v))
}

fn split(s: &str) -> impl Iterator<Item = &str> {
    s.split(';').map(str::trim).filter(|t| !t.is_empty())
}

fn log_presentation(
    field: &std::sync::Arc<FieldSpec>,
    n: usize,
    factors: &Option<String>,
    lambdas: &Option<String>,
    degrees: &Option<String>,
    seed: u64,
) -> Result<LogPresentation, CliError> {
    match (factors, lambdas) {
        (Some(fs), Some(ls)) => {
            let factors = split(fs).map(|s| Polynomial::parse(field, n + 1, s)).collect::<pfol::Result<Vec<_>>>()?;
            let lambdas = split(ls).map(|s| field.parse(s)).collect::<pfol::Result<Vec<_>>>()?;
            Ok(LogPresentation::new(lambdas, factors)?)
        }
        (None, None) => {
            let ds = degrees.as_deref().unwrap_or("1,2");
            let ds: Vec<u32> = ds
                .split(',')
                .map(|d| d.trim().parse().map_err(|_| CliError::Input(format!("bad degree list {ds:?}"))))
                .collect::<Result<_, _>>()?;
            if ds.len() < 2 || ds.contains(&0) {
                return Err(CliError::Input("--degrees needs at least two positive degrees".into()));
            }
            Ok(foliation::random_log_presentation(field, n + 1, &ds, &mut rng(seed)))
        }
        _ => Err(CliError::Input("--factors and --lambdas go together".into())),
    }
}

/// Codimension-`q` degree-0 foliation `i_R(dx_0 ^ .. ^ dx_q)`.
fn pencil(field: &std::sync::Arc<FieldSpec>, n: usize, q: usize) -> Result<ProjectiveQForm, CliError> {
    if q == 0 || q >= n {
        return Err(CliError::Input(format!("pencil needs 1 <= q < n, got q = {q}, n = {n}")));
    }
    let idx: Vec<usize> = (0..=q).collect();
    let form = DifferentialForm::basis(field, n + 1, &idx).contract(&VectorField::radial(field, n + 1))?;
    Ok(ProjectiveQForm::new(form)?)
}

fn cartier(path: &Path) -> Outcome {
    let (digest, text) = read(path)?;
    if io::is_log_spec(&text) {
        let l = io::log_from_json(&text)?;
        let c = frobenius::cartier_log(&l);
        let f = l.field();
        let pairs: Vec<Value> = frobenius::cartier_pair_coefficients(&l)
            .into_iter()
            .map(|((i, j), c)| json!({ "i": i, "j": j, "coeff": f.format(c) }))
            .collect();
        let transform = if l.factors().len() >= 2 {
            Some(frobenius::cartier_transform_form(&l)?.to_string())
        } else {
            None
        };
        let log: Value = serde_json::from_str(&io::log_to_json(&c)).expect("log specs are JSON");
        Ok((
            vec![digest],
            json!({
                "input": "log-spec",
                "cartier_log": log,
                "polynomial_form": c.polynomial_form().to_string(),
                "pair_coefficients": pairs,
                "transform_form": transform,
            }),
        ))
    } else {
        let alpha = io::form_from_json(&text)?;
        let c = frobenius::cartier_polynomial(&alpha)?;
        let form: Value = serde_json::from_str(&io::form_to_json(&c)).expect("form files are JSON");
        Ok((vec![digest], json!({ "input": "form", "cartier": form, "is_zero": c.is_zero() })))
    }
}
