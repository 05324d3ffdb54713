//! Report assembly: single-ideal analysis and the corpus suite runner.

use std::fs;
use std::path::Path;
use std::sync::Mutex;

use blowup_core::adjoint::verify_lipman_chain;
use blowup_core::hilbert::{multiplicity_volume, normal_hilbert_profile};
use blowup_core::newton::NewtonPolyhedron;
use blowup_core::verifiers::dichotomy_report;
use blowup_core::MonomialIdeal;
use num::Zero;
use serde_json::{json, Value};

use crate::corpus::Instance;
use crate::{error_json, error_kind};

/// Suite exit classification, in order of precedence.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitKind {
    Ok,
    /// Some theorem-level check failed: given the mathematics, an
    /// implementation bug.
    Violation,
    InputError,
}

impl ExitKind {
    pub fn code(self) -> u8 {
        match self {
            ExitKind::Ok => 0,
            ExitKind::Violation => 1,
            ExitKind::InputError => 2,
        }
    }
}

pub struct AnalyzeOutcome {
    pub report: Value,
    pub violations: Vec<String>,
}

/// Full analysis of one ideal: normal Hilbert data, closure growth, adjoint
/// chain, and, when a 3-generated reduction is available, the chain
/// condition and kernel-length dichotomy.
pub fn analyze(
    ideal: &MonomialIdeal,
    reduction: Option<&MonomialIdeal>,
    n_max: u64,
) -> blowup_core::Result<AnalyzeOutcome> {
    let mut violations: Vec<String> = Vec::new();

    let profile = normal_hilbert_profile(ideal)?;
    let volume = multiplicity_volume(ideal)?;
    if volume != profile.ebar[0] {
        violations.push(format!(
            "normalized volume {volume} disagrees with fitted e0 {}",
            profile.ebar[0]
        ));
    }
    if !profile.ebar[3].is_zero() {
        violations.push(format!(
            "monomial instance with nonzero e3 = {}",
            profile.ebar[3]
        ));
    }

    let np = NewtonPolyhedron::of(ideal)?;
    let chain_top = n_max.max(3);
    let mut closure_counts = Vec::new();
    for n in 1..=chain_top {
        closure_counts.push(json!({
            "n": n,
            "generators": np.closure_ideal(n)?.generators().len(),
        }));
    }

    let lipman = verify_lipman_chain(ideal, chain_top)?;
    if !lipman.pass {
        violations.push("adjoint chain failed".into());
    }

    // an m-primary ideal with exactly three generators is its own reduction
    let own = (ideal.generators().len() == 3).then_some(ideal);
    let q = reduction.or(own);
    let dichotomy = match q {
        Some(q) => Some(dichotomy_report(ideal, q, n_max)?),
        None => None,
    };
    if let Some(d) = &dichotomy {
        violations.extend(d.violations.iter().cloned());
    }

    let mut report = json!({
        "ideal": serde_json::to_value(ideal).expect("ideal serializes"),
        "reduction": q.map(|q| serde_json::to_value(q).expect("ideal serializes")),
        "hilbert": profile.to_json(),
        "volume_e0": blowup_core::report::int_json(&volume),
        "closures": closure_counts,
        "nmax": n_max,
        "violations": violations.clone(),
    });
    let map = report.as_object_mut().expect("object");
    map.insert("lipman".into(), lipman.to_json()["lipman"].clone());
    if let Some(d) = dichotomy {
        map.insert("itoh".into(), d.chain.to_json());
        let dj = d.to_json();
        for key in ["k", "coarse_k", "branch", "chain"] {
            map.insert(key.into(), dj[key].clone());
        }
    }
    Ok(AnalyzeOutcome {
        report,
        violations,
    })
}

/// Per-instance verification: the dichotomy report plus the adjoint chain,
/// shaped like `{"instance": .., "ebar": .., "k": .., "chain": .., "branch": ..,
/// "coarse_k": .., "lipman": .., "violations": ..}`.
pub fn instance_report(
    name: &str,
    instance: &Instance,
    n_max: u64,
) -> blowup_core::Result<(Value, Vec<String>)> {
    let mut violations = Vec::new();
    let dichotomy = dichotomy_report(&instance.ideal, &instance.reduction, n_max)?;
    violations.extend(dichotomy.violations.iter().cloned());
    if !dichotomy.ebar[3].is_zero() {
        violations.push(format!(
            "monomial instance with nonzero e3 = {}",
            dichotomy.ebar[3]
        ));
    }
    let volume = multiplicity_volume(&instance.ideal)?;
    if volume != dichotomy.ebar[0] {
        violations.push(format!(
            "normalized volume {volume} disagrees with fitted e0 {}",
            dichotomy.ebar[0]
        ));
    }
    let lipman = verify_lipman_chain(&instance.ideal, n_max.max(3))?;
    if !lipman.pass {
        violations.push("adjoint chain failed".into());
    }

    let mut report = dichotomy.to_json();
    let map = report.as_object_mut().expect("object");
    map.insert("instance".into(), json!(name));
    map.insert("seed".into(), json!(instance.seed));
    map.insert("lipman".into(), lipman.to_json()["lipman"].clone());
    map.insert("violations".into(), json!(violations.clone()));
    Ok((report, violations))
}

pub struct SuiteOutcome {
    pub summary: Value,
    /// `(instance file name, report)` in file order.
    pub reports: Vec<(String, Value)>,
    pub exit: ExitKind,
}

/// Runs every verifier over each instance file in `dir`, fanning out across
/// `jobs` workers. Per-instance errors are aggregated, never fatal.
pub fn run_suite(dir: &Path, n_max: u64, jobs: usize) -> std::io::Result<SuiteOutcome> {
    let mut files: Vec<String> = fs::read_dir(dir)?
        .filter_map(|entry| {
            let entry = entry.ok()?;
            let name = entry.file_name().into_string().ok()?;
            name.ends_with(".json").then_some(name)
        })
        .collect();
    files.sort();

    let results: Mutex<Vec<(usize, String, Outcome)>> = Mutex::new(Vec::new());
    let jobs = jobs.max(1).min(files.len().max(1));
    let chunk = files.len().div_ceil(jobs);
    std::thread::scope(|scope| {
        for (worker, batch) in files.chunks(chunk.max(1)).enumerate() {
            let results = &results;
            let offset = worker * chunk.max(1);
            scope.spawn(move || {
                for (i, name) in batch.iter().enumerate() {
                    log::debug!("verifying {name}");
                    let outcome = verify_file(&dir.join(name), name, n_max);
                    results.lock().unwrap().push((offset + i, name.clone(), outcome));
                }
            });
        }
    });

    let mut results = results.into_inner().unwrap();
    results.sort_by_key(|(i, _, _)| *i);

    let mut reports = Vec::new();
    let mut violations: Vec<Value> = Vec::new();
    let mut errors: Vec<Value> = Vec::new();
    let mut branches: std::collections::BTreeMap<String, u64> = Default::default();
    let mut verified = 0u64;
    for (_, name, outcome) in results {
        match outcome {
            Outcome::Done(report, instance_violations, branch) => {
                verified += 1;
                *branches.entry(branch).or_default() += 1;
                for v in instance_violations {
                    violations.push(json!({"instance": name, "violation": v}));
                }
                reports.push((name, report));
            }
            Outcome::Failed(err) => errors.push(json!({"instance": name, "error": err})),
        }
    }

    let exit = if !violations.is_empty() {
        ExitKind::Violation
    } else if !errors.is_empty() {
        ExitKind::InputError
    } else {
        ExitKind::Ok
    };
    let summary = json!({
        "instances": files.len(),
        "verified": verified,
        "branches": branches,
        "violations": violations,
        "errors": errors,
        "nmax": n_max,
        "pass": exit == ExitKind::Ok,
    });
    Ok(SuiteOutcome {
        summary,
        reports,
        exit,
    })
}

enum Outcome {
    Done(Value, Vec<String>, String),
    Failed(Value),
}

fn verify_file(path: &Path, name: &str, n_max: u64) -> Outcome {
    let text = match fs::read_to_string(path) {
        Ok(text) => text,
        Err(e) => return Outcome::Failed(error_json("io", e.to_string())["error"].clone()),
    };
    let instance: Instance = match serde_json::from_str(&text) {
        Ok(instance) => instance,
        Err(e) => return Outcome::Failed(error_json("parse", e.to_string())["error"].clone()),
    };
    match instance_report(name, &instance, n_max) {
        Ok((report, violations)) => {
            let branch = report["branch"].as_str().unwrap_or("unknown").to_string();
            Outcome::Done(report, violations, branch)
        }
        Err(e) => Outcome::Failed(error_json(error_kind(&e), e.to_string())["error"].clone()),
    }
}
