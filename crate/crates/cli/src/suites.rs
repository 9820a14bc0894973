use std::time::Instant;

use andrekit::andre::{self, andre_permutations};
use andrekit::cfrac::{dn_series, jfraction_series, CfSpec};
use andrekit::formulas::{grid_report, Reading, Rescaling};
use andrekit::{paths, perm, phi, CheckResult, IdentityViolation, Var, Verified};
use clap::ValueEnum;
use rayon::prelude::*;
use serde_json::{json, Value};

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Main1,
    Main2,
    Orbit,
    Bijection,
    Xfact,
    Master,
    Neg1,
    #[value(name = "formula-p1")]
    FormulaP1,
    Euler,
    All,
}

const EACH: [Suite; 9] = [
    Suite::Main1,
    Suite::Main2,
    Suite::Orbit,
    Suite::Bijection,
    Suite::Xfact,
    Suite::Master,
    Suite::Neg1,
    Suite::FormulaP1,
    Suite::Euler,
];

impl Suite {
    fn name(self) -> &'static str {
        match self {
            Suite::Main1 => "main1",
            Suite::Main2 => "main2",
            Suite::Orbit => "orbit",
            Suite::Bijection => "bijection",
            Suite::Xfact => "xfact",
            Suite::Master => "master",
            Suite::Neg1 => "neg1",
            Suite::FormulaP1 => "formula-p1",
            Suite::Euler => "euler",
            Suite::All => "all",
        }
    }

    /// Whether the suite walks over S_n, and so is subject to the cap.
    pub fn enumerates(self) -> bool {
        !matches!(self, Suite::Neg1 | Suite::FormulaP1)
    }
}

pub struct Case {
    pub id: String,
    pub passed: bool,
    pub detail: String,
}

pub struct SuiteReport {
    pub suite: &'static str,
    pub cases: Vec<Case>,
    pub elapsed_ms: u128,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.cases.iter().all(|c| c.passed)
    }

    pub fn to_json(&self) -> Value {
        let cases: Vec<Value> = self
            .cases
            .iter()
            .map(|c| {
                json!({
                    "id": c.id,
                    "status": if c.passed { "pass" } else { "fail" },
                    "detail": c.detail,
                })
            })
            .collect();
        json!({ "suite": self.suite, "cases": cases, "elapsed_ms": self.elapsed_ms as u64 })
    }
}

type Job = Box<dyn Fn() -> (bool, String) + Send + Sync>;

fn from_check(result: CheckResult) -> (bool, String) {
    match result {
        Ok(Verified { identity, checks, .. }) => (true, format!("{identity}: {checks} checks")),
        Err(e) => (false, e.to_string()),
    }
}

fn per_n(jobs: &mut Vec<(String, Job)>, tag: &str, n_max: usize, check: fn(usize) -> CheckResult) {
    for n in 1..=n_max {
        jobs.push((format!("{tag}/n={n}"), Box::new(move || from_check(check(n)))));
    }
}

/// E_n three ways: the fraction for D_n at p = q = t = 1, Euler's fraction
/// for the secant-tangent numbers, and counting André permutations.
fn euler_numbers(n_max: usize) -> CheckResult {
    const ID: &str = "E_n from fractions and enumeration";
    let dn = dn_series(n_max - 1);
    let euler = jfraction_series(&CfSpec::euler_numbers(), n_max - 1);
    for n in 1..=n_max {
        let from_dn = dn[n - 1].specialize(&[(Var::P, 1), (Var::Q, 1), (Var::T, 1)]);
        let counted = andre_permutations(n).len();
        if from_dn != euler[n - 1] || from_dn.as_i64() != Some(counted as i64) {
            return Err(IdentityViolation::new(ID, n, format!("{from_dn} / {}", euler[n - 1]), counted));
        }
    }
    Ok(Verified { identity: ID, n: n_max, checks: 2 * n_max as u64 })
}

/// The triple sum for `D_n(1,q,t)` with whichever variant matches the exact
/// values; the detail records how every variant fared.
fn formula(n_max: usize) -> (bool, String) {
    let report = grid_report(n_max);
    let summary: Vec<String> = report
        .variants
        .iter()
        .map(|v| {
            format!(
                "{:?}/{:?}: {} (max rel err {:.3e})",
                v.reading,
                v.rescaling,
                if v.passes { "pass" } else { "fail" },
                v.max_rel_error
            )
        })
        .collect();
    let good = report.outcome(Reading::BracketedDifference, Rescaling::QuadraticRoot);
    (
        good.passes,
        format!("{} grid points, tolerance {:e}; {}", report.points, report.tolerance, summary.join("; ")),
    )
}

fn jobs(suite: Suite, n_max: usize, seed: u64) -> Vec<(String, Job)> {
    let mut jobs: Vec<(String, Job)> = Vec::new();
    let tag = suite.name();
    match suite {
        Suite::Main1 => {
            per_n(&mut jobs, tag, n_max, andre::verify_main1);
            per_n(&mut jobs, "main1/inv-exc", n_max, andre::verify_inv_exc);
        }
        Suite::Main2 => per_n(&mut jobs, tag, n_max, andre::verify_main2),
        Suite::Orbit => per_n(&mut jobs, tag, n_max, andre::verify_orbit_identity),
        Suite::Bijection => {
            per_n(&mut jobs, tag, n_max, phi::verify_bijection);
            per_n(&mut jobs, "bijection/steps", n_max, phi::verify_single_steps);
            for n in 1..=n_max {
                jobs.push((
                    format!("bijection/order/n={n}"),
                    Box::new(move || from_check(phi::verify_type1_order_independence(n, seed))),
                ));
            }
        }
        Suite::Xfact => {
            per_n(&mut jobs, tag, n_max, andre::verify_recognizers);
            per_n(&mut jobs, "xfact/classes", n_max, perm::verify_factorization_classes);
            per_n(&mut jobs, "xfact/mfs", n_max, perm::verify_mfs_commutation);
            per_n(&mut jobs, "xfact/les-des", n_max, andre::verify_les_at_least_des);
        }
        Suite::Master => per_n(&mut jobs, tag, n_max, andre::verify_master),
        Suite::Neg1 if n_max > 0 => {
            jobs.push((format!("neg1/n<={n_max}"), Box::new(move || from_check(paths::verify_neg1(n_max)))));
        }
        Suite::FormulaP1 if n_max > 0 => {
            jobs.push((format!("formula-p1/n<={n_max}"), Box::new(move || formula(n_max))));
        }
        Suite::Euler => {
            per_n(&mut jobs, tag, n_max, andre::verify_en_q);
            if n_max > 0 {
                jobs.push((
                    format!("euler/numbers/n<={n_max}"),
                    Box::new(move || from_check(euler_numbers(n_max))),
                ));
            }
        }
        Suite::Neg1 | Suite::FormulaP1 => {}
        Suite::All => {
            for s in EACH {
                jobs.extend(self::jobs(s, n_max, seed));
            }
        }
    }
    jobs
}

/// Cases run in parallel; results keep the order they were listed in.
pub fn run(suite: Suite, n_max: usize, seed: u64) -> SuiteReport {
    let start = Instant::now();
    let cases = jobs(suite, n_max, seed)
        .into_par_iter()
        .map(|(id, job)| {
            let (passed, detail) = job();
            Case { id, passed, detail }
        })
        .collect();
    SuiteReport {
        suite: suite.name(),
        cases,
        elapsed_ms: start.elapsed().as_millis(),
    }
}
