//! One line per acceptance criterion: `PASS`/`FAIL`, its number, a title
//! and the measured detail. Criteria listed in `KNOWN_FAILING` are expected
//! to fail; the process exits nonzero if any other criterion fails, or if a
//! known failure starts passing.

use std::process::Command;
use std::time::{Duration, Instant};

use andrekit::andre::{self, gamma_basis, gamma_expand};
use andrekit::cfrac::{dn_series, neg1_series};
use andrekit::formulas::{grid_report, Reading, Rescaling, REL_TOL};
use andrekit::paths::{closed_formula_neg1, verify_flajolet, verify_neg1, verify_psi};
use andrekit::perm::verify_mfs_commutation;
use andrekit::phi::{phi_inverse, phi_inverse_traced, phi_set, phi_set_traced, verify_bijection};
use andrekit::poly::{Monomial, MultiPoly};
use andrekit::{CheckResult, Permutation, Var};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

/// The expected sigma of the worked inverse example is not what phi inverts
/// to (criterion 6), and the closed-form rescaling of the triple sum does not
/// match the exact values (criterion 9).
const KNOWN_FAILING: [u32; 2] = [6, 9];

const TABLES_BUDGET: Duration = Duration::from_secs(2);
const MAIN1_BUDGET: Duration = Duration::from_secs(60);

struct Outcome {
    pass: bool,
    detail: String,
    /// A supplementary line that does not affect the verdict.
    info: Option<String>,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Outcome { pass, detail: detail.into(), info: None }
    }
}

fn perm(s: &str) -> Permutation {
    s.parse().unwrap()
}

/// Runs `check(n)` for each `n` in `range`, stopping at the first violation.
fn all_hold(range: std::ops::RangeInclusive<usize>, check: fn(usize) -> CheckResult) -> Result<u64, String> {
    let mut total = 0;
    for n in range {
        total += check(n).map_err(|e| e.to_string())?.checks;
    }
    Ok(total)
}

fn cli(args: &[&str]) -> (String, Duration) {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_andrekit")).args(args).output().unwrap();
    assert!(out.status.success(), "andrekit {args:?} failed");
    (String::from_utf8(out.stdout).unwrap(), start.elapsed())
}

fn parse_table(text: &str) -> Vec<Vec<u64>> {
    text.lines()
        .map(|line| {
            let (_, values) = line.split_once(": ").unwrap();
            values.split(',').map(|v| v.parse().unwrap()).collect()
        })
        .collect()
}

fn first_values_tables() -> Outcome {
    let gamma: Vec<Vec<u64>> = vec![
        vec![1],
        vec![1],
        vec![1, 2],
        vec![1, 8],
        vec![1, 22, 16],
        vec![1, 52, 136],
        vec![1, 114, 720, 272],
    ];
    let d: Vec<Vec<u64>> = vec![
        vec![1],
        vec![1],
        vec![1, 1],
        vec![1, 4],
        vec![1, 11, 4],
        vec![1, 26, 34],
        vec![1, 57, 180, 34],
    ];
    let en: Vec<Vec<u64>> = [1, 1, 2, 5, 16, 61, 272].iter().map(|&e| vec![e]).collect();
    let mut slowest = Duration::ZERO;
    let mut wrong = Vec::new();
    for (which, want) in [("gamma", gamma), ("d", d), ("en", en)] {
        let (text, took) = cli(&["tables", "--which", which, "--n-max", "7"]);
        slowest = slowest.max(took);
        if parse_table(&text) != want {
            wrong.push(which);
        }
    }
    Outcome::new(
        wrong.is_empty() && slowest < TABLES_BUDGET,
        format!("mismatched tables: {wrong:?}; slowest run {slowest:.2?} (budget {TABLES_BUDGET:?})"),
    )
}

fn displayed_series() -> Outcome {
    let t = || MultiPoly::var(Var::T);
    let (p, q) = (MultiPoly::var(Var::P), MultiPoly::var(Var::Q));
    let one = MultiPoly::one();
    let s = &p + &q;
    let d3 = &one + &t();
    let d4 = &one + &(&(&s + &MultiPoly::constant(2)) * &t());
    let linear = &(&(&s * &s) + &(&s * &MultiPoly::constant(2))) + &MultiPoly::constant(3);
    let quadratic = &(&(&(&p * &p) + &(&p * &q)) + &(&q * &q)) + &one;
    let d5 = &(&one + &(&linear * &t())) + &(&quadratic * &(&t() * &t()));
    let series = dn_series(4);
    let pass = series[2] == d3 && series[3] == d4 && series[4] == d5;
    Outcome::new(pass, format!("D_5 = {}", series[4].display_grouped(Var::T)))
}

fn main1() -> Outcome {
    let start = Instant::now();
    let result = all_hold(1..=7, andre::verify_main1);
    let before = start.elapsed();
    let at8 = Instant::now();
    let result = result.and_then(|c| andre::verify_main1(8).map(|v| c + v.checks).map_err(|e| e.to_string()));
    let took = at8.elapsed();
    match result {
        Ok(checks) => Outcome::new(
            took < MAIN1_BUDGET,
            format!("{checks} checks; n = 8 took {took:.2?} (budget {MAIN1_BUDGET:?}), n < 8 took {before:.2?}"),
        ),
        Err(e) => Outcome::new(false, e),
    }
}

fn from_checks(result: Result<u64, String>) -> Outcome {
    match result {
        Ok(checks) => Outcome::new(true, format!("{checks} checks")),
        Err(e) => Outcome::new(false, e),
    }
}

fn bijection() -> Outcome {
    let mut parts = Vec::new();
    let mut pass = true;
    let mut part = |name: &str, ok: bool, note: String| {
        pass &= ok;
        parts.push(format!("{name} {}{note}", if ok { "ok" } else { "FAILED" }));
    };

    let exhaustive = all_hold(1..=8, verify_bijection);
    part("n<=8", exhaustive.is_ok(), exhaustive.err().map(|e| format!(" ({e})")).unwrap_or_default());

    let rows: [(&str, &[usize], &str, usize, usize); 16] = [
        ("31524", &[], "31524", 2, 2),
        ("31524", &[1], "32514", 3, 1),
        ("31524", &[2], "31425", 3, 1),
        ("31524", &[1, 2], "32415", 4, 0),
        ("41523", &[], "41523", 1, 3),
        ("41523", &[1], "42513", 2, 2),
        ("41523", &[2], "41325", 2, 2),
        ("41523", &[1, 2], "42315", 3, 1),
        ("51423", &[], "51423", 0, 4),
        ("51423", &[1], "52413", 1, 3),
        ("51423", &[2], "51324", 1, 3),
        ("51423", &[1, 2], "52314", 2, 2),
        ("53412", &[], "53412", 0, 2),
        ("53412", &[1], "21534", 1, 1),
        ("53412", &[3], "43512", 1, 1),
        ("53412", &[1, 3], "21435", 2, 0),
    ];
    let matching = rows
        .iter()
        .filter(|(sigma, s, tau, res, les)| {
            let image = phi_set(&perm(sigma), s).unwrap();
            let back = phi_inverse(&image).unwrap();
            image == perm(tau)
                && (image.res(), image.les()) == (*res, *les)
                && back == (perm(sigma), andrekit::phi::ValleySubset::from_letters(&perm(sigma), s).unwrap())
        })
        .count();
    part("table", matching == 16, format!(" ({matching}/16 rows)"));

    let (image, steps) = phi_set_traced(&perm("31524"), &[1, 2]).unwrap();
    let a_ok = image == perm("32415") && steps.len() == 2 && steps[0].after == perm("31425");
    part("forward example", a_ok, String::new());

    let tau = perm("11,2,12,13,1,6,4,5,3,8,9,7,10");
    let expected_sigma = perm("11,1,12,13,2,6,3,10,7,8,9,4,5");
    let (sigma, subset, steps) = phi_inverse_traced(&tau).unwrap();
    let afters: Vec<Permutation> = steps.iter().map(|s| s.after.clone()).collect();
    let intermediates_ok = afters.contains(&perm("11,1,12,13,2,6,4,5,3,8,9,7,10"))
        && afters.contains(&perm("11,1,12,13,2,6,3,5,4,8,9,7,10"));
    part("inverse example intermediates", intermediates_ok, String::new());
    part("inverse example S", subset.letters == [1, 3, 4, 7], format!(" (S = {:?})", subset.letters));
    part(
        "inverse example sigma",
        sigma == expected_sigma,
        format!(" (recovered {sigma}, expected {expected_sigma}; phi(expected, S) = {})",
            phi_set(&expected_sigma, &[1, 3, 4, 7]).map(|p| p.to_string()).unwrap_or_else(|e| e.to_string())),
    );
    Outcome::new(pass, parts.join("; "))
}

fn neg1() -> Outcome {
    let verified = verify_neg1(20);
    let series = neg1_series(19);
    let agree = (1..=20).all(|n| closed_formula_neg1(n) == series[n - 1]);
    let values: Vec<String> = (1..=10)
        .map(|n| closed_formula_neg1(n).specialize(&[(Var::T, 1)]).to_string())
        .collect();
    match verified {
        Ok(v) => Outcome::new(agree, format!("{} checks; E_n(-1), n = 1..10: {}", v.checks, values.join(","))),
        Err(e) => Outcome::new(false, e.to_string()),
    }
}

fn triple_sum() -> Outcome {
    let report = grid_report(8);
    let closed_form = report.outcome(Reading::BracketedDifference, Rescaling::ClosedFormU);
    let mut outcome = Outcome::new(
        closed_form.passes,
        format!(
            "closed-form u: max rel err {:.3e} at (n, q, t) = {:?}, tolerance {REL_TOL:e}, {} grid points",
            closed_form.max_rel_error, closed_form.worst, report.points
        ),
    );
    let passing: Vec<String> = report
        .variants
        .iter()
        .filter(|v| v.passes)
        .map(|v| format!("{:?} with {:?} (max rel err {:.3e})", v.reading, v.rescaling, v.max_rel_error))
        .collect();
    outcome.info = Some(format!(
        "passing variants: {}",
        if passing.is_empty() { "none".into() } else { passing.join(", ") }
    ));
    outcome
}

fn random_palindromic(rng: &mut StdRng, cases: usize) -> Result<usize, String> {
    for _ in 0..cases {
        let n = rng.gen_range(1..=9);
        let gammas: Vec<MultiPoly> = (0..=(n - 1) / 2)
            .map(|_| {
                MultiPoly::from_terms((0..rng.gen_range(0..4)).map(|_| {
                    let m = Monomial::var(Var::P, rng.gen_range(0..3)).with(Var::Q, rng.gen_range(0..3));
                    (m, rng.gen_range(-9i64..=9))
                }))
            })
            .collect();
        let h: MultiPoly = gammas.iter().enumerate().map(|(k, g)| g * &gamma_basis(n, k)).sum();
        match gamma_expand(&h, n) {
            Ok(e) if e.gammas == gammas && e.reconstruct() == h => {}
            other => return Err(format!("n = {n}, h = {h}: {other:?}")),
        }
    }
    Ok(cases)
}

fn properties() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0);
    let parts = [
        ("recognizers n<=8", all_hold(1..=8, andre::verify_recognizers)),
        ("les>=des n<=9", all_hold(1..=9, andre::verify_les_at_least_des)),
        ("MFS commutation n<=6", all_hold(1..=6, verify_mfs_commutation)),
        ("psi length<=10", verify_psi(10).map(|v| v.checks).map_err(|e| e.to_string())),
        ("gamma_expand random", random_palindromic(&mut rng, 500).map(|c| c as u64)),
    ];
    let pass = parts.iter().all(|(_, r)| r.is_ok());
    let detail = parts
        .iter()
        .map(|(name, r)| match r {
            Ok(c) => format!("{name}: {c}"),
            Err(e) => format!("{name}: {e}"),
        })
        .collect::<Vec<_>>()
        .join("; ");
    Outcome::new(pass, detail)
}

fn main() {
    let mut results: Vec<(u32, &str, Outcome)> = Vec::new();
    let mut run = |id: u32, title: &'static str, f: &dyn Fn() -> Outcome| {
        let start = Instant::now();
        let mut outcome = f();
        outcome.detail.push_str(&format!(" [{:.2?}]", start.elapsed()));
        results.push((id, title, outcome));
    };
    run(1, "first-values tables", &first_values_tables);
    run(2, "displayed D_3, D_4, D_5", &displayed_series);
    run(3, "gamma expansion of A_n and divisibility, n<=8", &main1);
    run(4, "fraction vs André sum, n<=9", &|| from_checks(all_hold(1..=9, andre::verify_main2)));
    run(5, "MFS orbit sums, n<=8", &|| from_checks(all_hold(1..=8, andre::verify_orbit_identity)));
    run(6, "phi bijection, table and worked examples", &bijection);
    run(7, "inv-exc expansion, n<=8", &|| from_checks(all_hold(1..=8, andre::verify_inv_exc)));
    run(8, "closed formula at (1,-1), n<=20", &neg1);
    run(9, "triple sum for D_n(1,q,t), n<=8", &triple_sum);
    run(10, "fractions vs weighted path sums, n<=10", &|| {
        from_checks(verify_flajolet(10).map(|v| v.checks).map_err(|e| e.to_string()))
    });
    run(11, "property suites", &properties);

    let mut unexpected = Vec::new();
    for (id, title, outcome) in &results {
        let status = if outcome.pass { "PASS" } else { "FAIL" };
        println!("{status} {id:>2} {title}: {}", outcome.detail);
        if let Some(info) = &outcome.info {
            println!("INFO {id:>2} {info}");
        }
        if outcome.pass == KNOWN_FAILING.contains(id) {
            unexpected.push(*id);
        }
    }
    let passed = results.iter().filter(|r| r.2.pass).count();
    println!(
        "{passed}/{} criteria pass; expected failures {KNOWN_FAILING:?}; unexpected outcomes {unexpected:?}",
        results.len()
    );
    if !unexpected.is_empty() {
        std::process::exit(1);
    }
}
