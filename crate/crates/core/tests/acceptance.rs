//! Acceptance criteria, one PASS/FAIL line each.
//!
//! Runs without the libtest harness so the lines always show. Criteria listed in `KNOWN_RED` are expected to fail; the test
//! only breaks if some other criterion fails or a known-red one turns green.

use std::time::Instant;

use purespin::polyform::tduality::{self, Orientation, TDualityData};
use purespin::polyform::PolyForm;
use purespin::scenario::{builtin, Status};
use purespin::verify::{self, SuiteConfig, SuiteReport};
use purespin::{Gaussian, Rational};

const SEED: u64 = 20_261_015;

/// T-duality intertwining: every generator anti-commutes under the
/// orientation that gives τ(1) = θ₂, τ(θ₁) = 1.
const KNOWN_RED: [u32; 1] = [6];

struct Line {
    id: u32,
    ok: bool,
    text: String,
}

fn suites(reports: &[SuiteReport]) -> (bool, String) {
    let ok = reports.iter().all(SuiteReport::ok);
    let parts: Vec<String> = reports
        .iter()
        .map(|r| {
            let mut s = r.summary();
            if let Some(f) = r.failures.first() {
                s.push_str(&format!(" first failure: trial {} n={} {}: {}", f.trial, f.dim, f.check, f.detail));
            }
            s
        })
        .collect();
    (ok, parts.join("; "))
}

fn per_dim(name: &str, reps: &[SuiteReport], dims: std::ops::RangeInclusive<usize>) -> (bool, String) {
    let ok = reps.iter().all(SuiteReport::ok);
    let counts: Vec<String> = reps.iter().zip(dims).map(|(r, n)| format!("n={n} {}/{}", r.passed, r.trials)).collect();
    let mut text = format!("{name} (seed {}): {}", reps[0].seed, counts.join(", "));
    if let Some(f) = reps.iter().flat_map(|r| &r.failures).next() {
        text.push_str(&format!("; first failure n={} {}: {}", f.dim, f.check, f.detail));
    }
    (ok, text)
}

fn ac1() -> Line {
    let start = Instant::now();
    let reps: Vec<_> = (2..=5).map(|n| verify::dictionary_roundtrip::<Rational>(SuiteConfig::new(SEED, 1000, n, n))).collect();
    let secs = start.elapsed().as_secs_f64();
    let (ok, text) = per_dim("dictionary-roundtrip", &reps, 2..=5);
    Line { id: 1, ok: ok && secs < 30.0, text: format!("dictionary round-trip in {secs:.1}s: {text}") }
}

fn ac2() -> Line {
    let reps: Vec<_> = (1..=5).map(|n| verify::transversality::<Rational>(SuiteConfig::new(SEED + 1, 1000, n, n))).collect();
    let (ok, text) = per_dim("transversality-biconditional", &reps, 1..=5);
    Line { id: 2, ok, text: format!("L cap K biconditional: {text}") }
}

fn ac3() -> Line {
    let (ok, text) = suites(&[verify::perturbation::<Rational>(SuiteConfig::new(SEED + 2, 500, 2, 5))]);
    Line { id: 3, ok, text: format!("perturbation: {text}") }
}

fn ac4() -> Line {
    let (ok, text) = suites(&[verify::b_covariance::<Rational>(SuiteConfig::new(SEED + 3, 200, 1, 5))]);
    Line { id: 4, ok, text: format!("B-change covariance: {text}") }
}

fn ac5() -> Line {
    let mut ok = true;
    let mut notes = Vec::new();
    let need: [(&str, &[&str]); 4] = [
        ("foliation-restrict", &["transversal_reduces_to_intersection", "clean_reduces_to_intersection"]),
        ("cp1", &["jk_cap_kperp_zero", "reduced_is_complex_structure", "reduced_spinor_is_dz", "chart_spinor_proportional_to_dz"]),
        ("nitta-toy", &["intersection_matches_formula", "anchor_iso"]),
        ("symplectic-cy", &["integrable_at_samples"]),
    ];
    for (name, checks) in need {
        let r = builtin(name).expect("built-in runs");
        let mut good = r.status == Status::Pass;
        for c in checks {
            good &= r.checks.get(*c).copied().unwrap_or(false);
        }
        if name == "symplectic-cy" {
            good &= r.values["passed_points"].as_u64().unwrap_or(0) >= 10;
        }
        ok &= good;
        notes.push(format!("{name} {}", if good { "ok" } else { "wrong" }));
    }
    Line { id: 5, ok, text: format!("worked examples: {}", notes.join(", ")) }
}

fn ac6() -> Line {
    let r = builtin("tduality-basic").expect("built-in runs");
    // The built-in's data must meet the criterion's shape: nonzero c₁, c₂, h of degree ≤ 2.
    let f = |n: usize, k: &str, v: &str| PolyForm::<Rational>::from_strings(n, &[(k.to_string(), v.to_string())].into()).unwrap();
    let data = TDualityData::new(f(3, "[2]", "x1"), f(3, "[3]", "x2^2"), f(3, "[1,2,3]", "x1^2 - 1/2")).unwrap();
    let degree = |p: &PolyForm<Rational>| p.terms().values().map(|c| c.degree()).max().unwrap_or(0);
    let (c1, c2) = (data.c1().unwrap(), data.c2().unwrap());
    let shape = !c1.is_zero() && !c2.is_zero() && !data.h().is_zero() && [&c1, &c2, data.h()].iter().all(|p| degree(p) <= 2);
    let ledger = tduality::intertwining_ledger(&data, Orientation::Left).unwrap();
    let holds = ledger.iter().filter(|e| e.holds).count();
    let anti = ledger.iter().filter(|e| e.anti).count();
    let checks = ["tau_one_is_theta2", "tau_theta1_is_one", "intertwining", "purity_preserved"];
    let ok = shape && checks.iter().all(|c| r.checks[*c]) && r.values["purity_samples"].as_u64().unwrap_or(0) >= 10;
    Line {
        id: 6,
        ok,
        text: format!(
            "T-duality: tau(1)=theta2 {}, tau(theta1)=1 {}, purity {}, intertwining {holds}/{} (anti-commuting {anti}/{})",
            r.checks["tau_one_is_theta2"],
            r.checks["tau_theta1_is_one"],
            r.checks["purity_preserved"],
            ledger.len(),
            ledger.len()
        ),
    }
}

fn ac7() -> Line {
    let cfg = |k| SuiteConfig::new(SEED + 10 + k, 200, 1, 5);
    let (ok, text) = suites(&[
        verify::choice_splitting::<Rational>(cfg(0)),
        verify::choice_perturbation::<Rational>(cfg(1)),
        verify::choice_delta::<Rational>(cfg(2)),
    ]);
    Line { id: 7, ok, text: format!("choice independence: {text}") }
}

fn ac8() -> Line {
    let guard = verify::exactness_guard(SuiteConfig::new(SEED + 20, 100, 1, 5));
    let gaussian: Vec<_> = ["dictionary-roundtrip", "transversality-biconditional", "perturbation", "b-covariance", "choice-perturbation"]
        .iter()
        .map(|n| verify::run_named::<Gaussian>(n, SuiteConfig::new(SEED + 21, 40, 2, 4)).unwrap())
        .collect();
    let (gok, gtext) = suites(&gaussian);
    Line { id: 8, ok: guard.ok() && gok, text: format!("exactness guard: {}; gaussian mode: {gtext}", guard.summary()) }
}

fn main() {
    let lines = [ac1(), ac2(), ac3(), ac4(), ac5(), ac6(), ac7(), ac8()];
    let mut broken = Vec::new();
    for l in &lines {
        println!("AC{} {} {}", l.id, if l.ok { "PASS" } else { "FAIL" }, l.text);
        if l.ok == KNOWN_RED.contains(&l.id) {
            broken.push(l.id);
        }
    }
    if !broken.is_empty() {
        eprintln!("criteria out of line with the recorded status: {broken:?}");
        std::process::exit(1);
    }
}
