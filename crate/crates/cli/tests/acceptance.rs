//! Acceptance criteria, one pass/fail line each. Run with
//! `cargo test -p hdx-cli --test acceptance -- --nocapture` to see them.

use std::process::Command;
use std::time::{Duration, Instant};

use hdx_core::verify::{self, delta1_sweep_instances, run_claim, ClaimResult, Report, Suite, VerifyConfig, Zoo};

/// Pinned limits. Sample counts are the defaults of `verify::Samples`.
const ALGEBRA_LIMIT: Duration = Duration::from_secs(60);
const SWEEP_LIMIT: Duration = Duration::from_secs(300);
const HIERARCHY_LIMIT: Duration = Duration::from_secs(300);
const ALGEBRA_SAMPLES: usize = 1000;
const DECOMPOSITION_SAMPLES: usize = 500;
const HIERARCHY_SAMPLES: usize = 500;
const CORRECTION_SAMPLES: usize = 200;
const ORACLE_SAMPLES: usize = 100;
const CONJUGATION_SAMPLES: usize = 500;

struct Line {
    id: usize,
    name: &'static str,
    ok: bool,
    detail: String,
}

fn claim<'a>(report: &'a Report, name: &str) -> &'a ClaimResult {
    report.claims.iter().find(|c| c.claim == name).unwrap_or_else(|| panic!("claim {name} missing"))
}

/// Every instance checked, none failed or skipped, and at least `min` of them.
fn complete(c: &ClaimResult, min: usize) -> (bool, String) {
    let ok = c.failed == 0 && c.skipped == 0 && c.checked >= min;
    let mut detail = format!("{}: {} checked, {} failed, {} skipped", c.claim, c.checked, c.failed, c.skipped);
    if let Some(f) = &c.failure {
        detail.push_str(&format!("; {f}"));
    }
    (ok, detail)
}

fn all(parts: &[(bool, String)]) -> (bool, String) {
    (parts.iter().all(|p| p.0), parts.iter().map(|p| p.1.as_str()).collect::<Vec<_>>().join("; "))
}

fn timed(elapsed: Duration, limit: Duration, (ok, detail): (bool, String)) -> (bool, String) {
    (ok && elapsed <= limit, format!("{detail}; {:.1}s of {}s", elapsed.as_secs_f64(), limit.as_secs()))
}

#[test]
fn acceptance() {
    let cfg = VerifyConfig::default();
    let mut lines = Vec::new();
    let mut push = |id, name, (ok, detail): (bool, String)| lines.push(Line { id, name, ok, detail });

    let start = Instant::now();
    let delta1 = verify::run(&cfg, &[Suite::Delta1]).unwrap();
    let algebra_time = start.elapsed();
    let c = claim(&delta1, "coboundary-squares-to-zero");
    push(1, "coboundary squares to zero", timed(algebra_time, ALGEBRA_LIMIT, complete(c, 2 * ALGEBRA_SAMPLES)));
    push(2, "locality decomposition", complete(claim(&delta1, "locality-decomposition"), DECOMPOSITION_SAMPLES));
    push(3, "Cheeger inequality on link graphs", complete(claim(&delta1, "cheeger"), 1));

    let start = Instant::now();
    let zoo = Zoo::new().unwrap();
    let mut sweep = Vec::new();
    let mut counts = Vec::new();
    for k in 1..=2 {
        for n in 6..=8 {
            let instances = delta1_sweep_instances(&zoo, n, k, 3).unwrap();
            let r = run_claim("delta1", "delta1-theorem", &instances, &cfg).unwrap();
            counts.push(format!("n={n} k={k}: {} sets, {} non-local", r.instances, r.checked));
            sweep.push((r.failed == 0, r.failure.unwrap_or_default()));
        }
    }
    let ok = sweep.iter().all(|s| s.0);
    let failures: Vec<&str> = sweep.iter().filter(|s| !s.0).map(|s| s.1.as_str()).collect();
    let detail = [counts.join(", "), failures.join("; ")].join(" ").trim_end().to_string();
    push(4, "delta1 theorem exhaustive sweep", timed(start.elapsed(), SWEEP_LIMIT, (ok, detail)));

    push(5, "star example", complete(claim(&delta1, "star-example"), 10));

    let start = Instant::now();
    let hierarchy = verify::run(&cfg, &[Suite::Hierarchy]).unwrap();
    let parts: Vec<_> = ["claim-bound", "empty-set-balanced", "negligible-degenerate", "small-degenerate"]
        .iter()
        .map(|n| complete(claim(&hierarchy, n), HIERARCHY_SAMPLES))
        .collect();
    push(6, "hierarchy bounds", timed(start.elapsed(), HIERARCHY_LIMIT, all(&parts)));

    let correction = verify::run(&cfg, &[Suite::Correction]).unwrap();
    push(7, "correction contracts", complete(claim(&correction, "correction-contract"), CORRECTION_SAMPLES));
    let parts = [
        complete(claim(&correction, "minimality-oracle"), ORACLE_SAMPLES),
        complete(claim(&correction, "cocycle-oracle"), ORACLE_SAMPLES),
        complete(claim(&correction, "local-minimality-oracle"), ORACLE_SAMPLES),
        complete(claim(&correction, "expansion-constant-oracle"), 1),
    ];
    push(8, "fast paths agree with the oracle", all(&parts));

    let cosystolic = verify::run(&cfg, &[Suite::Cosystolic]).unwrap();
    let parts =
        [complete(claim(&cosystolic, "systole-oracle"), 1), complete(claim(&cosystolic, "trivial-cohomology"), 1)];
    push(9, "torus cohomology and simplex vanishing", all(&parts));

    let nonabelian = verify::run(&cfg, &[Suite::NonAbelian]).unwrap();
    push(10, "conjugation invariance", complete(claim(&nonabelian, "conjugation-invariance"), CONJUGATION_SAMPLES));

    let dir = tempfile::tempdir().unwrap();
    let run_binary = || {
        let out = Command::new(env!("CARGO_BIN_EXE_hdx"))
            .args(["verify", "all", "--seed", "0"])
            .current_dir(dir.path())
            .env_remove("HDX_BUDGET")
            .output()
            .unwrap();
        (out.status.success(), out.stdout)
    };
    let (first_ok, first) = run_binary();
    let (second_ok, second) = run_binary();
    push(
        11,
        "verify all is deterministic",
        (first_ok && second_ok && first == second && !first.is_empty(), format!("{} bytes, identical: {}", first.len(), first == second)),
    );

    for l in &lines {
        println!("criterion {:2} {} {}: {}", l.id, if l.ok { "PASS" } else { "FAIL" }, l.name, l.detail);
    }
    let failed: Vec<usize> = lines.iter().filter(|l| !l.ok).map(|l| l.id).collect();
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
