use hdx_core::verify::{replay, run, Samples, Suite, Verdict, VerifyConfig};

fn quick(seed: u64) -> VerifyConfig {
    VerifyConfig { seed, samples: Samples::quick(), ..VerifyConfig::default() }
}

#[cfg(not(feature = "mutate-coboundary-sign"))]
#[test]
fn quick_run_of_every_suite_passes() {
    let report = run(&quick(7), &Suite::ALL).unwrap();
    let failures: Vec<_> = report.claims.iter().filter(|c| !c.passed).map(|c| (&c.claim, &c.failure)).collect();
    assert!(report.passed, "{failures:?}");
    assert_eq!(report.suites.len(), 5);
}

#[test]
fn suites_do_not_depend_on_each_other() {
    let alone = run(&quick(3), &[Suite::Hierarchy]).unwrap();
    let together = run(&quick(3), &[Suite::Delta1, Suite::Hierarchy]).unwrap();
    let hierarchy: Vec<_> = together.claims.iter().filter(|c| c.suite == "hierarchy").collect();
    assert_eq!(alone.claims.len(), hierarchy.len());
    for (a, b) in alone.claims.iter().zip(hierarchy) {
        assert_eq!(serde_json::to_string(a).unwrap(), serde_json::to_string(b).unwrap());
    }
}

#[test]
fn same_seed_gives_identical_reports() {
    let a = run(&quick(11), &[Suite::Delta1, Suite::NonAbelian]).unwrap().render_text();
    let b = run(&quick(11), &[Suite::Delta1, Suite::NonAbelian]).unwrap().render_text();
    assert_eq!(a, b);
}

#[test]
fn empty_selection_is_a_passing_no_op() {
    let report = run(&quick(0), &Suite::parse_list("").unwrap()).unwrap();
    assert!(report.passed);
    assert!(report.claims.is_empty());
}

#[cfg(feature = "mutate-coboundary-sign")]
#[test]
fn wrong_coboundary_sign_is_caught_and_bundled() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = VerifyConfig { bundle_dir: Some(dir.path().to_path_buf()), ..quick(0) };
    let report = run(&cfg, &[Suite::Delta1]).unwrap();
    assert!(!report.passed);
    let claim = report.claims.iter().find(|c| c.claim == "coboundary-squares-to-zero").unwrap();
    assert!(claim.failed > 0);
    let (name, outcome) = replay(std::path::Path::new(&claim.bundles[0]), &cfg.budget).unwrap();
    assert_eq!(name, "coboundary-squares-to-zero");
    assert_eq!(outcome.verdict, Verdict::Fail);
}

#[cfg(not(feature = "mutate-coboundary-sign"))]
#[test]
fn replayed_bundles_pass_on_a_correct_build() {
    use hdx_core::cochain::Cochain;
    use hdx_core::generate;
    use hdx_core::group::FiniteGroup;
    use hdx_core::io::{write_bundle, Bundle};
    use std::sync::Arc;

    let dir = tempfile::tempdir().unwrap();
    let x = Arc::new(generate::complete(5, 2).unwrap());
    let g = Arc::new(FiniteGroup::parse("Z3").unwrap());
    let mut f = Cochain::zero(&x, &g, 0).unwrap();
    f.set(1, g.element(2).unwrap());
    let bundle = Bundle {
        complex: x,
        cochains: vec![("f".into(), f)],
        claim: serde_json::json!({ "suite": "delta1", "claim": "coboundary-squares-to-zero", "params": {} }),
    };
    write_bundle(dir.path(), &bundle).unwrap();
    let (_, outcome) = replay(dir.path(), &Default::default()).unwrap();
    assert_eq!(outcome.verdict, Verdict::Pass);
}
