use std::collections::HashSet;
use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_3, FRAC_PI_4};

use semislant::catalog;
use semislant::check::Status;
use semislant::report::{
    example_matrix, run_suite, sample_points, selected_ids, CheckSelection, RunConfig,
    SampleConfig, SampleMode, VerificationReport, EXAMPLES,
};
use semislant::semislant::SubmersionClass;
use semislant::Error;

fn ex6_3_config(count: usize, seed: u64) -> RunConfig {
    let mut c = RunConfig::for_example("ex6_3");
    c.alpha = Some(FRAC_PI_3);
    c.sample.count = count;
    c.sample.seed = seed;
    c
}

#[test]
fn registry_matrices() {
    let a = example_matrix("ex6_3", Some(FRAC_PI_3)).unwrap();
    assert_eq!(a.shape(), (5, 9));
    assert!((a[(0, 0)] - FRAC_1_SQRT_2).abs() < 1e-15);
    assert!((a[(2, 2)] - FRAC_PI_3.sin()).abs() < 1e-15);
    assert!((a[(2, 3)] + FRAC_PI_3.cos()).abs() < 1e-15);
    assert_eq!(example_matrix("ex6_5", Some(0.4)).unwrap().shape(), (3, 9));
    for info in EXAMPLES {
        let a = example_matrix(info.id, info.needs_alpha.then_some(0.7)).unwrap();
        assert_eq!(a.shape(), (info.m2, 2 * info.n + 1));
    }
    assert!(matches!(
        example_matrix("ex6_3", None),
        Err(Error::MissingAlpha(_))
    ));
    match example_matrix("ex9_9", None) {
        Err(Error::UnknownExample { valid, .. }) => assert!(valid.contains("ex6_6")),
        other => panic!("{other:?}"),
    }
}

#[test]
fn sampling_is_seeded_and_respects_the_slice() {
    let s = SampleConfig {
        count: 30,
        seed: 5,
        ..SampleConfig::default()
    };
    let a = sample_points(4, &s);
    assert_eq!(a, sample_points(4, &s));
    assert_ne!(a, sample_points(4, &SampleConfig { seed: 6, ..s }));
    for p in &a {
        assert!(p.coords().iter().skip(4).take(4).all(|y| *y == 0.0));
        assert!(p.coords().iter().all(|c| c.abs() <= 0.5));
    }
    let b = sample_points(
        4,
        &SampleConfig {
            mode: SampleMode::Box,
            ..s
        },
    );
    assert!(b
        .iter()
        .any(|p| p.coords().iter().skip(4).take(4).any(|y| *y != 0.0)));
}

#[test]
fn ex6_3_suite() {
    let r = run_suite(&ex6_3_config(50, 7)).unwrap();
    let c = &r.classification;
    assert_eq!(c.class, SubmersionClass::SemiSlant);
    assert_eq!((c.dim_vertical, c.dim_d1, c.dim_d2), (4, 2, 2));
    assert!((c.theta.unwrap() - FRAC_PI_3).abs() < 1e-6);
    assert_eq!(c.points_classified, 50);
    assert_eq!(r.exit_code(), 0);
    assert!(r.checks.iter().all(|e| e.status != Status::Fail));
    assert_eq!(r.checks.len(), catalog::CHECKS.len());
    assert_eq!(r.meta.seed, 7);
}

#[test]
fn ex6_4_defaults() {
    let mut cfg = RunConfig::for_example("ex6_4");
    cfg.sample.count = 20;
    let r = run_suite(&cfg).unwrap();
    assert!((r.classification.theta.unwrap() - FRAC_PI_4).abs() < 1e-6);
    for id in [
        "oneill.t_symmetric",
        "oneill.a_alternating",
        "oneill.a_half_bracket",
    ] {
        assert_eq!(r.check(id).unwrap().status, Status::Pass, "{id}");
    }
    assert_eq!(r.exit_code(), 0);
}

#[test]
fn strict_tolerances_fail_the_run() {
    let cfg = RunConfig::from_json(
        r#"{"example":"ex6_4","sample":{"count":3},"tolerances":{"algebraic_tol":1e-20},"checks":["contact","submersion"]}"#,
    )
    .unwrap();
    let r = run_suite(&cfg).unwrap();
    assert!(r.checks.iter().any(|e| e.status == Status::Fail));
    assert_eq!(r.exit_code(), 1);
    let failed = r.checks.iter().find(|e| e.status == Status::Fail).unwrap();
    assert!(!failed.per_point_failures.is_empty());
}

#[test]
fn reports_are_deterministic_and_round_trip() {
    let cfg = ex6_3_config(10, 3);
    let a = run_suite(&cfg).unwrap().to_json();
    let b = run_suite(&cfg).unwrap().to_json();
    assert_eq!(a, b);
    let back = VerificationReport::from_json(&a).unwrap();
    assert_eq!(back.to_json(), a);
    assert_eq!(back.meta.config, cfg);
}

#[test]
fn every_emitted_id_has_one_anchor() {
    let r = run_suite(&ex6_3_config(3, 1)).unwrap();
    let mut seen = HashSet::new();
    for e in &r.checks {
        assert!(seen.insert(e.id.clone()), "duplicate {}", e.id);
        let matches = catalog::CHECKS.iter().filter(|c| c.id == e.id).count();
        assert_eq!(matches, 1, "{}", e.id);
        assert_eq!(e.anchor, catalog::anchor(&e.id));
        assert!(!e.anchor.is_empty());
    }
}

#[test]
fn check_selection() {
    let ids = selected_ids(&CheckSelection::parse("square,contact.eta_xi")).unwrap();
    assert_eq!(ids.len(), 9);
    assert!(ids
        .iter()
        .all(|i| i.starts_with("square.") || *i == "contact.eta_xi"));
    // prefixes only match at a dot boundary
    assert!(matches!(
        selected_ids(&CheckSelection::parse("squ")),
        Err(Error::UnknownCheck { .. })
    ));

    let mut cfg = ex6_3_config(3, 1);
    cfg.checks = CheckSelection::parse("slant");
    let r = run_suite(&cfg).unwrap();
    assert_eq!(r.checks.len(), 4);
    assert!(r.checks.iter().all(|e| e.id.starts_with("slant.")));
}

#[test]
fn config_errors() {
    let bad = [
        r#"{"example":"ex6_3"}"#,
        r#"{"example":"ex6_3","alpha":2.0}"#,
        r#"{"example":"nope"}"#,
        r#"{"example":"ex6_4","n":2}"#,
        r#"{"custom_map":{"rows":[[1,0,0]]}}"#,
        r#"{"custom_map":{"rows":[[1,0]]},"n":1}"#,
        r#"{"custom_map":{"rows":[[1,0,0],[0,1,0],[0,0,1]]},"n":1}"#,
        r#"{"example":"ex6_4","custom_map":{"rows":[[1,0,0]]},"n":1}"#,
        r#"{"example":"ex6_4","sample":{"count":0}}"#,
        r#"{"example":"ex6_4","sample":{"box_halfwidth":-1}}"#,
        r#"{"example":"ex6_4","checks":"some"}"#,
        r#"{"example":"ex6_4","tolerances":{"step":0}}"#,
        r#"{"example":"ex6_4","extra":1}"#,
        r#"{"example":"ex6_4""#,
    ];
    for text in bad {
        assert!(RunConfig::from_json(text).is_err(), "{text}");
    }
    let ok = RunConfig::from_json(r#"{"custom_map":{"rows":[[0,0,1]],"offset":[1]},"n":1}"#);
    assert!(ok.is_ok());
}
