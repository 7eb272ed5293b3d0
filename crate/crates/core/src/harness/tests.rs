use super::*;

fn small_scenario() -> Scenario {
    Scenario::new("small")
        .construct("z4", Recipe::Ring { ring: RingDescriptor::residue(4) })
        .construct("reg", Recipe::Regular { of: "z4".into() })
        .construct("quot", Recipe::Quotient { of: "z4".into(), ideal: vec![0, 2] })
        .check("info", "z4", Check::RingInfo {})
        .check("qf", "reg", Check::Qf { routes: None, expect: Some(true) })
        .check("lattice", "reg", Check::Lattice { side: Side::Left, expect: Some(3) })
        .check("baer", "reg", Check::Baer { side: Side::Left, expect: Some(true) })
        .check("baer_quot", "quot", Check::Baer { side: Side::Left, expect: Some(false) })
        .check("centers", "reg", Check::CenterIntersection {})
}

#[test]
fn small_scenario_passes() {
    let report = run_scenario(&small_scenario(), &RunOptions::default()).unwrap();
    for c in &report.checks {
        assert_eq!(c.status, Status::Pass, "{}: {}", c.id, c.summary);
    }
    assert_eq!(report.exit_code(), 0);
    assert!(report.passed);
}

#[test]
fn wrong_expectation_is_a_failure() {
    let s = Scenario::new("bad")
        .construct("reg", Recipe::NamedBimodule { name: "regular_z4".into() })
        .check("lattice", "reg", Check::Lattice { side: Side::Left, expect: Some(4) });
    let report = run_scenario(&s, &RunOptions::default()).unwrap();
    assert_eq!(report.checks[0].status, Status::Fail);
    assert_eq!(report.exit_code(), 1);
}

#[test]
fn tight_cap_is_undecided() {
    let mut s = Scenario::new("capped")
        .construct("reg", Recipe::NamedBimodule { name: "regular_ge16".into() })
        .check("lattice", "reg", Check::Lattice { side: Side::Left, expect: None });
    s.caps.lattice = Some(2);
    let report = run_scenario(&s, &RunOptions::default()).unwrap();
    assert_eq!(report.checks[0].status, Status::Undecided, "{}", report.checks[0].summary);
    assert_eq!(report.exit_code(), 2);
}

#[test]
fn validation_rejects_bad_references() {
    let forward = Scenario::new("fwd")
        .construct("reg", Recipe::Regular { of: "z4".into() })
        .construct("z4", Recipe::Ring { ring: RingDescriptor::residue(4) });
    assert!(matches!(forward.validate(), Err(Error::InvalidInput(_))));

    let wrong_kind = Scenario::new("kind")
        .construct("z4", Recipe::Ring { ring: RingDescriptor::residue(4) })
        .check("qf", "z4", Check::Qf { routes: None, expect: None });
    assert!(matches!(wrong_kind.validate(), Err(Error::InvalidInput(_))));

    let geo_only = Scenario::new("geo")
        .construct("z4", Recipe::Ring { ring: RingDescriptor::residue(4) })
        .check("inv", "z4", Check::GeoInvariants {});
    assert!(geo_only.validate().is_err());

    let mut version = small_scenario();
    version.schema_version = SCHEMA_VERSION + 1;
    assert!(version.validate().is_err());

    let dup = small_scenario().construct("z4", Recipe::NamedGeo { name: "z4".into() });
    assert!(dup.validate().is_err());
}

#[test]
fn scenario_json_round_trip() {
    let s = small_scenario();
    let text = serde_json::to_string_pretty(&s).unwrap();
    assert_eq!(Scenario::from_json(&text).unwrap(), s);
    let unknown = text.replace("\"make\": \"regular\"", "\"make\": \"mystery\"");
    assert!(Scenario::from_json(&unknown).is_err());
}

#[test]
fn geo_checks_on_small_rings() {
    let s = Scenario::new("geo")
        .construct("ge8", Recipe::NamedGeo { name: "ge8".into() })
        .construct("ge16", Recipe::Geo { spec: corpus::ge16_spec() })
        .check("inv", "ge8", Check::GeoInvariants {})
        .check("socle", "ge16", Check::GeoSocle {})
        .check("center", "ge8", Check::GeoCenter { expect_order: Some(8) })
        .check("decomp", "ge16", Check::GeoDecomposition { expect_orders: None })
        .check("verdict", "ge8", Check::GeoVerdict {});
    let mut s = s;
    s.checks.push(CheckSpec {
        id: "agg".into(),
        target: None,
        targets: vec!["ge8".into(), "ge16".into()],
        check: Check::Th4plus1 {},
        expected_source: Some("closed forms".into()),
    });
    let report = run_scenario(&s, &RunOptions::default()).unwrap();
    for c in &report.checks {
        assert_eq!(c.status, Status::Pass, "{}: {}", c.id, c.summary);
    }
    assert_eq!(report.checks.last().unwrap().expected_source.as_deref(), Some("closed forms"));
}

#[test]
fn empty_aggregate_warns() {
    let mut s = Scenario::new("empty");
    s.checks.push(CheckSpec {
        id: "agg".into(),
        target: None,
        targets: vec![],
        check: Check::Th4plus1 {},
        expected_source: None,
    });
    let report = run_scenario(&s, &RunOptions::default()).unwrap();
    assert_eq!(report.checks[0].status, Status::Pass);
    assert!(report.warnings.iter().any(|w| w.contains("vacuous")));
}

#[test]
fn reports_are_deterministic_and_cache_hits_agree() {
    let dir = tempfile::tempdir().unwrap();
    let cached = RunOptions { caps: Caps::default(), cache: Some(Cache::open(dir.path()).unwrap()) };
    let a = run_scenario(&small_scenario(), &RunOptions::default()).unwrap();
    let b = run_scenario(&small_scenario(), &cached).unwrap();
    let c = run_scenario(&small_scenario(), &cached).unwrap();
    assert!(c.checks.iter().all(|r| r.timings.cached));
    let (a, b, c) = (to_value(&a), to_value(&b), to_value(&c));
    assert_eq!(diff_reports(&a, &b), Vec::<String>::new());
    assert_eq!(diff_reports(&b, &c), Vec::<String>::new());
    assert_eq!(normalized(&a), normalized(&c));
}

#[test]
fn diff_lists_changed_paths() {
    let a = json!({ "x": 1, "y": [1, 2], "timings": { "total_ms": 3.0 } });
    let b = json!({ "x": 2, "y": [1, 2], "timings": { "total_ms": 9.0 }, "z": true });
    assert_eq!(diff_reports(&a, &b), vec!["/x".to_string(), "/z".to_string()]);
    assert!(normalized(&a).get("timings").is_none());
}

proptest::proptest! {
    #[test]
    fn timings_never_show_in_diffs(ms in proptest::collection::vec(0.0f64..1e6, 6), cached in proptest::bool::ANY) {
        let report = run_scenario(&small_scenario(), &RunOptions::default()).unwrap();
        let mut other = report.clone();
        for (c, t) in other.checks.iter_mut().zip(&ms) {
            c.timings = CheckTimings { total_ms: *t, cached };
        }
        let (a, b) = (to_value(&report), to_value(&other));
        proptest::prop_assert!(diff_reports(&a, &b).is_empty());
        proptest::prop_assert_eq!(normalized(&normalized(&a)), normalized(&a));
        other.checks[0].summary.push('!');
        proptest::prop_assert_eq!(diff_reports(&a, &to_value(&other)), vec!["/checks/0/summary".to_string()]);
    }
}
