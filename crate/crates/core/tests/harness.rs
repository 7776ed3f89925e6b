//! Library-level harness runs across the registry.

use pfid::harness::{emit_report, exit_code, run_suite, ConfigEcho, Format, SamplerConfig, SuiteOptions};
use pfid::identities::{IdentityRegistry, Params, Regime};
use pfid::scalar::{Complex, Tolerance};

#[test]
fn exact_cauchy_hundred_trials() {
    let reg = IdentityRegistry::default();
    let cfg = SamplerConfig::new(1, Regime::Rational);
    let reports = run_suite(&reg, &cfg, &["cauchy"], &SuiteOptions::new(100)).unwrap();
    assert_eq!(reports.len(), 3, "n = 1..3");
    for r in &reports {
        assert_eq!((r.trials_passed, r.trials_errored, r.max_residual), (100, 0, 0.0));
    }
    assert_eq!(exit_code(&reports), 0);
}

#[test]
fn elliptic_main_fifty_trials() {
    let reg = IdentityRegistry::default();
    let cfg = SamplerConfig::new(2, Regime::Elliptic);
    let reports = run_suite(&reg, &cfg, &["main"], &SuiteOptions::new(50)).unwrap();
    for r in &reports {
        assert_eq!(r.trials_passed, 50, "{r:?}");
        assert!(r.max_residual <= 1e-8);
    }
}

#[test]
fn every_identity_passes_in_every_admitted_regime() {
    let reg = IdentityRegistry::default();
    for regime in Regime::ALL {
        let cfg = SamplerConfig::new(8, regime);
        let names: Vec<&str> = reg.entries().iter().filter(|d| d.admits(regime)).map(|d| d.name).collect();
        let reports = run_suite(&reg, &cfg, &names, &SuiteOptions::new(5)).unwrap();
        let bad: Vec<_> = reports.iter().filter(|r| !r.all_passed()).collect();
        assert!(bad.is_empty(), "{regime}: {bad:?}");
    }
}

#[test]
fn alternative_tau_still_passes() {
    let reg = IdentityRegistry::default();
    let cfg = SamplerConfig { elliptic_tau: Complex::new(-0.2, 0.8), ..SamplerConfig::new(4, Regime::Elliptic) };
    let reports = run_suite(&reg, &cfg, &["frobenius", "main", "key_identity"], &SuiteOptions::new(20)).unwrap();
    assert!(reports.iter().all(|r| r.all_passed()), "{reports:?}");
}

#[test]
fn overrides_select_a_single_configuration() {
    let reg = IdentityRegistry::default();
    let cfg = SamplerConfig::new(6, Regime::Rational);
    let overrides = Params { n: Some(1), k: Some(1), m: Some(2), ..Params::default() };
    let opts = SuiteOptions { overrides, ..SuiteOptions::new(10) };
    let reports = run_suite(&reg, &cfg, &["rational_schur_det"], &opts).unwrap();
    assert_eq!(reports.len(), 1);
    assert_eq!(reports[0].params, overrides);
    assert!(reports[0].all_passed());
}

#[test]
fn json_echo_reflects_configuration() {
    let cfg = SamplerConfig::new(12, Regime::Trig);
    let echo = ConfigEcho::new("all", &cfg, 7, Tolerance::rel(1e-9), Params::n(2));
    let v: serde_json::Value = serde_json::from_str(&emit_report(&echo, &[], Format::Json)).unwrap();
    assert_eq!(v["config"]["regime"], "trig");
    assert_eq!(v["config"]["trials"], 7);
    assert_eq!(v["config"]["tolerance"]["rel"], 1e-9);
    assert_eq!(v["config"]["tau"], serde_json::json!({"re": 0.3, "im": 1.1}));
    assert_eq!(v["config"]["overrides"], serde_json::json!({"n": 2}));
    assert_eq!(v["reports"], serde_json::json!([]));
}
