//! Trial execution across identities and parameter configurations.

use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use super::sampler::{sample_point, trial_rng, Sample, SamplerConfig};
use crate::bracket::BracketFunction;
use crate::error::{Error, Result};
use crate::identities::{CheckOptions, IdentityDescriptor, IdentityEvaluation, IdentityRegistry, Params, Regime, SamplePoint};
use crate::scalar::{Tolerance, Value};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SuiteOptions {
    pub trials: usize,
    pub tol: Tolerance,
    /// Parameters replacing the corresponding fields of every default configuration.
    pub overrides: Params,
    pub parallel: bool,
}

impl SuiteOptions {
    pub fn new(trials: usize) -> Self {
        Self { trials, tol: Tolerance::default(), overrides: Params::default(), parallel: true }
    }
}

/// Aggregate outcome of all trials of one identity/configuration pair.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrialReport {
    pub identity_name: String,
    pub regime: Regime,
    pub params: Params,
    pub trials_run: usize,
    pub trials_passed: usize,
    pub trials_errored: usize,
    pub max_residual: f64,
    /// Both sides at the trial with the largest residual.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub worst_lhs: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub worst_rhs: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_error: Option<String>,
    pub seed: u64,
    pub elapsed_ms: f64,
}

impl TrialReport {
    pub fn all_passed(&self) -> bool {
        self.trials_passed == self.trials_run
    }
}

enum Outcome {
    Evaluated { passed: bool, residual: f64, lhs: Value, rhs: Value },
    Errored(String),
}

type Runner<S> = fn(&BracketFunction, &Params, &SamplePoint<S>, &CheckOptions) -> Result<IdentityEvaluation<S>>;

struct Job<'a> {
    desc: &'a IdentityDescriptor,
    params: Params,
}

/// Runs `opts.trials` trials of every default configuration (after
/// overrides) of each selected identity.
pub fn run_suite(
    registry: &IdentityRegistry,
    cfg: &SamplerConfig,
    selection: &[&str],
    opts: &SuiteOptions,
) -> Result<Vec<TrialReport>> {
    cfg.validate()?;
    if opts.trials == 0 {
        return Err(Error::Config("trials must be positive".into()));
    }
    let f = cfg.bracket()?;
    let mut jobs = Vec::new();
    for name in selection {
        let desc = registry.get(name)?;
        if !desc.admits(cfg.regime) {
            return Err(Error::Config(format!("{name} does not admit the {} regime", cfg.regime)));
        }
        let mut seen = Vec::new();
        for base in (desc.default_configs)(cfg.regime) {
            let params = base.overridden_by(&opts.overrides);
            if !seen.contains(&params) {
                (desc.schema)(&params)?;
                seen.push(params);
                jobs.push(Job { desc, params });
            }
        }
    }
    let run = |job: &Job| run_config(job.desc, &job.params, cfg, &f, opts);
    if opts.parallel {
        jobs.par_iter().map(run).collect()
    } else {
        jobs.iter().map(run).collect()
    }
}

/// Identity names in registry order that admit `regime`.
pub fn all_for_regime(registry: &IdentityRegistry, regime: Regime) -> Vec<&'static str> {
    registry.entries().iter().filter(|d| d.admits(regime)).map(|d| d.name).collect()
}

fn run_config(
    desc: &IdentityDescriptor,
    params: &Params,
    cfg: &SamplerConfig,
    f: &BracketFunction,
    opts: &SuiteOptions,
) -> Result<TrialReport> {
    let start = Instant::now();
    let outcomes = match (cfg.regime.is_exact(), desc.complex) {
        (true, _) => trials(desc.exact, desc, params, cfg, f, opts)?,
        (false, Some(runner)) => trials(runner, desc, params, cfg, f, opts)?,
        (false, None) => return Err(Error::Config(format!("{} is exact-only", desc.name))),
    };
    let mut report = TrialReport {
        identity_name: desc.name.to_string(),
        regime: cfg.regime,
        params: *params,
        trials_run: outcomes.len(),
        trials_passed: 0,
        trials_errored: 0,
        max_residual: 0.0,
        worst_lhs: None,
        worst_rhs: None,
        first_error: None,
        seed: cfg.seed,
        elapsed_ms: 0.0,
    };
    for o in outcomes {
        match o {
            Outcome::Evaluated { passed, residual, lhs, rhs } => {
                report.trials_passed += passed as usize;
                if report.worst_lhs.is_none() || residual > report.max_residual {
                    report.max_residual = residual;
                    report.worst_lhs = Some(lhs);
                    report.worst_rhs = Some(rhs);
                }
            }
            Outcome::Errored(msg) => {
                report.trials_errored += 1;
                report.first_error.get_or_insert(msg);
            }
        }
    }
    report.elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(report)
}

fn trials<S: Sample>(
    runner: Runner<S>,
    desc: &IdentityDescriptor,
    params: &Params,
    cfg: &SamplerConfig,
    f: &BracketFunction,
    opts: &SuiteOptions,
) -> Result<Vec<Outcome>> {
    let schema = (desc.schema)(params)?;
    let check = cfg.check_options(opts.tol);
    let one = |t: usize| {
        let mut rng = trial_rng(cfg.seed, cfg.regime, desc.name, params, t as u64);
        match sample_point(cfg, &schema, &mut rng, |pt| runner(f, params, pt, &check)) {
            Ok((_, ev)) => Outcome::Evaluated {
                passed: ev.passed,
                residual: ev.residual,
                lhs: ev.lhs.to_value(),
                rhs: ev.rhs.to_value(),
            },
            Err(e) => Outcome::Errored(e.to_string()),
        }
    };
    Ok(if opts.parallel {
        (0..opts.trials).into_par_iter().map(one).collect()
    } else {
        (0..opts.trials).map(one).collect()
    })
}
