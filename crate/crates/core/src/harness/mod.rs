//! Randomized verification harness: reproducible sampling, parallel trial
//! execution and reporting.

pub mod report;
pub mod runner;
pub mod sampler;

pub use report::{emit_report, exit_code, ConfigEcho, Format};
pub use runner::{all_for_regime, run_suite, SuiteOptions, TrialReport};
pub use sampler::{sample_point, trial_rng, Sample, SamplerConfig, MAX_ATTEMPTS};
