//! One checker per identity. Each builds both sides from the primitive
//! evaluators (brackets, Schur functions, determinants, Pfaffians) and returns
//! an [`IdentityEvaluation`].

mod bracketed;
mod okada;
pub mod registry;
mod vandermonde;

pub use bracketed::{
    check_cauchy, check_frobenius, check_frobenius_limit_degeneration, check_key_identity, check_main,
    check_riemann, check_schur_pfaffian, LimitSample,
};
pub use okada::{check_det1, check_det2, check_okada_det, check_okada_pf, check_trig_det, check_trig_pf};
pub use registry::{IdentityDescriptor, IdentityRegistry, Params, Regime, SamplePoint, Schema};
pub use vandermonde::{
    check_general_det, check_general_pf, check_rational_schur_det, check_rational_schur_pf,
    check_specialization_consistency, specialization_pq,
};

pub use crate::evaluation::IdentityEvaluation;

use crate::bracket::Bracket;
use crate::error::{Error, Result};
use crate::scalar::{Scalar, Tolerance};

/// Comparison tolerance plus the modulus below which an approximate
/// denominator counts as a pole. Exact fields reject only exact zeros.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CheckOptions {
    pub tol: Tolerance,
    pub pole_threshold: f64,
}

impl CheckOptions {
    pub fn new(tol: Tolerance, pole_threshold: f64) -> Self {
        Self { tol, pole_threshold }
    }

    pub fn exact() -> Self {
        Self { tol: Tolerance::exact(), pole_threshold: 0.0 }
    }
}

impl Default for CheckOptions {
    fn default() -> Self {
        Self { tol: Tolerance::default(), pole_threshold: 1e-12 }
    }
}

/// Rejects a denominator factor that vanishes (or is negligible).
fn denom<S: Scalar>(v: S, what: &'static str, opts: &CheckOptions) -> Result<S> {
    if v.is_negligible(opts.pole_threshold) {
        Err(Error::Pole(what))
    } else {
        Ok(v)
    }
}

fn ensure_len<S>(v: &[S], expected: usize) -> Result<()> {
    if v.len() == expected {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, got: v.len() })
    }
}

fn even_half<S>(v: &[S]) -> Result<usize> {
    if v.len() % 2 == 1 {
        Err(Error::OddDimension(v.len()))
    } else {
        Ok(v.len() / 2)
    }
}

/// `[a + b + ...]` for a slice of summands.
fn br<S: Scalar, B: Bracket<S>>(f: &B, terms: &[&S]) -> Result<S> {
    let arg = terms.iter().fold(S::zero(), |acc, t| acc + (*t).clone());
    f.eval(&arg)
}

/// Concatenation of several coordinate vectors.
fn concat<S: Clone>(parts: &[&[S]]) -> Vec<S> {
    parts.iter().flat_map(|p| p.iter().cloned()).collect()
}
