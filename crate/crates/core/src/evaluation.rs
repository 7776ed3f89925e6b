use crate::error::Result;
use crate::scalar::{near_equal, Scalar, Tolerance};

/// Both sides of one identity at one sample point, with the verdict.
///
/// `parts` holds sub-evaluations for composite checks; the verdict requires
/// every part to pass as well.
#[derive(Debug, Clone, PartialEq)]
pub struct IdentityEvaluation<S> {
    pub identity_name: String,
    pub lhs: S,
    pub rhs: S,
    pub residual: f64,
    pub passed: bool,
    pub parts: Vec<IdentityEvaluation<S>>,
}

impl<S: Scalar> IdentityEvaluation<S> {
    pub fn compare(name: impl Into<String>, lhs: S, rhs: S, tol: &Tolerance) -> Result<Self> {
        let passed = near_equal(&lhs, &rhs, tol)?;
        let residual = S::residual(&lhs, &rhs);
        Ok(Self {
            identity_name: name.into(),
            lhs,
            rhs,
            residual,
            passed,
            parts: Vec::new(),
        })
    }

    pub fn with_parts(mut self, parts: Vec<IdentityEvaluation<S>>) -> Self {
        for p in &parts {
            self.passed &= p.passed;
            self.residual = self.residual.max(p.residual);
        }
        self.parts = parts;
        self
    }
}
