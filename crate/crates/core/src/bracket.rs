//! The bracket `[x]`: an odd entire function satisfying the Riemann relation.
//!
//! Three base kinds are provided (linear, `e^x - e^{-x}`, and the Weierstrass
//! sigma function of the lattice `Z + τZ`), each optionally composed with a
//! gauge transform `x -> e^{a x² + b} [c x]`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::scalar::{Complex, Exact, Scalar};

/// Default lattice ratio used by the test suites and the CLI.
pub const DEFAULT_TAU: Complex = Complex64::new(0.3, 1.1);
/// Default truncation threshold of the theta series.
pub const DEFAULT_SERIES_TOL: f64 = 1e-17;
/// Smallest admissible `Im(τ)`.
pub const MIN_IM_TAU: f64 = 0.05;
/// Theta series term cap.
pub const MAX_THETA_TERMS: usize = 200;

const I: Complex = Complex64::new(0.0, 1.0);
const EXP_LIMIT: f64 = 700.0;

/// Evaluation of `[x]` over a scalar field.
pub trait Bracket<S> {
    fn eval(&self, x: &S) -> Result<S>;
}

/// Lattice ratio and theta truncation threshold.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EllipticParams {
    tau: Complex,
    series_tol: f64,
}

impl EllipticParams {
    pub fn new(tau: Complex, series_tol: f64) -> Result<Self> {
        if !(tau.im.is_finite() && tau.re.is_finite()) || tau.im < MIN_IM_TAU {
            return Err(Error::InvalidBracket(format!(
                "Im(tau) must be at least {MIN_IM_TAU}, got {tau}"
            )));
        }
        if !(series_tol > 0.0 && series_tol <= 1e-6) {
            return Err(Error::InvalidBracket(format!(
                "series_tol must lie in (0, 1e-6], got {series_tol}"
            )));
        }
        Ok(Self { tau, series_tol })
    }

    pub fn with_tau(tau: Complex) -> Result<Self> {
        Self::new(tau, DEFAULT_SERIES_TOL)
    }

    pub fn tau(&self) -> Complex {
        self.tau
    }

    pub fn series_tol(&self) -> f64 {
        self.series_tol
    }

    /// `2 q^{(n + 1/2)^2}` with nome `q = e^{iπτ}`.
    fn coefficient(&self, n: usize) -> Complex {
        let h = n as f64 + 0.5;
        2.0 * (I * PI * self.tau * (h * h)).exp()
    }

    /// Sums `Σ (-1)^n c_n g(n)` where `|g(n)| <= bound(n)`, stopping once the
    /// next term is certainly below `series_tol * (|partial| + 1)`.
    fn series(&self, term: impl Fn(usize) -> Complex, bound: impl Fn(usize) -> f64) -> Result<Complex> {
        let mut acc = Complex64::new(0.0, 0.0);
        for n in 0..MAX_THETA_TERMS {
            let c = self.coefficient(n);
            if c.norm() * bound(n) < self.series_tol * (acc.norm() + 1.0) {
                return Ok(acc);
            }
            let t = c * term(n);
            acc += if n % 2 == 0 { t } else { -t };
        }
        Err(Error::NonConvergence(MAX_THETA_TERMS))
    }
}

/// Jacobi `θ₁(v | τ) = 2 Σ_{n≥0} (-1)^n q^{(n+1/2)²} sin((2n+1) v)`, summed
/// directly without argument reduction.
pub fn theta1(v: Complex, p: &EllipticParams) -> Result<Complex> {
    let im = v.im.abs();
    p.series(
        |n| ((2 * n + 1) as f64 * v).sin(),
        |n| ((2 * n + 1) as f64 * im).cosh(),
    )
}

/// `θ₁'(0)` from the term-wise differentiated series.
pub fn theta1_prime_at_zero(p: &EllipticParams) -> Result<Complex> {
    p.series(|n| Complex64::new((2 * n + 1) as f64, 0.0), |n| (2 * n + 1) as f64)
}

/// `θ₁'''(0)` from the term-wise differentiated series.
pub fn theta1_third_at_zero(p: &EllipticParams) -> Result<Complex> {
    let cube = |n: usize| ((2 * n + 1) as f64).powi(3);
    p.series(|n| Complex64::new(-cube(n), 0.0), cube)
}

/// Weierstrass sigma function of the lattice `Z + τZ`, normalized so that
/// `σ(z) = z + O(z⁵)`:
///
/// `σ(z) = exp(η z²) θ₁(πz) / (π θ₁'(0))`, `η = -(π²/6) θ₁'''(0) / θ₁'(0)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sigma {
    params: EllipticParams,
    theta1_prime: Complex,
    eta: Complex,
}

impl Sigma {
    pub fn new(params: EllipticParams) -> Result<Self> {
        let theta1_prime = theta1_prime_at_zero(&params)?;
        let theta1_third = theta1_third_at_zero(&params)?;
        let eta = -(PI * PI / 6.0) * theta1_third / theta1_prime;
        Ok(Self { params, theta1_prime, eta })
    }

    pub fn params(&self) -> &EllipticParams {
        &self.params
    }

    /// Quasi-period constant: `σ(z + 1) = -e^{2η(z + 1/2)} σ(z)`.
    pub fn eta(&self) -> Complex {
        self.eta
    }

    /// Evaluates `σ(z)` after reducing `z = z₀ + m + nτ` into the fundamental
    /// cell; the theta multiplier `(-1)^{m+n} q^{-n²} e^{-2inπz₀}` is carried in
    /// log-space together with `η z²`.
    pub fn eval(&self, z: Complex) -> Result<Complex> {
        if !Scalar::is_finite(&z) {
            return Err(Error::NonFinite);
        }
        let tau = self.params.tau;
        let n = (z.im / tau.im).round();
        let shifted = z - n * tau;
        let m = shifted.re.round();
        let z0 = shifted - m;
        let w = PI * z0;
        let log_mult = I * PI * (m + n) - I * PI * tau * (n * n) - 2.0 * I * n * w + self.eta * z * z;
        if log_mult.re > EXP_LIMIT {
            return Err(Error::ArgumentTooLarge);
        }
        let theta = theta1(w, &self.params)?;
        let value = log_mult.exp() * theta / (PI * self.theta1_prime);
        if !Scalar::is_finite(&value) {
            return Err(Error::ArgumentTooLarge);
        }
        Ok(value)
    }

    /// The same formula without lattice reduction; for cross-checks.
    pub fn eval_unreduced(&self, z: Complex) -> Result<Complex> {
        let theta = theta1(PI * z, &self.params)?;
        Ok((self.eta * z * z).exp() * theta / (PI * self.theta1_prime))
    }
}

/// Gauge transform parameters for `[x] -> e^{a x² + b} [c x]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaugeParams {
    a: Complex,
    b: Complex,
    c: Complex,
}

impl GaugeParams {
    pub fn new(a: Complex, b: Complex, c: Complex) -> Result<Self> {
        if Scalar::is_zero(&c) {
            return Err(Error::InvalidBracket("gauge scale c must be nonzero".into()));
        }
        if ![a, b, c].iter().all(Scalar::is_finite) {
            return Err(Error::NonFinite);
        }
        Ok(Self { a, b, c })
    }

    pub fn a(&self) -> Complex {
        self.a
    }
    pub fn b(&self) -> Complex {
        self.b
    }
    pub fn c(&self) -> Complex {
        self.c
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BracketKind {
    /// `[x] = x`
    Rational,
    /// `[x] = e^x - e^{-x}`
    Trigonometric,
    /// `[x] = σ(x)`
    Elliptic(Sigma),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BracketFunction {
    pub kind: BracketKind,
    pub gauge: Option<GaugeParams>,
}

impl BracketFunction {
    pub fn rational() -> Self {
        Self { kind: BracketKind::Rational, gauge: None }
    }

    pub fn trigonometric() -> Self {
        Self { kind: BracketKind::Trigonometric, gauge: None }
    }

    pub fn elliptic(params: EllipticParams) -> Result<Self> {
        Ok(Self { kind: BracketKind::Elliptic(Sigma::new(params)?), gauge: None })
    }

    pub fn with_gauge(self, gauge: GaugeParams) -> Self {
        Self { gauge: Some(gauge), ..self }
    }

    pub fn kind_name(&self) -> &'static str {
        match self.kind {
            BracketKind::Rational => "rational",
            BracketKind::Trigonometric => "trigonometric",
            BracketKind::Elliptic(_) => "elliptic",
        }
    }

    fn eval_base(&self, x: Complex) -> Result<Complex> {
        match &self.kind {
            BracketKind::Rational => Ok(x),
            BracketKind::Trigonometric => {
                if x.re.abs() > EXP_LIMIT {
                    return Err(Error::ArgumentTooLarge);
                }
                Ok(x.exp() - (-x).exp())
            }
            BracketKind::Elliptic(sigma) => sigma.eval(x),
        }
    }
}

impl Bracket<Complex> for BracketFunction {
    fn eval(&self, x: &Complex) -> Result<Complex> {
        if !Scalar::is_finite(x) {
            return Err(Error::NonFinite);
        }
        let value = match &self.gauge {
            None => self.eval_base(*x)?,
            Some(g) => {
                let expo = g.a * x * x + g.b;
                if expo.re > EXP_LIMIT {
                    return Err(Error::ArgumentTooLarge);
                }
                expo.exp() * self.eval_base(g.c * x)?
            }
        };
        if !Scalar::is_finite(&value) {
            return Err(Error::ArgumentTooLarge);
        }
        Ok(value)
    }
}

/// Over exact rationals only the ungauged linear bracket is available.
impl Bracket<Exact> for BracketFunction {
    fn eval(&self, x: &Exact) -> Result<Exact> {
        match (&self.kind, &self.gauge) {
            (BracketKind::Rational, None) => Ok(x.clone()),
            _ => Err(Error::NotExact),
        }
    }
}

/// The three products `T₁ = [x+y][x−y][u+v][u−v]`, `T₂ = [x+u][x−u][y+v][y−v]`,
/// `T₃ = [x+v][x−v][y+u][y−u]` of the Riemann relation `T₁ − T₂ + T₃ = 0`.
pub fn riemann_terms<S: Scalar, B: Bracket<S>>(f: &B, x: &S, y: &S, u: &S, v: &S) -> Result<[S; 3]> {
    let quad = |p: &S, q: &S, r: &S, s: &S| -> Result<S> {
        Ok(f.eval(&(p.clone() + q.clone()))?
            * f.eval(&(p.clone() - q.clone()))?
            * f.eval(&(r.clone() + s.clone()))?
            * f.eval(&(r.clone() - s.clone()))?)
    };
    Ok([quad(x, y, u, v)?, quad(x, u, y, v)?, quad(x, v, y, u)?])
}

/// `|T₁ − T₂ + T₃| / (max(|T₁|, |T₂|, |T₃|) + 1)`.
pub fn riemann_residual<S: Scalar, B: Bracket<S>>(f: &B, x: &S, y: &S, u: &S, v: &S) -> Result<f64> {
    let [t1, t2, t3] = riemann_terms(f, x, y, u, v)?;
    let scale = t1.modulus().max(t2.modulus()).max(t3.modulus()) + 1.0;
    Ok((t1 - t2 + t3).modulus() / scale)
}
