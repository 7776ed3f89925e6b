//! Random sample points with reproducible per-trial streams.

use std::f64::consts::TAU;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

use crate::bracket::{BracketFunction, EllipticParams, DEFAULT_TAU};
use crate::error::{Error, Result};
use crate::identities::{CheckOptions, Params, Regime, SamplePoint, Schema};
use crate::scalar::{rat, Complex, Exact, Scalar, Tolerance};

/// Resampling cap before a configuration is declared too tight.
pub const MAX_ATTEMPTS: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SamplerConfig {
    pub seed: u64,
    pub regime: Regime,
    /// Denominator factors (and coordinate differences in distinctness
    /// groups) below this modulus are rejected in approximate regimes.
    pub pole_threshold: f64,
    /// Inclusive numerator range for exact sampling; denominators are 1..=5.
    pub integer_range: (i64, i64),
    pub elliptic_tau: Complex,
    /// Radius of the disk that complex coordinates are drawn from.
    pub coord_radius: f64,
}

impl SamplerConfig {
    pub fn new(seed: u64, regime: Regime) -> Self {
        Self {
            seed,
            regime,
            pole_threshold: 1e-2,
            integer_range: (-20, 20),
            elliptic_tau: DEFAULT_TAU,
            coord_radius: 0.4,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.pole_threshold > 0.0 && self.pole_threshold.is_finite()) {
            return Err(Error::Config(format!("pole threshold must be positive, got {}", self.pole_threshold)));
        }
        if self.integer_range.0 > self.integer_range.1 {
            return Err(Error::Config(format!("empty integer range {:?}", self.integer_range)));
        }
        if !(self.coord_radius > 0.0 && self.coord_radius.is_finite()) {
            return Err(Error::Config(format!("coordinate radius must be positive, got {}", self.coord_radius)));
        }
        EllipticParams::with_tau(self.elliptic_tau).map_err(|e| Error::Config(e.to_string()))?;
        Ok(())
    }

    /// The bracket this regime evaluates with.
    pub fn bracket(&self) -> Result<BracketFunction> {
        Ok(match self.regime {
            Regime::Rational => BracketFunction::rational(),
            Regime::Trig => BracketFunction::trigonometric(),
            Regime::Elliptic => BracketFunction::elliptic(EllipticParams::with_tau(self.elliptic_tau)?)?,
        })
    }

    pub fn check_options(&self, tol: Tolerance) -> CheckOptions {
        if self.regime.is_exact() {
            CheckOptions::exact()
        } else {
            CheckOptions::new(tol, self.pole_threshold)
        }
    }
}

/// Scalars the sampler can draw.
pub trait Sample: Scalar {
    fn draw<R: Rng + ?Sized>(rng: &mut R, cfg: &SamplerConfig) -> Self;
    fn too_close(a: &Self, b: &Self, cfg: &SamplerConfig) -> bool;
}

impl Sample for Exact {
    fn draw<R: Rng + ?Sized>(rng: &mut R, cfg: &SamplerConfig) -> Self {
        let (lo, hi) = cfg.integer_range;
        rat(rng.random_range(lo..=hi), rng.random_range(1..=5))
    }

    fn too_close(a: &Self, b: &Self, _: &SamplerConfig) -> bool {
        a == b
    }
}

impl Sample for Complex {
    /// Uniform on the disk `|z| ≤ coord_radius`.
    fn draw<R: Rng + ?Sized>(rng: &mut R, cfg: &SamplerConfig) -> Self {
        let rho = cfg.coord_radius * rng.random::<f64>().sqrt();
        Complex::from_polar(rho, TAU * rng.random::<f64>())
    }

    fn too_close(a: &Self, b: &Self, cfg: &SamplerConfig) -> bool {
        (a - b).norm() < cfg.pole_threshold
    }
}

/// Independent stream for one trial. The key covers everything that
/// identifies the configuration, so results do not depend on run order.
pub fn trial_rng(seed: u64, regime: Regime, identity: &str, params: &Params, trial: u64) -> ChaCha8Rng {
    let mut h = Sha256::new();
    h.update(seed.to_le_bytes());
    h.update(regime.name().as_bytes());
    h.update([0]);
    h.update(identity.as_bytes());
    h.update([0]);
    h.update(serde_json::to_vec(params).expect("params serialize"));
    let key: [u8; 32] = h.finalize().into();
    let mut rng = ChaCha8Rng::from_seed(key);
    rng.set_stream(trial);
    rng
}

fn draw_once<S: Sample, R: Rng + ?Sized>(cfg: &SamplerConfig, schema: &Schema, rng: &mut R) -> SamplePoint<S> {
    let vectors = schema
        .vectors
        .iter()
        .map(|&(name, len)| (name, (0..len).map(|_| S::draw(rng, cfg)).collect()))
        .collect();
    let scalars = schema.scalars.iter().map(|&name| (name, S::draw(rng, cfg))).collect();
    SamplePoint { vectors, scalars }
}

fn distinct_ok<S: Sample>(pt: &SamplePoint<S>, schema: &Schema, cfg: &SamplerConfig) -> bool {
    schema.distinct.iter().all(|group| {
        let coords: Vec<&S> = group.iter().flat_map(|g| pt.v(g)).collect();
        coords
            .iter()
            .enumerate()
            .all(|(i, a)| coords[i + 1..].iter().all(|b| !S::too_close(a, b, cfg)))
    })
}

/// Draws points until the schema's distinctness constraints hold and
/// `accept` succeeds. Errors for which [`Error::is_resample`] holds (poles,
/// coincident points) trigger a redraw; others are returned as is.
pub fn sample_point<S: Sample, R: Rng + ?Sized, T>(
    cfg: &SamplerConfig,
    schema: &Schema,
    rng: &mut R,
    mut accept: impl FnMut(&SamplePoint<S>) -> Result<T>,
) -> Result<(SamplePoint<S>, T)> {
    for _ in 0..MAX_ATTEMPTS {
        let pt = draw_once(cfg, schema, rng);
        if !distinct_ok(&pt, schema, cfg) {
            continue;
        }
        match accept(&pt) {
            Ok(t) => return Ok((pt, t)),
            Err(e) if e.is_resample() => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::SamplerStarvation(MAX_ATTEMPTS))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::identities::{check_cauchy, IdentityRegistry};

    fn cauchy_schema(n: usize) -> Schema {
        let reg = IdentityRegistry::default();
        (reg.get("cauchy").unwrap().schema)(&Params::n(n)).unwrap()
    }

    #[test]
    fn exact_cauchy_point_avoids_poles() {
        let cfg = SamplerConfig::new(7, Regime::Rational);
        let schema = cauchy_schema(2);
        for t in 0..50 {
            let mut rng = trial_rng(7, cfg.regime, "cauchy", &Params::n(2), t);
            let (pt, ev) =
                sample_point::<Exact, _, _>(&cfg, &schema, &mut rng, |p| check_cauchy(p.v("x"), p.v("y"), &CheckOptions::exact()))
                    .unwrap();
            assert!(ev.passed);
            for x in pt.v("x") {
                for y in pt.v("y") {
                    assert!(!(x.clone() + y.clone()).is_zero());
                }
                assert!(*x.denom() <= 5.into() && x.numer().magnitude() <= &100u32.into());
            }
        }
    }

    #[test]
    fn complex_points_lie_in_the_disk() {
        let cfg = SamplerConfig::new(3, Regime::Elliptic);
        let schema = cauchy_schema(3);
        let mut rng = trial_rng(3, cfg.regime, "cauchy", &Params::n(3), 0);
        for _ in 0..100 {
            let (pt, ()) = sample_point::<Complex, _, _>(&cfg, &schema, &mut rng, |_| Ok(())).unwrap();
            assert!(pt.v("x").iter().chain(pt.v("y")).all(|z| z.norm() <= 0.4));
        }
    }

    #[test]
    fn same_seed_same_point_and_streams_differ() {
        let cfg = SamplerConfig::new(11, Regime::Rational);
        let schema = cauchy_schema(2);
        let draw = |t| {
            let mut rng = trial_rng(11, cfg.regime, "cauchy", &Params::n(2), t);
            sample_point::<Exact, _, _>(&cfg, &schema, &mut rng, |_| Ok(())).unwrap().0
        };
        assert_eq!(draw(0), draw(0));
        assert_ne!(draw(0), draw(1));
    }

    #[test]
    fn distinctness_is_enforced() {
        let cfg = SamplerConfig { integer_range: (0, 2), ..SamplerConfig::new(1, Regime::Rational) };
        let schema = Schema { vectors: vec![("x", 4)], scalars: vec![], distinct: vec![vec!["x"]] };
        let mut rng = trial_rng(1, cfg.regime, "t", &Params::default(), 0);
        for _ in 0..20 {
            let (pt, ()) = sample_point::<Exact, _, _>(&cfg, &schema, &mut rng, |_| Ok(())).unwrap();
            let x = pt.v("x");
            for i in 0..4 {
                for j in i + 1..4 {
                    assert_ne!(x[i], x[j]);
                }
            }
        }
    }

    #[test]
    fn starvation_and_other_errors() {
        let cfg = SamplerConfig::new(1, Regime::Rational);
        let schema = cauchy_schema(1);
        let mut rng = trial_rng(1, cfg.regime, "t", &Params::default(), 0);
        let r = sample_point::<Exact, _, ()>(&cfg, &schema, &mut rng, |_| Err(Error::Pole("always")));
        assert!(matches!(r, Err(Error::SamplerStarvation(MAX_ATTEMPTS))));
        let r = sample_point::<Exact, _, ()>(&cfg, &schema, &mut rng, |_| Err(Error::NotExact));
        assert!(matches!(r, Err(Error::NotExact)));
    }

    #[test]
    fn config_validation() {
        assert!(SamplerConfig::new(0, Regime::Trig).validate().is_ok());
        let bad = SamplerConfig { pole_threshold: 0.0, ..SamplerConfig::new(0, Regime::Trig) };
        assert!(bad.validate().is_err());
        let bad = SamplerConfig { integer_range: (3, 2), ..SamplerConfig::new(0, Regime::Trig) };
        assert!(bad.validate().is_err());
        let bad = SamplerConfig { elliptic_tau: Complex::new(0.0, 0.01), ..SamplerConfig::new(0, Regime::Trig) };
        assert!(bad.validate().is_err());
    }
}
