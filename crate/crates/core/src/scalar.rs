//! Scalar regimes: exact arbitrary-precision rationals and double-precision
//! complex numbers, together with the equality contract shared by every
//! identity checker.

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Exact rational scalar. `BigRational` keeps `den > 0` and `gcd(num, den) = 1`
/// after every operation.
pub type Exact = BigRational;

/// Approximate complex scalar.
pub type Complex = Complex64;

/// Mixed relative/absolute comparison threshold.
///
/// Two approximate values `a`, `b` compare equal when
/// `|a - b| <= max(abs_floor, rel * max(1, |a|, |b|))`. Exact fields ignore it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tolerance {
    pub rel: f64,
    pub abs_floor: f64,
}

impl Tolerance {
    pub fn new(rel: f64, abs_floor: f64) -> Result<Self> {
        if !(rel.is_finite() && rel >= 0.0 && abs_floor.is_finite() && abs_floor >= 0.0) {
            return Err(Error::Config(format!(
                "tolerance must be finite and nonnegative (rel={rel}, abs_floor={abs_floor})"
            )));
        }
        Ok(Self { rel, abs_floor })
    }

    pub fn rel(rel: f64) -> Self {
        Self { rel, abs_floor: 0.0 }
    }

    pub fn exact() -> Self {
        Self { rel: 0.0, abs_floor: 0.0 }
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Self::rel(1e-8)
    }
}

/// A scalar value as it appears in reports.
#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Exact { numer: String, denom: String },
    Approx { re: f64, im: f64 },
}

impl Serialize for Value {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Value::Exact { numer, denom } => serializer.serialize_str(&format!("{numer}/{denom}")),
            Value::Approx { re, im } => {
                use serde::ser::SerializeStruct;
                let mut s = serializer.serialize_struct("Complex", 2)?;
                s.serialize_field("re", re)?;
                s.serialize_field("im", im)?;
                s.end()
            }
        }
    }
}

/// Field operations used by the linear algebra and identity layers.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    /// Whether equality in this field is exact.
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn is_zero(&self) -> bool;
    /// `|self|` as a double.
    fn modulus(&self) -> f64;
    fn is_finite(&self) -> bool;
    /// Division that refuses an exact zero divisor.
    fn try_div(&self, rhs: &Self) -> Result<Self>;
    /// `|a - b| / (max(|a|, |b|) + 1)`.
    fn residual(a: &Self, b: &Self) -> f64;
    fn to_value(&self) -> Value;

    fn powi(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            e >>= 1;
            if e > 0 {
                base = base.clone() * base;
            }
        }
        acc
    }

    /// Exact zero for exact fields, modulus below `threshold` otherwise.
    fn is_negligible(&self, threshold: f64) -> bool {
        if Self::EXACT {
            self.is_zero()
        } else {
            self.modulus() < threshold
        }
    }

    fn sign(negative: bool) -> Self {
        if negative {
            -Self::one()
        } else {
            Self::one()
        }
    }
}

impl Scalar for Exact {
    const EXACT: bool = true;

    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn modulus(&self) -> f64 {
        self.abs().to_f64().unwrap_or(f64::INFINITY)
    }
    fn is_finite(&self) -> bool {
        true
    }
    fn try_div(&self, rhs: &Self) -> Result<Self> {
        if Zero::is_zero(rhs) {
            return Err(Error::DivisionByZero);
        }
        Ok(self / rhs)
    }
    fn residual(a: &Self, b: &Self) -> f64 {
        if a == b {
            return 0.0;
        }
        let scale = std::cmp::max(a.abs(), b.abs()) + <BigRational as One>::one();
        ((a - b).abs() / scale).to_f64().unwrap_or(f64::INFINITY)
    }
    fn to_value(&self) -> Value {
        Value::Exact {
            numer: self.numer().to_string(),
            denom: self.denom().to_string(),
        }
    }
}

impl Scalar for Complex {
    const EXACT: bool = false;

    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn from_i64(v: i64) -> Self {
        Complex64::new(v as f64, 0.0)
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn modulus(&self) -> f64 {
        self.norm()
    }
    fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }
    fn try_div(&self, rhs: &Self) -> Result<Self> {
        if Scalar::is_zero(rhs) {
            return Err(Error::DivisionByZero);
        }
        let q = self / rhs;
        if !Scalar::is_finite(&q) {
            return Err(Error::NonFinite);
        }
        Ok(q)
    }
    fn residual(a: &Self, b: &Self) -> f64 {
        (a - b).norm() / (a.norm().max(b.norm()) + 1.0)
    }
    fn to_value(&self) -> Value {
        Value::Approx { re: self.re, im: self.im }
    }
}

/// Equality under the field's contract: exact equality for rationals, the
/// mixed metric of [`Tolerance`] for complex values.
pub fn near_equal<S: Scalar>(a: &S, b: &S, tol: &Tolerance) -> Result<bool> {
    if S::EXACT {
        return Ok(a == b);
    }
    if !a.is_finite() || !b.is_finite() {
        return Err(Error::NonFinite);
    }
    let diff = (a.clone() - b.clone()).modulus();
    let scale = 1f64.max(a.modulus()).max(b.modulus());
    Ok(diff <= tol.abs_floor.max(tol.rel * scale))
}

/// Convenience constructor for exact values `num / den`.
pub fn rat(num: i64, den: i64) -> Exact {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Product of an iterator of scalars (empty product is one).
pub fn product<S: Scalar, I: IntoIterator<Item = S>>(it: I) -> S {
    it.into_iter().fold(S::one(), |acc, v| acc * v)
}

/// Sum of an iterator of scalars (empty sum is zero).
pub fn sum<S: Scalar, I: IntoIterator<Item = S>>(it: I) -> S {
    it.into_iter().fold(S::zero(), |acc, v| acc + v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_integer::Integer;
    use proptest::prelude::*;

    #[test]
    fn exact_near_equal_is_strict() {
        let tol = Tolerance::rel(0.5);
        assert!(near_equal(&rat(1, 3), &rat(1, 3), &tol).unwrap());
        assert!(!near_equal(&rat(1, 3), &rat(2, 3), &tol).unwrap());
    }

    #[test]
    fn complex_near_equal_within_tolerance() {
        let a = Complex::new(1.0, 0.0);
        let b = Complex::new(1.0, 1e-12);
        assert!(near_equal(&a, &b, &Tolerance::rel(1e-9)).unwrap());
        assert!(!near_equal(&a, &Complex::new(1.0, 1e-6), &Tolerance::rel(1e-9)).unwrap());
    }

    #[test]
    fn abs_floor_dominates_for_tiny_values() {
        let tol = Tolerance::new(0.0, 1e-3).unwrap();
        assert!(near_equal(&Complex::new(0.0, 0.0), &Complex::new(5e-4, 0.0), &tol).unwrap());
    }

    #[test]
    fn non_finite_operand_is_an_error() {
        let nan = Complex::new(f64::NAN, 0.0);
        assert_eq!(
            near_equal(&nan, &Complex::new(0.0, 0.0), &Tolerance::default()),
            Err(Error::NonFinite)
        );
        let inf = Complex::new(0.0, f64::INFINITY);
        assert_eq!(near_equal(&inf, &inf, &Tolerance::default()), Err(Error::NonFinite));
    }

    #[test]
    fn exact_division_by_zero_is_an_error() {
        assert_eq!(rat(1, 2).try_div(&rat(0, 1)), Err(Error::DivisionByZero));
        assert_eq!(
            Complex::new(1.0, 0.0).try_div(&Complex::new(0.0, 0.0)),
            Err(Error::DivisionByZero)
        );
    }

    #[test]
    fn residual_is_zero_for_equal_exact_values() {
        assert_eq!(Exact::residual(&rat(7, 5), &rat(7, 5)), 0.0);
        assert!((Exact::residual(&rat(1, 1), &rat(0, 1)) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn powi_matches_repeated_multiplication() {
        assert_eq!(rat(-2, 3).powi(5), rat(-32, 243));
        assert_eq!(rat(9, 4).powi(0), rat(1, 1));
    }

    #[test]
    fn value_serialization() {
        let v = rat(-6, 4).to_value();
        assert_eq!(serde_json::to_string(&v).unwrap(), "\"-3/2\"");
        let v = Complex::new(0.5, -1.0).to_value();
        assert_eq!(serde_json::to_string(&v).unwrap(), r#"{"re":0.5,"im":-1.0}"#);
    }

    fn exact() -> impl Strategy<Value = Exact> {
        (-1000i64..1000, 1i64..50).prop_map(|(n, d)| rat(n, d))
    }

    fn normalized(v: &Exact) -> bool {
        v.denom() > &BigInt::from(0) && v.numer().gcd(v.denom()) == BigInt::from(1)
            || (Zero::is_zero(v.numer()) && v.denom() == &BigInt::from(1))
    }

    fn finite_complex() -> impl Strategy<Value = Complex> {
        (-1e3f64..1e3, -1e3f64..1e3).prop_map(|(re, im)| Complex::new(re, im))
    }

    proptest! {
        #[test]
        fn exact_field_axioms(a in exact(), b in exact(), c in exact()) {
            prop_assert_eq!((a.clone() + b.clone()) + c.clone(), a.clone() + (b.clone() + c.clone()));
            prop_assert_eq!((a.clone() * b.clone()) * c.clone(), a.clone() * (b.clone() * c.clone()));
            prop_assert_eq!(a.clone() + b.clone(), b.clone() + a.clone());
            prop_assert_eq!(a.clone() * b.clone(), b.clone() * a.clone());
            prop_assert_eq!(a.clone() * (b.clone() + c.clone()), a.clone() * b.clone() + a.clone() * c.clone());
        }

        #[test]
        fn exact_results_stay_normalized(a in exact(), b in exact()) {
            for v in [a.clone() + b.clone(), a.clone() - b.clone(), a.clone() * b.clone()] {
                prop_assert!(normalized(&v));
            }
            if let Ok(q) = a.try_div(&b) {
                prop_assert!(normalized(&q));
            }
        }

        #[test]
        fn near_equal_symmetric_and_reflexive(a in finite_complex(), b in finite_complex(), rel in 1e-12f64..1e-1) {
            let tol = Tolerance::rel(rel);
            prop_assert!(near_equal(&a, &a, &tol).unwrap());
            prop_assert_eq!(near_equal(&a, &b, &tol).unwrap(), near_equal(&b, &a, &tol).unwrap());
        }
    }
}
