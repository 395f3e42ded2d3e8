//! Scalar abstraction shared by the mass functionals, the certification
//! checks and the optimizer.
//!
//! Evaluation code is written once against [`Scalar`] and instantiated with
//! `f64` (optimization), `f32`, or exact [`Rational`] (oracle certification).
//! The optimizer additionally needs transcendental functions and is bound by
//! [`Real`].

use std::fmt::Debug;

use num::bigint::BigInt;
use num::traits::{Float, FromPrimitive, Num, NumAssign, ToPrimitive};
use num::{BigRational, One, Zero};
use serde_json::Value;

use crate::error::{Error, Result};

/// Exact arbitrary-precision rational number.
pub type Rational = BigRational;

/// Numeric type usable as an edge weight.
pub trait Scalar:
    Clone + Debug + PartialOrd + Num + NumAssign + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
    /// Whether this value counts as a positive weight when forming supports.
    fn in_support(&self) -> bool;

    /// Allowed deviation of a mass total from one. `None` means exact.
    fn mass_tolerance() -> Option<f64>;

    fn is_exact() -> bool {
        Self::mass_tolerance().is_none()
    }

    fn from_count(n: usize) -> Self {
        Self::from_usize(n).expect("count representable in scalar type")
    }

    fn powu(&self, exp: u32) -> Self {
        num::traits::pow(self.clone(), exp as usize)
    }

    fn abs_val(&self) -> Self {
        if *self < Self::zero() {
            Self::zero() - self.clone()
        } else {
            self.clone()
        }
    }

    fn max_of(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }

    fn to_f64_lossy(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    /// JSON encoding of a single weight.
    fn to_json(&self) -> Value;

    fn from_json(value: &Value) -> Result<Self>;
}

/// Floating-point scalar with the operations the ascent scheme needs.
pub trait Real: Scalar + Float {}

impl Real for f32 {}
impl Real for f64 {}

macro_rules! float_scalar {
    ($t:ty, $tol:expr) => {
        impl Scalar for $t {
            fn in_support(&self) -> bool {
                (*self as f64) > 1e-15
            }

            fn mass_tolerance() -> Option<f64> {
                Some($tol)
            }

            fn abs_val(&self) -> Self {
                self.abs()
            }

            fn to_json(&self) -> Value {
                serde_json::Number::from_f64(*self as f64).map(Value::Number).unwrap_or(Value::Null)
            }

            fn from_json(value: &Value) -> Result<Self> {
                match value {
                    Value::Number(n) => {
                        n.as_f64().map(|x| x as $t).ok_or_else(|| Error::Parse(format!("bad weight {n}")))
                    }
                    Value::String(s) => {
                        let r = parse_rational(s)?;
                        r.to_f64().map(|x| x as $t).ok_or_else(|| Error::Parse(format!("bad weight {s}")))
                    }
                    other => Err(Error::Parse(format!("bad weight {other}"))),
                }
            }
        }
    };
}

float_scalar!(f64, 1e-12);
float_scalar!(f32, 1e-5);

impl Scalar for Rational {
    fn in_support(&self) -> bool {
        self > &Rational::zero()
    }

    fn mass_tolerance() -> Option<f64> {
        None
    }

    fn to_json(&self) -> Value {
        Value::String(self.to_string())
    }

    fn from_json(value: &Value) -> Result<Self> {
        match value {
            Value::String(s) => parse_rational(s),
            Value::Number(n) => {
                if let Some(i) = n.as_i64() {
                    Ok(Rational::from_integer(BigInt::from(i)))
                } else {
                    n.as_f64().and_then(Rational::from_f64).ok_or_else(|| Error::Parse(format!("bad weight {n}")))
                }
            }
            other => Err(Error::Parse(format!("bad weight {other}"))),
        }
    }
}

/// Parses `"p/q"` or an integer string into an exact rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let parse_int = |t: &str| t.trim().parse::<BigInt>().map_err(|_| Error::Parse(format!("bad rational {s:?}")));
    match s.split_once('/') {
        Some((p, q)) => {
            let q = parse_int(q)?;
            if q.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Rational::new(parse_int(p)?, q))
        }
        None => Ok(Rational::from_integer(parse_int(s)?)),
    }
}

/// `p / q` as an exact rational.
pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// `base^(-exp)` as an exact rational.
pub fn inverse_power(base: u64, exp: u32) -> Rational {
    Rational::new(BigInt::one(), num::traits::pow(BigInt::from(base), exp as usize))
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Serializes big integers and rationals through their `Display` form so
/// reports stay exact in JSON.
pub mod as_string {
    use std::fmt::Display;

    use serde::Serializer;

    pub fn serialize<T: Display, S: Serializer>(value: &T, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(value)
    }

    pub mod option {
        use std::fmt::Display;

        use serde::Serializer;

        pub fn serialize<T: Display, S: Serializer>(value: &Option<T>, s: S) -> Result<S::Ok, S::Error> {
            match value {
                Some(v) => s.collect_str(v),
                None => s.serialize_none(),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_parse_and_json() {
        let r = parse_rational("8/27").unwrap();
        assert_eq!(r, ratio(8, 27));
        assert_eq!(r.to_json(), Value::String("8/27".into()));
        assert_eq!(Rational::from_json(&r.to_json()).unwrap(), r);
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn float_support_threshold() {
        assert!(!1e-16f64.in_support());
        assert!(1e-14f64.in_support());
        assert!(!Rational::zero().in_support());
        assert!(inverse_power(10, 40).in_support());
    }

    #[test]
    fn combinatorics() {
        assert_eq!(factorial(5), BigInt::from(120));
        assert_eq!(binomial(7, 2), BigInt::from(21));
        assert_eq!(binomial(3, 5), BigInt::zero());
        assert_eq!(inverse_power(6, 2), ratio(1, 36));
    }
}
