//! Exact rational scalars.
//!
//! `Rat` wraps an arbitrary-precision rational and keeps it in canonical
//! form at all times: reduced to lowest terms with a positive denominator.
//! Equality is therefore structural, ordering is the usual order on the
//! rationals, and printing round-trips through [`Rat::parse`] as `"p/q"`
//! (or `"p"` when the denominator is one).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;
use thiserror::Error;

/// An exact rational number in lowest terms with positive denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rat(BigRational);

/// Failure to read a rational from its `"p/q"` text form.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum RatParseError {
    #[error("empty rational literal")]
    Empty,
    #[error("invalid integer part {0:?}")]
    BadInteger(String),
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
}

impl Rat {
    /// Builds `num/den`, reducing to canonical form. Panics if `den == 0`.
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Rat(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// The integer `n` as a rational.
    pub fn int(n: i64) -> Self {
        Rat(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_big(num: BigInt, den: BigInt) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        Rat(BigRational::new(num, den))
    }

    pub fn zero() -> Self {
        Rat(BigRational::zero())
    }

    pub fn one() -> Self {
        Rat(BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn abs(&self) -> Self {
        Rat(self.0.abs())
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "reciprocal of zero");
        Rat(self.0.recip())
    }

    /// Integer power, with negative exponents inverting (nonzero base only).
    pub fn pow(&self, exp: i32) -> Self {
        if exp < 0 {
            assert!(!self.is_zero(), "negative power of zero");
        }
        Rat(self.0.pow(exp))
    }

    /// Nearest `f64`, used only when dropping into approximate arithmetic.
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().expect("rational out of f64 range")
    }

    /// Exact square root when one exists in the rationals.
    pub fn sqrt_exact(&self) -> Option<Rat> {
        if self.is_negative() {
            return None;
        }
        let n = int_sqrt_exact(self.numer())?;
        let d = int_sqrt_exact(self.denom())?;
        Some(Rat::from_big(n, d))
    }

    /// Exact cube root when one exists in the rationals.
    pub fn cbrt_exact(&self) -> Option<Rat> {
        let n = int_cbrt_exact(self.numer())?;
        let d = int_cbrt_exact(self.denom())?;
        Some(Rat::from_big(n, d))
    }

    /// Parses `"p/q"` or `"p"`, with optional leading sign on `p`.
    pub fn parse(text: &str) -> Result<Self, RatParseError> {
        let text = text.trim();
        if text.is_empty() {
            return Err(RatParseError::Empty);
        }
        let (num_str, den_str) = match text.split_once('/') {
            Some((n, d)) => (n.trim(), Some(d.trim())),
            None => (text, None),
        };
        let num = BigInt::from_str(num_str)
            .map_err(|_| RatParseError::BadInteger(num_str.to_string()))?;
        let den = match den_str {
            Some(d) => {
                BigInt::from_str(d).map_err(|_| RatParseError::BadInteger(d.to_string()))?
            }
            None => BigInt::one(),
        };
        if den.is_zero() {
            return Err(RatParseError::ZeroDenominator(text.to_string()));
        }
        Ok(Rat(BigRational::new(num, den)))
    }
}

fn int_sqrt_exact(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

fn int_cbrt_exact(n: &BigInt) -> Option<BigInt> {
    let r = n.cbrt();
    (&r * &r * &r == *n).then_some(r)
}

impl Default for Rat {
    fn default() -> Self {
        Rat::zero()
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Rat {
    type Err = RatParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Rat::parse(s)
    }
}

impl From<i64> for Rat {
    fn from(n: i64) -> Self {
        Rat::int(n)
    }
}

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        Rat::parse(&text).map_err(D::Error::custom)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                Rat((self.0).$method(rhs.0))
            }
        }

        impl $trait<&Rat> for &Rat {
            type Output = Rat;
            fn $method(self, rhs: &Rat) -> Rat {
                Rat((&self.0).$method(&rhs.0))
            }
        }

        impl $trait<&Rat> for Rat {
            type Output = Rat;
            fn $method(self, rhs: &Rat) -> Rat {
                Rat((self.0).$method(&rhs.0))
            }
        }

        impl $trait<Rat> for &Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                Rat((&self.0).$method(rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-self.0)
    }
}

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-&self.0)
    }
}

impl AddAssign<&Rat> for Rat {
    fn add_assign(&mut self, rhs: &Rat) {
        self.0 += &rhs.0;
    }
}

impl SubAssign<&Rat> for Rat {
    fn sub_assign(&mut self, rhs: &Rat) {
        self.0 -= &rhs.0;
    }
}

impl MulAssign<&Rat> for Rat {
    fn mul_assign(&mut self, rhs: &Rat) {
        self.0 *= &rhs.0;
    }
}

impl Zero for Rat {
    fn zero() -> Self {
        Rat::zero()
    }

    fn is_zero(&self) -> bool {
        Rat::is_zero(self)
    }
}

impl One for Rat {
    fn one() -> Self {
        Rat::one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form_is_reduced_with_positive_denominator() {
        assert_eq!(Rat::new(2, 4), Rat::new(1, 2));
        assert_eq!(Rat::new(-1, -2), Rat::new(1, 2));
        assert_eq!(Rat::new(1, -2), Rat::new(-1, 2));
        assert_eq!(Rat::new(0, 7), Rat::zero());
        assert!(Rat::new(3, -9).denom() > &BigInt::from(0));
    }

    #[test]
    fn display_and_parse_round_trip() {
        for r in [
            Rat::new(1, 2),
            Rat::new(-7, 3),
            Rat::int(5),
            Rat::int(-12),
            Rat::zero(),
        ] {
            assert_eq!(Rat::parse(&r.to_string()).unwrap(), r);
        }
        assert_eq!(Rat::parse(" -3 / 6 ").unwrap(), Rat::new(-1, 2));
        assert_eq!(Rat::parse("4").unwrap(), Rat::int(4));
    }

    #[test]
    fn parse_rejects_garbage() {
        assert_eq!(Rat::parse(""), Err(RatParseError::Empty));
        assert!(matches!(Rat::parse("x/2"), Err(RatParseError::BadInteger(_))));
        assert!(matches!(
            Rat::parse("1/0"),
            Err(RatParseError::ZeroDenominator(_))
        ));
    }

    #[test]
    fn arithmetic_is_exact() {
        let a = Rat::new(1, 3);
        let b = Rat::new(1, 6);
        assert_eq!(&a + &b, Rat::new(1, 2));
        assert_eq!(&a - &b, Rat::new(1, 6));
        assert_eq!(&a * &b, Rat::new(1, 18));
        assert_eq!(&a / &b, Rat::int(2));
        assert_eq!(-&a, Rat::new(-1, 3));
        assert_eq!(a.recip(), Rat::int(3));
    }

    #[test]
    fn powers_including_negative_exponents() {
        assert_eq!(Rat::new(2, 3).pow(3), Rat::new(8, 27));
        assert_eq!(Rat::new(2, 3).pow(-2), Rat::new(9, 4));
        assert_eq!(Rat::new(5, 7).pow(0), Rat::one());
    }

    #[test]
    fn exact_roots() {
        assert_eq!(Rat::new(9, 4).sqrt_exact(), Some(Rat::new(3, 2)));
        assert_eq!(Rat::new(2, 1).sqrt_exact(), None);
        assert_eq!(Rat::new(-9, 4).sqrt_exact(), None);
        assert_eq!(Rat::new(-8, 27).cbrt_exact(), Some(Rat::new(-2, 3)));
        assert_eq!(Rat::new(4, 1).cbrt_exact(), None);
    }

    #[test]
    fn ordering_matches_rational_order() {
        assert!(Rat::new(1, 3) < Rat::new(1, 2));
        assert!(Rat::new(-1, 2) < Rat::zero());
        assert!(Rat::int(2) > Rat::new(3, 2));
    }

    #[test]
    fn serde_uses_fraction_strings() {
        let r = Rat::new(-5, 8);
        let json = serde_json::to_string(&r).unwrap();
        assert_eq!(json, "\"-5/8\"");
        let back: Rat = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r);
    }
}
