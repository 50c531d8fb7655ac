//! Complex floating-point scalars for the approximate fallback paths.
//!
//! Exact rational arithmetic carries every computation that can stay
//! rational. When a step genuinely requires an algebraic number (a root of
//! a polynomial with no rational root), the computation drops into `CNum`,
//! a thin wrapper over double-precision complex numbers with one shared
//! tolerance [`EPS`] for zero tests.

use num_complex::Complex64;
use num_traits::{One, Zero};
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};

use crate::rat::Rat;

/// Relative tolerance used by every approximate zero test and residual bound.
pub const EPS: f64 = 1e-9;

/// A complex double used only where exact arithmetic cannot continue.
#[derive(Clone, Copy, PartialEq, Default)]
pub struct CNum(pub Complex64);

impl CNum {
    pub fn new(re: f64, im: f64) -> Self {
        CNum(Complex64::new(re, im))
    }

    pub fn from_f64(re: f64) -> Self {
        CNum(Complex64::new(re, 0.0))
    }

    pub fn from_rat(r: &Rat) -> Self {
        CNum(Complex64::new(r.to_f64(), 0.0))
    }

    pub fn re(&self) -> f64 {
        self.0.re
    }

    pub fn im(&self) -> f64 {
        self.0.im
    }

    pub fn abs(&self) -> f64 {
        self.0.norm()
    }

    pub fn conj(&self) -> Self {
        CNum(self.0.conj())
    }

    /// Zero test at scale one: `|z| <= EPS`.
    pub fn approx_zero(&self) -> bool {
        self.abs() <= EPS
    }

    /// Zero test relative to a magnitude scale of the surrounding data.
    pub fn approx_zero_at_scale(&self, scale: f64) -> bool {
        self.abs() <= EPS * (1.0 + scale)
    }

    pub fn approx_eq(&self, other: &CNum) -> bool {
        let scale = self.abs().max(other.abs());
        (*self - *other).abs() <= EPS * (1.0 + scale)
    }

    pub fn powi(&self, exp: i32) -> Self {
        CNum(self.0.powi(exp))
    }
}

impl fmt::Display for CNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.im == 0.0 {
            write!(f, "{}", self.0.re)
        } else if self.0.im < 0.0 {
            write!(f, "{}{}i", self.0.re, self.0.im)
        } else {
            write!(f, "{}+{}i", self.0.re, self.0.im)
        }
    }
}

impl fmt::Debug for CNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Add for CNum {
    type Output = CNum;
    fn add(self, rhs: CNum) -> CNum {
        CNum(self.0 + rhs.0)
    }
}

impl Sub for CNum {
    type Output = CNum;
    fn sub(self, rhs: CNum) -> CNum {
        CNum(self.0 - rhs.0)
    }
}

impl Mul for CNum {
    type Output = CNum;
    fn mul(self, rhs: CNum) -> CNum {
        CNum(self.0 * rhs.0)
    }
}

impl Div for CNum {
    type Output = CNum;
    fn div(self, rhs: CNum) -> CNum {
        CNum(self.0 / rhs.0)
    }
}

impl Neg for CNum {
    type Output = CNum;
    fn neg(self) -> CNum {
        CNum(-self.0)
    }
}

impl AddAssign for CNum {
    fn add_assign(&mut self, rhs: CNum) {
        self.0 += rhs.0;
    }
}

impl Zero for CNum {
    fn zero() -> Self {
        CNum(Complex64::zero())
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl One for CNum {
    fn one() -> Self {
        CNum(Complex64::one())
    }
}
