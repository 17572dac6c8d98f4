//! Number systems: exact Laurent-rational functions of `q` and
//! tolerance-aware complex doubles, unified behind [`Scalar`].

mod dd;
mod exact;
mod laurent;
mod qnum;

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex64;

pub use dd::{ComplexDd, Dd};
pub use exact::ExactScalar;
pub use laurent::LaurentPoly;
pub use qnum::{q_binomial, q_factorial, q_number, q_number_numeric, st_number, st_number_in};

use crate::error::{Error, Result};

/// Field operations shared by the exact and numeric realizations.
///
/// Every engine in this crate is generic over `Scalar`, so the same code path
/// computes exact q-analogues and elliptic values.
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
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(n: i64) -> Self;
    fn is_zero(&self) -> bool;

    /// Division that rejects a zero-tested divisor.
    fn try_div(&self, rhs: &Self) -> Result<Self>;

    /// Distinctness test used before dividing by `self - other`.
    ///
    /// Exact scalars compare structurally; numeric scalars require a
    /// relative gap (see [`NUMERIC_DISTINCTNESS`]).
    fn is_distinct_from(&self, other: &Self) -> bool;

    fn powu(&self, mut n: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc * base.clone();
            }
            n >>= 1;
            if n > 0 {
                base = base.clone() * base;
            }
        }
        acc
    }
}

impl Scalar for ExactScalar {
    fn zero() -> Self {
        ExactScalar::zero()
    }
    fn one() -> Self {
        ExactScalar::one()
    }
    fn from_i64(n: i64) -> Self {
        ExactScalar::from_integer(n)
    }
    fn is_zero(&self) -> bool {
        ExactScalar::is_zero(self)
    }
    fn try_div(&self, rhs: &Self) -> Result<Self> {
        self.checked_div(rhs)
    }
    fn is_distinct_from(&self, other: &Self) -> bool {
        self != other
    }
}

/// Relative gap required between numeric values that appear in a
/// Vandermonde-type denominator: `|x - y| >= 1e-8 * max(1, |x|, |y|)`.
pub const NUMERIC_DISTINCTNESS: f64 = 1e-8;

impl Scalar for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn from_i64(n: i64) -> Self {
        Complex64::new(n as f64, 0.0)
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn try_div(&self, rhs: &Self) -> Result<Self> {
        if Scalar::is_zero(rhs) {
            return Err(Error::DivisionByZero);
        }
        Ok(self / rhs)
    }
    fn is_distinct_from(&self, other: &Self) -> bool {
        let scale = 1f64.max(self.norm()).max(other.norm());
        (self - other).norm() >= NUMERIC_DISTINCTNESS * scale
    }
    fn powu(&self, n: u32) -> Self {
        self.powu(n)
    }
}

impl Scalar for ComplexDd {
    fn zero() -> Self {
        num_traits::Zero::zero()
    }
    fn one() -> Self {
        num_traits::One::one()
    }
    fn from_i64(n: i64) -> Self {
        dd::from_c64(Complex64::new(n as f64, 0.0))
    }
    fn is_zero(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
    fn try_div(&self, rhs: &Self) -> Result<Self> {
        if Scalar::is_zero(rhs) {
            return Err(Error::DivisionByZero);
        }
        Ok(*self / *rhs)
    }
    fn is_distinct_from(&self, other: &Self) -> bool {
        let scale = 1f64.max(self.modulus()).max(other.modulus());
        (*self - *other).modulus() >= NUMERIC_DISTINCTNESS * scale
    }
}

/// A floating-point complex field: `Complex64` or the double-double
/// [`ComplexDd`]. Numeric engines are generic over the working precision.
pub trait Numeric: Scalar + Copy + Div<Output = Self> {
    /// Accuracy targeted by truncated series evaluated in this type.
    const UNIT_ROUNDOFF: f64;

    fn from_c64(z: Complex64) -> Self;
    fn to_c64(self) -> Complex64;

    fn modulus(self) -> f64 {
        self.to_c64().norm()
    }

    fn is_finite(self) -> bool {
        self.to_c64().is_finite()
    }

    /// Integer power; negative exponents invert.
    fn ipow(self, e: i64) -> Self {
        let magnitude = u32::try_from(e.unsigned_abs()).expect("exponent fits in u32");
        let v = Scalar::powu(&self, magnitude);
        if e < 0 {
            Self::one() / v
        } else {
            v
        }
    }
}

impl Numeric for Complex64 {
    const UNIT_ROUNDOFF: f64 = 1e-16;
    fn from_c64(z: Complex64) -> Self {
        z
    }
    fn to_c64(self) -> Complex64 {
        self
    }
    fn modulus(self) -> f64 {
        self.norm()
    }
}

impl Numeric for ComplexDd {
    const UNIT_ROUNDOFF: f64 = 1e-32;
    fn from_c64(z: Complex64) -> Self {
        dd::from_c64(z)
    }
    fn to_c64(self) -> Complex64 {
        dd::to_c64(self)
    }
}

/// Approximate-equality policy for numeric scalars.
///
/// `x ~ y` iff `|x - y| <= max(abs, rel * max(|x|, |y|))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub rel: f64,
    pub abs: f64,
}

impl Tolerance {
    pub const fn new(rel: f64, abs: f64) -> Self {
        Self { rel, abs }
    }

    pub const fn relative(rel: f64) -> Self {
        Self { rel, abs: 0.0 }
    }

    pub fn approx_eq(&self, x: Complex64, y: Complex64) -> bool {
        let diff = (x - y).norm();
        diff <= self.abs.max(self.rel * x.norm().max(y.norm()))
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Self::new(1e-9, 1e-12)
    }
}

/// `|x - y| / max(|x|, |y|)`, or 0 when both vanish.
pub fn relative_error(x: Complex64, y: Complex64) -> f64 {
    let scale = x.norm().max(y.norm());
    if scale == 0.0 {
        0.0
    } else {
        (x - y).norm() / scale
    }
}

/// Residual of an identity `lhs = sum(terms)`, relative to the largest
/// magnitude among `lhs` and the individual terms.
pub fn identity_residual(lhs: Complex64, terms: &[Complex64]) -> f64 {
    let rhs: Complex64 = terms.iter().sum();
    let scale = terms.iter().fold(lhs.norm(), |m, t| m.max(t.norm()));
    if scale == 0.0 {
        0.0
    } else {
        (lhs - rhs).norm() / scale
    }
}
