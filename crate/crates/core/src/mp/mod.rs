//! Arbitrary-precision binary floating point, real and complex.
//!
//! Every operation rounds to nearest, ties to even. Precision travels with each value;
//! binary operations work at the wider of the two operands' precisions.

mod complex;
mod elementary;
mod format;
mod real;

pub use complex::{binomial_upper_complex, complex_pow, BinomialSequence, Complex};
pub use elementary::{atan, atan2, exp, ln, ln2, pi, sin_cos};
pub use format::digits_for_bits;
pub use real::{Real, MAX_EXPONENT};

use num_rational::BigRational;

use crate::error::{Error, Result};

/// Target precision `P` plus guard bits `g`; arithmetic runs at `P + g` bits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Precision {
    bits: u32,
    guard: u32,
}

impl Precision {
    pub const MIN_BITS: u32 = 53;
    pub const DEFAULT_GUARD: u32 = 32;

    pub fn new(bits: u32) -> Result<Self> {
        if bits < Self::MIN_BITS {
            return Err(Error::InvalidPrecision { got: bits, min: Self::MIN_BITS });
        }
        Ok(Precision { bits, guard: Self::DEFAULT_GUARD })
    }

    /// `P = ceil(digits * log2 10) + 16`.
    pub fn from_digits(digits: u32) -> Result<Self> {
        let bits = libm::ceil(digits as f64 * core::f64::consts::LOG2_10) as u32 + 16;
        Precision::new(bits)
    }

    pub fn with_guard(self, guard: u32) -> Self {
        Precision { guard, ..self }
    }

    /// Same guard, `extra` more target bits.
    pub fn raised(self, extra: u32) -> Self {
        Precision { bits: self.bits + extra, ..self }
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn guard(&self) -> u32 {
        self.guard
    }

    /// Bits carried by intermediate values.
    pub fn working(&self) -> u32 {
        self.bits + self.guard
    }

    /// `2^-P`.
    pub fn epsilon(&self) -> Real {
        Real::one(self.working()).mul_pow2(-(self.bits as i64))
    }

    /// `2^(k-P)`, the tolerance shape used throughout the tests.
    pub fn ulps(&self, k: i64) -> Real {
        Real::one(self.working()).mul_pow2(k - self.bits as i64)
    }

    pub fn int(&self, v: i64) -> Real {
        Real::from_i64(v, self.working())
    }

    pub fn rational(&self, r: &BigRational) -> Real {
        Real::from_rational(r, self.working())
    }

    pub fn complex_rational(&self, r: &BigRational) -> Complex {
        Complex::from_rational(r, self.working())
    }

    /// Decimal digits the target precision resolves.
    pub fn digits(&self) -> usize {
        digits_for_bits(self.bits)
    }
}

impl Default for Precision {
    fn default() -> Self {
        Precision { bits: 128, guard: Self::DEFAULT_GUARD }
    }
}
