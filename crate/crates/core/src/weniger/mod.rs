//! Inverse power series to inverse factorial series.
//!
//! Given `F(z) ~ sum_l a_l z^-l`, the Weniger transformation produces `b_k` with
//! `F(z) = sum_k b_k / ((z+1)(z+2)...(z+k))`, where
//! `b_k = (-1)^k sum_l (-1)^l S_k(l) a_l` and `S_k(l)` are signed Stirling numbers
//! of the first kind. The shifted form uses `S_k(l + shift)` instead.

mod eval;
mod transform;

use alloc::vec::Vec;
use core::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::exact::RationalPoly;
use crate::mp::{Complex, Real};

pub use eval::{evaluate_factorial_series, factorial_partial_sums_exact, SeriesEval, SeriesOptions, StoppingRule};
pub use transform::{weniger_transform, weniger_transform_shifted, WenigerStream};

/// Scalar kinds a coefficient stream can carry.
pub trait Coefficient: Clone + Debug {
    /// `true` for kinds that never round.
    const EXACT: bool;

    fn zero_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul_int(&self, k: &BigInt) -> Self;
}

impl Coefficient for BigRational {
    const EXACT: bool = true;
    fn zero_like(&self) -> Self {
        BigRational::zero()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_int(&self, k: &BigInt) -> Self {
        self * BigRational::from_integer(k.clone())
    }
}

impl Coefficient for RationalPoly {
    const EXACT: bool = true;
    fn zero_like(&self) -> Self {
        RationalPoly::zero()
    }
    fn is_zero(&self) -> bool {
        RationalPoly::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_int(&self, k: &BigInt) -> Self {
        self.scale(&BigRational::from_integer(k.clone()))
    }
}

impl Coefficient for Complex {
    const EXACT: bool = false;
    fn zero_like(&self) -> Self {
        Complex::zero(self.prec())
    }
    fn is_zero(&self) -> bool {
        Complex::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_int(&self, k: &BigInt) -> Self {
        let p = self.prec();
        let k = Real::from_bigint(k, (k.bits() as u32).max(p));
        Complex::new(self.re.mul_prec(&k, p), self.im.mul_prec(&k, p))
    }
}

/// Inverse power series coefficients `a_1, ..., a_L` of `sum_l a_l z^-l`.
#[derive(Clone, Debug, PartialEq)]
pub struct PowerSeriesCoefficients<T> {
    terms: Vec<T>,
}

impl<T: Coefficient> PowerSeriesCoefficients<T> {
    /// `terms[0]` is `a_1`. Returns `None` for an empty list.
    pub fn new(terms: Vec<T>) -> Option<Self> {
        if terms.is_empty() {
            None
        } else {
            Some(PowerSeriesCoefficients { terms })
        }
    }

    pub fn terms(&self) -> &[T] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_exact(&self) -> bool {
        T::EXACT
    }

    /// `a_l` for `l >= 1`, zero past the end.
    pub fn get(&self, l: usize) -> T {
        self.terms.get(l - 1).cloned().unwrap_or_else(|| self.terms[0].zero_like())
    }
}

/// Which Stirling column the transform starts from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TransformVariant {
    /// `S_k(l)`.
    Plain,
    /// `S_k(l + shift)`.
    ShiftedIndex,
}

/// Inverse factorial coefficients `b_1, ..., b_K`.
#[derive(Clone, Debug, PartialEq)]
pub struct FactorialSeriesCoefficients<T> {
    pub terms: Vec<T>,
    pub shift: usize,
    pub variant: TransformVariant,
}

impl<T> FactorialSeriesCoefficients<T> {
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// `b_k` for `k >= 1`.
    pub fn get(&self, k: usize) -> Option<&T> {
        k.checked_sub(1).and_then(|i| self.terms.get(i))
    }
}
