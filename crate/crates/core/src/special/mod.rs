//! Hurwitz and Riemann zeta, digamma, log-gamma, Dirichlet eta and Euler's constant.
//!
//! Each function comes in an asymptotic form with a remainder bound and, where
//! available, a convergent inverse factorial form.

mod bounds;
mod digamma;
mod hurwitz;
mod zeta;

use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::bernoulli_poly_unchecked;
use crate::mp::{complex_pow, Complex, Precision, Real};

pub use bounds::{
    bernoulli_sup_bound, digamma_remainder_bound, hurwitz_remainder_bound, log_gamma_remainder_bound,
    within_rigorous_sector,
};
pub use digamma::{
    digamma, digamma_asymptotic, digamma_asymptotic_to, digamma_factorial, euler_gamma, log_gamma_asymptotic,
};
pub use hurwitz::{hurwitz_zeta, hurwitz_zeta_asymptotic, hurwitz_zeta_asymptotic_to, hurwitz_zeta_factorial};
pub use zeta::{dirichlet_eta, riemann_zeta};

/// Whether a reported bound is proven or estimated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BoundKind {
    Rigorous,
    Heuristic,
}

/// A value together with a bound on its truncation error.
///
/// The bound covers the omitted part of the expansion. Rounding in the retained
/// terms is controlled separately by the working precision.
#[derive(Clone, Debug)]
pub struct BoundedValue {
    pub value: Complex,
    pub rigorous_bound: Real,
    pub bound_kind: BoundKind,
    /// Asymptotic order `n` or factorial-series terms `K` actually used.
    pub terms: usize,
}

/// Arguments of `zeta(s, z + h)` (asymptotic form) or `zeta(s, z + 1 - y)` (factorial form).
#[derive(Clone, Debug)]
pub struct ZetaQuery {
    pub s: Complex,
    pub z: Complex,
    /// `h` for the asymptotic form, `y` for the factorial form.
    pub h: BigRational,
    /// Truncation order `n`, or the split point `a` of the factorial form.
    pub n: usize,
    /// Term budget `K` for the factorial form.
    pub budget: usize,
}

impl ZetaQuery {
    pub fn new(s: Complex, z: Complex) -> Self {
        ZetaQuery { s, z, h: BigRational::zero(), n: 8, budget: 200 }
    }

    pub fn with_h(mut self, h: BigRational) -> Self {
        self.h = h;
        self
    }

    pub fn with_n(mut self, n: usize) -> Self {
        self.n = n;
        self
    }

    pub fn with_budget(mut self, k: usize) -> Self {
        self.budget = k;
        self
    }
}

/// Rejects `s` within `2^(-P/2)` of 1.
pub(crate) fn check_pole(s: &Complex, prec: Precision) -> Result<()> {
    let d = (s - &Complex::one(s.prec())).with_prec(64).abs();
    if d.is_zero() || d.magnitude_exp().is_some_and(|e| e < -(prec.bits() as i64) / 2) {
        return Err(Error::PoleAtOne);
    }
    Ok(())
}

/// Rejects `z` on the branch cut `(-inf, 0]`.
pub(crate) fn check_slit(z: &Complex) -> Result<()> {
    if z.im.is_zero() && !z.re.is_positive() {
        return Err(Error::invalid("z must not lie on (-inf, 0]"));
    }
    Ok(())
}

/// `B_k(y)` rounded to `w` bits; `y` must already be checked.
pub(crate) fn bernoulli_real(k: usize, y: &BigRational, w: u32) -> Real {
    Real::from_rational(&bernoulli_poly_unchecked(k, y), w)
}

/// `z^e` with the real fast paths of [`complex_pow`].
pub(crate) fn zpow(z: &Complex, e: &Complex, w: u32) -> Result<Complex> {
    if z.is_real() && z.re.is_positive() {
        complex_pow(&z.re, e, w)
    } else {
        z.with_prec(w).pow(&e.with_prec(w))
    }
}

pub(crate) fn sector_kind(z: &Complex) -> BoundKind {
    if within_rigorous_sector(z) {
        BoundKind::Rigorous
    } else {
        BoundKind::Heuristic
    }
}
