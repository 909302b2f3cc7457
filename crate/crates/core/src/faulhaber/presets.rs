use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_rational::BigRational;
use num_traits::Zero;

use super::power::power_with_constant;
use super::{at, power_coefficients, EvalResult, Exponent, SumQuery, Variant};
use crate::error::{Error, Result};
use crate::exact::rat;
use crate::mp::{pi, Complex, Precision, Real};
use crate::special::riemann_zeta;

/// Named power sums with a fixed exponent, split point and closed-form constant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Preset {
    /// `sum 1/k^2`, constant `pi^2/6`.
    Zeta2Partial,
    /// `sum 1/k^3`.
    Zeta3Partial,
    /// `sum sqrt(k)`, constant `-zeta(3/2) / (4 pi)`.
    SqrtSum,
    /// `sum k sqrt(k)`, constant `-3 zeta(5/2) / (16 pi^2)`.
    KSqrtK,
    /// `sum k^2 sqrt(k)`, constant `15 zeta(7/2) / (64 pi^3)`.
    K2SqrtK,
    /// `sum 1/sqrt(k)`.
    InvSqrt,
    /// `sum k^(-3/2)`.
    Zeta32Partial,
    /// `sum k^(-5/2)`.
    Zeta52Partial,
    /// Any exponent with `a = floor(Re m + 1)`.
    BalancedShift,
}

impl Preset {
    pub const ALL: [Preset; 9] = [
        Preset::Zeta2Partial,
        Preset::Zeta3Partial,
        Preset::SqrtSum,
        Preset::KSqrtK,
        Preset::K2SqrtK,
        Preset::InvSqrt,
        Preset::Zeta32Partial,
        Preset::Zeta52Partial,
        Preset::BalancedShift,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Preset::Zeta2Partial => "zeta2-partial",
            Preset::Zeta3Partial => "zeta3-partial",
            Preset::SqrtSum => "sqrt-sum",
            Preset::KSqrtK => "k-sqrtk",
            Preset::K2SqrtK => "k2-sqrtk",
            Preset::InvSqrt => "inv-sqrt",
            Preset::Zeta32Partial => "zeta32-partial",
            Preset::Zeta52Partial => "zeta52-partial",
            Preset::BalancedShift => "balanced-shift",
        }
    }

    /// `(m, a)`, or `None` for [`Preset::BalancedShift`], whose exponent is supplied.
    pub fn parameters(self) -> Option<(BigRational, usize)> {
        Some(match self {
            Preset::Zeta2Partial => (rat(-2, 1), 0),
            Preset::Zeta3Partial => (rat(-3, 1), 0),
            Preset::SqrtSum => (rat(1, 2), 0),
            Preset::KSqrtK => (rat(3, 2), 2),
            Preset::K2SqrtK => (rat(5, 2), 3),
            Preset::InvSqrt => (rat(-1, 2), 1),
            Preset::Zeta32Partial => (rat(-3, 2), 1),
            Preset::Zeta52Partial => (rat(-5, 2), 0),
            Preset::BalancedShift => return None,
        })
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Preset {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Preset::ALL
            .into_iter()
            .find(|p| p.id() == s)
            .ok_or_else(|| Error::invalid(alloc::format!("unknown preset `{s}`")))
    }
}

/// `floor(Re m + 1)` for `Re m >= -1`, else 0.
pub fn balanced_shift(m: &Exponent) -> usize {
    let r = m.re_f64();
    if r >= -1.0 {
        libm::floor(r + 1.0) as usize
    } else {
        0
    }
}

/// The constant term of a preset in closed form. Equals `zeta(-m)`.
pub fn preset_constant(preset: Preset, prec: Precision) -> Result<Complex> {
    let w = prec.working();
    let z = |p: i64, q: i64| -> Result<Real> { Ok(riemann_zeta(&Complex::from_rational(&rat(p, q), w), prec)?.re) };
    let pi = pi(w);
    let value = match preset {
        Preset::Zeta2Partial => pi.mul_prec(&pi, w).div_prec(&Real::from_u64(6, 64), w),
        Preset::Zeta3Partial => z(3, 1)?,
        Preset::SqrtSum => -z(3, 2)?.div_prec(&pi.mul_pow2(2), w),
        Preset::KSqrtK => -z(5, 2)?.mul_prec(&Real::from_u64(3, 64), w).div_prec(&pi.powi(2).mul_pow2(4), w),
        Preset::K2SqrtK => z(7, 2)?.mul_prec(&Real::from_u64(15, 64), w).div_prec(&pi.powi(3).mul_pow2(6), w),
        Preset::InvSqrt => z(1, 2)?,
        Preset::Zeta32Partial => z(3, 2)?,
        Preset::Zeta52Partial => z(5, 2)?,
        Preset::BalancedShift => return Err(Error::invalid("balanced-shift has no fixed constant")),
    };
    Ok(Complex::from_real(value))
}

/// Evaluates a preset at `x`. The exponent, `a` and the variant of `q` are replaced by the
/// preset's own, except that [`Preset::BalancedShift`] keeps the exponent of `q`.
pub fn preset_sum(preset: Preset, q: &SumQuery) -> Result<EvalResult> {
    let mut q = q.clone();
    q.variant = Variant::Plain;
    match preset.parameters() {
        Some((m, a)) => {
            q.m = Exponent::Exact(m);
            q.a = a;
            let constant = move |p: Precision| preset_constant(preset, p);
            let mut r = power_with_constant(&q, Some(&constant))?;
            r.formula_id = alloc::format!("preset/{}", preset.id());
            Ok(r)
        }
        None => {
            q.a = balanced_shift(&q.m);
            let mut r = super::power_sum(&q)?;
            r.formula_id = alloc::format!("preset/{}/a={}", preset.id(), q.a);
            Ok(r)
        }
    }
}

/// The first `k_max` numerators of a preset at integer `n`, i.e. at `{x} = 0`.
pub fn preset_coefficients(preset: Preset, k_max: usize) -> Result<Vec<BigRational>> {
    let (m, a) = preset.parameters().ok_or_else(|| Error::invalid("balanced-shift has no fixed coefficients"))?;
    Ok(at(&power_coefficients(&m, a, Variant::Plain, k_max)?, &BigRational::zero()))
}
