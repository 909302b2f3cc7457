//! Convergent summation formulas for `sum_{k<=x} k^m` and related sums.
//!
//! Every formula has the shape `main(x) + prefactor(x) * sum_k b_k / ((x+1)...(x+k))`
//! where `b_k` comes from a Weniger transform of an inverse power stream. The
//! factorial series converges for every `x > 0`, but only algebraically, roughly
//! like `K^-x`. [`ArgumentShift::Auto`] therefore evaluates the formula at a larger
//! argument with the same fractional part and subtracts the extra terms directly.

mod alternating;
mod coefficients;
mod engines;
mod harmonic;
mod logsum;
mod power;
mod presets;

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::floor_fract;
use crate::mp::{Complex, Precision, Real};
use crate::weniger::{evaluate_factorial_series, SeriesOptions, StoppingRule, WenigerStream};

pub use alternating::alternating_power_sum;
pub use coefficients::{alternating_coefficients, at, harmonic_coefficients, log_coefficients, power_coefficients};
pub use engines::{
    boole_convergent_sum, constant_cf, em_convergent_sum, FunctionFamily, LogFamily, PowerFamily, ReciprocalFamily,
    SummationKind,
};
pub use harmonic::harmonic_sum;
pub use logsum::log_sum;
pub use power::{power_sum, power_sum_exact, ExactSum};
pub use presets::{balanced_shift, preset_coefficients, preset_constant, preset_sum, Preset};

/// The exponent `m`, either exact or an approximate complex number.
#[derive(Clone, Debug, PartialEq)]
pub enum Exponent {
    Exact(BigRational),
    Approx(Complex),
}

impl Exponent {
    pub fn exact(m: BigRational) -> Self {
        Exponent::Exact(m)
    }

    pub fn to_complex(&self, prec: u32) -> Complex {
        match self {
            Exponent::Exact(r) => Complex::from_rational(r, prec),
            Exponent::Approx(c) => c.with_prec(prec),
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Exponent::Exact(_))
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Exponent::Exact(r) => Some(r),
            Exponent::Approx(_) => None,
        }
    }

    /// `Some(m)` for an exact integer exponent.
    pub fn as_integer(&self) -> Option<i64> {
        self.as_rational().filter(|r| r.is_integer()).and_then(|r| r.to_integer().to_i64())
    }

    pub fn re_f64(&self) -> f64 {
        match self {
            Exponent::Exact(r) => r.to_f64().unwrap_or(f64::NAN),
            Exponent::Approx(c) => c.re.to_f64(),
        }
    }

    /// Drops exactness.
    pub fn inexact(self, prec: u32) -> Self {
        Exponent::Approx(self.to_complex(prec))
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exponent::Exact(r) => write!(f, "{r}"),
            Exponent::Approx(c) => write!(f, "{}", c.to_sci_string(20)),
        }
    }
}

/// Which Stirling column a formula's factorial series starts from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Variant {
    /// `S_k(l)` with prefactor carrying `x^-a`.
    #[default]
    Plain,
    /// `S_k(l + a)`.
    Shifted,
    /// `S_k(l + a + 1)`; log sums only.
    ShiftedPlus,
}

impl Variant {
    pub fn as_str(&self) -> &'static str {
        match self {
            Variant::Plain => "plain",
            Variant::Shifted => "shifted",
            Variant::ShiftedPlus => "shifted-plus",
        }
    }
}

impl FromStr for Variant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "plain" => Ok(Variant::Plain),
            "shifted" => Ok(Variant::Shifted),
            "shifted-plus" => Ok(Variant::ShiftedPlus),
            other => Err(Error::invalid(alloc::format!("unknown variant `{other}`"))),
        }
    }
}

/// How the argument may be moved before the factorial series is summed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ArgumentShift {
    /// Evaluate the formula at `x` itself.
    None,
    /// Evaluate at `x + d` and subtract the `d` extra terms.
    By(u64),
    /// Shift only when `x` is too small for the term budget.
    #[default]
    Auto,
}

/// A summation request.
#[derive(Clone, Debug)]
pub struct SumQuery {
    pub m: Exponent,
    /// Upper limit, summed over `k <= floor(x)`; must be positive.
    pub x: BigRational,
    pub a: usize,
    pub variant: Variant,
    pub precision: Precision,
    pub term_budget: usize,
    /// Sum exactly this many factorial terms instead of stopping adaptively.
    pub fixed_terms: Option<usize>,
    pub shift: ArgumentShift,
    pub trace: bool,
}

impl SumQuery {
    /// Query for families without an exponent (harmonic, log and the generic engines).
    pub fn at(x: BigRational) -> Self {
        Self::new(Exponent::Exact(BigRational::zero()), x)
    }

    pub fn new(m: Exponent, x: BigRational) -> Self {
        SumQuery {
            m,
            x,
            a: 0,
            variant: Variant::Plain,
            precision: Precision::default(),
            term_budget: 200,
            fixed_terms: None,
            shift: ArgumentShift::Auto,
            trace: false,
        }
    }

    pub fn with_a(mut self, a: usize) -> Self {
        self.a = a;
        self
    }

    pub fn with_variant(mut self, v: Variant) -> Self {
        self.variant = v;
        self
    }

    pub fn with_precision(mut self, p: Precision) -> Self {
        self.precision = p;
        self
    }

    pub fn with_budget(mut self, k: usize) -> Self {
        self.term_budget = k;
        self
    }

    pub fn with_fixed_terms(mut self, k: usize) -> Self {
        self.fixed_terms = Some(k);
        self
    }

    pub fn with_shift(mut self, s: ArgumentShift) -> Self {
        self.shift = s;
        self
    }

    pub fn traced(mut self, on: bool) -> Self {
        self.trace = on;
        self
    }
}

/// A summation result.
#[derive(Clone, Debug)]
pub struct EvalResult {
    pub value: Complex,
    /// Heuristic estimate of the omitted factorial tail.
    pub est_error: Real,
    pub terms_used: usize,
    /// `|term_k|` for each summed factorial term, scaled by the prefactor.
    pub trace: Option<Vec<Real>>,
    /// Identifier of the evaluated formula, e.g. `power/plain`.
    pub formula_id: String,
    /// The exact rational value, when the evaluation was exact.
    pub exact: Option<BigRational>,
    /// Argument at which the formula was evaluated, when it differs from `x`.
    pub shifted_to: Option<BigRational>,
}

/// `floor(x)`, `{x}` and the argument actually used.
#[derive(Clone, Debug)]
pub(crate) struct Plan {
    pub floor: BigInt,
    pub eval_x: BigRational,
    pub eval_floor: BigInt,
    pub frac: BigRational,
}

impl Plan {
    pub fn shifted(&self) -> Option<BigRational> {
        (self.eval_floor != self.floor).then(|| self.eval_x.clone())
    }

    /// Integers `floor(x) + 1 ..= floor(eval_x)` whose terms must be subtracted.
    pub fn extra_terms(&self) -> core::ops::RangeInclusive<u64> {
        let lo = self.floor.to_u64().unwrap_or(0) + 1;
        let hi = self.eval_floor.to_u64().unwrap_or(0);
        lo..=hi
    }

    /// Guard bits covering cancellation against the subtracted terms.
    pub fn guard_bits(&self, growth: f64) -> u32 {
        if self.shifted().is_none() {
            return 0;
        }
        let top = self.eval_x.to_f64().unwrap_or(1.0).max(2.0);
        (libm::log2(top) * (growth.max(0.0) + 1.0)) as u32 + 16
    }
}

/// Smallest argument at which a factorial series with terms near `(k-1)! k^growth / ((x+1)...(x+k))`
/// drops below `2^-bits` within three quarters of `budget`.
pub(crate) fn auto_floor(bits: u32, budget: usize, growth: f64) -> u64 {
    let k = (budget * 3 / 4).max(16) as f64;
    let target = -((bits + 12) as f64) * core::f64::consts::LN_2;
    let log_k = libm::log(k);
    let lgk = libm::lgamma(k);
    let mut x = 8u64;
    while x < 1 << 20 {
        let xf = x as f64;
        let v = libm::lgamma(xf + 1.0) + lgk - libm::lgamma(xf + k + 1.0) + growth * log_k;
        if v <= target {
            break;
        }
        x += if x < 64 { 1 } else { x / 16 };
    }
    x
}

pub(crate) fn plan(x: &BigRational, policy: ArgumentShift, bits: u32, budget: usize, growth: f64) -> Result<Plan> {
    if !x.is_positive() {
        return Err(Error::invalid("x must be positive"));
    }
    let (floor, frac) = floor_fract(x);
    let target = match policy {
        ArgumentShift::None => floor.clone(),
        ArgumentShift::By(d) => &floor + BigInt::from(d),
        ArgumentShift::Auto => floor.clone().max(BigInt::from(auto_floor(bits, budget, growth))),
    };
    let eval_x = BigRational::from_integer(target.clone()) + &frac;
    Ok(Plan { floor, eval_x, eval_floor: target, frac })
}

/// Settings of one factorial-series evaluation.
pub(crate) struct TailSpec {
    pub family: &'static str,
    pub stirling_shift: usize,
    pub prefactor: Complex,
    /// Magnitude of the whole result, used as the stopping reference.
    pub scale: Real,
    pub precision: Precision,
    pub budget: usize,
    pub fixed: Option<usize>,
    pub trace: bool,
}

impl TailSpec {
    pub fn new(family: &'static str, q: &SumQuery, precision: Precision) -> Self {
        TailSpec {
            family,
            stirling_shift: 0,
            prefactor: Complex::one(precision.working()),
            scale: Real::one(64),
            precision,
            budget: q.term_budget,
            fixed: q.fixed_terms,
            trace: q.trace,
        }
    }
}

pub(crate) struct TailEval {
    pub value: Complex,
    pub est_error: Real,
    pub terms: usize,
    pub trace: Option<Vec<Real>>,
}

/// Sums `prefactor * sum_k b_k / ((x+1)...(x+k))` with `b_k` transformed from `source`.
pub(crate) fn run_tail<F>(source: F, x: &Complex, spec: TailSpec) -> Result<TailEval>
where
    F: FnMut(usize) -> Result<Complex>,
{
    let w = spec.precision.working();
    let pre_abs = spec.prefactor.with_prec(64).abs();
    let stop = match spec.fixed {
        Some(k) => StoppingRule::Fixed(k),
        None if pre_abs.is_zero() => StoppingRule::adaptive(spec.budget),
        None => StoppingRule::adaptive(spec.budget).with_reference(spec.scale.with_prec(64).div_prec(&pre_abs, 64)),
    };
    let opts = SeriesOptions::new(spec.precision, stop, spec.family).traced(spec.trace);
    let stream = WenigerStream::new(Complex::zero(w), spec.stirling_shift, source);
    let s = evaluate_factorial_series(stream, x, &opts)?;
    let trace = s.trace.map(|t| t.into_iter().map(|v| v.mul_prec(&pre_abs, 64)).collect());
    Ok(TailEval {
        value: &spec.prefactor * &s.value,
        est_error: s.est_error.mul_prec(&pre_abs, 64),
        terms: s.terms_used,
        trace,
    })
}

/// Stirling column offset for a variant.
pub(crate) fn variant_shift(v: Variant, a: usize, allow_plus: bool) -> Result<usize> {
    match v {
        Variant::Plain => Ok(0),
        Variant::Shifted => Ok(a),
        Variant::ShiftedPlus if allow_plus => Ok(a + 1),
        Variant::ShiftedPlus => Err(Error::invalid("variant shifted-plus applies to log sums only")),
    }
}

/// `(-1)^n`.
pub(crate) fn parity_sign(n: &BigInt) -> i64 {
    if (n % 2u32).is_zero() {
        1
    } else {
        -1
    }
}

/// `|z|` at 64 bits, or 1 when `z = 0`.
pub(crate) fn magnitude_or_one(z: &Complex) -> Real {
    let r = z.with_prec(64).abs();
    if r.is_zero() {
        Real::one(64)
    } else {
        r
    }
}

pub(crate) fn format_id(family: &str, v: Variant) -> String {
    alloc::format!("{family}/{}", v.as_str())
}
