use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{
    format_id, harmonic_sum, magnitude_or_one, plan, power_coefficients, run_tail, variant_shift, ArgumentShift,
    EvalResult, SumQuery, TailSpec, Variant,
};
use crate::error::{Error, Result};
use crate::exact::{bernoulli_poly, binomial_rational, rat_int, rat_pow};
use crate::mp::{complex_pow, BinomialSequence, Complex, Precision, Real};
use crate::special::riemann_zeta;
use crate::weniger::WenigerStream;

/// Target of the exact path: the rational tail must drop below `10^-40`.
const EXACT_TAIL_BITS: u32 = 140;

/// An exact evaluation for a non-negative integer exponent.
#[derive(Clone, Debug, PartialEq)]
pub struct ExactSum {
    /// Formula value with the factorial series cut after `terms` terms.
    pub truncated: BigRational,
    /// What the omitted part of the series contributes, computed exactly.
    pub tail: BigRational,
    pub terms: usize,
    /// `truncated` rounded to the nearest integer.
    pub rounded: BigInt,
    pub shifted_to: Option<BigRational>,
}

/// `sum_{k <= x} k^m`.
///
/// Exact `m = -1` is evaluated as a harmonic sum; other exponents within `2^(-P/2)` of
/// `-1` are rejected unless exact. Exact non-negative integers use [`power_sum_exact`].
pub fn power_sum(q: &SumQuery) -> Result<EvalResult> {
    if let Some(r) = q.m.as_rational() {
        if *r == -BigRational::one() {
            return harmonic_sum(q);
        }
    }
    if let Some(m) = q.m.as_integer().filter(|m| *m >= 0) {
        return power_exact_result(m as u32, q);
    }
    power_with_constant(q, None)
}

/// Same as [`power_sum`] with the constant `zeta(-m)` supplied by the caller.
pub(crate) fn power_with_constant(
    q: &SumQuery,
    constant: Option<&dyn Fn(Precision) -> Result<Complex>>,
) -> Result<EvalResult> {
    let probe = q.m.to_complex(q.precision.working() + 32);
    let gap = (&probe + &Complex::one(64)).with_prec(64).abs();
    let half = q.precision.bits() / 2;
    let pole_bits = match gap.magnitude_exp() {
        None => return Err(Error::NearPole { threshold_bits: half }),
        Some(e) if e < -(half as i64) => {
            if !q.m.is_exact() {
                return Err(Error::NearPole { threshold_bits: half });
            }
            (-e) as u32 + 8
        }
        Some(_) => 0,
    };
    let shift = variant_shift(q.variant, q.a, false)?;
    let re_m = q.m.re_f64();
    let growth = (re_m + 1.0).max(0.0);
    let p0 = q.precision.raised(pole_bits);
    let pl = plan(&q.x, q.shift, p0.bits() + 16, q.term_budget, growth + 2.0)?;
    let p = p0.raised(pl.guard_bits(growth));
    let w = p.working();

    let m = q.m.to_complex(w);
    let one = Complex::one(w);
    let top = &m + &one;
    let x = Real::from_rational(&pl.eval_x, w);
    let xc = Complex::from_real(x.clone());
    let xp = complex_pow(&x, &top, w)?;
    let zeta = match constant {
        Some(f) => f(p)?,
        None => riemann_zeta(&-&m, p)?,
    };

    let mut main = &(&xp / &top) + &zeta;
    let mut binom = BinomialSequence::new(&top, w);
    let mut xk = xp.clone();
    for k in 1..=q.a {
        let c = binom.advance();
        xk = &xk / &xc;
        let b = bernoulli_poly(k, &pl.frac)?;
        if b.is_zero() {
            continue;
        }
        let term = (&(&c * &xk) / &top).scale(&Real::from_rational(&b, w));
        main = if k % 2 == 1 { &main - &term } else { &main + &term };
    }
    // xk = x^(m+1-a) here
    let prefactor = match q.variant {
        Variant::Plain => &xk / &top,
        _ => &xp / &top,
    };

    let frac = pl.frac.clone();
    let a = q.a;
    let source = move |l: usize| -> Result<Complex> {
        let j = l + a;
        let c = binom.advance();
        debug_assert_eq!(binom.index() as usize, j);
        let b = bernoulli_poly(j, &frac)?;
        let v = c.scale(&Real::from_rational(&b, w));
        Ok(if j % 2 == 1 { -v } else { v })
    };
    let mut spec = TailSpec::new("power_sum", q, p);
    spec.stirling_shift = shift;
    spec.scale = magnitude_or_one(&main);
    spec.prefactor = prefactor;
    let tail = run_tail(source, &xc, spec)?;

    let mut value = &main + &tail.value;
    for k in pl.extra_terms() {
        value = &value - &complex_pow(&Real::from_u64(k, 64), &m, w)?;
    }
    Ok(EvalResult {
        value: value.with_prec(q.precision.working()),
        est_error: tail.est_error,
        terms_used: tail.terms,
        trace: tail.trace,
        formula_id: format_id("power", q.variant),
        exact: None,
        shifted_to: pl.shifted(),
    })
}

fn power_exact_result(m: u32, q: &SumQuery) -> Result<EvalResult> {
    let e = power_sum_exact(m, &q.x, q.a, q.variant, q.shift, q.term_budget, q.fixed_terms)?;
    let w = q.precision.working();
    let (value, exact) = match q.fixed_terms {
        Some(_) => (Real::from_rational(&e.truncated, w), None),
        None => (Real::from_bigint(&e.rounded, w), Some(rat_int(e.rounded.clone()))),
    };
    let trace = q.trace.then(|| exact_trace(m, q, &e)).transpose()?;
    Ok(EvalResult {
        value: Complex::from_real(value),
        est_error: Real::from_rational(&e.tail.abs(), 64).round_up_abs(64),
        terms_used: e.terms,
        trace,
        formula_id: alloc::format!("power/{}/exact", q.variant.as_str()),
        exact,
        shifted_to: e.shifted_to,
    })
}

fn exact_trace(m: u32, q: &SumQuery, e: &ExactSum) -> Result<Vec<Real>> {
    let x = e.shifted_to.clone().unwrap_or_else(|| q.x.clone());
    let (_, y) = crate::exact::floor_fract(&x);
    let c = power_coefficients(&rat_int(m), q.a, q.variant, e.terms)?;
    let pre = exact_prefactor(m, q.a, q.variant, &x);
    let mut recip = BigRational::one();
    Ok(c.iter()
        .enumerate()
        .map(|(i, ck)| {
            recip /= &x + rat_int(i + 1);
            Real::from_rational(&(ck.eval(&y) * &recip * &pre).abs(), 64)
        })
        .collect())
}

fn exact_prefactor(m: u32, a: usize, variant: Variant, x: &BigRational) -> BigRational {
    let e = m as i64 + 1 - if variant == Variant::Plain { a as i64 } else { 0 };
    if e >= 0 {
        rat_pow(x, e as usize)
    } else {
        BigRational::one() / rat_pow(x, (-e) as usize)
    }
}

/// Exact evaluation of the power-sum formula for integer `m >= 0` at rational `x`.
///
/// The factorial series of a polynomial never terminates termwise, so it is summed in
/// exact arithmetic until its exact remainder is below `10^-40` (or for exactly
/// `fixed` terms), starting from `m + 20` terms.
pub fn power_sum_exact(
    m: u32,
    x: &BigRational,
    a: usize,
    variant: Variant,
    shift: ArgumentShift,
    budget: usize,
    fixed: Option<usize>,
) -> Result<ExactSum> {
    variant_shift(variant, a, false)?;
    let pl = plan(x, shift, EXACT_TAIL_BITS, budget, m as f64 + 3.0)?;
    let xr = &pl.eval_x;
    let y = &pl.frac;
    let top = rat_int(m + 1);
    let inv = BigRational::one() / &top;

    // B_{m+1}(1) = B_{m+1} except at m = 0, where it gives zeta(0) = -1/2.
    let zeta = -bernoulli_poly(m as usize + 1, &BigRational::one())? * &inv;
    let mut main = rat_pow(xr, m as usize + 1) * &inv + zeta;
    let mut full_tail = BigRational::zero();
    for k in 1..=m as usize + 1 {
        let mut t = binomial_rational(&top, k) * bernoulli_poly(k, y)? * rat_pow(xr, m as usize + 1 - k) * &inv;
        if k % 2 == 1 {
            t = -t;
        }
        if k <= a {
            main += t;
        } else {
            full_tail += t;
        }
    }
    let pre = exact_prefactor(m, a, variant, xr);
    let stream = WenigerStream::new(BigRational::zero(), variant_shift(variant, a, false)?, |l| {
        let j = l + a;
        let mut c = binomial_rational(&top, j) * bernoulli_poly(j, y)? * &inv;
        if j % 2 == 1 {
            c = -c;
        }
        Ok(c)
    });
    let cap = fixed.unwrap_or(budget);
    let threshold = BigRational::new(1.into(), num_traits::pow(BigInt::from(10), 40));
    let mut recip = BigRational::one();
    let mut partial = BigRational::zero();
    let mut terms = 0;
    let mut done = false;
    for (i, c) in stream.take(cap).enumerate() {
        recip /= xr + rat_int(i + 1);
        partial += c? * &recip;
        terms = i + 1;
        if fixed.is_none() && terms >= m as usize + 20 && (&full_tail - &pre * &partial).abs() < threshold {
            done = true;
            break;
        }
    }
    if fixed.is_none() && !done {
        return Err(Error::NonConvergence { family: "power_sum", budget });
    }
    let mut truncated = main + &pre * &partial;
    let tail = full_tail - &pre * &partial;
    for k in pl.extra_terms() {
        truncated -= rat_int(num_traits::pow(BigInt::from(k), m as usize));
    }
    let rounded = (&truncated + BigRational::new(1.into(), 2.into())).floor().to_integer();
    Ok(ExactSum { truncated, tail, terms, rounded, shifted_to: pl.shifted() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{parse_decimal, rat};
    use crate::faulhaber::Exponent;
    use crate::mp::pi;

    fn p(bits: u32) -> Precision {
        Precision::new(bits).unwrap()
    }

    fn direct(m: &Complex, n: u64, w: u32) -> Complex {
        let mut s = Complex::zero(w);
        for k in 1..=n {
            s = &s + &complex_pow(&Real::from_u64(k, 64), m, w).unwrap();
        }
        s
    }

    fn close(a: &Complex, b: &Complex, log2_tol: i64) -> bool {
        let d = (a - b).with_prec(64).abs();
        d <= magnitude_or_one(b).mul_pow2(log2_tol)
    }

    fn q(m: BigRational, x: BigRational) -> SumQuery {
        SumQuery::new(Exponent::Exact(m), x).with_precision(p(128))
    }

    #[test]
    fn integer_exponent_is_exact() {
        let r = power_sum(&q(rat(2, 1), rat(10, 1))).unwrap();
        assert_eq!(r.exact, Some(rat(385, 1)));
        assert_eq!(r.value.re, Real::from_u64(385, 64));
        let r = power_sum(&q(rat(2, 1), rat(10, 1)).with_precision(p(53))).unwrap();
        assert_eq!(r.exact, Some(rat(385, 1)));
        let e = power_sum_exact(3, &rat(5, 1), 0, Variant::Plain, ArgumentShift::Auto, 400, None).unwrap();
        assert_eq!(e.rounded, BigInt::from(225));
        assert!(e.tail.abs() < rat(1, 1_000_000_000_000));
    }

    #[test]
    fn sqrt_sum_at_four() {
        let w = p(128).working();
        let r = power_sum(&q(rat(1, 2), rat(4, 1)).with_a(1).with_budget(400)).unwrap();
        let expect = direct(&Complex::from_rational(&rat(1, 2), w), 4, w);
        assert!(close(&r.value, &expect, -120), "{:?}", r.value);
        assert!(r.shifted_to.is_some());
    }

    #[test]
    fn floor_dependence_only() {
        let a = power_sum(&q(rat(1, 2), rat(7, 2))).unwrap();
        let b = power_sum(&q(rat(1, 2), rat(3, 1))).unwrap();
        assert!(close(&a.value, &b.value, -118));
    }

    #[test]
    fn unshifted_large_argument() {
        let w = p(128).working();
        let m = Complex::from_rational(&rat(1, 2), w);
        let r = power_sum(&q(rat(1, 2), rat(200, 1)).with_a(1).with_shift(ArgumentShift::None)).unwrap();
        assert!(r.shifted_to.is_none());
        assert!(close(&r.value, &direct(&m, 200, w), -118));
    }

    #[test]
    fn complex_exponent() {
        let w = p(128).working();
        let m = Complex::new(Real::from_rational(&rat(-3, 2), w), Real::from_i64(3, w));
        let qq = SumQuery::new(Exponent::Approx(m.clone()), rat(17, 1)).with_precision(p(128)).with_a(2);
        let r = power_sum(&qq).unwrap();
        assert!(close(&r.value, &direct(&m, 17, w), -115));
        let r = power_sum(&qq.with_variant(Variant::Shifted)).unwrap();
        assert!(close(&r.value, &direct(&m, 17, w), -115));
    }

    #[test]
    fn near_pole_policy() {
        let w = p(128).working();
        let m = Complex::from_real(Real::from_i64(-1, w).add_prec(&Real::one(64).mul_pow2(-80), false, w));
        let qq = SumQuery::new(Exponent::Approx(m), rat(10, 1)).with_precision(p(128));
        assert_eq!(power_sum(&qq).unwrap_err(), Error::NearPole { threshold_bits: 64 });
        let qq = SumQuery::new(Exponent::Approx(Complex::from_i64(-1, w)), rat(10, 1)).with_precision(p(128));
        assert!(matches!(power_sum(&qq), Err(Error::NearPole { .. })));
        let r = power_sum(&q(rat(-1, 1), rat(4, 1))).unwrap();
        assert!(close(&r.value, &Complex::from_rational(&rat(25, 12), w), -120));
        assert!(r.formula_id.starts_with("harmonic"));
    }

    #[test]
    fn exact_rational_near_pole_is_accepted() {
        let w = p(128).working();
        let m = -BigRational::one() + BigRational::new(1.into(), num_traits::pow(BigInt::from(2), 80));
        let r = power_sum(&q(m.clone(), rat(6, 1))).unwrap();
        let expect = direct(&Complex::from_rational(&m, w + 64), 6, w + 64);
        assert!(close(&r.value, &expect, -110), "{:?} vs {:?}", r.value, expect);
    }

    #[test]
    fn empty_sum_is_zero() {
        for x in ["0.5", "0.999"] {
            let r = power_sum(&q(rat(1, 2), parse_decimal(x).unwrap())).unwrap();
            assert!(r.value.with_prec(64).abs() <= Real::one(64).mul_pow2(-112), "{x}: {:?}", r.value);
        }
        let e = power_sum_exact(2, &rat(1, 3), 0, Variant::Plain, ArgumentShift::Auto, 400, None).unwrap();
        assert_eq!(e.rounded, BigInt::zero());
    }

    #[test]
    fn supplied_constant_is_used() {
        let w = p(128).working();
        let constant = |pp: Precision| -> Result<Complex> {
            let ww = pp.working();
            Ok(Complex::from_real(pi(ww).mul_prec(&pi(ww), ww).div_prec(&Real::from_u64(6, 64), ww)))
        };
        let qq = SumQuery::new(Exponent::Approx(Complex::from_i64(-2, w)), rat(10, 1)).with_precision(p(128));
        let r = power_with_constant(&qq, Some(&constant)).unwrap();
        assert!(close(&r.value, &direct(&Complex::from_i64(-2, w), 10, w), -120));
    }

    #[test]
    fn trace_does_not_change_value() {
        let base = q(rat(1, 3), rat(25, 2)).with_a(2);
        let a = power_sum(&base).unwrap();
        let b = power_sum(&base.clone().traced(true)).unwrap();
        assert_eq!(a.value, b.value);
        assert_eq!(b.trace.unwrap().len(), b.terms_used);
        let e = power_sum(&q(rat(2, 1), rat(10, 1)).traced(true)).unwrap();
        assert_eq!(e.trace.unwrap().len(), e.terms_used);
    }
}
