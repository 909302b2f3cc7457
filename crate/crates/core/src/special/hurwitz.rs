use num_rational::BigRational;
use num_traits::One;

use super::{
    bernoulli_real, check_pole, check_slit, hurwitz_remainder_bound, sector_kind, zpow, BoundKind, BoundedValue,
    ZetaQuery,
};
use crate::error::{Error, Result};
use crate::exact::check_unit_interval;
use crate::mp::{BinomialSequence, Complex, Precision, Real};
use crate::weniger::{evaluate_factorial_series, SeriesOptions, StoppingRule, WenigerStream};

fn require_order(s: &Complex, n: usize) -> Result<()> {
    if !Real::from_u64(n as u64, 64).add_prec(&s.re, false, 64).is_positive() {
        return Err(Error::invalid("asymptotic order n must satisfy Re(s) > -n"));
    }
    Ok(())
}

/// `z^(1-s)/(s-1) (1 + sum_{k=1}^n C(1-s,k) B_k(h) z^-k)` at `w` bits.
pub(crate) fn hurwitz_asymptotic_value(s: &Complex, z: &Complex, h: &BigRational, n: usize, w: u32) -> Result<Complex> {
    let s = s.with_prec(w);
    let z = z.with_prec(w);
    let one = Complex::one(w);
    let lead = &zpow(&z, &(&one - &s), w)? / &(&s - &one);
    let zr = z.recip();
    let mut zp = one.clone();
    let mut sum = one;
    let mut binom = BinomialSequence::new(&(&Complex::one(w) - &s), w);
    for k in 1..=n {
        let c = binom.advance();
        zp = &zp * &zr;
        if c.is_zero() {
            break;
        }
        let b = bernoulli_real(k, h, w);
        if !b.is_zero() {
            sum = &sum + &(&c * &zp).scale(&b);
        }
    }
    Ok(&lead * &sum)
}

/// `zeta(s, z + h)` from the first `n` asymptotic terms, with the remainder bound.
///
/// The bound is rigorous for `|arg z| <= 3 pi / 4` and reported as heuristic beyond.
pub fn hurwitz_zeta_asymptotic(q: &ZetaQuery, prec: Precision) -> Result<BoundedValue> {
    check_pole(&q.s, prec)?;
    check_slit(&q.z)?;
    check_unit_interval(&q.h)?;
    require_order(&q.s, q.n)?;
    let w = prec.working();
    let value = hurwitz_asymptotic_value(&q.s, &q.z, &q.h, q.n, w)?;
    Ok(BoundedValue {
        value,
        rigorous_bound: hurwitz_remainder_bound(&q.s, &q.z, q.n),
        bound_kind: sector_kind(&q.z),
        terms: q.n,
    })
}

/// Like [`hurwitz_zeta_asymptotic`], choosing the smallest `n <= n_max` whose bound is at most `tol`.
pub fn hurwitz_zeta_asymptotic_to(
    s: &Complex,
    z: &Complex,
    h: &BigRational,
    tol: &Real,
    n_max: usize,
    prec: Precision,
) -> Result<BoundedValue> {
    check_pole(s, prec)?;
    check_slit(z)?;
    check_unit_interval(h)?;
    for n in 0..=n_max {
        if require_order(s, n).is_err() {
            continue;
        }
        if hurwitz_remainder_bound(s, z, n) <= *tol {
            let q = ZetaQuery::new(s.clone(), z.clone()).with_h(h.clone()).with_n(n);
            return hurwitz_zeta_asymptotic(&q, prec);
        }
    }
    Err(Error::PrecisionExhausted { family: "hurwitz_zeta", n_max })
}

/// `zeta(s, z + 1 - y)` from the inverse factorial expansion split after `a = q.n` power terms.
///
/// For integer `s <= 1` the expansion is a polynomial in `1/z`; `a` is then raised to
/// `1 - s` so the factorial part vanishes.
pub fn hurwitz_zeta_factorial(q: &ZetaQuery, prec: Precision) -> Result<BoundedValue> {
    check_pole(&q.s, prec)?;
    if !q.z.re.is_positive() {
        return Err(Error::invalid("factorial form needs Re(z) > 0"));
    }
    check_unit_interval(&q.h)?;
    let w = prec.working();
    let s = q.s.with_prec(w);
    let z = q.z.with_prec(w);
    let y = &q.h;
    let mut a = q.n;
    if let Some(m) = s.as_integer() {
        if m <= 1 {
            a = a.max((1 - m) as usize);
        }
    }
    let one = Complex::one(w);
    let lead = &zpow(&z, &(&one - &s), w)? / &(&s - &one);
    let zr = z.recip();
    let mut binom = BinomialSequence::new(&(&Complex::one(w) - &s), w);
    let mut head = one.clone();
    let mut zp = one.clone();
    for k in 1..=a {
        let c = binom.advance();
        zp = &zp * &zr;
        let b = bernoulli_real(k, y, w);
        let t = (&c * &zp).scale(&b);
        head = if k % 2 == 0 { &head + &t } else { &head - &t };
    }
    let polynomial = s.as_integer().is_some_and(|m| m <= 1);
    if polynomial {
        return Ok(BoundedValue {
            value: &lead * &head,
            rigorous_bound: Real::zero(64),
            bound_kind: BoundKind::Heuristic,
            terms: 0,
        });
    }
    // a_l = (-1)^(l+a) C(1-s, l+a) B_{l+a}(y)
    let source = move |l: usize| -> Result<Complex> {
        let j = l + a;
        let c = binom.advance();
        let t = c.scale(&bernoulli_real(j, y, w));
        Ok(if (l + a) % 2 == 0 { t } else { -t })
    };
    let stream = WenigerStream::new(Complex::zero(w), 0, source);
    let za = z.with_prec(64).abs().powi(a as i64);
    let opts = SeriesOptions::new(prec, StoppingRule::adaptive(q.budget).with_reference(za), "hurwitz_zeta");
    let series = evaluate_factorial_series(stream, &z, &opts)?;
    let zma = zr.powi(a as i64);
    let tail = &zma * &series.value;
    let scale = (&lead * &zma).with_prec(64).abs();
    Ok(BoundedValue {
        value: &lead * &(&head + &tail),
        rigorous_bound: series.est_error.mul_prec(&scale, 64),
        bound_kind: BoundKind::Heuristic,
        terms: series.terms_used,
    })
}

/// Order used by the shifted evaluations at `P` bits.
pub(crate) fn shift_order(s: &Complex, bits: u32) -> usize {
    let neg = libm::floor(-s.re.to_f64());
    let neg = if neg.is_finite() && neg > 0.0 { neg as usize } else { 0 };
    8usize.max(bits.div_ceil(4) as usize).max(neg + 2)
}

/// Smallest `N >= 10` with `bound(z0 + N - 1, n) <= tol`.
fn choose_shift(s: &Complex, z0: &Complex, n: usize, tol: &Real) -> usize {
    let ok = |nn: usize| {
        let z =
            Complex::new(z0.re.add_prec(&Real::from_u64(nn as u64 - 1, 64), false, z0.prec().max(64)), z0.im.clone());
        hurwitz_remainder_bound(s, &z, n) <= *tol
    };
    let mut lo = 10usize;
    if ok(lo) {
        return lo;
    }
    let mut hi = 20usize;
    while !ok(hi) {
        lo = hi;
        hi *= 2;
    }
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if ok(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

/// `sum_{k=0}^{N-1} (z0+k)^-s + zeta(s, z0+N)` with `N` from [`choose_shift`].
pub(crate) fn zeta_by_shift(s: &Complex, z0: &Complex, scale: &Real, prec: Precision) -> Result<Complex> {
    let bits = prec.bits();
    let n = shift_order(s, bits);
    let tol = scale.mul_pow2(-(bits as i64) - 8);
    let shift = choose_shift(s, z0, n, &tol);
    let top = z0.abs_f64() + shift as f64;
    let mut extra = 64 - (shift as u64).leading_zeros();
    let re = s.re.to_f64();
    if re < 0.5 {
        extra += libm::ceil((1.0 - re) * libm::log2(top.max(2.0))) as u32 + 16;
    }
    let wp = prec.raised(extra);
    let w = wp.working();
    let minus_s = -s.with_prec(w);
    let mut sum = Complex::zero(w);
    for k in 0..shift {
        let base = Complex::new(z0.re.add_prec(&Real::from_u64(k as u64, 64), false, w), z0.im.with_prec(w));
        sum = &sum + &zpow(&base, &minus_s, w)?;
    }
    let zt = Complex::new(z0.re.add_prec(&Real::from_u64(shift as u64 - 1, 64), false, w), z0.im.with_prec(w));
    let tail = hurwitz_asymptotic_value(s, &zt, &BigRational::one(), n, w)?;
    Ok((&sum + &tail).with_prec(prec.working()))
}

/// `zeta(s, z)` for `Re z > 0`, accurate to about `P` bits relative to `|z^-s|`.
pub fn hurwitz_zeta(s: &Complex, z: &Complex, prec: Precision) -> Result<Complex> {
    check_pole(s, prec)?;
    if !z.re.is_positive() {
        return Err(Error::invalid("hurwitz_zeta needs Re(z) > 0"));
    }
    let scale = zpow(&z.with_prec(64), &(-s.with_prec(64)), 64)?.abs();
    zeta_by_shift(s, z, &scale, prec)
}
