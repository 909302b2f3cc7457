use alloc::sync::Arc;

use num_rational::BigRational;
use num_traits::One;
use spin::RwLock;

use super::{
    bernoulli_real, check_slit, digamma_remainder_bound, log_gamma_remainder_bound, sector_kind, BoundKind,
    BoundedValue,
};
use crate::error::{Error, Result};
use crate::exact::check_unit_interval;
use crate::mp::{pi, Complex, Precision, Real};
use crate::weniger::{evaluate_factorial_series, SeriesOptions, StoppingRule, WenigerStream};

/// `ln z - sum_{k=1}^n (-1)^k B_k(h) / (k z^k)` at `w` bits.
fn digamma_value(z: &Complex, h: &BigRational, n: usize, w: u32) -> Result<Complex> {
    let z = z.with_prec(w);
    let mut acc = z.ln()?;
    let zr = z.recip();
    let mut zp = Complex::one(w);
    for k in 1..=n {
        zp = &zp * &zr;
        let b = bernoulli_real(k, h, w);
        if b.is_zero() {
            continue;
        }
        let t = zp.scale(&b.div_prec(&Real::from_u64(k as u64, 64), w));
        acc = if k % 2 == 0 { &acc - &t } else { &acc + &t };
    }
    Ok(acc)
}

/// `psi(z + h)` from the first `n` asymptotic terms, with the remainder bound.
pub fn digamma_asymptotic(z: &Complex, h: &BigRational, n: usize, prec: Precision) -> Result<BoundedValue> {
    check_slit(z)?;
    check_unit_interval(h)?;
    Ok(BoundedValue {
        value: digamma_value(z, h, n, prec.working())?,
        rigorous_bound: digamma_remainder_bound(z, n),
        bound_kind: sector_kind(z),
        terms: n,
    })
}

/// Like [`digamma_asymptotic`], choosing the smallest `n <= n_max` whose bound is at most `tol`.
pub fn digamma_asymptotic_to(
    z: &Complex,
    h: &BigRational,
    tol: &Real,
    n_max: usize,
    prec: Precision,
) -> Result<BoundedValue> {
    check_slit(z)?;
    check_unit_interval(h)?;
    (0..=n_max)
        .find(|&n| digamma_remainder_bound(z, n) <= *tol)
        .map(|n| digamma_asymptotic(z, h, n, prec))
        .unwrap_or(Err(Error::PrecisionExhausted { family: "digamma", n_max }))
}

/// `psi(z + 1 - y)` from the inverse factorial expansion split after `a` power terms.
pub fn digamma_factorial(
    z: &Complex,
    y: &BigRational,
    a: usize,
    budget: usize,
    prec: Precision,
) -> Result<BoundedValue> {
    if !z.re.is_positive() {
        return Err(Error::invalid("factorial form needs Re(z) > 0"));
    }
    check_unit_interval(y)?;
    let w = prec.working();
    let z = z.with_prec(w);
    let log_z = z.ln()?;
    let zr = z.recip();
    let mut head = log_z.clone();
    let mut zp = Complex::one(w);
    for k in 1..=a {
        zp = &zp * &zr;
        let b = bernoulli_real(k, y, w).div_prec(&Real::from_u64(k as u64, 64), w);
        head = &head - &zp.scale(&b);
    }
    // a_l = -B_{l+a}(y) / (l+a)
    let source = |l: usize| -> Result<Complex> {
        let j = l + a;
        let b = bernoulli_real(j, y, w).div_prec(&Real::from_u64(j as u64, 64), w);
        Ok(Complex::from_real(-b))
    };
    let stream = WenigerStream::new(Complex::zero(w), 0, source);
    let mut reference = log_z.with_prec(64).abs();
    if reference < Real::one(64) {
        reference = Real::one(64);
    }
    let za = z.with_prec(64).abs().powi(a as i64);
    let opts =
        SeriesOptions::new(prec, StoppingRule::adaptive(budget).with_reference(reference.mul_prec(&za, 64)), "digamma");
    let series = evaluate_factorial_series(stream, &z, &opts)?;
    let zma = zr.powi(a as i64);
    let scale = zma.with_prec(64).abs();
    Ok(BoundedValue {
        value: &head + &(&zma * &series.value),
        rigorous_bound: series.est_error.mul_prec(&scale, 64),
        bound_kind: BoundKind::Heuristic,
        terms: series.terms_used,
    })
}

/// `ln Gamma(z + h)` from the Stirling expansion truncated after `n >= 2` terms.
///
/// The bound has the shape of the digamma remainder integrated once and is reported
/// as heuristic.
pub fn log_gamma_asymptotic(z: &Complex, h: &BigRational, n: usize, prec: Precision) -> Result<BoundedValue> {
    check_slit(z)?;
    check_unit_interval(h)?;
    if n < 2 {
        return Err(Error::invalid("log-gamma expansion needs n >= 2"));
    }
    let w = prec.working();
    let z = z.with_prec(w);
    let log_z = z.ln()?;
    let shift = Complex::from_rational(&(h - BigRational::new(1.into(), 2.into())), w);
    let mut acc = &(&(&z + &shift) * &log_z) - &z;
    let half_log_2pi = pi(w).mul_pow2(1).with_prec(w);
    let half_log_2pi = crate::mp::ln(&half_log_2pi, w)?.mul_pow2(-1);
    acc = &acc + &Complex::from_real(half_log_2pi);
    let zr = z.recip();
    let mut zp = Complex::one(w);
    for k in 2..=n {
        zp = &zp * &zr;
        let b = bernoulli_real(k, h, w);
        if b.is_zero() {
            continue;
        }
        let t = zp.scale(&b.div_prec(&Real::from_u64((k * (k - 1)) as u64, 64), w));
        acc = if k % 2 == 0 { &acc + &t } else { &acc - &t };
    }
    Ok(BoundedValue {
        value: acc,
        rigorous_bound: log_gamma_remainder_bound(&z, n),
        bound_kind: BoundKind::Heuristic,
        terms: n,
    })
}

static GAMMA: RwLock<Option<(u32, Arc<Real>)>> = RwLock::new(None);

/// Euler's constant `gamma = H_N - psi(N + 1)` with `N` large enough for the digamma bound.
pub fn euler_gamma(prec: Precision) -> Real {
    let w = prec.working();
    if let Some((bits, g)) = GAMMA.read().as_ref() {
        if *bits >= w {
            return g.with_prec(w);
        }
    }
    let g = compute_gamma(w);
    let mut slot = GAMMA.write();
    if !slot.as_ref().is_some_and(|(bits, _)| *bits >= w) {
        *slot = Some((w, Arc::new(g.clone())));
    }
    g
}

fn compute_gamma(w: u32) -> Real {
    let n = 8usize.max(w.div_ceil(4) as usize);
    let tol = Real::one(64).mul_pow2(-(w as i64) - 8);
    let ok = |m: u64| digamma_remainder_bound(&Complex::from_i64(m as i64, 64), n) <= tol;
    let mut big = 10u64;
    while !ok(big) {
        big *= 2;
    }
    let mut lo = big / 2;
    while big - lo > 1 {
        let mid = lo + (big - lo) / 2;
        if ok(mid) {
            big = mid;
        } else {
            lo = mid;
        }
    }
    let wp = w + 16;
    let mut h = Real::zero(wp);
    for k in 1..=big {
        h = h.add_prec(&Real::one(wp).div_prec(&Real::from_u64(k, 64), wp), false, wp);
    }
    let psi = digamma_value(&Complex::from_i64(big as i64, wp), &BigRational::one(), n, wp).expect("positive argument");
    h.add_prec(&psi.re, true, wp).with_prec(w)
}

/// `psi(z)` for `Re z > 0` via upward recurrence and the asymptotic form.
pub fn digamma(z: &Complex, prec: Precision) -> Result<Complex> {
    if !z.re.is_positive() {
        return Err(Error::invalid("digamma needs Re(z) > 0"));
    }
    let bits = prec.bits();
    let n = 8usize.max(bits.div_ceil(4) as usize);
    let tol = Real::one(64).mul_pow2(-(bits as i64) - 8);
    let shifted =
        |m: u64| Complex::new(z.re.with_prec(64).add_prec(&Real::from_u64(m, 64), false, 64), z.im.with_prec(64));
    let mut shift = 0u64;
    while digamma_remainder_bound(&shifted(shift), n) > tol {
        shift = if shift == 0 { 8 } else { shift * 2 };
    }
    let wp = prec.raised(8 + (64 - shift.leading_zeros()));
    let w = wp.working();
    let z = z.with_prec(w);
    let mut acc = Complex::zero(w);
    for k in 0..shift {
        let t = Complex::new(z.re.add_prec(&Real::from_u64(k, 64), false, w), z.im.clone());
        acc = &acc - &t.recip();
    }
    let top = Complex::new(z.re.add_prec(&Real::from_u64(shift, 64), false, w), z.im.clone());
    let tail = digamma_value(&top, &BigRational::from_integer(0.into()), n, w)?;
    Ok((&acc + &tail).with_prec(prec.working()))
}
