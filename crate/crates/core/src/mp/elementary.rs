//! Elementary functions on [`Real`], computed in fixed point with explicit guard bits.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::{Integer, Roots};
use num_traits::{One, Zero};
use spin::RwLock;

use super::Real;
use crate::error::{Error, Result};

/// Fixed-point image `floor(x * 2^w)` (truncated toward zero on the magnitude).
pub(crate) fn to_fixed(x: &Real, w: u32) -> BigInt {
    let sh = x.exponent() + w as i64;
    let m = x.mantissa().clone();
    let v = if sh >= 0 { m << sh as u64 } else { m >> (-sh) as u64 };
    BigInt::from_biguint(if x.sign_negative() { Sign::Minus } else { Sign::Plus }, v)
}

pub(crate) fn from_fixed(v: &BigInt, w: u32, prec: u32) -> Real {
    Real::from_parts(v.sign() == Sign::Minus, v.magnitude().clone(), -(w as i64), prec)
}

fn fixed_one(w: u32) -> BigInt {
    BigInt::one() << w
}

/// Fixed-point product, truncated toward zero so alternating series terms reach zero.
fn mulw(a: &BigInt, b: &BigInt, w: u32) -> BigInt {
    let p = a * b;
    if p.sign() == Sign::Minus {
        -((-p) >> w)
    } else {
        p >> w
    }
}

type ConstCache = RwLock<Option<(u32, BigInt)>>;

static LN2: ConstCache = RwLock::new(None);
static PI: ConstCache = RwLock::new(None);

fn cached(cache: &ConstCache, w: u32, compute: fn(u32) -> BigInt) -> BigInt {
    if let Some((cw, v)) = &*cache.read() {
        if *cw >= w {
            return v >> (cw - w);
        }
    }
    let mut slot = cache.write();
    if let Some((cw, v)) = &*slot {
        if *cw >= w {
            return v >> (cw - w);
        }
    }
    // Grow geometrically so repeated precision bumps do not recompute each time.
    let cw = slot.as_ref().map_or(w, |(cw, _)| w.max(cw + cw / 2));
    let v = compute(cw);
    let out = &v >> (cw - w);
    *slot = Some((cw, v));
    out
}

fn ln2_series(w: u32) -> BigInt {
    // ln 2 = 2 atanh(1/3)
    let g = w + 16;
    let mut p = fixed_one(g) / 3u32;
    let mut sum = BigInt::zero();
    let mut k = 0u64;
    while !p.is_zero() {
        sum += &p / (2 * k + 1);
        p /= 9u32;
        k += 1;
    }
    (sum << 1u32) >> 16u32
}

fn atan_inv(n: u32, g: u32) -> BigInt {
    let mut p = fixed_one(g) / n;
    let n2 = n * n;
    let mut sum = BigInt::zero();
    let mut k = 0u64;
    while !p.is_zero() {
        let t = &p / (2 * k + 1);
        if k % 2 == 0 {
            sum += t;
        } else {
            sum -= t;
        }
        p /= n2;
        k += 1;
    }
    sum
}

fn pi_series(w: u32) -> BigInt {
    // Machin: pi = 16 atan(1/5) - 4 atan(1/239)
    let g = w + 16;
    let v = (atan_inv(5, g) << 4u32) - (atan_inv(239, g) << 2u32);
    v >> 16u32
}

pub(crate) fn ln2_fixed(w: u32) -> BigInt {
    cached(&LN2, w, ln2_series)
}

pub(crate) fn pi_fixed(w: u32) -> BigInt {
    cached(&PI, w, pi_series)
}

pub fn ln2(prec: u32) -> Real {
    from_fixed(&ln2_fixed(prec + 8), prec + 8, prec)
}

pub fn pi(prec: u32) -> Real {
    from_fixed(&pi_fixed(prec + 8), prec + 8, prec)
}

fn round_div(a: &BigInt, b: &BigInt) -> BigInt {
    ((a << 1u32) + b).div_floor(&(b << 1u32))
}

fn bits_of(v: &BigInt) -> u32 {
    v.bits() as u32
}

/// `e^x` rounded to `prec` bits.
pub fn exp(x: &Real, prec: u32) -> Result<Real> {
    if x.is_zero() {
        return Ok(Real::one(prec));
    }
    let me = x.magnitude_exp().unwrap_or(0);
    if me >= 39 {
        return Err(Error::Overflow);
    }
    if me < -(prec as i64) - 8 {
        return Ok(Real::one(prec + 8).add_prec(x, false, prec));
    }
    let s = (prec.sqrt() / 2).max(2);
    let w = prec + 32 + s + (me + 1).max(0) as u32;
    let xf = to_fixed(x, w);
    let l2 = ln2_fixed(w);
    let k = round_div(&xf, &l2);
    let r = (xf - &k * &l2) / (BigInt::one() << s);
    let one = fixed_one(w);
    let mut sum = one.clone();
    let mut term = one;
    let mut j = 1u64;
    loop {
        term = mulw(&term, &r, w) / j;
        if term.is_zero() {
            break;
        }
        sum += &term;
        j += 1;
    }
    for _ in 0..s {
        sum = mulw(&sum, &sum, w);
    }
    let k: i64 = i64::try_from(&k).map_err(|_| Error::Overflow)?;
    Real::from_parts(false, sum.magnitude().clone(), k - w as i64, prec).check_range()
}

/// Natural logarithm of a positive number.
pub fn ln(x: &Real, prec: u32) -> Result<Real> {
    if !x.is_positive() {
        return Err(Error::invalid("logarithm of a non-positive number"));
    }
    let mant = x.mantissa();
    let t = mant.bits() as u32;
    let mut e = x.exponent() + t as i64;
    // f = mant / 2^t in [1/2, 1); move it into [1/sqrt2, sqrt2)
    let doubled = mant * mant < (BigUint::one() << (2 * t - 1));
    if doubled {
        e -= 1;
    }
    let ebits = 64 - e.unsigned_abs().leading_zeros();
    let mut w = prec + 32 + ebits;
    if e == 0 {
        w = w.max(t + 1);
    }
    let mut extended = false;
    let (f, d) = loop {
        let sh = w as i64 - t as i64 + doubled as i64;
        let m = BigInt::from(mant.clone());
        let f = if sh >= 0 { m << sh as u64 } else { m >> (-sh) as u64 };
        let d = &f - fixed_one(w);
        if e == 0 && !extended && !d.is_zero() {
            let lz = w.saturating_sub(bits_of(&d));
            if lz > 16 {
                w += lz;
                extended = true;
                continue;
            }
        }
        break (f, d);
    };
    if e == 0 && d.is_zero() {
        return Ok(Real::zero(prec));
    }
    // ln f = 2 atanh((f-1)/(f+1))
    let one = fixed_one(w);
    let u = (&d << w) / (&f + &one);
    let u2 = mulw(&u, &u, w);
    let mut sum = BigInt::zero();
    let mut p = u;
    let mut k = 0u64;
    while !p.is_zero() {
        sum += &p / (2 * k + 1);
        p = mulw(&p, &u2, w);
        k += 1;
    }
    let total = (sum << 1u32) + ln2_fixed(w) * BigInt::from(e);
    Ok(from_fixed(&total, w, prec))
}

/// `(sin x, cos x)` rounded to `prec` bits.
pub fn sin_cos(x: &Real, prec: u32) -> Result<(Real, Real)> {
    if x.is_zero() {
        return Ok((Real::zero(prec), Real::one(prec)));
    }
    let me = x.magnitude_exp().unwrap_or(0);
    if me > 4096 {
        return Err(Error::Overflow);
    }
    let mut w = prec + 32 + (me + 2).max(0) as u32;
    let mut extended = false;
    let (k, r) = loop {
        let xf = to_fixed(x, w);
        let half_pi = pi_fixed(w + 1) >> 2u32;
        let k = round_div(&xf, &half_pi);
        let r = xf - &k * &half_pi;
        if !extended {
            let lz = w.saturating_sub(bits_of(&r));
            if lz > 16 {
                w += lz;
                extended = true;
                continue;
            }
        }
        break (k, r);
    };
    let r2 = mulw(&r, &r, w);
    let mut s = r.clone();
    let mut t = r;
    let mut j = 1u64;
    loop {
        t = -(mulw(&t, &r2, w) / ((2 * j) * (2 * j + 1)));
        if t.is_zero() {
            break;
        }
        s += &t;
        j += 1;
    }
    let one = fixed_one(w);
    let mut c = one.clone();
    let mut t = one;
    let mut j = 1u64;
    loop {
        t = -(mulw(&t, &r2, w) / ((2 * j - 1) * (2 * j)));
        if t.is_zero() {
            break;
        }
        c += &t;
        j += 1;
    }
    let q = k.mod_floor(&BigInt::from(4)).try_into().unwrap_or(0u8);
    let (s, c) = match q {
        0 => (s, c),
        1 => (c, -s),
        2 => (-s, -c),
        _ => (-c, s),
    };
    Ok((from_fixed(&s, w, prec), from_fixed(&c, w, prec)))
}

/// `atan t` for `0 <= t <= 1`.
fn atan_unit(t: &Real, prec: u32) -> Real {
    if t.is_zero() {
        return Real::zero(prec);
    }
    let me = t.magnitude_exp().unwrap_or(0);
    let w = prec + 32 + (-me).max(0) as u32;
    let one = fixed_one(w);
    let mut v = to_fixed(t, w);
    // Two half-angle reductions: atan t = 2 atan(t / (1 + sqrt(1 + t^2)))
    for _ in 0..2 {
        let v2 = mulw(&v, &v, w);
        let root = ((&one + v2) << w).sqrt();
        v = (&v << w) / (&one + root);
    }
    let v2 = mulw(&v, &v, w);
    let mut sum = v.clone();
    let mut p = v;
    let mut k = 1u64;
    loop {
        p = mulw(&p, &v2, w);
        if p.is_zero() {
            break;
        }
        let term = &p / (2 * k + 1);
        if k % 2 == 1 {
            sum -= term;
        } else {
            sum += term;
        }
        k += 1;
    }
    from_fixed(&(sum << 2u32), w, prec)
}

/// Four-quadrant arctangent with result in `(-pi, pi]`; `atan2(0, 0) = 0`.
pub fn atan2(y: &Real, x: &Real, prec: u32) -> Real {
    let work = prec + 8;
    if y.is_zero() {
        return if x.is_negative() { pi(prec) } else { Real::zero(prec) };
    }
    if x.is_zero() {
        let h = pi(prec + 1).mul_pow2(-1).with_prec(prec);
        return if y.is_negative() { -h } else { h };
    }
    let a = if y.cmp_abs(x) != core::cmp::Ordering::Greater {
        atan_unit(&y.abs().div_prec(&x.abs(), work + 8), work)
    } else {
        let inner = atan_unit(&x.abs().div_prec(&y.abs(), work + 8), work);
        pi(work).mul_pow2(-1).add_prec(&inner, true, work)
    };
    let a = if x.is_negative() { pi(work).add_prec(&a, true, work) } else { a };
    let a = a.with_prec(prec);
    if y.is_negative() {
        -a
    } else {
        a
    }
}

pub fn atan(x: &Real, prec: u32) -> Real {
    atan2(x, &Real::one(prec), prec)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(v: f64) -> Real {
        Real::from_f64(v, 53).unwrap()
    }

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * b.abs().max(1e-300)
    }

    #[test]
    fn constants() {
        assert_eq!(pi(53).to_f64(), core::f64::consts::PI);
        assert_eq!(ln2(53).to_f64(), core::f64::consts::LN_2);
        // a wide request after a narrow one must reuse and extend the cache consistently
        let p1 = pi(300);
        let p2 = pi(2000).with_prec(300);
        assert_eq!(p1, p2);
    }

    #[test]
    fn exp_ln_against_libm() {
        for v in [0.5, -3.25, 10.0, 1e-7, -700.0, 123.456] {
            assert!(close(exp(&r(v), 53).unwrap().to_f64(), libm::exp(v), 4e-16), "exp {v}");
        }
        for v in [0.5, 3.25, 1e-7, 1e300, 1.0000001, 0.9999999] {
            assert!(close(ln(&r(v), 53).unwrap().to_f64(), libm::log(v), 4e-16), "ln {v}");
        }
        assert!(ln(&Real::one(64), 64).unwrap().is_zero());
        assert!(ln(&r(-1.0), 64).is_err());
    }

    #[test]
    fn ln_near_one_keeps_relative_accuracy() {
        let x = Real::one(200).add_prec(&Real::one(200).mul_pow2(-150), false, 200);
        let l = ln(&x, 64).unwrap();
        // ln(1 + e) = e - e^2/2 + ...; e = 2^-150
        let expect = Real::one(64).mul_pow2(-150);
        let diff = (&l - &expect).abs();
        assert!(diff < Real::one(64).mul_pow2(-150 - 60));
    }

    #[test]
    fn trig_against_libm() {
        for v in [0.1, 1.0, -2.5, 3.25, 100.0, -1e-9, 1e5] {
            let (s, c) = sin_cos(&r(v), 53).unwrap();
            assert!((s.to_f64() - libm::sin(v)).abs() < 1e-15, "sin {v}");
            assert!((c.to_f64() - libm::cos(v)).abs() < 1e-15, "cos {v}");
        }
        for (y, x) in [(1.0, 1.0), (1.0, -1.0), (-1.0, -1.0), (-2.0, 0.5), (0.0, -1.0), (1e-20, 1.0), (3.0, 0.0)] {
            assert!(close(atan2(&r(y), &r(x), 53).to_f64(), libm::atan2(y, x), 4e-16), "atan2 {y} {x}");
        }
    }

    #[test]
    fn sin_near_pi_multiple() {
        // sin of the 53-bit pi is the representation error, about 1.2246e-16
        let (s, _) = sin_cos(&r(core::f64::consts::PI), 64).unwrap();
        assert!(close(s.to_f64(), 1.2246467991473532e-16, 1e-15));
    }
}
