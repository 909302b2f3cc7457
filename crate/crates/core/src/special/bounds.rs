//! Remainder bounds for the asymptotic expansions, evaluated with a small upward bias.

use crate::exact::factorial;
use crate::mp::{binomial_upper_complex, exp, ln, pi, sin_cos, Complex, Real};

/// Working precision for bound arithmetic; results are inflated by `1 + 2^-40`.
pub(crate) const BOUND_BITS: u32 = 96;

fn inflate(x: Real) -> Real {
    let f = Real::one(BOUND_BITS).add_prec(&Real::one(BOUND_BITS).mul_pow2(-40), false, BOUND_BITS);
    x.abs().mul_prec(&f, BOUND_BITS).round_up_abs(64)
}

/// `zeta(j) <= 1 + 2^-j + 2^(1-j)/(j-1)` for `j >= 2`.
fn zeta_upper(j: usize) -> Real {
    let p = BOUND_BITS;
    let one = Real::one(p);
    let a = one.mul_pow2(-(j as i64));
    let b = one.mul_pow2(1 - j as i64).div_prec(&Real::from_u64(j as u64 - 1, p), p);
    one.add_prec(&a, false, p).add_prec(&b, false, p)
}

/// Upper bound on `max_{0<=x<=1} |B_j(x)|`: `1/2` for `j = 1`, `2 zeta(j) j!/(2 pi)^j` otherwise.
pub fn bernoulli_sup_bound(j: usize) -> Real {
    let p = BOUND_BITS;
    match j {
        0 => Real::one(p),
        1 => Real::one(p).mul_pow2(-1),
        _ => {
            let two_pi = pi(p).mul_pow2(1);
            let num = Real::from_bigint(&factorial(j), p).mul_prec(&zeta_upper(j), p).mul_pow2(1);
            inflate(num.div_prec(&two_pi.powi(j as i64), p))
        }
    }
}

/// `sec(arg(z)/2)` and `arg(z)` at bound precision.
fn half_angle_secant(z: &Complex) -> (Real, Real) {
    let p = BOUND_BITS;
    let theta = z.with_prec(p).arg();
    let (_, c) = sin_cos(&theta.mul_pow2(-1), p).expect("angle is bounded");
    (Real::one(p).div_prec(&c, p), theta)
}

/// `x^y` for `x > 0` and real `y`.
fn rpow(x: &Real, y: &Real) -> Real {
    let p = BOUND_BITS;
    if y.is_zero() {
        return Real::one(p);
    }
    let l = ln(x, p).expect("positive base");
    exp(&l.mul_prec(y, p), p).unwrap_or_else(|_| Real::zero(p))
}

/// Hurwitz remainder bound after `n` terms:
/// `2(n+2)/|s-1| |C(1-s, n+2)| M_{n+1} sec^{n+Re s+1}(arg z/2) / ((n+Re s)|z|^{n+Re s}) max(1, e^{Im s arg z})`,
/// with `M_{n+1}` from [`bernoulli_sup_bound`]. Requires `n + Re s > 0`.
pub fn hurwitz_remainder_bound(s: &Complex, z: &Complex, n: usize) -> Real {
    let p = BOUND_BITS;
    let s = s.with_prec(p);
    let one_minus_s = &Complex::one(p) - &s;
    let binom = binomial_upper_complex(&one_minus_s, n as u64 + 2, p).abs();
    if binom.is_zero() {
        return Real::zero(64);
    }
    let t = Real::from_u64(n as u64, p).add_prec(&s.re, false, p);
    let (sec, theta) = half_angle_secant(z);
    let sec_pow = rpow(&sec, &t.add_prec(&Real::one(p), false, p));
    let z_pow = rpow(&z.with_prec(p).abs(), &t);
    let im_factor = {
        let e = s.im.mul_prec(&theta, p);
        if e.is_positive() {
            exp(&e, p).unwrap_or_else(|_| Real::zero(p))
        } else {
            Real::one(p)
        }
    };
    let s_minus_1 = (&s - &Complex::one(p)).abs();
    let lead = Real::from_u64(2 * (n as u64 + 2), p).div_prec(&s_minus_1, p);
    let num = lead.mul_prec(&binom, p).mul_prec(&bernoulli_sup_bound(n + 1), p).mul_prec(&sec_pow, p);
    let den = t.mul_prec(&z_pow, p);
    inflate(num.div_prec(&den, p).mul_prec(&im_factor, p))
}

/// Digamma remainder bound after `n` terms: `2 M_{n+1} sec^{n+2}(arg z/2) / ((n+1)|z|^{n+1})`.
pub fn digamma_remainder_bound(z: &Complex, n: usize) -> Real {
    let p = BOUND_BITS;
    let (sec, _) = half_angle_secant(z);
    let num = bernoulli_sup_bound(n + 1).mul_pow2(1).mul_prec(&sec.powi(n as i64 + 2), p);
    let den = Real::from_u64(n as u64 + 1, p).mul_prec(&z.with_prec(p).abs().powi(n as i64 + 1), p);
    inflate(num.div_prec(&den, p))
}

/// Log-gamma remainder estimate after `n` terms: `2 M_{n+1} sec^{n+1}(arg z/2) / (n(n+1)|z|^n)`.
pub fn log_gamma_remainder_bound(z: &Complex, n: usize) -> Real {
    let p = BOUND_BITS;
    let (sec, _) = half_angle_secant(z);
    let num = bernoulli_sup_bound(n + 1).mul_pow2(1).mul_prec(&sec.powi(n as i64 + 1), p);
    let den = Real::from_u64((n * (n + 1)) as u64, p).mul_prec(&z.with_prec(p).abs().powi(n as i64), p);
    inflate(num.div_prec(&den, p))
}

/// Whether `|arg z| <= 3 pi / 4`, the sector where bounds are reported as rigorous.
pub fn within_rigorous_sector(z: &Complex) -> bool {
    let p = BOUND_BITS;
    let theta = z.with_prec(p).arg().abs();
    let limit = pi(p).mul_prec(&Real::from_u64(3, p), p).mul_pow2(-2);
    theta <= limit
}
