//! Exact integer and rational kernels: Stirling numbers, Bernoulli and Euler
//! polynomials, binomials and double factorials. Nothing here rounds.

mod bernoulli;
mod euler;
mod poly;
mod stirling;

pub(crate) use bernoulli::bernoulli_poly_unchecked;
pub use bernoulli::{bernoulli_number, bernoulli_poly, bernoulli_poly_coeffs, BernoulliCache};
pub use euler::{euler_poly, euler_poly_coeffs, EulerPolyCache};
pub use num_rational::BigRational;
pub use poly::RationalPoly;
pub use stirling::{stirling_first, stirling_row, StirlingTable};

use alloc::format;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// `p/q` as a reduced rational. Panics when `q = 0`.
pub fn rat(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

pub fn rat_int(v: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(v.into())
}

pub fn rat_pow(x: &BigRational, n: usize) -> BigRational {
    num_traits::pow(x.clone(), n)
}

pub(crate) fn check_unit_interval(y: &BigRational) -> Result<()> {
    if y.is_negative() || *y > BigRational::one() {
        return Err(Error::invalid(format!("polynomial argument {y} lies outside [0, 1]")));
    }
    Ok(())
}

/// Binomial coefficient `C(n, k)` for non-negative integers, zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for j in 0..k {
        acc *= n - j;
        acc /= j + 1;
    }
    acc
}

/// Generalized binomial `z (z-1) ... (z-k+1) / k!` for rational `z`.
pub fn binomial_rational(z: &BigRational, k: usize) -> BigRational {
    let mut num = BigRational::one();
    for j in 0..k {
        num *= z - rat_int(j);
        if num.is_zero() {
            return num;
        }
    }
    num / rat_int(factorial(k))
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, j| acc * j)
}

/// `n!!` extended to `(-1)!! = 1` and `(-3)!! = -1` via `n!! = (n+2)!!/(n+2)`.
pub fn double_factorial_ext(n: i64) -> Result<BigInt> {
    match n {
        -1 | 0 => Ok(BigInt::one()),
        -3 => Ok(-BigInt::one()),
        n if n < 0 => Err(Error::invalid(format!("double factorial undefined for {n}"))),
        n => {
            let mut acc = BigInt::one();
            let mut j = n;
            while j > 1 {
                acc *= j;
                j -= 2;
            }
            Ok(acc)
        }
    }
}

/// `floor(x)` and the fractional part `x - floor(x)` in `[0, 1)`.
pub fn floor_fract(x: &BigRational) -> (BigInt, BigRational) {
    let fl = x.numer().div_floor(x.denom());
    let fr = x - rat_int(fl.clone());
    (fl, fr)
}

/// Parses `123`, `-4.5`, `2.5e-3`, `7/3` or `-1/2` exactly.
pub fn parse_decimal(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::invalid(format!("cannot parse `{s}` as a real number"));
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(p, q));
    }
    let (mant, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (neg, mant) = match mant.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mant.strip_prefix('+').unwrap_or(mant)),
    };
    let (int, frac) = mant.split_once('.').unwrap_or((mant, ""));
    if int.is_empty() && frac.is_empty() {
        return Err(bad());
    }
    if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits: BigInt = format!("{int}{frac}").parse().map_err(|_| bad())?;
    let scale = exp as i64 - frac.len() as i64;
    let ten = BigInt::from(10);
    let v = if scale >= 0 {
        rat_int(digits * num_traits::pow(ten, scale as usize))
    } else {
        BigRational::new(digits, num_traits::pow(ten, (-scale) as usize))
    };
    Ok(if neg { -v } else { v })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn double_factorials() {
        assert_eq!(double_factorial_ext(5).unwrap(), BigInt::from(15));
        assert_eq!(double_factorial_ext(6).unwrap(), BigInt::from(48));
        assert_eq!(double_factorial_ext(-1).unwrap(), BigInt::from(1));
        assert_eq!(double_factorial_ext(-3).unwrap(), BigInt::from(-1));
        assert!(double_factorial_ext(-5).is_err());
        // the extension obeys n!! = (n+2)!!/(n+2)
        for n in [-3i64, -1, 1, 3] {
            let lhs = double_factorial_ext(n).unwrap() * (n + 2);
            assert_eq!(lhs, double_factorial_ext(n + 2).unwrap());
        }
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(3, 5), BigInt::zero());
        assert_eq!(binomial_rational(&rat(3, 2), 2), rat(3, 8));
        assert_eq!(binomial_rational(&rat(3, 1), 5), rat(0, 1));
        assert_eq!(binomial_rational(&rat(-1, 1), 4), rat(1, 1));
    }

    #[test]
    fn parsing() {
        assert_eq!(parse_decimal("1000.5").unwrap(), rat(2001, 2));
        assert_eq!(parse_decimal("-2.5e-3").unwrap(), rat(-1, 400));
        assert_eq!(parse_decimal("7/3").unwrap(), rat(7, 3));
        assert_eq!(parse_decimal("+.25").unwrap(), rat(1, 4));
        assert_eq!(parse_decimal("3E2").unwrap(), rat(300, 1));
        for bad in ["", "abc", "1/0", "1.2.3", "--1", "e5"] {
            assert!(parse_decimal(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn floor_and_fraction() {
        assert_eq!(floor_fract(&rat(7, 2)), (BigInt::from(3), rat(1, 2)));
        assert_eq!(floor_fract(&rat(-7, 2)), (BigInt::from(-4), rat(1, 2)));
        assert_eq!(floor_fract(&rat(4, 1)), (BigInt::from(4), rat(0, 1)));
    }

    #[test]
    fn rising_factorial_convention() {
        // (z)_k = (-1)^k sum_l (-1)^l S_k(l) z^l, checked at z = 5/3
        let z = rat(5, 3);
        for k in 1..=12usize {
            let rising = (0..k).fold(rat(1, 1), |acc, j| acc * (&z + rat_int(j)));
            let mut s = rat(0, 1);
            for l in 1..=k {
                let term = rat_int(stirling_first(k, l)) * rat_pow(&z, l);
                s += if (k + l) % 2 == 0 { term } else { -term };
            }
            assert_eq!(rising, s);
        }
    }
}
