use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use spin::RwLock;

use super::{binomial, check_unit_interval, RationalPoly};
use crate::error::Result;

/// Bernoulli numbers `B_n` (with `B_1 = -1/2`) and the coefficient lists of `B_n(x)`.
#[derive(Clone, Debug, Default)]
pub struct BernoulliCache {
    numbers: Vec<BigRational>,
    polys: Vec<Arc<RationalPoly>>,
}

impl BernoulliCache {
    pub fn new() -> Self {
        BernoulliCache::default()
    }

    /// Tabulates `B_0 ..= B_n` from `sum_{k=0}^{n} C(n+1, k) B_k = 0`.
    pub fn ensure_numbers(&mut self, n: usize) {
        if self.numbers.is_empty() {
            self.numbers.push(BigRational::one());
        }
        while self.numbers.len() <= n {
            let m = self.numbers.len();
            let mut acc = BigRational::zero();
            for (k, b) in self.numbers.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                acc += b * BigRational::from_integer(binomial(m + 1, k));
            }
            let bm = -acc / BigRational::from_integer(BigInt::from(m + 1));
            self.numbers.push(bm);
        }
    }

    pub fn number(&mut self, n: usize) -> BigRational {
        self.ensure_numbers(n);
        self.numbers[n].clone()
    }

    /// `B_n(x) = sum_k C(n, k) B_k x^(n-k)`, ascending powers of `x`.
    pub fn poly(&mut self, n: usize) -> Arc<RationalPoly> {
        self.ensure_numbers(n);
        while self.polys.len() <= n {
            let d = self.polys.len();
            let mut coeffs = vec![BigRational::zero(); d + 1];
            for k in 0..=d {
                coeffs[d - k] = &self.numbers[k] * BigRational::from_integer(binomial(d, k));
            }
            self.polys.push(Arc::new(RationalPoly::new(coeffs)));
        }
        self.polys[n].clone()
    }
}

static CACHE: RwLock<Option<BernoulliCache>> = RwLock::new(None);

fn with_cache<T>(ready: impl Fn(&BernoulliCache) -> Option<T>, fill: impl FnOnce(&mut BernoulliCache) -> T) -> T {
    if let Some(c) = &*CACHE.read() {
        if let Some(v) = ready(c) {
            return v;
        }
    }
    let mut guard = CACHE.write();
    fill(guard.get_or_insert_with(BernoulliCache::new))
}

/// Exact Bernoulli number `B_n`, `B_1 = -1/2`.
pub fn bernoulli_number(n: usize) -> BigRational {
    with_cache(|c| c.numbers.get(n).cloned(), |c| c.number(n))
}

/// Coefficients of `B_n(x)`.
pub fn bernoulli_poly_coeffs(n: usize) -> Arc<RationalPoly> {
    with_cache(|c| c.polys.get(n).cloned(), |c| c.poly(n))
}

/// `B_n(y)` for `0 <= y <= 1`.
pub fn bernoulli_poly(n: usize, y: &BigRational) -> Result<BigRational> {
    check_unit_interval(y)?;
    Ok(bernoulli_poly_unchecked(n, y))
}

pub(crate) fn bernoulli_poly_unchecked(n: usize, y: &BigRational) -> BigRational {
    if y.is_zero() {
        return bernoulli_number(n);
    }
    bernoulli_poly_coeffs(n).eval(y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn numbers() {
        assert_eq!(bernoulli_number(0), rat(1, 1));
        assert_eq!(bernoulli_number(1), rat(-1, 2));
        assert_eq!(bernoulli_number(2), rat(1, 6));
        assert_eq!(bernoulli_number(12), rat(-691, 2730));
        for j in 1..40 {
            assert!(bernoulli_number(2 * j + 1).is_zero());
        }
    }

    #[test]
    fn polynomials() {
        let y = rat(3, 10);
        assert_eq!(bernoulli_poly(1, &y).unwrap(), &y - rat(1, 2));
        assert_eq!(bernoulli_poly(2, &rat(1, 2)).unwrap(), rat(-1, 12));
        for k in 0..15 {
            assert_eq!(bernoulli_poly(k, &rat(0, 1)).unwrap(), bernoulli_number(k));
        }
        assert!(bernoulli_poly(2, &rat(3, 2)).is_err());
        assert!(bernoulli_poly(2, &rat(-1, 2)).is_err());
    }

    #[test]
    fn reflection() {
        for k in 0..=20usize {
            for y in [rat(0, 1), rat(1, 7), rat(1, 2), rat(6, 7), rat(1, 1)] {
                let lhs = bernoulli_poly(k, &(rat(1, 1) - &y)).unwrap();
                let lhs = if k % 2 == 1 { -lhs } else { lhs };
                assert_eq!(lhs, bernoulli_poly(k, &y).unwrap(), "k={k}");
            }
        }
    }

    #[test]
    fn difference_equation() {
        // B_n(x+1) - B_n(x) = n x^(n-1), checked through the coefficient lists
        for n in 1..12usize {
            let p = bernoulli_poly_coeffs(n);
            for x in [rat(0, 1), rat(2, 5), rat(-3, 4)] {
                let d = p.eval(&(&x + rat(1, 1))) - p.eval(&x);
                let expect = BigRational::from_integer(BigInt::from(n)) * super::super::rat_pow(&x, n - 1);
                assert_eq!(d, expect);
            }
        }
    }
}
