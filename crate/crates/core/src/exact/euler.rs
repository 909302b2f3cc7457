use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use num_rational::BigRational;
use num_traits::{One, Zero};
use spin::RwLock;

use super::{binomial, check_unit_interval, RationalPoly};
use crate::error::Result;

/// Coefficient lists of the Euler polynomials `E_n(x)`.
#[derive(Clone, Debug, Default)]
pub struct EulerPolyCache {
    polys: Vec<Arc<RationalPoly>>,
}

impl EulerPolyCache {
    pub fn new() -> Self {
        EulerPolyCache::default()
    }

    /// Solves `E_n(x) + E_n(x+1) = 2 x^n` degree by degree: `e_n = 1` and
    /// `e_i = -1/2 sum_{j>i} C(j, i) e_j`.
    pub fn poly(&mut self, n: usize) -> Arc<RationalPoly> {
        while self.polys.len() <= n {
            let d = self.polys.len();
            let mut e = vec![BigRational::zero(); d + 1];
            e[d] = BigRational::one();
            let half = BigRational::new(1.into(), 2.into());
            for i in (0..d).rev() {
                let mut acc = BigRational::zero();
                for (j, ej) in e.iter().enumerate().skip(i + 1) {
                    if !ej.is_zero() {
                        acc += ej * BigRational::from_integer(binomial(j, i));
                    }
                }
                e[i] = -(acc * &half);
            }
            self.polys.push(Arc::new(RationalPoly::new(e)));
        }
        self.polys[n].clone()
    }
}

static CACHE: RwLock<Option<EulerPolyCache>> = RwLock::new(None);

pub fn euler_poly_coeffs(n: usize) -> Arc<RationalPoly> {
    if let Some(c) = &*CACHE.read() {
        if let Some(p) = c.polys.get(n) {
            return p.clone();
        }
    }
    CACHE.write().get_or_insert_with(EulerPolyCache::new).poly(n)
}

/// `E_n(y)` for `0 <= y <= 1`.
pub fn euler_poly(n: usize, y: &BigRational) -> Result<BigRational> {
    check_unit_interval(y)?;
    Ok(euler_poly_coeffs(n).eval(y))
}
