use alloc::vec::Vec;

use num_bigint::BigInt;

use super::{Coefficient, FactorialSeriesCoefficients, PowerSeriesCoefficients, TransformVariant};
use crate::error::Result;
use crate::exact::stirling_row;

/// Pull-based transform: yields `b_1, b_2, ...`, asking `source(l)` for `a_l` only when
/// first needed. `b_k = sum_{l=1}^{k-shift} |S_k(l + shift)| a_l`, which equals
/// `(-1)^k sum_l (-1)^(l+shift) S_k(l+shift) a_l`.
pub struct WenigerStream<T, F> {
    source: F,
    cache: Vec<T>,
    zero: T,
    shift: usize,
    k: usize,
    failed: bool,
}

impl<T, F> WenigerStream<T, F>
where
    T: Coefficient,
    F: FnMut(usize) -> Result<T>,
{
    pub fn new(zero: T, shift: usize, source: F) -> Self {
        WenigerStream { source, cache: Vec::new(), zero, shift, k: 0, failed: false }
    }

    /// Power coefficients pulled so far, `a_1` first.
    pub fn pulled(&self) -> &[T] {
        &self.cache
    }

    fn a(&mut self, l: usize) -> Result<&T> {
        while self.cache.len() < l {
            let next = (self.source)(self.cache.len() + 1)?;
            self.cache.push(next);
        }
        Ok(&self.cache[l - 1])
    }
}

impl<T, F> Iterator for WenigerStream<T, F>
where
    T: Coefficient,
    F: FnMut(usize) -> Result<T>,
{
    type Item = Result<T>;

    fn next(&mut self) -> Option<Result<T>> {
        if self.failed {
            return None;
        }
        self.k += 1;
        let k = self.k;
        if k <= self.shift {
            return Some(Ok(self.zero.clone()));
        }
        let row = stirling_row(k);
        let shift = self.shift;
        let mut acc = self.zero.clone();
        for l in 1..=k - shift {
            let a = match self.a(l) {
                Ok(a) => a,
                Err(e) => {
                    self.failed = true;
                    return Some(Err(e));
                }
            };
            if a.is_zero() {
                continue;
            }
            let s = BigInt::from(row[l + shift].magnitude().clone());
            acc = acc.add(&a.mul_int(&s));
        }
        Some(Ok(acc))
    }
}

fn collect<T: Coefficient>(
    a: &PowerSeriesCoefficients<T>,
    shift: usize,
    k_max: usize,
    variant: TransformVariant,
) -> FactorialSeriesCoefficients<T> {
    let zero = a.terms()[0].zero_like();
    let stream = WenigerStream::new(zero, shift, |l| Ok(a.get(l)));
    let terms = stream.take(k_max).map(|b| b.expect("finite source cannot fail")).collect();
    FactorialSeriesCoefficients { terms, shift, variant }
}

/// `b_1, ..., b_K` with `b_k = (-1)^k sum_{l=1}^{min(k,L)} (-1)^l S_k(l) a_l`.
pub fn weniger_transform<T: Coefficient>(
    a: &PowerSeriesCoefficients<T>,
    k_max: usize,
) -> FactorialSeriesCoefficients<T> {
    collect(a, 0, k_max, TransformVariant::Plain)
}

/// Transform with Stirling column offset `shift`: `b_k` uses `S_k(l + shift)`.
pub fn weniger_transform_shifted<T: Coefficient>(
    a: &PowerSeriesCoefficients<T>,
    shift: usize,
    k_max: usize,
) -> FactorialSeriesCoefficients<T> {
    let variant = if shift == 0 { TransformVariant::Plain } else { TransformVariant::ShiftedIndex };
    collect(a, shift, k_max, variant)
}
