//! Ground truth for tests and reports: literal summation and the classical polynomial.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::{bernoulli_number, binomial, floor_fract, rat_int};
use crate::faulhaber::{power_sum, Exponent, SumQuery};
use crate::mp::{complex_pow, Complex, Precision, Real};

fn guarded(prec: Precision, n: u64) -> Precision {
    prec.raised(64 - n.max(1).leading_zeros())
}

/// `sum_{k=1}^n k^m` term by term, with `ceil(log2 n)` extra bits.
pub fn direct_sum(m: &Complex, n: u64, prec: Precision) -> Result<Complex> {
    if n == 0 {
        return Err(Error::invalid("direct_sum needs n >= 1"));
    }
    let w = guarded(prec, n).working();
    let mut s = Complex::zero(w);
    for k in 1..=n {
        s = &s + &complex_pow(&Real::from_u64(k, 64), m, w)?;
    }
    Ok(s.with_prec(prec.working()))
}

/// `sum_{k=1}^n (-1)^(k+1) k^m` term by term.
pub fn direct_alternating_sum(m: &Complex, n: u64, prec: Precision) -> Result<Complex> {
    if n == 0 {
        return Err(Error::invalid("direct_alternating_sum needs n >= 1"));
    }
    let w = guarded(prec, n).working();
    let mut s = Complex::zero(w);
    for k in 1..=n {
        let t = complex_pow(&Real::from_u64(k, 64), m, w)?;
        s = if k % 2 == 1 { &s + &t } else { &s - &t };
    }
    Ok(s.with_prec(prec.working()))
}

/// `(1/(m+1)) sum_{k=0}^m (-1)^k C(m+1, k) B_k n^(m+1-k)`, with `B_1 = -1/2`.
pub fn classical_faulhaber(m: u32, n: &BigInt) -> BigRational {
    let m = m as usize;
    let n = rat_int(n.clone());
    let mut acc = BigRational::zero();
    let mut pow = rat_int(1);
    // ascending powers n^1 .. n^(m+1) pair with k = m .. 0
    let mut terms = Vec::with_capacity(m + 1);
    for _ in 0..=m {
        pow *= &n;
        terms.push(pow.clone());
    }
    for k in 0..=m {
        let t = rat_int(binomial(m + 1, k)) * bernoulli_number(k) * &terms[m - k];
        if k % 2 == 1 {
            acc -= t;
        } else {
            acc += t;
        }
    }
    acc / rat_int(m + 1)
}

/// Which ground truth a report was measured against.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OracleKind {
    Direct,
    Classical,
}

impl OracleKind {
    pub fn as_str(self) -> &'static str {
        match self {
            OracleKind::Direct => "direct",
            OracleKind::Classical => "classical",
        }
    }
}

/// One truncation order of a report; `outcome` holds the evaluator's error when it failed.
#[derive(Clone, Debug)]
pub struct ReportRow {
    pub k: usize,
    pub outcome: core::result::Result<(Complex, Real), Error>,
}

impl ReportRow {
    pub fn value(&self) -> Option<&Complex> {
        self.outcome.as_ref().ok().map(|(v, _)| v)
    }

    pub fn abs_error(&self) -> Option<&Real> {
        self.outcome.as_ref().ok().map(|(_, e)| e)
    }
}

/// Truncation errors of one query over a list of term counts.
#[derive(Clone, Debug)]
pub struct ConvergenceReport {
    pub query: SumQuery,
    /// Sorted by `k`.
    pub rows: Vec<ReportRow>,
    pub oracle_value: Complex,
    pub oracle_kind: OracleKind,
}

impl ConvergenceReport {
    /// `K,value_re,value_im,abs_error` with a header line; failed rows leave the numeric fields empty.
    pub fn to_csv(&self, digits: usize) -> String {
        let mut out = String::from("K,value_re,value_im,abs_error\n");
        for r in &self.rows {
            match &r.outcome {
                Ok((v, e)) => {
                    let _ = writeln!(
                        out,
                        "{},{},{},{}",
                        r.k,
                        v.re.to_sci_string(digits),
                        v.im.to_sci_string(digits),
                        e.to_sci_string(6)
                    );
                }
                Err(_) => {
                    let _ = writeln!(out, "{},,,", r.k);
                }
            }
        }
        out
    }
}

/// Evaluates `q` with exactly `k` factorial terms for each `k` in `ks` and measures the
/// error against direct summation, or against the classical polynomial for exact integer `m >= 0`.
pub fn convergence_report(q: &SumQuery, ks: &[usize]) -> Result<ConvergenceReport> {
    if ks.is_empty() || ks.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::invalid("term counts must be non-empty and strictly ascending"));
    }
    let (floor, _) = floor_fract(&q.x);
    let n = floor.to_u64().ok_or_else(|| Error::invalid("x out of range"))?;
    let bits = q.precision.bits();
    let op = Precision::new(bits + bits / 2)?.raised(64 - n.max(1).leading_zeros());
    let ow = op.working();
    let classical = match (&q.m, q.m.as_integer()) {
        (Exponent::Exact(_), Some(m)) if m >= 0 => Some(classical_faulhaber(m as u32, &floor)),
        _ => None,
    };
    let (oracle_value, oracle_kind) = match &classical {
        Some(c) => (Complex::from_rational(c, ow), OracleKind::Classical),
        None if n == 0 => (Complex::zero(ow), OracleKind::Direct),
        None => (direct_sum(&q.m.to_complex(ow), n, op)?, OracleKind::Direct),
    };
    let rows = ks
        .iter()
        .map(|&k| {
            let mut qk = q.clone();
            qk.fixed_terms = Some(k);
            qk.trace = false;
            let outcome = power_sum(&qk).map(|r| {
                let rounded = r.value.with_prec(q.precision.bits());
                let err = (&rounded.with_prec(ow) - &oracle_value).with_prec(64).abs();
                (r.value, err)
            });
            ReportRow { k, outcome }
        })
        .collect();
    Ok(ConvergenceReport { query: q.clone(), rows, oracle_value, oracle_kind })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::faulhaber::ArgumentShift;

    fn p(bits: u32) -> Precision {
        Precision::new(bits).unwrap()
    }

    #[test]
    fn direct_examples() {
        let w = p(64).working();
        assert_eq!(direct_sum(&Complex::from_i64(2, w), 10, p(64)).unwrap().re, Real::from_u64(385, 64));
        assert_eq!(direct_sum(&Complex::zero(w), 7, p(64)).unwrap().re, Real::from_u64(7, 64));
        let i = Complex::i(w);
        let s = direct_sum(&i, 3, p(64)).unwrap();
        let expect = &(&Complex::one(w) + &complex_pow(&Real::from_u64(2, 64), &i, w).unwrap())
            + &complex_pow(&Real::from_u64(3, 64), &i, w).unwrap();
        assert!((&s - &expect).with_prec(64).abs() <= Real::one(64).mul_pow2(-60));
        assert!(direct_sum(&i, 0, p(64)).is_err());
    }

    #[test]
    fn classical_examples() {
        assert_eq!(classical_faulhaber(0, &BigInt::from(5)), rat(5, 1));
        assert_eq!(classical_faulhaber(2, &BigInt::from(10)), rat(385, 1));
        assert_eq!(classical_faulhaber(3, &BigInt::from(5)), rat(225, 1));
        assert_eq!(classical_faulhaber(4, &BigInt::zero()), rat(0, 1));
    }

    #[test]
    fn classical_equals_integer_sums() {
        for m in 0..=8u32 {
            let mut acc = BigInt::zero();
            for n in 0..=30u32 {
                if n > 0 {
                    acc += num_traits::pow(BigInt::from(n), m as usize);
                }
                assert_eq!(classical_faulhaber(m, &BigInt::from(n)), rat_int(acc.clone()), "m={m} n={n}");
            }
        }
    }

    #[test]
    fn report_for_sqrt() {
        let q = SumQuery::new(Exponent::Exact(rat(1, 2)), rat(10, 1)).with_precision(p(192)).with_a(1);
        let ks: Vec<usize> = (1..=10).collect();
        let r = convergence_report(&q, &ks).unwrap();
        assert_eq!(r.oracle_kind, OracleKind::Direct);
        let errs: Vec<_> = r.rows.iter().map(|row| row.abs_error().unwrap().clone()).collect();
        for w in errs[1..].windows(2) {
            assert!(w[1] < w[0], "{errs:?}");
        }
        let csv = r.to_csv(20);
        assert_eq!(csv.lines().count(), 11);
        assert!(csv.starts_with("K,value_re,value_im,abs_error\n1,"));
    }

    #[test]
    fn report_for_integer_exponent() {
        let q = SumQuery::new(Exponent::Exact(rat(2, 1)), rat(10, 1)).with_precision(p(64));
        let ks: Vec<usize> = (1..=40).collect();
        let r = convergence_report(&q, &ks).unwrap();
        assert_eq!(r.oracle_kind, OracleKind::Classical);
        assert!(r.rows.last().unwrap().abs_error().unwrap().is_zero());
    }

    #[test]
    fn report_near_pole_fails_every_row() {
        let w = p(128).working();
        let m = Complex::from_real(Real::from_i64(-1, w).add_prec(&Real::one(64).mul_pow2(-100), false, w));
        let q = SumQuery::new(Exponent::Approx(m), rat(10, 1)).with_precision(p(128));
        let r = convergence_report(&q, &[1, 2, 3]).unwrap();
        assert!(r.rows.iter().all(|row| matches!(row.outcome, Err(Error::NearPole { .. }))));
        assert!(!r.oracle_value.is_zero());
        assert!(r.to_csv(10).ends_with("3,,,\n"));
    }

    #[test]
    fn reports_are_reproducible() {
        let q =
            SumQuery::new(Exponent::Exact(rat(1, 3)), rat(7, 1)).with_precision(p(128)).with_shift(ArgumentShift::None);
        let a = convergence_report(&q, &[2, 4, 8]).unwrap().to_csv(30);
        let b = convergence_report(&q, &[2, 4, 8]).unwrap().to_csv(30);
        assert_eq!(a, b);
        assert!(convergence_report(&q, &[3, 2]).is_err());
    }
}
