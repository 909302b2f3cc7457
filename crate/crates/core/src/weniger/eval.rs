use alloc::vec::Vec;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::mp::{Complex, Precision, Real};

/// When to stop summing an inverse factorial series.
#[derive(Clone, Debug, PartialEq)]
pub enum StoppingRule {
    /// Stop at the first `K >= k_min` where the tail estimate after each of the last
    /// `run` terms is at most `2^-P * max(|partial|, reference)`. Zero terms count as satisfied.
    Adaptive { k_min: usize, budget: usize, run: usize, reference: Option<Real> },
    /// Sum exactly `K` terms (fewer if the coefficient stream ends).
    Fixed(usize),
}

impl StoppingRule {
    pub const DEFAULT_K_MIN: usize = 8;

    pub fn adaptive(budget: usize) -> Self {
        StoppingRule::Adaptive { k_min: Self::DEFAULT_K_MIN, budget, run: 3, reference: None }
    }

    /// Measures term size against `max(|partial|, reference)` instead of `|partial|` alone.
    pub fn with_reference(self, r: Real) -> Self {
        match self {
            StoppingRule::Adaptive { k_min, budget, run, .. } => {
                StoppingRule::Adaptive { k_min, budget, run, reference: Some(r.abs()) }
            }
            fixed => fixed,
        }
    }

    pub fn budget(&self) -> usize {
        match self {
            StoppingRule::Adaptive { budget, .. } => *budget,
            StoppingRule::Fixed(k) => *k,
        }
    }
}

/// Inputs shared by every series evaluation.
#[derive(Clone, Debug)]
pub struct SeriesOptions {
    pub stop: StoppingRule,
    pub precision: Precision,
    /// Record `|t_k|` and the partial sums.
    pub trace: bool,
    /// Name reported in [`Error::NonConvergence`].
    pub family: &'static str,
}

impl SeriesOptions {
    pub fn new(precision: Precision, stop: StoppingRule, family: &'static str) -> Self {
        SeriesOptions { stop, precision, trace: false, family }
    }

    pub fn traced(mut self, on: bool) -> Self {
        self.trace = on;
        self
    }
}

/// Outcome of [`evaluate_factorial_series`].
#[derive(Clone, Debug)]
pub struct SeriesEval {
    pub value: Complex,
    /// Heuristic tail estimate from the last two terms.
    pub est_error: Real,
    pub terms_used: usize,
    /// `|t_k|` for `k = 1..=terms_used`, when tracing.
    pub trace: Option<Vec<Real>>,
    /// Partial sums after each term, when tracing.
    pub partials: Option<Vec<Complex>>,
}

const MAG_BITS: u32 = 64;

/// Tail multiplier for the last term. The ratio `r = |t_K / t_{K-1}|` gives a geometric
/// estimate `r / (1 - r)` and, through `p = K (1 - r)`, an algebraic one `K / (p - 1)`
/// for terms decaying like `K^-p`. The larger of the two is doubled.
fn tail_factor(k: usize, last: &Real, prev: &Real) -> f64 {
    if last.is_zero() || prev.is_zero() {
        return 2.0;
    }
    let r = last.div_prec(prev, MAG_BITS).to_f64();
    let kf = k as f64;
    if r.is_nan() || r >= 1.0 {
        return 2.0 * kf.max(1.0);
    }
    let p = kf * (1.0 - r);
    let algebraic = if p > 1.5 { kf / (p - 1.0) } else { kf };
    2.0 * (r / (1.0 - r)).max(algebraic).max(1.0)
}

fn scaled(x: &Real, f: f64) -> Real {
    let f = Real::from_f64(f, MAG_BITS).unwrap_or_else(|| Real::one(MAG_BITS));
    x.mul_prec(&f, MAG_BITS)
}

/// Sums `sum_k b_k / ((z+1)(z+2)...(z+k))` for `Re z > 0`, pulling coefficients lazily.
pub fn evaluate_factorial_series<I>(coeffs: I, z: &Complex, opts: &SeriesOptions) -> Result<SeriesEval>
where
    I: IntoIterator<Item = Result<Complex>>,
{
    if !z.re.is_positive() {
        return Err(Error::invalid("factorial series needs Re(z) > 0"));
    }
    let w = opts.precision.working();
    let eps = opts.precision.epsilon().with_prec(MAG_BITS);
    let z = z.with_prec(w);
    let mut recip = Complex::one(w);
    let mut sum = Complex::zero(w);
    let mut trace = opts.trace.then(Vec::new);
    let mut partials = opts.trace.then(Vec::new);
    let mut last_abs = Real::zero(MAG_BITS);
    let mut tail = Real::zero(MAG_BITS);
    let mut streak = 0usize;
    let mut k = 0usize;
    let (limit, adaptive) = match &opts.stop {
        StoppingRule::Fixed(n) => (*n, None),
        StoppingRule::Adaptive { k_min, budget, run, reference } => (*budget, Some((*k_min, *run, reference))),
    };
    let mut converged = adaptive.is_none();
    for b in coeffs.into_iter().take(limit) {
        let b = b?;
        k += 1;
        let zk = Complex::new(z.re.add_prec(&Real::from_u64(k as u64, 64), false, w), z.im.clone());
        recip = &recip / &zk;
        let term = if b.is_zero() { Complex::zero(w) } else { &b.with_prec(w) * &recip };
        sum = &sum + &term;
        let prev_abs = core::mem::replace(&mut last_abs, term.with_prec(MAG_BITS).abs());
        tail = scaled(&last_abs, tail_factor(k, &last_abs, &prev_abs));
        if let Some(t) = trace.as_mut() {
            t.push(last_abs.clone());
        }
        if let Some(p) = partials.as_mut() {
            p.push(sum.clone());
        }
        if let Some((k_min, run, reference)) = adaptive {
            let mut scale = sum.with_prec(MAG_BITS).abs();
            if let Some(r) = reference {
                if r.cmp_abs(&scale) == core::cmp::Ordering::Greater {
                    scale = r.with_prec(MAG_BITS);
                }
            }
            if tail <= eps.mul_prec(&scale, MAG_BITS) {
                streak += 1;
            } else {
                streak = 0;
            }
            if k >= k_min && streak >= run {
                converged = true;
                break;
            }
        }
    }
    if !converged {
        if k < limit {
            // The coefficient stream ended: the series is a finite sum.
            converged = true;
            tail = Real::zero(MAG_BITS);
        } else {
            return Err(Error::NonConvergence { family: opts.family, budget: limit });
        }
    }
    debug_assert!(converged);
    Ok(SeriesEval { value: sum, est_error: tail, terms_used: k, trace, partials })
}

/// Exact partial sums `sum_{k<=K} b_k / ((z+1)...(z+k))` for `K = 1..=b.len()`.
pub fn factorial_partial_sums_exact(b: &[BigRational], z: &BigRational) -> Vec<BigRational> {
    let mut recip = BigRational::one();
    let mut sum = BigRational::zero();
    let mut out = Vec::with_capacity(b.len());
    for (i, bk) in b.iter().enumerate() {
        recip /= z + BigRational::from_integer((i + 1).into());
        sum += bk * &recip;
        out.push(sum.clone());
    }
    out
}
