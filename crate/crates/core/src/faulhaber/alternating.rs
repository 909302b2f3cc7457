use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{
    format_id, magnitude_or_one, parity_sign, plan, run_tail, variant_shift, EvalResult, Plan, SumQuery, TailSpec,
    Variant,
};
use crate::error::Result;
use crate::exact::{bernoulli_number, binomial, euler_poly, rat_int, rat_pow};
use crate::mp::{complex_pow, BinomialSequence, Complex, Real};
use crate::special::dirichlet_eta;

/// `sum_{k <= x} (-1)^(k+1) k^m`.
///
/// For exact integer `m >= 0` the finite form with `a = m + 1` has no series tail and is
/// evaluated in rational arithmetic; the requested `a` and variant do not matter then.
pub fn alternating_power_sum(q: &SumQuery) -> Result<EvalResult> {
    if let Some(m) = q.m.as_integer().filter(|m| *m >= 0) {
        return finite(m as usize, q);
    }
    let shift = variant_shift(q.variant, q.a, false)?;
    let growth = (q.m.re_f64() + 1.0).max(0.0);
    let pl = plan(&q.x, q.shift, q.precision.bits() + 16, q.term_budget, growth + 3.0)?;
    let p = q.precision.raised(pl.guard_bits(growth));
    let w = p.working();

    let m = q.m.to_complex(w);
    let x = Real::from_rational(&pl.eval_x, w);
    let xc = Complex::from_real(x.clone());
    let sign = parity_sign(&pl.eval_floor);
    // (-1)^floor(x) x^(m+1) / 2
    let mut half = complex_pow(&x, &(&m + &Complex::one(w)), w)?.mul_pow2(-1);
    if sign < 0 {
        half = -half;
    }

    let mut main = dirichlet_eta(&-&m, p)?;
    let mut binom = BinomialSequence::new(&m, w);
    let mut xk = half.clone();
    for k in 1..=q.a {
        let c = if k == 1 { Complex::one(w) } else { binom.advance() };
        xk = &xk / &xc;
        let e = euler_poly(k - 1, &pl.frac)?;
        if e.is_zero() {
            continue;
        }
        let term = (&c * &xk).scale(&Real::from_rational(&e, w));
        main = if k % 2 == 1 { &main - &term } else { &main + &term };
    }
    let prefactor = match q.variant {
        Variant::Plain => xk,
        _ => half,
    };

    let frac = pl.frac.clone();
    let a = q.a;
    let source = move |l: usize| -> Result<Complex> {
        let j = l + a;
        let c = if j == 1 { Complex::one(w) } else { binom.advance() };
        let e = euler_poly(j - 1, &frac)?;
        let v = c.scale(&Real::from_rational(&e, w));
        Ok(if j % 2 == 1 { -v } else { v })
    };
    let mut spec = TailSpec::new("alternating_power_sum", q, p);
    spec.stirling_shift = shift;
    spec.scale = magnitude_or_one(&main);
    spec.prefactor = prefactor;
    let tail = run_tail(source, &xc, spec)?;

    let mut value = &main + &tail.value;
    for k in pl.extra_terms() {
        let t = complex_pow(&Real::from_u64(k, 64), &m, w)?;
        value = if k % 2 == 1 { &value - &t } else { &value + &t };
    }
    Ok(EvalResult {
        value: value.with_prec(q.precision.working()),
        est_error: tail.est_error,
        terms_used: tail.terms,
        trace: tail.trace,
        formula_id: format_id("alternating", q.variant),
        exact: None,
        shifted_to: pl.shifted(),
    })
}

/// `eta(-m)` for integer `m >= 0`: `1/2` at `m = 0`, else `(2^(m+1) - 1) B_(m+1) / (m+1)`.
pub(crate) fn eta_at_negative_integer(m: usize) -> BigRational {
    if m == 0 {
        return BigRational::new(1.into(), 2.into());
    }
    let pow = (BigInt::one() << (m + 1)) - 1;
    rat_int(pow) * bernoulli_number(m + 1) / rat_int(m + 1)
}

fn finite(m: usize, q: &SumQuery) -> Result<EvalResult> {
    let pl: Plan = plan(&q.x, super::ArgumentShift::None, 0, 0, 0.0)?;
    let x = &pl.eval_x;
    let mut v = BigRational::zero();
    for k in 1..=m + 1 {
        let e = euler_poly(k - 1, &pl.frac)?;
        let t = rat_int(binomial(m, k - 1)) * e * rat_pow(x, m + 1 - k);
        v = if k % 2 == 1 { v - t } else { v + t };
    }
    v = v * BigRational::new(parity_sign(&pl.eval_floor).into(), 2.into()) + eta_at_negative_integer(m);
    Ok(EvalResult {
        value: Complex::from_rational(&v, q.precision.working()),
        est_error: Real::zero(64),
        terms_used: 0,
        trace: q.trace.then(alloc::vec::Vec::new),
        formula_id: alloc::string::String::from("alternating/finite"),
        exact: Some(v),
        shifted_to: None,
    })
}
