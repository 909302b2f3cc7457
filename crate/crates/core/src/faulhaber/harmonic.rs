use num_traits::Zero;

use super::{format_id, magnitude_or_one, plan, run_tail, variant_shift, EvalResult, SumQuery, TailSpec, Variant};
use crate::error::Result;
use crate::exact::bernoulli_poly;
use crate::mp::{ln, Complex, Real};
use crate::special::euler_gamma;

/// `H_x = sum_{k <= x} 1/k`. The exponent of the query is ignored.
pub fn harmonic_sum(q: &SumQuery) -> Result<EvalResult> {
    let shift = variant_shift(q.variant, q.a, false)?;
    let pl = plan(&q.x, q.shift, q.precision.bits() + 16, q.term_budget, 1.0)?;
    let p = q.precision.raised(pl.guard_bits(0.0));
    let w = p.working();
    let x = Real::from_rational(&pl.eval_x, w);
    let xc = Complex::from_real(x.clone());

    let mut main = ln(&x, w)?.add_prec(&euler_gamma(p), false, w);
    let mut xk = Real::one(w);
    for k in 1..=q.a {
        xk = xk.mul_prec(&x, w);
        let b = bernoulli_poly(k, &pl.frac)?;
        if b.is_zero() {
            continue;
        }
        let den = xk.mul_prec(&Real::from_u64(k as u64, 64), w);
        main = main.add_prec(&Real::from_rational(&b, w).div_prec(&den, w), true, w);
    }
    let main = Complex::from_real(main);
    let prefactor = match q.variant {
        Variant::Plain => Complex::from_real(xk.recip()),
        _ => Complex::one(w),
    };

    let frac = pl.frac.clone();
    let a = q.a;
    let source = move |l: usize| -> Result<Complex> {
        let j = l + a;
        let b = Real::from_rational(&bernoulli_poly(j, &frac)?, w);
        Ok(Complex::from_real(-b.div_prec(&Real::from_u64(j as u64, 64), w)))
    };
    let mut spec = TailSpec::new("harmonic_sum", q, p);
    spec.stirling_shift = shift;
    spec.scale = magnitude_or_one(&main);
    spec.prefactor = prefactor;
    let tail = run_tail(source, &xc, spec)?;

    let mut value = (&main + &tail.value).re;
    for k in pl.extra_terms() {
        value = value.add_prec(&Real::one(w).div_prec(&Real::from_u64(k, 64), w), true, w);
    }
    Ok(EvalResult {
        value: Complex::from_real(value.with_prec(q.precision.working())),
        est_error: tail.est_error,
        terms_used: tail.terms,
        trace: tail.trace,
        formula_id: format_id("harmonic", q.variant),
        exact: None,
        shifted_to: pl.shifted(),
    })
}
