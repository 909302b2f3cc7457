use num_traits::Zero;

use super::{format_id, magnitude_or_one, plan, run_tail, variant_shift, EvalResult, SumQuery, TailSpec, Variant};
use crate::error::Result;
use crate::exact::bernoulli_poly;
use crate::mp::{ln, pi, Complex, Real};

/// `ln(floor(x)!) = sum_{k <= x} ln k`, a convergent Stirling formula. The exponent of
/// the query is ignored.
pub fn log_sum(q: &SumQuery) -> Result<EvalResult> {
    let shift = variant_shift(q.variant, q.a, true)?;
    let pl = plan(&q.x, q.shift, q.precision.bits() + 16, q.term_budget, 1.0)?;
    let p = q.precision.raised(pl.guard_bits(1.0));
    let w = p.working();
    let x = Real::from_rational(&pl.eval_x, w);
    let xc = Complex::from_real(x.clone());
    let lx = ln(&x, w)?;

    // x ln x - x + ln(2 pi)/2 - B_1({x}) ln x
    let half_ln_2pi = ln(&pi(w).mul_pow2(1), w)?.mul_pow2(-1);
    let b1 = Real::from_rational(&bernoulli_poly(1, &pl.frac)?, w);
    let mut main = x.mul_prec(&lx, w).add_prec(&x, true, w).add_prec(&half_ln_2pi, false, w);
    main = main.add_prec(&b1.mul_prec(&lx, w), true, w);
    let mut xk = Real::one(w);
    for k in 1..=q.a {
        xk = xk.mul_prec(&x, w);
        let b = bernoulli_poly(k + 1, &pl.frac)?;
        if b.is_zero() {
            continue;
        }
        let den = xk.mul_prec(&Real::from_u64((k * (k + 1)) as u64, 64), w);
        main = main.add_prec(&Real::from_rational(&b, w).div_prec(&den, w), false, w);
    }
    let main = Complex::from_real(main);
    let prefactor = match q.variant {
        Variant::Plain => Complex::from_real(xk.recip()),
        Variant::Shifted => Complex::one(w),
        Variant::ShiftedPlus => xc.clone(),
    };

    let frac = pl.frac.clone();
    let a = q.a;
    let source = move |l: usize| -> Result<Complex> {
        let j = l + a;
        let b = Real::from_rational(&bernoulli_poly(j + 1, &frac)?, w);
        Ok(Complex::from_real(b.div_prec(&Real::from_u64((j * (j + 1)) as u64, 64), w)))
    };
    let mut spec = TailSpec::new("log_sum", q, p);
    spec.stirling_shift = shift;
    spec.scale = magnitude_or_one(&main);
    spec.prefactor = prefactor;
    let tail = run_tail(source, &xc, spec)?;

    let mut value = (&main + &tail.value).re;
    for k in pl.extra_terms() {
        value = value.add_prec(&ln(&Real::from_u64(k, 64), w)?, true, w);
    }
    Ok(EvalResult {
        value: Complex::from_real(value.with_prec(q.precision.working())),
        est_error: tail.est_error,
        terms_used: tail.terms,
        trace: tail.trace,
        formula_id: format_id("log", q.variant),
        exact: None,
        shifted_to: pl.shifted(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{parse_decimal, rat};
    use crate::faulhaber::ArgumentShift;
    use crate::mp::Precision;

    fn p() -> Precision {
        Precision::new(128).unwrap()
    }

    fn ln_factorial(n: u64, w: u32) -> Real {
        let f = (1..=n).fold(num_bigint::BigInt::from(1), |acc, k| acc * k);
        ln(&Real::from_bigint(&f, w), w).unwrap()
    }

    fn within(a: &Complex, b: &Real, log2_tol: i64) -> bool {
        let d = a.re.add_prec(b, true, a.prec()).with_prec(64).abs();
        d <= b.with_prec(64).abs().max(Real::one(64)).mul_pow2(log2_tol)
    }

    #[test]
    fn five_factorial() {
        let w = p().working();
        let q = SumQuery::at(rat(5, 1)).with_precision(p()).with_a(2);
        assert!(within(&log_sum(&q).unwrap().value, &ln_factorial(5, w), -104));
    }

    #[test]
    fn variants_agree() {
        let w = p().working();
        let x = parse_decimal("12.75").unwrap();
        let expect = ln_factorial(12, w);
        for v in [Variant::Plain, Variant::Shifted, Variant::ShiftedPlus] {
            let q = SumQuery::at(x.clone()).with_precision(p()).with_a(3).with_variant(v);
            let r = log_sum(&q).unwrap();
            assert!(within(&r.value, &expect, -108), "{v:?}: {}", r.value);
        }
    }

    #[test]
    fn unshifted_large_argument() {
        let w = p().working();
        for v in [Variant::Plain, Variant::Shifted, Variant::ShiftedPlus] {
            let q =
                SumQuery::at(rat(160, 1)).with_precision(p()).with_a(1).with_variant(v).with_shift(ArgumentShift::None);
            assert!(within(&log_sum(&q).unwrap().value, &ln_factorial(160, w), -118), "{v:?}");
        }
    }

    #[test]
    fn one_gives_zero() {
        let q = SumQuery::at(rat(1, 1)).with_precision(p());
        assert!(log_sum(&q).unwrap().value.with_prec(64).abs() <= Real::one(64).mul_pow2(-108));
    }
}
