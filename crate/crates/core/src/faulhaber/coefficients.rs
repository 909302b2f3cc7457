//! Exact factorial-series numerators as polynomials in the fractional part `y = {x}`.

use alloc::vec::Vec;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{variant_shift, Variant};
use crate::error::{Error, Result};
use crate::exact::{bernoulli_poly_coeffs, binomial_rational, euler_poly_coeffs, RationalPoly};
use crate::weniger::WenigerStream;

fn transform<F>(shift: usize, k_max: usize, mut alpha: F) -> Vec<RationalPoly>
where
    F: FnMut(usize) -> RationalPoly,
{
    WenigerStream::new(RationalPoly::zero(), shift, |l| Ok(alpha(l)))
        .take(k_max)
        .map(|b| b.expect("exact source cannot fail"))
        .collect()
}

fn signed(neg: bool, p: RationalPoly) -> RationalPoly {
    if neg {
        -p
    } else {
        p
    }
}

/// Numerators `c_k({x})` of the power-sum tail `x^(m+1-a) sum_k c_k / ((x+1)...(x+k))`
/// (plain) or `x^(m+1) sum_k ...` (shifted), for exact `m != -1`.
pub fn power_coefficients(m: &BigRational, a: usize, variant: Variant, k_max: usize) -> Result<Vec<RationalPoly>> {
    let top = m + BigRational::one();
    if top.is_zero() {
        return Err(Error::invalid("m = -1 has no power-sum coefficients; use the harmonic ones"));
    }
    let shift = variant_shift(variant, a, false)?;
    let inv = BigRational::one() / &top;
    Ok(transform(shift, k_max, |l| {
        let j = l + a;
        let c = binomial_rational(&top, j) * &inv;
        signed(j % 2 == 1, bernoulli_poly_coeffs(j).scale(&c))
    }))
}

/// Numerators of the harmonic tail `x^-a sum_k b_k / ((x+1)...(x+k))` (plain) or
/// `sum_k b_k / ((x+1)...(x+k))` (shifted).
pub fn harmonic_coefficients(a: usize, variant: Variant, k_max: usize) -> Result<Vec<RationalPoly>> {
    let shift = variant_shift(variant, a, false)?;
    Ok(transform(shift, k_max, |l| {
        let j = l + a;
        bernoulli_poly_coeffs(j).scale(&-BigRational::new(1.into(), j.into()))
    }))
}

/// Numerators of the log-sum tail. The prefactor is `x^-a`, `1` or `x` for the
/// plain, shifted and shifted-plus variants.
pub fn log_coefficients(a: usize, variant: Variant, k_max: usize) -> Result<Vec<RationalPoly>> {
    let shift = variant_shift(variant, a, true)?;
    Ok(transform(shift, k_max, |l| {
        let j = l + a;
        bernoulli_poly_coeffs(j + 1).scale(&BigRational::new(1.into(), (j * (j + 1)).into()))
    }))
}

/// Numerators of the alternating tail, without the `(-1)^floor(x) / 2` factor. The
/// prefactor is `x^(m+1-a)` (plain) or `x^(m+1)` (shifted).
pub fn alternating_coefficients(
    m: &BigRational,
    a: usize,
    variant: Variant,
    k_max: usize,
) -> Result<Vec<RationalPoly>> {
    let shift = variant_shift(variant, a, false)?;
    Ok(transform(shift, k_max, |l| {
        let j = l + a;
        let c = binomial_rational(m, j - 1);
        signed(j % 2 == 1, euler_poly_coeffs(j - 1).scale(&c))
    }))
}

/// Evaluates each numerator at `y`.
pub fn at(polys: &[RationalPoly], y: &BigRational) -> Vec<BigRational> {
    polys.iter().map(|p| p.eval(y)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{factorial, rat, rat_int};
    use alloc::vec;

    fn poly(c: &[(i64, i64)]) -> RationalPoly {
        RationalPoly::new(c.iter().map(|&(p, q)| rat(p, q)).collect())
    }

    fn zero() -> BigRational {
        BigRational::zero()
    }

    #[test]
    fn sqrt_numerators() {
        let c = power_coefficients(&rat(1, 2), 1, Variant::Plain, 4).unwrap();
        assert_eq!(at(&c, &zero()), vec![rat(1, 24), rat(1, 24), rat(53, 640), rat(79, 320)]);
        assert_eq!(c[0], poly(&[(1, 24), (-1, 4), (1, 4)]));
        assert_eq!(c[1], poly(&[(1, 24), (-11, 48), (3, 16), (1, 24)]));
        assert_eq!(c[2], poly(&[(53, 640), (-7, 16), (21, 64), (3, 32), (1, 64)]));
        assert_eq!(c[3], poly(&[(79, 320), (-977, 768), (29, 32), (109, 384), (19, 256), (1, 128)]));
    }

    #[test]
    fn zeta2_numerators() {
        let c = power_coefficients(&rat(-2, 1), 0, Variant::Plain, 50).unwrap();
        for (i, ck) in at(&c, &zero()).into_iter().enumerate() {
            let k = i + 1;
            assert_eq!(ck, rat_int(factorial(k - 1)) / rat_int(k + 1));
        }
    }

    #[test]
    fn half_integer_numerators() {
        let c = power_coefficients(&rat(3, 2), 2, Variant::Plain, 6).unwrap();
        let expect = [rat(0, 1), rat(1, 1920), rat(1, 640), rat(611, 107520), rat(275, 10752), rat(159157, 1146880)];
        assert_eq!(at(&c, &zero()), expect.to_vec());
        let c = power_coefficients(&rat(5, 2), 3, Variant::Plain, 5).unwrap();
        let expect = [rat(-1, 384), rat(-1, 384), rat(-37, 7168), rat(-55, 3584), rat(-1995, 32768)];
        assert_eq!(at(&c, &zero()), expect.to_vec());
        let c = power_coefficients(&rat(-1, 2), 1, Variant::Plain, 4).unwrap();
        assert_eq!(at(&c, &zero()), vec![rat(-1, 24), rat(-1, 24), rat(-31, 384), rat(-15, 64)]);
    }

    #[test]
    fn harmonic_numerators() {
        let c = harmonic_coefficients(0, Variant::Plain, 4).unwrap();
        assert_eq!(at(&c, &zero()), vec![rat(1, 2), rat(5, 12), rat(3, 4), rat(251, 120)]);
        let c = harmonic_coefficients(1, Variant::Plain, 4).unwrap();
        assert_eq!(at(&c, &zero()), vec![rat(-1, 12), rat(-1, 12), rat(-19, 120), rat(-9, 20)]);
        let c = harmonic_coefficients(1, Variant::Shifted, 4).unwrap();
        assert_eq!(at(&c, &zero()), vec![rat(0, 1), rat(-1, 12), rat(-1, 4), rat(-109, 120)]);
        assert!(c[0].is_zero());
        assert_eq!(c[1], -poly(&[(1, 12), (-1, 2), (1, 2)]));
        assert_eq!(c[2], -poly(&[(1, 4), (-4, 3), (1, 1), (1, 3)]));
        assert_eq!(c[3], -poly(&[(109, 120), (-9, 2), (11, 4), (3, 2), (1, 4)]));
    }

    #[test]
    fn shifted_plus_is_log_only() {
        assert!(power_coefficients(&rat(1, 2), 1, Variant::ShiftedPlus, 3).is_err());
        assert!(harmonic_coefficients(1, Variant::ShiftedPlus, 3).is_err());
        assert_eq!(
            log_coefficients(1, Variant::ShiftedPlus, 3).unwrap()[..2],
            [RationalPoly::zero(), RationalPoly::zero()]
        );
    }

    #[test]
    fn alternating_terminates_for_integer_m() {
        // a = m + 1 leaves no tail at all
        for m in 0..5i64 {
            let c = alternating_coefficients(&rat(m, 1), m as usize + 1, Variant::Plain, 12).unwrap();
            assert!(c.iter().all(RationalPoly::is_zero), "m={m}");
        }
        assert!(power_coefficients(&rat(-1, 1), 0, Variant::Plain, 3).is_err());
    }
}
