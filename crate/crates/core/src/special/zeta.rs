use super::hurwitz::zeta_by_shift;
use super::{check_pole, euler_gamma};
use crate::error::Result;
use crate::mp::{complex_pow, ln2, Complex, Precision, Real};

/// Riemann `zeta(s)` for `s != 1`.
///
/// Sums `k^-s` up to a shift `N` and adds the asymptotic tail at `N + 1`. Negative even
/// integers return an exact zero.
pub fn riemann_zeta(s: &Complex, prec: Precision) -> Result<Complex> {
    check_pole(s, prec)?;
    if let Some(m) = s.as_integer() {
        if m < 0 && m % 2 == 0 {
            return Ok(Complex::zero(prec.working()));
        }
    }
    zeta_by_shift(s, &Complex::one(64), &Real::one(64), prec)
}

/// Dirichlet `eta(s) = (1 - 2^(1-s)) zeta(s)`, with `eta(1) = ln 2`.
pub fn dirichlet_eta(s: &Complex, prec: Precision) -> Result<Complex> {
    let w = prec.working();
    let one = Complex::one(w);
    let d = &s.with_prec(w) - &one;
    let gap = d.with_prec(64).abs().magnitude_exp();
    let Some(gap) = gap else {
        return Ok(Complex::from_real(ln2(w)));
    };
    if gap < -(prec.bits() as i64) / 2 {
        // eta(s) = ln 2 + (gamma ln 2 - ln^2 2 / 2)(s - 1) + O((s-1)^2)
        let l = ln2(w);
        let slope = euler_gamma(prec).mul_prec(&l, w).add_prec(&l.mul_prec(&l, w).mul_pow2(-1), true, w);
        return Ok(&Complex::from_real(l) + &d.scale(&slope));
    }
    let extra = if gap < 0 { (-gap) as u32 + 16 } else { 0 };
    let wp = prec.raised(extra);
    let ww = wp.working();
    let factor = &Complex::one(ww) - &complex_pow(&Real::from_u64(2, 64), &(-&d.with_prec(ww)), ww)?;
    let z = riemann_zeta(s, wp)?;
    Ok((&factor * &z).with_prec(w))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::exact::{bernoulli_poly, rat};
    use crate::mp::pi;

    fn p() -> Precision {
        Precision::new(128).unwrap()
    }

    fn rel_ok(a: &Complex, b: &Real, log2_tol: i64) -> bool {
        let d = (a - &Complex::from_real(b.clone())).with_prec(64).abs();
        d <= b.with_prec(64).abs().mul_pow2(log2_tol)
    }

    #[test]
    fn zeta_two() {
        let w = p().working();
        let pi2 = pi(w).mul_prec(&pi(w), w).div_prec(&Real::from_u64(6, 64), w);
        assert!(rel_ok(&riemann_zeta(&Complex::from_i64(2, w), p()).unwrap(), &pi2, -120));
    }

    #[test]
    fn zeta_negative_integers() {
        let w = p().working();
        assert!(riemann_zeta(&Complex::from_i64(-2, w), p()).unwrap().is_zero());
        for m in [0i64, 1, 3, 5, 7, 9] {
            // B_{m+1}(1) agrees with B_{m+1} except for m = 0
            let expect = -bernoulli_poly(m as usize + 1, &rat(1, 1)).unwrap() / rat(m + 1, 1);
            let expect = Real::from_rational(&expect, w);
            let got = riemann_zeta(&Complex::from_i64(-m, w), p()).unwrap();
            assert!(rel_ok(&got, &expect, -112), "m={m} {got:?}");
        }
    }

    #[test]
    fn pole() {
        assert_eq!(riemann_zeta(&Complex::one(64), p()).unwrap_err(), Error::PoleAtOne);
        let near = Complex::from_real(Real::one(200).add_prec(&Real::one(64).mul_pow2(-70), false, 200));
        assert_eq!(riemann_zeta(&near, p()).unwrap_err(), Error::PoleAtOne);
    }

    #[test]
    fn eta_values() {
        let w = p().working();
        let e1 = dirichlet_eta(&Complex::one(w), p()).unwrap();
        assert!(rel_ok(&e1, &ln2(w), -125));
        let e0 = dirichlet_eta(&Complex::zero(w), p()).unwrap();
        assert!(rel_ok(&e0, &Real::from_rational(&rat(1, 2), w), -120));
        let pi2 = pi(w).mul_prec(&pi(w), w).div_prec(&Real::from_u64(12, 64), w);
        assert!(rel_ok(&dirichlet_eta(&Complex::from_i64(2, w), p()).unwrap(), &pi2, -120));
        // continuity across the near-pole switch
        let s = Complex::from_real(Real::one(w).add_prec(&Real::one(64).mul_pow2(-63), false, w));
        let t = Complex::from_real(Real::one(w).add_prec(&Real::one(64).mul_pow2(-65), false, w));
        let a = dirichlet_eta(&s, p()).unwrap();
        let b = dirichlet_eta(&t, p()).unwrap();
        assert!((&a - &b).with_prec(64).abs() <= Real::one(64).mul_pow2(-62));
    }
}
