//! High-precision values checked against independently computed 300-digit constants.

mod constants;

use faulsum_core::exact::{parse_decimal, rat};
use faulsum_core::faulhaber::{log_sum, power_sum, Exponent, SumQuery};
use faulsum_core::mp::{exp, ln, ln2, pi, Complex, Precision, Real};
use faulsum_core::special::{digamma, euler_gamma, hurwitz_zeta, riemann_zeta};

const BITS: u32 = 960;

fn p() -> Precision {
    Precision::new(BITS).unwrap()
}

fn reference(s: &str) -> Real {
    Real::from_rational(&parse_decimal(s).unwrap(), p().working())
}

#[track_caller]
fn assert_close(got: &Real, digits: &str) {
    let want = reference(digits);
    let w = p().working();
    let diff = (got.with_prec(w) - want.clone()).with_prec(64).abs();
    let tol = want.with_prec(64).abs().max(Real::one(64)).mul_pow2(-(BITS as i64) + 10);
    assert!(diff <= tol, "got {}\nwant {digits}", got.to_sci_string(60));
}

#[test]
fn elementary_constants() {
    let w = p().working();
    assert_close(&pi(w), constants::PI);
    assert_close(&ln2(w), constants::LN2);
    assert_close(&exp(&Real::one(w), w).unwrap(), constants::E);
    assert_close(&ln(&reference(constants::E), w).unwrap(), "1");
}

#[test]
fn euler_gamma_and_digamma() {
    let w = p().working();
    assert_close(&euler_gamma(p()), constants::EULER_GAMMA);
    let psi = digamma(&Complex::from_rational(&rat(1, 3), w), p()).unwrap();
    assert_close(&psi.re, constants::PSI_THIRD);
}

#[test]
fn zeta_values() {
    let w = p().working();
    assert_close(&riemann_zeta(&Complex::from_i64(3, w), p()).unwrap().re, constants::ZETA_3);
    assert_close(&riemann_zeta(&Complex::from_rational(&rat(1, 2), w), p()).unwrap().re, constants::ZETA_HALF);
    let s = Complex::from_rational(&rat(5, 2), w);
    let z = Complex::from_rational(&rat(7, 3), w);
    assert_close(&hurwitz_zeta(&s, &z, p()).unwrap().re, constants::HURWITZ_5_2_7_3);
}

#[test]
fn zeta_on_critical_line() {
    let bits = 320;
    let pp = Precision::new(bits).unwrap();
    let w = pp.working();
    let s = Complex::new(Real::from_rational(&rat(1, 2), w), Real::from_i64(14, w));
    let v = riemann_zeta(&s, pp).unwrap();
    for (got, want) in [(&v.re, constants::ZETA_HALF_14I_RE), (&v.im, constants::ZETA_HALF_14I_IM)] {
        let want = Real::from_rational(&parse_decimal(want).unwrap(), w);
        let diff = (got.clone() - want).with_prec(64).abs();
        assert!(diff <= Real::one(64).mul_pow2(-(bits as i64) + 12), "{got}");
    }
}

#[test]
fn sums_at_high_precision() {
    let q = SumQuery::at(rat(100, 1)).with_precision(p()).with_a(4).with_budget(800);
    assert_close(&log_sum(&q).unwrap().value.re, constants::LN_FACTORIAL_100);
    let q = SumQuery::new(Exponent::Exact(rat(1, 2)), rat(1000, 1)).with_precision(p()).with_a(2).with_budget(800);
    assert_close(&power_sum(&q).unwrap().value.re, constants::SUM_SQRT_1000);
}
