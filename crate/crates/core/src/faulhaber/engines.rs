//! Convergent Euler-Maclaurin and Boole summation for a user-supplied summand.

use alloc::string::String;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::{
    auto_floor, magnitude_or_one, plan, run_tail, variant_shift, EvalResult, Plan, SumQuery, TailSpec, Variant,
};
use crate::error::{Error, Result};
use crate::exact::{bernoulli_poly, euler_poly, factorial};
use crate::mp::{complex_pow, ln, Complex, Precision, Real};

/// A smooth summand `f(t)` for `t > 0`, known through its derivatives and antiderivative.
pub trait FunctionFamily {
    /// Short name used in formula identifiers and errors.
    fn name(&self) -> &'static str;

    /// `f^(j)(t)`; `j = 0` is the value.
    fn derivative(&self, j: usize, t: &Real, prec: u32) -> Result<Complex>;

    /// `integral_{t0}^{t1} f(t) dt`.
    fn antiderivative(&self, t0: &Real, t1: &Real, prec: u32) -> Result<Complex>;

    fn value(&self, t: &Real, prec: u32) -> Result<Complex> {
        self.derivative(0, t, prec)
    }

    /// Highest derivative order the family can supply.
    fn max_order(&self) -> usize {
        usize::MAX
    }

    /// Real exponent `g` with `|f(t)|` growing roughly like `t^g`; steers the argument shift.
    fn growth(&self) -> f64 {
        0.0
    }
}

/// `f(t) = t^m`.
#[derive(Clone, Debug)]
pub struct PowerFamily {
    pub m: Complex,
}

impl PowerFamily {
    pub fn new(m: Complex) -> Self {
        PowerFamily { m }
    }
}

impl FunctionFamily for PowerFamily {
    fn name(&self) -> &'static str {
        "power"
    }

    fn derivative(&self, j: usize, t: &Real, prec: u32) -> Result<Complex> {
        let w = prec + 16;
        let m = self.m.with_prec(w);
        let mut c = Complex::one(w);
        for i in 0..j {
            c = &c * &Complex::new(m.re.add_prec(&Real::from_u64(i as u64, 64), true, w), m.im.clone());
            if c.is_zero() {
                return Ok(Complex::zero(prec));
            }
        }
        let e = Complex::new(m.re.add_prec(&Real::from_u64(j as u64, 64), true, w), m.im.clone());
        Ok((&c * &complex_pow(t, &e, w)?).with_prec(prec))
    }

    fn antiderivative(&self, t0: &Real, t1: &Real, prec: u32) -> Result<Complex> {
        let w = prec + 16;
        let top = &self.m.with_prec(w) + &Complex::one(w);
        if top.is_zero() {
            return Ok(Complex::from_real(ln(t1, w)?.add_prec(&ln(t0, w)?, true, prec)));
        }
        let d = &complex_pow(t1, &top, w)? - &complex_pow(t0, &top, w)?;
        Ok((&d / &top).with_prec(prec))
    }

    fn growth(&self) -> f64 {
        self.m.re.to_f64()
    }
}

/// `f(t) = ln t`.
#[derive(Clone, Copy, Debug, Default)]
pub struct LogFamily;

impl FunctionFamily for LogFamily {
    fn name(&self) -> &'static str {
        "log"
    }

    fn derivative(&self, j: usize, t: &Real, prec: u32) -> Result<Complex> {
        if j == 0 {
            return Ok(Complex::from_real(ln(t, prec)?));
        }
        // (-1)^(j-1) (j-1)! / t^j
        let w = prec + 16;
        let v = Real::from_bigint(&factorial(j - 1), w).div_prec(&t.with_prec(w).powi(j as i64), prec);
        Ok(Complex::from_real(if j % 2 == 0 { -v } else { v }))
    }

    fn antiderivative(&self, t0: &Real, t1: &Real, prec: u32) -> Result<Complex> {
        let w = prec + 16;
        let prim = |t: &Real| -> Result<Real> { Ok(t.mul_prec(&ln(t, w)?, w).add_prec(t, true, w)) };
        Ok(Complex::from_real(prim(t1)?.add_prec(&prim(t0)?, true, prec)))
    }

    fn growth(&self) -> f64 {
        0.5
    }
}

/// `f(t) = 1/t`.
#[derive(Clone, Copy, Debug, Default)]
pub struct ReciprocalFamily;

impl FunctionFamily for ReciprocalFamily {
    fn name(&self) -> &'static str {
        "reciprocal"
    }

    fn derivative(&self, j: usize, t: &Real, prec: u32) -> Result<Complex> {
        // (-1)^j j! / t^(j+1)
        let w = prec + 16;
        let v = Real::from_bigint(&factorial(j), w).div_prec(&t.with_prec(w).powi(j as i64 + 1), prec);
        Ok(Complex::from_real(if j % 2 == 1 { -v } else { v }))
    }

    fn antiderivative(&self, t0: &Real, t1: &Real, prec: u32) -> Result<Complex> {
        let w = prec + 16;
        Ok(Complex::from_real(ln(t1, w)?.add_prec(&ln(t0, w)?, true, prec)))
    }

    fn growth(&self) -> f64 {
        -1.0
    }
}

/// Plain or alternating summation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SummationKind {
    /// `sum f(k)`, Bernoulli polynomials.
    EulerMaclaurin,
    /// `sum (-1)^(k+1) f(k)`, Euler polynomials.
    Boole,
}

impl SummationKind {
    fn id(self) -> &'static str {
        match self {
            SummationKind::EulerMaclaurin => "em",
            SummationKind::Boole => "boole",
        }
    }
}

struct Site<'a> {
    x: &'a BigRational,
    frac: &'a BigRational,
    floor: &'a BigInt,
}

struct Evaluated {
    /// Everything except `C_f` and the series tail.
    main: Complex,
    tail: super::TailEval,
}

fn order_check(f: &dyn FunctionFamily, order: usize) -> Result<()> {
    if order > f.max_order() {
        return Err(Error::OrderExhausted { needed: order, available: f.max_order() });
    }
    Ok(())
}

fn kernel(kind: SummationKind, j: usize, y: &BigRational) -> Result<(BigRational, BigInt)> {
    match kind {
        SummationKind::EulerMaclaurin => Ok((bernoulli_poly(j, y)?, factorial(j))),
        SummationKind::Boole => Ok((euler_poly(j - 1, y)?, factorial(j - 1))),
    }
}

struct Settings {
    precision: Precision,
    a: usize,
    variant: Variant,
    budget: usize,
    fixed: Option<usize>,
    trace: bool,
    scale: Option<Real>,
}

fn evaluate(f: &dyn FunctionFamily, kind: SummationKind, site: Site<'_>, s: &Settings) -> Result<Evaluated> {
    let shift = variant_shift(s.variant, s.a, false)?;
    let w = s.precision.working();
    let x = Real::from_rational(site.x, w);
    let xc = Complex::from_real(x.clone());
    let mut main = match kind {
        SummationKind::EulerMaclaurin => f.antiderivative(&Real::one(w), &x, w)?,
        SummationKind::Boole => Complex::zero(w),
    };
    let mut prefix = Complex::zero(w);
    for k in 1..=s.a {
        order_check(f, k - 1)?;
        let (poly, fact) = kernel(kind, k, site.frac)?;
        if poly.is_zero() {
            continue;
        }
        let c = Real::from_rational(&poly, w).div_prec(&Real::from_bigint(&fact, w), w);
        let t = f.derivative(k - 1, &x, w)?.scale(&c);
        prefix = if k % 2 == 1 { &prefix - &t } else { &prefix + &t };
    }
    let mut prefactor = match s.variant {
        Variant::Plain => Complex::one(w),
        _ => Complex::from_real(x.powi(s.a as i64)),
    };
    if kind == SummationKind::Boole {
        let mut half = Real::one(w).mul_pow2(-1);
        if super::parity_sign(site.floor) < 0 {
            half = -half;
        }
        prefix = prefix.scale(&half);
        prefactor = prefactor.scale(&half);
    }
    main = &main + &prefix;

    let frac = site.frac.clone();
    let a = s.a;
    let source = |l: usize| -> Result<Complex> {
        let j = l + a;
        order_check(f, j - 1)?;
        let (poly, fact) = kernel(kind, j, &frac)?;
        if poly.is_zero() {
            return Ok(Complex::zero(w));
        }
        let c = Real::from_rational(&poly, w).mul_prec(&x.powi(l as i64), w).div_prec(&Real::from_bigint(&fact, w), w);
        let v = f.derivative(j - 1, &x, w)?.scale(&c);
        Ok(if j % 2 == 1 { -v } else { v })
    };
    let spec = TailSpec {
        family: match kind {
            SummationKind::EulerMaclaurin => "em_convergent_sum",
            SummationKind::Boole => "boole_convergent_sum",
        },
        stirling_shift: shift,
        scale: s.scale.clone().unwrap_or_else(|| magnitude_or_one(&main)),
        prefactor,
        precision: s.precision,
        budget: s.budget,
        fixed: s.fixed,
        trace: s.trace,
    };
    let tail = run_tail(source, &xc, spec)?;
    Ok(Evaluated { main, tail })
}

fn direct_terms(f: &dyn FunctionFamily, kind: SummationKind, ks: impl Iterator<Item = u64>, w: u32) -> Result<Complex> {
    let mut s = Complex::zero(w);
    for k in ks {
        let v = f.value(&Real::from_u64(k, 64), w)?;
        s = if kind == SummationKind::Boole && k % 2 == 0 { &s - &v } else { &s + &v };
    }
    Ok(s)
}

fn anchor(f: &dyn FunctionFamily, bits: u32, budget: usize) -> u64 {
    auto_floor(bits + 16, budget, f.growth().max(-1.0) + 2.0) + 5
}

/// The constant `C_f` of the convergent Euler-Maclaurin formula (`sum f(k) = integral_1^x f + C_f + ...`)
/// or of the Boole formula (`sum (-1)^(k+1) f(k) = C_f + ...`).
///
/// It is read off the formula at an integer anchor `N`, where the sum is known directly.
pub fn constant_cf(
    f: &dyn FunctionFamily,
    kind: SummationKind,
    a: usize,
    precision: Precision,
    budget: usize,
) -> Result<Complex> {
    let n = anchor(f, precision.bits(), budget);
    let guard = libm::log2(n as f64) * (f.growth().max(0.0) + 1.0);
    let p = precision.raised(guard as u32 + 16);
    let w = p.working();
    let direct = direct_terms(f, kind, 1..=n, w)?;
    let x = BigRational::from_integer(n.into());
    let zero = BigRational::zero();
    let floor = BigInt::from(n);
    let settings = Settings {
        precision: p,
        a,
        variant: Variant::Plain,
        budget,
        fixed: None,
        trace: false,
        scale: Some(magnitude_or_one(&direct)),
    };
    let e = evaluate(f, kind, Site { x: &x, frac: &zero, floor: &floor }, &settings)?;
    Ok((&(&direct - &e.main) - &e.tail.value).with_prec(precision.working()))
}

fn convergent_sum(f: &dyn FunctionFamily, kind: SummationKind, q: &SumQuery) -> Result<EvalResult> {
    variant_shift(q.variant, q.a, false)?;
    let growth = f.growth();
    let pl: Plan = plan(&q.x, q.shift, q.precision.bits() + 16, q.term_budget, growth.max(-1.0) + 2.0)?;
    let p = q.precision.raised(pl.guard_bits(growth.max(0.0)) + 8);
    let w = p.working();
    let cf = constant_cf(f, kind, q.a, p, q.term_budget.max(64))?;
    let settings = Settings {
        precision: p,
        a: q.a,
        variant: q.variant,
        budget: q.term_budget,
        fixed: q.fixed_terms,
        trace: q.trace,
        scale: None,
    };
    let site = Site { x: &pl.eval_x, frac: &pl.frac, floor: &pl.eval_floor };
    let e = evaluate(f, kind, site, &settings)?;
    let value = &(&cf + &e.main) + &e.tail.value;
    let value = &value - &direct_terms(f, kind, pl.extra_terms(), w)?;
    let mut id = String::from(kind.id());
    id.push('/');
    id.push_str(f.name());
    id.push('/');
    id.push_str(q.variant.as_str());
    Ok(EvalResult {
        value: value.with_prec(q.precision.working()),
        est_error: e.tail.est_error,
        terms_used: e.tail.terms,
        trace: e.tail.trace,
        formula_id: id,
        exact: None,
        shifted_to: pl.shifted(),
    })
}

/// `sum_{k <= x} f(k)` by the convergent Euler-Maclaurin formula. The exponent of the query is ignored.
pub fn em_convergent_sum(f: &dyn FunctionFamily, q: &SumQuery) -> Result<EvalResult> {
    convergent_sum(f, SummationKind::EulerMaclaurin, q)
}

/// `sum_{k <= x} (-1)^(k+1) f(k)` by the convergent Boole formula. The exponent of the query is ignored.
pub fn boole_convergent_sum(f: &dyn FunctionFamily, q: &SumQuery) -> Result<EvalResult> {
    convergent_sum(f, SummationKind::Boole, q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{parse_decimal, rat};
    use crate::faulhaber::{harmonic_sum, log_sum, power_sum, Exponent};
    use crate::special::{euler_gamma, riemann_zeta};
    use core::cell::Cell;

    fn p() -> Precision {
        Precision::new(128).unwrap()
    }

    fn close(a: &Complex, b: &Complex, log2_tol: i64) -> bool {
        (a - b).with_prec(64).abs() <= magnitude_or_one(b).mul_pow2(log2_tol)
    }

    #[test]
    fn derivative_zero_is_value() {
        let w = p().working();
        let t = Real::from_rational(&rat(7, 3), w);
        let fams: [&dyn FunctionFamily; 3] =
            [&PowerFamily::new(Complex::from_rational(&rat(1, 2), w)), &LogFamily, &ReciprocalFamily];
        for f in fams {
            assert_eq!(f.derivative(0, &t, w).unwrap(), f.value(&t, w).unwrap());
        }
    }

    #[test]
    fn antiderivative_is_additive() {
        let w = p().working();
        let (a, b, c) = (Real::from_u64(2, w), Real::from_rational(&rat(9, 2), w), Real::from_u64(11, w));
        let m = Complex::new(Real::from_rational(&rat(-3, 2), w), Real::from_u64(2, w));
        let fams: [&dyn FunctionFamily; 4] =
            [&PowerFamily::new(m), &PowerFamily::new(Complex::from_i64(-1, w)), &LogFamily, &ReciprocalFamily];
        for f in fams {
            let whole = f.antiderivative(&a, &c, w).unwrap();
            let parts = &f.antiderivative(&a, &b, w).unwrap() + &f.antiderivative(&b, &c, w).unwrap();
            assert!(close(&whole, &parts, -125), "{}", f.name());
        }
    }

    #[test]
    fn constant_of_reciprocal_is_gamma() {
        let c = constant_cf(&ReciprocalFamily, SummationKind::EulerMaclaurin, 0, p(), 200).unwrap();
        assert!(close(&c, &Complex::from_real(euler_gamma(p())), -120));
    }

    #[test]
    fn constant_independent_of_a() {
        let c0 = constant_cf(&LogFamily, SummationKind::EulerMaclaurin, 0, p(), 200).unwrap();
        let c4 = constant_cf(&LogFamily, SummationKind::EulerMaclaurin, 4, p(), 200).unwrap();
        assert!(close(&c0, &c4, -112));
    }

    #[test]
    fn power_constants() {
        let w = p().working();
        let m = Complex::from_rational(&rat(1, 2), w);
        let f = PowerFamily::new(m.clone());
        let c = constant_cf(&f, SummationKind::EulerMaclaurin, 1, p(), 200).unwrap();
        let expect = &riemann_zeta(&-&m, p()).unwrap() + &Complex::from_rational(&rat(2, 3), w);
        assert!(close(&c, &expect, -118));
        let c = constant_cf(&f, SummationKind::Boole, 1, p(), 200).unwrap();
        let eta = crate::special::dirichlet_eta(&-&m, p()).unwrap();
        assert!(close(&c, &eta, -118));
    }

    #[test]
    fn matches_dedicated_sums() {
        let w = p().working();
        let m = Complex::from_rational(&rat(1, 3), w);
        let x = parse_decimal("13.25").unwrap();
        let q = SumQuery::new(Exponent::Approx(m.clone()), x.clone()).with_precision(p()).with_a(2);
        let em = em_convergent_sum(&PowerFamily::new(m), &q).unwrap();
        assert!(close(&em.value, &power_sum(&q).unwrap().value, -108));

        let q = SumQuery::at(parse_decimal("9.5").unwrap()).with_precision(p()).with_a(2);
        assert!(close(&em_convergent_sum(&LogFamily, &q).unwrap().value, &log_sum(&q).unwrap().value, -108));
        let q = SumQuery::at(rat(20, 1)).with_precision(p()).with_a(3);
        assert!(close(
            &em_convergent_sum(&ReciprocalFamily, &q).unwrap().value,
            &harmonic_sum(&q).unwrap().value,
            -108
        ));
    }

    struct Limited {
        calls: Cell<usize>,
    }

    impl FunctionFamily for Limited {
        fn name(&self) -> &'static str {
            "limited"
        }
        fn derivative(&self, j: usize, t: &Real, prec: u32) -> Result<Complex> {
            self.calls.set(self.calls.get().max(j));
            ReciprocalFamily.derivative(j, t, prec)
        }
        fn antiderivative(&self, t0: &Real, t1: &Real, prec: u32) -> Result<Complex> {
            ReciprocalFamily.antiderivative(t0, t1, prec)
        }
        fn max_order(&self) -> usize {
            5
        }
    }

    #[test]
    fn order_exhaustion() {
        let f = Limited { calls: Cell::new(0) };
        let q = SumQuery::at(rat(20, 1)).with_precision(p()).with_a(1);
        assert_eq!(em_convergent_sum(&f, &q).unwrap_err(), Error::OrderExhausted { needed: 6, available: 5 });
        assert!(f.calls.get() <= 5);
    }
}
