use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::elementary::{atan2, exp, ln, sin_cos};
use super::Real;
use crate::error::{Error, Result};

/// Complex number with [`Real`] components.
#[derive(Clone, PartialEq, Eq)]
pub struct Complex {
    pub re: Real,
    pub im: Real,
}

impl Complex {
    pub fn new(re: Real, im: Real) -> Self {
        Complex { re, im }
    }

    pub fn from_real(re: Real) -> Self {
        let p = re.prec();
        Complex { re, im: Real::zero(p) }
    }

    pub fn zero(prec: u32) -> Self {
        Complex::from_real(Real::zero(prec))
    }

    pub fn one(prec: u32) -> Self {
        Complex::from_real(Real::one(prec))
    }

    pub fn i(prec: u32) -> Self {
        Complex::new(Real::zero(prec), Real::one(prec))
    }

    pub fn from_i64(v: i64, prec: u32) -> Self {
        Complex::from_real(Real::from_i64(v, prec))
    }

    pub fn from_rational(r: &BigRational, prec: u32) -> Self {
        Complex::from_real(Real::from_rational(r, prec))
    }

    pub fn from_f64(re: f64, im: f64, prec: u32) -> Option<Self> {
        Some(Complex::new(Real::from_f64(re, prec)?, Real::from_f64(im, prec)?))
    }

    pub fn prec(&self) -> u32 {
        self.re.prec().max(self.im.prec())
    }

    pub fn with_prec(&self, prec: u32) -> Self {
        Complex::new(self.re.with_prec(prec), self.im.with_prec(prec))
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// `Some(n)` when the value is exactly a (small) real integer.
    pub fn as_integer(&self) -> Option<i64> {
        if !self.im.is_zero() {
            return None;
        }
        if self.re.is_zero() {
            return Some(0);
        }
        if self.re.exponent() < 0 {
            return None;
        }
        self.re.floor().to_i64()
    }

    pub fn conj(&self) -> Self {
        Complex::new(self.re.clone(), -&self.im)
    }

    pub fn scale(&self, k: &Real) -> Self {
        Complex::new(&self.re * k, &self.im * k)
    }

    pub fn mul_pow2(&self, k: i64) -> Self {
        Complex::new(self.re.mul_pow2(k), self.im.mul_pow2(k))
    }

    pub fn norm_sqr(&self) -> Real {
        let p = self.prec();
        let w = p + 4;
        self.re.mul_prec(&self.re, w).add_prec(&self.im.mul_prec(&self.im, w), false, p)
    }

    pub fn abs(&self) -> Real {
        if self.im.is_zero() {
            return self.re.abs();
        }
        if self.re.is_zero() {
            return self.im.abs();
        }
        let p = self.prec();
        let w = p + 4;
        let n = self.re.mul_prec(&self.re, w).add_prec(&self.im.mul_prec(&self.im, w), false, w);
        n.sqrt_prec(p).expect("norm is non-negative")
    }

    /// Principal argument in `(-pi, pi]`.
    pub fn arg(&self) -> Real {
        atan2(&self.im, &self.re, self.prec())
    }

    pub fn recip(&self) -> Self {
        Complex::one(self.prec()) / self
    }

    /// `f64` approximation of `|z|`, saturating.
    pub fn abs_f64(&self) -> f64 {
        libm::hypot(self.re.to_f64(), self.im.to_f64())
    }

    pub fn exp(&self) -> Result<Self> {
        let p = self.prec();
        let w = p + 8;
        let e = exp(&self.re, w)?;
        if self.im.is_zero() {
            return Ok(Complex::from_real(e.with_prec(p)));
        }
        let (s, c) = sin_cos(&self.im, w)?;
        Ok(Complex::new(e.mul_prec(&c, p), e.mul_prec(&s, p)))
    }

    /// Principal logarithm.
    pub fn ln(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::invalid("logarithm of zero"));
        }
        let p = self.prec();
        if self.im.is_zero() && self.re.is_positive() {
            return Ok(Complex::from_real(ln(&self.re, p)?));
        }
        let w = p + 8;
        let n = self.re.mul_prec(&self.re, 2 * w).add_prec(&self.im.mul_prec(&self.im, 2 * w), false, 2 * w);
        let re = ln(&n, w)?.mul_pow2(-1).with_prec(p);
        Ok(Complex::new(re, self.arg()))
    }

    /// Principal power `exp(w ln z)`; `0^w = 0` for `Re w > 0`.
    pub fn pow(&self, w: &Complex) -> Result<Self> {
        let p = self.prec().max(w.prec());
        if w.is_zero() {
            return Ok(Complex::one(p));
        }
        if self.is_zero() {
            return if w.re.is_positive() {
                Ok(Complex::zero(p))
            } else {
                Err(Error::invalid("zero raised to a power with non-positive real part"))
            };
        }
        if self.im.is_zero() && self.re.is_positive() {
            return complex_pow(&self.re, w, p);
        }
        if let Some(n) = w.as_integer() {
            if n.unsigned_abs() <= 1 << 16 {
                return Ok(self.powi(n));
            }
        }
        let guard = exponent_guard(self.abs_f64(), w);
        let l = self.with_prec(p + guard).ln()?;
        (w.with_prec(p + guard) * l).exp().map(|v| v.with_prec(p))
    }

    pub fn powi(&self, n: i64) -> Self {
        let p = self.prec();
        let work = p + 2 * (64 - n.unsigned_abs().leading_zeros()) + 8;
        let mut base = self.with_prec(work);
        let mut acc = Complex::one(work);
        let mut e = n.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        if n < 0 {
            acc = acc.recip();
        }
        acc.with_prec(p)
    }

    pub fn to_sci_string(&self, digits: usize) -> alloc::string::String {
        let mut s = self.re.to_sci_string(digits);
        if !self.im.is_zero() {
            if !self.im.is_negative() {
                s.push('+');
            }
            s.push_str(&self.im.to_sci_string(digits));
            s.push('i');
        }
        s
    }
}

/// Extra working bits so that `exp(w ln |z|)` keeps its relative accuracy.
fn exponent_guard(abs_z: f64, w: &Complex) -> u32 {
    let l = libm::log(abs_z).abs() + core::f64::consts::PI;
    let t = l * w.abs_f64();
    16 + if t > 1.0 { libm::ceil(libm::log2(t)) as u32 } else { 0 }
}

/// `x^m = exp(m ln x)` for real `x > 0` and complex `m`, rounded to `prec` bits.
pub fn complex_pow(x: &Real, m: &Complex, prec: u32) -> Result<Complex> {
    if !x.is_positive() {
        return Err(Error::invalid("complex_pow needs a positive base"));
    }
    if m.is_zero() {
        return Ok(Complex::one(prec));
    }
    if m.im.is_zero() {
        // Integer and half-integer exponents go through exact-ish kernels.
        if let Some(n) = m.as_integer() {
            if n.unsigned_abs() <= 1 << 16 {
                return Ok(Complex::from_real(x.with_prec(prec + 8).powi(n).with_prec(prec)));
            }
        }
        let twice = m.re.mul_pow2(1);
        if let Some(n) = Complex::from_real(twice).as_integer() {
            if n.unsigned_abs() <= 1 << 16 {
                let w = prec + 12;
                let root = x.with_prec(w).sqrt_prec(w)?;
                return Ok(Complex::from_real(root.powi(n).with_prec(prec)));
            }
        }
    }
    let guard = exponent_guard(x.to_f64(), m);
    let w = prec + guard;
    let lx = ln(x, w)?;
    if m.im.is_zero() {
        return Ok(Complex::from_real(exp(&m.re.mul_prec(&lx, w), prec)?));
    }
    let t = Complex::new(m.re.mul_prec(&lx, w), m.im.mul_prec(&lx, w));
    t.exp().map(|v| v.with_prec(prec))
}

/// Generalized binomial coefficient `z (z-1) ... (z-k+1) / k!` for complex `z`.
pub fn binomial_upper_complex(z: &Complex, k: u64, prec: u32) -> Complex {
    if k == 0 {
        return Complex::one(prec);
    }
    if let Some(n) = z.as_integer() {
        if n >= 0 && (n as u64) < k {
            return Complex::zero(prec);
        }
    }
    let w = prec + 2 * (64 - k.leading_zeros()) + 8;
    let z = z.with_prec(w);
    let mut acc = Complex::one(w);
    let mut fact = BigInt::one();
    for j in 0..k {
        let factor = Complex::new(&z.re - &Real::from_u64(j, w), z.im.clone());
        acc = &acc * &factor;
        fact *= j + 1;
    }
    let f = Real::from_bigint(&fact, w);
    Complex::new(acc.re.div_prec(&f, prec), acc.im.div_prec(&f, prec))
}

/// Successive binomial coefficients `C(top, 1), C(top, 2), ...` for complex `top`.
#[derive(Clone, Debug)]
pub struct BinomialSequence {
    top: Complex,
    cur: Complex,
    k: u64,
    prec: u32,
}

impl BinomialSequence {
    pub fn new(top: &Complex, prec: u32) -> Self {
        BinomialSequence { top: top.with_prec(prec + 16), cur: Complex::one(prec + 16), k: 0, prec }
    }

    /// Index of the coefficient returned by the last call to [`BinomialSequence::advance`].
    pub fn index(&self) -> u64 {
        self.k
    }

    /// Steps from `C(top, k)` to `C(top, k+1)` and returns it.
    pub fn advance(&mut self) -> Complex {
        let w = self.prec + 16;
        let factor = Complex::new(self.top.re.add_prec(&Real::from_u64(self.k, 64), true, w), self.top.im.clone());
        self.k += 1;
        let num = &self.cur * &factor;
        let d = Real::from_u64(self.k, 64);
        self.cur = Complex::new(num.re.div_prec(&d, w), num.im.div_prec(&d, w));
        self.cur.with_prec(self.prec)
    }
}

impl fmt::Debug for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Complex({})", self.to_sci_string(20))
    }
}

impl fmt::Display for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().unwrap_or_else(|| super::digits_for_bits(self.prec()));
        f.write_str(&self.to_sci_string(digits))
    }
}

impl Neg for Complex {
    type Output = Complex;
    fn neg(self) -> Complex {
        Complex::new(-self.re, -self.im)
    }
}

impl Neg for &Complex {
    type Output = Complex;
    fn neg(self) -> Complex {
        -self.clone()
    }
}

fn add_c(a: &Complex, b: &Complex, negate: bool) -> Complex {
    let p = a.prec().max(b.prec());
    Complex::new(a.re.add_prec(&b.re, negate, p), a.im.add_prec(&b.im, negate, p))
}

fn mul_c(a: &Complex, b: &Complex) -> Complex {
    let p = a.prec().max(b.prec());
    if a.im.is_zero() && b.im.is_zero() {
        return Complex::from_real(a.re.mul_prec(&b.re, p));
    }
    if b.im.is_zero() {
        return Complex::new(a.re.mul_prec(&b.re, p), a.im.mul_prec(&b.re, p));
    }
    if a.im.is_zero() {
        return Complex::new(a.re.mul_prec(&b.re, p), a.re.mul_prec(&b.im, p));
    }
    // Products are exact, so each component is rounded once.
    let exact = u32::MAX / 4;
    let rr = a.re.mul_prec(&b.re, exact);
    let ii = a.im.mul_prec(&b.im, exact);
    let ri = a.re.mul_prec(&b.im, exact);
    let ir = a.im.mul_prec(&b.re, exact);
    Complex::new(rr.add_prec(&ii, true, p), ri.add_prec(&ir, false, p))
}

fn div_c(a: &Complex, b: &Complex) -> Complex {
    let p = a.prec().max(b.prec());
    if b.im.is_zero() {
        return Complex::new(a.re.div_prec(&b.re, p), a.im.div_prec(&b.re, p));
    }
    let w = p + 8;
    let num = mul_c(&a.with_prec(w), &b.conj().with_prec(w));
    let den = b.with_prec(w).norm_sqr();
    Complex::new(num.re.div_prec(&den, p), num.im.div_prec(&den, p))
}

macro_rules! complex_binop {
    ($trait:ident, $method:ident, $f:expr) => {
        impl $trait<&Complex> for &Complex {
            type Output = Complex;
            fn $method(self, rhs: &Complex) -> Complex {
                $f(self, rhs)
            }
        }
        impl $trait<Complex> for Complex {
            type Output = Complex;
            fn $method(self, rhs: Complex) -> Complex {
                $f(&self, &rhs)
            }
        }
        impl $trait<&Complex> for Complex {
            type Output = Complex;
            fn $method(self, rhs: &Complex) -> Complex {
                $f(&self, rhs)
            }
        }
        impl $trait<Complex> for &Complex {
            type Output = Complex;
            fn $method(self, rhs: Complex) -> Complex {
                $f(self, &rhs)
            }
        }
    };
}

complex_binop!(Add, add, |a, b| add_c(a, b, false));
complex_binop!(Sub, sub, |a, b| add_c(a, b, true));
complex_binop!(Mul, mul, mul_c);
complex_binop!(Div, div, div_c);

impl Zero for Complex {
    fn zero() -> Self {
        Complex::zero(64)
    }
    fn is_zero(&self) -> bool {
        Complex::is_zero(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex {
        Complex::from_f64(re, im, 80).unwrap()
    }

    #[test]
    fn pow_special_cases() {
        let four = Real::from_i64(4, 64);
        let half = Complex::from_f64(0.5, 0.0, 64).unwrap();
        assert_eq!(complex_pow(&four, &half, 64).unwrap(), Complex::from_i64(2, 64));
        assert_eq!(complex_pow(&four, &Complex::zero(64), 64).unwrap(), Complex::one(64));
        let two = Real::from_i64(2, 64);
        let v = complex_pow(&two, &Complex::i(64), 64).unwrap();
        let l2 = core::f64::consts::LN_2;
        assert!((v.re.to_f64() - libm::cos(l2)).abs() < 1e-16);
        assert!((v.im.to_f64() - libm::sin(l2)).abs() < 1e-16);
    }

    #[test]
    fn complex_field_ops() {
        let a = c(1.5, -2.0);
        let b = c(-0.25, 3.0);
        let q = &(&a * &b) / &b;
        assert!((q.re.to_f64() - 1.5).abs() < 1e-20 && (q.im.to_f64() + 2.0).abs() < 1e-20);
        let l = a.ln().unwrap().exp().unwrap();
        assert!((&l - &a).abs().to_f64() < 1e-20);
    }

    #[test]
    fn binomial_examples() {
        let z = c(1.5, 0.0);
        let b = binomial_upper_complex(&z, 2, 64);
        assert_eq!(b.re.to_f64(), 0.375);
        assert!(binomial_upper_complex(&c(3.0, 0.0), 5, 64).is_zero());
        assert_eq!(binomial_upper_complex(&c(0.3, 1.0), 0, 64), Complex::one(64));
    }

    #[test]
    fn formatting() {
        assert_eq!(c(1.5, 0.0).to_sci_string(3), "1.50e0");
        assert_eq!(c(1.5, -0.25).to_sci_string(2), "1.5e0-2.5e-1i");
        assert_eq!(c(-1e-7, 2.0).to_sci_string(1), "-1e-7+2e0i");
    }
}
