use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Largest binary exponent magnitude a value may carry before it is reported as overflow.
pub const MAX_EXPONENT: i64 = 1 << 40;

/// Binary floating-point number `(-1)^neg * mant * 2^exp` with a precision attached.
///
/// The mantissa is kept odd (or zero), so each value has exactly one representation and
/// equality is value equality regardless of the precision tag.
#[derive(Clone)]
pub struct Real {
    neg: bool,
    mant: BigUint,
    exp: i64,
    prec: u32,
}

impl Real {
    pub fn zero(prec: u32) -> Self {
        Real { neg: false, mant: BigUint::zero(), exp: 0, prec }
    }

    pub fn one(prec: u32) -> Self {
        Real { neg: false, mant: BigUint::one(), exp: 0, prec }
    }

    /// Rounds `(-1)^neg * mant * 2^exp` to `prec` bits, ties to even.
    pub(crate) fn from_parts(neg: bool, mant: BigUint, exp: i64, prec: u32) -> Self {
        if mant.is_zero() {
            return Real::zero(prec);
        }
        let mut mant = mant;
        let mut exp = exp;
        let bits = mant.bits();
        if bits > prec as u64 {
            let excess = bits - prec as u64;
            let tz = mant.trailing_zeros().unwrap_or(0);
            let half = mant.bit(excess - 1);
            let sticky = tz < excess - 1;
            let mut q = mant >> excess;
            if half && (sticky || q.bit(0)) {
                q += 1u32;
            }
            mant = q;
            exp += excess as i64;
        }
        let tz = mant.trailing_zeros().unwrap_or(0);
        if tz > 0 {
            mant >>= tz;
            exp += tz as i64;
        }
        Real { neg, mant, exp, prec }
    }

    pub fn from_bigint(v: &BigInt, prec: u32) -> Self {
        Real::from_parts(v.sign() == Sign::Minus, v.magnitude().clone(), 0, prec)
    }

    pub fn from_i64(v: i64, prec: u32) -> Self {
        Real::from_parts(v < 0, BigUint::from(v.unsigned_abs()), 0, prec)
    }

    pub fn from_u64(v: u64, prec: u32) -> Self {
        Real::from_parts(false, BigUint::from(v), 0, prec)
    }

    /// Correctly rounded conversion of an exact rational.
    pub fn from_rational(r: &BigRational, prec: u32) -> Self {
        let n = Real::exact_int(r.numer());
        let d = Real::exact_int(r.denom());
        n.div_prec(&d, prec)
    }

    fn exact_int(v: &BigInt) -> Self {
        let bits = v.bits().max(1) as u32;
        Real::from_bigint(v, bits)
    }

    /// Exact conversion of a finite `f64`; `None` for NaN or infinity.
    pub fn from_f64(v: f64, prec: u32) -> Option<Self> {
        if !v.is_finite() {
            return None;
        }
        if v == 0.0 {
            return Some(Real::zero(prec));
        }
        let bits = v.to_bits();
        let neg = bits >> 63 == 1;
        let biased = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (mant, exp) = if biased == 0 { (frac, -1074) } else { (frac | (1u64 << 52), biased - 1075) };
        Some(Real::from_parts(neg, BigUint::from(mant), exp, prec.max(53)).with_prec(prec))
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    /// Same value rounded (or re-tagged) to `prec` bits.
    pub fn with_prec(&self, prec: u32) -> Self {
        if self.mant.bits() <= prec as u64 {
            let mut r = self.clone();
            r.prec = prec;
            r
        } else {
            Real::from_parts(self.neg, self.mant.clone(), self.exp, prec)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.neg && !self.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        !self.neg && !self.is_zero()
    }

    pub fn abs(&self) -> Self {
        let mut r = self.clone();
        r.neg = false;
        r
    }

    /// `e` with `2^e <= |self| < 2^(e+1)`; `None` for zero.
    pub fn magnitude_exp(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.exp + self.mant.bits() as i64 - 1)
        }
    }

    pub(crate) fn mantissa(&self) -> &BigUint {
        &self.mant
    }

    pub(crate) fn exponent(&self) -> i64 {
        self.exp
    }

    pub(crate) fn sign_negative(&self) -> bool {
        self.neg
    }

    /// Multiplies by `2^k` exactly.
    pub fn mul_pow2(&self, k: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut r = self.clone();
        r.exp += k;
        r
    }

    pub fn check_range(self) -> Result<Self> {
        match self.magnitude_exp() {
            Some(e) if e.abs() > MAX_EXPONENT => Err(Error::Overflow),
            _ => Ok(self),
        }
    }

    pub(crate) fn add_prec(&self, other: &Real, negate_other: bool, prec: u32) -> Real {
        let other_neg = other.neg ^ negate_other;
        if other.is_zero() {
            return self.with_prec(prec);
        }
        if self.is_zero() {
            let mut r = other.with_prec(prec);
            r.neg = other_neg;
            return r;
        }
        let top_a = self.exp + self.mant.bits() as i64;
        let top_b = other.exp + other.mant.bits() as i64;
        let width = (prec as u64).max(self.mant.bits()).max(other.mant.bits());
        let gap = width as i64 + 3;
        // Operand far below the rounding position: fold it in as a sticky bit.
        if top_a - gap > top_b {
            return Real::sticky_sum(self.neg, &self.mant, self.exp, top_a - gap, other_neg, prec);
        }
        if top_b - gap > top_a {
            return Real::sticky_sum(other_neg, &other.mant, other.exp, top_b - gap, self.neg, prec);
        }
        let e = self.exp.min(other.exp);
        let ma = &self.mant << (self.exp - e) as u64;
        let mb = &other.mant << (other.exp - e) as u64;
        if self.neg == other_neg {
            Real::from_parts(self.neg, ma + mb, e, prec)
        } else {
            match ma.cmp(&mb) {
                Ordering::Greater => Real::from_parts(self.neg, ma - mb, e, prec),
                Ordering::Less => Real::from_parts(other_neg, mb - ma, e, prec),
                Ordering::Equal => Real::zero(prec),
            }
        }
    }

    fn sticky_sum(neg: bool, mant: &BigUint, exp: i64, floor: i64, small_neg: bool, prec: u32) -> Real {
        // Represent the big operand at exponent floor-1 and nudge it by one unit there.
        let e = exp.min(floor - 1);
        let m = mant << (exp - e) as u64;
        let m = if neg == small_neg { (m << 1u32) + 1u32 } else { (m << 1u32) - 1u32 };
        Real::from_parts(neg, m, e - 1, prec)
    }

    pub(crate) fn mul_prec(&self, other: &Real, prec: u32) -> Real {
        if self.is_zero() || other.is_zero() {
            return Real::zero(prec);
        }
        Real::from_parts(self.neg ^ other.neg, &self.mant * &other.mant, self.exp + other.exp, prec)
    }

    /// Division rounded to `prec` bits. Panics on division by zero.
    pub(crate) fn div_prec(&self, other: &Real, prec: u32) -> Real {
        assert!(!other.is_zero(), "division by zero");
        if self.is_zero() {
            return Real::zero(prec);
        }
        let shift = (prec as i64 + 2 + other.mant.bits() as i64 - self.mant.bits() as i64).max(0);
        let num = &self.mant << shift as u64;
        let (q, r) = num.div_rem(&other.mant);
        let mut exp = self.exp - other.exp - shift;
        let q = if r.is_zero() {
            q
        } else {
            exp -= 1;
            (q << 1u32) + 1u32
        };
        Real::from_parts(self.neg ^ other.neg, q, exp, prec)
    }

    /// Square root rounded to `prec` bits.
    pub fn sqrt_prec(&self, prec: u32) -> Result<Real> {
        if self.is_negative() {
            return Err(Error::invalid("square root of a negative number"));
        }
        if self.is_zero() {
            return Ok(Real::zero(prec));
        }
        let want = 2 * (prec as i64 + 2) + 2;
        let mut s = (want - self.mant.bits() as i64).max(0);
        if (self.exp - s).rem_euclid(2) != 0 {
            s += 1;
        }
        let n = &self.mant << s as u64;
        let root = n.sqrt();
        let half_exp = (self.exp - s) / 2;
        if &root * &root == n {
            Ok(Real::from_parts(false, root, half_exp, prec))
        } else {
            Ok(Real::from_parts(false, (root << 1u32) + 1u32, half_exp - 1, prec))
        }
    }

    pub fn sqrt(&self) -> Result<Real> {
        self.sqrt_prec(self.prec)
    }

    pub fn recip(&self) -> Real {
        Real::one(self.prec).div_prec(self, self.prec)
    }

    /// Integer power by repeated squaring.
    pub fn powi(&self, n: i64) -> Real {
        let prec = self.prec;
        let work = prec + 2 * (64 - n.unsigned_abs().leading_zeros()) + 8;
        let mut base = self.with_prec(work);
        let mut acc = Real::one(work);
        let mut e = n.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_prec(&base, work);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_prec(&base, work);
            }
        }
        if n < 0 {
            Real::one(work).div_prec(&acc, prec)
        } else {
            acc.with_prec(prec)
        }
    }

    /// Largest integer not above the value.
    pub fn floor(&self) -> BigInt {
        if self.is_zero() {
            return BigInt::zero();
        }
        if self.exp >= 0 {
            let m = BigInt::from(&self.mant << self.exp as u64);
            return if self.neg { -m } else { m };
        }
        let sh = (-self.exp) as u64;
        let q = BigInt::from(&self.mant >> sh);
        if self.neg {
            // mant is odd, so a negative exponent always drops a nonzero fraction
            -q - 1
        } else {
            q
        }
    }

    /// Nearest integer, ties to even.
    pub fn round(&self) -> BigInt {
        if self.exp >= 0 {
            return self.floor();
        }
        let keep = (self.exp + self.mant.bits() as i64).max(0) as u32;
        if keep == 0 {
            // |x| < 1: only |x| > 1/2 rounds away from zero
            let half = Real::from_parts(false, BigUint::one(), -1, 2);
            return if self.abs().cmp_abs(&half) == Ordering::Greater {
                if self.neg {
                    BigInt::from(-1)
                } else {
                    BigInt::one()
                }
            } else {
                BigInt::zero()
            };
        }
        let rounded = Real::from_parts(self.neg, self.mant.clone(), self.exp, keep);
        let mag = BigInt::from(&rounded.mant << rounded.exp.max(0) as u64);
        if rounded.neg {
            -mag
        } else {
            mag
        }
    }

    /// Exact rational value.
    pub fn to_rational(&self) -> BigRational {
        if self.is_zero() {
            return BigRational::zero();
        }
        let m = BigInt::from(self.mant.clone());
        let m = if self.neg { -m } else { m };
        if self.exp >= 0 {
            BigRational::from_integer(m << self.exp as u64)
        } else {
            BigRational::new(m, BigInt::one() << (-self.exp) as u64)
        }
    }

    /// Nearest `f64`; saturates to infinity or zero outside its range.
    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let r = Real::from_parts(self.neg, self.mant.clone(), self.exp, 53);
        let m = r.mant.to_u64().unwrap_or(0) as f64;
        let e = r.exp.clamp(-2000, 2000) as i32;
        let v = libm::ldexp(m, e);
        if r.neg {
            -v
        } else {
            v
        }
    }

    pub fn cmp_abs(&self, other: &Real) -> Ordering {
        match (self.is_zero(), other.is_zero()) {
            (true, true) => return Ordering::Equal,
            (true, false) => return Ordering::Less,
            (false, true) => return Ordering::Greater,
            _ => {}
        }
        let ta = self.exp + self.mant.bits() as i64;
        let tb = other.exp + other.mant.bits() as i64;
        if ta != tb {
            return ta.cmp(&tb);
        }
        let e = self.exp.min(other.exp);
        let ma = &self.mant << (self.exp - e) as u64;
        let mb = &other.mant << (other.exp - e) as u64;
        ma.cmp(&mb)
    }

    pub fn max_abs<'a>(&'a self, other: &'a Real) -> &'a Real {
        if self.cmp_abs(other) == Ordering::Less {
            other
        } else {
            self
        }
    }

    pub fn signum(&self) -> i32 {
        if self.is_zero() {
            0
        } else if self.neg {
            -1
        } else {
            1
        }
    }

    /// Rounds up in magnitude to `prec` bits. Used where bounds must not shrink.
    pub fn round_up_abs(&self, prec: u32) -> Real {
        if self.mant.bits() <= prec as u64 {
            return self.abs().with_prec(prec);
        }
        let excess = self.mant.bits() - prec as u64;
        let q = (&self.mant >> excess) + 1u32;
        Real::from_parts(false, q, self.exp + excess as i64, prec + 1)
    }
}

impl PartialEq for Real {
    fn eq(&self, other: &Self) -> bool {
        self.neg == other.neg && self.mant == other.mant && self.exp == other.exp || self.is_zero() && other.is_zero()
    }
}

impl Eq for Real {}

impl PartialOrd for Real {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Real {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.signum(), other.signum()) {
            (a, b) if a != b => a.cmp(&b),
            (0, _) => Ordering::Equal,
            (1, _) => self.cmp_abs(other),
            _ => other.cmp_abs(self),
        }
    }
}

impl fmt::Debug for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Real({})", self.to_sci_string(20))
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().unwrap_or_else(|| super::digits_for_bits(self.prec));
        f.write_str(&self.to_sci_string(digits))
    }
}

impl Neg for Real {
    type Output = Real;
    fn neg(mut self) -> Real {
        if !self.is_zero() {
            self.neg = !self.neg;
        }
        self
    }
}

impl Neg for &Real {
    type Output = Real;
    fn neg(self) -> Real {
        -self.clone()
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, |$a:ident, $b:ident, $p:ident| $body:expr) => {
        impl $trait<&Real> for &Real {
            type Output = Real;
            fn $method(self, rhs: &Real) -> Real {
                let ($a, $b, $p) = (self, rhs, self.prec.max(rhs.prec));
                $body
            }
        }
        impl $trait<Real> for Real {
            type Output = Real;
            fn $method(self, rhs: Real) -> Real {
                $trait::$method(&self, &rhs)
            }
        }
        impl $trait<&Real> for Real {
            type Output = Real;
            fn $method(self, rhs: &Real) -> Real {
                $trait::$method(&self, rhs)
            }
        }
        impl $trait<Real> for &Real {
            type Output = Real;
            fn $method(self, rhs: Real) -> Real {
                $trait::$method(self, &rhs)
            }
        }
    };
}

binop!(Add, add, |a, b, p| a.add_prec(b, false, p));
binop!(Sub, sub, |a, b, p| a.add_prec(b, true, p));
binop!(Mul, mul, |a, b, p| a.mul_prec(b, p));
binop!(Div, div, |a, b, p| a.div_prec(b, p));

impl AddAssign<&Real> for Real {
    fn add_assign(&mut self, rhs: &Real) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Real> for Real {
    fn sub_assign(&mut self, rhs: &Real) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&Real> for Real {
    fn mul_assign(&mut self, rhs: &Real) {
        *self = &*self * rhs;
    }
}
