use alloc::string::{String, ToString};

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;

use super::Real;

fn round_half_even(num: &BigUint, den: &BigUint) -> BigUint {
    let (q, r) = num.div_rem(den);
    let twice = &r << 1u32;
    if twice > *den || (twice == *den && q.bit(0)) {
        q + 1u32
    } else {
        q
    }
}

impl Real {
    /// Scientific notation with exactly `digits` significant digits, ties to even,
    /// e.g. `1.250e-3`. Zero prints as `0.000e0`.
    pub fn to_sci_string(&self, digits: usize) -> String {
        let digits = digits.max(1);
        let mut out = String::new();
        if self.is_negative() {
            out.push('-');
        }
        if self.is_zero() {
            out.push('0');
            if digits > 1 {
                out.push('.');
                out.extend(core::iter::repeat('0').take(digits - 1));
            }
            out.push_str("e0");
            return out;
        }
        let (mut num, mut den) = (self.mantissa().clone(), BigUint::one());
        if self.exponent() >= 0 {
            num <<= self.exponent() as u64;
        } else {
            den <<= (-self.exponent()) as u64;
        }
        let e2 = self.magnitude_exp().unwrap_or(0);
        let mut d = libm::floor(e2 as f64 * core::f64::consts::LOG10_2) as i64;
        let ten = BigUint::from(10u32);
        let lo = ten.pow(digits as u32 - 1);
        let hi = &lo * &ten;
        let n = loop {
            let q = digits as i64 - 1 - d;
            let scale = ten.pow(q.unsigned_abs() as u32);
            let n =
                if q >= 0 { round_half_even(&(&num * &scale), &den) } else { round_half_even(&num, &(&den * &scale)) };
            if n >= hi {
                d += 1;
            } else if n < lo {
                d -= 1;
            } else {
                break n;
            }
        };
        let s = n.to_string();
        out.push_str(&s[..1]);
        if digits > 1 {
            out.push('.');
            out.push_str(&s[1..]);
        }
        out.push('e');
        out.push_str(&d.to_string());
        out
    }
}

/// Decimal digits resolved by `bits` binary digits.
pub fn digits_for_bits(bits: u32) -> usize {
    libm::floor(bits as f64 * core::f64::consts::LOG10_2) as usize
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(v: f64) -> Real {
        Real::from_f64(v, 53).unwrap()
    }

    #[test]
    fn matches_rust_exponent_style() {
        assert_eq!(r(1.5e-7).to_sci_string(2), "1.5e-7");
        assert_eq!(r(123.0).to_sci_string(3), "1.23e2");
        assert_eq!(r(-0.5).to_sci_string(1), "-5e-1");
        assert_eq!(r(0.0).to_sci_string(3), "0.00e0");
        assert_eq!(r(9.96).to_sci_string(2), "1.0e1");
    }

    #[test]
    fn ties_go_to_even() {
        assert_eq!(r(0.125).to_sci_string(2), "1.2e-1");
        assert_eq!(r(0.375).to_sci_string(2), "3.8e-1");
        assert_eq!(r(2.5).to_sci_string(1), "2e0");
    }

    #[test]
    fn agrees_with_core_formatting() {
        for v in [core::f64::consts::PI, 6.02214076e23, 1.0 / 3.0, 1e-300, 7.0] {
            let ours = r(v).to_sci_string(12);
            let theirs = alloc::format!("{:.11e}", v);
            assert_eq!(ours, theirs);
        }
    }
}
