use faulsum_core::exact::{parse_decimal, BigRational};
use faulsum_core::faulhaber::{ArgumentShift, Exponent, Variant};
use faulsum_core::mp::{Complex, Real};

/// A command-line value that could not be parsed, tagged with its flag.
#[derive(Debug)]
pub struct UsageError {
    pub flag: &'static str,
    pub message: String,
}

impl UsageError {
    pub fn new(flag: &'static str, message: impl Into<String>) -> Self {
        UsageError { flag, message: message.into() }
    }
}

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "invalid value for --{}: {}", self.flag, self.message)
    }
}

/// Real and imaginary parts of `a`, `bi`, `a+bi` or `a-bi`, plus whether the token was
/// written as an integer or `p/q` rational.
#[derive(Debug, Clone, PartialEq)]
pub struct ParsedComplex {
    pub re: BigRational,
    pub im: BigRational,
    pub rational_syntax: bool,
}

fn split_complex(s: &str) -> (&str, Option<&str>) {
    let Some(body) = s.strip_suffix('i') else {
        return (s, None);
    };
    let bytes = body.as_bytes();
    let cut = (1..bytes.len()).rev().find(|&i| matches!(bytes[i], b'+' | b'-') && !matches!(bytes[i - 1], b'e' | b'E'));
    match cut {
        Some(i) => (&body[..i], Some(&body[i..])),
        None => ("", Some(body)),
    }
}

fn is_rational_token(t: &str) -> bool {
    let t = t.trim_start_matches(['+', '-']);
    !t.is_empty() && t.chars().all(|c| c.is_ascii_digit() || c == '/')
}

pub fn parse_complex(flag: &'static str, s: &str) -> Result<ParsedComplex, UsageError> {
    let s = s.trim();
    let bad = |e: faulsum_core::Error| UsageError::new(flag, e.to_string());
    let (re_tok, im_tok) = split_complex(s);
    let re =
        if re_tok.is_empty() { BigRational::from_integer(0.into()) } else { parse_decimal(re_tok).map_err(bad)? };
    let im = match im_tok {
        None => BigRational::from_integer(0.into()),
        Some("" | "+") => BigRational::from_integer(1.into()),
        Some("-") => BigRational::from_integer((-1).into()),
        Some(t) => parse_decimal(t).map_err(bad)?,
    };
    if re_tok.is_empty() && im_tok.is_none() {
        return Err(UsageError::new(flag, "empty value"));
    }
    let rational_syntax = im_tok.is_none() && is_rational_token(re_tok);
    Ok(ParsedComplex { re, im, rational_syntax })
}

pub fn to_complex(p: &ParsedComplex, prec: u32) -> Complex {
    Complex::new(Real::from_rational(&p.re, prec), Real::from_rational(&p.im, prec))
}

/// Exact for integer and `p/q` tokens unless `inexact` is set.
pub fn parse_exponent(s: &str, inexact: bool, prec: u32) -> Result<Exponent, UsageError> {
    let p = parse_complex("m", s)?;
    Ok(if p.rational_syntax && !inexact { Exponent::Exact(p.re) } else { Exponent::Approx(to_complex(&p, prec)) })
}

pub fn parse_real(flag: &'static str, s: &str) -> Result<BigRational, UsageError> {
    parse_decimal(s).map_err(|e| UsageError::new(flag, e.to_string()))
}

pub fn parse_variant(s: &str) -> Result<Variant, UsageError> {
    s.parse().map_err(|_| UsageError::new("variant", format!("`{s}` is not one of plain, shifted, shifted-plus")))
}

pub fn parse_shift(s: &str) -> Result<ArgumentShift, UsageError> {
    match s {
        "auto" => Ok(ArgumentShift::Auto),
        "none" => Ok(ArgumentShift::None),
        n => n
            .parse()
            .map(ArgumentShift::By)
            .map_err(|_| UsageError::new("shift", format!("`{s}` is not auto, none or a count"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use faulsum_core::exact::rat;

    fn pc(s: &str) -> ParsedComplex {
        parse_complex("m", s).unwrap()
    }

    #[test]
    fn complex_forms() {
        assert_eq!(pc("2"), ParsedComplex { re: rat(2, 1), im: rat(0, 1), rational_syntax: true });
        assert_eq!(pc("-3/2"), ParsedComplex { re: rat(-3, 2), im: rat(0, 1), rational_syntax: true });
        assert!(!pc("0.5").rational_syntax);
        let z = pc("-1.5+3i");
        assert_eq!((z.re, z.im), (rat(-3, 2), rat(3, 1)));
        let z = pc("2e-1-4e1i");
        assert_eq!((z.re, z.im), (rat(1, 5), rat(-40, 1)));
        let z = pc("-i");
        assert_eq!((z.re, z.im), (rat(0, 1), rat(-1, 1)));
        let z = pc("1/2+i");
        assert_eq!((z.re, z.im, z.rational_syntax), (rat(1, 2), rat(1, 1), false));
        assert_eq!(pc("7i").im, rat(7, 1));
        assert!(parse_complex("m", "").is_err());
        assert!(parse_complex("m", "1+xi").is_err());
    }

    #[test]
    fn exactness() {
        assert!(parse_exponent("3", false, 128).unwrap().is_exact());
        assert!(!parse_exponent("3", true, 128).unwrap().is_exact());
        assert!(!parse_exponent("0.5", false, 128).unwrap().is_exact());
    }

    #[test]
    fn shift_and_variant() {
        assert_eq!(parse_shift("7").unwrap(), ArgumentShift::By(7));
        assert!(parse_shift("-1").is_err());
        assert_eq!(parse_variant("shifted-plus").unwrap(), Variant::ShiftedPlus);
        assert_eq!(parse_variant("bogus").unwrap_err().flag, "variant");
    }
}
