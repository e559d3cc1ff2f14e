use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Complex scalar used throughout the crate.
pub type C64 = Complex64;

/// Primitive cube root of unity `e^{2 pi i / 3}`.
pub fn omega() -> C64 {
    C64::new(-0.5, 0.75f64.sqrt())
}

/// `omega^2 = e^{4 pi i / 3}`.
pub fn omega2() -> C64 {
    C64::new(-0.5, -(0.75f64.sqrt()))
}

/// Square root with argument in `(-pi/2, pi/2]`.
///
/// A negative zero imaginary part is treated as positive so that negative
/// reals map to the positive imaginary axis.
pub fn principal_sqrt(z: C64) -> C64 {
    let z = if z.im == 0.0 { C64::new(z.re, 0.0) } else { z };
    z.sqrt()
}

pub fn checked_div(num: C64, den: C64) -> Result<C64> {
    if den.re == 0.0 && den.im == 0.0 {
        return Err(Error::DivisionByZero);
    }
    Ok(num / den)
}

/// A point of the Riemann sphere `C ∪ {∞}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ExtendedComplex {
    Finite(C64),
    Infinity,
}

impl ExtendedComplex {
    pub fn finite(self) -> Option<C64> {
        match self {
            ExtendedComplex::Finite(z) => Some(z),
            ExtendedComplex::Infinity => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, ExtendedComplex::Infinity)
    }

    /// Reciprocal on the sphere, exchanging 0 and ∞.
    pub fn recip(self) -> Self {
        match self {
            ExtendedComplex::Infinity => ExtendedComplex::Finite(C64::new(0.0, 0.0)),
            ExtendedComplex::Finite(z) if z.re == 0.0 && z.im == 0.0 => ExtendedComplex::Infinity,
            ExtendedComplex::Finite(z) => ExtendedComplex::Finite(z.inv()),
        }
    }
}

impl From<C64> for ExtendedComplex {
    fn from(z: C64) -> Self {
        ExtendedComplex::Finite(z)
    }
}

impl From<f64> for ExtendedComplex {
    fn from(x: f64) -> Self {
        ExtendedComplex::Finite(C64::new(x, 0.0))
    }
}

impl fmt::Display for ExtendedComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedComplex::Finite(z) => f.write_str(&format_complex(*z)),
            ExtendedComplex::Infinity => f.write_str("inf"),
        }
    }
}

/// Formats a real with 17 significant digits, using the same fixed/scientific
/// switch as C's `%.17g`.
pub fn format_real(x: f64) -> String {
    if x.is_nan() {
        return "nan".to_string();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf" } else { "-inf" }.to_string();
    }
    if x == 0.0 {
        return "0".to_string();
    }
    const PRECISION: i32 = 17;
    let sci = format!("{:.*e}", (PRECISION - 1) as usize, x);
    let (mantissa, exponent) = sci.split_once('e').expect("scientific format");
    let exponent: i32 = exponent.parse().expect("integer exponent");
    if (-4..PRECISION).contains(&exponent) {
        let decimals = (PRECISION - 1 - exponent) as usize;
        trim_fraction(&format!("{:.*}", decimals, x)).to_string()
    } else {
        let sign = if exponent < 0 { '-' } else { '+' };
        format!("{}e{}{:02}", trim_fraction(mantissa), sign, exponent.abs())
    }
}

fn trim_fraction(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Formats `z` as `a+bi` (or `a-bi`), 17 significant digits per part.
pub fn format_complex(z: C64) -> String {
    let sign = if z.im.is_sign_negative() && z.im != 0.0 {
        '-'
    } else {
        '+'
    };
    format!("{}{}{}i", format_real(z.re), sign, format_real(z.im.abs()))
}

/// Parses the literal forms `a`, `bi`, `a+bi` and `a-bi`.
pub fn parse_complex(text: &str) -> Result<C64> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || Error::ParseComplex(text.to_string());
    if s.is_empty() {
        return Err(bad());
    }
    let Some(body) = s.strip_suffix('i') else {
        let re = parse_real(&s).ok_or_else(bad)?;
        return Ok(C64::new(re, 0.0));
    };
    // Split at the last sign that is not leading and not part of an exponent.
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re_text, im_text) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("0", body),
    };
    let re = parse_real(re_text).ok_or_else(bad)?;
    let im = match im_text {
        "" | "+" => 1.0,
        "-" => -1.0,
        other => parse_real(other).ok_or_else(bad)?,
    };
    Ok(C64::new(re, im))
}

fn parse_real(s: &str) -> Option<f64> {
    let starts_ok = s
        .trim_start_matches(['+', '-'])
        .starts_with(|c: char| c.is_ascii_digit() || c == '.');
    if !starts_ok {
        return None;
    }
    s.parse::<f64>().ok().filter(|v| v.is_finite())
}
