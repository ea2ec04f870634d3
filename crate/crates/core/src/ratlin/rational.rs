use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision exact fraction; always stored in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rational {
    assert!(d != 0, "zero denominator");
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn zero() -> Rational {
    Rational::zero()
}

pub fn one() -> Rational {
    Rational::one()
}

/// Parses `"p/q"` or a bare integer `"p"`. Rejects zero denominators,
/// decimals, and anything with surrounding garbage.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let bad = || Error::Rational(text.to_string());
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (text, None),
    };
    let parse_int = |s: &str| -> Result<BigInt> {
        let digits = s.strip_prefix(['-', '+']).unwrap_or(s);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        BigInt::from_str(s).map_err(|_| bad())
    };
    let n = parse_int(num)?;
    let d = match den {
        Some(d) => parse_int(d)?,
        None => BigInt::one(),
    };
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

/// Canonical text form: `"p"` for integers, `"p/q"` otherwise.
pub fn format_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// `a_0 + a_1 x + ... + a_n x^n` as text, skipping zero coefficients.
pub fn format_polynomial(coeffs: &[Rational]) -> String {
    let mut out = String::new();
    for (k, a) in coeffs.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
        let neg = a.is_negative();
        let mag = if neg { -a } else { a.clone() };
        out.push_str(match (out.is_empty(), neg) {
            (true, true) => "-",
            (true, false) => "",
            (false, true) => " - ",
            (false, false) => " + ",
        });
        let power = match k {
            0 => String::new(),
            1 => "x".into(),
            _ => format!("x^{k}"),
        };
        if k == 0 || !mag.is_one() {
            out.push_str(&format_rational(&mag));
        }
        out.push_str(&power);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

pub(crate) fn is_negative(q: &Rational) -> bool {
    q.is_negative()
}
