//! Exact scalar type and the textual form used by every file format.
//!
//! Rationals are written `a/b` in lowest terms, or as a bare integer when the
//! denominator is one. The parser accepts the same forms with an optional
//! leading sign.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rational = BigRational;

/// `num / den` as an exact rational. Panics on a zero denominator.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn zero() -> Rational {
    Rational::zero()
}

pub fn one() -> Rational {
    Rational::one()
}

pub fn in_unit(x: &Rational) -> bool {
    !x.is_negative() && x <= &Rational::one()
}

/// Parse `a/b` or `a`. Whitespace around the token is ignored.
pub fn parse_rational(s: &str) -> std::result::Result<Rational, String> {
    let s = s.trim();
    if s.is_empty() {
        return Err("empty rational literal".into());
    }
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num
        .parse()
        .map_err(|_| format!("invalid numerator in {s:?}"))?;
    let den: BigInt = den
        .parse()
        .map_err(|_| format!("invalid denominator in {s:?}"))?;
    if den.is_zero() {
        return Err(format!("zero denominator in {s:?}"));
    }
    Ok(Rational::new(num, den))
}

/// Canonical text: `a/b` in lowest terms, bare integer when `b = 1`.
pub fn format_rational(x: &Rational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn to_f64(x: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    x.to_f64().unwrap_or(f64::NAN)
}

pub(crate) fn serialize_vec<S: serde::Serializer>(
    v: &[Rational],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    use serde::Serialize;
    v.iter()
        .map(format_rational)
        .collect::<Vec<_>>()
        .serialize(s)
}

pub(crate) fn serialize_opt_vec<S: serde::Serializer>(
    v: &[Option<Rational>],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    use serde::Serialize;
    v.iter()
        .map(|x| x.as_ref().map(format_rational))
        .collect::<Vec<_>>()
        .serialize(s)
}
