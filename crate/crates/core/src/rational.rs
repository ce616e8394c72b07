//! Exact rational scalars and the extended (possibly infinite) delivery-time values.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn from_u128(n: u128) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `(x)^+`
pub fn positive_part(x: &Rational) -> Rational {
    if x.is_negative() {
        Rational::zero()
    } else {
        x.clone()
    }
}

pub fn to_f64(x: &Rational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Parses `"3"`, `"-0.45"`, `"2.5e-3"` or `"7/13"` into an exact rational.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let s = text.trim();
    let err = || Error::Parse(format!("not a rational number: {text:?}"));
    if s.is_empty() {
        return Err(err());
    }
    if let Some((num, den)) = s.split_once('/') {
        let num: BigInt = num.trim().parse().map_err(|_| err())?;
        let den: BigInt = den.trim().parse().map_err(|_| err())?;
        if den.is_zero() {
            return Err(err());
        }
        return Ok(Rational::new(num, den));
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(pos) => {
            let exp: i32 = s[pos + 1..].parse().map_err(|_| err())?;
            (&s[..pos], exp)
        }
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (whole, frac) = digits.split_once('.').unwrap_or((digits, ""));
    if whole.is_empty() && frac.is_empty() {
        return Err(err());
    }
    if !whole.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(err());
    }
    let combined = format!("{whole}{frac}");
    let numer: BigInt = if combined.is_empty() {
        BigInt::zero()
    } else {
        combined.parse().map_err(|_| err())?
    };
    let scale = exponent - frac.len() as i32;
    let ten = BigInt::from(10);
    let mut value = Rational::from_integer(numer);
    if scale >= 0 {
        value *= Rational::from_integer(num_traits::pow(ten, scale as usize));
    } else {
        value /= Rational::from_integer(num_traits::pow(ten, (-scale) as usize));
    }
    Ok(if negative { -value } else { value })
}

/// Comma separated list of rationals, e.g. `"0.45,0.65,0.85,1"`.
pub fn parse_rational_list(text: &str) -> Result<Vec<Rational>> {
    text.split(',')
        .filter(|part| !part.trim().is_empty())
        .map(parse_rational)
        .collect()
}

/// Renders `x` as a decimal with `significant` significant digits, trailing zeros trimmed.
pub fn format_decimal(x: &Rational, significant: usize) -> String {
    format_f64(to_f64(x), significant)
}

pub fn format_f64(v: f64, significant: usize) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    if !v.is_finite() {
        return if v > 0.0 { "inf".into() } else { "nan".into() };
    }
    let magnitude = v.abs().log10().floor() as i32;
    let decimals = (significant as i32 - 1 - magnitude).max(0) as usize;
    let mut out = format!("{v:.decimals$}");
    if out.contains('.') {
        out = out.trim_end_matches('0').trim_end_matches('.').to_string();
    }
    if out == "-0" {
        out = "0".into();
    }
    out
}

pub fn format_exact(x: &Rational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// A nonnegative quantity that may be `+inf`, e.g. a delivery time whose
/// available channel strength has been exhausted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Extended {
    Finite(Rational),
    Infinite,
}

impl Extended {
    pub fn zero() -> Self {
        Extended::Finite(Rational::zero())
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Extended::Infinite)
    }

    pub fn finite(&self) -> Option<&Rational> {
        match self {
            Extended::Finite(v) => Some(v),
            Extended::Infinite => None,
        }
    }

    /// `load / slack`, where a positive load over zero slack is infinite and a
    /// zero load is zero regardless of slack.
    pub fn load_over_slack(load: &Rational, slack: &Rational) -> Self {
        let slack = positive_part(slack);
        if load.is_zero() {
            Extended::zero()
        } else if slack.is_zero() {
            Extended::Infinite
        } else {
            Extended::Finite(load / slack)
        }
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        match self {
            Extended::Finite(v) => Extended::Finite(v * factor),
            Extended::Infinite if factor.is_zero() => Extended::zero(),
            Extended::Infinite => Extended::Infinite,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Extended::Finite(v) => to_f64(v),
            Extended::Infinite => f64::INFINITY,
        }
    }

    pub fn max_of<I: IntoIterator<Item = Extended>>(items: I) -> Extended {
        items.into_iter().fold(Extended::zero(), |acc, x| acc.max(x))
    }

    pub fn to_decimal(&self, significant: usize) -> String {
        match self {
            Extended::Finite(v) => format_decimal(v, significant),
            Extended::Infinite => "inf".into(),
        }
    }

    pub fn to_exact(&self) -> String {
        match self {
            Extended::Finite(v) => format_exact(v),
            Extended::Infinite => "inf".into(),
        }
    }
}

impl PartialOrd for Extended {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Extended {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Extended::Infinite, Extended::Infinite) => Ordering::Equal,
            (Extended::Infinite, _) => Ordering::Greater,
            (_, Extended::Infinite) => Ordering::Less,
            (Extended::Finite(a), Extended::Finite(b)) => a.cmp(b),
        }
    }
}

impl fmt::Display for Extended {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_exact())
    }
}
