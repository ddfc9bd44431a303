//! Scalar abstraction shared by the inequality machinery.
//!
//! The closed-form bounds are evaluated both in exact rationals (for the
//! frozen checks) and in floating point (for the numeric minimisation
//! oracle), so they are written once against [`Scalar`].

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::Rational;

/// Ordered field-like number type usable by the lemma checks.
pub trait Scalar:
    Num
    + Signed
    + Clone
    + PartialOrd
    + FromPrimitive
    + ToPrimitive
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
{
    /// Slack accepted when comparing two quantities that should be equal.
    /// Zero for exact types.
    fn equality_tolerance() -> Self;

    /// True when arithmetic in this type is exact.
    const EXACT: bool;

    fn ratio(num: i64, den: i64) -> Self {
        Self::from_i64(num).expect("i64 fits") / Self::from_i64(den).expect("i64 fits")
    }

    fn from_rational(r: &Rational) -> Self;

    fn to_real(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    fn max_of(a: Self, b: Self) -> Self {
        if a >= b {
            a
        } else {
            b
        }
    }

    fn min_of(a: Self, b: Self) -> Self {
        if a <= b {
            a
        } else {
            b
        }
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn equality_tolerance() -> Self {
        1e-12
    }

    fn from_rational(r: &Rational) -> Self {
        r.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f32 {
    const EXACT: bool = false;

    fn equality_tolerance() -> Self {
        1e-5
    }

    fn from_rational(r: &Rational) -> Self {
        r.to_f32().unwrap_or(f32::NAN)
    }
}

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn equality_tolerance() -> Self {
        BigRational::zero()
    }

    fn ratio(num: i64, den: i64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
}

/// `num / den` as an exact rational. Panics on a zero denominator.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Exact rational from an integer count.
pub fn rat_int(n: usize) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Always `p/q`, including integers (`2/1`) and zero (`0/1`).
pub fn fmt_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// `ceil(r * n)` for nonnegative `r`, as a count.
pub fn ceil_mul(r: &Rational, n: usize) -> usize {
    let v = (r * rat_int(n)).ceil().to_integer();
    v.to_usize().unwrap_or(usize::MAX)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseRationalError {
    #[error("expected a rational `p/q` or an integer, got `{0}`")]
    Malformed(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
}

/// Parses `p/q` or `p` exactly. Decimal notation is rejected.
pub fn parse_rational(s: &str) -> Result<Rational, ParseRationalError> {
    let malformed = || ParseRationalError::Malformed(s.to_string());
    let digits = |t: &str| {
        let body = t.strip_prefix('-').unwrap_or(t);
        !body.is_empty() && body.bytes().all(|b| b.is_ascii_digit())
    };
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    if !digits(num) || !digits(den) || den.starts_with('-') {
        return Err(malformed());
    }
    let num = BigInt::from_str(num).map_err(|_| malformed())?;
    let den = BigInt::from_str(den).map_err(|_| malformed())?;
    if den.is_zero() {
        return Err(ParseRationalError::ZeroDenominator(s.to_string()));
    }
    Ok(Rational::new(num, den))
}

/// Serializes as the `p/q` string of [`fmt_rational`].
pub fn ser_rational<S: serde::Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(&fmt_rational(r))
}

/// Exact decimal `digits * 10^-scale`, e.g. `decimal(2886, 3)` is 2.886.
pub fn decimal(digits: i64, scale: u32) -> Rational {
    Rational::new(BigInt::from(digits), BigInt::from(10).pow(scale))
}
