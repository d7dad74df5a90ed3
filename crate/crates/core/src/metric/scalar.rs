use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_rational::Ratio;
use num_traits::{Signed, ToPrimitive, Zero};

/// Exact distances.
pub type Rational = Ratio<i64>;

/// Relative tolerance used for floating-point distances unless a space says
/// otherwise.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// Distance values: exact rationals or floats compared with a relative
/// tolerance.
pub trait Scalar:
    Clone
    + PartialOrd
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    const EXACT: bool;

    fn zero() -> Self;

    fn from_ratio(p: i64, q: i64) -> Self;

    fn to_f64(&self) -> f64;

    /// Decimal (`1.25`) or fraction (`5/4`) notation.
    fn parse_scalar(s: &str) -> Option<Self>;

    fn abs_value(&self) -> Self;

    /// Equality; for floats, up to `tol` relative to the larger magnitude.
    fn close(&self, other: &Self, tol: f64) -> bool;

    /// `self <= other` up to the same tolerance.
    fn le_tol(&self, other: &Self, tol: f64) -> bool {
        self <= other || self.close(other, tol)
    }

    fn from_i64(v: i64) -> Self {
        Self::from_ratio(v, 1)
    }
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn zero() -> Self {
        Zero::zero()
    }

    fn from_ratio(p: i64, q: i64) -> Self {
        Ratio::new(p, q)
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn parse_scalar(s: &str) -> Option<Self> {
        parse_rational(s)
    }

    fn abs_value(&self) -> Self {
        self.abs()
    }

    fn close(&self, other: &Self, _tol: f64) -> bool {
        self == other
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn zero() -> Self {
        0.0
    }

    fn from_ratio(p: i64, q: i64) -> Self {
        p as f64 / q as f64
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn parse_scalar(s: &str) -> Option<Self> {
        if let Some((p, q)) = s.split_once('/') {
            let (p, q): (f64, f64) = (p.parse().ok()?, q.parse().ok()?);
            return (q != 0.0).then(|| p / q);
        }
        s.parse().ok().filter(|v: &f64| v.is_finite())
    }

    fn abs_value(&self) -> Self {
        self.abs()
    }

    fn close(&self, other: &Self, tol: f64) -> bool {
        (self - other).abs() <= tol * self.abs().max(other.abs())
    }
}

fn parse_rational(s: &str) -> Option<Rational> {
    if let Some((p, q)) = s.split_once('/') {
        let (p, q): (i64, i64) = (p.trim().parse().ok()?, q.trim().parse().ok()?);
        return (q != 0).then(|| Ratio::new(p, q));
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if int.is_empty() && frac.is_empty() {
        return None;
    }
    if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let den = 10i64.checked_pow(frac.len() as u32)?;
    let digits = format!("{int}{frac}");
    let num: i64 = if digits.is_empty() { 0 } else { digits.parse().ok()? };
    let r = Ratio::new(num, den);
    Some(if neg { -r } else { r })
}

/// Relation-name fragment for a threshold: `3/2` becomes `3_2`.
pub fn name_fragment<S: Scalar>(r: &S) -> String {
    r.to_string().replace('/', "_")
}

pub fn parse_name_fragment<S: Scalar>(s: &str) -> Option<S> {
    S::parse_scalar(&s.replace('_', "/"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_notation() {
        assert_eq!(Rational::parse_scalar("3/2"), Some(Ratio::new(3, 2)));
        assert_eq!(Rational::parse_scalar("1.25"), Some(Ratio::new(5, 4)));
        assert_eq!(Rational::parse_scalar("-0.5"), Some(Ratio::new(-1, 2)));
        assert_eq!(Rational::parse_scalar("7"), Some(Ratio::from_integer(7)));
        assert_eq!(Rational::parse_scalar("1/0"), None);
        assert_eq!(Rational::parse_scalar("x"), None);
        assert_eq!(Rational::parse_scalar("."), None);
    }

    #[test]
    fn float_notation_and_tolerance() {
        assert_eq!(f64::parse_scalar("1/4"), Some(0.25));
        assert_eq!(f64::parse_scalar("inf"), None);
        assert!(1.0f64.close(&(1.0 + 1e-12), DEFAULT_TOLERANCE));
        assert!(!1.0f64.close(&1.001, DEFAULT_TOLERANCE));
    }

    #[test]
    fn fragments_round_trip() {
        let r: Rational = Ratio::new(3, 2);
        assert_eq!(name_fragment(&r), "3_2");
        assert_eq!(parse_name_fragment::<Rational>("3_2"), Some(r));
        assert_eq!(parse_name_fragment::<f64>("0.5"), Some(0.5));
    }
}
