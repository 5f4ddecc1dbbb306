//! Numeric abstraction shared by every metric.
//!
//! Metrics are computed from integer counts (ranks, responder counts, bucket
//! sizes) and only become fractional at the final division, so the same code
//! runs on binary floats and on exact rationals.

use std::fmt::Debug;

use num_rational::Ratio;
use num_traits::{FromPrimitive, Num, ToPrimitive};

/// A number type the metrics can be evaluated in.
pub trait Scalar:
    Num + Copy + PartialOrd + FromPrimitive + ToPrimitive + Debug + Send + Sync + 'static
{
    /// Converts a non-negative count. Panics if the count cannot be represented.
    fn from_count(n: u64) -> Self {
        Self::from_u64(n).expect("count not representable in scalar type")
    }

    /// `num / den` evaluated with a single rounding step.
    fn ratio(num: u64, den: u64) -> Self {
        Self::from_count(num) / Self::from_count(den)
    }

    fn hundred() -> Self {
        Self::from_count(100)
    }

    fn two() -> Self {
        Self::one() + Self::one()
    }

    /// Lossy view used for rendering and for comparisons against f64 literals.
    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}
impl Scalar for Ratio<i64> {}
impl Scalar for Ratio<i128> {}

/// Parses a plain decimal literal such as `"12.5"`, `"-3"` or `"0.04"` into an
/// exact ratio. Exponents are not accepted.
pub fn parse_decimal_ratio(text: &str) -> Option<Ratio<i64>> {
    let text = text.trim();
    let (negative, digits) = match text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text.strip_prefix('+').unwrap_or(text)),
    };
    let (int_part, frac_part) = match digits.split_once('.') {
        Some((i, f)) => (i, f),
        None => (digits, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let mut numer: i64 = 0;
    for c in int_part.chars().chain(frac_part.chars()) {
        numer = numer.checked_mul(10)?.checked_add(i64::from(c as u8 - b'0'))?;
    }
    let denom = 10i64.checked_pow(u32::try_from(frac_part.len()).ok()?)?;
    let value = Ratio::new(numer, denom);
    Some(if negative { -value } else { value })
}

/// Half-up rounding to an integer for display.
///
/// The value is first snapped to nine decimals so that binary noise such as
/// `187.49999999999997` still renders as `188`.
pub fn round_half_up(value: f64) -> f64 {
    let snapped = (value * 1e9).round() / 1e9;
    (snapped + 0.5).floor()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Rational64;

    #[test]
    fn decimal_literals_parse_exactly() {
        assert_eq!(parse_decimal_ratio("0.04"), Some(Rational64::new(1, 25)));
        assert_eq!(parse_decimal_ratio("12.5"), Some(Rational64::new(25, 2)));
        assert_eq!(parse_decimal_ratio("-3"), Some(Rational64::from_integer(-3)));
        assert_eq!(parse_decimal_ratio(".5"), Some(Rational64::new(1, 2)));
        assert_eq!(parse_decimal_ratio("50000"), Some(Rational64::from_integer(50_000)));
        assert_eq!(parse_decimal_ratio(""), None);
        assert_eq!(parse_decimal_ratio("1e3"), None);
        assert_eq!(parse_decimal_ratio("."), None);
    }

    #[test]
    fn half_up_rounding() {
        assert_eq!(round_half_up(187.5), 188.0);
        assert_eq!(round_half_up(187.49999999999997), 188.0);
        assert_eq!(round_half_up(57.49), 57.0);
        assert_eq!(round_half_up(16.62), 17.0);
        assert_eq!(round_half_up(37.5), 38.0);
        assert_eq!(round_half_up(0.0), 0.0);
    }

    #[test]
    fn ratio_is_single_division() {
        assert_eq!(<f64 as Scalar>::ratio(3, 8), 0.375);
        assert_eq!(<Rational64 as Scalar>::ratio(6, 4), Rational64::new(3, 2));
    }
}
