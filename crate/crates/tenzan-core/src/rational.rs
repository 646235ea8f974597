//! Exact rational scalars.
//!
//! All coefficients in the crate are arbitrary-precision rationals kept
//! reduced with a positive denominator; `num_rational::BigRational`
//! maintains exactly that invariant, so it is used directly.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rational = num_rational::BigRational;

/// n/d as a Rational. Panics on d == 0.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// 10^k for any sign of k.
pub fn pow10(k: i32) -> Rational {
    let p = BigInt::from(10u8).pow(k.unsigned_abs());
    if k >= 0 {
        Rational::from_integer(p)
    } else {
        Rational::new(BigInt::one(), p)
    }
}

/// Parses a nonnegative decimal literal ("5", "0.5", "2.07").
pub fn parse_decimal(text: &str) -> Option<Rational> {
    let (int_part, frac_part) = match text.split_once('.') {
        Some((i, f)) => (i, f),
        None => (text, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().all(|c| c.is_ascii_digit()) || !frac_part.chars().all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let n: BigInt = if digits.is_empty() { BigInt::zero() } else { digits.parse().ok()? };
    Some(Rational::new(n, BigInt::from(10u8).pow(frac_part.len() as u32)))
}

/// Truncates toward zero at `digits` fractional places, returning the
/// scaled integer floor(|x|*10^digits) with the sign of x.
pub fn trunc_scaled(x: &Rational, digits: u32) -> BigInt {
    let scaled = x * pow10(digits as i32);
    scaled.numer() / scaled.denom()
}

/// Renders a scaled integer as a fixed-point decimal with `digits`
/// fractional places ("1.500" for 1500 at 3 digits, "-27.639" likewise).
pub fn format_scaled(m: &BigInt, digits: u32) -> String {
    let neg = m.is_negative();
    let mag = m.magnitude().to_string();
    let d = digits as usize;
    let mag = if mag.len() <= d { format!("{}{}", "0".repeat(d + 1 - mag.len()), mag) } else { mag };
    let (ip, fp) = mag.split_at(mag.len() - d);
    let body = if d == 0 { ip.to_string() } else { format!("{ip}.{fp}") };
    if neg && !m.is_zero() {
        format!("-{body}")
    } else {
        body
    }
}

/// True if x*10^k is an integer.
pub fn is_decimal_at(x: &Rational, k: u32) -> bool {
    (x * pow10(k as i32)).is_integer()
}

/// Smallest k <= max_places with x*10^k integral, if any.
pub fn decimal_places(x: &Rational, max_places: u32) -> Option<u32> {
    (0..=max_places).find(|&k| is_decimal_at(x, k))
}

pub fn to_f64(x: &Rational) -> f64 {
    x.to_f64().expect("rational out of f64 range")
}

pub fn big(n: u64) -> BigUint {
    BigUint::from(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decimal_literals() {
        assert_eq!(parse_decimal("0.5").unwrap(), rat(1, 2));
        assert_eq!(parse_decimal("2.07").unwrap(), rat(207, 100));
        assert_eq!(parse_decimal("5").unwrap(), rat_int(5));
        assert_eq!(parse_decimal("0.").unwrap(), rat_int(0));
        assert!(parse_decimal("").is_none());
        assert!(parse_decimal("1.2.3").is_none());
        assert!(parse_decimal("-1").is_none());
    }

    #[test]
    fn truncation_is_toward_zero() {
        assert_eq!(format_scaled(&trunc_scaled(&rat(3, 2), 3), 3), "1.500");
        assert_eq!(format_scaled(&trunc_scaled(&rat(-2071, 1000), 2), 2), "-2.07");
        assert_eq!(format_scaled(&trunc_scaled(&rat(1999, 1000), 0), 0), "1");
    }

    #[test]
    fn decimal_place_detection() {
        assert_eq!(decimal_places(&rat(1, 2), 3), Some(1));
        assert_eq!(decimal_places(&rat(207, 1000), 3), Some(3));
        assert_eq!(decimal_places(&rat_int(5), 3), Some(0));
        assert_eq!(decimal_places(&rat(1, 3), 3), None);
        assert_eq!(decimal_places(&rat(1, 16), 3), None);
    }
}
