//! Field abstraction shared by the exact (rational) and floating-point paths.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// A field element usable by the extension rules and ratio maps.
///
/// `approx_eq` is exact equality for rationals; for `f64` it compares with a
/// relative tolerance scaled by `max(1, |other|)`.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + PartialOrd
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn from_int(n: i64) -> Self;

    fn from_frac(num: i64, den: i64) -> Self {
        Self::from_int(num) / Self::from_int(den)
    }

    fn as_f64(&self) -> f64;

    fn abs_val(&self) -> Self;

    fn approx_eq(&self, other: &Self, tol: f64) -> bool;

    /// True when this type carries no rounding error.
    fn is_exact() -> bool;

    /// Rescales a homogeneous pair to keep magnitudes bounded without
    /// changing the projective point.
    fn rescale_pair(a: Self, b: Self) -> (Self, Self) {
        (a, b)
    }
}

impl Scalar for f64 {
    fn from_int(n: i64) -> Self {
        n as f64
    }

    fn as_f64(&self) -> f64 {
        *self
    }

    fn abs_val(&self) -> Self {
        self.abs()
    }

    fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        (self - other).abs() <= tol * other.abs().max(1.0)
    }

    fn is_exact() -> bool {
        false
    }

    // Power-of-two scaling is exact, so homogeneous iterations stay bit-identical
    // to the affine ones whenever the latter don't overflow.
    fn rescale_pair(a: Self, b: Self) -> (Self, Self) {
        let m = a.abs().max(b.abs());
        if m == 0.0 || !m.is_finite() {
            return (a, b);
        }
        let e = (m.log2().floor() as i32).clamp(-1000, 1000);
        let s = 2f64.powi(-e);
        (a * s, b * s)
    }
}

impl Scalar for BigRational {
    fn from_int(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn as_f64(&self) -> f64 {
        rational_to_f64(self)
    }

    fn abs_val(&self) -> Self {
        self.abs()
    }

    fn approx_eq(&self, other: &Self, _tol: f64) -> bool {
        self == other
    }

    fn is_exact() -> bool {
        true
    }

    fn rescale_pair(a: Self, b: Self) -> (Self, Self) {
        if b.is_zero() {
            if a.is_zero() {
                (a, b)
            } else {
                (Self::one(), b)
            }
        } else {
            (a / b, Self::one())
        }
    }
}

/// Rational → nearest-ish f64 without overflowing on huge numerators.
pub fn rational_to_f64(r: &BigRational) -> f64 {
    if let Some(v) = r.to_f64() {
        if v.is_finite() {
            return v;
        }
    }
    let n = r.numer();
    let d = r.denom();
    let shift = n.bits().max(d.bits()).saturating_sub(60) as usize;
    let nf = (n >> shift).to_f64().unwrap_or(f64::NAN);
    let df = (d >> shift).to_f64().unwrap_or(f64::NAN);
    nf / df
}

/// Parses `p`, `-p`, `p/q` or a finite decimal such as `0.125` into an exact rational.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().ok()?;
        let q: BigInt = q.trim().parse().ok()?;
        if q.is_zero() {
            return None;
        }
        return Some(BigRational::new(p, q));
    }
    if let Some((int, frac)) = s.split_once('.') {
        let neg = int.trim_start().starts_with('-');
        let int_digits = int.trim().trim_start_matches(['-', '+']);
        if !frac.chars().all(|c| c.is_ascii_digit())
            || !int_digits.chars().all(|c| c.is_ascii_digit())
        {
            return None;
        }
        let digits = format!("{}{}", int_digits, frac);
        if digits.is_empty() {
            return None;
        }
        let mut n: BigInt = digits.parse().ok()?;
        if neg {
            n = -n;
        }
        let d = num_traits::pow(BigInt::from(10), frac.len());
        return Some(BigRational::new(n, d));
    }
    let n: BigInt = s.parse().ok()?;
    Some(BigRational::from_integer(n))
}

/// `p/q` or `p` when the denominator is one.
pub fn format_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_common_forms() {
        assert_eq!(parse_rational("3/2"), Some(rat(3, 2)));
        assert_eq!(parse_rational("-7"), Some(rat(-7, 1)));
        assert_eq!(parse_rational("0.125"), Some(rat(1, 8)));
        assert_eq!(parse_rational("-1.5"), Some(rat(-3, 2)));
        assert_eq!(parse_rational("-0.5"), Some(rat(-1, 2)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("abc"), None);
        assert_eq!(parse_rational(""), None);
    }

    #[test]
    fn huge_rationals_still_convert() {
        let big = BigRational::new(
            num_traits::pow(BigInt::from(10), 400) * 3,
            num_traits::pow(BigInt::from(10), 400) * 2,
        );
        assert!((rational_to_f64(&big) - 1.5).abs() < 1e-15);
    }
}
