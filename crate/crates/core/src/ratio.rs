//! Points of the projective line ℝ ∪ {∞} and the Möbius maps acting on them.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A ratio kept as a homogeneous pair `num : den`; `den = 0` is the single point ∞.
#[derive(Debug, Clone)]
pub struct ExtendedRatio<T> {
    num: T,
    den: T,
}

impl<T: Scalar> ExtendedRatio<T> {
    /// Fails with `ConstantOnEdge` when both components vanish.
    pub fn new(num: T, den: T) -> Result<Self> {
        if num.is_zero() && den.is_zero() {
            return Err(Error::ConstantOnEdge);
        }
        Ok(ExtendedRatio { num, den })
    }

    pub fn finite(value: T) -> Self {
        ExtendedRatio { num: value, den: T::one() }
    }

    pub fn infinity() -> Self {
        ExtendedRatio { num: T::one(), den: T::zero() }
    }

    pub fn num(&self) -> &T {
        &self.num
    }

    pub fn den(&self) -> &T {
        &self.den
    }

    pub fn is_infinite(&self) -> bool {
        self.den.is_zero()
    }

    /// `num/den`, or `None` at ∞.
    pub fn value(&self) -> Option<T> {
        if self.is_infinite() {
            None
        } else {
            Some(self.num.clone() / self.den.clone())
        }
    }

    /// Real value with ∞ mapped to `f64::INFINITY`.
    pub fn to_f64(&self) -> f64 {
        match self.value() {
            Some(v) => v.as_f64(),
            None => f64::INFINITY,
        }
    }

    pub fn reciprocal(&self) -> Self {
        ExtendedRatio { num: self.den.clone(), den: self.num.clone() }
    }

    /// Same projective point with bounded components: `(r, 1)` or `(1, 0)`
    /// for rationals, a power-of-two rescaling for floats.
    pub fn normalized(&self) -> Self {
        let (num, den) = T::rescale_pair(self.num.clone(), self.den.clone());
        ExtendedRatio { num, den }
    }

    /// Projective equality up to `tol` relative to the component sizes.
    /// Exact for rationals.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        let cross = self.num.clone() * other.den.clone() - self.den.clone() * other.num.clone();
        if T::is_exact() {
            return cross.is_zero();
        }
        let a = self.num.as_f64().hypot(self.den.as_f64());
        let b = other.num.as_f64().hypot(other.den.as_f64());
        cross.as_f64().abs() <= tol * a * b
    }

    /// Whether the ratio is a finite value strictly between `lo` and `hi`.
    pub fn in_open(&self, lo: &T, hi: &T) -> bool {
        match self.value() {
            Some(v) => *lo < v && v < *hi,
            None => false,
        }
    }

    /// Whether the ratio is a finite value in `[lo, hi]`.
    pub fn in_closed(&self, lo: &T, hi: &T) -> bool {
        match self.value() {
            Some(v) => *lo <= v && v <= *hi,
            None => false,
        }
    }

    pub fn approx_value_eq(&self, target: &T, tol: f64) -> bool {
        match self.value() {
            Some(v) => v.approx_eq(target, tol),
            None => false,
        }
    }
}

impl<T: Scalar> PartialEq for ExtendedRatio<T> {
    /// Exact projective equality: `a:b = c:d` iff `ad = bc`.
    fn eq(&self, other: &Self) -> bool {
        self.num.clone() * other.den.clone() == self.den.clone() * other.num.clone()
    }
}

impl<T: Scalar + fmt::Display> fmt::Display for ExtendedRatio<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.value() {
            Some(v) => write!(f, "{v}"),
            None => f.write_str("inf"),
        }
    }
}

/// `x ↦ (a x + b)/(c x + d)` applied to homogeneous pairs.
#[derive(Debug, Clone, PartialEq)]
pub struct Mobius<T> {
    pub a: T,
    pub b: T,
    pub c: T,
    pub d: T,
}

impl<T: Scalar> Mobius<T> {
    pub fn new(a: T, b: T, c: T, d: T) -> Self {
        Mobius { a, b, c, d }
    }

    pub fn determinant(&self) -> T {
        self.a.clone() * self.d.clone() - self.b.clone() * self.c.clone()
    }

    /// Total on ℝ ∪ {∞} whenever the determinant is nonzero.
    pub fn apply(&self, r: &ExtendedRatio<T>) -> ExtendedRatio<T> {
        let num = self.a.clone() * r.num.clone() + self.b.clone() * r.den.clone();
        let den = self.c.clone() * r.num.clone() + self.d.clone() * r.den.clone();
        ExtendedRatio { num, den }.normalized()
    }

    /// Adjugate matrix; equals the inverse map projectively.
    pub fn inverse(&self) -> Self {
        Mobius {
            a: self.d.clone(),
            b: -self.b.clone(),
            c: -self.c.clone(),
            d: self.a.clone(),
        }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        let (a, b, c, d) = (&self.a, &self.b, &self.c, &self.d);
        let (e, f, g, h) = (&other.a, &other.b, &other.c, &other.d);
        Mobius {
            a: a.clone() * e.clone() + b.clone() * g.clone(),
            b: a.clone() * f.clone() + b.clone() * h.clone(),
            c: c.clone() * e.clone() + d.clone() * g.clone(),
            d: c.clone() * f.clone() + d.clone() * h.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;
    use num_rational::BigRational;

    #[test]
    fn infinity_is_unsigned() {
        let a = ExtendedRatio::new(rat(1, 1), rat(0, 1)).unwrap();
        let b = ExtendedRatio::new(rat(-3, 1), rat(0, 1)).unwrap();
        assert_eq!(a, b);
        assert!(a.is_infinite());
        assert_eq!(a.reciprocal(), ExtendedRatio::finite(rat(0, 1)));
    }

    #[test]
    fn zero_pair_rejected() {
        assert_eq!(
            ExtendedRatio::new(0.0f64, 0.0).unwrap_err(),
            Error::ConstantOnEdge
        );
    }

    #[test]
    fn scaling_is_projective() {
        let a = ExtendedRatio::new(rat(3, 1), rat(2, 1)).unwrap();
        let b = ExtendedRatio::new(rat(-9, 7), rat(-6, 7)).unwrap();
        assert_eq!(a, b);
        assert_eq!(b.normalized().num(), &rat(3, 2));
        let f = ExtendedRatio::new(3.0e300, 2.0e300).unwrap().normalized();
        assert!(f.num().abs() < 4.0 && f.to_f64() == 1.5);
    }

    #[test]
    fn inverse_undoes_map() {
        let m: Mobius<BigRational> = Mobius::new(rat(3, 1), rat(8, 1), rat(-3, 1), rat(17, 1));
        for r in [rat(0, 1), rat(17, 3), rat(-5, 2)] {
            let x = ExtendedRatio::finite(r);
            assert_eq!(m.inverse().apply(&m.apply(&x)), x);
        }
        let inf = ExtendedRatio::infinity();
        assert_eq!(m.inverse().apply(&m.apply(&inf)), inf);
        let id = m.compose(&m.inverse());
        assert_eq!(id.b, rat(0, 1));
        assert_eq!(id.a, id.d);
    }
}
