//! Exact arithmetic in ℚ(√d) for a fixed rational radicand `d`.
//!
//! Used to decide on which side of a monotone-interval endpoint a ratio lies
//! when the ratio and the endpoint are both built from √(25 − 4λ).

use std::cmp::Ordering;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact rational square root, if there is one.
pub fn rational_sqrt(x: &BigRational) -> Option<BigRational> {
    if x.is_negative() {
        return None;
    }
    let n = x.numer();
    let d = x.denom();
    let sn = n.sqrt();
    let sd = d.sqrt();
    (&sn * &sn == *n && &sd * &sd == *d).then(|| BigRational::new(sn, sd))
}

/// `a + b√d`.
#[derive(Debug, Clone, PartialEq)]
pub struct Surd {
    pub a: BigRational,
    pub b: BigRational,
    pub d: BigRational,
}

impl Surd {
    /// `d` must be positive; a perfect-square radicand is folded into `a`.
    pub fn new(a: BigRational, b: BigRational, d: BigRational) -> Self {
        assert!(d.is_positive(), "radicand must be positive");
        match rational_sqrt(&d) {
            Some(s) => Surd { a: a + b * s, b: BigRational::zero(), d: BigRational::one() },
            None => Surd { a, b, d },
        }
    }

    pub fn rational(a: BigRational, d: &BigRational) -> Self {
        Surd::new(a, BigRational::zero(), d.clone())
    }

    pub fn sqrt(d: &BigRational) -> Self {
        Surd::new(BigRational::zero(), BigRational::one(), d.clone())
    }

    fn lift(&self, x: BigRational) -> Self {
        Surd { a: x, b: BigRational::zero(), d: self.d.clone() }
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        Surd { a: &self.a * k, b: &self.b * k, d: self.d.clone() }
    }

    pub fn add_rational(&self, k: &BigRational) -> Self {
        self.clone() + self.lift(k.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn signum(&self) -> Ordering {
        let sa = self.a.cmp(&BigRational::zero());
        let sb = self.b.cmp(&BigRational::zero());
        if sb == Ordering::Equal || sa == sb {
            return if sa == Ordering::Equal { sb } else { sa };
        }
        if sa == Ordering::Equal {
            return sb;
        }
        // Opposite signs: compare a² with b²d.
        let a2 = &self.a * &self.a;
        let b2d = &self.b * &self.b * &self.d;
        match a2.cmp(&b2d) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => Ordering::Equal,
        }
    }

    pub fn to_f64(&self) -> f64 {
        use crate::scalar::rational_to_f64;
        rational_to_f64(&self.a) + rational_to_f64(&self.b) * rational_to_f64(&self.d).sqrt()
    }

    fn check(&self, other: &Surd) {
        debug_assert!(
            self.b.is_zero() || other.b.is_zero() || self.d == other.d,
            "mixed radicands"
        );
    }

    fn radicand(&self, other: &Surd) -> BigRational {
        if self.b.is_zero() {
            other.d.clone()
        } else {
            self.d.clone()
        }
    }
}

impl Add for Surd {
    type Output = Surd;

    fn add(self, o: Surd) -> Surd {
        self.check(&o);
        let d = self.radicand(&o);
        Surd { a: self.a + o.a, b: self.b + o.b, d }
    }
}

impl Sub for Surd {
    type Output = Surd;

    fn sub(self, o: Surd) -> Surd {
        self + (-o)
    }
}

impl Neg for Surd {
    type Output = Surd;

    fn neg(self) -> Surd {
        Surd { a: -self.a, b: -self.b, d: self.d }
    }
}

impl Mul for Surd {
    type Output = Surd;

    fn mul(self, o: Surd) -> Surd {
        self.check(&o);
        let d = self.radicand(&o);
        let a = &self.a * &o.a + &self.b * &o.b * &d;
        let b = &self.a * &o.b + &self.b * &o.a;
        Surd { a, b, d }
    }
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}
