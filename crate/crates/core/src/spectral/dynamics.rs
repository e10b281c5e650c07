//! Edge restriction of eigenfunctions and the level-dependent ratio maps.

use crate::error::{Error, Result};
use crate::gasket::SubEdgeWord;
use crate::ratio::{ExtendedRatio, Mobius};
use crate::restriction::{split_triple, theta_search, BoundaryFlag, EdgeTriple, RestrictionKind, Theta};
use crate::scalar::Scalar;

use super::lambda::{is_forbidden, LambdaSequence};

/// Ratios equal to an endpoint of the monotone interval up to this tolerance
/// count as the endpoint.
pub const ENDPOINT_TOL: f64 = 1e-9;
/// Ratios this close to an endpoint, but not within `ENDPOINT_TOL`, are flagged.
pub const BORDERLINE_TOL: f64 = 1e-6;
/// Homogeneous components below this fraction of the value scale are zero.
pub use crate::restriction::CONSTANT_TOL;

/// Coefficients (a, b, c) of the ratio maps at a given λ = λ_{m+l+2}.
#[derive(Debug, Clone, PartialEq)]
pub struct RatioCoefficients<T> {
    pub a: T,
    pub b: T,
    pub c: T,
}

impl<T: Scalar> RatioCoefficients<T> {
    pub fn at(lambda: &T) -> Self {
        let two = T::from_int(2) - lambda.clone();
        RatioCoefficients {
            a: two.clone() * (T::from_int(4) - lambda.clone()),
            b: T::from_int(3) - lambda.clone(),
            c: two.clone() * two * (T::from_int(5) - lambda.clone()) - T::from_int(3),
        }
    }

    pub fn step_map(&self, branch: u8) -> Mobius<T> {
        let (a, b, c) = (self.a.clone(), self.b.clone(), self.c.clone());
        if branch == 0 {
            Mobius::new(b.clone(), a, -b, c)
        } else {
            Mobius::new(c, -b.clone(), a, b)
        }
    }
}

/// r^τ ↦ r^{τ·branch}: branch 0 is (a + b r)/(c − b r), branch 1 is (c r − b)/(a r + b).
pub fn ratio_step_eigen<T: Scalar>(
    r: &ExtendedRatio<T>,
    coeffs: &RatioCoefficients<T>,
    branch: u8,
) -> ExtendedRatio<T> {
    coeffs.step_map(branch).apply(r)
}

/// Value at p₀₀₁ from the triple of an edge at level k, with
/// `lambda_hi` = λ_{k+1} and `lambda_lo` = λ_{k+2}.
pub fn edge_next_eigen<T: Scalar>(t: &EdgeTriple<T>, lambda_hi: &T, lambda_lo: &T) -> Result<T> {
    let lo = lambda_lo.as_f64();
    if is_forbidden(lo) {
        return Err(Error::ForbiddenEigenvalue { value: lo });
    }
    let hi = lambda_hi.as_f64();
    if (hi - 5.0).abs() <= super::lambda::FORBIDDEN_TOL {
        return Err(Error::ForbiddenEigenvalue { value: hi });
    }
    let five_lo = T::from_int(5) - lambda_lo.clone();
    let d = (T::from_int(2) - lambda_lo.clone()) * five_lo.clone();
    let tail = T::one() / (d.clone() * (T::from_int(5) - lambda_hi.clone()));
    let c01 = (T::from_int(4) - lambda_lo.clone()) / five_lo;
    let c0 = (T::from_int(3) - lambda_lo.clone()) / d.clone() + tail.clone();
    let c1 = -(T::one() / d + tail);
    Ok(c01 * t.v01.clone() + c0 * t.v0.clone() + c1 * t.v1.clone())
}

/// Triples of the two halves of an edge at level k (same λ convention as
/// [`edge_next_eigen`]).
pub fn refine_eigen<T: Scalar>(t: &EdgeTriple<T>, lambda_hi: &T, lambda_lo: &T) -> Result<[EdgeTriple<T>; 2]> {
    let q0 = edge_next_eigen(t, lambda_hi, lambda_lo)?;
    let q1 = edge_next_eigen(&t.reverse(), lambda_hi, lambda_lo)?;
    Ok(split_triple(t, q0, q1))
}

/// Triple of the restriction to an edge of a cell with corner values
/// (p₀, p₁, p₂) at level k, where `lambda_next` = λ_{k+1}.
pub fn eigen_triple<T: Scalar>(p0: T, p1: T, p2: T, lambda_next: &T) -> Result<EdgeTriple<T>> {
    let mids = super::extend::eigen_extend_cell(&[p0.clone(), p1.clone(), p2], lambda_next)?;
    Ok(EdgeTriple::new(p0, mids[2].clone(), p1))
}

/// r^E from the cell values u(p₀), u(p₁), u(p₂), with `lambda_next` = λ_{m+1}.
pub fn ratio_eigen_from_cell<T: Scalar>(v0: &T, v1: &T, v2: &T, lambda_next: &T) -> Result<ExtendedRatio<T>> {
    let l = lambda_next.clone();
    let q = T::from_int(6) - T::from_int(6) * l.clone() + l.clone() * l.clone();
    let f = T::from_int(4) - l;
    let two = T::from_int(2);
    let num = q.clone() * v1.clone() - f.clone() * v0.clone() - two.clone() * v2.clone();
    let den = f * v1.clone() + two * v2.clone() - q * v0.clone();
    let scale = [v0, v1, v2].iter().map(|v| v.as_f64().abs()).fold(0.0, f64::max);
    let negligible = |x: &T| {
        if T::is_exact() {
            x.is_zero()
        } else {
            x.as_f64().abs() <= CONSTANT_TOL * scale
        }
    };
    if negligible(&num) && negligible(&den) {
        return Err(Error::ConstantOnEdge);
    }
    ExtendedRatio::new(num, den)
}

#[derive(Debug, Clone, PartialEq)]
pub struct EigenClassification {
    pub kind: RestrictionKind,
    pub alpha: Option<BoundaryFlag>,
    pub beta: Option<BoundaryFlag>,
    pub theta: Option<Theta>,
    /// The ratio is within the borderline band of an interval endpoint
    /// without being identified with it.
    pub borderline: bool,
}

impl EigenClassification {
    pub fn constant() -> Self {
        EigenClassification {
            kind: RestrictionKind::Constant,
            alpha: None,
            beta: None,
            theta: None,
            borderline: false,
        }
    }
}

fn endpoint_match(r: &ExtendedRatio<f64>, target: f64) -> (bool, bool) {
    let hit = |tol: f64| match r.value() {
        Some(v) => (v - target).abs() <= tol * target.abs().max(1.0),
        None => false,
    };
    (hit(ENDPOINT_TOL), hit(BORDERLINE_TOL))
}

/// Ratio classification of an edge at level m ≥ m₁ − 1 with
/// `lambda_next` = λ_{m+1}. θ is left empty; see [`locate_extremum_eigen`].
pub fn classify_eigen(r: &ExtendedRatio<f64>, lambda_next: f64) -> EigenClassification {
    let hi = 4.0 - lambda_next;
    let lo = 1.0 / hi;
    let (at_hi, near_hi) = endpoint_match(r, hi);
    let (at_lo, near_lo) = endpoint_match(r, lo);
    let flag = |at: bool| if at { BoundaryFlag::Zero } else { BoundaryFlag::Infinite };
    let monotone = at_hi || at_lo || r.in_closed(&lo, &hi);
    EigenClassification {
        kind: if monotone { RestrictionKind::StrictlyMonotone } else { RestrictionKind::SingleExtremum },
        alpha: Some(flag(at_hi)),
        beta: Some(flag(at_lo)),
        theta: None,
        borderline: (near_hi && !at_hi) || (near_lo && !at_lo),
    }
}

/// θ for an edge at level m ≥ m₁ − 1 whose restriction has a single extremum.
pub fn locate_extremum_eigen(
    r: &ExtendedRatio<f64>,
    lambdas: &LambdaSequence,
    m: usize,
    precision_bits: u32,
) -> Result<Theta> {
    let first = lambdas.at(m + 1)?;
    if classify_eigen(r, first).kind == RestrictionKind::StrictlyMonotone {
        return Err(Error::NotApplicable(format!(
            "ratio {} lies in the monotone interval at level {m}",
            r.to_f64()
        )));
    }
    let bits = precision_bits.min(crate::restriction::MAX_THETA_BITS) as usize;
    let mut lam = Vec::with_capacity(bits + 2);
    for l in 0..bits + 2 {
        lam.push(lambdas.at(m + l + 1)?);
    }
    Ok(theta_search(
        r,
        precision_bits,
        |l| 1.0 / (4.0 - lam[l]),
        |l, x, b| ratio_step_eigen(x, &RatioCoefficients::at(&lam[l + 1]), b),
    ))
}

/// Verdicts on the three dyadic points of E_τ.
#[derive(Debug, Clone, PartialEq)]
pub struct ExtremePointVerdict {
    /// p₀₁^τ is an extremum.
    pub midpoint: bool,
    /// p₀^τ is an extremum; `None` when τ = 0^l (p₀^τ is the edge endpoint).
    pub left: Option<bool>,
    /// p₁^τ is an extremum; `None` when τ = 1^l.
    pub right: Option<bool>,
    /// The side conditions that accompany a positive endpoint verdict hold.
    pub consistent: bool,
}

/// Decides from r^τ whether the points of E_τ are extrema along E.
///
/// `ratios[i]` is r at the prefix of τ of length i, so `ratios.len() = |τ| + 1`.
/// The edge level `m` must satisfy m ≥ m₁ − 1.
pub fn extreme_point_test(
    tau: &SubEdgeWord,
    ratios: &[ExtendedRatio<f64>],
    lambdas: &LambdaSequence,
    m: usize,
) -> Result<ExtremePointVerdict> {
    let l = tau.len();
    if ratios.len() != l + 1 {
        return Err(Error::NotApplicable(format!(
            "expected {} prefix ratios, got {}",
            l + 1,
            ratios.len()
        )));
    }
    let r = &ratios[l];
    let lam = lambdas.at(m + l + 1)?;
    let hi = 4.0 - lam;
    let is_minus_one = |x: &ExtendedRatio<f64>| endpoint_match(x, -1.0).0;
    let letters = tau.letters();
    let mut consistent = true;

    // τ = τ'·1·0^k and τ = τ'·0·1^k: the position of the last letter that differs.
    let split = |other: u8| letters.iter().rposition(|&b| b == other);
    let left = split(1).map(|p| {
        let hit = endpoint_match(r, hi).0;
        if hit && !is_minus_one(&ratios[p]) {
            consistent = false;
        }
        hit
    });
    let right = split(0).map(|p| {
        let hit = endpoint_match(r, 1.0 / hi).0;
        if hit && !is_minus_one(&ratios[p]) {
            consistent = false;
        }
        hit
    });
    Ok(ExtremePointVerdict { midpoint: is_minus_one(r), left, right, consistent })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harmonic::{edge_next_harmonic, locate_extremum_harmonic, ratio_step_harmonic};
    use crate::scalar::rat;
    use num_rational::BigRational;

    #[test]
    fn coefficients_at_zero() {
        let c = RatioCoefficients::at(&0.0f64);
        assert_eq!((c.a, c.b, c.c), (8.0, 3.0, 17.0));
        let x = ExtendedRatio::finite(2.0 / 3.0);
        assert!(ratio_step_eigen(&x, &c, 0).approx_eq(&x, 1e-15));
        let cq = RatioCoefficients::at(&rat(0, 1));
        for r in [rat(-7, 3), rat(1, 9), rat(40, 1)] {
            let x = ExtendedRatio::finite(r);
            for b in 0..2 {
                assert_eq!(ratio_step_eigen(&x, &cq, b), ratio_step_harmonic(&x, b));
            }
        }
    }

    #[test]
    fn infinity_images() {
        let c = RatioCoefficients::at(&0.7f64);
        let inf = ExtendedRatio::infinity();
        assert_eq!(ratio_step_eigen(&inf, &c, 0).to_f64(), -1.0);
        assert!((ratio_step_eigen(&inf, &c, 1).to_f64() - c.c / c.a).abs() < 1e-15);
    }

    #[test]
    fn edge_rule_reduces_to_harmonic() {
        let t = EdgeTriple::new(rat(0, 1), rat(2, 5), rat(1, 1));
        let z = rat(0, 1);
        assert_eq!(edge_next_eigen(&t, &z, &z).unwrap(), rat(1, 5));
        let t = EdgeTriple::new(rat(3, 7), rat(-1, 2), rat(9, 4));
        assert_eq!(edge_next_eigen(&t, &z, &z).unwrap(), edge_next_harmonic(&t));
    }

    #[test]
    fn edge_rule_coefficients_sum_to_one() {
        for i in 1..40 {
            let lo = 0.05 * i as f64;
            if (lo - 2.0).abs() < 1e-6 {
                continue;
            }
            let hi = lo * (5.0 - lo);
            if (hi - 5.0).abs() < 1e-6 {
                continue;
            }
            let c = EdgeTriple::new(1.0, 1.0, 1.0);
            assert!((edge_next_eigen(&c, &hi, &lo).unwrap() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn ratio_from_cell_reduces_to_harmonic() {
        let (v0, v1, v2) = (rat(1, 3), rat(2, 1), rat(-5, 7));
        let r = ratio_eigen_from_cell(&v0, &v1, &v2, &rat(0, 1)).unwrap();
        let three = rat(3, 1);
        let two = rat(2, 1);
        let expect = ExtendedRatio::new(
            &three * &v1 - &two * &v0 - v2.clone(),
            &two * &v1 + v2.clone() - &three * &v0,
        )
        .unwrap();
        assert_eq!(r, expect);
        assert_eq!(
            ratio_eigen_from_cell(&1.0f64, &1.0, &1.0, &0.0).unwrap_err(),
            Error::ConstantOnEdge
        );
    }

    #[test]
    fn theta_at_zero_lambda_matches_harmonic_bits() {
        let zero = LambdaSequence::zero();
        for (n, d) in [(-1, 1), (17, 3), (10, 1), (-5, 2), (1, 9), (-1, 3), (41, 7)] {
            let q: BigRational = rat(n, d);
            let h = locate_extremum_harmonic(&ExtendedRatio::finite(q), 40).unwrap();
            let e =
                locate_extremum_eigen(&ExtendedRatio::finite(n as f64 / d as f64), &zero, 0, 40).unwrap();
            assert_eq!(h.value.to_bits(), e.value.to_bits(), "r = {n}/{d}");
        }
    }

    #[test]
    fn extreme_point_cases() {
        let zero = LambdaSequence::zero();
        let m1 = ExtendedRatio::finite(-1.0);
        let v = extreme_point_test(&SubEdgeWord::empty(), std::slice::from_ref(&m1), &zero, 0).unwrap();
        assert!(v.midpoint && v.left.is_none() && v.right.is_none());
        let one = ExtendedRatio::finite(1.0);
        let v = extreme_point_test(&SubEdgeWord::empty(), &[one], &zero, 0).unwrap();
        assert!(!v.midpoint);
        // τ = 1: r^1 = step1(−1) = 4 = 4 − λ, and p₀^1 = p₀₁ is the extremum.
        let r1 = ratio_step_harmonic(&m1, 1);
        assert_eq!(r1.to_f64(), 4.0);
        let tau: SubEdgeWord = "1".parse().unwrap();
        let v = extreme_point_test(&tau, &[m1, r1], &zero, 0).unwrap();
        assert_eq!(v.left, Some(true));
        assert_eq!(v.right, None);
        assert!(v.consistent);
    }

    #[test]
    fn classification_bands() {
        let lam = 0.3;
        let hi = 4.0 - lam;
        let c = classify_eigen(&ExtendedRatio::finite(hi), lam);
        assert_eq!(c.kind, RestrictionKind::StrictlyMonotone);
        assert_eq!(c.alpha, Some(BoundaryFlag::Zero));
        let c = classify_eigen(&ExtendedRatio::finite(hi + 1e-7), lam);
        assert_eq!(c.kind, RestrictionKind::SingleExtremum);
        assert!(c.borderline);
        let c = classify_eigen(&ExtendedRatio::finite(1.0), lam);
        assert_eq!(c.kind, RestrictionKind::StrictlyMonotone);
        assert_eq!((c.alpha, c.beta), (Some(BoundaryFlag::Infinite), Some(BoundaryFlag::Infinite)));
    }
}
