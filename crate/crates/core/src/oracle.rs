//! Brute-force checks: dense dyadic sampling along an edge, extremum
//! counting on the samples, graph-Laplacian residuals and boundary slopes.
//!
//! Nothing here uses the ratio dynamics; samples come from the edge
//! refinement rules alone.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};

use crate::error::{Error, Result};
use crate::gasket::{build_graph, subedge, EdgeRef, SubEdgeWord, VertexId};
use crate::harmonic::{harmonic_edge_triple, HarmonicFn};
use crate::restriction::{BoundaryFlag, EdgeTriple};
use crate::scalar::{rational_to_f64, Scalar};
use crate::spectral::{edge_triple, refine_eigen, EigenSpec, LambdaSequence};

/// Deepest sampling level accepted (2^24 + 1 samples).
pub const MAX_SAMPLE_LEVEL: usize = 24;

/// Relative plateau tolerance for floating-point samples.
pub const EIGEN_PLATEAU_TOL: f64 = 1e-10;

/// Growth factor over two steps that decides a boundary slope trend.
pub const TREND_FACTOR: f64 = 1.2;

/// A function whose edge restrictions can be sampled.
#[derive(Debug, Clone)]
pub enum Restriction {
    Harmonic(HarmonicFn),
    Eigen(EigenSpec),
}

impl Restriction {
    pub fn is_exact(&self) -> bool {
        matches!(self, Restriction::Harmonic(_))
    }

    fn fixation_level(&self) -> Option<usize> {
        match self {
            Restriction::Harmonic(_) => None,
            Restriction::Eigen(s) => Some(s.fixation_level()),
        }
    }
}

/// Values at the dyadic parameters k/2^L along an oriented edge.
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeSamples {
    pub edge: EdgeRef,
    pub level: usize,
    pub values: Vec<f64>,
}

impl EdgeSamples {
    pub fn param(&self, k: usize) -> f64 {
        k as f64 / (1u64 << self.level) as f64
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Numerators {
    Small(Vec<i128>),
    Big(Vec<BigInt>),
}

/// Exact samples `numerators[k] / denominator`, with a positive denominator.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactEdgeSamples {
    pub edge: EdgeRef,
    pub level: usize,
    pub numerators: Numerators,
    pub denominator: BigInt,
}

impl ExactEdgeSamples {
    pub fn len(&self) -> usize {
        match &self.numerators {
            Numerators::Small(v) => v.len(),
            Numerators::Big(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn value(&self, k: usize) -> BigRational {
        let n = match &self.numerators {
            Numerators::Small(v) => BigInt::from(v[k]),
            Numerators::Big(v) => v[k].clone(),
        };
        BigRational::new(n, self.denominator.clone())
    }

    pub fn to_samples(&self) -> EdgeSamples {
        let values = match &self.numerators {
            Numerators::Small(v) => match self.denominator.to_i128() {
                Some(d) => v.iter().map(|&n| n as f64 / d as f64).collect(),
                None => (0..v.len()).map(|k| rational_to_f64(&self.value(k))).collect(),
            },
            Numerators::Big(_) => (0..self.len()).map(|k| rational_to_f64(&self.value(k))).collect(),
        };
        EdgeSamples { edge: self.edge.clone(), level: self.level, values }
    }

    fn signs(&self) -> Vec<i8> {
        fn sgn<T: PartialOrd>(a: &T, b: &T) -> i8 {
            match b.partial_cmp(a) {
                Some(std::cmp::Ordering::Greater) => 1,
                Some(std::cmp::Ordering::Less) => -1,
                _ => 0,
            }
        }
        match &self.numerators {
            Numerators::Small(v) => v.windows(2).map(|w| sgn(&w[0], &w[1])).collect(),
            Numerators::Big(v) => v.windows(2).map(|w| sgn(&w[0], &w[1])).collect(),
        }
    }
}

/// Depth-first emission of the 2^L + 1 samples of a triple.
fn emit_samples<T: Clone>(
    t: &EdgeTriple<T>,
    level: usize,
    refine: &mut impl FnMut(usize, &EdgeTriple<T>) -> Result<[EdgeTriple<T>; 2]>,
    out: &mut Vec<T>,
) -> Result<()> {
    fn rec<T: Clone>(
        t: &EdgeTriple<T>,
        depth: usize,
        remaining: usize,
        refine: &mut impl FnMut(usize, &EdgeTriple<T>) -> Result<[EdgeTriple<T>; 2]>,
        out: &mut Vec<T>,
    ) -> Result<()> {
        if remaining == 0 {
            out.push(t.v0.clone());
            out.push(t.v01.clone());
            return Ok(());
        }
        let [a, b] = refine(depth, t)?;
        rec(&a, depth + 1, remaining - 1, refine, out)?;
        rec(&b, depth + 1, remaining - 1, refine, out)
    }
    if level == 0 {
        out.push(t.v0.clone());
    } else {
        rec(t, 0, level - 1, refine, out)?;
    }
    Ok(())
}

fn check_sample_level(level: usize) -> Result<()> {
    if level > MAX_SAMPLE_LEVEL {
        return Err(Error::LevelTooLarge { requested: level, max: MAX_SAMPLE_LEVEL });
    }
    Ok(())
}

/// Integer triples scaled by a common denominator.
trait ScaledInt: Clone + Sized {
    /// (25a, 20b + 8a − 3c, 25b) and (25b, 20b + 8c − 3a, 25c).
    fn children(t: &EdgeTriple<Self>) -> Option<[EdgeTriple<Self>; 2]>;
}

impl ScaledInt for i128 {
    fn children(t: &EdgeTriple<i128>) -> Option<[EdgeTriple<i128>; 2]> {
        let (a, b, c) = (t.v0, t.v01, t.v1);
        let a25 = a.checked_mul(25)?;
        let b25 = b.checked_mul(25)?;
        let c25 = c.checked_mul(25)?;
        let b20 = b.checked_mul(20)?;
        let q0 = b20.checked_add(a.checked_mul(8)?)?.checked_sub(c.checked_mul(3)?)?;
        let q1 = b20.checked_add(c.checked_mul(8)?)?.checked_sub(a.checked_mul(3)?)?;
        Some([EdgeTriple { v0: a25, v01: q0, v1: b25 }, EdgeTriple { v0: b25, v01: q1, v1: c25 }])
    }
}

impl ScaledInt for BigInt {
    fn children(t: &EdgeTriple<BigInt>) -> Option<[EdgeTriple<BigInt>; 2]> {
        let (a, b, c) = (&t.v0, &t.v01, &t.v1);
        let b20 = b * 20;
        let q0 = &b20 + a * 8 - c * 3;
        let q1 = &b20 + c * 8 - a * 3;
        Some([
            EdgeTriple { v0: a * 25, v01: q0, v1: b * 25 },
            EdgeTriple { v0: b * 25, v01: q1, v1: c * 25 },
        ])
    }
}

fn emit_scaled<I: ScaledInt>(t: &EdgeTriple<I>, level: usize) -> Option<Vec<I>> {
    // The scaling at depth d is 25^d; every leaf ends up at depth L − 1, and
    // the final endpoint is scaled by reusing the last leaf's v1.
    let mut out = Vec::with_capacity((1usize << level) + 1);
    let mut last = None;
    fn rec<I: ScaledInt>(t: &EdgeTriple<I>, remaining: usize, out: &mut Vec<I>, last: &mut Option<I>) -> Option<()> {
        if remaining == 0 {
            out.push(t.v0.clone());
            out.push(t.v01.clone());
            *last = Some(t.v1.clone());
            return Some(());
        }
        let [a, b] = I::children(t)?;
        rec(&a, remaining - 1, out, last)?;
        rec(&b, remaining - 1, out, last)
    }
    if level == 0 {
        out.push(t.v0.clone());
        out.push(t.v1.clone());
        return Some(out);
    }
    rec(t, level - 1, &mut out, &mut last)?;
    out.push(last?);
    Some(out)
}

/// Exact dyadic samples of a harmonic restriction by repeated subdivision.
pub fn sample_edge_exact(h: &HarmonicFn, e: &EdgeRef, level: usize) -> Result<ExactEdgeSamples> {
    check_sample_level(level)?;
    let t = harmonic_edge_triple(h, e);
    let d0 = [&t.v0, &t.v01, &t.v1].iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let scaled = t.map(|x| (x * BigRational::from_integer(d0.clone())).to_integer());
    let denominator = d0 * BigInt::from(25u8).pow(level.saturating_sub(1) as u32);
    let small = match (scaled.v0.to_i128(), scaled.v01.to_i128(), scaled.v1.to_i128()) {
        (Some(a), Some(b), Some(c)) => emit_scaled(&EdgeTriple { v0: a, v01: b, v1: c }, level),
        _ => None,
    };
    let numerators = match small {
        Some(v) => Numerators::Small(v),
        None => Numerators::Big(emit_scaled(&scaled, level).expect("big integers do not overflow")),
    };
    Ok(ExactEdgeSamples { edge: e.clone(), level, numerators, denominator })
}

fn sample_eigen(spec: &EigenSpec, lambdas: &LambdaSequence, e: &EdgeRef, level: usize, out: &mut Vec<f64>) -> Result<()> {
    let m0 = spec.birth_level();
    if e.level() < m0 {
        let d = m0 - e.level();
        let pieces = 1u64 << d;
        let sub_level = level.saturating_sub(d);
        for k in 0..pieces {
            let sub = subedge(e, &SubEdgeWord::from_index(k, d));
            if level < d {
                // Coarser than the birth-level pieces: keep every 2^(d−L)th endpoint.
                if k % (1 << (d - level)) == 0 {
                    out.push(edge_triple(spec, lambdas, &sub)?.v0);
                }
            } else {
                sample_eigen(spec, lambdas, &sub, sub_level, out)?;
            }
        }
        return Ok(());
    }
    let t = edge_triple(spec, lambdas, e)?;
    let k = e.level();
    emit_samples(
        &t,
        level,
        &mut |depth, t| refine_eigen(t, &lambdas.at(k + depth + 1)?, &lambdas.at(k + depth + 2)?),
        out,
    )
}

/// Samples at the 2^L + 1 dyadic parameters of `e`.
pub fn sample_edge(f: &Restriction, e: &EdgeRef, level: usize) -> Result<EdgeSamples> {
    check_sample_level(level)?;
    match f {
        Restriction::Harmonic(h) => Ok(sample_edge_exact(h, e, level)?.to_samples()),
        Restriction::Eigen(spec) => {
            let lambdas = spec.lambdas(e.level() + level + 2)?;
            let mut values = Vec::with_capacity((1usize << level) + 1);
            sample_eigen(spec, &lambdas, e, level, &mut values)?;
            values.push(edge_triple(spec, &lambdas, e)?.v1);
            Ok(EdgeSamples { edge: e.clone(), level, values })
        }
    }
}

/// Vertices at the dyadic parameters k/2^L of `e`, in order.
pub fn sample_points(e: &EdgeRef, level: usize) -> Result<Vec<VertexId>> {
    check_sample_level(level)?;
    let mut out = Vec::with_capacity((1usize << level) + 1);
    for k in 0..1u64 << level {
        out.push(subedge(e, &SubEdgeWord::from_index(k, level)).endpoints()?.0);
    }
    out.push(e.endpoints()?.1);
    Ok(out)
}

/// Default sampling level (m₁ − m) + 8, clamped to [10, 18].
pub fn default_level(f: &Restriction, e: &EdgeRef) -> usize {
    let m = e.level();
    let gap = f.fixation_level().map_or(0, |m1| m1.saturating_sub(m));
    (gap + 8).clamp(10, 18)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExtremaReport {
    pub count: u64,
    /// Centers of the collapsed plateaus, as parameters in (0, 1).
    pub positions: Vec<f64>,
    /// Some consecutive samples were treated as equal.
    pub plateau: bool,
    pub tolerance: f64,
}

fn extrema_from_signs(signs: &[i8], level: usize, tolerance: f64) -> ExtremaReport {
    let n = (1u64 << level) as f64;
    let mut positions = Vec::new();
    let mut plateau = false;
    // Last nonzero sign and the sample index where it ended.
    let mut prev: Option<(i8, usize)> = None;
    for (i, &s) in signs.iter().enumerate() {
        if s == 0 {
            plateau = true;
            continue;
        }
        if let Some((p, end)) = prev {
            if p != s {
                positions.push((end + i) as f64 / 2.0 / n);
            }
        }
        prev = Some((s, i + 1));
    }
    ExtremaReport { count: positions.len() as u64, positions, plateau, tolerance }
}

/// Interior strict local extrema of the samples; differences at most
/// `tol · max|value|` count as zero.
pub fn count_local_extrema(s: &EdgeSamples, tol: f64) -> ExtremaReport {
    let scale = s.values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    count_local_extrema_scaled(s, tol, scale)
}

/// As [`count_local_extrema`] with the zero threshold `tol · scale` for a
/// caller-supplied scale, e.g. max|u| over the whole gasket.
pub fn count_local_extrema_scaled(s: &EdgeSamples, tol: f64, scale: f64) -> ExtremaReport {
    let eps = tol * scale;
    let signs: Vec<i8> = s
        .values
        .windows(2)
        .map(|w| {
            let d = w[1] - w[0];
            if d.abs() <= eps {
                0
            } else if d > 0.0 {
                1
            } else {
                -1
            }
        })
        .collect();
    extrema_from_signs(&signs, s.level, tol)
}

/// As [`count_local_extrema`] with exact comparisons.
pub fn count_local_extrema_exact(s: &ExactEdgeSamples) -> ExtremaReport {
    extrema_from_signs(&s.signs(), s.level, 0.0)
}

/// max over interior x of |Δ_m u(x) + λ u(x)|.
pub fn laplacian_residual<T: Scalar>(values: &HashMap<VertexId, T>, m: usize, lambda: &T) -> Result<T> {
    let g = build_graph(m)?;
    let mut worst = T::zero();
    for x in g.interior() {
        let lap = g
            .laplacian_at(values, x)
            .ok_or_else(|| Error::InvalidSpec(format!("no value at vertex {x:?} of V_{m}")))?;
        let r = (lap + lambda.clone() * values[x].clone()).abs_val();
        if r > worst {
            worst = r;
        }
    }
    Ok(worst)
}

/// Difference quotients toward both endpoints of an edge.
#[derive(Debug, Clone, PartialEq)]
pub struct SlopeTrend {
    /// |f(p₁ of E_{0^l}) − f(p₀)| / (2^{−l}|E|) for l = 1..=l_max.
    pub alpha: Vec<f64>,
    /// The same toward p₁.
    pub beta: Vec<f64>,
    pub alpha_flag: BoundaryFlag,
    pub beta_flag: BoundaryFlag,
}

fn quotients(f: &Restriction, e: &EdgeRef, l_max: usize) -> Result<Vec<f64>> {
    let len = e.length();
    let lambdas = match f {
        Restriction::Eigen(spec) => Some(spec.lambdas(e.level() + l_max + 2)?),
        Restriction::Harmonic(_) => None,
    };
    let mut out = Vec::with_capacity(l_max);
    for l in 1..=l_max {
        let sub = subedge(e, &SubEdgeWord::new(vec![0; l])?);
        let diff = match (f, &lambdas) {
            (Restriction::Harmonic(h), _) => {
                let t = harmonic_edge_triple(h, &sub);
                rational_to_f64(&(t.v1 - t.v0).abs())
            }
            (Restriction::Eigen(spec), Some(lam)) => {
                let t = edge_triple(spec, lam, &sub)?;
                (t.v1 - t.v0).abs()
            }
            _ => unreachable!(),
        };
        out.push(diff / (len / (1u64 << l) as f64));
    }
    Ok(out)
}

fn trend(seq: &[f64]) -> Option<BoundaryFlag> {
    let n = seq.len();
    let (a, b, c) = (seq[n - 3], seq[n - 2], seq[n - 1]);
    if a > b && b > c && a >= TREND_FACTOR * c {
        Some(BoundaryFlag::Zero)
    } else if a < b && b < c && c >= TREND_FACTOR * a {
        Some(BoundaryFlag::Infinite)
    } else {
        None
    }
}

/// Boundary difference quotients at both ends of `e` and the trend they show.
pub fn boundary_slope_trend(f: &Restriction, e: &EdgeRef, l_max: usize) -> Result<SlopeTrend> {
    if l_max < 3 {
        return Err(Error::NotApplicable(format!("l_max = {l_max}; at least 3 terms are needed")));
    }
    let alpha = quotients(f, e, l_max)?;
    let beta = quotients(f, &e.reverse(), l_max)?;
    if alpha.iter().chain(&beta).all(|x| *x == 0.0) {
        return Err(Error::ConstantOnEdge);
    }
    match (trend(&alpha), trend(&beta)) {
        (Some(alpha_flag), Some(beta_flag)) => Ok(SlopeTrend { alpha, beta, alpha_flag, beta_flag }),
        _ => Err(Error::InconclusiveTrend { l_max }),
    }
}
