//! Harmonic functions: the 1/5–2/5 extension, edge restriction, ratio
//! dynamics and the monotone / single-extremum dichotomy.

use std::collections::HashMap;

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::gasket::{check_level, CellWord, EdgeRef, VertexId};
use crate::ratio::{ExtendedRatio, Mobius};
use crate::restriction::{extend_values, theta_search, BoundaryFlag, EdgeTriple, RestrictionKind, Theta};
use crate::scalar::{rat, Scalar};

/// A harmonic function, given by its values on V₀.
#[derive(Debug, Clone, PartialEq)]
pub struct HarmonicFn {
    pub boundary: [BigRational; 3],
}

impl HarmonicFn {
    pub fn new(h0: BigRational, h1: BigRational, h2: BigRational) -> Self {
        HarmonicFn { boundary: [h0, h1, h2] }
    }

    pub fn from_ints(h0: i64, h1: i64, h2: i64) -> Self {
        HarmonicFn::new(rat(h0, 1), rat(h1, 1), rat(h2, 1))
    }
}

/// Midpoint values of a cell with corner values `v`, indexed by the opposite
/// corner: `out[k] = h(p_ij)` for `{i, j, k} = {0, 1, 2}`.
pub fn harmonic_extend_cell<T: Scalar>(v: &[T; 3]) -> [T; 3] {
    let two_fifths = T::from_frac(2, 5);
    let fifth = T::from_frac(1, 5);
    [0usize, 1, 2].map(|k| {
        let (i, j) = ((k + 1) % 3, (k + 2) % 3);
        two_fifths.clone() * (v[i].clone() + v[j].clone()) + fifth.clone() * v[k].clone()
    })
}

/// Exact values of `h` on V_m.
pub fn harmonic_values(h: &HarmonicFn, m: usize) -> Result<HashMap<VertexId, BigRational>> {
    check_level(m)?;
    let base: HashMap<VertexId, BigRational> = (0..3u8)
        .map(|c| (VertexId::boundary(c), h.boundary[c as usize].clone()))
        .collect();
    extend_values(&base, 0, m, |_, v| Ok(harmonic_extend_cell(v)))
}

/// h at F_w q₀, F_w q₁, F_w q₂.
pub fn harmonic_cell_values(h: &HarmonicFn, w: &CellWord) -> [BigRational; 3] {
    let mut vals = h.boundary.clone();
    for &j in w.letters() {
        let mids = harmonic_extend_cell(&vals);
        let j = j as usize;
        vals = [0usize, 1, 2].map(|c| if c == j { vals[c].clone() } else { mids[3 - c - j].clone() });
    }
    vals
}

/// Exact triple of the restriction of `h` to `e`.
pub fn harmonic_edge_triple(h: &HarmonicFn, e: &EdgeRef) -> EdgeTriple<BigRational> {
    let v = harmonic_cell_values(h, e.cell());
    harmonic_triple(
        v[e.from_corner() as usize].clone(),
        v[e.to_corner() as usize].clone(),
        v[e.opposite_corner() as usize].clone(),
    )
}

/// Value at p₀₀₁ from the triple on (p₀, p₀₁, p₁).
pub fn edge_next_harmonic<T: Scalar>(t: &EdgeTriple<T>) -> T {
    T::from_frac(4, 5) * t.v01.clone() + T::from_frac(8, 25) * t.v0.clone()
        - T::from_frac(3, 25) * t.v1.clone()
}

/// The two half-edge triples of `t`.
pub fn refine_harmonic<T: Scalar>(t: &EdgeTriple<T>) -> [EdgeTriple<T>; 2] {
    let q0 = edge_next_harmonic(t);
    let q1 = edge_next_harmonic(&t.reverse());
    crate::restriction::split_triple(t, q0, q1)
}

/// Triple of the restriction to `E` from the values on the cell containing it.
/// `p2` is the cell's third corner.
pub fn harmonic_triple<T: Scalar>(p0: T, p1: T, p2: T) -> EdgeTriple<T> {
    let two_fifths = T::from_frac(2, 5);
    let mid = two_fifths * (p0.clone() + p1.clone()) + T::from_frac(1, 5) * p2;
    EdgeTriple::new(p0, mid, p1)
}

pub fn ratio_harmonic<T: Scalar>(t: &EdgeTriple<T>) -> Result<ExtendedRatio<T>> {
    t.ratio()
}

pub fn harmonic_step_map<T: Scalar>(branch: u8) -> Mobius<T> {
    let i = T::from_int;
    if branch == 0 {
        Mobius::new(i(3), i(8), i(-3), i(17))
    } else {
        Mobius::new(i(17), i(-3), i(8), i(3))
    }
}

/// r^τ ↦ r^{τ0} (branch 0) or r^{τ1} (branch 1).
pub fn ratio_step_harmonic<T: Scalar>(r: &ExtendedRatio<T>, branch: u8) -> ExtendedRatio<T> {
    harmonic_step_map(branch).apply(r)
}

#[derive(Debug, Clone, PartialEq)]
pub struct HarmonicClassification {
    pub kind: RestrictionKind,
    pub alpha: Option<BoundaryFlag>,
    pub beta: Option<BoundaryFlag>,
    pub theta: Option<Theta>,
}

fn monotone_bounds() -> (BigRational, BigRational) {
    (rat(1, 4), rat(4, 1))
}

/// Classification of a non-constant restriction from its ratio.
pub fn classify_harmonic(r: &ExtendedRatio<BigRational>) -> HarmonicClassification {
    let (lo, hi) = monotone_bounds();
    let flag = |target: &BigRational| {
        if r.approx_value_eq(target, 0.0) {
            BoundaryFlag::Zero
        } else {
            BoundaryFlag::Infinite
        }
    };
    let alpha = Some(flag(&hi));
    let beta = Some(flag(&lo));
    if r.in_closed(&lo, &hi) {
        HarmonicClassification { kind: RestrictionKind::StrictlyMonotone, alpha, beta, theta: None }
    } else {
        let theta = locate_extremum_harmonic(r, crate::restriction::MAX_THETA_BITS).ok();
        HarmonicClassification { kind: RestrictionKind::SingleExtremum, alpha, beta, theta }
    }
}

/// Like [`classify_harmonic`] but accepts constant triples.
pub fn classify_harmonic_triple(t: &EdgeTriple<BigRational>) -> HarmonicClassification {
    match t.ratio() {
        Ok(r) => classify_harmonic(&r),
        Err(_) => HarmonicClassification {
            kind: RestrictionKind::Constant,
            alpha: None,
            beta: None,
            theta: None,
        },
    }
}

/// θ(r) with `precision_bits` binary-search steps (at most 52).
pub fn locate_extremum_harmonic<T: Scalar>(
    r: &ExtendedRatio<T>,
    precision_bits: u32,
) -> Result<Theta> {
    let lo = T::from_frac(1, 4);
    let hi = T::from_int(4);
    if r.in_closed(&lo, &hi) {
        return Err(Error::NotApplicable(format!(
            "ratio {} lies in the monotone interval [1/4, 4]",
            r.to_f64()
        )));
    }
    Ok(theta_search(
        r,
        precision_bits,
        |_| lo.clone(),
        |_, x, b| ratio_step_harmonic(x, b),
    ))
}

/// Symmetric and antisymmetric parts of a triple under edge reversal.
pub fn split_symmetric<T: Scalar>(t: &EdgeTriple<T>) -> (EdgeTriple<T>, EdgeTriple<T>) {
    let half = T::from_frac(1, 2);
    let s_end = half.clone() * (t.v0.clone() + t.v1.clone());
    let a0 = half * (t.v0.clone() - t.v1.clone());
    (
        EdgeTriple::new(s_end.clone(), t.v01.clone(), s_end),
        EdgeTriple::new(a0.clone(), T::zero(), -a0),
    )
}
