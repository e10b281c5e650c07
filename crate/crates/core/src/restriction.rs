//! Pieces shared by the harmonic and eigenfunction edge restrictions.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::gasket::{child_corners, for_each_cell, VertexId};
use crate::ratio::ExtendedRatio;
use crate::scalar::Scalar;

/// Relative size below which floating-point differences count as zero.
pub const CONSTANT_TOL: f64 = 1e-12;

/// Values `(f(p₀), f(p₀₁), f(p₁))` at the endpoints and midpoint of an edge.
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeTriple<T> {
    pub v0: T,
    pub v01: T,
    pub v1: T,
}

impl<T: Scalar> EdgeTriple<T> {
    pub fn new(v0: T, v01: T, v1: T) -> Self {
        EdgeTriple { v0, v01, v1 }
    }

    /// Exact equality for rationals; for floats, both differences within
    /// [`CONSTANT_TOL`] of the largest value.
    pub fn is_constant(&self) -> bool {
        if T::is_exact() {
            return self.v0 == self.v01 && self.v01 == self.v1;
        }
        let scale = [&self.v0, &self.v01, &self.v1].iter().map(|v| v.as_f64().abs()).fold(0.0, f64::max);
        let small = |a: &T, b: &T| (a.as_f64() - b.as_f64()).abs() <= CONSTANT_TOL * scale;
        small(&self.v0, &self.v01) && small(&self.v01, &self.v1)
    }

    pub fn reverse(&self) -> Self {
        EdgeTriple { v0: self.v1.clone(), v01: self.v01.clone(), v1: self.v0.clone() }
    }

    /// `(f(p₁) − f(p₀₁)) : (f(p₀₁) − f(p₀))`.
    pub fn ratio(&self) -> Result<ExtendedRatio<T>> {
        if self.is_constant() {
            return Err(Error::ConstantOnEdge);
        }
        ExtendedRatio::new(
            self.v1.clone() - self.v01.clone(),
            self.v01.clone() - self.v0.clone(),
        )
    }

    pub fn map<U>(&self, f: impl Fn(&T) -> U) -> EdgeTriple<U> {
        EdgeTriple { v0: f(&self.v0), v01: f(&self.v01), v1: f(&self.v1) }
    }
}

/// Children of a triple given the new quarter-point values `q0` (at p₀₀₁)
/// and `q1` (at p₀₁₁).
pub fn split_triple<T: Scalar>(t: &EdgeTriple<T>, q0: T, q1: T) -> [EdgeTriple<T>; 2] {
    [
        EdgeTriple::new(t.v0.clone(), q0, t.v01.clone()),
        EdgeTriple::new(t.v01.clone(), q1, t.v1.clone()),
    ]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RestrictionKind {
    Constant,
    StrictlyMonotone,
    SingleExtremum,
    /// Several interior extrema; only possible on edges below the fixation level.
    MultiExtremum(u64),
}

impl RestrictionKind {
    /// Number of interior local extrema this kind stands for.
    pub fn extremum_count(&self) -> u64 {
        match self {
            RestrictionKind::Constant | RestrictionKind::StrictlyMonotone => 0,
            RestrictionKind::SingleExtremum => 1,
            RestrictionKind::MultiExtremum(n) => *n,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            RestrictionKind::Constant => "Constant",
            RestrictionKind::StrictlyMonotone => "StrictlyMonotone",
            RestrictionKind::SingleExtremum => "SingleExtremum",
            RestrictionKind::MultiExtremum(_) => "MultiExtremum",
        }
    }
}

/// Limit of the one-sided difference quotients at an endpoint.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundaryFlag {
    Zero,
    Infinite,
}

impl BoundaryFlag {
    pub fn name(&self) -> &'static str {
        match self {
            BoundaryFlag::Zero => "Zero",
            BoundaryFlag::Infinite => "Infinite",
        }
    }
}

/// Position of an extremum as a parameter along the oriented edge.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Theta {
    pub value: f64,
    /// The recursion hit r = −1, so `value` is an exact dyadic.
    pub exact: bool,
    /// Bound on `|value − θ|`.
    pub error: f64,
}

/// θ carries at most this many bits; it is stored as an `f64`.
pub const MAX_THETA_BITS: u32 = 52;

/// Binary search for the extremum of a restriction with a single extremum.
///
/// `lower(l)` is the lower end of the monotone interval at depth `l`, and
/// `step(l, r, branch)` maps `r^τ` to `r^{τ·branch}` for `|τ| = l`.
pub(crate) fn theta_search<T: Scalar>(
    r: &ExtendedRatio<T>,
    precision_bits: u32,
    lower: impl Fn(usize) -> T,
    step: impl Fn(usize, &ExtendedRatio<T>, u8) -> ExtendedRatio<T>,
) -> Theta {
    let bits = precision_bits.min(MAX_THETA_BITS);
    let minus_one = -T::one();
    let mut r = r.clone();
    let mut offset = 0.0f64;
    let mut scale = 1.0f64;
    for l in 0..bits as usize {
        if r.approx_value_eq(&minus_one, 1e-12) {
            return Theta { value: offset + scale / 2.0, exact: true, error: 0.0 };
        }
        if r.in_open(&minus_one, &lower(l)) {
            offset += scale / 2.0;
            scale /= 2.0;
            r = step(l, &r, 1);
        } else {
            scale /= 2.0;
            r = step(l, &r, 0);
        }
    }
    if r.approx_value_eq(&minus_one, 1e-12) {
        return Theta { value: offset + scale / 2.0, exact: true, error: 0.0 };
    }
    Theta { value: offset + scale / 2.0, exact: false, error: scale / 2.0 }
}

/// Extends values given on `V_base` to `V_target` cell by cell.
///
/// `rule(level, corners)` returns the midpoint values of a cell at `level`
/// (indexed by opposite corner), producing values on `V_{level+1}`.
pub(crate) fn extend_values<T: Scalar>(
    base: &HashMap<VertexId, T>,
    base_level: usize,
    target: usize,
    rule: impl Fn(usize, &[T; 3]) -> Result<[T; 3]>,
) -> Result<HashMap<VertexId, T>> {
    let mut out: HashMap<VertexId, T> = HashMap::with_capacity(3usize.pow(target as u32 + 1) / 2 + 2);
    let mut cells = Vec::new();
    for_each_cell(base_level, |c| cells.push(*c));
    for corners in cells {
        let vals = corners
            .iter()
            .map(|v| {
                base.get(v)
                    .cloned()
                    .ok_or_else(|| Error::InvalidSpec("missing value on base level".into()))
            })
            .collect::<Result<Vec<T>>>()?;
        let vals: [T; 3] = [vals[0].clone(), vals[1].clone(), vals[2].clone()];
        descend(&corners, &vals, base_level, target, &rule, &mut out)?;
    }
    Ok(out)
}

fn descend<T: Scalar>(
    corners: &[VertexId; 3],
    vals: &[T; 3],
    level: usize,
    target: usize,
    rule: &impl Fn(usize, &[T; 3]) -> Result<[T; 3]>,
    out: &mut HashMap<VertexId, T>,
) -> Result<()> {
    if level == target {
        for (v, x) in corners.iter().zip(vals) {
            out.entry(*v).or_insert_with(|| x.clone());
        }
        return Ok(());
    }
    let mids = rule(level, vals)?;
    for j in 0..3u8 {
        let child = child_corners(corners, j);
        let cv = [0usize, 1, 2].map(|i| {
            if i == j as usize {
                vals[i].clone()
            } else {
                mids[3 - i - j as usize].clone()
            }
        });
        descend(&child, &cv, level + 1, target, rule, out)?;
    }
    Ok(())
}
