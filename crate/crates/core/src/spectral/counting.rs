//! Family indexing, companions, and exact extremum counts on edges.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::gasket::{subedge, EdgeRef, SubEdgeWord, VertexId};
use crate::ratio::ExtendedRatio;
use crate::restriction::{BoundaryFlag, EdgeTriple, RestrictionKind};
use crate::scalar::rat;
use crate::surd::Surd;

use super::dynamics::{
    classify_eigen, eigen_triple, locate_extremum_eigen, ratio_eigen_from_cell, refine_eigen,
    EigenClassification, BORDERLINE_TOL, ENDPOINT_TOL,
};
use super::extend::{cell_values, cell_values_exact, exact_lambdas};
use super::family::FamilyId;
use super::lambda::LambdaSequence;
use super::spec::EigenSpec;

/// Deepest descent used when deciding one-sided monotonicity at a point.
const MAX_DESCENT: usize = 80;

/// Plus levels {m+1+j} encoding index `n` as a reflected binary code.
pub fn plus_levels_for_index(m: usize, n: u64) -> BTreeSet<usize> {
    let g = n ^ (n >> 1);
    (0..64).filter(|j| g >> j & 1 == 1).map(|j| m + 1 + j).collect()
}

/// Inverse of [`plus_levels_for_index`] on the plus levels above `m`.
pub fn index_for_plus_levels(plus: &BTreeSet<usize>, m: usize) -> Result<u64> {
    let mut g = 0u64;
    for &k in plus.range(m + 1..) {
        let j = k - m - 1;
        if j >= 64 {
            return Err(Error::NotApplicable(format!("plus level {k} is too far above level {m} to index")));
        }
        g |= 1 << j;
    }
    let mut n = g;
    let mut s = 1;
    while s < 64 {
        n ^= n >> s;
        s <<= 1;
    }
    Ok(n)
}

/// ψ_n initialed from `base` restricted to V_m.
pub fn psi_n_spec(base: &EigenSpec, m: usize, n: u64) -> Result<EigenSpec> {
    let mut plus: BTreeSet<usize> = base.plus_set().range(..=m).copied().collect();
    plus.extend(plus_levels_for_index(m, n));
    base.with_plus_set(plus)
}

/// The same eigenfunction with the last + branch (at m₁ − 1) flipped to −.
pub fn companion_spec(spec: &EigenSpec) -> Result<EigenSpec> {
    let m0 = spec.birth_level();
    let last = spec.fixation_level() - 1;
    let min = if *spec.birth_eigenvalue() == rat(6, 1) { m0 + 1 } else { m0 };
    if last <= min {
        return Err(Error::NoCompanion(format!(
            "fixation level {} leaves no flippable branch above level {min}",
            spec.fixation_level()
        )));
    }
    let mut plus = spec.plus_set().clone();
    plus.remove(&last);
    spec.with_plus_set(plus)
}

/// Lowest edge level at which the ratio machinery applies.
fn min_edge_level(spec: &EigenSpec) -> usize {
    if *spec.birth_eigenvalue() == rat(6, 1) {
        spec.birth_level() + 1
    } else {
        spec.birth_level()
    }
}

/// Triple (u(p₀), u(p₀₁), u(p₁)) of an edge at any level.
pub fn edge_triple(spec: &EigenSpec, lambdas: &LambdaSequence, e: &EdgeRef) -> Result<EdgeTriple<f64>> {
    let m0 = spec.birth_level();
    if e.level() < m0 {
        let init = spec.initial_values_f64();
        let (a, b) = e.endpoints()?;
        return Ok(EdgeTriple::new(init[&a], init[&e.midpoint()?], init[&b]));
    }
    let v = cell_values(spec, e.cell())?;
    eigen_triple(
        v[e.from_corner() as usize],
        v[e.to_corner() as usize],
        v[e.opposite_corner() as usize],
        &lambdas.at(e.level() + 1)?,
    )
}

/// Ratio of an edge at level ≥ m₀ from its cell values.
pub fn edge_ratio(spec: &EigenSpec, lambdas: &LambdaSequence, e: &EdgeRef) -> Result<ExtendedRatio<f64>> {
    let v = cell_values(spec, e.cell())?;
    ratio_eigen_from_cell(
        &v[e.from_corner() as usize],
        &v[e.to_corner() as usize],
        &v[e.opposite_corner() as usize],
        &lambdas.at(e.level() + 1)?,
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum R0Branch {
    /// r₀ strictly inside the monotone interval.
    Interior,
    /// r₀ equal to an endpoint of it.
    Endpoint,
    Exterior,
}

impl R0Branch {
    pub fn name(&self) -> &'static str {
        match self {
            R0Branch::Interior => "interior",
            R0Branch::Endpoint => "endpoint",
            R0Branch::Exterior => "exterior",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BranchCount {
    pub count: u64,
    /// Index of the eigenfunction among those initialed from u|V_m.
    pub n: u64,
    pub branch: R0Branch,
    /// r^E(ψ₀).
    pub r0: ExtendedRatio<f64>,
    /// λ^(0)_{m+1}.
    pub lambda0: f64,
    /// The branch was decided in exact arithmetic.
    pub certified: bool,
    /// Numeric decision inside the borderline band of an endpoint.
    pub borderline: bool,
}

/// N from the branch and index.
pub fn branch_formula(branch: R0Branch, n: u64) -> u64 {
    match branch {
        R0Branch::Interior => 2 * ((n + 1) / 2),
        R0Branch::Endpoint => n,
        R0Branch::Exterior => 2 * (n / 2) + 1,
    }
}

fn surd_const(k: BigRational, d: &BigRational) -> Surd {
    Surd::rational(k, d)
}

/// Numerator and denominator of r^E in ℚ(√(25 − 4λ_m)), and 4 − λ_{m+1};
/// `None` unless λ_m and u|V_m are rational.
fn exact_ratio_parts(spec: &EigenSpec, e: &EdgeRef) -> Result<Option<(Surd, Surd, Surd)>> {
    let Some(vals) = cell_values_exact(spec, e.cell())? else {
        return Ok(None);
    };
    let Some(lams) = exact_lambdas(spec, e.level()) else {
        return Ok(None);
    };
    let lam_m = lams.last().unwrap().clone();
    let d = rat(25, 1) - rat(4, 1) * lam_m;
    if d <= rat(0, 1) {
        return Ok(None);
    }
    let half = rat(spec.epsilon(e.level() + 1) as i64, 2);
    let lam = Surd::new(rat(5, 2), half, d.clone());
    let k = |n: i64| surd_const(rat(n, 1), &d);
    let v = |c: u8| surd_const(vals[c as usize].clone(), &d);
    let (v0, v1, v2) = (v(e.from_corner()), v(e.to_corner()), v(e.opposite_corner()));
    let q = k(6) - k(6) * lam.clone() + lam.clone() * lam.clone();
    let t = k(4) - lam;
    let num = q.clone() * v1.clone() - t.clone() * v0.clone() - k(2) * v2.clone();
    let den = t.clone() * v1 + k(2) * v2 - q * v0;
    Ok(Some((num, den, t)))
}

/// r^E exactly, when the data are rational and the ratio itself is rational.
pub fn exact_edge_ratio(spec: &EigenSpec, e: &EdgeRef) -> Result<Option<ExtendedRatio<BigRational>>> {
    if e.level() < spec.birth_level() {
        return Ok(None);
    }
    let Some((num, den, _)) = exact_ratio_parts(spec, e)? else {
        return Ok(None);
    };
    if num.is_zero() && den.is_zero() {
        return Err(Error::ConstantOnEdge);
    }
    if den.is_zero() {
        return Ok(Some(ExtendedRatio::infinity()));
    }
    // num = k·den with k rational iff the two are proportional over {1, √d}.
    if num.a.clone() * den.b.clone() != num.b.clone() * den.a.clone() {
        return Ok(None);
    }
    let k = if den.a != rat(0, 1) { num.a / den.a } else { num.b / den.b };
    Ok(Some(ExtendedRatio::finite(k)))
}

/// Branch decided exactly in ℚ(√(25 − 4λ_m)), when λ_m and u|V_m are rational.
fn exact_branch(spec: &EigenSpec, e: &EdgeRef) -> Result<Option<R0Branch>> {
    let Some((num, den, t)) = exact_ratio_parts(spec, e)? else {
        return Ok(None);
    };
    if num.is_zero() && den.is_zero() {
        return Err(Error::ConstantOnEdge);
    }
    if den.is_zero() {
        return Ok(Some(R0Branch::Exterior));
    }
    let at_hi = (num.clone() - t.clone() * den.clone()).is_zero();
    let at_lo = (t.clone() * num.clone() - den.clone()).is_zero();
    if at_hi || at_lo {
        return Ok(Some(R0Branch::Endpoint));
    }
    // 1/t < N/D < t  ⇔  t·N·D − D² > 0 and t·D² − N·D > 0  (t > 0).
    let nd = num * den.clone();
    let dd = den.clone() * den;
    let above_lo = (t.clone() * nd.clone() - dd.clone()).signum() == Ordering::Greater;
    let below_hi = (t * dd - nd).signum() == Ordering::Greater;
    Ok(Some(if above_lo && below_hi { R0Branch::Interior } else { R0Branch::Exterior }))
}

/// N^E(u) from the branch of r^E(ψ₀); E must have level m ≥ m₀ (m > m₀ for
/// a birth eigenvalue of 6).
pub fn r0_branch_count(spec: &EigenSpec, e: &EdgeRef) -> Result<BranchCount> {
    let m = e.level();
    if m < min_edge_level(spec) {
        return Err(Error::NotApplicable(format!(
            "edge level {m} is below {} for this eigenfunction",
            min_edge_level(spec)
        )));
    }
    let n = index_for_plus_levels(spec.plus_set(), m)?;
    let base_plus: BTreeSet<usize> = spec.plus_set().range(..=m).copied().collect();
    let psi0 = spec.with_plus_set(base_plus)?;
    let lambdas = psi0.lambdas(m + 1)?;
    let lambda0 = lambdas.at(m + 1)?;
    let r0 = edge_ratio(&psi0, &lambdas, e)?;
    let hi = 4.0 - lambda0;
    let lo = 1.0 / hi;
    let near = |target: f64, tol: f64| {
        r0.value().is_some_and(|v| (v - target).abs() <= tol * target.abs().max(1.0))
    };
    let (branch, certified, borderline) = match exact_branch(&psi0, e)? {
        Some(b) => (b, true, false),
        None => {
            let endpoint = near(hi, ENDPOINT_TOL) || near(lo, ENDPOINT_TOL);
            let band = near(hi, BORDERLINE_TOL) || near(lo, BORDERLINE_TOL);
            let b = if endpoint {
                R0Branch::Endpoint
            } else if r0.in_open(&lo, &hi) {
                R0Branch::Interior
            } else {
                R0Branch::Exterior
            };
            (b, false, band && !endpoint)
        }
    };
    Ok(BranchCount {
        count: branch_formula(branch, n),
        n,
        branch,
        r0,
        lambda0,
        certified,
        borderline,
    })
}

/// N^E(ψ_n) for a family and an edge at the family's base level.
pub fn count_extrema_thm3(family: FamilyId, e: &EdgeRef, n: u64) -> Result<u64> {
    if e.level() != family.base_level() {
        return Err(Error::NotApplicable(format!(
            "{family} counts are indexed from level {}, edge has level {}",
            family.base_level(),
            e.level()
        )));
    }
    Ok(r0_branch_count(&family.psi(n), e)?.count)
}

/// Monotonicity sign of u on the sub-edge of `e` touching one endpoint:
/// +1 if u increases toward that endpoint, −1 if it decreases, 0 if constant.
/// `toward_end` selects p₁ (true) or p₀ (false).
fn one_sided_sign(spec: &EigenSpec, lambdas: &LambdaSequence, e: &EdgeRef, toward_end: bool) -> Result<i8> {
    let m1 = spec.fixation_level();
    let mut t = edge_triple(spec, lambdas, e)?;
    for level in e.level()..e.level() + MAX_DESCENT {
        let hi_l = lambdas.at(level + 1)?;
        let lo_l = lambdas.at(level + 2)?;
        if t.is_constant() {
            return Ok(0);
        }
        if level + 1 >= m1 && level >= min_edge_level(spec) {
            let r = t.ratio()?;
            if classify_eigen(&r, hi_l).kind == RestrictionKind::StrictlyMonotone {
                let d = t.v1 - t.v0;
                let s = if toward_end { d } else { -d };
                return Ok(if s > 0.0 { 1 } else if s < 0.0 { -1 } else { 0 });
            }
        }
        let [left, right] = refine_eigen(&t, &hi_l, &lo_l)?;
        t = if toward_end { right } else { left };
    }
    Err(Error::NotApplicable(format!(
        "no monotone sub-edge found within {MAX_DESCENT} levels of {e}"
    )))
}

/// Whether the common point of consecutive edges (`left` ends where `right`
/// starts) is a strict local extremum of u along their union.
pub fn junction_is_extremum(spec: &EigenSpec, left: &EdgeRef, right: &EdgeRef) -> Result<bool> {
    if left.endpoints()?.1 != right.endpoints()?.0 {
        return Err(Error::NotApplicable(format!("{left} and {right} do not meet end to start")));
    }
    let depth = left.level().max(right.level()) + MAX_DESCENT + 2;
    let lambdas = spec.lambdas(depth)?;
    let sl = one_sided_sign(spec, &lambdas, left, true)?;
    let sr = one_sided_sign(spec, &lambdas, right, false)?;
    Ok(sl != 0 && sl == sr)
}

#[derive(Debug, Clone, PartialEq)]
pub struct AssembledCount {
    pub total: u64,
    /// Non-constant pieces only.
    pub pieces: Vec<(EdgeRef, BranchCount)>,
    /// Junction points between consecutive pieces and whether each is an extremum.
    pub junctions: Vec<(VertexId, bool)>,
}

/// Count on `e` as the sum of branch counts over its sub-edges at `level`
/// plus the junctions that are extrema.
pub fn assembled_count(spec: &EigenSpec, e: &EdgeRef, level: usize) -> Result<AssembledCount> {
    if level < e.level() {
        return Err(Error::NotApplicable(format!("level {level} is above the edge level {}", e.level())));
    }
    let depth = level - e.level();
    let pieces: Vec<EdgeRef> =
        (0..1u64 << depth).map(|i| subedge(e, &SubEdgeWord::from_index(i, depth))).collect();
    let lambdas = spec.lambdas(level + MAX_DESCENT + 2)?;
    let mut total = 0;
    let mut counts = Vec::with_capacity(pieces.len());
    let mut junctions = Vec::new();
    // Direction u arrives with from the last non-constant piece; a run of
    // constant pieces in between is a plateau.
    let mut arriving: Option<i8> = None;
    for (i, p) in pieces.iter().enumerate() {
        let constant = edge_triple(spec, &lambdas, p)?.is_constant();
        if i > 0 {
            let hit = match arriving {
                Some(s) if !constant => s != 0 && s == one_sided_sign(spec, &lambdas, p, false)?,
                _ => false,
            };
            total += hit as u64;
            junctions.push((p.endpoints()?.0, hit));
        }
        if constant {
            continue;
        }
        let c = r0_branch_count(spec, p)?;
        total += c.count;
        counts.push((p.clone(), c));
        arriving = Some(one_sided_sign(spec, &lambdas, p, true)?);
    }
    Ok(AssembledCount { total, pieces: counts, junctions })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundaryEdge {
    Bottom,
    Left,
}

impl BoundaryEdge {
    pub fn edge(&self) -> EdgeRef {
        match self {
            BoundaryEdge::Bottom => EdgeRef::bottom(),
            BoundaryEdge::Left => EdgeRef::left(),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            BoundaryEdge::Bottom => "bottom",
            BoundaryEdge::Left => "left",
        }
    }
}

/// Extremum count of ψ_n on a boundary edge of the whole gasket.
pub fn boundary_counts(family: FamilyId, n: u64, edge: BoundaryEdge) -> Result<u64> {
    let supported = matches!(
        (family, edge),
        (FamilyId::TwoSeries, BoundaryEdge::Bottom)
            | (FamilyId::FiveSeries, BoundaryEdge::Bottom)
            | (FamilyId::FiveSeries, BoundaryEdge::Left)
            | (FamilyId::SixSeries, BoundaryEdge::Bottom)
    );
    if !supported {
        return Err(Error::UnsupportedPair(format!("{family} on the {} edge", edge.name())));
    }
    Ok(assembled_count(&family.psi(n), &edge.edge(), family.base_level())?.total)
}

/// Classification of u on an edge, with the predicted extremum count.
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeAnalysis {
    pub classification: EigenClassification,
    pub ratio: Option<ExtendedRatio<f64>>,
    pub predicted_count: u64,
    /// λ_{m+1} for the edge level m.
    pub lambda_next: f64,
    pub branch_count: Option<BranchCount>,
    pub assembled: Option<AssembledCount>,
}

fn kind_for_count(n: u64) -> RestrictionKind {
    match n {
        0 => RestrictionKind::StrictlyMonotone,
        1 => RestrictionKind::SingleExtremum,
        n => RestrictionKind::MultiExtremum(n),
    }
}

/// Endpoint flags: the flag at p₀ (p₁) is read off the first sub-edge along
/// 0^l (1^l) that has reached the fixation regime.
fn boundary_flags(spec: &EigenSpec, lambdas: &LambdaSequence, e: &EdgeRef) -> Result<(BoundaryFlag, BoundaryFlag)> {
    let target = (spec.fixation_level().saturating_sub(1)).max(min_edge_level(spec));
    let depth = target.saturating_sub(e.level());
    let flag = |letter: u8| -> Result<BoundaryFlag> {
        let tau = SubEdgeWord::new(vec![letter; depth])?;
        let sub = subedge(e, &tau);
        let r = edge_ratio(spec, lambdas, &sub)?;
        let c = classify_eigen(&r, lambdas.at(sub.level() + 1)?);
        Ok(if letter == 0 { c.alpha.unwrap() } else { c.beta.unwrap() })
    };
    Ok((flag(0)?, flag(1)?))
}

/// Full analysis of u on `e`: the ratio classification at or past level m₁ − 1,
/// the r₀ branch count below it, and a sub-edge assembly for edges coarser
/// than the data.
pub fn classify_eigen_edge(spec: &EigenSpec, e: &EdgeRef, precision_bits: u32) -> Result<EdgeAnalysis> {
    let m = e.level();
    let lambdas = spec.lambdas(m + 2)?;
    let lambda_next = if m + 1 >= spec.birth_level() { lambdas.at(m + 1)? } else { f64::NAN };
    let triple = edge_triple(spec, &lambdas, e)?;
    let constant = EdgeAnalysis {
        classification: EigenClassification::constant(),
        ratio: None,
        predicted_count: 0,
        lambda_next,
        branch_count: None,
        assembled: None,
    };
    if m < min_edge_level(spec) {
        // A coarse triple can vanish on a non-constant edge; only the pieces decide.
        let m0 = min_edge_level(spec);
        let fine = spec.lambdas(m0 + 2)?;
        let mut all_constant = true;
        for i in 0..1u64 << (m0 - m) {
            let p = subedge(e, &SubEdgeWord::from_index(i, m0 - m));
            all_constant &= edge_triple(spec, &fine, &p)?.is_constant();
        }
        if all_constant {
            return Ok(constant);
        }
        let ratio = match triple.ratio() {
            Ok(r) => Some(r),
            Err(Error::ConstantOnEdge) => None,
            Err(err) => return Err(err),
        };
        let a = assembled_count(spec, e, m0)?;
        let count = a.total;
        return Ok(EdgeAnalysis {
            classification: EigenClassification {
                kind: kind_for_count(count),
                alpha: None,
                beta: None,
                theta: None,
                borderline: a.pieces.iter().any(|(_, c)| c.borderline),
            },
            ratio,
            predicted_count: count,
            lambda_next,
            branch_count: None,
            assembled: Some(a),
        });
    }
    let ratio = match edge_ratio(spec, &lambdas, e) {
        Ok(r) => r,
        Err(Error::ConstantOnEdge) => return Ok(constant),
        Err(err) => return Err(err),
    };
    let (alpha, beta) = boundary_flags(spec, &lambdas, e)?;
    if m + 1 >= spec.fixation_level() {
        let mut c = classify_eigen(&ratio, lambda_next);
        if c.kind == RestrictionKind::SingleExtremum {
            c.theta = Some(locate_extremum_eigen(&ratio, &lambdas, m, precision_bits)?);
        }
        let count = c.kind.extremum_count();
        return Ok(EdgeAnalysis {
            classification: c,
            ratio: Some(ratio),
            predicted_count: count,
            lambda_next,
            branch_count: None,
            assembled: None,
        });
    }
    let t3 = r0_branch_count(spec, e)?;
    Ok(EdgeAnalysis {
        classification: EigenClassification {
            kind: kind_for_count(t3.count),
            alpha: Some(alpha),
            beta: Some(beta),
            theta: None,
            borderline: t3.borderline,
        },
        ratio: Some(ratio),
        predicted_count: t3.count,
        lambda_next,
        branch_count: Some(t3),
        assembled: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn edge(s: &str) -> EdgeRef {
        s.parse().unwrap()
    }

    #[test]
    fn gray_code_round_trip() {
        for n in 0..1000u64 {
            let p = plus_levels_for_index(3, n);
            assert_eq!(index_for_plus_levels(&p, 3).unwrap(), n);
        }
        assert!(plus_levels_for_index(1, 0).is_empty());
        assert_eq!(plus_levels_for_index(1, 1), [2].into_iter().collect());
        assert_eq!(plus_levels_for_index(1, 3), [3].into_iter().collect());
    }

    #[test]
    fn companions() {
        let base = FamilyId::FiveSeries.base_spec();
        let p1 = psi_n_spec(&base, 1, 1).unwrap();
        assert_eq!(companion_spec(&p1).unwrap().plus_set(), base.plus_set());
        let p2 = psi_n_spec(&base, 1, 2).unwrap();
        assert_eq!(p2.plus_set(), &[2, 3].into_iter().collect());
        assert_eq!(companion_spec(&p2).unwrap(), psi_n_spec(&base, 1, 1).unwrap());
        assert!(matches!(companion_spec(&base), Err(Error::NoCompanion(_))));
        assert!(matches!(
            companion_spec(&FamilyId::SixSeries.base_spec()),
            Err(Error::NoCompanion(_))
        ));
    }

    #[test]
    fn branch_count_examples() {
        let x0y2 = edge("cell=0;from=0;to=1");
        let y1y0 = edge("cell=2;from=0;to=1");
        for n in 0..8 {
            assert_eq!(count_extrema_thm3(FamilyId::TwoSeries, &x0y2, n).unwrap(), n);
            assert_eq!(count_extrema_thm3(FamilyId::FiveSeries, &x0y2, n).unwrap(), 2 * (n / 2) + 1);
            assert_eq!(count_extrema_thm3(FamilyId::FiveSeries, &y1y0, n).unwrap(), 2 * ((n + 1) / 2));
        }
        let t = r0_branch_count(&FamilyId::TwoSeries.psi(3), &x0y2).unwrap();
        assert!(t.certified);
        assert_eq!(t.branch, R0Branch::Endpoint);
        assert!(count_extrema_thm3(FamilyId::TwoSeries, &EdgeRef::bottom(), 1).is_err());
        assert_eq!(
            r0_branch_count(&FamilyId::TwoSeries.psi(1), &y1y0).unwrap_err(),
            Error::ConstantOnEdge
        );
    }

    #[test]
    fn six_series_pieces_use_endpoint_branch() {
        let spec = FamilyId::SixSeries.psi(2);
        for i in 0..8u64 {
            let e = subedge(&EdgeRef::bottom(), &SubEdgeWord::from_index(i, 3));
            let t = r0_branch_count(&spec, &e).unwrap();
            assert_eq!(t.branch, R0Branch::Endpoint, "piece {i}");
            assert!(t.certified);
        }
    }

    #[test]
    fn boundary_small_cases() {
        assert_eq!(boundary_counts(FamilyId::TwoSeries, 0, BoundaryEdge::Bottom).unwrap(), 1);
        assert_eq!(boundary_counts(FamilyId::FiveSeries, 3, BoundaryEdge::Left).unwrap(), 6);
        assert_eq!(boundary_counts(FamilyId::SixSeries, 1, BoundaryEdge::Bottom).unwrap(), 11);
        assert!(matches!(
            boundary_counts(FamilyId::SixSeries, 1, BoundaryEdge::Left),
            Err(Error::UnsupportedPair(_))
        ));
    }

    #[test]
    fn five_series_edge_classification() {
        let spec = FamilyId::FiveSeries.psi(0);
        let a = classify_eigen_edge(&spec, &edge("cell=0;from=0;to=1"), 30).unwrap();
        assert_eq!(a.classification.kind, RestrictionKind::SingleExtremum);
        assert_eq!(a.ratio.unwrap().to_f64(), -1.0);
        assert_eq!(a.classification.theta.unwrap().value, 0.5);
        let two = FamilyId::TwoSeries.psi(0);
        let a = classify_eigen_edge(&two, &edge("cell=0;from=0;to=1"), 30).unwrap();
        assert_eq!(a.classification.kind, RestrictionKind::StrictlyMonotone);
        assert_eq!(a.classification.beta, Some(BoundaryFlag::Zero));
        let a = classify_eigen_edge(&FamilyId::TwoSeries.psi(4), &edge("cell=0;from=0;to=1"), 30).unwrap();
        assert_eq!(a.classification.kind, RestrictionKind::MultiExtremum(4));
        let a = classify_eigen_edge(&two, &edge("cell=2;from=0;to=1"), 30).unwrap();
        assert_eq!(a.classification.kind, RestrictionKind::Constant);
    }

    #[test]
    fn exact_ratio_when_rational() {
        let x0y2: EdgeRef = "cell=0;from=0;to=1".parse().unwrap();
        let spec = FamilyId::FiveSeries.psi(0);
        let r = exact_edge_ratio(&spec, &x0y2).unwrap().unwrap();
        assert_eq!(r, ExtendedRatio::finite(rat(-1, 1)));
        // 2-series at level 1 gives a ratio in ℚ(√17) \ ℚ.
        assert_eq!(exact_edge_ratio(&FamilyId::TwoSeries.psi(0), &x0y2).unwrap(), None);
        for fam in FamilyId::ALL {
            let spec = fam.psi(1);
            let lambdas = spec.lambdas(4).unwrap();
            for w in crate::gasket::CellWord::all(2) {
                let e = EdgeRef::new(w, 0, 1).unwrap();
                if let Ok(Some(r)) = exact_edge_ratio(&spec, &e) {
                    let f = edge_ratio(&spec, &lambdas, &e).unwrap();
                    match (r.value(), f.value()) {
                        (Some(a), Some(b)) => assert!((crate::scalar::rational_to_f64(&a) - b).abs() < 1e-9),
                        (a, b) => assert_eq!(a.is_none(), b.is_none() || b.unwrap().abs() > 1e12),
                    }
                }
            }
        }
    }
}
