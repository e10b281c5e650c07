//! Addresses, geometry and graph structure of the pre-gaskets Γ_m.
//!
//! The boundary triangle is fixed at q₀ = (0, 0), q₁ = (1, 0),
//! q₂ = (1/2, √3/2). Every vertex of V_* has coordinates (x, y·√3) with x and
//! y dyadic, so a vertex is keyed exactly by the pair of dyadic numerators
//! over a common power of two.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Default cap on graph levels; overridden by the `SG_MAX_LEVEL` variable.
pub const DEFAULT_MAX_LEVEL: usize = 12;

/// Dyadic bits of the coordinate key. Cells deeper than this cannot be keyed.
const COORD_BITS: u32 = 120;

/// Deepest cell whose corners still have exact coordinate keys.
pub const MAX_ADDRESS_DEPTH: usize = COORD_BITS as usize - 2;

pub fn max_level() -> usize {
    std::env::var("SG_MAX_LEVEL")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_LEVEL)
}

pub(crate) fn check_level(m: usize) -> Result<()> {
    let max = max_level();
    if m > max {
        return Err(Error::LevelTooLarge { requested: m, max });
    }
    Ok(())
}

/// Address w = w₁…w_m of the m-cell F_w(SG).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct CellWord(Vec<u8>);

impl CellWord {
    pub fn new(letters: Vec<u8>) -> Result<Self> {
        if let Some(bad) = letters.iter().find(|&&l| l > 2) {
            return Err(Error::Parse(format!("cell letter {bad} not in {{0,1,2}}")));
        }
        Ok(CellWord(letters))
    }

    pub fn root() -> Self {
        CellWord(Vec::new())
    }

    pub fn level(&self) -> usize {
        self.0.len()
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn child(&self, letter: u8) -> Self {
        assert!(letter <= 2, "cell letter out of range");
        let mut v = self.0.clone();
        v.push(letter);
        CellWord(v)
    }

    pub fn prefix(&self, len: usize) -> Self {
        CellWord(self.0[..len].to_vec())
    }

    /// All words of length `m`, in lexicographic order.
    pub fn all(m: usize) -> Vec<CellWord> {
        let mut out = vec![CellWord::root()];
        for _ in 0..m {
            out = out
                .iter()
                .flat_map(|w| (0..3).map(move |l| w.child(l)))
                .collect();
        }
        out
    }
}

impl fmt::Display for CellWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl FromStr for CellWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let letters = s
            .trim()
            .chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                '2' => Ok(2),
                other => Err(Error::Parse(format!("invalid cell letter {other:?}"))),
            })
            .collect::<Result<Vec<u8>>>()?;
        CellWord::new(letters)
    }
}

/// A vertex of V_*, identified by its exact planar position.
///
/// `x` is the x-coordinate and `y` the y-coordinate divided by √3, both as
/// numerators over 2^120. Construction from any address yields the same key
/// for the same point, so the key is its own canonical form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexId {
    x: i128,
    y: i128,
}

impl VertexId {
    pub fn boundary(corner: u8) -> Self {
        let one = 1i128 << COORD_BITS;
        match corner {
            0 => VertexId { x: 0, y: 0 },
            1 => VertexId { x: one, y: 0 },
            2 => VertexId { x: one / 2, y: one / 2 },
            _ => panic!("corner index {corner} out of range"),
        }
    }

    /// F_w q_corner.
    pub fn from_address(cell: &CellWord, corner: u8) -> Result<Self> {
        if corner > 2 {
            return Err(Error::Parse(format!("corner {corner} not in {{0,1,2}}")));
        }
        if cell.level() > MAX_ADDRESS_DEPTH {
            return Err(Error::LevelTooLarge {
                requested: cell.level(),
                max: MAX_ADDRESS_DEPTH,
            });
        }
        let mut p = VertexId::boundary(corner);
        for &l in cell.letters().iter().rev() {
            p = p.contract(l);
        }
        Ok(p)
    }

    /// F_i(p) = (p + q_i)/2.
    fn contract(self, i: u8) -> Self {
        VertexId::midpoint(self, VertexId::boundary(i))
    }

    pub fn midpoint(a: VertexId, b: VertexId) -> Self {
        debug_assert!((a.x + b.x) % 2 == 0 && (a.y + b.y) % 2 == 0);
        VertexId {
            x: (a.x + b.x) / 2,
            y: (a.y + b.y) / 2,
        }
    }

    /// Idempotent; the coordinate key is already canonical.
    pub fn canonical(self) -> Self {
        self
    }

    pub fn is_boundary(&self) -> bool {
        (0..3).any(|c| *self == VertexId::boundary(c))
    }

    /// Planar coordinates with q₂ = (1/2, √3/2).
    pub fn coords(&self) -> (f64, f64) {
        let scale = (1u128 << COORD_BITS) as f64;
        (
            self.x as f64 / scale,
            self.y as f64 / scale * 3f64.sqrt(),
        )
    }
}

/// Corners F_w q₀, F_w q₁, F_w q₂ in corner order.
pub fn cell_vertices(w: &CellWord) -> Result<[VertexId; 3]> {
    Ok([
        VertexId::from_address(w, 0)?,
        VertexId::from_address(w, 1)?,
        VertexId::from_address(w, 2)?,
    ])
}

/// Corners of the child cell `w·j` given the corners of `w`.
pub fn child_corners(parent: &[VertexId; 3], j: u8) -> [VertexId; 3] {
    let pj = parent[j as usize];
    [0, 1, 2].map(|i| {
        if i == j as usize {
            pj
        } else {
            VertexId::midpoint(parent[i], pj)
        }
    })
}

/// Calls `f` with the corners of every m-cell.
pub fn for_each_cell(m: usize, mut f: impl FnMut(&[VertexId; 3])) {
    fn rec(corners: [VertexId; 3], depth: usize, f: &mut impl FnMut(&[VertexId; 3])) {
        if depth == 0 {
            f(&corners);
            return;
        }
        for j in 0..3 {
            rec(child_corners(&corners, j), depth - 1, f);
        }
    }
    rec([0, 1, 2].map(VertexId::boundary), m, &mut f);
}

/// Oriented edge of an m-cell: from F_w q_from to F_w q_to.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EdgeRef {
    cell: CellWord,
    from: u8,
    to: u8,
}

impl EdgeRef {
    pub fn new(cell: CellWord, from: u8, to: u8) -> Result<Self> {
        if from > 2 || to > 2 {
            return Err(Error::Parse(format!("corner indices ({from},{to}) out of range")));
        }
        if from == to {
            return Err(Error::Parse("edge endpoints must be distinct corners".into()));
        }
        Ok(EdgeRef { cell, from, to })
    }

    /// Bottom edge q₀ → q₁ of the whole gasket.
    pub fn bottom() -> Self {
        EdgeRef { cell: CellWord::root(), from: 0, to: 1 }
    }

    /// Left edge q₀ → q₂ of the whole gasket.
    pub fn left() -> Self {
        EdgeRef { cell: CellWord::root(), from: 0, to: 2 }
    }

    pub fn cell(&self) -> &CellWord {
        &self.cell
    }

    pub fn from_corner(&self) -> u8 {
        self.from
    }

    pub fn to_corner(&self) -> u8 {
        self.to
    }

    pub fn opposite_corner(&self) -> u8 {
        3 - self.from - self.to
    }

    pub fn level(&self) -> usize {
        self.cell.level()
    }

    pub fn reverse(&self) -> Self {
        EdgeRef { cell: self.cell.clone(), from: self.to, to: self.from }
    }

    /// The half φ_branch(E): branch 0 keeps p₀, branch 1 keeps p₁.
    pub fn half(&self, branch: u8) -> Self {
        let letter = if branch == 0 { self.from } else { self.to };
        EdgeRef { cell: self.cell.child(letter), from: self.from, to: self.to }
    }

    pub fn endpoints(&self) -> Result<(VertexId, VertexId)> {
        Ok((
            VertexId::from_address(&self.cell, self.from)?,
            VertexId::from_address(&self.cell, self.to)?,
        ))
    }

    pub fn midpoint(&self) -> Result<VertexId> {
        let (a, b) = self.endpoints()?;
        Ok(VertexId::midpoint(a, b))
    }

    /// Euclidean length 2^-m.
    pub fn length(&self) -> f64 {
        0.5f64.powi(self.level() as i32)
    }

    /// `cell=<word>;from=<c>;to=<c>`.
    pub fn spec_string(&self) -> String {
        format!("cell={};from={};to={}", self.cell, self.from, self.to)
    }
}

impl fmt::Display for EdgeRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.spec_string())
    }
}

impl FromStr for EdgeRef {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut cell = None;
        let mut from = None;
        let mut to = None;
        for part in s.split(';') {
            let part = part.trim();
            if part.is_empty() {
                continue;
            }
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected key=value, got {part:?}")))?;
            let corner = |v: &str| -> Result<u8> {
                match v.trim() {
                    "0" => Ok(0),
                    "1" => Ok(1),
                    "2" => Ok(2),
                    other => Err(Error::Parse(format!("invalid corner {other:?}"))),
                }
            };
            match key.trim() {
                "cell" => cell = Some(value.parse::<CellWord>()?),
                "from" => from = Some(corner(value)?),
                "to" => to = Some(corner(value)?),
                other => return Err(Error::Parse(format!("unknown edge field {other:?}"))),
            }
        }
        match (cell, from, to) {
            (Some(c), Some(f), Some(t)) => EdgeRef::new(c, f, t),
            _ => Err(Error::Parse(format!("edge spec {s:?} needs cell, from and to"))),
        }
    }
}

/// Binary word τ selecting a sub-edge E_τ.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct SubEdgeWord(Vec<u8>);

impl SubEdgeWord {
    pub fn new(letters: Vec<u8>) -> Result<Self> {
        if letters.iter().any(|&l| l > 1) {
            return Err(Error::Parse("sub-edge letters must be 0 or 1".into()));
        }
        Ok(SubEdgeWord(letters))
    }

    pub fn empty() -> Self {
        SubEdgeWord(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn concat(&self, other: &SubEdgeWord) -> Self {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        SubEdgeWord(v)
    }

    /// The length-`len` word whose letters are the binary digits of `index`,
    /// most significant first. Sub-edges enumerated this way are in order along E.
    pub fn from_index(index: u64, len: usize) -> Self {
        SubEdgeWord((0..len).rev().map(|k| ((index >> k) & 1) as u8).collect())
    }

    /// Left endpoint of E_τ as a parameter in [0, 1] along E.
    pub fn start_param(&self) -> f64 {
        self.0
            .iter()
            .enumerate()
            .map(|(i, &b)| f64::from(b) * 0.5f64.powi(i as i32 + 1))
            .sum()
    }
}

impl FromStr for SubEdgeWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let letters = s
            .trim()
            .chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                other => Err(Error::Parse(format!("invalid sub-edge letter {other:?}"))),
            })
            .collect::<Result<Vec<u8>>>()?;
        Ok(SubEdgeWord(letters))
    }
}

/// E_τ = φ_{τ₁} ∘ … ∘ φ_{τ_l} E, an (m + |τ|)-edge with E's orientation.
pub fn subedge(e: &EdgeRef, tau: &SubEdgeWord) -> EdgeRef {
    tau.letters().iter().fold(e.clone(), |acc, &b| acc.half(b))
}

/// Corner of E's cell not on E.
pub fn opposite_vertex(e: &EdgeRef) -> Result<VertexId> {
    VertexId::from_address(e.cell(), e.opposite_corner())
}

/// The graph Γ_m = (V_m, ∼_m).
#[derive(Debug, Clone)]
pub struct GraphLevel {
    level: usize,
    vertices: Vec<VertexId>,
    index: HashMap<VertexId, usize>,
    neighbors: Vec<Vec<usize>>,
    edge_count: usize,
}

impl GraphLevel {
    pub fn level(&self) -> usize {
        self.level
    }

    /// Vertices sorted by coordinate key.
    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn index_of(&self, v: &VertexId) -> Option<usize> {
        self.index.get(v).copied()
    }

    pub fn neighbors(&self, v: &VertexId) -> Option<impl Iterator<Item = &VertexId>> {
        let i = self.index_of(v)?;
        Some(self.neighbors[i].iter().map(move |&j| &self.vertices[j]))
    }

    pub fn degree(&self, v: &VertexId) -> Option<usize> {
        self.index_of(v).map(|i| self.neighbors[i].len())
    }

    pub fn adjacent(&self, a: &VertexId, b: &VertexId) -> bool {
        match (self.index_of(a), self.index_of(b)) {
            (Some(i), Some(j)) => self.neighbors[i].contains(&j),
            _ => false,
        }
    }

    pub fn interior(&self) -> impl Iterator<Item = &VertexId> {
        self.vertices.iter().filter(|v| !v.is_boundary())
    }

    /// Δ_m u(x) = Σ_{y∼x} (u(y) − u(x)), or `None` if a value is missing.
    pub fn laplacian_at<T: crate::scalar::Scalar>(
        &self,
        values: &HashMap<VertexId, T>,
        x: &VertexId,
    ) -> Option<T> {
        let ux = values.get(x)?;
        let mut acc = T::zero();
        for y in self.neighbors(x)? {
            acc = acc + (values.get(y)?.clone() - ux.clone());
        }
        Some(acc)
    }
}


pub fn build_graph(m: usize) -> Result<GraphLevel> {
    check_level(m)?;
    let mut index: HashMap<VertexId, usize> = HashMap::new();
    let mut raw: Vec<VertexId> = Vec::new();
    let mut edges: Vec<(VertexId, VertexId)> = Vec::with_capacity(3usize.pow(m as u32 + 1));
    for_each_cell(m, |c| {
        for v in c {
            if !index.contains_key(v) {
                index.insert(*v, raw.len());
                raw.push(*v);
            }
        }
        edges.push((c[0], c[1]));
        edges.push((c[1], c[2]));
        edges.push((c[0], c[2]));
    });
    raw.sort();
    let index: HashMap<VertexId, usize> = raw.iter().enumerate().map(|(i, v)| (*v, i)).collect();
    let mut neighbors = vec![Vec::with_capacity(4); raw.len()];
    for (a, b) in &edges {
        let (i, j) = (index[a], index[b]);
        neighbors[i].push(j);
        neighbors[j].push(i);
    }
    Ok(GraphLevel {
        level: m,
        vertices: raw,
        index,
        neighbors,
        edge_count: edges.len(),
    })
}
