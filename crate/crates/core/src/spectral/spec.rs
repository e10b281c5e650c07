use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::gasket::{build_graph, VertexId};
use crate::scalar::{rat, rational_to_f64, Scalar};

use super::lambda::LambdaSequence;

/// Relative bound on the graph eigen-equation residual of initial values.
pub const RESIDUAL_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundaryCondition {
    Dirichlet,
    Neumann,
}

/// A Laplacian eigenfunction: a graph eigenfunction on V_{m₀} plus the
/// levels beyond m₀ at which the + branch of the decimation is taken.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenSpec {
    birth_level: usize,
    birth_eigenvalue: BigRational,
    plus_set: BTreeSet<usize>,
    boundary: BoundaryCondition,
    initial_values: BTreeMap<VertexId, BigRational>,
}

impl EigenSpec {
    pub fn new(
        birth_level: usize,
        birth_eigenvalue: BigRational,
        plus_set: BTreeSet<usize>,
        boundary: BoundaryCondition,
        initial_values: BTreeMap<VertexId, BigRational>,
    ) -> Result<Self> {
        let spec = EigenSpec { birth_level, birth_eigenvalue, plus_set, boundary, initial_values };
        spec.check_branches()?;
        spec.check_values()?;
        Ok(spec)
    }

    fn check_branches(&self) -> Result<()> {
        if let Some(&k) = self.plus_set.iter().find(|&&k| k <= self.birth_level) {
            return Err(Error::InvalidSpec(format!(
                "plus level {k} is not above the level of birth {}",
                self.birth_level
            )));
        }
        if self.birth_eigenvalue == rat(6, 1) && !self.plus_set.contains(&(self.birth_level + 1)) {
            return Err(Error::InvalidSpec(
                "birth eigenvalue 6 needs the + branch at the next level (the − branch gives 2)".into(),
            ));
        }
        Ok(())
    }

    fn check_values(&self) -> Result<()> {
        let g = build_graph(self.birth_level)?;
        for v in g.vertices() {
            if !self.initial_values.contains_key(v) {
                let (x, y) = v.coords();
                return Err(Error::InvalidSpec(format!("no value for the vertex at ({x:.6}, {y:.6})")));
            }
        }
        if self.initial_values.len() != g.vertex_count() {
            return Err(Error::InvalidSpec(format!(
                "values given for vertices outside V_{}",
                self.birth_level
            )));
        }
        let scale = self
            .initial_values
            .values()
            .map(|v| v.abs())
            .max()
            .unwrap_or_else(BigRational::zero);
        if scale.is_zero() {
            return Err(Error::InvalidSpec("initial values are identically zero".into()));
        }
        if self.boundary == BoundaryCondition::Dirichlet {
            if let Some(q) = (0..3).find(|&c| !self.initial_values[&VertexId::boundary(c)].is_zero()) {
                return Err(Error::InvalidSpec(format!("Dirichlet spec is nonzero at q{q}")));
            }
        }
        let values: HashMap<VertexId, BigRational> =
            self.initial_values.iter().map(|(k, v)| (*k, v.clone())).collect();
        let mut worst = BigRational::zero();
        for x in g.interior() {
            let lap = g.laplacian_at(&values, x).expect("all values present");
            let res = (lap + &self.birth_eigenvalue * &values[x]).abs();
            if res > worst {
                worst = res;
            }
        }
        let rel = rational_to_f64(&worst) / rational_to_f64(&scale);
        if rel > RESIDUAL_TOL {
            return Err(Error::InvalidSpec(format!(
                "initial values are not a graph eigenfunction: relative residual {rel:e}"
            )));
        }
        Ok(())
    }

    pub fn birth_level(&self) -> usize {
        self.birth_level
    }

    pub fn birth_eigenvalue(&self) -> &BigRational {
        &self.birth_eigenvalue
    }

    pub fn plus_set(&self) -> &BTreeSet<usize> {
        &self.plus_set
    }

    pub fn boundary(&self) -> BoundaryCondition {
        self.boundary
    }

    pub fn initial_values(&self) -> &BTreeMap<VertexId, BigRational> {
        &self.initial_values
    }

    pub fn initial_values_f64(&self) -> HashMap<VertexId, f64> {
        self.initial_values.iter().map(|(k, v)| (*k, v.as_f64())).collect()
    }

    /// m₁: one past the last + branch, or m₀ + 1 when there is none.
    pub fn fixation_level(&self) -> usize {
        self.plus_set
            .iter()
            .next_back()
            .map_or(self.birth_level + 1, |k| k + 1)
    }

    /// ε_level for level > m₀.
    pub fn epsilon(&self, level: usize) -> i8 {
        if self.plus_set.contains(&level) {
            1
        } else {
            -1
        }
    }

    pub fn with_plus_set(&self, plus_set: BTreeSet<usize>) -> Result<Self> {
        let spec = EigenSpec { plus_set, ..self.clone() };
        spec.check_branches()?;
        Ok(spec)
    }

    /// λ_{m₀}, …, λ_{up_to}.
    pub fn lambdas(&self, up_to: usize) -> Result<LambdaSequence> {
        LambdaSequence::new(
            self.birth_level,
            self.birth_eigenvalue.as_f64(),
            self.plus_set.clone(),
            up_to.max(self.birth_level),
        )
    }
}
