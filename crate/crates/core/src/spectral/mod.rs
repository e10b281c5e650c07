//! Spectral decimation, eigenfunction edge restrictions and extremum counts.

mod counting;
mod dynamics;
mod extend;
mod family;
mod lambda;
mod spec;

pub use counting::{
    assembled_count, boundary_counts, branch_formula, classify_eigen_edge, companion_spec, count_extrema_thm3,
    edge_ratio, edge_triple, exact_edge_ratio, index_for_plus_levels, junction_is_extremum,
    plus_levels_for_index, psi_n_spec, r0_branch_count, AssembledCount, BoundaryEdge, BranchCount,
    EdgeAnalysis, R0Branch,
};
pub use dynamics::{
    classify_eigen, edge_next_eigen, eigen_triple, extreme_point_test, locate_extremum_eigen,
    ratio_eigen_from_cell, ratio_step_eigen, refine_eigen, EigenClassification, ExtremePointVerdict,
    RatioCoefficients, BORDERLINE_TOL, CONSTANT_TOL, ENDPOINT_TOL,
};
pub use extend::{cell_values, cell_values_exact, eigen_extend_cell, eigen_values, eigen_values_exact, exact_lambdas};
pub use family::FamilyId;
pub use lambda::{is_forbidden, lambda_next, LambdaSequence, FORBIDDEN_TOL};
pub use spec::{BoundaryCondition, EigenSpec, RESIDUAL_TOL};
