use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("function is constant on the edge; ratio undefined")]
    ConstantOnEdge,

    #[error("graph eigenvalue {value} is forbidden as an extension target (2 and 5 are excluded)")]
    ForbiddenEigenvalue { value: f64 },

    #[error("graph eigenvalue {value} exceeds 25/4; no real decimation branch")]
    EigenvalueOutOfRange { value: f64 },

    #[error("level {requested} exceeds the configured maximum {max} (set SG_MAX_LEVEL to raise it)")]
    LevelTooLarge { requested: usize, max: usize },

    #[error("not applicable: {0}")]
    NotApplicable(String),

    #[error("eigenfunction has no companion: {0}")]
    NoCompanion(String),

    #[error("unsupported family/edge pair: {0}")]
    UnsupportedPair(String),

    #[error("boundary slope trend inconclusive at l_max = {l_max}")]
    InconclusiveTrend { l_max: usize },

    #[error("invalid eigenfunction spec: {0}")]
    InvalidSpec(String),

    #[error("parse error: {0}")]
    Parse(String),
}
