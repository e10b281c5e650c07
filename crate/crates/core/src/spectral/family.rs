use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::fixture::parse_fixture;

use super::spec::EigenSpec;

const TWO_SERIES: &str = include_str!("../../fixtures/two_series.sgf");
const FIVE_SERIES: &str = include_str!("../../fixtures/five_series.sgf");
const SIX_SERIES: &str = include_str!("../../fixtures/six_series.sgf");

/// The three shipped Dirichlet families, named by their birth eigenvalue.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilyId {
    TwoSeries,
    FiveSeries,
    SixSeries,
}

impl FamilyId {
    pub const ALL: [FamilyId; 3] = [FamilyId::TwoSeries, FamilyId::FiveSeries, FamilyId::SixSeries];

    pub fn birth_eigenvalue(&self) -> i64 {
        match self {
            FamilyId::TwoSeries => 2,
            FamilyId::FiveSeries => 5,
            FamilyId::SixSeries => 6,
        }
    }

    pub fn birth_level(&self) -> usize {
        match self {
            FamilyId::SixSeries => 2,
            _ => 1,
        }
    }

    /// Level m whose values are shared by every member ψ_n.
    pub fn base_level(&self) -> usize {
        match self {
            FamilyId::SixSeries => 3,
            _ => 1,
        }
    }

    pub fn fixture_text(&self) -> &'static str {
        match self {
            FamilyId::TwoSeries => TWO_SERIES,
            FamilyId::FiveSeries => FIVE_SERIES,
            FamilyId::SixSeries => SIX_SERIES,
        }
    }

    /// ψ₀ of the family. Panics only if a shipped fixture is corrupt.
    pub fn base_spec(&self) -> EigenSpec {
        static CACHE: OnceLock<[EigenSpec; 3]> = OnceLock::new();
        let specs = CACHE.get_or_init(|| {
            FamilyId::ALL.map(|f| {
                parse_fixture(f.fixture_text())
                    .unwrap_or_else(|e| panic!("shipped fixture for {f} is invalid: {e}"))
            })
        });
        specs[*self as usize].clone()
    }

    /// ψ_n of the family.
    pub fn psi(&self, n: u64) -> EigenSpec {
        super::psi_n_spec(&self.base_spec(), self.base_level(), n)
            .expect("family index sets always satisfy the branch constraints")
    }

    /// Plus levels of ψ_n.
    pub fn plus_set(&self, n: u64) -> BTreeSet<usize> {
        self.psi(n).plus_set().clone()
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-series", self.birth_eigenvalue())
    }
}

impl FromStr for FamilyId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "2" => Ok(FamilyId::TwoSeries),
            "5" => Ok(FamilyId::FiveSeries),
            "6" => Ok(FamilyId::SixSeries),
            other => Err(Error::Parse(format!("unknown family {other:?}; expected 2, 5 or 6"))),
        }
    }
}
