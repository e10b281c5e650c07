//! The JSON report written by every subcommand.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub command: String,
    pub inputs: BTreeMap<String, String>,
    pub results: Results,
    pub tolerances: BTreeMap<String, f64>,
    pub oracle: Option<OracleReport>,
    pub meta: Option<Meta>,
}

/// Homogeneous ratio `num : den`; `den = "0"` is the point at infinity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RatioJson {
    pub num: String,
    pub den: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThetaJson {
    pub value: f64,
    pub exact: bool,
    pub error: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BranchJson {
    pub branch: String,
    pub n: u64,
    pub lambda0: f64,
    pub certified: bool,
    pub borderline: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleJson {
    pub param: f64,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CaseJson {
    pub case: String,
    pub predicted: String,
    pub observed: String,
    pub pass: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Results {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kind: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub extremum_count: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ratio: Option<RatioJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theta: Option<ThetaJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda_next: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub borderline: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub branch_count: Option<BranchJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<Vec<SampleJson>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cases: Option<Vec<CaseJson>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub passed: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleReport {
    pub level: usize,
    pub count: u64,
    pub positions: Vec<f64>,
    pub plateau: bool,
    pub tolerance: f64,
    pub agrees: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Meta {
    pub tool: String,
    pub version: String,
    pub elapsed_ms: f64,
}

impl Meta {
    pub fn new(elapsed: std::time::Duration) -> Self {
        Meta {
            tool: env!("CARGO_PKG_NAME").to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            elapsed_ms: elapsed.as_secs_f64() * 1e3,
        }
    }
}

/// `v` in decimal with 17 significant digits.
pub fn sig17(v: f64) -> String {
    if v == 0.0 || !v.is_finite() {
        return if v == 0.0 { "0".into() } else { v.to_string() };
    }
    let exp = v.abs().log10().floor() as i32;
    if !(-6..=20).contains(&exp) {
        return format!("{v:.16e}");
    }
    format!("{:.*}", (16 - exp).max(0) as usize, v)
}
