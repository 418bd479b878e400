use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::simplify::SignMark;
use crate::zda::Certificate;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Newton,
    Zda,
    Both,
    Simplify,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Newton => "newton",
            Method::Zda => "zda",
            Method::Both => "both",
            Method::Simplify => "simplify",
        })
    }
}

impl FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "newton" => Ok(Method::Newton),
            "zda" => Ok(Method::Zda),
            "both" => Ok(Method::Both),
            "simplify" => Ok(Method::Simplify),
            _ => Err(Error::schema("method", format!("unknown method '{s}'"))),
        }
    }
}

/// How the initial basis `M₀` is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InitKind {
    /// Every monomial of degree at most half the polynomial's degree.
    Full,
    /// Hull-linear degree and exponent bounds.
    Heuristic,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RemovedMonomial {
    /// 1-based constraint index.
    pub constraint: usize,
    /// 1-based sweep or iteration in which it was removed (0 for Newton).
    pub sweep: usize,
    pub monomial: Vec<u32>,
    pub text: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstraintSummary {
    pub index: usize,
    pub initial_size: usize,
    pub final_size: usize,
    pub initial_basis: Vec<Vec<u32>>,
    pub newton_basis: Option<Vec<Vec<u32>>>,
    pub final_basis: Vec<Vec<u32>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ReportStatus {
    Reduced,
    Simplified,
    Infeasible {
        message: String,
        certificate: Option<Certificate>,
    },
}

impl ReportStatus {
    pub fn is_infeasible(&self) -> bool {
        matches!(self, ReportStatus::Infeasible { .. })
    }
}

/// Outcome of one reduction or simplification run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionReport {
    /// SHA-256 of the input text.
    pub input_digest: String,
    pub method: Method,
    pub init: InitKind,
    pub nvars: usize,
    /// Summed over constraints.
    pub initial_size: usize,
    pub final_size: usize,
    pub newton_final_size: Option<usize>,
    pub zda_final_size: Option<usize>,
    /// `zda ⊆ newton ⊆ initial`, when both reducers ran and ZDA finished.
    pub containment_ok: Option<bool>,
    pub sweeps: usize,
    pub removed: Vec<RemovedMonomial>,
    pub constraints: Vec<ConstraintSummary>,
    pub zeroed_decision_vars: Vec<usize>,
    pub decision_signs: Vec<SignMark>,
    pub status: ReportStatus,
    pub wall_time_us: u64,
}

pub fn input_digest(text: &str) -> String {
    hex::encode(Sha256::digest(text.as_bytes()))
}

/// Canonical JSON: object keys sorted, rationals as `"num/den"`.
pub fn export_report_json(report: &ReductionReport) -> String {
    // serde_json::Value keeps object keys in a BTreeMap
    let value = serde_json::to_value(report).expect("report is always serializable");
    let mut s = serde_json::to_string_pretty(&value).expect("value is always serializable");
    s.push('\n');
    s
}

pub fn parse_report_json(text: &str) -> Result<ReductionReport> {
    serde_json::from_str(text).map_err(|e| Error::schema(format!("line {} column {}", e.line(), e.column()), e.to_string()))
}
