//! `report.json` written by `verify`.

use serde::{Deserialize, Serialize};

pub const REPORT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub version: u32,
    pub cases: Vec<CaseRecord>,
}

/// Numeric fields are absent when the case failed; `error` says why.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CaseRecord {
    pub mode: String,
    pub matrix: [f64; 4],
    pub n: usize,
    pub half_width: f64,
    pub err_linf: Option<f64>,
    pub err_l1: Option<f64>,
    pub mass_lhs: Option<f64>,
    pub mass_rhs: Option<f64>,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub window_leak: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("report is plain data");
        text.push('\n');
        text
    }
}
