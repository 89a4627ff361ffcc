//! Machine-readable output records.
//!
//! One [`OutputRecord`] per invocation. Exact fractions are authoritative
//! and always present; decimal renderings are annotations. JSON output
//! round-trips: parsing it back into [`OutputRecord`] and re-serializing is
//! byte-identical.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use lucas_recip::proofcheck::CheckReport;
use lucas_recip::rational::decimal_string;
use lucas_recip::tailsum::FloorResult;

pub const EVIDENCE_DIGITS: usize = 12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub command: String,
    pub params: BTreeMap<String, String>,
    pub result: RecordResult,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub evidence: Option<Evidence>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub summary: Option<BTreeMap<String, u64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RecordResult {
    Value(String),
    VerifyRows(Vec<VerifyRow>),
    CheckRows(Vec<CheckRow>),
}

/// One row of a closed-form-vs-certified sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyRow {
    pub family: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s: Option<u32>,
    pub n: i64,
    pub closed_form: String,
    pub certified: String,
    pub status: String,
}

/// One proof-check report row.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckRow {
    pub check: String,
    pub a: i64,
    pub index: i64,
    pub status: String,
    pub witness: String,
}

impl From<&CheckReport> for CheckRow {
    fn from(report: &CheckReport) -> Self {
        CheckRow {
            check: report.kind.id().to_string(),
            a: report.a,
            index: report.index,
            status: report.status().to_string(),
            witness: report.witness.clone(),
        }
    }
}

/// Certification evidence: the refinement effort and the final enclosure of
/// the reciprocal, each endpoint as an exact fraction plus a decimal
/// annotation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Evidence {
    pub terms_used: u32,
    pub enclosure_lo: ExactValue,
    pub enclosure_hi: ExactValue,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExactValue {
    pub fraction: String,
    pub decimal: String,
}

impl Evidence {
    pub fn from_floor_result(result: &FloorResult) -> Self {
        Evidence {
            terms_used: result.terms_used,
            enclosure_lo: ExactValue {
                fraction: result.enclosure.lo().to_string(),
                decimal: decimal_string(result.enclosure.lo(), EVIDENCE_DIGITS),
            },
            enclosure_hi: ExactValue {
                fraction: result.enclosure.hi().to_string(),
                decimal: decimal_string(result.enclosure.hi(), EVIDENCE_DIGITS),
            },
        }
    }
}
