//! JSON report documents for the CLI and for programmatic consumers.
//!
//! All rationals are serialized as exact `"num/den"` strings so nothing
//! downstream can coerce them to floats; field order is fixed by the struct
//! declarations, so serialization is byte-stable for equal inputs.

use serde::{Deserialize, Serialize};

use crate::dcalc::Rational;
use crate::obstruct::ObstructionReport;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub knot: String,
    pub cover: Vec<CoverPieceDoc>,
    pub homology_invariants: Vec<u64>,
    pub gz_lower: u64,
    pub gzc: GzcDoc,
    pub dbar_table: Vec<DbarEntryDoc>,
    pub annotations: Vec<AnnotationDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverPieceDoc {
    pub sign: i8,
    pub n: u64,
    pub vseq: Vec<u64>,
}

/// `p` and `null_rank` are absent when no prime meets the hypothesis; the
/// bound is then the vacuous 0.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GzcDoc {
    pub p: Option<u64>,
    pub bound: u64,
    pub null_rank: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DbarEntryDoc {
    /// Element in primary-part coordinates.
    pub element: Vec<u64>,
    /// Exact rational as `"num/den"`.
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnnotationDoc {
    pub fact: String,
    pub source: String,
}

pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

impl From<&ObstructionReport> for ReportDocument {
    fn from(report: &ObstructionReport) -> ReportDocument {
        ReportDocument {
            knot: report.knot.clone(),
            cover: report
                .cover
                .pieces()
                .iter()
                .map(|p| CoverPieceDoc {
                    sign: p.sign().as_i8(),
                    n: p.n(),
                    vseq: p.vseq().values().to_vec(),
                })
                .collect(),
            homology_invariants: report.homology_invariants.clone(),
            gz_lower: report.gz_lower,
            gzc: match report.gzc {
                Some((p, b)) => {
                    GzcDoc { p: Some(p), bound: b.bound, null_rank: Some(b.null_rank) }
                }
                None => GzcDoc { p: None, bound: 0, null_rank: None },
            },
            dbar_table: report
                .dbar_table
                .iter()
                .map(|(z, v)| DbarEntryDoc {
                    element: z.coords().to_vec(),
                    value: format_rational(v),
                })
                .collect(),
            annotations: report
                .annotations
                .iter()
                .map(|a| AnnotationDoc { fact: a.fact(), source: a.source().to_string() })
                .collect(),
        }
    }
}

impl ReportDocument {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report documents always serialize")
    }

    pub fn from_json(text: &str) -> serde_json::Result<ReportDocument> {
        serde_json::from_str(text)
    }
}
