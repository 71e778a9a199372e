//! Versioned report schemas. All collections are ordered (Vec / BTreeMap)
//! so serialization is byte-stable across runs.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use popcmt_core::simulation::SubgroupBreakdown;

use crate::provenance::Provenance;

pub const CONTENT_REPORT_VERSION: &str = "content-report-v1";
pub const STYLE_REPORT_VERSION: &str = "style-report-v1";
pub const POP_REPORT_VERSION: &str = "pop-report-v1";
pub const UBS_REPORT_VERSION: &str = "ubs-report-v1";
pub const NDCG_REPORT_VERSION: &str = "ndcg-report-v1";
pub const BENCH_REPORT_VERSION: &str = "bench-report-v1";

#[derive(Debug, Serialize, Deserialize)]
pub struct ContentReport {
    pub schema_version: String,
    pub provenance: Provenance,
    pub candidates: Vec<ContentRow>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ContentRow {
    pub id: String,
    pub content_id: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bleu1: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub meteor: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub embed_f1: Option<f64>,
    /// Winning reference id per metric.
    pub argmax_ref: BTreeMap<String, String>,
    /// Engagement weight per reference, in reference order.
    pub weights_used: Vec<f64>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct StyleReport {
    pub schema_version: String,
    pub provenance: Provenance,
    pub candidates: Vec<StyleRow>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct StyleRow {
    pub id: String,
    pub le: f64,
    pub ci: f64,
    pub er: f64,
    pub sci: f64,
    pub srs: f64,
    /// (judge index, dimension) pairs dropped after a failed retry.
    pub dropped_judges: Vec<(usize, String)>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct PopReport {
    pub schema_version: String,
    pub provenance: Provenance,
    pub candidates: Vec<PopRow>,
    pub mean_probability: f64,
    /// The benchmark column: mean probability scaled to 0-100.
    pub mean_probability_x100: f64,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct PopRow {
    pub id: String,
    pub probability: f64,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct UbsReport {
    pub schema_version: String,
    pub provenance: Provenance,
    pub candidates: Vec<UbsRow>,
    pub mean_ubs: f64,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct UbsRow {
    pub id: String,
    pub ubs: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counting_ubs: Option<f64>,
    pub p_interested: f64,
    pub per_subgroup: Vec<SubgroupBreakdown>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct NdcgReport {
    pub schema_version: String,
    pub provenance: Provenance,
    pub mean_ndcg: f64,
    pub items_evaluated: usize,
    pub items_skipped: usize,
    pub per_item: Vec<popcmt_core::simulation::ItemNdcg>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct BenchReport {
    pub schema_version: String,
    pub provenance: Provenance,
    pub rows: Vec<BenchRow>,
    /// Candidate-level failures; a nonempty list marks the report partial.
    pub errors: Vec<BenchError>,
}

/// One row per candidate set: the six benchmark columns (0-100 scale)
/// plus the per-dimension style breakdown.
#[derive(Debug, Serialize, Deserialize)]
pub struct BenchRow {
    pub name: String,
    pub bleu1: f64,
    pub meteor: f64,
    pub f1: f64,
    pub srs: f64,
    pub popularity_prediction: f64,
    pub ubs: f64,
    pub srs_dimensions: SrsDimensions,
    pub candidates_evaluated: usize,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct SrsDimensions {
    pub le: f64,
    pub ci: f64,
    pub er: f64,
    pub sci: f64,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct BenchError {
    pub set: String,
    pub candidate_id: String,
    pub stage: String,
    pub message: String,
}

/// Write a report as pretty JSON with a trailing newline.
pub fn write_report<T: Serialize>(path: &std::path::Path, report: &T) -> anyhow::Result<()> {
    let mut json = serde_json::to_string_pretty(report)?;
    json.push('\n');
    std::fs::write(path, json)?;
    Ok(())
}
