//! CSV and JSON emission. Every document starts with the program version and
//! the full run configuration.

use std::io::Write;

use clap::ValueEnum;
use polydiv_core::estimator::ReportRow;
use serde::Serialize;

use crate::Result;

pub const VERSION: &str = env!("POLYDIV_VERSION");

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Serialize)]
struct Document<'a, C: Serialize, R: Serialize> {
    version: &'a str,
    command: &'a str,
    config: &'a C,
    #[serde(skip_serializing_if = "serde_json::Map::is_empty")]
    summary: &'a serde_json::Map<String, serde_json::Value>,
    rows: &'a [R],
}

/// Writes `rows` as CSV (with `#` header lines) or as one JSON document.
pub fn emit<W: Write, C: Serialize, R: Serialize>(
    mut w: W,
    format: Format,
    command: &str,
    config: &C,
    summary: &serde_json::Map<String, serde_json::Value>,
    rows: &[R],
) -> Result<()> {
    match format {
        Format::Csv => {
            writeln!(w, "# polydiv {VERSION}")?;
            writeln!(w, "# command {command}")?;
            writeln!(w, "# config {}", serde_json::to_string(config)?)?;
            if !summary.is_empty() {
                writeln!(w, "# summary {}", serde_json::to_string(summary)?)?;
            }
            let mut out = csv::Writer::from_writer(&mut w);
            for r in rows {
                out.serialize(r)?;
            }
            out.flush()?;
        }
        Format::Json => {
            let doc = Document {
                version: VERSION,
                command,
                config,
                summary,
                rows,
            };
            serde_json::to_writer_pretty(&mut w, &doc)?;
            writeln!(w)?;
        }
    }
    w.flush()?;
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RootRow {
    pub p: u64,
    pub k: u32,
    pub root: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RhoRow {
    pub d: u64,
    pub rho: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[allow(non_snake_case)]
pub struct CountRow {
    pub x: u64,
    pub y: f64,
    pub z: f64,
    pub H_F: u64,
    pub H_F_half: u64,
    pub H: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[allow(non_snake_case)]
pub struct EstimateRow {
    pub x: f64,
    pub y: f64,
    pub z: f64,
    pub regime: &'static str,
    pub eta: f64,
    pub u: f64,
    pub beta: f64,
    pub xi: f64,
    pub delta: f64,
    pub G: Option<f64>,
    pub order: f64,
    pub in_uniform_range: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[allow(non_snake_case)]
pub struct ClusterRow {
    pub a: u64,
    pub tau: u64,
    pub L: f64,
    pub W: u64,
    pub sigma: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[allow(non_snake_case)]
pub struct ClusterSumRow {
    pub r: f64,
    pub t: f64,
    pub eta: f64,
    pub A_max: u64,
    pub weight: &'static str,
    pub value: f64,
    pub terms: u64,
    pub last_decade: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PartitionRow {
    pub j: usize,
    pub lambda: u64,
    pub block_sum: f64,
    pub dev: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyRow {
    pub check: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[allow(non_snake_case)]
pub struct ReportLine {
    pub x: u64,
    pub y: f64,
    pub z: f64,
    pub regime: &'static str,
    pub eta: f64,
    pub u: f64,
    pub beta: f64,
    pub xi: f64,
    pub H_F: u64,
    pub H_F_half: u64,
    pub H: u64,
    pub order: f64,
    pub R1: f64,
    pub R2: f64,
    pub R3: f64,
}

impl From<&ReportRow> for ReportLine {
    fn from(r: &ReportRow) -> Self {
        Self {
            x: r.x,
            y: r.y,
            z: r.z,
            regime: r.regime.as_str(),
            eta: r.eta,
            u: r.u,
            beta: r.beta,
            xi: r.xi,
            H_F: r.hf,
            H_F_half: r.hf_half,
            H: r.h,
            order: r.order,
            R1: r.r1,
            R2: r.r2,
            R3: r.r3,
        }
    }
}
