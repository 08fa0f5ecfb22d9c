//! The report document and its JSON and CSV renderings.

use std::fmt::Write as _;

use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;
use xfield::VerificationReport;

use crate::config::RunConfig;

pub const TOOL: &str = "xfield";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Header of the `ricci` table.
pub const RICCI_CSV_HEADER: &str = "x0,x1,x2,x3,R_embed,R_oracle,abs_diff";
/// Header of the report table.
pub const REPORT_CSV_HEADER: &str =
    "check,family,params,n_points,seed,max_abs_residual,max_rel_residual,tolerance,gating,pass";

#[derive(Debug, Serialize)]
pub struct Entry {
    pub check: String,
    pub family: String,
    #[serde(serialize_with = "ordered_params")]
    pub params: Vec<(String, f64)>,
    pub n_points: usize,
    pub seed: u64,
    pub max_abs_residual: f64,
    pub max_rel_residual: f64,
    pub tolerance: f64,
    pub gating: bool,
    pub pass: bool,
    pub worst_point: Vec<f64>,
}

impl From<VerificationReport> for Entry {
    fn from(r: VerificationReport) -> Self {
        Self {
            check: r.check,
            family: r.family,
            params: r.params,
            n_points: r.n_points,
            seed: r.seed,
            max_abs_residual: r.max_abs_residual,
            max_rel_residual: r.max_rel_residual,
            tolerance: r.tolerance,
            gating: r.gating,
            pass: r.pass,
            worst_point: r.worst_point,
        }
    }
}

fn ordered_params<S: Serializer>(params: &[(String, f64)], s: S) -> Result<S::Ok, S::Error> {
    let mut map = s.serialize_map(Some(params.len()))?;
    for (k, v) in params {
        map.serialize_entry(k, v)?;
    }
    map.end()
}

/// One row of the `ricci` table.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct RicciRow {
    pub x: [f64; 4],
    pub r_embed: f64,
    pub r_oracle: f64,
    pub abs_diff: f64,
}

#[derive(Debug, Serialize)]
pub struct ErrorInfo {
    pub kind: String,
    pub message: String,
}

#[derive(Debug, Serialize)]
pub struct ReportDocument {
    pub tool: &'static str,
    pub version: &'static str,
    pub config: RunConfig,
    pub reports: Vec<Entry>,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorInfo>,
    #[serde(skip)]
    pub table: Vec<RicciRow>,
}

impl ReportDocument {
    pub fn new(config: RunConfig) -> Self {
        Self {
            tool: TOOL,
            version: VERSION,
            config,
            reports: Vec::new(),
            pass: true,
            degree: None,
            error: None,
            table: Vec::new(),
        }
    }

    pub fn push(&mut self, report: VerificationReport) {
        self.reports.push(report.into());
    }

    pub fn extend(&mut self, reports: impl IntoIterator<Item = VerificationReport>) {
        for r in reports {
            self.push(r);
        }
    }

    /// Overall verdict: every gating entry passed and no error was recorded.
    pub fn finalize(&mut self) {
        self.pass = self.error.is_none() && self.reports.iter().filter(|e| e.gating).all(|e| e.pass);
    }

    pub fn to_json(&self) -> serde_json::Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        if self.config.command == "ricci" {
            out.push_str(RICCI_CSV_HEADER);
            out.push('\n');
            for row in &self.table {
                let [a, b, c, d] = row.x;
                let _ = writeln!(out, "{a},{b},{c},{d},{},{},{}", row.r_embed, row.r_oracle, row.abs_diff);
            }
            return out;
        }
        out.push_str(REPORT_CSV_HEADER);
        out.push('\n');
        for e in &self.reports {
            let params: Vec<String> = e.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{},{},{}",
                csv_field(&e.check),
                e.family,
                csv_field(&params.join(";")),
                e.n_points,
                e.seed,
                e.max_abs_residual,
                e.max_rel_residual,
                e.tolerance,
                e.gating,
                e.pass
            );
        }
        out
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}
