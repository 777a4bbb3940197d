use std::path::Path;

use serde::Serialize;

use super::{ClaimReport, ClaimsError};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Csv,
}

impl ReportFormat {
    /// From a file extension: `.csv` is CSV, anything else JSON.
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some(e) if e.eq_ignore_ascii_case("csv") => ReportFormat::Csv,
            _ => ReportFormat::Json,
        }
    }
}

#[derive(Serialize)]
struct Row<'a> {
    id: &'a str,
    description: &'a str,
    lhs: Option<f64>,
    rhs: Option<f64>,
    relation: &'a str,
    status: &'a str,
    tolerance: f64,
    required: bool,
    note: &'a str,
}

pub fn render_report(report: &ClaimReport, format: ReportFormat) -> Result<String, ClaimsError> {
    match format {
        ReportFormat::Json => {
            let mut s = serde_json::to_string_pretty(report)
                .map_err(|e| ClaimsError::Encoding(e.to_string()))?;
            s.push('\n');
            Ok(s)
        }
        ReportFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for c in &report.claims {
                let status = match c.status {
                    super::Status::Pass => "PASS",
                    super::Status::Fail => "FAIL",
                    super::Status::Info => "INFO",
                };
                w.serialize(Row {
                    id: &c.id,
                    description: &c.description,
                    lhs: c.lhs,
                    rhs: c.rhs,
                    relation: c.relation.symbol(),
                    status,
                    tolerance: c.tolerance,
                    required: c.required,
                    note: &c.note,
                })
                .map_err(|e| ClaimsError::Encoding(e.to_string()))?;
            }
            let bytes = w
                .into_inner()
                .map_err(|e| ClaimsError::Encoding(e.to_string()))?;
            String::from_utf8(bytes).map_err(|e| ClaimsError::Encoding(e.to_string()))
        }
    }
}

/// Writes the report as JSON (all fields) or CSV (one row per claim).
pub fn emit_report(
    report: &ClaimReport,
    format: ReportFormat,
    path: &Path,
) -> Result<(), ClaimsError> {
    std::fs::write(path, render_report(report, format)?)?;
    Ok(())
}

pub fn read_report(path: &Path) -> Result<ClaimReport, ClaimsError> {
    let text = std::fs::read_to_string(path)?;
    serde_json::from_str(&text).map_err(|e| ClaimsError::Encoding(e.to_string()))
}
