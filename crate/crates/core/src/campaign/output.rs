use std::path::{Path, PathBuf};

use serde::Serialize;

use super::config::OutputFormat;
use super::run::CampaignSummary;
use crate::error::{Error, Result};

/// Rows as CSV (header first) or as a pretty-printed JSON array. Floats use
/// the shortest representation that round-trips.
pub fn render_rows<R: Serialize>(rows: &[R], format: OutputFormat) -> Result<Vec<u8>> {
    match format {
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for row in rows {
                w.serialize(row).map_err(|e| Error::Io(e.to_string()))?;
            }
            w.into_inner().map_err(|e| Error::Io(e.to_string()))
        }
        OutputFormat::Json => {
            let mut out = serde_json::to_vec_pretty(rows).map_err(|e| Error::Io(e.to_string()))?;
            out.push(b'\n');
            Ok(out)
        }
    }
}

pub fn render_summary(summary: &CampaignSummary) -> Result<Vec<u8>> {
    let mut out = serde_json::to_vec_pretty(summary).map_err(|e| Error::Io(e.to_string()))?;
    out.push(b'\n');
    Ok(out)
}

/// `report.csv` -> `report.summary.json`.
pub fn summary_path(output: &Path) -> PathBuf {
    output.with_extension("summary.json")
}

/// Writes the rows to `output` and the summary next to it.
pub fn write_outputs<R: Serialize>(
    output: &Path,
    format: OutputFormat,
    rows: &[R],
    summary: &CampaignSummary,
) -> Result<()> {
    std::fs::write(output, render_rows(rows, format)?)?;
    std::fs::write(summary_path(output), render_summary(summary)?)?;
    Ok(())
}
