//! Evaluation document: one ROC Area row and one F-Measure row per class,
//! with a column per model variant, followed by the full per-variant runs.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::cv::EvalReport;
use crate::error::Result;
use crate::features::Variant;

pub const REPORT_FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableRow {
    pub metric: String,
    pub values: BTreeMap<Variant, f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub format_version: u32,
    pub variants: Vec<Variant>,
    pub table: Vec<TableRow>,
    pub runs: Vec<EvalReport>,
}

impl ReportDocument {
    pub fn new(runs: Vec<EvalReport>) -> Self {
        let variants: Vec<Variant> = runs.iter().map(|r| r.variant).collect();
        let classes = runs.first().map(|r| r.class_list.clone()).unwrap_or_default();
        let mut table = Vec::new();
        for (label, pick) in [
            (
                "ROC Area",
                (|r: &EvalReport| &r.per_class_roc) as fn(&EvalReport) -> &BTreeMap<_, f64>,
            ),
            ("F-Measure", |r: &EvalReport| &r.per_class_f),
        ] {
            for class in &classes {
                table.push(TableRow {
                    metric: format!("{label} {class}"),
                    values: runs.iter().map(|r| (r.variant, pick(r)[class])).collect(),
                });
            }
        }
        ReportDocument {
            format_version: REPORT_FORMAT_VERSION,
            variants,
            table,
            runs,
        }
    }

    /// Pretty JSON with a trailing newline; byte-stable for equal input.
    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }

    /// Plain-text rendering of the table, three decimals per cell.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = write!(out, "{:<18}", "Metric");
        for v in &self.variants {
            let _ = write!(out, " {:>18}", v.as_str());
        }
        out.push('\n');
        for row in &self.table {
            let _ = write!(out, "{:<18}", row.metric);
            for v in &self.variants {
                let _ = write!(out, " {:>18.3}", row.values[v]);
            }
            out.push('\n');
        }
        out
    }
}
