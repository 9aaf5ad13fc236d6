//! Plot-ready CSV output.
//!
//! Header `iteration,mse,dict_total,dict_q1,..,dict_qQ`, one row per
//! iteration, LF line endings. Values use the shortest decimal that
//! round-trips to the same `f64`.

use std::path::Path;

use crate::error::{BenchError, Result};
use crate::experiment::RunResult;

/// Columns of a parsed results file.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ResultsTable {
    pub iterations: Vec<u64>,
    pub mse: Vec<f64>,
    pub dict_total: Vec<f64>,
    /// Indexed `[kernel][row]`.
    pub dict_per_kernel: Vec<Vec<f64>>,
}

pub fn format_results(result: &RunResult) -> String {
    let q = result.kernel_dict_curves.len();
    let mut out = String::from("iteration,mse,dict_total");
    for k in 1..=q {
        out.push_str(&format!(",dict_q{k}"));
    }
    out.push('\n');
    for n in 0..result.iterations() {
        out.push_str(&format!("{},{},{}", n + 1, result.mse_curve[n], result.dict_curve[n]));
        for curve in &result.kernel_dict_curves {
            out.push_str(&format!(",{}", curve[n]));
        }
        out.push('\n');
    }
    out
}

pub fn write_results(path: &Path, result: &RunResult) -> Result<()> {
    std::fs::write(path, format_results(result)).map_err(|e| BenchError::io(path, e))
}

pub fn parse_results(text: &str) -> Result<ResultsTable> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines.next().ok_or_else(|| BenchError::parse(1, "missing header"))?;
    let columns: Vec<&str> = header.split(',').collect();
    if columns.len() < 3 || columns[..3] != ["iteration", "mse", "dict_total"] {
        return Err(BenchError::parse(1, "header must start with iteration,mse,dict_total"));
    }
    for (k, name) in columns[3..].iter().enumerate() {
        if *name != format!("dict_q{}", k + 1) {
            return Err(BenchError::parse(1, format!("unexpected column `{name}`")));
        }
    }
    let q = columns.len() - 3;
    let mut table = ResultsTable { dict_per_kernel: vec![Vec::new(); q], ..Default::default() };
    for (idx, line) in lines {
        let line_no = idx + 1;
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != columns.len() {
            return Err(BenchError::parse(
                line_no,
                format!("expected {} fields, found {}", columns.len(), fields.len()),
            ));
        }
        let iteration = fields[0]
            .parse::<u64>()
            .map_err(|e| BenchError::parse(line_no, format!("iteration `{}`: {e}", fields[0])))?;
        let value = |s: &str| {
            s.parse::<f64>()
                .map_err(|e| BenchError::parse(line_no, format!("value `{s}`: {e}")))
        };
        table.iterations.push(iteration);
        table.mse.push(value(fields[1])?);
        table.dict_total.push(value(fields[2])?);
        for (col, f) in table.dict_per_kernel.iter_mut().zip(&fields[3..]) {
            col.push(value(f)?);
        }
    }
    Ok(table)
}
