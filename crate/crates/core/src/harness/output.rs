//! Flat-file writers shared by the command line tool.
//!
//! CSV files carry a header row and print floats with 17 significant digits;
//! JSON reports are a single object with `config`, `results`, `discards` and
//! `runtime_seconds`.

use std::io::Write;

use serde::Serialize;

use super::conjecture::ConjectureReport;
use super::expectation::ExpectationReport;
use super::figure1::Figure1Data;
use super::kostlan::KostlanReport;
use super::sample::SampleReport;
use super::trial::Discards;
use super::verify::VerificationReport;
use crate::error::Result;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(u64),
    Float(f64),
    Text(String),
    Bool(bool),
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Int(x) => x.to_string(),
            Cell::Float(x) => format_float(*x),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
        }
    }
}

impl From<usize> for Cell {
    fn from(x: usize) -> Self {
        Cell::Int(x as u64)
    }
}

impl From<u64> for Cell {
    fn from(x: u64) -> Self {
        Cell::Int(x)
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Float(x)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_string())
    }
}

impl From<bool> for Cell {
    fn from(b: bool) -> Self {
        Cell::Bool(b)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

/// 17 significant digits in scientific notation; `NaN`, `inf`, `-inf` for
/// non-finite values.
pub fn format_float(x: f64) -> String {
    if x.is_nan() {
        "NaN".into()
    } else if x.is_infinite() {
        if x > 0.0 { "inf".into() } else { "-inf".into() }
    } else {
        format!("{x:.16e}")
    }
}

pub fn write_csv<W: Write>(out: W, table: &Table) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(&table.header)?;
    for row in &table.rows {
        w.write_record(row.iter().map(Cell::render))?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Serialize)]
struct JsonReport<'a, C: Serialize, R: Serialize> {
    config: &'a C,
    results: &'a R,
    discards: &'a Discards,
    runtime_seconds: Option<f64>,
}

pub fn write_json<W: Write, C: Serialize, R: Serialize>(
    mut out: W,
    config: &C,
    results: &R,
    discards: &Discards,
    runtime_seconds: Option<f64>,
) -> Result<()> {
    let report = JsonReport { config, results, discards, runtime_seconds };
    serde_json::to_writer_pretty(&mut out, &report)?;
    writeln!(out)?;
    Ok(())
}

pub fn sample_table(r: &SampleReport) -> Table {
    Table {
        header: vec!["trial", "index", "re", "im", "abs_sq", "overlap"],
        rows: r
            .rows
            .iter()
            .map(|e| vec![e.trial.into(), e.index.into(), e.re.into(), e.im.into(), e.abs_sq.into(), e.overlap.into()])
            .collect(),
    }
}

pub fn verification_table(r: &VerificationReport) -> Table {
    Table {
        header: vec!["trial", "status", "comparisons", "max_rel_error"],
        rows: r
            .per_trial
            .iter()
            .map(|t| vec![t.trial.into(), t.status.into(), t.comparisons.into(), t.max_rel_error.into()])
            .collect(),
    }
}

pub fn expectation_table(r: &ExpectationReport) -> Table {
    Table {
        header: vec!["bin", "center", "count", "mean_overlap", "std_error", "expected", "ratio", "sparse"],
        rows: r
            .bins
            .iter()
            .map(|b| {
                vec![
                    b.bin.into(),
                    b.center.into(),
                    b.count.into(),
                    b.mean_overlap.into(),
                    b.std_error.into(),
                    b.expected.into(),
                    b.ratio.into(),
                    b.sparse.into(),
                ]
            })
            .collect(),
    }
}

pub fn conjecture_table(r: &ConjectureReport) -> Table {
    Table {
        header: vec!["trial", "source", "index", "abs_sq", "overlap"],
        rows: r
            .samples
            .iter()
            .map(|s| vec![s.trial.into(), s.source.into(), s.index.into(), s.abs_sq.into(), s.overlap.into()])
            .collect(),
    }
}

pub fn kostlan_table(r: &KostlanReport) -> Table {
    Table {
        header: vec!["k", "statistic", "n1", "n2", "critical_1pct", "passed"],
        rows: r
            .rows
            .iter()
            .map(|row| {
                vec![
                    row.k.into(),
                    row.ks.statistic.into(),
                    row.ks.n1.into(),
                    row.ks.n2.into(),
                    row.ks.critical_1pct.into(),
                    row.passed.into(),
                ]
            })
            .collect(),
    }
}

/// Point rows plus one `reference` row holding the inner circle radius in
/// the `modulus` column.
pub fn figure1_table(d: &Figure1Data) -> Table {
    let mut rows: Vec<Vec<Cell>> = d
        .points
        .iter()
        .map(|p| vec![p.tag.into(), p.index.into(), p.re.into(), p.im.into(), p.modulus.into()])
        .collect();
    rows.push(vec![
        "reference".into(),
        0usize.into(),
        d.reference_radius.into(),
        0.0.into(),
        d.reference_radius.into(),
    ]);
    Table {
        header: vec!["tag", "index", "re", "im", "modulus"],
        rows,
    }
}
