//! Per-site datasets and their CSV/JSON encodings.

use std::io::{Read, Write};

use lifted_walk::walk::LiftedState;
use serde::{Deserialize, Serialize};

use crate::CliError;

/// Column names, in output order.
pub const COLUMNS: [&str; 15] = [
    "site",
    "p0_re",
    "p0_im",
    "p1_re",
    "p1_im",
    "m1_re",
    "m1_im",
    "m0_re",
    "m0_im",
    "prob0",
    "prob1",
    "prob_total",
    "classical",
    "phase0",
    "phase1",
];

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Row {
    pub site: i64,
    pub p0_re: f64,
    pub p0_im: f64,
    pub p1_re: f64,
    pub p1_im: f64,
    pub m1_re: f64,
    pub m1_im: f64,
    pub m0_re: f64,
    pub m0_im: f64,
    pub prob0: f64,
    pub prob1: f64,
    pub prob_total: f64,
    pub classical: f64,
    pub phase0: f64,
    pub phase1: f64,
}

impl Row {
    fn values(&self) -> [f64; 14] {
        [
            self.p0_re,
            self.p0_im,
            self.p1_re,
            self.p1_im,
            self.m1_re,
            self.m1_im,
            self.m0_re,
            self.m0_im,
            self.prob0,
            self.prob1,
            self.prob_total,
            self.classical,
            self.phase0,
            self.phase1,
        ]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// Maps lattice indices to the site labels users see.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SiteLabels {
    /// Label of index 0.
    pub first: i64,
    pub sites: usize,
}

impl SiteLabels {
    pub fn label(&self, index: usize) -> i64 {
        self.first + index as i64
    }

    pub fn index(&self, label: i64) -> Option<usize> {
        usize::try_from(label - self.first)
            .ok()
            .filter(|&i| i < self.sites)
    }

    pub fn last(&self) -> i64 {
        self.label(self.sites - 1)
    }
}

/// One row per lattice index in `indices`.
pub fn rows(
    state: &LiftedState,
    labels: SiteLabels,
    indices: impl IntoIterator<Item = usize>,
) -> Result<Vec<Row>, CliError> {
    let d = state.site_distribution()?;
    Ok(indices
        .into_iter()
        .map(|k| Row {
            site: labels.label(k),
            p0_re: d.p0[k].re,
            p0_im: d.p0[k].im,
            p1_re: d.p1[k].re,
            p1_im: d.p1[k].im,
            m1_re: d.m1[k].re,
            m1_im: d.m1[k].im,
            m0_re: d.m0[k].re,
            m0_im: d.m0[k].im,
            prob0: d.prob0[k],
            prob1: d.prob1[k],
            prob_total: d.prob_total[k],
            classical: d.classical[k],
            phase0: d.phase0[k],
            phase1: d.phase1[k],
        })
        .collect())
}

/// Shortest decimal that parses back to the same double (at most 17
/// significant digits, never in exponent form).
pub fn format_number(v: f64) -> String {
    format!("{v}")
}

pub fn write_csv(out: impl Write, rows: &[Row]) -> Result<(), CliError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(COLUMNS)?;
    for r in rows {
        let mut record = vec![r.site.to_string()];
        record.extend(r.values().iter().map(|&v| format_number(v)));
        w.write_record(&record)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_csv(input: impl Read) -> Result<Vec<Row>, CliError> {
    let mut r = csv::Reader::from_reader(input);
    if r.headers()?.iter().ne(COLUMNS) {
        return Err(CliError::usage(
            "header",
            "CSV header does not match the dataset columns",
        ));
    }
    r.deserialize()
        .map(|row| row.map_err(CliError::from))
        .collect()
}

pub fn write_json(mut out: impl Write, rows: &[Row]) -> Result<(), CliError> {
    serde_json::to_writer_pretty(&mut out, rows)?;
    writeln!(out)?;
    Ok(())
}

pub fn read_json(input: impl Read) -> Result<Vec<Row>, CliError> {
    Ok(serde_json::from_reader(input)?)
}

pub fn write(out: impl Write, rows: &[Row], format: Format) -> Result<(), CliError> {
    match format {
        Format::Csv => write_csv(out, rows),
        Format::Json => write_json(out, rows),
    }
}
