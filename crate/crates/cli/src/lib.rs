//! Experiment runner: single-instance reports, parameter scans and log-log
//! exponent fits, all emitting CSV.

pub mod commands;
pub mod config;
pub mod experiments;
pub mod fit;

use stabgeo::GeomError;
use thiserror::Error;

pub use config::{Experiment, ExperimentConfig, Family, Settings};
pub use experiments::{run_bs_scan, run_cap_scan, run_pl_scan, ScanOutput};
pub use fit::{fit_exponent, FitError, FitResult};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error("numerical failure: {0}")]
    Numerical(#[from] GeomError),
    #[error("fit failed: {0}")]
    Fit(#[from] FitError),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 1,
            _ => 2,
        }
    }
}

/// Shortest round-trip text of a float.
pub fn num(x: f64) -> String {
    format!("{x:e}")
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new<I>(header: &[&str], rows: I) -> Self
    where
        I: IntoIterator<Item = Vec<String>>,
    {
        Self {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: rows.into_iter().collect(),
        }
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.header).expect("writing to memory");
        for r in &self.rows {
            w.write_record(r).expect("writing to memory");
        }
        String::from_utf8(w.into_inner().expect("writing to memory")).expect("csv output is utf-8")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_csv() {
        let t = Table::new(&["a", "b"], [vec![num(0.5), num(f64::NAN)]]);
        assert_eq!(t.to_csv(), "a,b\n5e-1,NaN\n");
    }

    #[test]
    fn exit_codes() {
        assert_eq!(CliError::Config("x".into()).exit_code(), 1);
        assert_eq!(CliError::from(GeomError::Degenerate("x".into())).exit_code(), 2);
    }
}
