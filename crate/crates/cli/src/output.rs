use std::io::Write;
use std::path::Path;

use clap::ValueEnum;
use posauction::rational::format_rational;
use posauction::Rational;
use serde_json::Value;

use crate::error::CliResult;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// Result of a command in both serializations.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub json: Value,
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
    /// Summary of failed checks; the process exits with code 4 when set.
    pub failure: Option<String>,
}

impl Report {
    pub fn render(&self, format: Format) -> CliResult<Vec<u8>> {
        match format {
            Format::Json => {
                let mut out =
                    serde_json::to_vec_pretty(&self.json).map_err(std::io::Error::from)?;
                out.push(b'\n');
                Ok(out)
            }
            Format::Csv => {
                let mut w = csv::WriterBuilder::new()
                    .terminator(csv::Terminator::Any(b'\n'))
                    .from_writer(Vec::new());
                w.write_record(&self.header).map_err(std::io::Error::from)?;
                for row in &self.rows {
                    w.write_record(row).map_err(std::io::Error::from)?;
                }
                Ok(w.into_inner().map_err(|e| e.into_error())?)
            }
        }
    }

    pub fn write(&self, format: Format, path: Option<&Path>) -> CliResult<()> {
        let bytes = self.render(format)?;
        match path {
            Some(p) => std::fs::write(p, bytes)?,
            None => std::io::stdout().lock().write_all(&bytes)?,
        }
        Ok(())
    }
}

pub(crate) fn q(x: &Rational) -> String {
    format_rational(x)
}

pub(crate) fn qs(xs: &[Rational]) -> Vec<String> {
    xs.iter().map(q).collect()
}

/// Shortest decimal that parses back to the same `f64`.
pub(crate) fn f(x: f64) -> String {
    format!("{x}")
}
