use std::fs;
use std::io::{self, Write};
use std::path::Path;

use anyhow::{Context, Result};
use clap::ValueEnum;

use balanced_words::CsvRecord;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

pub struct FareyRow {
    pub index: usize,
    pub numerator: u64,
    pub denominator: u64,
}

impl CsvRecord for FareyRow {
    fn header() -> &'static [&'static str] {
        &["index", "numerator", "denominator"]
    }

    fn record(&self) -> Vec<String> {
        vec![
            self.index.to_string(),
            self.numerator.to_string(),
            self.denominator.to_string(),
        ]
    }
}

fn sink(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(path) => Box::new(io::BufWriter::new(
            fs::File::create(path).with_context(|| format!("creating {}", path.display()))?,
        )),
        None => Box::new(io::stdout().lock()),
    })
}

/// Rows in index order with a header line; to `path`, or stdout when absent.
pub fn write_csv<R: CsvRecord>(path: Option<&Path>, rows: &[R]) -> Result<()> {
    let mut writer = csv::Writer::from_writer(sink(path)?);
    writer.write_record(R::header())?;
    for row in rows {
        writer.write_record(row.record())?;
    }
    writer.flush()?;
    Ok(())
}

pub fn write_text(path: Option<&Path>, text: &str) -> Result<()> {
    let mut out = sink(path)?;
    out.write_all(text.as_bytes())?;
    out.flush()?;
    Ok(())
}
