//! CSV and JSON output with stable schemas.
//!
//! Floats are written as `{:.16e}` in CSV (17 significant digits) and by serde_json's
//! shortest round-trip form in JSON; both parse back to the same bits.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spectra::{Bc, DomainSpec, Spectrum};
use crate::verify::{CoefficientScan, VerificationReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

impl std::str::FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            _ => Err(Error::invalid(format!(
                "format must be csv or json, got {s:?}"
            ))),
        }
    }
}

/// Round-trippable float text.
pub fn float(v: f64) -> String {
    format!("{v:.16e}")
}

pub const SPECTRUM_HEADER: [&str; 7] = [
    "rank",
    "value",
    "bc",
    "mode_kind",
    "q_or_l",
    "r_or_radial",
    "copy",
];
pub const REPORT_HEADER: [&str; 6] = ["k", "lambda_k", "mu_index", "mu_value", "margin", "verdict"];

/// One spectrum row, shared by the CSV and JSON forms.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpectrumRow {
    pub rank: u64,
    pub value: f64,
    pub bc: Bc,
    pub mode_kind: String,
    pub q_or_l: u64,
    pub r_or_radial: u64,
    pub copy: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpectrumDocument {
    pub domain: DomainSpec,
    pub bc: Bc,
    pub guaranteed_count: usize,
    pub cutoff: f64,
    pub entries: Vec<SpectrumRow>,
}

impl From<&Spectrum> for SpectrumDocument {
    fn from(s: &Spectrum) -> Self {
        SpectrumDocument {
            domain: s.domain.clone(),
            bc: s.bc,
            guaranteed_count: s.guaranteed_count,
            cutoff: s.cutoff,
            entries: s
                .entries
                .iter()
                .enumerate()
                .map(|(i, e)| {
                    let (a, b, c) = e.mode.fields();
                    SpectrumRow {
                        rank: i as u64 + 1,
                        value: e.value,
                        bc: e.bc,
                        mode_kind: e.mode.kind().to_string(),
                        q_or_l: a,
                        r_or_radial: b,
                        copy: c,
                    }
                })
                .collect(),
        }
    }
}

fn csv_writer<W: Write>(sink: W) -> csv::Writer<W> {
    csv::WriterBuilder::new()
        .terminator(csv::Terminator::CRLF)
        .from_writer(sink)
}

pub fn write_spectrum<W: Write>(s: &Spectrum, format: Format, sink: W) -> Result<()> {
    match format {
        Format::Json => write_json(&SpectrumDocument::from(s), sink),
        Format::Csv => {
            let mut w = csv_writer(sink);
            w.write_record(SPECTRUM_HEADER)?;
            for r in SpectrumDocument::from(s).entries {
                w.write_record([
                    r.rank.to_string(),
                    float(r.value),
                    r.bc.to_string(),
                    r.mode_kind,
                    r.q_or_l.to_string(),
                    r.r_or_radial.to_string(),
                    r.copy.to_string(),
                ])?;
            }
            w.flush()?;
            Ok(())
        }
    }
}

pub fn write_report<W: Write>(r: &VerificationReport, format: Format, sink: W) -> Result<()> {
    match format {
        Format::Json => write_json(r, sink),
        Format::Csv => {
            let mut w = csv_writer(sink);
            w.write_record(REPORT_HEADER)?;
            for x in &r.records {
                w.write_record([
                    x.k.to_string(),
                    float(x.lambda_k),
                    x.mu_index.to_string(),
                    float(x.mu_value),
                    float(x.margin),
                    x.verdict.as_str().to_string(),
                ])?;
            }
            w.flush()?;
            Ok(())
        }
    }
}

/// Any table of named columns; each row already rendered.
pub fn write_table<W: Write>(header: &[&str], rows: &[Vec<String>], sink: W) -> Result<()> {
    let mut w = csv_writer(sink);
    w.write_record(header)?;
    for r in rows {
        w.write_record(r)?;
    }
    w.flush()?;
    Ok(())
}

/// `k,diff`.
pub fn write_difference_data<W: Write>(data: &[(u64, f64)], format: Format, sink: W) -> Result<()> {
    #[derive(Serialize)]
    struct Row {
        k: u64,
        diff: f64,
    }
    match format {
        Format::Json => write_json(
            &data
                .iter()
                .map(|&(k, diff)| Row { k, diff })
                .collect::<Vec<_>>(),
            sink,
        ),
        Format::Csv => {
            let rows: Vec<Vec<String>> = data
                .iter()
                .map(|(k, d)| vec![k.to_string(), float(*d)])
                .collect();
            write_table(&["k", "diff"], &rows, sink)
        }
    }
}

pub fn write_scan<W: Write>(s: &CoefficientScan, format: Format, sink: W) -> Result<()> {
    match format {
        Format::Json => write_json(s, sink),
        Format::Csv => write_table(
            &["kmax", "supremum", "limiting_k", "resolution", "grid_value"],
            &[vec![
                s.kmax.to_string(),
                float(s.supremum),
                s.limiting_k.to_string(),
                float(s.resolution),
                float(s.grid_value),
            ]],
            sink,
        ),
    }
}

/// Pretty JSON with a trailing newline.
pub fn write_json<T: Serialize, W: Write>(value: &T, mut sink: W) -> Result<()> {
    serde_json::to_writer_pretty(&mut sink, value)?;
    sink.write_all(b"\n")?;
    sink.flush()?;
    Ok(())
}

/// Strict JSON parse of any of the documents above.
pub fn parse_json<T: serde::de::DeserializeOwned>(text: &str) -> Result<T> {
    Ok(serde_json::from_str(text)?)
}

/// Runs `emit` against stdout, or against a file created at `path`.
pub fn with_sink(
    path: Option<&Path>,
    emit: impl FnOnce(&mut dyn Write) -> Result<()>,
) -> Result<()> {
    match path {
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            emit(&mut lock)
        }
        Some(p) => {
            let ctx = |source| Error::Io {
                path: p.to_path_buf(),
                source,
            };
            let mut w = BufWriter::new(File::create(p).map_err(ctx)?);
            emit(&mut w).map_err(|e| match e {
                Error::Stream(source) => ctx(source),
                Error::Csv(e) if e.is_io_error() => match e.into_kind() {
                    csv::ErrorKind::Io(source) => ctx(source),
                    _ => unreachable!("checked is_io_error"),
                },
                other => other,
            })?;
            w.flush().map_err(ctx)
        }
    }
}
