//! JSON-lines reports and CSV plot data.

use std::io::Write;

use anyhow::bail;
use serde::Serialize;
use serde_json::{json, Value};
use striphyp::Complex64;

pub const SCHEMA: &str = "striphyp.report/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// Plot data: a header and numeric rows.
#[derive(Debug, Default)]
pub struct Plot {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<f64>>,
}

impl Plot {
    pub fn new(header: &[&'static str]) -> Plot {
        Plot { header: header.to_vec(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<f64>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }
}

/// What a command produced: echoed inputs, provenance, result records and optional plot data.
#[derive(Debug)]
pub struct Output {
    pub inputs: Value,
    pub provenance: Value,
    pub results: Vec<Value>,
    pub plot: Option<Plot>,
}

impl Output {
    pub fn single(inputs: Value, provenance: Value, result: Value) -> Output {
        Output { inputs, provenance, results: vec![result], plot: None }
    }
}

pub fn complex(z: Complex64) -> Value {
    json!({ "re": z.re, "im": z.im })
}

pub fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).unwrap_or(Value::Null)
}

pub fn write(out: &mut dyn Write, format: Format, command: &str, argv: &[String], o: &Output) -> anyhow::Result<()> {
    match format {
        Format::Json => {
            for r in &o.results {
                let rec = json!({
                    "schema": SCHEMA,
                    "command": command,
                    "argv": argv,
                    "inputs": o.inputs,
                    "provenance": o.provenance,
                    "result": r,
                });
                serde_json::to_writer(&mut *out, &rec)?;
                writeln!(out)?;
            }
        }
        Format::Csv => {
            let Some(plot) = &o.plot else {
                bail!("`{command}` has no plot data; csv output is available for assoc, minorant, fourier, laplace and extend");
            };
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record(&plot.header)?;
            for row in &plot.rows {
                w.write_record(row.iter().map(|v| format!("{v:e}")))?;
            }
            w.flush()?;
        }
    }
    Ok(())
}
