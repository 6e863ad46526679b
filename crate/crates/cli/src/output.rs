//! Run reports and their JSON / CSV renderings.

use std::io::Write;
use std::time::Duration;

use serde_json::{json, Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// What a command produced. `table` is the CSV view; commands without a
/// natural table get a `key,value` listing of the top-level results.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub results: Value,
    pub table: Option<Table>,
    pub exit: i32,
}

impl Outcome {
    pub fn new(results: Value) -> Self {
        Outcome { results, table: None, exit: 0 }
    }

    pub fn with_table(mut self, table: Table) -> Self {
        self.table = Some(table);
        self
    }

    pub fn with_exit(mut self, exit: i32) -> Self {
        self.exit = exit;
        self
    }
}

#[derive(Debug, Clone, Default)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Table { header: header.iter().map(|s| s.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }
}

pub struct RunReport<'a> {
    pub command: &'a str,
    pub params: Map<String, Value>,
    pub results: &'a Value,
    pub elapsed: Duration,
    pub seed: Option<u64>,
}

impl RunReport<'_> {
    pub fn to_json(&self) -> Value {
        json!({
            "command": self.command,
            "params": self.params,
            "results": self.results,
            "elapsed_ms": self.elapsed.as_secs_f64() * 1000.0,
            "seed": self.seed,
        })
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

pub fn write(out: &mut impl Write, format: Format, report: &RunReport, table: Option<&Table>) -> std::io::Result<()> {
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, &report.to_json())?;
            writeln!(out)
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            match table {
                Some(t) => {
                    w.write_record(&t.header)?;
                    for row in &t.rows {
                        w.write_record(row)?;
                    }
                }
                None => {
                    w.write_record(["key", "value"])?;
                    if let Value::Object(map) = report.results {
                        for (k, v) in map {
                            w.write_record([k.as_str(), &scalar(v)])?;
                        }
                    }
                }
            }
            w.flush()
        }
    }
}
