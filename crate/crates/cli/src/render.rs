use std::io::{self, Write};
use std::time::Duration;

use clap::ValueEnum;
use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// The input list beside the minimal generating set, present only when they differ.
#[derive(Debug, Clone, Serialize)]
pub struct Reduced {
    pub input: Vec<u64>,
    pub minimal: Vec<u64>,
    /// True under --reduce; otherwise every listed generator stays an atom.
    pub applied: bool,
}

#[derive(Debug, Default)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Table {
            header: header.iter().map(|h| h.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }

    /// Two columns, one row per top-level field; nested values stay JSON.
    pub fn fields(value: &Value) -> Self {
        let mut t = Table::new(&["field", "value"]);
        if let Value::Object(map) = value {
            for (k, v) in map {
                t.push(vec![k.clone(), scalar(v)]);
            }
        }
        t
    }
}

pub fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

/// A finished command, ready to print in any format.
pub struct Rendered {
    pub generators: Option<Vec<u64>>,
    pub reduced: Option<Reduced>,
    pub payload: Value,
    pub text: String,
    pub table: Table,
    /// A theorem check produced a counterexample.
    pub failed: bool,
}

#[derive(Serialize)]
struct Timing {
    elapsed_ms: f64,
}

#[derive(Serialize)]
struct Envelope<'a> {
    command: Vec<String>,
    generators: &'a Option<Vec<u64>>,
    reduced: &'a Option<Reduced>,
    payload: &'a Value,
    version: &'static str,
    timing: Timing,
}

pub fn emit(out: &Rendered, format: Format, argv: Vec<String>, elapsed: Duration) -> io::Result<()> {
    let stdout = io::stdout();
    let mut lock = stdout.lock();
    match format {
        Format::Json => {
            let env = Envelope {
                command: argv,
                generators: &out.generators,
                reduced: &out.reduced,
                payload: &out.payload,
                version: env!("CARGO_PKG_VERSION"),
                timing: Timing {
                    elapsed_ms: elapsed.as_secs_f64() * 1e3,
                },
            };
            serde_json::to_writer_pretty(&mut lock, &env)?;
            writeln!(lock)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut lock);
            w.write_record(&out.table.header)?;
            for row in &out.table.rows {
                w.write_record(row)?;
            }
            w.flush()?;
        }
        Format::Text => {
            if let Some(r) = &out.reduced {
                let verb = if r.applied { "reduced to" } else { "kept as atoms; minimal set is" };
                writeln!(lock, "note: {:?} {verb} {:?}", r.input, r.minimal)?;
            }
            write!(lock, "{}", out.text)?;
        }
    }
    lock.flush()
}
