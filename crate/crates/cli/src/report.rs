//! Report assembly and rendering: versioned JSON or fixed-header CSV.

use std::io::Write;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};
use symfq::counting::Surd;
use symfq::ring::render_rational;

use crate::error::CliError;

pub const SCHEMA: u64 = 1;

/// Exact integer: a JSON number when it fits in `i64`, a decimal string otherwise.
pub fn int(n: &BigInt) -> Value {
    n.to_i64().map(Value::from).unwrap_or_else(|| Value::String(n.to_string()))
}

/// Exact rational as `"a/b"` (or `"a"` when integral).
pub fn rational(r: &BigRational) -> Value {
    Value::String(render_rational(r))
}

pub fn surd(s: &Surd) -> Value {
    json!({ "exact": s.to_string(), "floor": int(&s.floor()) })
}

#[derive(Clone, Debug, Default)]
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&'static str]) -> Self {
        Table { header: header.to_vec(), rows: vec![] }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }
}

/// Outcome of one subcommand.
#[derive(Clone, Debug)]
pub struct Report {
    pub command: &'static str,
    pub result: Value,
    pub table: Table,
    pub failures: Vec<String>,
    pub timing: Map<String, Value>,
}

impl Report {
    pub fn new(command: &'static str, result: Value, table: Table) -> Self {
        Report { command, result, table, failures: vec![], timing: Map::new() }
    }

    pub fn fail_if(&mut self, bad: bool, what: impl Into<String>) {
        if bad {
            self.failures.push(what.into());
        }
    }

    pub fn pass(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_json(&self, config: Value, timing: bool) -> Value {
        let mut m = Map::new();
        m.insert("schema".into(), json!(SCHEMA));
        m.insert("command".into(), json!(self.command));
        m.insert("config".into(), config);
        m.insert("result".into(), self.result.clone());
        m.insert("pass".into(), json!(self.pass()));
        m.insert("failures".into(), json!(self.failures));
        if timing {
            m.insert("timing".into(), Value::Object(self.timing.clone()));
        }
        Value::Object(m)
    }

    pub fn write_json(&self, out: &mut impl Write, config: Value, timing: bool) -> Result<(), CliError> {
        serde_json::to_writer_pretty(&mut *out, &self.to_json(config, timing)).map_err(|e| CliError::Io(e.to_string()))?;
        writeln!(out).map_err(|e| CliError::Io(e.to_string()))
    }

    pub fn write_csv(&self, out: &mut impl Write) -> Result<(), CliError> {
        let mut w = csv::Writer::from_writer(out);
        let io = |e: csv::Error| CliError::Io(e.to_string());
        w.write_record(&self.table.header).map_err(io)?;
        for r in &self.table.rows {
            w.write_record(r).map_err(io)?;
        }
        w.flush().map_err(|e| CliError::Io(e.to_string()))
    }
}
