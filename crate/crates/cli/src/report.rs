//! Versioned check reports: JSON for machines, an aligned table for people.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const SCHEMA_VERSION: u32 = 1;
pub const PLUMBING: &str = "plumbing";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Info,
}

impl Status {
    fn label(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Info => "info",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Record {
    pub name: String,
    pub citation: String,
    pub status: Status,
    pub values: BTreeMap<String, Value>,
    /// Set on informational records that `--strict` turns into failures.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub warning: bool,
}

impl Record {
    pub fn new(name: impl Into<String>, citation: impl Into<String>, status: Status) -> Self {
        Self {
            name: name.into(),
            citation: citation.into(),
            status,
            values: BTreeMap::new(),
            warning: false,
        }
    }

    pub fn check(name: impl Into<String>, citation: impl Into<String>, ok: bool) -> Self {
        Self::new(name, citation, if ok { Status::Pass } else { Status::Fail })
    }

    pub fn info(name: impl Into<String>, citation: impl Into<String>) -> Self {
        Self::new(name, citation, Status::Info)
    }

    pub fn warning(name: impl Into<String>, citation: impl Into<String>, message: impl Into<String>) -> Self {
        let mut r = Self::info(name, citation).with("warning", message.into());
        r.warning = true;
        r
    }

    pub fn with(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.values.insert(key.to_string(), value.into());
        self
    }

    pub fn with_int(self, key: &str, value: &BigInt) -> Self {
        self.with(key, int_value(value))
    }
}

/// Exact integers: a JSON number when it fits in `i64`, otherwise a decimal string.
pub fn int_value(v: &BigInt) -> Value {
    match i64::try_from(v) {
        Ok(small) => Value::from(small),
        Err(_) => Value::from(v.to_string()),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CommandEcho {
    pub name: String,
    pub parameters: BTreeMap<String, Value>,
    pub strict: bool,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub info: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub engine_version: String,
    pub command: CommandEcho,
    pub records: Vec<Record>,
    pub summary: Summary,
}

impl Report {
    /// Sorts records by name, applies `strict` to warnings and counts statuses.
    pub fn assemble(command: CommandEcho, mut records: Vec<Record>) -> Self {
        if command.strict {
            for r in records.iter_mut().filter(|r| r.warning) {
                r.status = Status::Fail;
            }
        }
        records.sort_by(|a, b| a.name.cmp(&b.name));
        let mut summary = Summary::default();
        for r in &records {
            match r.status {
                Status::Pass => summary.pass += 1,
                Status::Fail => summary.fail += 1,
                Status::Info => summary.info += 1,
            }
        }
        Report {
            schema_version: SCHEMA_VERSION,
            engine_version: jetchern::VERSION.to_string(),
            command,
            records,
            summary,
        }
    }

    pub fn exit_code(&self) -> u8 {
        exit_code_for(self.summary.fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Record> {
        self.records.iter().filter(|r| r.status == Status::Fail)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report values are plain JSON");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    pub fn to_text(&self) -> String {
        let rows: Vec<[String; 4]> = self
            .records
            .iter()
            .map(|r| {
                let values = r
                    .values
                    .iter()
                    .map(|(k, v)| match v {
                        Value::String(s) => format!("{k}={s}"),
                        other => format!("{k}={other}"),
                    })
                    .collect::<Vec<_>>()
                    .join(" ");
                [r.status.label().to_string(), r.name.clone(), r.citation.clone(), values]
            })
            .collect();
        let header = ["status", "check", "citation", "values"].map(String::from);
        let mut widths = [0usize; 3];
        for row in std::iter::once(&header).chain(&rows) {
            for (w, cell) in widths.iter_mut().zip(row) {
                *w = (*w).max(cell.chars().count());
            }
        }
        let mut out = String::new();
        let params = self
            .command
            .parameters
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(" ");
        let _ = writeln!(out, "jetchern {} | {} {params}", self.engine_version, self.command.name);
        for row in std::iter::once(&header).chain(&rows) {
            let _ = writeln!(
                out,
                "{:<w0$}  {:<w1$}  {:<w2$}  {}",
                row[0],
                row[1],
                row[2],
                row[3],
                w0 = widths[0],
                w1 = widths[1],
                w2 = widths[2]
            );
        }
        let _ = writeln!(
            out,
            "summary: {} pass, {} fail, {} info",
            self.summary.pass, self.summary.fail, self.summary.info
        );
        out
    }
}

/// 0 when nothing failed, 1 otherwise.
pub fn exit_code_for(failures: usize) -> u8 {
    u8::from(failures > 0)
}
