use std::io::Write;

use clap::ValueEnum;
use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

/// A boolean verdict with an optional witness string.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub holds: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

/// Everything a subcommand reports. Every number is a string: integers in
/// decimal, rationals as `p/q`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub command: String,
    pub inputs: IndexMap<String, String>,
    pub outputs: IndexMap<String, String>,
    pub verdicts: IndexMap<String, Verdict>,
    pub citations: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Pretty,
    Json,
    Csv,
}

impl OutputRecord {
    pub fn new(command: impl Into<String>) -> Self {
        OutputRecord { command: command.into(), ..Default::default() }
    }

    pub fn input(&mut self, key: impl Into<String>, value: impl ToString) -> &mut Self {
        self.inputs.insert(key.into(), value.to_string());
        self
    }

    pub fn output(&mut self, key: impl Into<String>, value: impl ToString) -> &mut Self {
        self.outputs.insert(key.into(), value.to_string());
        self
    }

    pub fn verdict(&mut self, key: impl Into<String>, holds: bool, witness: Option<String>) -> &mut Self {
        self.verdicts.insert(key.into(), Verdict { holds, witness });
        self
    }

    pub fn cite(&mut self, text: impl Into<String>) -> &mut Self {
        self.citations.push(text.into());
        self
    }

    pub fn all_verdicts_hold(&self) -> bool {
        self.verdicts.values().all(|v| v.holds)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("records contain only strings and booleans")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    /// One row per field: `section,key,value,witness`.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut row = |section: &str, key: &str, value: &str, witness: &str| {
            w.write_record([section, key, value, witness]).expect("writing to memory");
        };
        row("section", "key", "value", "witness");
        row("command", "command", &self.command, "");
        for (k, v) in &self.inputs {
            row("input", k, v, "");
        }
        for (k, v) in &self.outputs {
            row("output", k, v, "");
        }
        for (k, v) in &self.verdicts {
            row("verdict", k, if v.holds { "true" } else { "false" }, v.witness.as_deref().unwrap_or(""));
        }
        for (i, c) in self.citations.iter().enumerate() {
            row("citation", &i.to_string(), c, "");
        }
        let bytes = w.into_inner().expect("flushing to memory");
        String::from_utf8(bytes).expect("csv of utf-8 fields")
    }

    pub fn to_pretty(&self) -> String {
        let mut s = format!("$ cbdiv {}\n", self.command);
        let width = self.inputs.keys().chain(self.outputs.keys()).map(|k| k.chars().count()).max().unwrap_or(0);
        for (k, v) in &self.inputs {
            s += &format!("  {k:<width$}  {v}\n");
        }
        if !self.outputs.is_empty() {
            s += "\n";
        }
        for (k, v) in &self.outputs {
            s += &format!("  {k:<width$} = {v}\n");
        }
        if !self.verdicts.is_empty() {
            s += "\n";
        }
        for (k, v) in &self.verdicts {
            let tag = if v.holds { "PASS" } else { "FAIL" };
            match &v.witness {
                Some(w) => s += &format!("{tag}  {k}: {w}\n"),
                None => s += &format!("{tag}  {k}\n"),
            }
        }
        for c in &self.citations {
            s += &format!("  see: {c}\n");
        }
        s
    }

    pub fn write(&self, format: Format, out: &mut dyn Write) -> std::io::Result<()> {
        let text = match format {
            Format::Pretty => self.to_pretty(),
            Format::Json => self.to_json() + "\n",
            Format::Csv => self.to_csv(),
        };
        out.write_all(text.as_bytes())
    }
}
