use std::fmt::Write;

use serde::Serialize;
use serde_json::Value;

use crate::cache::CODE_VERSION;
use crate::config::{ExperimentConfig, Format};

pub const SCHEMA: &str = "wcob-report/1";

/// Rows for the TSV rendering of a report.
#[derive(Clone, Debug, Default, Serialize)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Self {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub version: &'static str,
    pub command: String,
    pub seed: u64,
    pub config: ExperimentConfig,
    /// `None` for commands that compute rather than check.
    pub passed: Option<bool>,
    pub result: Value,
    #[serde(skip)]
    pub table: Table,
}

impl Report {
    pub fn new(command: &str, config: &ExperimentConfig, passed: Option<bool>, result: Value, table: Table) -> Self {
        Self {
            schema: SCHEMA,
            version: CODE_VERSION,
            command: command.to_string(),
            seed: config.seed,
            config: config.clone(),
            passed,
            result,
            table,
        }
    }

    pub fn render(&self) -> String {
        match self.config.format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
                s.push('\n');
                s
            }
            Format::Tsv => self.tsv(),
        }
    }

    fn tsv(&self) -> String {
        let c = &self.config;
        let mut s = String::new();
        let _ = writeln!(s, "# {} {} {}", self.schema, self.version, self.command);
        let _ = writeln!(
            s,
            "# instance={} construction={} degree={} trunc={} budget={} max_objects={} gluing_budget={} seed={}",
            c.instance, c.construction, c.degree, c.trunc, c.budget, c.max_objects, c.gluing_budget, c.seed
        );
        if let Some(p) = self.passed {
            let _ = writeln!(s, "# passed={p}");
        }
        let clean = |x: &String| x.replace(['\t', '\n'], " ");
        let _ = writeln!(s, "{}", self.table.header.iter().map(clean).collect::<Vec<_>>().join("\t"));
        for row in &self.table.rows {
            let _ = writeln!(s, "{}", row.iter().map(clean).collect::<Vec<_>>().join("\t"));
        }
        s
    }
}
