use std::io::Write;
use std::path::Path;
use std::time::{SystemTime, UNIX_EPOCH};

use serde::Serialize;
use serde_json::{json, Value};

use crate::commands::{grid_from, Outcome};
use crate::{Cli, Format, TOOL, VERSION};

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(columns: Vec<&'static str>) -> Self {
        Self {
            columns,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

#[derive(Serialize)]
struct Header {
    tool: &'static str,
    version: &'static str,
    command: &'static str,
    seed: u64,
    trunc: usize,
    grid: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    timestamp: Option<u64>,
}

fn header(cli: &Cli) -> Header {
    let grid = match grid_from(&cli.common) {
        Ok(Some(g)) => serde_json::to_value(g).unwrap_or(Value::Null),
        _ => json!("standard"),
    };
    let timestamp = (!cli.common.no_timestamp).then(|| {
        SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0)
    });
    Header {
        tool: TOOL,
        version: VERSION,
        command: cli.command.name(),
        seed: cli.common.seed,
        trunc: cli.common.trunc,
        grid,
        timestamp,
    }
}

/// JSON: `{"header": …, "result": …}`. CSV: `#`-prefixed header lines, then the table.
pub fn render(cli: &Cli, outcome: &Outcome) -> Result<String, String> {
    let header = header(cli);
    match cli.common.format {
        Format::Json => {
            let doc = json!({ "header": header, "status": outcome.status.label(), "result": outcome.result });
            let mut s = serde_json::to_string_pretty(&doc).map_err(|e| e.to_string())?;
            s.push('\n');
            Ok(s)
        }
        Format::Csv => {
            let mut out = String::new();
            let fields = serde_json::to_value(&header).map_err(|e| e.to_string())?;
            if let Value::Object(map) = fields {
                for (k, v) in map {
                    let v = match v {
                        Value::String(s) => s,
                        other => other.to_string(),
                    };
                    out.push_str(&format!("# {k}: {v}\n"));
                }
            }
            out.push_str(&format!("# status: {}\n", outcome.status.label()));
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(&outcome.table.columns)
                .map_err(|e| e.to_string())?;
            for row in &outcome.table.rows {
                w.write_record(row).map_err(|e| e.to_string())?;
            }
            let bytes = w.into_inner().map_err(|e| e.to_string())?;
            out.push_str(&String::from_utf8(bytes).map_err(|e| e.to_string())?);
            Ok(out)
        }
    }
}

/// Writes to stdout, or atomically to `path` via a sibling temporary file.
pub fn emit(path: Option<&Path>, text: &str) -> std::io::Result<()> {
    match path {
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()
        }
        Some(path) => {
            let mut tmp = path.as_os_str().to_owned();
            tmp.push(".tmp");
            std::fs::write(&tmp, text)?;
            std::fs::rename(&tmp, path)
        }
    }
}
