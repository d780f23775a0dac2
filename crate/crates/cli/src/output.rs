//! Rendering command results as CSV or JSON.

use serde_json::{json, Map, Value};

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Float(f64),
    Int(u64),
    Text(String),
    Bool(bool),
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            // 17 significant digits round-trip every f64.
            Cell::Float(x) => format!("{x:.16e}"),
            Cell::Int(n) => n.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Float(x) if x.is_finite() => json!(x),
            Cell::Float(x) => json!(x.to_string()),
            Cell::Int(n) => json!(n),
            Cell::Text(s) => json!(s),
            Cell::Bool(b) => json!(b),
        }
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Float(x)
    }
}

impl From<usize> for Cell {
    fn from(n: usize) -> Self {
        Cell::Int(n as u64)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_string())
    }
}

impl From<bool> for Cell {
    fn from(b: bool) -> Self {
        Cell::Bool(b)
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: Vec<&'static str>) -> Self {
        Table {
            columns,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

/// What a command produced: an optional table and scalar results.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Report {
    pub table: Option<Table>,
    pub summary: Vec<(&'static str, Cell)>,
}

/// Provenance attached to JSON output.
#[derive(Debug, Clone, PartialEq)]
pub struct Meta {
    pub command: String,
    pub seed: u64,
    pub args: Vec<String>,
}

impl Meta {
    fn json(&self) -> Value {
        json!({
            "command": self.command,
            "seed": self.seed,
            "version": env!("CARGO_PKG_VERSION"),
            "command_line": self.args,
        })
    }
}

/// CSV of the table, or of the summary as a single row when there is no
/// table.
pub fn render_csv(report: &Report) -> String {
    let (header, rows): (Vec<&str>, Vec<Vec<String>>) = match &report.table {
        Some(t) => (
            t.columns.clone(),
            t.rows
                .iter()
                .map(|r| r.iter().map(Cell::csv).collect())
                .collect(),
        ),
        None => (
            report.summary.iter().map(|(k, _)| *k).collect(),
            vec![report.summary.iter().map(|(_, v)| v.csv()).collect()],
        ),
    };
    let mut out = header.join(",");
    out.push('\n');
    for row in rows {
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

/// One flat object: summary values, one array per table column, and `meta`.
pub fn render_json(report: &Report, meta: &Meta) -> String {
    let mut obj = summary_object(report);
    if let Some(t) = &report.table {
        for (i, col) in t.columns.iter().enumerate() {
            let values = t.rows.iter().map(|r| r[i].json()).collect();
            obj.insert((*col).to_string(), Value::Array(values));
        }
    }
    obj.insert("meta".to_string(), meta.json());
    let mut text =
        serde_json::to_string_pretty(&Value::Object(obj)).expect("JSON values are finite");
    text.push('\n');
    text
}

/// The summary alone, with `meta`, for commands whose CSV carries the table.
pub fn render_summary_json(report: &Report, meta: &Meta) -> String {
    let mut obj = summary_object(report);
    obj.insert("meta".to_string(), meta.json());
    let mut text =
        serde_json::to_string_pretty(&Value::Object(obj)).expect("JSON values are finite");
    text.push('\n');
    text
}

fn summary_object(report: &Report) -> Map<String, Value> {
    report
        .summary
        .iter()
        .map(|(k, v)| ((*k).to_string(), v.json()))
        .collect()
}
