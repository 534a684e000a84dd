//! CSV and JSON rendering.
//!
//! CSV: `# key=value` metadata lines, a header row, then rows. Numbers are
//! written with 17 significant digits so values round-trip exactly.

use serde_json::{json, Value};

use crate::config::RunConfig;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Num(f64),
    Text(String),
    Empty,
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_string())
    }
}

impl From<bool> for Cell {
    fn from(b: bool) -> Self {
        Cell::Text(b.to_string())
    }
}

fn num(v: f64) -> String {
    format!("{v:.16e}")
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Table {
    /// Result metadata, written after the config lines.
    pub meta: Vec<(String, String)>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Table { columns: columns.iter().map(|c| c.to_string()).collect(), ..Default::default() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn meta(&mut self, key: &str, value: impl ToString) {
        self.meta.push((key.to_string(), value.to_string()));
    }
}

/// Result of one command.
#[derive(Clone, Debug)]
pub struct Output {
    pub result: Value,
    pub table: Table,
    /// False turns into exit code 1.
    pub passed: bool,
}

pub fn render_csv(cfg: &RunConfig, t: &Table) -> String {
    let mut out = String::new();
    for (k, v) in cfg.metadata() {
        out.push_str(&format!("# {k}={v}\n"));
    }
    out.push_str(&format!("# version={VERSION}\n"));
    for (k, v) in &t.meta {
        out.push_str(&format!("# {k}={v}\n"));
    }
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(vec![]);
    w.write_record(&t.columns).expect("in-memory write");
    for row in &t.rows {
        w.write_record(row.iter().map(|c| match c {
            Cell::Num(v) => num(*v),
            Cell::Text(s) => s.clone(),
            Cell::Empty => String::new(),
        }))
        .expect("in-memory write");
    }
    out.push_str(&String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 cells"));
    out
}

pub fn render_json(cfg: &RunConfig, o: &Output) -> String {
    let doc = json!({
        "version": VERSION,
        "config": cfg,
        "passed": o.passed,
        "result": o.result,
    });
    let mut s = serde_json::to_string_pretty(&doc).expect("json value serializes");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use photonloc_core::analysis::SuiteName;

    #[test]
    fn csv_layout() {
        let cfg = RunConfig::Check { suite: SuiteName::Poincare, seed: 7, tolerance_override: None };
        let mut t = Table::new(&["name", "value"]);
        t.meta("passed", true);
        t.push(vec!["a,b".into(), 0.1.into()]);
        t.push(vec!["c".into(), Cell::Empty]);
        let s = render_csv(&cfg, &t);
        let lines: Vec<&str> = s.lines().collect();
        assert_eq!(lines[0], "# command=check");
        assert!(lines.contains(&"# passed=true"));
        assert!(s.ends_with("name,value\n\"a,b\",1.0000000000000001e-1\nc,\n"));
        assert_eq!(RunConfig::from_csv_header(&s).unwrap(), cfg);
    }

    #[test]
    fn seventeen_digits_round_trip() {
        for v in [0.1, 1.0 / 3.0, 5.199002760554308, -2.5e-300, f64::MAX] {
            assert_eq!(num(v).parse::<f64>().unwrap(), v);
        }
    }
}
