//! Report rendering as aligned tables, CSV, or deterministic JSON.

use std::fmt::Write;

use clap::ValueEnum;
use num_complex::Complex64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Val {
    Str(String),
    Int(i128),
    Float(f64),
    Complex(Complex64),
    Bool(bool),
}

impl From<&str> for Val {
    fn from(s: &str) -> Self {
        Val::Str(s.to_string())
    }
}

impl From<String> for Val {
    fn from(s: String) -> Self {
        Val::Str(s)
    }
}

impl From<f64> for Val {
    fn from(x: f64) -> Self {
        Val::Float(x)
    }
}

impl From<Complex64> for Val {
    fn from(z: Complex64) -> Self {
        Val::Complex(z)
    }
}

impl From<bool> for Val {
    fn from(b: bool) -> Self {
        Val::Bool(b)
    }
}

macro_rules! int_val {
    ($($t:ty),*) => {$(
        impl From<$t> for Val {
            fn from(x: $t) -> Self {
                Val::Int(x as i128)
            }
        }
    )*};
}
int_val!(i32, i64, u32, u64, usize, i128, u128);

fn float17(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        format!("\"{x}\"")
    }
}

fn float_text(x: f64) -> String {
    let a = x.abs();
    if a == 0.0 || !a.is_finite() || (1e-4..1e15).contains(&a) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

fn complex_text(z: Complex64) -> String {
    if z.im == 0.0 {
        float_text(z.re)
    } else {
        let sign = if z.im < 0.0 { '-' } else { '+' };
        format!("{}{sign}{}i", float_text(z.re), float_text(z.im.abs()))
    }
}

impl Val {
    fn text(&self) -> String {
        match self {
            Val::Str(s) => s.clone(),
            Val::Int(i) => i.to_string(),
            Val::Float(x) => float_text(*x),
            Val::Complex(z) => complex_text(*z),
            Val::Bool(b) => b.to_string(),
        }
    }

    fn json(&self) -> String {
        match self {
            Val::Str(s) => serde_json::to_string(s).expect("string"),
            Val::Int(i) => i.to_string(),
            Val::Float(x) => float17(*x),
            Val::Complex(z) => format!("{{\"im\":{},\"re\":{}}}", float17(z.im), float17(z.re)),
            Val::Bool(b) => b.to_string(),
        }
    }
}

fn csv_cell(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

#[derive(Debug, Clone, Default)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Val>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Self {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Val>) {
        self.rows.push(row);
    }
}

/// Named scalar fields plus an optional table of rows.
#[derive(Debug, Clone, Default)]
pub struct Report {
    pub fields: Vec<(String, Val)>,
    pub table: Option<Table>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn field(mut self, key: &str, v: impl Into<Val>) -> Self {
        self.fields.push((key.to_string(), v.into()));
        self
    }

    pub fn add(&mut self, key: &str, v: impl Into<Val>) {
        self.fields.push((key.to_string(), v.into()));
    }

    pub fn with_table(mut self, t: Table) -> Self {
        self.table = Some(t);
        self
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Table => self.render_table(),
            Format::Csv => self.render_csv(),
            Format::Json => self.render_json(),
        }
    }

    fn render_table(&self) -> String {
        let mut out = String::new();
        let width = self.fields.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        for (k, v) in &self.fields {
            writeln!(out, "{k:<width$}  {}", v.text()).unwrap();
        }
        if let Some(t) = &self.table {
            if !self.fields.is_empty() {
                out.push('\n');
            }
            let cells: Vec<Vec<String>> = t.rows.iter().map(|r| r.iter().map(Val::text).collect()).collect();
            let widths: Vec<usize> = (0..t.columns.len())
                .map(|i| {
                    cells
                        .iter()
                        .map(|r| r[i].chars().count())
                        .chain([t.columns[i].len()])
                        .max()
                        .unwrap_or(0)
                })
                .collect();
            let line = |items: &[String]| {
                items
                    .iter()
                    .zip(&widths)
                    .map(|(s, w)| format!("{s:<w$}", w = *w))
                    .collect::<Vec<_>>()
                    .join("  ")
                    .trim_end()
                    .to_string()
            };
            writeln!(out, "{}", line(&t.columns)).unwrap();
            for r in &cells {
                writeln!(out, "{}", line(r)).unwrap();
            }
        }
        out
    }

    fn render_csv(&self) -> String {
        let mut out = String::new();
        match &self.table {
            Some(t) => {
                let head: Vec<String> = t.columns.iter().map(|c| csv_cell(c)).collect();
                writeln!(out, "{}", head.join(",")).unwrap();
                for r in &t.rows {
                    let cells: Vec<String> = r.iter().map(|v| csv_cell(&v.text())).collect();
                    writeln!(out, "{}", cells.join(",")).unwrap();
                }
            }
            None => {
                writeln!(out, "key,value").unwrap();
                for (k, v) in &self.fields {
                    writeln!(out, "{},{}", csv_cell(k), csv_cell(&v.text())).unwrap();
                }
            }
        }
        out
    }

    /// Sorted keys, 17 significant digits.
    fn render_json(&self) -> String {
        let mut entries: Vec<(String, String)> =
            self.fields.iter().map(|(k, v)| (k.clone(), v.json())).collect();
        if let Some(t) = &self.table {
            let rows: Vec<String> = t
                .rows
                .iter()
                .map(|r| {
                    let mut cells: Vec<(&String, String)> = t.columns.iter().zip(r.iter().map(Val::json)).collect();
                    cells.sort_by(|a, b| a.0.cmp(b.0));
                    let body: Vec<String> = cells
                        .into_iter()
                        .map(|(k, v)| format!("{}:{v}", serde_json::to_string(k).expect("key")))
                        .collect();
                    format!("{{{}}}", body.join(","))
                })
                .collect();
            entries.push(("rows".to_string(), format!("[{}]", rows.join(","))));
        }
        entries.sort_by(|a, b| a.0.cmp(&b.0));
        let body: Vec<String> = entries
            .into_iter()
            .map(|(k, v)| format!("{}:{v}", serde_json::to_string(&k).expect("key")))
            .collect();
        format!("{{{}}}\n", body.join(","))
    }
}
