//! Deterministic text rendering: CSV, JSON, and two-column plot data.
//!
//! Numbers carry 15 significant digits in CSV/JSON and 12 in plot data;
//! identical inputs always produce identical bytes.

use clap::ValueEnum;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Plotdata,
}

/// `%.{sig}g`-style formatting: fixed notation for moderate exponents,
/// scientific otherwise, trailing zeros trimmed.
pub fn fmt_sig(x: f64, sig: usize) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{:.*e}", sig - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("e-format");
    let exp: i32 = exp.parse().expect("exponent");
    if exp >= -4 && exp < sig as i32 {
        let decimals = (sig as i32 - 1 - exp).max(0) as usize;
        let fixed = format!("{x:.decimals$}");
        let trimmed = if fixed.contains('.') {
            fixed.trim_end_matches('0').trim_end_matches('.')
        } else {
            &fixed
        };
        trimmed.to_string()
    } else {
        let mantissa = if mantissa.contains('.') {
            mantissa.trim_end_matches('0').trim_end_matches('.')
        } else {
            mantissa
        };
        format!("{mantissa}e{exp}")
    }
}

#[derive(Debug, Clone)]
pub enum Cell {
    Int(i64),
    UInt(u64),
    Float(f64),
    Str(String),
    Empty,
}

/// One rectangular result set, rendered per format.
#[derive(Debug, Clone)]
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

fn csv_escape(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn json_escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

fn cell_csv(cell: &Cell) -> String {
    match cell {
        Cell::Int(v) => v.to_string(),
        Cell::UInt(v) => v.to_string(),
        Cell::Float(v) => fmt_sig(*v, 15),
        Cell::Str(s) => csv_escape(s),
        Cell::Empty => String::new(),
    }
}

fn cell_json(cell: &Cell) -> String {
    match cell {
        Cell::Int(v) => v.to_string(),
        Cell::UInt(v) => v.to_string(),
        Cell::Float(v) => {
            if v.is_finite() {
                fmt_sig(*v, 15)
            } else {
                json_escape(&fmt_sig(*v, 15))
            }
        }
        Cell::Str(s) => json_escape(s),
        Cell::Empty => "null".into(),
    }
}

/// Header row, comma-separated cells, LF line endings.
pub fn render_csv(table: &Table) -> String {
    let mut out = String::new();
    out.push_str(&table.columns.join(","));
    out.push('\n');
    for row in &table.rows {
        let cells: Vec<String> = row.iter().map(cell_csv).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

/// One top-level object: `meta` (command, version, flags) and `rows`.
pub fn render_json(command: &str, flags: &[(&str, String)], table: &Table) -> String {
    let mut out = String::from("{\"meta\":{\"command\":");
    out.push_str(&json_escape(command));
    out.push_str(",\"version\":");
    out.push_str(&json_escape(env!("CARGO_PKG_VERSION")));
    out.push_str(",\"flags\":{");
    for (i, (k, v)) in flags.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push_str(&json_escape(k));
        out.push(':');
        out.push_str(&json_escape(v));
    }
    out.push_str("}},\"rows\":[");
    for (i, row) in table.rows.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push('{');
        for (j, (col, cell)) in table.columns.iter().zip(row).enumerate() {
            if j > 0 {
                out.push(',');
            }
            out.push_str(&json_escape(col));
            out.push(':');
            out.push_str(&cell_json(cell));
        }
        out.push('}');
    }
    out.push_str("]}\n");
    out
}

/// `# comment` header lines, then whitespace-separated `x value` pairs with
/// 12 significant digits. Only meaningful for (x, value) tables.
pub fn render_plotdata(comments: &[String], pairs: &[(f64, f64)]) -> String {
    let mut out = String::new();
    for c in comments {
        out.push_str("# ");
        out.push_str(c);
        out.push('\n');
    }
    for (x, v) in pairs {
        out.push_str(&fmt_sig(*x, 12));
        out.push(' ');
        out.push_str(&fmt_sig(*v, 12));
        out.push('\n');
    }
    out
}
