//! Plain-text rendering: aligned columns and key/value blocks.

use std::fmt::Write;

use cxgame::Rational;

/// Significant digits in the decimal (display-only) columns.
pub const APPROX_DIGITS: usize = 6;
pub const APPROX_HEADER: &str = "approx (6 s.f.)";

pub fn approx(x: &Rational) -> String {
    format!("~{}", x.to_decimal_string(APPROX_DIGITS))
}

pub fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn verdict(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

pub fn join<T: ToString>(items: impl IntoIterator<Item = T>, sep: &str) -> String {
    items
        .into_iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(sep)
}

/// Left-aligned columns separated by two spaces; trailing spaces trimmed.
pub struct Table {
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new<S: ToString>(header: impl IntoIterator<Item = S>) -> Self {
        Table {
            header: header.into_iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn row<S: ToString>(&mut self, cells: impl IntoIterator<Item = S>) {
        self.rows
            .push(cells.into_iter().map(|s| s.to_string()).collect());
    }

    pub fn render(&self, out: &mut String) {
        let cols = self.header.len();
        let mut widths: Vec<usize> = self.header.iter().map(|h| h.chars().count()).collect();
        for row in &self.rows {
            for (w, cell) in widths.iter_mut().zip(row) {
                *w = (*w).max(cell.chars().count());
            }
        }
        for row in std::iter::once(&self.header).chain(&self.rows) {
            let mut line = String::new();
            for (k, cell) in row.iter().enumerate().take(cols) {
                let pad = widths[k] - cell.chars().count();
                line.push_str(cell);
                if k + 1 < cols {
                    line.push_str(&" ".repeat(pad + 2));
                }
            }
            writeln!(out, "{}", line.trim_end()).unwrap();
        }
    }
}

/// `key   value` lines with the keys padded to a common width.
pub fn fields(out: &mut String, pairs: &[(&str, String)]) {
    let width = pairs
        .iter()
        .map(|(k, _)| k.chars().count())
        .max()
        .unwrap_or(0);
    for (k, v) in pairs {
        writeln!(out, "{k:<width$}  {v}").unwrap();
    }
}
