//! Serialization shared by all subcommands.
//!
//! Floats are written in scientific notation with 17 significant digits so
//! that equal bit patterns give equal bytes, in both JSON and CSV.

use std::io::{self, Write};

use horn_lab_core::matrix_json::CMatrix;
use serde::Serialize;
use serde_json::ser::Formatter;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

pub fn fmt_f64(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else {
        v.to_string()
    }
}

struct Digits17;

impl Formatter for Digits17 {
    fn write_f64<W: ?Sized + Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        write!(writer, "{value:.16e}")
    }

    fn write_f32<W: ?Sized + Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, value as f64)
    }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, Digits17);
    value.serialize(&mut ser).expect("reports serialize");
    buf.push(b'\n');
    String::from_utf8(buf).expect("JSON is UTF-8")
}

/// A header row plus data rows.
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Table {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }

    /// Columns `prefix1..prefixN` of float rows.
    pub fn of_points(prefix: &str, points: &[Vec<f64>]) -> Self {
        let n = points.first().map_or(0, Vec::len);
        let header: Vec<String> = (1..=n).map(|i| format!("{prefix}{i}")).collect();
        Table {
            header,
            rows: points.iter().map(|p| p.iter().map(|&v| fmt_f64(v)).collect()).collect(),
        }
    }

    /// Appends `name,row,col,re,im` rows for every entry of `m`.
    pub fn push_matrix(&mut self, name: &str, m: &CMatrix) {
        for i in 0..m.nrows() {
            for j in 0..m.ncols() {
                let z = m[(i, j)];
                self.push(vec![
                    name.to_string(),
                    (i + 1).to_string(),
                    (j + 1).to_string(),
                    fmt_f64(z.re),
                    fmt_f64(z.im),
                ]);
            }
        }
    }

    pub fn matrices() -> Self {
        Table::new(&["matrix", "row", "col", "re", "im"])
    }

    pub fn single(name: &str, value: String) -> Self {
        let mut t = Table::new(&[name]);
        t.push(vec![value]);
        t
    }

    pub fn render(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.header).expect("in-memory write");
        for row in &self.rows {
            w.write_record(row).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("CSV is UTF-8")
    }
}

/// What a subcommand produced, ready for either output format.
pub struct Report {
    pub json: String,
    pub table: Table,
}

impl Report {
    pub fn new<T: Serialize>(value: &T, table: Table) -> Self {
        Report {
            json: to_json(value),
            table,
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.json.clone(),
            Format::Csv => self.table.render(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_have_seventeen_digits() {
        assert_eq!(to_json(&vec![0.1, -2.0]), "[1.0000000000000001e-1,-2.0000000000000000e0]\n");
        assert_eq!(to_json(&f64::NAN), "null\n");
        let back: Vec<f64> = serde_json::from_str(&to_json(&vec![0.1, 1.0 / 3.0])).unwrap();
        assert_eq!(back, vec![0.1, 1.0 / 3.0]);
    }

    #[test]
    fn csv_layout() {
        let mut t = Table::new(&["a", "b"]);
        t.push(vec!["1".into(), fmt_f64(0.5)]);
        assert_eq!(t.render(), "a,b\n1,5.0000000000000000e-1\n");
    }
}
