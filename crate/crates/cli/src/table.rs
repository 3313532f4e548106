//! Deterministic CSV and JSON emission of homogeneous report rows.

use std::io::Write;

use clap::ValueEnum;
use g2n_core::Rational;
use serde_json::{Map, Value};

use crate::CliError;

/// Digits after the decimal point in every `_approx` column.
pub const APPROX_DIGITS: u32 = 12;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Int,
    Bool,
    Text,
    /// Emitted as `"p/q"` followed by a `<name>_approx` decimal column.
    Rational,
    /// Nested JSON; compact JSON text inside CSV.
    Json,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Int(i64),
    Bool(bool),
    Text(String),
    Rational(Rational),
    Json(Value),
}

impl From<u32> for Cell {
    fn from(v: u32) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<u64> for Cell {
    fn from(v: u64) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}

impl From<Rational> for Cell {
    fn from(v: Rational) -> Self {
        Cell::Rational(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

/// One report row. Every implementor has a fixed schema so that an empty
/// table still yields a header.
pub trait TableRow {
    fn schema() -> &'static [(&'static str, Kind)];
    fn cells(&self) -> Vec<Cell>;
}

fn header<R: TableRow>() -> Vec<String> {
    let mut out = Vec::new();
    for (name, kind) in R::schema() {
        out.push(name.to_string());
        if *kind == Kind::Rational {
            out.push(format!("{name}_approx"));
        }
    }
    out
}

fn csv_fields(cell: &Cell) -> Vec<String> {
    match cell {
        Cell::Int(v) => vec![v.to_string()],
        Cell::Bool(v) => vec![v.to_string()],
        Cell::Text(v) => vec![v.clone()],
        Cell::Rational(v) => vec![v.to_string(), v.to_decimal_string(APPROX_DIGITS)],
        Cell::Json(v) => vec![v.to_string()],
    }
}

fn json_object<R: TableRow>(row: &R) -> Map<String, Value> {
    let mut obj = Map::new();
    for ((name, _), cell) in R::schema().iter().zip(row.cells()) {
        match cell {
            Cell::Int(v) => {
                obj.insert(name.to_string(), Value::from(v));
            }
            Cell::Bool(v) => {
                obj.insert(name.to_string(), Value::from(v));
            }
            Cell::Text(v) => {
                obj.insert(name.to_string(), Value::from(v));
            }
            Cell::Rational(v) => {
                obj.insert(name.to_string(), Value::from(v.to_string()));
                obj.insert(
                    format!("{name}_approx"),
                    Value::from(v.to_decimal_string(APPROX_DIGITS)),
                );
            }
            Cell::Json(v) => {
                obj.insert(name.to_string(), v);
            }
        }
    }
    obj
}

/// Writes `rows` in the given order. CSV always has a header row; JSON is an
/// array with one compact object per line.
pub fn emit_table<R: TableRow, W: Write>(
    rows: &[R],
    format: Format,
    out: &mut W,
) -> Result<(), CliError> {
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(header::<R>())?;
            for row in rows {
                let record: Vec<String> = row.cells().iter().flat_map(csv_fields).collect();
                w.write_record(record)?;
            }
            w.flush()?;
        }
        Format::Json => {
            if rows.is_empty() {
                writeln!(out, "[]")?;
                return Ok(());
            }
            writeln!(out, "[")?;
            for (i, row) in rows.iter().enumerate() {
                let text = serde_json::to_string(&json_object(row))?;
                let sep = if i + 1 < rows.len() { "," } else { "" };
                writeln!(out, "  {text}{sep}")?;
            }
            writeln!(out, "]")?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    struct Demo {
        id: u32,
        x: Rational,
        ok: bool,
    }

    impl TableRow for Demo {
        fn schema() -> &'static [(&'static str, Kind)] {
            &[("id", Kind::Int), ("x", Kind::Rational), ("ok", Kind::Bool)]
        }
        fn cells(&self) -> Vec<Cell> {
            vec![self.id.into(), self.x.clone().into(), self.ok.into()]
        }
    }

    fn render(rows: &[Demo], f: Format) -> String {
        let mut buf = Vec::new();
        emit_table(rows, f, &mut buf).unwrap();
        String::from_utf8(buf).unwrap()
    }

    #[test]
    fn header_only_for_empty_csv() {
        assert_eq!(render(&[], Format::Csv), "id,x,x_approx,ok\n");
        assert_eq!(render(&[], Format::Json), "[]\n");
    }

    #[test]
    fn rational_columns() {
        let rows = [Demo {
            id: 1,
            x: Rational::frac(1, 3),
            ok: true,
        }];
        assert_eq!(
            render(&rows, Format::Csv),
            "id,x,x_approx,ok\n1,1/3,0.333333333333,true\n"
        );
        assert_eq!(
            render(&rows, Format::Json),
            "[\n  {\"id\":1,\"x\":\"1/3\",\"x_approx\":\"0.333333333333\",\"ok\":true}\n]\n"
        );
    }
}
