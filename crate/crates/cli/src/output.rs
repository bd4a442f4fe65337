//! Rendering of result tables as aligned text, CSV or JSON.

use std::io::Write;

use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Table,
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(u64),
    Bool(bool),
    Text(String),
    Empty,
}

impl Cell {
    /// Shortest round-tripping form; infinities as `inf` / `-inf`.
    fn csv(&self) -> String {
        match self {
            Cell::Num(x) if x.is_infinite() => if *x > 0.0 { "inf" } else { "-inf" }.to_string(),
            Cell::Num(x) => format!("{x:?}"),
            Cell::Int(n) => n.to_string(),
            Cell::Bool(b) => b.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Empty => String::new(),
        }
    }

    fn human(&self) -> String {
        match self {
            Cell::Num(x) if x.is_finite() && *x != 0.0 && (x.abs() < 1e-4 || x.abs() >= 1e9) => format!("{x:.6e}"),
            Cell::Num(x) if x.is_finite() => format!("{x:.10}"),
            Cell::Empty => "-".to_string(),
            other => other.csv(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Num(x) if x.is_finite() => Value::from(*x),
            Cell::Num(_) => Value::String(self.csv()),
            Cell::Int(n) => Value::from(*n),
            Cell::Bool(b) => Value::Bool(*b),
            Cell::Text(s) => Value::String(s.clone()),
            Cell::Empty => Value::Null,
        }
    }
}

/// Rows under fixed column names, plus key/value lines that precede the
/// table in text output and become top-level fields in JSON.
#[derive(Debug, Clone, Default)]
pub struct Report {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    pub meta: Vec<(&'static str, Cell)>,
    /// Trailing row appended in text and CSV output; in JSON it is keyed by its
    /// first cell.
    pub footer: Option<Vec<Cell>>,
}

impl Report {
    pub fn new(columns: &[&'static str]) -> Self {
        Self { columns: columns.to_vec(), ..Self::default() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn write(&self, format: Format, out: &mut dyn Write) -> std::io::Result<()> {
        match format {
            Format::Csv => self.write_csv(out),
            Format::Table => self.write_table(out),
            Format::Json => self.write_json(out),
        }
    }

    fn all_rows(&self) -> impl Iterator<Item = &Vec<Cell>> {
        self.rows.iter().chain(self.footer.iter())
    }

    fn write_csv(&self, out: &mut dyn Write) -> std::io::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(&self.columns)?;
        for row in self.all_rows() {
            w.write_record(row.iter().map(Cell::csv))?;
        }
        w.flush()
    }

    fn write_table(&self, out: &mut dyn Write) -> std::io::Result<()> {
        for (k, v) in &self.meta {
            writeln!(out, "{k}: {}", v.human())?;
        }
        let cells: Vec<Vec<String>> = self.all_rows().map(|r| r.iter().map(Cell::human).collect()).collect();
        let widths: Vec<usize> = (0..self.columns.len())
            .map(|j| cells.iter().map(|r| r[j].len()).chain([self.columns[j].len()]).max().unwrap_or(0))
            .collect();
        let line = |items: Vec<&str>| {
            items.iter().zip(&widths).map(|(s, w)| format!("{s:>w$}")).collect::<Vec<_>>().join("  ")
        };
        writeln!(out, "{}", line(self.columns.clone()))?;
        for r in &cells {
            writeln!(out, "{}", line(r.iter().map(String::as_str).collect()))?;
        }
        Ok(())
    }

    fn write_json(&self, out: &mut dyn Write) -> std::io::Result<()> {
        let mut top = Map::new();
        for (k, v) in &self.meta {
            top.insert(k.to_string(), v.json());
        }
        let object = |row: &Vec<Cell>| -> Value {
            Value::Object(self.columns.iter().zip(row).map(|(c, v)| (c.to_string(), v.json())).collect())
        };
        top.insert("rows".into(), Value::Array(self.rows.iter().map(object).collect()));
        if let Some(f) = &self.footer {
            if let Some(Cell::Text(key)) = f.first() {
                let value = f.iter().rev().find(|c| **c != Cell::Empty).map_or(Value::Null, Cell::json);
                top.insert(key.clone(), value);
            }
        }
        serde_json::to_writer_pretty(&mut *out, &Value::Object(top))?;
        writeln!(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Report {
        let mut r = Report::new(&["a", "b"]);
        r.push(vec![Cell::Num(0.1), Cell::Text("x,y".into())]);
        r.push(vec![Cell::Num(f64::INFINITY), Cell::Empty]);
        r.footer = Some(vec![Cell::Text("target".into()), Cell::Num(2.0)]);
        r.meta.push(("length", Cell::Num(4.0)));
        r
    }

    fn render(f: Format) -> String {
        let mut buf = Vec::new();
        sample().write(f, &mut buf).unwrap();
        String::from_utf8(buf).unwrap()
    }

    #[test]
    fn csv_quotes_and_footer() {
        assert_eq!(render(Format::Csv), "a,b\n0.1,\"x,y\"\ninf,\ntarget,2.0\n");
    }

    #[test]
    fn json_shape() {
        let v: Value = serde_json::from_str(&render(Format::Json)).unwrap();
        assert_eq!(v["length"], 4.0);
        assert_eq!(v["target"], 2.0);
        assert_eq!(v["rows"][1]["a"], "inf");
        assert!(v["rows"][1]["b"].is_null());
    }

    #[test]
    fn table_aligns() {
        let t = render(Format::Table);
        let lines: Vec<&str> = t.lines().collect();
        assert_eq!(lines[0], "length: 4.0000000000");
        assert_eq!(lines[1].len(), lines[2].len());
    }
}
