use std::fmt::Write as _;

use anyhow::{Context, Result};

/// A result table. Rows whose `verdict` column is not a passing value are
/// counted as certificate failures.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table {
    pub params: String,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
    pub failures: usize,
}

impl Table {
    pub fn new(params: String, header: &[&str]) -> Self {
        Table {
            params,
            header: header.iter().map(|h| h.to_string()).collect(),
            rows: Vec::new(),
            failures: 0,
        }
    }

    pub fn push(&mut self, row: Vec<String>, passed: bool) {
        debug_assert_eq!(row.len(), self.header.len());
        if !passed {
            self.failures += 1;
        }
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.header)?;
        for row in &self.rows {
            w.write_record(row)?;
        }
        let body = String::from_utf8(w.into_inner().context("flushing csv")?)?;
        Ok(with_params(&self.params, &body))
    }
}

pub fn with_params(params: &str, body: &str) -> String {
    format!("# {params}\n{body}")
}

/// Render CSV text (with an optional leading `#` comment line) as a
/// Markdown table.
pub fn markdown_from_csv(text: &str) -> Result<String> {
    let mut out = String::new();
    let body = match text.strip_prefix("# ") {
        Some(rest) => {
            let (params, body) = rest.split_once('\n').unwrap_or((rest, ""));
            writeln!(out, "`{params}`\n")?;
            body
        }
        None => text,
    };
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .from_reader(body.as_bytes());
    let header: Vec<String> = reader.headers()?.iter().map(escape).collect();
    writeln!(out, "| {} |", header.join(" | "))?;
    writeln!(out, "|{}", "---|".repeat(header.len()))?;
    for record in reader.records() {
        let cells: Vec<String> = record?.iter().map(escape).collect();
        writeln!(out, "| {} |", cells.join(" | "))?;
    }
    Ok(out)
}

fn escape(cell: &str) -> String {
    cell.replace('|', "\\|")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn markdown_round_trip_of_quoted_cells() {
        let mut t = Table::new("demo --x 1".into(), &["a", "b"]);
        t.push(vec!["1,2".into(), "x|y".into()], true);
        t.push(vec!["3".into(), "4".into()], false);
        assert_eq!(t.failures, 1);
        let csv = t.to_csv().unwrap();
        assert!(csv.starts_with("# demo --x 1\na,b\n\"1,2\",x|y\n"));
        let md = markdown_from_csv(&csv).unwrap();
        assert_eq!(
            md,
            "`demo --x 1`\n\n| a | b |\n|---|---|\n| 1,2 | x\\|y |\n| 3 | 4 |\n"
        );
    }
}
