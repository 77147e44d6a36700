use std::io::Write;

use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Debug, Serialize)]
pub struct FixtureComparison {
    pub expected: Value,
    pub got: Value,
    #[serde(rename = "match")]
    pub matches: bool,
}

impl FixtureComparison {
    pub fn new(expected: Value, got: Value) -> Self {
        FixtureComparison { matches: expected == got, expected, got }
    }
}

#[derive(Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    pub parameters: Value,
    pub result: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fixture_comparison: Option<FixtureComparison>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    /// Set when part of the check could not run for lack of external data.
    #[serde(skip)]
    pub missing_data: bool,
    #[serde(skip)]
    pub table: Table,
}

#[derive(Debug, Default, Clone)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Table { header: header.iter().map(|s| s.to_string()).collect(), rows: vec![] }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }
}

impl RunReport {
    pub fn new(command: &str, parameters: Value, result: impl Serialize, table: Table) -> Self {
        RunReport {
            command: command.into(),
            parameters,
            result: serde_json::to_value(result).expect("results serialize"),
            fixture_comparison: None,
            notes: vec![],
            missing_data: false,
            table,
        }
    }

    pub fn compare(mut self, expected: Value, got: Value) -> Self {
        self.fixture_comparison = Some(FixtureComparison::new(expected, got));
        self
    }

    pub fn mismatch(&self) -> bool {
        self.fixture_comparison.as_ref().map_or(false, |c| !c.matches)
    }

    pub fn write(&self, format: Format, out: &mut impl Write) -> std::io::Result<()> {
        match format {
            Format::Json => {
                serde_json::to_writer_pretty(&mut *out, self)?;
                writeln!(out)
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(out);
                w.write_record(&self.table.header)?;
                for r in &self.table.rows {
                    w.write_record(r)?;
                }
                w.flush()
            }
            Format::Text => {
                let t = &self.table;
                let mut widths: Vec<usize> = t.header.iter().map(|h| h.chars().count()).collect();
                for r in &t.rows {
                    for (w, c) in widths.iter_mut().zip(r) {
                        *w = (*w).max(c.chars().count());
                    }
                }
                let line = |cells: &[String]| {
                    cells
                        .iter()
                        .zip(&widths)
                        .map(|(c, w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
                        .collect::<Vec<_>>()
                        .join("  ")
                        .trim_end()
                        .to_string()
                };
                writeln!(out, "{}", line(&t.header))?;
                for r in &t.rows {
                    writeln!(out, "{}", line(r))?;
                }
                if let Some(c) = &self.fixture_comparison {
                    writeln!(out, "fixture: {}", if c.matches { "match" } else { "MISMATCH" })?;
                }
                for n in &self.notes {
                    writeln!(out, "note: {n}")?;
                }
                Ok(())
            }
        }
    }
}
