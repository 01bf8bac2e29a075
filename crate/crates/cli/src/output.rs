use std::io::Write;
use std::path::Path;

use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Tsv,
    Json,
}

/// A table plus its JSON rendering. `notes` become `#` lines in TSV.
#[derive(Debug, Default)]
pub struct Report {
    pub notes: Vec<String>,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
    pub json: Value,
}

impl Report {
    pub fn new(header: &[&str]) -> Self {
        Report {
            header: header.iter().map(|s| s.to_string()).collect(),
            ..Report::default()
        }
    }

    pub fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    pub fn row(&mut self, cells: Vec<String>) {
        self.rows.push(cells);
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json).expect("serializable");
                s.push('\n');
                s
            }
            Format::Tsv => {
                let mut s = String::new();
                for n in &self.notes {
                    s.push_str("# ");
                    s.push_str(n);
                    s.push('\n');
                }
                if !self.header.is_empty() {
                    s.push_str(&self.header.join("\t"));
                    s.push('\n');
                }
                for r in &self.rows {
                    s.push_str(&r.join("\t"));
                    s.push('\n');
                }
                s
            }
        }
    }

    pub fn emit(&self, format: Format, out: Option<&Path>) -> std::io::Result<()> {
        let text = self.render(format);
        match out {
            Some(p) => std::fs::write(p, text),
            None => std::io::stdout().write_all(text.as_bytes()),
        }
    }
}
