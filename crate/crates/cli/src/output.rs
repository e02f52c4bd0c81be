use clap::ValueEnum;
use serde_json::Value;

#[derive(Clone, Copy, ValueEnum)]
pub enum Format {
    Json,
    Tsv,
}

/// One result in both renderings.
pub struct Report {
    pub json: Value,
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
    /// Exit nonzero even though the run itself succeeded.
    pub failed: bool,
}

impl Report {
    pub fn new(json: Value, header: Vec<&'static str>, rows: Vec<Vec<String>>) -> Self {
        Self { json, header, rows, failed: false }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json).expect("values always serialize");
                s.push('\n');
                s
            }
            Format::Tsv => {
                let mut out = String::new();
                if !self.header.is_empty() {
                    out.push_str(&self.header.join("\t"));
                    out.push('\n');
                }
                for row in &self.rows {
                    out.push_str(&row.join("\t"));
                    out.push('\n');
                }
                out
            }
        }
    }
}

/// Big integers as JSON numbers when they fit, strings otherwise.
pub fn big(x: &impl ToString) -> Value {
    let s = x.to_string();
    s.parse::<u64>().map(Value::from).unwrap_or(Value::String(s))
}
