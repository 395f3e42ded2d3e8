use std::io::Write;
use std::path::Path;

use serde::Serialize;
use serde_json::Value;

use crate::args::Format;

#[derive(Debug, Serialize)]
pub struct Assertion {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

impl Assertion {
    pub fn new(name: &str, passed: bool, detail: impl Into<String>) -> Self {
        Assertion { name: name.to_string(), passed, detail: detail.into() }
    }
}

/// What a command produced: a JSON result, the checks it ran, and a short
/// human summary.
#[derive(Debug, Serialize)]
pub struct Report {
    pub command: &'static str,
    pub passed: bool,
    pub assertions: Vec<Assertion>,
    pub result: Value,
    #[serde(skip)]
    summary: String,
}

impl Report {
    pub fn new(command: &'static str, result: Value) -> Self {
        Report { command, passed: true, assertions: Vec::new(), result, summary: String::new() }
    }

    pub fn text(mut self, summary: impl Into<String>) -> Self {
        self.summary = summary.into();
        self
    }

    pub fn assert(mut self, a: Assertion) -> Self {
        self.passed &= a.passed;
        self.assertions.push(a);
        self
    }

    pub fn passed(&self) -> bool {
        self.passed
    }

    fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("report serialization cannot fail");
                s.push('\n');
                s
            }
            Format::Text => {
                let mut s = String::new();
                if !self.summary.is_empty() {
                    s.push_str(&self.summary);
                    s.push('\n');
                }
                for a in &self.assertions {
                    let mark = if a.passed { "PASS" } else { "FAIL" };
                    if a.detail.is_empty() {
                        s.push_str(&format!("{mark} {}\n", a.name));
                    } else {
                        s.push_str(&format!("{mark} {} ({})\n", a.name, a.detail));
                    }
                }
                s
            }
        }
    }

    pub fn emit(&self, format: Format, out: Option<&Path>) -> std::io::Result<()> {
        let text = self.render(format);
        match out {
            Some(path) => std::fs::write(path, text),
            None => std::io::stdout().lock().write_all(text.as_bytes()),
        }
    }
}
