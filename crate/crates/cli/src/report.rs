use std::fs;
use std::io::Write;

use serde_json::{Map, Value};

use crate::args::{Format, Output};
use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Layout {
    /// CSV as `field,value` rows.
    Fields,
    /// CSV as a `count,frequency` table; other fields go in `# key=value`
    /// comment lines above it.
    Histogram,
}

/// A finished command: the machine-readable record plus a one-line summary.
#[derive(Debug)]
pub struct Report {
    pub body: Map<String, Value>,
    pub layout: Layout,
    pub summary: String,
}

impl Report {
    pub fn new(body: Value, layout: Layout, summary: String) -> Self {
        let Value::Object(body) = body else {
            panic!("report body must be a JSON object");
        };
        Self { body, layout, summary }
    }

    /// Appends every field of `value`, which must serialize to an object.
    pub fn extend<T: serde::Serialize>(&mut self, value: &T) -> Result<(), CliError> {
        match serde_json::to_value(value).map_err(|e| CliError::Runtime(e.to_string()))? {
            Value::Object(map) => {
                self.body.extend(map);
                Ok(())
            }
            other => Err(CliError::Runtime(format!("cannot flatten {other}"))),
        }
    }

    pub fn render(&self, format: Format) -> Result<String, CliError> {
        match format {
            Format::Json => {
                let mut text = serde_json::to_string(&self.body).map_err(|e| CliError::Runtime(e.to_string()))?;
                text.push('\n');
                Ok(text)
            }
            Format::Csv => self.render_csv(),
        }
    }

    fn render_csv(&self) -> Result<String, CliError> {
        let fields = flatten_object(&self.body);
        let mut out = Vec::new();
        let rows: Vec<(String, String)> = match self.layout {
            Layout::Fields => {
                out.extend_from_slice(b"field,value\n");
                fields
            }
            Layout::Histogram => {
                let mut table = Vec::new();
                for (key, value) in fields {
                    match key.strip_prefix("histogram.") {
                        Some(count) => table.push((count.to_string(), value)),
                        None => writeln!(out, "# {key}={value}").expect("write to Vec"),
                    }
                }
                out.extend_from_slice(b"count,frequency\n");
                table
            }
        };
        let mut writer = csv::WriterBuilder::new().has_headers(false).from_writer(out);
        for row in rows {
            writer.serialize(row).map_err(|e| CliError::Runtime(e.to_string()))?;
        }
        let bytes = writer.into_inner().map_err(|e| CliError::Runtime(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| CliError::Runtime(e.to_string()))
    }

    /// Writes the report to `--out` or stdout and the summary to stderr.
    pub fn emit(&self, output: &Output) -> Result<(), CliError> {
        let text = self.render(output.format)?;
        match &output.out {
            Some(path) => fs::write(path, text)
                .map_err(|e| CliError::Runtime(format!("cannot write {}: {e}", path.display())))?,
            None => {
                let mut stdout = std::io::stdout().lock();
                stdout
                    .write_all(text.as_bytes())
                    .and_then(|()| stdout.flush())
                    .map_err(|e| CliError::Runtime(format!("cannot write report: {e}")))?;
            }
        }
        eprintln!("{}", self.summary);
        Ok(())
    }
}

/// Dotted-key view of a JSON object: nested objects and arrays become
/// `parent.child` / `parent.0`; strings are unquoted and `null` is empty.
pub fn flatten_object(map: &Map<String, Value>) -> Vec<(String, String)> {
    let mut out = Vec::new();
    for (key, value) in map {
        flatten_into(key, value, &mut out);
    }
    out
}

fn flatten_into(prefix: &str, value: &Value, out: &mut Vec<(String, String)>) {
    match value {
        Value::Object(map) => {
            for (key, v) in map {
                flatten_into(&format!("{prefix}.{key}"), v, out);
            }
        }
        Value::Array(items) => {
            for (i, v) in items.iter().enumerate() {
                flatten_into(&format!("{prefix}.{i}"), v, out);
            }
        }
        Value::String(s) => out.push((prefix.to_string(), s.clone())),
        Value::Null => out.push((prefix.to_string(), String::new())),
        other => out.push((prefix.to_string(), other.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn flattens_nested_values() {
        let body = json!({"a": 1, "b": {"c": [0.5, null]}, "d": "x"});
        let Value::Object(map) = body else { unreachable!() };
        let flat = flatten_object(&map);
        assert_eq!(
            flat,
            vec![
                ("a".into(), "1".into()),
                ("b.c.0".into(), "0.5".into()),
                ("b.c.1".into(), "".into()),
                ("d".into(), "x".into()),
            ]
        );
    }

    #[test]
    fn histogram_csv_layout() {
        let report = Report::new(
            json!({"command": "histogram", "seed": 3, "histogram": {"0": 4, "1": 6}}),
            Layout::Histogram,
            String::new(),
        );
        assert_eq!(
            report.render(Format::Csv).unwrap(),
            "# command=histogram\n# seed=3\ncount,frequency\n0,4\n1,6\n"
        );
    }
}
