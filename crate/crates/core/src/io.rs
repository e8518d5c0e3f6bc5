//! Instance files: CSV with header `id,value,weight`, or JSON
//! `{"items":[{"id":0,"value":..,"weight":..},...]}`.
//!
//! Weights are divided by the raw capacity when one is given, so the loaded
//! instance always has capacity 1 and every weight must end up in `(0, 1]`.

use std::io::{Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{Instance, Item};

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
struct Row {
    id: usize,
    value: f64,
    weight: f64,
}

#[derive(Debug, Serialize, Deserialize)]
struct JsonInstance {
    items: Vec<Row>,
}

/// Reads a CSV or JSON instance file; the format is sniffed from the content.
pub fn load_instance(path: impl AsRef<Path>, capacity: Option<f64>) -> Result<Instance> {
    let text = std::fs::read_to_string(path)?;
    if text.trim_start().starts_with('{') {
        parse_json(&text, capacity)
    } else {
        parse_csv(text.as_bytes(), capacity)
    }
}

pub fn parse_csv<R: Read>(reader: R, capacity: Option<f64>) -> Result<Instance> {
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
    let headers = rdr.headers().map_err(|e| Error::Parse {
        line: 1,
        message: e.to_string(),
    })?;
    let expected = ["id", "value", "weight"];
    if headers.iter().collect::<Vec<_>>() != expected {
        return Err(Error::Parse {
            line: 1,
            message: format!("expected header `id,value,weight`, got `{}`", headers.iter().collect::<Vec<_>>().join(",")),
        });
    }
    let mut rows = Vec::new();
    for record in rdr.deserialize::<Row>() {
        match record {
            Ok(row) => {
                // csv positions are only reported on error; count data lines ourselves.
                let line = rows.len() + 2;
                rows.push((line, row));
            }
            Err(e) => {
                let line = e
                    .position()
                    .map(|p| p.line() as usize)
                    .unwrap_or(rows.len() + 2);
                return Err(Error::Parse {
                    line,
                    message: e.to_string(),
                });
            }
        }
    }
    build(rows, capacity)
}

pub fn parse_json(text: &str, capacity: Option<f64>) -> Result<Instance> {
    let parsed: JsonInstance = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        message: e.to_string(),
    })?;
    // JSON has no per-row lines; report the 1-based item index instead.
    let rows = parsed
        .items
        .into_iter()
        .enumerate()
        .map(|(i, r)| (i + 1, r))
        .collect();
    build(rows, capacity)
}

fn build(mut rows: Vec<(usize, Row)>, capacity: Option<f64>) -> Result<Instance> {
    let scale = match capacity {
        Some(c) if !(c.is_finite() && c > 0.0) => {
            return Err(Error::InvalidArgument(format!("capacity must be > 0, got {c}")))
        }
        Some(c) => c,
        None => 1.0,
    };
    for (line, row) in &rows {
        if !(row.value.is_finite() && row.value > 0.0) {
            return Err(Error::Parse {
                line: *line,
                message: format!("value must be > 0 (buck-per-bang undefined), got {}", row.value),
            });
        }
        if !(row.weight.is_finite() && row.weight > 0.0) {
            return Err(Error::Parse {
                line: *line,
                message: format!("weight must be > 0, got {}", row.weight),
            });
        }
    }
    rows.sort_by_key(|(_, r)| r.id);
    let mut items = Vec::with_capacity(rows.len());
    for (idx, (line, row)) in rows.into_iter().enumerate() {
        if row.id != idx {
            return Err(Error::Validation(format!(
                "line {line}: ids must be exactly 0..n without gaps or repeats (found id {} where {idx} expected)",
                row.id
            )));
        }
        let weight = row.weight / scale;
        if weight > 1.0 {
            return Err(Error::Validation(format!(
                "line {line}: weight {weight} exceeds 1 after normalizing capacity to 1; \
                 every item must fit in the knapsack on its own"
            )));
        }
        items.push(Item::new(row.id, row.value, weight)?);
    }
    Instance::new(items)
}

pub fn write_csv<W: Write>(instance: &Instance, writer: W) -> Result<()> {
    let mut wtr = csv::Writer::from_writer(writer);
    for item in instance.items() {
        wtr.serialize(Row {
            id: item.id,
            value: item.value,
            weight: item.weight,
        })
        .map_err(|e| Error::Io(std::io::Error::other(e)))?;
    }
    wtr.flush()?;
    Ok(())
}

pub fn to_json(instance: &Instance) -> Result<String> {
    let doc = JsonInstance {
        items: instance
            .items()
            .iter()
            .map(|i| Row {
                id: i.id,
                value: i.value,
                weight: i.weight,
            })
            .collect(),
    };
    Ok(serde_json::to_string(&doc)?)
}
