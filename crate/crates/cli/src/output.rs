use serde_json::Value;

use maxcurve::workbench::{render_table, OutputFormat};
use maxcurve::{Error, Result};

/// A command result: its JSON form plus an optional row layout for csv and
/// table output. Without one, the JSON is flattened into key/value rows.
pub struct Rendered {
    pub json: Value,
    pub rows: Option<(Vec<String>, Vec<Vec<String>>)>,
}

impl Rendered {
    pub fn new<T: serde::Serialize>(value: &T) -> Result<Self> {
        Ok(Rendered {
            json: serde_json::to_value(value)?,
            rows: None,
        })
    }

    pub fn with_rows(mut self, headers: &[&str], rows: Vec<Vec<String>>) -> Self {
        self.rows = Some((headers.iter().map(|h| h.to_string()).collect(), rows));
        self
    }

    fn layout(&self) -> (Vec<String>, Vec<Vec<String>>) {
        if let Some(r) = &self.rows {
            return r.clone();
        }
        let mut rows = Vec::new();
        flatten("", &self.json, &mut rows);
        (vec!["key".into(), "value".into()], rows)
    }

    pub fn render(&self, format: OutputFormat) -> Result<String> {
        match format {
            OutputFormat::Json => Ok(serde_json::to_string_pretty(&self.json)? + "\n"),
            OutputFormat::Csv => {
                let (headers, rows) = self.layout();
                let mut w = csv::Writer::from_writer(Vec::new());
                let io = |e: csv::Error| Error::Io(e.to_string());
                w.write_record(&headers).map_err(io)?;
                for r in &rows {
                    w.write_record(r).map_err(io)?;
                }
                let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
                String::from_utf8(bytes).map_err(|e| Error::Io(e.to_string()))
            }
            OutputFormat::Table => {
                let (headers, rows) = self.layout();
                let h: Vec<&str> = headers.iter().map(String::as_str).collect();
                Ok(render_table(&h, &rows))
            }
        }
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some(String::new()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(a) if a.iter().all(|x| !x.is_array() && !x.is_object()) => {
            Some(a.iter().filter_map(scalar).collect::<Vec<_>>().join(" "))
        }
        _ => None,
    }
}

/// Dotted-path rows for every leaf of `v`.
fn flatten(prefix: &str, v: &Value, out: &mut Vec<Vec<String>>) {
    let join = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    if let Some(s) = scalar(v) {
        out.push(vec![prefix.to_string(), s]);
        return;
    }
    match v {
        Value::Object(m) => m.iter().for_each(|(k, x)| flatten(&join(k), x, out)),
        Value::Array(a) => a.iter().enumerate().for_each(|(i, x)| flatten(&join(&i.to_string()), x, out)),
        _ => unreachable!("scalars handled above"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flattens_nested_values() {
        let r = Rendered::new(&serde_json::json!({"a": 1, "b": {"c": [1, 2]}, "d": [{"e": true}]})).unwrap();
        assert_eq!(r.render(OutputFormat::Csv).unwrap(), "key,value\na,1\nb.c,1 2\nd.0.e,true\n");
    }
}
