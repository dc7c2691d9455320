//! Machine- and human-readable reports. JSON output is stable-key-ordered
//! (maps are sorted), so identical inputs and options produce identical
//! bytes; timings are kept out of the emitted payload for the same reason.

use serde_json::{Map, Value};

/// One command's outcome: echoed inputs, results, and any certificates.
#[derive(Clone, Debug)]
pub struct Report {
    pub command: String,
    pub inputs: Value,
    pub results: Value,
    pub certificates: Value,
    /// Wall-clock milliseconds; informational only, never emitted.
    pub timing_ms: u128,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Table,
    Json,
}

impl std::str::FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "table" => Ok(Format::Table),
            "json" => Ok(Format::Json),
            other => Err(format!("unknown format {other:?} (use table or json)")),
        }
    }
}

impl Report {
    pub fn new(command: &str, inputs: Value, results: Value, certificates: Value) -> Self {
        Report {
            command: command.into(),
            inputs,
            results,
            certificates,
            timing_ms: 0,
        }
    }

    pub fn emit(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut obj = Map::new();
                obj.insert("certificates".into(), self.certificates.clone());
                obj.insert("command".into(), Value::String(self.command.clone()));
                obj.insert("inputs".into(), self.inputs.clone());
                obj.insert("results".into(), self.results.clone());
                let mut out = serde_json::to_string_pretty(&Value::Object(obj)).unwrap();
                out.push('\n');
                out
            }
            Format::Table => {
                let mut out = String::new();
                out.push_str(&format!("command: {}\n", self.command));
                if !self.inputs.is_null() {
                    out.push_str("inputs:\n");
                    render(&self.inputs, 2, &mut out);
                }
                out.push_str("results:\n");
                render(&self.results, 2, &mut out);
                if !self.certificates.is_null() {
                    out.push_str("certificates:\n");
                    render(&self.certificates, 2, &mut out);
                }
                out
            }
        }
    }
}

fn render(v: &Value, indent: usize, out: &mut String) {
    let pad = " ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, val) in map {
                match val {
                    Value::Object(_) => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        render(val, indent + 2, out);
                    }
                    Value::Array(items) if items.iter().any(Value::is_object) => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        for item in items {
                            out.push_str(&format!("{pad}  -\n"));
                            render(item, indent + 4, out);
                        }
                    }
                    _ => out.push_str(&format!("{pad}{k}: {}\n", inline(val))),
                }
            }
        }
        Value::Array(items) => {
            for item in items {
                out.push_str(&format!("{pad}- {}\n", inline(item)));
            }
        }
        other => out.push_str(&format!("{pad}{}\n", inline(other))),
    }
}

fn inline(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(items) => {
            let parts: Vec<String> = items.iter().map(inline).collect();
            format!("[{}]", parts.join(", "))
        }
        other => other.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn json_emission_is_stable() {
        let r = Report::new(
            "mult",
            json!({"points": [[0],[1]]}),
            json!({"multiplicity": 3, "covolume": "1/2"}),
            Value::Null,
        );
        let a = r.emit(Format::Json);
        let b = r.emit(Format::Json);
        assert_eq!(a, b);
        // keys are sorted
        let idx = |n: &str| a.find(n).unwrap();
        assert!(idx("certificates") < idx("command"));
        assert!(idx("command") < idx("inputs"));
        assert!(idx("inputs") < idx("results"));
    }

    #[test]
    fn table_renders_scalars_and_lists() {
        let r = Report::new(
            "hyper",
            Value::Null,
            json!({"sigma": 3, "b": 4, "rows": [[1, 2], [3, 4]]}),
            Value::Null,
        );
        let t = r.emit(Format::Table);
        assert!(t.contains("command: hyper"));
        assert!(t.contains("sigma: 3"));
        assert!(t.contains("rows: [[1, 2], [3, 4]]"));
    }
}
