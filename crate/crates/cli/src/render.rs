//! Plain-text rendering: one `key: value` line per scalar, nested objects
//! and lists indented by two spaces.

use std::fmt::Write;

use serde_json::Value;

use crate::report::Report;

pub fn plain(report: &Report) -> String {
    let mut out = String::new();
    writeln!(out, "{}", report.input).unwrap();
    write_value(&mut out, &report.result, 0);
    out
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".to_string()),
        Value::Bool(b) => Some(if *b { "yes" } else { "no" }.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(a) if a.iter().all(|x| matches!(x, Value::String(_) | Value::Number(_))) => Some(format!(
            "[{}]",
            a.iter().map(|x| scalar(x).unwrap_or_default()).collect::<Vec<_>>().join(", ")
        )),
        _ => None,
    }
}

fn write_value(out: &mut String, v: &Value, depth: usize) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                match scalar(x) {
                    Some(s) => writeln!(out, "{pad}{k}: {s}").unwrap(),
                    None => {
                        writeln!(out, "{pad}{k}:").unwrap();
                        write_value(out, x, depth + 1);
                    }
                }
            }
        }
        Value::Array(items) => {
            for (i, x) in items.iter().enumerate() {
                match scalar(x) {
                    Some(s) => writeln!(out, "{pad}- {s}").unwrap(),
                    None => {
                        writeln!(out, "{pad}- [{i}]").unwrap();
                        write_value(out, x, depth + 1);
                    }
                }
            }
        }
        other => writeln!(out, "{pad}{}", scalar(other).unwrap_or_default()).unwrap(),
    }
}

pub fn json(report: &Report) -> String {
    serde_json::to_string_pretty(report).expect("reports serialize")
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn nested_rendering() {
        let r = Report::new(vec![], "1/5(1,4)".into(), &json!({"a": "1", "b": {"c": true}, "d": [["x"], ["y"]]}));
        let text = plain(&r);
        assert!(text.starts_with("1/5(1,4)\n"));
        assert!(text.contains("a: 1\n"));
        assert!(text.contains("b:\n  c: yes\n"));
        assert!(text.contains("d:\n  - [x]\n  - [y]\n"));
    }
}
