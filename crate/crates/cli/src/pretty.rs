//! Plain-text rendering of reports: nested keys, matrices as aligned tables.

use serde_json::{Map, Value};

pub fn render(v: &Value) -> String {
    let mut out = String::new();
    match v {
        Value::Object(map) => object(map, 0, &mut out),
        other => {
            out.push_str(&scalar(other));
            out.push('\n');
        }
    }
    out
}

fn object(map: &Map<String, Value>, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    for (key, v) in map {
        match v {
            _ if is_matrix(v) => {
                out.push_str(&format!("{pad}{key}:\n"));
                table(v, depth + 1, out);
            }
            Value::Object(inner) => {
                out.push_str(&format!("{pad}{key}:\n"));
                object(inner, depth + 1, out);
            }
            Value::Array(items) if items.iter().any(|x| x.is_object() || x.is_array()) => {
                out.push_str(&format!("{pad}{key}:\n"));
                for (i, item) in items.iter().enumerate() {
                    match item {
                        _ if is_matrix(item) => {
                            out.push_str(&format!("{pad}  [{i}]\n"));
                            table(item, depth + 2, out);
                        }
                        Value::Object(inner) => {
                            out.push_str(&format!("{pad}  [{i}]\n"));
                            object(inner, depth + 2, out);
                        }
                        other => out.push_str(&format!("{pad}  [{i}] {}\n", scalar(other))),
                    }
                }
            }
            other => out.push_str(&format!("{pad}{key}: {}\n", scalar(other))),
        }
    }
}

fn is_matrix(v: &Value) -> bool {
    v.as_object().is_some_and(|m| m.len() == 3 && m.contains_key("rows") && m.contains_key("cols") && m.contains_key("entries"))
}

fn table(v: &Value, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    let rows: Vec<Vec<String>> = v["entries"]
        .as_array()
        .map(|rows| rows.iter().map(|r| r.as_array().map(|r| r.iter().map(scalar).collect()).unwrap_or_default()).collect())
        .unwrap_or_default();
    if rows.iter().all(Vec::is_empty) {
        out.push_str(&format!("{pad}({}x{} matrix)\n", v["rows"], v["cols"]));
        return;
    }
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> =
        (0..cols).map(|j| rows.iter().filter_map(|r| r.get(j)).map(|s| s.chars().count()).max().unwrap_or(0)).collect();
    for r in &rows {
        let cells: Vec<String> = r.iter().zip(&widths).map(|(s, w)| format!("{s:>w$}")).collect();
        out.push_str(&format!("{pad}[ {} ]\n", cells.join("  ")));
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(items) => format!("[{}]", items.iter().map(scalar).collect::<Vec<_>>().join(", ")),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}
