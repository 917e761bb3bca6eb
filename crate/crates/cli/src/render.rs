//! Human-readable rendering of a JSON report. Everything shown comes from
//! the structured document, so both modes carry the same content.

use std::fmt::Write;

use serde_json::{Map, Value};

pub fn human(doc: &Value) -> String {
    let mut out = String::new();
    match doc {
        Value::Object(fields) => object(&mut out, fields, 0),
        other => writeln!(out, "{}", inline(other)).expect("string write"),
    }
    out
}

/// Matrix documents `{"d": ..., "rows": [[...]]}` print on one line.
fn as_matrix(v: &Value) -> Option<String> {
    let fields = v.as_object()?;
    if fields.len() != 2 {
        return None;
    }
    let d = fields.get("d")?.as_str()?;
    let rows = fields.get("rows")?.as_array()?;
    let body = rows.iter().map(inline).collect::<Vec<_>>().join(", ");
    Some(if d == "0" {
        format!("[{body}]")
    } else {
        format!("[{body}] over Q(sqrt({d}))")
    })
}

fn is_flat(v: &Value) -> bool {
    match v {
        Value::Array(items) => items.iter().all(|i| !i.is_object()) && items.iter().all(is_flat),
        Value::Object(_) => as_matrix(v).is_some(),
        _ => true,
    }
}

fn inline(v: &Value) -> String {
    if let Some(m) = as_matrix(v) {
        return m;
    }
    match v {
        Value::Null => "none".into(),
        Value::Bool(b) => if *b { "yes" } else { "no" }.into(),
        Value::String(s) => s.clone(),
        Value::Number(n) => n.to_string(),
        Value::Array(items) => format!("[{}]", items.iter().map(inline).collect::<Vec<_>>().join(", ")),
        Value::Object(fields) => format!(
            "{{{}}}",
            fields
                .iter()
                .map(|(k, v)| format!("{k}: {}", inline(v)))
                .collect::<Vec<_>>()
                .join(", ")
        ),
    }
}

fn label(key: &str) -> String {
    key.replace('_', " ")
}

fn object(out: &mut String, fields: &Map<String, Value>, depth: usize) {
    let pad = "  ".repeat(depth);
    for (key, value) in fields {
        if is_flat(value) {
            writeln!(out, "{pad}{}: {}", label(key), inline(value)).expect("string write");
            continue;
        }
        writeln!(out, "{pad}{}:", label(key)).expect("string write");
        match value {
            Value::Object(inner) => object(out, inner, depth + 1),
            Value::Array(items) => {
                for (i, item) in items.iter().enumerate() {
                    match item {
                        Value::Object(inner) if as_matrix(item).is_none() => {
                            writeln!(out, "{pad}  [{}]", i + 1).expect("string write");
                            object(out, inner, depth + 2);
                        }
                        other => writeln!(out, "{pad}  [{}] {}", i + 1, inline(other)).expect("string write"),
                    }
                }
            }
            other => writeln!(out, "{pad}  {}", inline(other)).expect("string write"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn renders_nested_reports() {
        let doc = json!({
            "command": "check",
            "M": {"d": "0", "rows": [["-9/7", "-4/7"], ["4/7", "-11/21"]]},
            "sigma": "21",
            "steps": [{"basis_index": "1", "vector": ["-4", "1"], "reflection": {"d": "5", "rows": [["1"]]}}],
            "spot_check": {"skipped": "b"},
            "orthogonal": true,
            "generators": [],
        });
        let text = human(&doc);
        assert_eq!(
            text,
            "command: check\n\
             M: [[-9/7, -4/7], [4/7, -11/21]]\n\
             sigma: 21\n\
             steps:\n  [1]\n    basis index: 1\n    vector: [-4, 1]\n    reflection: [[1]] over Q(sqrt(5))\n\
             spot check:\n  skipped: b\n\
             orthogonal: yes\n\
             generators: []\n"
        );
    }
}
