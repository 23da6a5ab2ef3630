//! Plain-text rendering of result documents for `--pretty`.

use serde_json::Value;

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        Value::Array(items) => items.iter().map(scalar).collect::<Vec<_>>().join(" "),
        other => other.to_string(),
    }
}

fn is_table(items: &[Value]) -> bool {
    !items.is_empty() && items.iter().all(Value::is_object)
}

fn table(items: &[Value], indent: &str, out: &mut String) {
    let mut columns: Vec<&str> = Vec::new();
    for item in items {
        for key in item.as_object().expect("table rows are objects").keys() {
            if !columns.contains(&key.as_str()) {
                columns.push(key);
            }
        }
    }
    let rows: Vec<Vec<String>> = items
        .iter()
        .map(|item| columns.iter().map(|c| scalar(&item[*c])).collect())
        .collect();
    let widths: Vec<usize> = columns
        .iter()
        .enumerate()
        .map(|(i, c)| rows.iter().map(|r| r[i].len()).chain([c.len()]).max().unwrap_or(0))
        .collect();
    let line = |cells: Vec<String>| {
        let padded: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect();
        format!("{indent}{}\n", padded.join("  ").trim_end())
    };
    out.push_str(&line(columns.iter().map(|c| c.to_string()).collect()));
    for row in rows {
        out.push_str(&line(row));
    }
}

fn object(map: &serde_json::Map<String, Value>, indent: &str, out: &mut String) {
    let width = map.keys().map(String::len).max().unwrap_or(0);
    for (key, value) in map {
        match value {
            Value::Object(inner) => {
                out.push_str(&format!("{indent}{key}:\n"));
                object(inner, &format!("{indent}  "), out);
            }
            Value::Array(items) if is_table(items) => {
                out.push_str(&format!("{indent}{key}:\n"));
                table(items, &format!("{indent}  "), out);
            }
            other => out.push_str(&format!("{indent}{key:<width$}  {}\n", scalar(other))),
        }
    }
}

pub fn render(value: &Value) -> String {
    let mut out = String::new();
    match value {
        Value::Object(map) => object(map, "", &mut out),
        other => {
            out.push_str(&scalar(other));
            out.push('\n');
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn renders_scalars_lists_and_tables() {
        let v = json!({
            "mu": 1,
            "det_chain": ["0", "3"],
            "hits": [{"c": "5", "rank": 5}, {"c": "17", "rank": 4}],
        });
        assert_eq!(
            render(&v),
            "det_chain  0 3\nhits:\n  c   rank\n  5   5\n  17  4\nmu         1\n"
        );
    }
}
