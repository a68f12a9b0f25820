use serde_json::Value;

/// Collects records and prints them as JSON lines, or as a table with `--pretty`.
pub struct Output {
    pretty: bool,
    pending: Vec<Value>,
}

impl Output {
    pub fn new(pretty: bool) -> Output {
        Output {
            pretty,
            pending: Vec::new(),
        }
    }

    pub fn record(&mut self, v: Value) {
        if self.pretty {
            self.pending.push(v);
        } else {
            println!("{v}");
        }
    }

    pub fn flush(&mut self) {
        if self.pending.is_empty() {
            return;
        }
        let rows = std::mem::take(&mut self.pending);
        let keys: Vec<String> = match rows[0].as_object() {
            Some(o) => o.keys().cloned().collect(),
            None => Vec::new(),
        };
        let same_shape = !keys.is_empty()
            && rows
                .iter()
                .all(|r| r.as_object().is_some_and(|o| o.keys().eq(keys.iter())));
        if !same_shape {
            for r in &rows {
                match r.as_object() {
                    Some(o) => {
                        let w = o.keys().map(|k| k.len()).max().unwrap_or(0);
                        for (k, v) in o {
                            println!("{k:<w$}  {}", cell(v));
                        }
                        println!();
                    }
                    None => println!("{}", cell(r)),
                }
            }
            return;
        }
        let table: Vec<Vec<String>> = rows
            .iter()
            .map(|r| keys.iter().map(|k| cell(&r[k.as_str()])).collect())
            .collect();
        let widths: Vec<usize> = keys
            .iter()
            .enumerate()
            .map(|(j, k)| table.iter().map(|r| r[j].chars().count()).chain([k.len()]).max().unwrap_or(0))
            .collect();
        let line = |cells: Vec<&str>| {
            cells
                .iter()
                .zip(&widths)
                .map(|(c, w)| format!("{c:<w$}"))
                .collect::<Vec<_>>()
                .join("  ")
                .trim_end()
                .to_string()
        };
        println!("{}", line(keys.iter().map(|k| k.as_str()).collect()));
        let rules: Vec<String> = widths.iter().map(|&w| "-".repeat(w)).collect();
        println!("{}", line(rules.iter().map(|r| r.as_str()).collect()));
        for r in &table {
            println!("{}", line(r.iter().map(|c| c.as_str()).collect()));
        }
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}
