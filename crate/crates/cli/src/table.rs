//! `--format table`: aligned key/value lines, with the verification report
//! shown one check per line.

use serde_json::Value;

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

pub(crate) fn render(doc: &Value) -> String {
    if doc.get("checks").is_some() && doc.get("errata").is_some() {
        return render_verify(doc);
    }
    let Some(obj) = doc.as_object() else {
        return scalar(doc) + "\n";
    };
    let width = obj.keys().map(|k| k.len()).max().unwrap_or(0);
    let mut out = String::new();
    for (k, v) in obj {
        match v {
            Value::Array(items) if items.iter().all(Value::is_object) && !items.is_empty() => {
                out += &format!("{k}\n");
                for item in items {
                    let cells: Vec<String> = item
                        .as_object()
                        .into_iter()
                        .flatten()
                        .map(|(ik, iv)| format!("{ik}={}", scalar(iv)))
                        .collect();
                    out += &format!("  {}\n", cells.join("  "));
                }
            }
            _ => out += &format!("{k:<width$}  {}\n", scalar(v)),
        }
    }
    out
}

fn render_verify(doc: &Value) -> String {
    let mut out = String::new();
    for c in doc["checks"].as_array().into_iter().flatten() {
        let status = if c["pass"] == Value::Bool(true) { "PASS" } else { "FAIL" };
        out += &format!("{status}  {:<28} {}\n", scalar(&c["check"]), c["inputs"]);
    }
    for e in doc["errata"].as_array().into_iter().flatten() {
        out += &format!(
            "ERRATUM  {:<24} {}  printed={}  of_record={}\n",
            scalar(&e["formula"]),
            e["inputs"],
            e["printed"],
            e["of_record"]
        );
    }
    let s = &doc["summary"];
    out += &format!(
        "{}: {} checks, {} failed, {} errata\n",
        if doc["pass"] == Value::Bool(true) { "PASS" } else { "FAIL" },
        s["checks"],
        s["failed"],
        s["errata"]
    );
    if let Some(t) = doc.get("timing").and_then(Value::as_array) {
        for sec in t {
            out += &format!("time  {:<12} {:.3}s\n", scalar(&sec["section"]), sec["seconds"].as_f64().unwrap_or(0.0));
        }
    }
    out
}
