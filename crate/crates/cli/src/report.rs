use serde_json::{Map, Value};
use sha2::{Digest, Sha256};

/// Output of one invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct AnalysisReport {
    pub digest: String,
    pub units: String,
    pub analyses: Vec<String>,
    pub results: Map<String, Value>,
    pub warnings: Vec<String>,
}

impl AnalysisReport {
    pub fn new(digest: String, units: &str) -> Self {
        Self {
            digest,
            units: units.to_string(),
            analyses: Vec::new(),
            results: Map::new(),
            warnings: Vec::new(),
        }
    }

    pub fn add(&mut self, name: &str, payload: Value) {
        self.analyses.push(name.to_string());
        self.results.insert(name.to_string(), payload);
    }

    pub fn warn(&mut self, message: impl Into<String>) {
        self.warnings.push(message.into());
    }

    pub fn to_value(&self) -> Value {
        let mut m = Map::new();
        m.insert("analyses".into(), self.analyses.clone().into());
        m.insert("digest".into(), self.digest.clone().into());
        m.insert("results".into(), Value::Object(self.results.clone()));
        m.insert("units".into(), self.units.clone().into());
        m.insert("warnings".into(), self.warnings.clone().into());
        round_value(&Value::Object(m))
    }
}

/// SHA-256 of the canonical serialization of an input.
pub fn digest(canonical: &Value) -> String {
    let bytes = serde_json::to_vec(canonical).expect("values serialize");
    format!("sha256:{}", hex::encode(Sha256::digest(&bytes)))
}

/// Rounds to 12 significant digits; non-finite values become null.
pub fn round(x: f64) -> Value {
    if !x.is_finite() {
        return Value::Null;
    }
    let r: f64 = format!("{x:.11e}").parse().expect("formatted float parses");
    // avoid printing -0
    let r = if r == 0.0 { 0.0 } else { r };
    serde_json::Number::from_f64(r).map_or(Value::Null, Value::Number)
}

pub fn round_value(v: &Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => round(n.as_f64().expect("f64 number")),
        Value::Array(a) => Value::Array(a.iter().map(round_value).collect()),
        Value::Object(m) => Value::Object(m.iter().map(|(k, v)| (k.clone(), round_value(v))).collect()),
        other => other.clone(),
    }
}

pub fn render_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

/// Flattens a value into aligned `path  value` lines.
pub fn render_table(v: &Value) -> String {
    let mut rows = Vec::new();
    flatten("", v, &mut rows);
    let width = rows.iter().map(|(k, _)| k.chars().count()).max().unwrap_or(0);
    let mut out = String::new();
    for (k, val) in rows {
        let pad = width - k.chars().count();
        out.push_str(&k);
        out.push_str(&" ".repeat(pad + 2));
        out.push_str(&val);
        out.push('\n');
    }
    out
}

fn flatten(prefix: &str, v: &Value, rows: &mut Vec<(String, String)>) {
    match v {
        Value::Object(m) if !m.is_empty() => {
            for (k, val) in m {
                let path = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}.{k}")
                };
                flatten(&path, val, rows);
            }
        }
        Value::Array(a) if !a.is_empty() && a.iter().any(|x| x.is_object() || x.is_array()) => {
            for (i, val) in a.iter().enumerate() {
                flatten(&format!("{prefix}[{i}]"), val, rows);
            }
        }
        Value::Array(a) => {
            let items: Vec<String> = a.iter().map(scalar).collect();
            rows.push((prefix.to_string(), format!("[{}]", items.join(", "))));
        }
        other => rows.push((prefix.to_string(), scalar(other))),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Object(m) if m.is_empty() => "{}".into(),
        other => other.to_string(),
    }
}
