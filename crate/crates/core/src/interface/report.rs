//! Deterministic report emission in human and JSON form.
//!
//! JSON keys: "tool-version", "chart", "command", "tensors" (component ->
//! canonical expression string), "identically_zero", "verdicts",
//! "certificates". Expression strings are the canonical rendering and
//! reparse to identical Expressions.

use crate::geometry::TensorField;
use serde_json::{json, Map, Value};
use std::collections::BTreeMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Human,
    Json,
}

impl Format {
    pub fn parse(s: &str) -> Option<Format> {
        match s.to_ascii_lowercase().as_str() {
            "human" => Some(Format::Human),
            "json" => Some(Format::Json),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct Report {
    pub command: String,
    pub chart: Vec<String>,
    /// "R[1,2,1,2]" -> "1/(4*x1)", sorted.
    pub tensors: BTreeMap<String, String>,
    /// tensor name -> identically zero flag.
    pub zero_flags: BTreeMap<String, bool>,
    pub verdicts: BTreeMap<String, String>,
    pub certificates: Vec<String>,
}

impl Report {
    pub fn new(command: &str, chart: &[String]) -> Self {
        Report {
            command: command.to_string(),
            chart: chart.to_vec(),
            ..Default::default()
        }
    }

    /// Adds every nonzero component of `t` under `name`, plus its zero flag.
    /// `split` marks how many trailing indices sit after the `;` separator
    /// (derivative directions).
    pub fn add_tensor(&mut self, name: &str, t: &TensorField, split: usize) {
        for (idx, e) in t.nonzero() {
            self.tensors.insert(component_key(name, &idx, split), e.to_string());
        }
        self.zero_flags.insert(name.to_string(), t.is_identically_zero());
    }

    pub fn add_scalar(&mut self, name: &str, value: &crate::expr::Expression) {
        self.tensors.insert(name.to_string(), value.to_string());
        self.zero_flags.insert(name.to_string(), value.is_zero());
    }

    pub fn verdict(&mut self, key: &str, value: impl Into<String>) {
        self.verdicts.insert(key.to_string(), value.into());
    }

    pub fn certificate(&mut self, text: impl Into<String>) {
        self.certificates.push(text.into());
    }

    pub fn emit(&self, format: Format) -> String {
        match format {
            Format::Human => self.emit_human(),
            Format::Json => self.emit_json(),
        }
    }

    fn emit_human(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("command: {}\n", self.command));
        out.push_str(&format!("chart: ({})\n", self.chart.join(", ")));
        for (k, v) in &self.tensors {
            out.push_str(&format!("{k} = {v}\n"));
        }
        for (name, zero) in &self.zero_flags {
            if *zero {
                out.push_str(&format!("{name}: identically zero\n"));
            }
        }
        for (k, v) in &self.verdicts {
            out.push_str(&format!("{k}: {v}\n"));
        }
        for c in &self.certificates {
            out.push_str(&format!("certificate: {c}\n"));
        }
        out
    }

    fn emit_json(&self) -> String {
        let mut root = Map::new();
        root.insert(
            "tool-version".to_string(),
            Value::String(env!("CARGO_PKG_VERSION").to_string()),
        );
        root.insert("command".to_string(), Value::String(self.command.clone()));
        root.insert("chart".to_string(), json!(self.chart));
        let mut tensors = Map::new();
        for (k, v) in &self.tensors {
            tensors.insert(k.clone(), Value::String(v.clone()));
        }
        root.insert("tensors".to_string(), Value::Object(tensors));
        let zero: Value = if self.zero_flags.len() == 1 {
            Value::Bool(*self.zero_flags.values().next().unwrap())
        } else {
            let mut m = Map::new();
            for (k, v) in &self.zero_flags {
                m.insert(k.clone(), Value::Bool(*v));
            }
            Value::Object(m)
        };
        if !self.zero_flags.is_empty() {
            root.insert("identically_zero".to_string(), zero);
        }
        let mut verdicts = Map::new();
        for (k, v) in &self.verdicts {
            verdicts.insert(k.clone(), Value::String(v.clone()));
        }
        root.insert("verdicts".to_string(), Value::Object(verdicts));
        root.insert(
            "certificates".to_string(),
            json!(self.certificates),
        );
        serde_json::to_string_pretty(&Value::Object(root)).expect("valid json") + "\n"
    }
}

/// "R[1,2,1,2]" or "gradR[1,2,1,2;1]" with 1-based indices.
pub fn component_key(name: &str, idx: &[usize], split: usize) -> String {
    let head = &idx[..idx.len() - split];
    let tail = &idx[idx.len() - split..];
    let fmt = |xs: &[usize]| {
        xs.iter()
            .map(|i| (i + 1).to_string())
            .collect::<Vec<_>>()
            .join(",")
    };
    if split == 0 {
        format!("{name}[{}]", fmt(head))
    } else {
        format!("{name}[{};{}]", fmt(head), fmt(tail))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{parse_expression, Chart};
    use crate::geometry::{TensorField, Valence};

    #[test]
    fn json_shape_and_determinism() {
        let chart = Chart::new(vec!["x1", "x2"]).unwrap();
        let mut t = TensorField::zeros(&chart, Valence { contra: 0, co: 2 });
        t.set(&[0, 1], parse_expression("1/x1", &chart).unwrap());
        let mut r = Report::new("compute", chart.coords());
        r.add_tensor("S", &t, 0);
        let a = r.emit(Format::Json);
        let b = r.emit(Format::Json);
        assert_eq!(a, b);
        assert!(a.contains("\"S[1,2]\": \"1/x1\""));
        assert!(a.contains("\"identically_zero\": false"));
        assert!(a.contains("\"tool-version\""));
        let parsed: serde_json::Value = serde_json::from_str(&a).unwrap();
        assert_eq!(parsed["command"], "compute");
    }

    #[test]
    fn zero_tensor_reports_empty_map() {
        let chart = Chart::new(vec!["x1", "x2"]).unwrap();
        let t = TensorField::zeros(&chart, Valence { contra: 0, co: 2 });
        let mut r = Report::new("compute", chart.coords());
        r.add_tensor("S", &t, 0);
        let s = r.emit(Format::Json);
        let parsed: serde_json::Value = serde_json::from_str(&s).unwrap();
        assert!(parsed["tensors"].as_object().unwrap().is_empty());
        assert_eq!(parsed["identically_zero"], true);
    }

    #[test]
    fn derivative_keys_use_semicolon() {
        assert_eq!(component_key("gradR", &[0, 1, 0, 1, 0], 1), "gradR[1,2,1,2;1]");
        assert_eq!(component_key("R", &[0, 1, 0, 1], 0), "R[1,2,1,2]");
    }
}
