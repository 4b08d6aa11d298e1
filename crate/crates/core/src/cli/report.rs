//! Four-section report rendered as text or JSON with identical content.

use serde_json::{Map, Value as Json};

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Text(String),
    List(Vec<String>),
    Bool(bool),
    Int(u64),
}

impl Value {
    fn to_json(&self) -> Json {
        match self {
            Value::Text(s) => Json::String(s.clone()),
            Value::List(v) => Json::Array(v.iter().cloned().map(Json::String).collect()),
            Value::Bool(b) => Json::Bool(*b),
            Value::Int(n) => Json::from(*n),
        }
    }
}

pub type Section = Vec<(String, Value)>;

pub const SECTIONS: [&str; 4] = ["INPUT", "HYPOTHESES", "RESULT", "CHECKS"];

#[derive(Debug, Clone, Default)]
pub struct Report {
    pub input: Section,
    pub hypotheses: Section,
    pub result: Section,
    pub checks: Section,
}

fn push(section: &mut Section, key: &str, value: Value) {
    section.push((key.to_string(), value));
}

impl Report {
    pub fn input(&mut self, key: &str, value: Value) {
        push(&mut self.input, key, value);
    }

    pub fn hypothesis(&mut self, key: &str, value: Value) {
        push(&mut self.hypotheses, key, value);
    }

    pub fn result(&mut self, key: &str, value: Value) {
        push(&mut self.result, key, value);
    }

    pub fn check(&mut self, key: &str, ok: bool) {
        push(&mut self.checks, key, Value::Bool(ok));
    }

    /// Names of failed checks and false hypotheses.
    pub fn failures(&self) -> Vec<String> {
        self.hypotheses
            .iter()
            .chain(&self.checks)
            .filter(|(_, v)| *v == Value::Bool(false))
            .map(|(k, _)| k.clone())
            .collect()
    }

    fn sections(&self) -> [(&'static str, &Section); 4] {
        [
            (SECTIONS[0], &self.input),
            (SECTIONS[1], &self.hypotheses),
            (SECTIONS[2], &self.result),
            (SECTIONS[3], &self.checks),
        ]
    }

    /// Lists print one item per line, indented under their key.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (name, section) in self.sections() {
            out.push_str(name);
            out.push('\n');
            for (key, value) in section {
                match value {
                    Value::Text(s) => out.push_str(&format!("  {key}: {s}\n")),
                    Value::Bool(b) => out.push_str(&format!("  {key}: {b}\n")),
                    Value::Int(n) => out.push_str(&format!("  {key}: {n}\n")),
                    Value::List(items) => {
                        out.push_str(&format!("  {key}:\n"));
                        for item in items {
                            out.push_str(&format!("    {item}\n"));
                        }
                    }
                }
            }
        }
        out
    }

    pub fn to_json(&self) -> Json {
        let mut root = Map::new();
        for (name, section) in self.sections() {
            let obj: Map<String, Json> = section
                .iter()
                .map(|(k, v)| (k.clone(), v.to_json()))
                .collect();
            root.insert(name.to_lowercase(), Json::Object(obj));
        }
        Json::Object(root)
    }

    pub fn to_json_text(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json()).expect("serialisable");
        s.push('\n');
        s
    }
}
