use serde_json::{Map, Value};

/// How a command ended, mapped onto the process exit code.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Success,
    /// A verification check failed.
    Failed,
    NotConverged,
}

impl Status {
    pub fn code(self) -> u8 {
        match self {
            Status::Success => 0,
            Status::Failed => 1,
            Status::NotConverged => 3,
        }
    }
}

/// Command output. Keys serialise in sorted order, so identical inputs give
/// byte-identical JSON.
#[derive(Clone, Debug)]
pub struct Report {
    pub command: String,
    pub inputs: Map<String, Value>,
    pub results: Map<String, Value>,
    pub diagnostics: Map<String, Value>,
    pub status: Status,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Self {
            command: command.to_owned(),
            inputs: Map::new(),
            results: Map::new(),
            diagnostics: Map::new(),
            status: Status::Success,
        }
    }

    pub fn input(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.inputs.insert(key.to_owned(), value.into());
        self
    }

    pub fn result(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.results.insert(key.to_owned(), value.into());
        self
    }

    pub fn diagnostic(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.diagnostics.insert(key.to_owned(), value.into());
        self
    }

    pub fn to_value(&self) -> Value {
        let mut root = Map::new();
        root.insert("command".into(), Value::String(self.command.clone()));
        root.insert("inputs".into(), Value::Object(self.inputs.clone()));
        root.insert("results".into(), Value::Object(self.results.clone()));
        root.insert("diagnostics".into(), Value::Object(self.diagnostics.clone()));
        Value::Object(root)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_value()).expect("JSON values serialise")
    }

    /// One `section.key = value` line per leaf; arrays are printed inline.
    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.command);
        for (name, section) in
            [("inputs", &self.inputs), ("results", &self.results), ("diagnostics", &self.diagnostics)]
        {
            for (key, value) in section {
                flatten(&format!("{name}.{key}"), value, &mut out);
            }
        }
        out
    }
}

fn flatten(prefix: &str, value: &Value, out: &mut String) {
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                flatten(&format!("{prefix}.{k}"), v, out);
            }
        }
        Value::String(s) => out.push_str(&format!("  {prefix} = {s}\n")),
        other => out.push_str(&format!("  {prefix} = {other}\n")),
    }
}
