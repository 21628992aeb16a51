use serde::Serialize;
use serde_json::{json, Value};

use qcover_core::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Dot,
}

/// Outcome of one subcommand. `verdict` is `None` for commands that
/// compute rather than decide.
#[derive(Debug, Serialize)]
pub struct Report {
    pub op: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<bool>,
    pub witness: Value,
    pub methods: Value,
    pub result: Value,
    #[serde(skip)]
    pub text: String,
    #[serde(skip)]
    pub dot: Option<String>,
}

impl Report {
    pub fn new(op: &'static str, text: impl Into<String>) -> Self {
        Report {
            op,
            verdict: None,
            witness: Value::Null,
            methods: Value::Null,
            result: Value::Null,
            text: text.into(),
            dot: None,
        }
    }

    pub fn verdict(mut self, v: bool) -> Self {
        self.verdict = Some(v);
        self
    }

    pub fn witness(mut self, w: impl Serialize) -> Self {
        self.witness = json!(w);
        self
    }

    pub fn methods(mut self, m: impl Serialize) -> Self {
        self.methods = json!(m);
        self
    }

    pub fn result(mut self, r: impl Serialize) -> Self {
        self.result = json!(r);
        self
    }

    pub fn dot(mut self, d: String) -> Self {
        self.dot = Some(d);
        self
    }

    pub fn exit_code(&self) -> u8 {
        match self.verdict {
            Some(false) => 1,
            _ => 0,
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.text.trim_end().to_string(),
            Format::Json => serde_json::to_string_pretty(self).expect("report serializes"),
            Format::Dot => match &self.dot {
                Some(d) => d.trim_end().to_string(),
                None => self.text.trim_end().to_string(),
            },
        }
    }
}

/// Exit code and printable message for a library error.
pub fn error_exit(op: &str, e: &Error, format: Format) -> (u8, String) {
    let code = match e {
        Error::MethodDisagreement { .. } => 3,
        _ => 2,
    };
    let msg = match format {
        Format::Json => serde_json::to_string_pretty(&json!({ "op": op, "error": e.to_string() }))
            .expect("error serializes"),
        _ => format!("error: {e}"),
    };
    (code, msg)
}
