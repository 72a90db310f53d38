//! Versioned JSON envelope shared by every operation report.

use serde::Serialize;
use serde_json::{Map, Value};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Assertion {
    pub name: String,
    /// `None` when the check could not be decided within budget.
    pub holds: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub schema: u32,
    pub instance: String,
    pub operation: String,
    pub parameters: Map<String, Value>,
    pub result: Value,
    pub certificate: Option<Value>,
    pub assertions: Vec<Assertion>,
}

fn to_value<T: Serialize + ?Sized>(v: &T) -> Value {
    serde_json::to_value(v).expect("report values serialize")
}

impl Report {
    pub fn new(instance: impl Into<String>, operation: impl Into<String>) -> Self {
        Report {
            schema: SCHEMA_VERSION,
            instance: instance.into(),
            operation: operation.into(),
            parameters: Map::new(),
            result: Value::Null,
            certificate: None,
            assertions: Vec::new(),
        }
    }

    pub fn param<T: Serialize + ?Sized>(mut self, key: &str, value: &T) -> Self {
        self.parameters.insert(key.into(), to_value(value));
        self
    }

    pub fn result<T: Serialize + ?Sized>(mut self, value: &T) -> Self {
        self.result = to_value(value);
        self
    }

    pub fn certificate<T: Serialize + ?Sized>(mut self, value: &T) -> Self {
        self.certificate = Some(to_value(value));
        self
    }

    pub fn assert(mut self, name: &str, holds: bool) -> Self {
        self.assertions.push(Assertion { name: name.into(), holds: Some(holds) });
        self
    }

    pub fn assert_maybe(mut self, name: &str, holds: Option<bool>) -> Self {
        self.assertions.push(Assertion { name: name.into(), holds });
        self
    }

    /// No assertion is known to fail.
    pub fn passed(&self) -> bool {
        self.assertions.iter().all(|a| a.holds != Some(false))
    }

    /// Some assertion is undecided.
    pub fn has_unknown(&self) -> bool {
        self.assertions.iter().any(|a| a.holds.is_none())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
