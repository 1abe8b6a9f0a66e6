//! Pass/fail reports shared by the CLI and the test suites.

use std::fmt;

use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    /// Always set when the check fails.
    pub counterexample: Option<String>,
}

impl Check {
    pub fn pass(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            status: Status::Pass,
            counterexample: None,
        }
    }

    pub fn fail(name: impl Into<String>, counterexample: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            status: Status::Fail,
            counterexample: Some(counterexample.into()),
        }
    }

    /// Pass when `found` is `None`, otherwise fail with the rendered witness.
    pub fn from_search(name: impl Into<String>, found: Option<String>) -> Self {
        match found {
            None => Self::pass(name),
            Some(c) => Self::fail(name, c),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    /// A single order, or the list of orders covered.
    #[serde(rename = "N")]
    pub n: Value,
    pub seed: Option<u64>,
    pub checks: Vec<Check>,
    pub elapsed_ms: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub result: Option<Value>,
}

impl Report {
    pub fn new(command: impl Into<String>, n: Value, seed: Option<u64>) -> Self {
        Self {
            command: command.into(),
            n,
            seed,
            checks: Vec::new(),
            elapsed_ms: 0,
            result: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} (N = {})", self.command, self.n)?;
        for c in &self.checks {
            match &c.counterexample {
                None => writeln!(f, "  PASS {}", c.name)?,
                Some(x) => writeln!(f, "  FAIL {}: {x}", c.name)?,
            }
        }
        if let Some(r) = &self.result {
            writeln!(f, "{}", render_value(r, 1))?;
        }
        let failed = self.checks.iter().filter(|c| !c.passed()).count();
        write!(f, "{} checks, {} failed", self.checks.len(), failed)
    }
}

fn is_flat(v: &Value) -> bool {
    matches!(v, Value::Array(items) if items.iter().all(|x| !x.is_array() && !x.is_object()))
}

fn inline(v: &Value) -> String {
    match v {
        Value::Array(items) => format!("[{}]", items.iter().map(scalar_text).collect::<Vec<_>>().join(", ")),
        other => scalar_text(other),
    }
}

fn render_value(v: &Value, depth: usize) -> String {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(map) => map
            .iter()
            .map(|(k, v)| match v {
                _ if is_flat(v) => format!("{pad}{k}: {}", inline(v)),
                Value::Object(_) | Value::Array(_) => format!("{pad}{k}:\n{}", render_value(v, depth + 1)),
                _ => format!("{pad}{k}: {}", scalar_text(v)),
            })
            .collect::<Vec<_>>()
            .join("\n"),
        Value::Array(items) => items
            .iter()
            .map(|v| match v {
                _ if is_flat(v) => format!("{pad}- {}", inline(v)),
                Value::Object(_) | Value::Array(_) => format!("{pad}-\n{}", render_value(v, depth + 1)),
                _ => format!("{pad}- {}", scalar_text(v)),
            })
            .collect::<Vec<_>>()
            .join("\n"),
        _ => format!("{pad}{}", scalar_text(v)),
    }
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_shape() {
        let mut r = Report::new("verify", Value::from(3), Some(7));
        r.checks.push(Check::pass("a"));
        r.checks.push(Check::fail("b", "B = [[1]]"));
        let v: Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["N"], 3);
        assert_eq!(v["checks"][0]["status"], "pass");
        assert_eq!(v["checks"][0]["counterexample"], Value::Null);
        assert_eq!(v["checks"][1]["counterexample"], "B = [[1]]");
        assert!(v.get("result").is_none());
        assert!(!r.passed());
        assert!(r.to_string().contains("FAIL b: B = [[1]]"));
    }
}
