use serde_json::{json, Map, Value};

#[derive(Debug, Clone)]
pub struct IdentityCheck {
    pub identity: String,
    pub passed: bool,
    pub detail: String,
}

impl IdentityCheck {
    pub fn new(identity: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        IdentityCheck {
            identity: identity.into(),
            passed,
            detail: detail.into(),
        }
    }
}

/// A finished command: echoed inputs (defaults included), a JSON result, the
/// plain-text body and the identities checked along the way.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub command: String,
    pub inputs: Vec<(String, String)>,
    pub result: Value,
    pub text: Vec<String>,
    pub checks: Vec<IdentityCheck>,
}

impl Outcome {
    pub fn new(command: impl Into<String>) -> Self {
        Outcome {
            command: command.into(),
            inputs: Vec::new(),
            result: Value::Object(Map::new()),
            text: Vec::new(),
            checks: Vec::new(),
        }
    }

    pub fn input(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.inputs.push((key.to_string(), value.to_string()));
        self
    }

    pub fn set(&mut self, key: &str, value: Value) -> &mut Self {
        if let Value::Object(m) = &mut self.result {
            m.insert(key.to_string(), value);
        }
        self
    }

    pub fn line(&mut self, s: impl Into<String>) -> &mut Self {
        self.text.push(s.into());
        self
    }

    pub fn check(&mut self, identity: impl Into<String>, passed: bool, detail: impl Into<String>) -> &mut Self {
        self.checks.push(IdentityCheck::new(identity, passed, detail));
        self
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn render_text(&self) -> String {
        let mut out = format!("# command: {}\n", self.command);
        if !self.inputs.is_empty() {
            let parts: Vec<String> = self.inputs.iter().map(|(k, v)| format!("{k}={v}")).collect();
            out.push_str(&format!("# inputs: {}\n", parts.join(" ")));
        }
        for l in &self.text {
            out.push_str(l);
            out.push('\n');
        }
        for c in &self.checks {
            let status = if c.passed { "PASS" } else { "FAIL" };
            out.push_str(&format!("check {status}: {}", c.identity));
            if !c.detail.is_empty() {
                out.push_str(&format!(" ({})", c.detail));
            }
            out.push('\n');
        }
        out
    }

    pub fn render_json(&self) -> String {
        let inputs: Map<String, Value> = self.inputs.iter().map(|(k, v)| (k.clone(), Value::String(v.clone()))).collect();
        let checks: Vec<Value> = self
            .checks
            .iter()
            .map(|c| json!({"identity": c.identity, "passed": c.passed, "detail": c.detail}))
            .collect();
        let v = json!({
            "command": self.command,
            "inputs": inputs,
            "result": self.result,
            "identity_checks": checks,
        });
        let mut s = serde_json::to_string_pretty(&v).expect("serializable");
        s.push('\n');
        s
    }
}
