use serde_json::{json, Value};

#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    /// One line for humans.
    pub summary: String,
    /// Counts, Betti numbers, offending simplices, ...
    pub witness: Value,
}

impl CheckResult {
    pub fn pass(name: &str, summary: impl Into<String>, witness: Value) -> Self {
        CheckResult { name: name.into(), passed: true, summary: summary.into(), witness }
    }

    pub fn fail(name: &str, summary: impl Into<String>, witness: Value) -> Self {
        CheckResult { name: name.into(), passed: false, summary: summary.into(), witness }
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct VerificationReport {
    pub checks: Vec<CheckResult>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn render_text(&self) -> String {
        let mut s = String::new();
        for c in &self.checks {
            let mark = if c.passed { "PASS" } else { "FAIL" };
            s.push_str(&format!("{mark} {:<15} {}\n", c.name, c.summary));
        }
        s.push_str(if self.passed() { "overall: PASS\n" } else { "overall: FAIL\n" });
        s
    }

    pub fn render_json(&self) -> String {
        let checks: Vec<Value> = self
            .checks
            .iter()
            .map(|c| json!({ "name": c.name, "passed": c.passed, "summary": c.summary, "witness": c.witness }))
            .collect();
        let mut s = serde_json::to_string_pretty(&json!({ "passed": self.passed(), "checks": checks })).expect("json");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overall_is_conjunction() {
        let mut r = VerificationReport::default();
        assert!(r.passed());
        r.checks.push(CheckResult::pass("pure", "ok", json!({})));
        assert!(r.passed());
        r.checks.push(CheckResult::fail("links", "bad", json!({"vertex": "x"})));
        assert!(!r.passed());
        assert!(r.render_text().ends_with("overall: FAIL\n"));
        let v: Value = serde_json::from_str(&r.render_json()).unwrap();
        assert_eq!(v["passed"], json!(false));
        assert_eq!(v["checks"][1]["witness"]["vertex"], json!("x"));
    }
}
