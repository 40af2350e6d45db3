//! Pass/fail reports shared by the verification suites and the CLI.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckItem {
    pub check: String,
    pub subject: String,
    pub passed: bool,
    pub expected: String,
    pub actual: String,
    /// Data exhibiting the outcome; always present on failure.
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub title: String,
    pub facts: Vec<(String, String)>,
    pub items: Vec<CheckItem>,
}

impl Report {
    pub fn new(title: impl Into<String>) -> Self {
        Report {
            title: title.into(),
            ..Report::default()
        }
    }

    pub fn fact(&mut self, key: impl Into<String>, value: impl ToString) {
        self.facts.push((key.into(), value.to_string()));
    }

    /// Records a check; a failing check without a witness gets its
    /// expected/actual pair as witness.
    pub fn check(
        &mut self,
        check: impl Into<String>,
        subject: impl Into<String>,
        expected: impl ToString,
        actual: impl ToString,
        witness: Option<String>,
    ) -> bool {
        let expected = expected.to_string();
        let actual = actual.to_string();
        let passed = expected == actual;
        self.record(check, subject, passed, expected, actual, witness)
    }

    pub fn record(
        &mut self,
        check: impl Into<String>,
        subject: impl Into<String>,
        passed: bool,
        expected: impl ToString,
        actual: impl ToString,
        witness: Option<String>,
    ) -> bool {
        let expected = expected.to_string();
        let actual = actual.to_string();
        let witness = match witness {
            None if !passed => Some(format!("expected {expected}, got {actual}")),
            w => w,
        };
        self.items.push(CheckItem {
            check: check.into(),
            subject: subject.into(),
            passed,
            expected,
            actual,
            witness,
        });
        passed
    }

    pub fn passed(&self) -> bool {
        self.items.iter().all(|i| i.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckItem> {
        self.items.iter().filter(|i| !i.passed)
    }

    /// Pass counts per check name, in first-appearance order.
    pub fn summary(&self) -> Vec<(String, usize, usize)> {
        let mut order = Vec::new();
        let mut counts: BTreeMap<&str, (usize, usize)> = BTreeMap::new();
        for i in &self.items {
            let e = counts.entry(&i.check).or_insert_with(|| {
                order.push(i.check.clone());
                (0, 0)
            });
            e.1 += 1;
            if i.passed {
                e.0 += 1;
            }
        }
        order
            .into_iter()
            .map(|c| {
                let (p, t) = counts[c.as_str()];
                (c, p, t)
            })
            .collect()
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{}", self.title);
        for (k, v) in &self.facts {
            let _ = writeln!(s, "  {k}: {v}");
        }
        let width = self.items.iter().map(|i| i.check.len()).max().unwrap_or(0);
        for i in &self.items {
            let mark = if i.passed { "PASS" } else { "FAIL" };
            let _ = writeln!(
                s,
                "{mark}  {:width$}  {}  expected={} actual={}",
                i.check, i.subject, i.expected, i.actual
            );
            if !i.passed {
                if let Some(w) = &i.witness {
                    let _ = writeln!(s, "      witness: {w}");
                }
            }
        }
        for (c, p, t) in self.summary() {
            let _ = writeln!(s, "{c}: {p}/{t} passed");
        }
        let _ = writeln!(s, "status: {}", if self.passed() { "pass" } else { "fail" });
        s
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "title": self.title,
            "status": if self.passed() { "pass" } else { "fail" },
            "facts": self.facts.iter().map(|(k, v)| (k.clone(), serde_json::Value::String(v.clone()))).collect::<serde_json::Map<_, _>>(),
            "summary": self.summary().into_iter().map(|(c, p, t)| serde_json::json!({"check": c, "passed": p, "total": t})).collect::<Vec<_>>(),
            "items": self.items,
        })
    }
}
