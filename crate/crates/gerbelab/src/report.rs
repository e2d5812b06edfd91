use std::collections::BTreeMap;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::Value;

/// Everything that determines a run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub suite: String,
    pub seed: u64,
    pub samples: usize,
    pub resolution: usize,
    /// Matrix sizes for the spectral suite.
    pub n: Vec<usize>,
    pub trials: usize,
    /// Extension cocycle for the lifting suite: a name or a path to a table.
    pub extension: String,
    pub tolerances: BTreeMap<String, f64>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            suite: "all".into(),
            seed: 1,
            samples: 1000,
            resolution: 3,
            n: vec![2, 3, 4],
            trials: 100,
            extension: "u1xz".into(),
            tolerances: BTreeMap::new(),
        }
    }
}

impl RunConfig {
    /// Tolerance override for `name`, or `default`.
    pub fn tol(&self, name: &str, default: f64) -> f64 {
        self.tolerances.get(name).copied().unwrap_or(default)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub name: String,
    /// A maximum residual, or an exact value (integer, list, string).
    pub value: Value,
    /// The bound a residual was held to, when there is one.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    pub wall_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub suite: String,
    pub config: RunConfig,
    pub checks: Vec<CheckRecord>,
    /// Headline quantities (pairings, orders, sizes).
    pub values: BTreeMap<String, Value>,
    pub passed: usize,
    pub failed: usize,
    pub verdict: String,
}

impl Report {
    pub fn pass(&self) -> bool {
        self.failed == 0
    }

    pub fn check(&self, name: &str) -> Option<&CheckRecord> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// The report with wall times zeroed, for determinism comparisons.
    pub fn without_timing(&self) -> Report {
        let mut r = self.clone();
        for c in &mut r.checks {
            c.wall_ms = 0.0;
        }
        r
    }

    pub fn table(&self) -> String {
        let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
        let mut out = String::new();
        for c in &self.checks {
            let v = match &c.value {
                Value::Number(x) if x.is_f64() => format!("{:.3e}", x.as_f64().unwrap()),
                other => other.to_string(),
            };
            out.push_str(&format!("{} {:width$}  {}\n", if c.pass { "PASS" } else { "FAIL" }, c.name, v));
            if let Some(n) = &c.note {
                out.push_str(&format!("     {:width$}  {}\n", "", n));
            }
        }
        out.push_str(&format!("{}: {} passed, {} failed -> {}\n", self.suite, self.passed, self.failed, self.verdict));
        out
    }
}

/// Collects checks for one suite.
#[derive(Debug)]
pub struct Recorder {
    suite: String,
    prefix: String,
    checks: Vec<CheckRecord>,
    values: BTreeMap<String, Value>,
}

impl Recorder {
    pub fn new(suite: &str) -> Self {
        Self { suite: suite.into(), prefix: String::new(), checks: Vec::new(), values: BTreeMap::new() }
    }

    /// Prefix added to names recorded from now on (used by `all`).
    pub fn set_prefix(&mut self, p: &str) {
        self.prefix = p.into();
    }

    fn named(&self, name: &str) -> String {
        format!("{}{}", self.prefix, name)
    }

    /// Run `f`, which returns a maximum residual, and compare it against `tol`.
    pub fn residual(&mut self, name: &str, tol: f64, f: impl FnOnce() -> Result<f64, String>) {
        let t = Instant::now();
        let r = f();
        let wall_ms = t.elapsed().as_secs_f64() * 1e3;
        let rec = match r {
            Ok(v) => CheckRecord {
                name: self.named(name),
                value: serde_json::json!(v),
                tolerance: Some(tol),
                pass: v.is_finite() && v <= tol,
                note: None,
                wall_ms,
            },
            Err(e) => error_record(self.named(name), e, wall_ms),
        };
        self.checks.push(rec);
    }

    /// Run `f`, which returns an exact value and whether it is the expected one.
    pub fn exact(&mut self, name: &str, f: impl FnOnce() -> Result<(Value, bool), String>) {
        let t = Instant::now();
        let r = f();
        let wall_ms = t.elapsed().as_secs_f64() * 1e3;
        let rec = match r {
            Ok((value, pass)) => CheckRecord { name: self.named(name), value, tolerance: None, pass, note: None, wall_ms },
            Err(e) => error_record(self.named(name), e, wall_ms),
        };
        self.checks.push(rec);
    }

    /// Attach a note to the most recent check.
    pub fn note(&mut self, text: &str) {
        if let Some(c) = self.checks.last_mut() {
            c.note = Some(text.into());
        }
    }

    pub fn value(&mut self, key: &str, v: Value) {
        let k = self.named(key);
        self.values.insert(k, v);
    }

    pub fn finish(self, config: &RunConfig) -> Report {
        let failed = self.checks.iter().filter(|c| !c.pass).count();
        Report {
            suite: self.suite,
            config: config.clone(),
            passed: self.checks.len() - failed,
            failed,
            verdict: if failed == 0 { "pass" } else { "fail" }.into(),
            checks: self.checks,
            values: self.values,
        }
    }
}

fn error_record(name: String, e: String, wall_ms: f64) -> CheckRecord {
    CheckRecord { name, value: Value::Null, tolerance: None, pass: false, note: Some(e), wall_ms }
}
