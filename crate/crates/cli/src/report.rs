//! Suite configuration and report emission.

use serde_json::{Map, Value};

/// Echoed configuration of a suite run. All bounds are validated at parse
/// time; the generator name ties reports to the sampler revision.
#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub suite: String,
    pub dim: usize,
    pub max_poly_degree: u32,
    pub max_multivector_degree: usize,
    pub trials: usize,
    pub seed: u64,
    pub artin_order: u32,
    pub spanning_degree: u32,
    pub negative_control: bool,
}

impl SuiteConfig {
    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("suite".into(), Value::String(self.suite.clone()));
        m.insert("dim".into(), Value::from(self.dim as u64));
        m.insert("maxDeg".into(), Value::from(self.max_poly_degree));
        m.insert(
            "mvDeg".into(),
            Value::from(self.max_multivector_degree as u64),
        );
        m.insert("trials".into(), Value::from(self.trials as u64));
        m.insert("seed".into(), Value::from(self.seed));
        m.insert("order".into(), Value::from(self.artin_order));
        m.insert("spanDeg".into(), Value::from(self.spanning_degree));
        m.insert(
            "rng".into(),
            Value::String(gerbeflow::sample::GENERATOR_VERSION.into()),
        );
        if self.negative_control {
            m.insert("negativeControl".into(), Value::Bool(true));
        }
        Value::Object(m)
    }
}

/// One failed identity: the trial index, a case label, the serialized inputs
/// and both sides of the identity. Expected-negative entries come from
/// negative-control runs where a nonzero defect is the point.
#[derive(Clone, Debug)]
pub struct Failure {
    pub trial: usize,
    pub case: String,
    pub inputs: Value,
    pub lhs: Value,
    pub rhs: Value,
    pub expected_negative: bool,
}

impl Failure {
    fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("trial".into(), Value::from(self.trial as u64));
        m.insert("case".into(), Value::String(self.case.clone()));
        m.insert("inputs".into(), self.inputs.clone());
        m.insert("lhs".into(), self.lhs.clone());
        m.insert("rhs".into(), self.rhs.clone());
        if self.expected_negative {
            m.insert("expectedNegative".into(), Value::Bool(true));
        }
        Value::Object(m)
    }
}

#[derive(Debug)]
pub struct Report {
    pub command: String,
    pub config: Value,
    pub trials: usize,
    pub failures: Vec<Failure>,
    pub notes: Vec<String>,
    pub elapsed_ms: u128,
}

impl Report {
    pub fn to_json(&self) -> Value {
        let mut failures = self.failures.clone();
        failures.sort_by_key(|f| (f.trial, f.case.clone()));
        let mut m = Map::new();
        m.insert("command".into(), Value::String(self.command.clone()));
        m.insert("config".into(), self.config.clone());
        m.insert("trials".into(), Value::from(self.trials as u64));
        m.insert(
            "failures".into(),
            Value::Array(failures.iter().map(Failure::to_json).collect()),
        );
        if !self.notes.is_empty() {
            m.insert(
                "notes".into(),
                Value::Array(self.notes.iter().cloned().map(Value::String).collect()),
            );
        }
        m.insert("elapsedMs".into(), Value::from(self.elapsed_ms as u64));
        m.insert(
            "version".into(),
            Value::String(env!("CARGO_PKG_VERSION").into()),
        );
        Value::Object(m)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "{}: {} trials, {} failures ({} ms)\n",
            self.command,
            self.trials,
            self.failures.len(),
            self.elapsed_ms
        ));
        let mut failures = self.failures.clone();
        failures.sort_by_key(|f| (f.trial, f.case.clone()));
        for f in &failures {
            let tag = if f.expected_negative {
                " [expected-negative]"
            } else {
                ""
            };
            out.push_str(&format!(
                "  trial {} {}{}: lhs {} != rhs {}\n",
                f.trial, f.case, tag, f.lhs, f.rhs
            ));
        }
        for n in &self.notes {
            out.push_str(&format!("  note: {n}\n"));
        }
        let status = if self.failures.is_empty() {
            "PASS"
        } else {
            "FAIL"
        };
        out.push_str(&format!("{status}\n"));
        out
    }

    /// Exit code contract: 0 when no failures, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.failures.is_empty() {
            0
        } else {
            1
        }
    }
}
