//! Reports: a list of sections, one per task, each with a verdict, the
//! degrees it covers, named boolean checks and free-form data.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use ezd_core::series::growth_diagnostics;
use ezd_core::{ErrorKind, TruncatedSeries};
use serde::Serialize;
use serde_json::{json, Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    /// A hypothesis of the statement being checked fails for this instance.
    Hypothesis,
    /// The requested computation is outside its domain (e.g. `(f, g)` is
    /// not an exact pair).
    Precondition,
    /// The question reaches past the truncation window.
    Truncation,
    /// A proven identity failed.
    TheoremViolation,
}

impl Status {
    pub fn from_kind(kind: ErrorKind) -> Status {
        match kind {
            ErrorKind::Hypothesis => Status::Hypothesis,
            ErrorKind::Precondition | ErrorKind::Input => Status::Precondition,
            ErrorKind::Truncation => Status::Truncation,
            ErrorKind::TheoremViolation => Status::TheoremViolation,
        }
    }

    fn label(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Hypothesis => "hypothesis",
            Status::Precondition => "precondition",
            Status::Truncation => "truncation",
            Status::TheoremViolation => "theorem-violation",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Section {
    pub id: String,
    pub kind: String,
    pub status: Status,
    /// Degrees `0..=window` are covered by every verdict in this section.
    pub window: Option<usize>,
    pub checks: BTreeMap<String, bool>,
    pub notes: Vec<String>,
    pub data: Map<String, Value>,
}

impl Section {
    pub fn new(id: &str, kind: &str, window: Option<usize>) -> Section {
        Section {
            id: id.to_string(),
            kind: kind.to_string(),
            status: Status::Pass,
            window,
            checks: BTreeMap::new(),
            notes: Vec::new(),
            data: Map::new(),
        }
    }

    pub fn check(&mut self, name: &str, ok: bool) {
        self.checks.insert(name.to_string(), ok);
        if !ok {
            self.raise(Status::TheoremViolation);
        }
    }

    /// Keeps the most severe status seen.
    pub fn raise(&mut self, s: Status) {
        self.status = self.status.max(s);
    }

    pub fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    pub fn put(&mut self, key: &str, v: impl Serialize) {
        self.data.insert(key.to_string(), serde_json::to_value(v).expect("serializable"));
    }

    pub fn fail(&mut self, e: &ezd_core::Error) {
        self.raise(Status::from_kind(e.kind()));
        self.note(e.to_string());
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub cap: usize,
    pub seed: u64,
    pub ring: Value,
    pub sections: Vec<Section>,
    pub status: Status,
    pub exit_code: i32,
    pub timing: Timing,
}

#[derive(Clone, Debug, Serialize)]
pub struct Timing {
    pub elapsed_ms: u128,
}

impl Report {
    pub fn finish(&mut self) {
        self.sections.sort_by(|a, b| a.id.cmp(&b.id));
        self.status = self.sections.iter().map(|s| s.status).max().unwrap_or(Status::Pass);
        self.exit_code = match self.status {
            Status::Pass => 0,
            Status::TheoremViolation => 2,
            _ => 1,
        };
    }

    pub fn to_machine(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable") + "\n"
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "ezd {}  cap {}  seed {}", self.command, self.cap, self.seed);
        if let Some(r) = self.ring.as_object() {
            let _ = writeln!(
                s,
                "ring: dim {}, basis {}, H(t) = {}",
                r.get("dim").unwrap_or(&Value::Null),
                r.get("labels")
                    .and_then(Value::as_array)
                    .map(|l| l.iter().filter_map(Value::as_str).collect::<Vec<_>>().join(" "))
                    .unwrap_or_default(),
                r.get("hilbert").and_then(Value::as_str).unwrap_or("?")
            );
        }
        for sec in &self.sections {
            let window = sec.window.map(|w| format!(" (degrees 0..={})", w)).unwrap_or_default();
            let _ = writeln!(s, "\n[{}] {}: {}{}", sec.id, sec.kind, sec.status.label(), window);
            for (name, ok) in &sec.checks {
                let _ = writeln!(s, "  {:4} {}", if *ok { "ok" } else { "FAIL" }, name);
            }
            for (k, v) in &sec.data {
                write_value(&mut s, k, v, 2);
            }
            for n in &sec.notes {
                let _ = writeln!(s, "  note: {}", n);
            }
        }
        let _ = writeln!(s, "\nstatus: {} (exit {})", self.status.label(), self.exit_code);
        s
    }
}

fn write_value(s: &mut String, key: &str, v: &Value, indent: usize) {
    let pad = " ".repeat(indent);
    match v {
        Value::Object(m) => {
            let _ = writeln!(s, "{}{}:", pad, key);
            for (k, v) in m {
                write_value(s, k, v, indent + 2);
            }
        }
        Value::String(t) => {
            let _ = writeln!(s, "{}{} = {}", pad, key, t);
        }
        other => {
            let _ = writeln!(s, "{}{} = {}", pad, key, other);
        }
    }
}

/// Coefficients, a printed form and, when one is found, a matching
/// rational function.
pub fn series_value(s: &TruncatedSeries) -> Value {
    json!({
        "coefficients": s.coeffs(),
        "through": s.precision().map(|p| p.saturating_sub(1)),
        "text": s.to_string(),
        "rational_form": s.match_rational_form().map(|r| r.to_string()),
    })
}

/// Estimated complexity and curvature. Never a verdict.
pub fn diagnostic_value(named: &[(&str, &TruncatedSeries)]) -> Value {
    let mut m = Map::new();
    m.insert("label".into(), Value::from("diagnostic"));
    for (name, s) in named {
        let v = match growth_diagnostics(s) {
            Ok(g) => json!({
                "complexity": g.complexity,
                "curvature": format!("{:.4}", g.curvature),
                "terms_used": g.terms_used,
            }),
            Err(e) => json!({ "unavailable": e.to_string() }),
        };
        m.insert((*name).to_string(), v);
    }
    Value::Object(m)
}
