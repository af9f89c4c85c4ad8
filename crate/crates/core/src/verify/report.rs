use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

/// A sampled point in real coordinates with the value it was ranked by.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub point: [f64; 6],
    pub value: f64,
}

/// Outcome of one property suite. Field order is the JSON key order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: String,
    pub seed: u64,
    pub samples: usize,
    pub tolerance: f64,
    pub max_error: f64,
    pub pass: bool,
    pub witnesses: Vec<Witness>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

/// JSON has no infinities or NaN; they are reported as `f64::MAX`.
pub(crate) fn finite_or_max(x: f64) -> f64 {
    if x.is_finite() {
        x
    } else {
        f64::MAX
    }
}

pub fn emit_report(r: &VerificationReport, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string(r).expect("report serializes");
            s.push('\n');
            s
        }
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(
                s,
                "{:<26} {}  max_error={:.3e}  tol={:.1e}  samples={}  seed={}",
                r.suite,
                if r.pass { "PASS" } else { "FAIL" },
                r.max_error,
                r.tolerance,
                r.samples,
                r.seed
            );
            for w in &r.witnesses {
                let p = w.point;
                let _ = writeln!(
                    s,
                    "    z={:+.6}{:+.6}i  alpha={:+.6}{:+.6}i  s={:+.6}{:+.6}i  value={:.6e}",
                    p[0], p[1], p[2], p[3], p[4], p[5], w.value
                );
            }
            s
        }
    }
}

pub fn parse_report(json: &str) -> serde_json::Result<VerificationReport> {
    serde_json::from_str(json)
}
