//! Exact comparison of predictions against enumerations, and the
//! verification report emitted per checked sub-case. No tolerances anywhere:
//! a report passes only on exact multiset/value equality.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::expsum::ValueDistribution;
use crate::gauss::GaussInt;
use crate::oracle::ClosedFormPrediction;

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct Diff {
    pub key: String,
    pub predicted: String,
    pub enumerated: String,
}

#[derive(Debug, Clone, Default)]
pub struct CompareOutcome {
    pub diffs: Vec<Diff>,
}

impl CompareOutcome {
    pub fn pass(&self) -> bool {
        self.diffs.is_empty()
    }

    fn note(&mut self, key: impl Into<String>, predicted: impl ToString, enumerated: impl ToString) {
        self.diffs.push(Diff {
            key: key.into(),
            predicted: predicted.to_string(),
            enumerated: enumerated.to_string(),
        });
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub status: String,
    pub m: u32,
    pub subject: String,
    pub diffs: Vec<Diff>,
    pub runtime_ms: u128,
}

impl VerificationReport {
    pub fn new(m: u32, subject: impl Into<String>, outcome: CompareOutcome, runtime_ms: u128) -> Self {
        VerificationReport {
            status: if outcome.pass() { "pass" } else { "fail" }.into(),
            m,
            subject: subject.into(),
            diffs: outcome.diffs,
            runtime_ms,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == "pass"
    }
}

pub fn compare_gauss(predicted: GaussInt, enumerated: GaussInt) -> CompareOutcome {
    let mut out = CompareOutcome::default();
    if predicted != enumerated {
        out.note("value", predicted, enumerated);
    }
    out
}

fn key_string(vals: &[GaussInt]) -> String {
    let parts: Vec<String> = vals.iter().map(|v| format!("({},{})", v.re, v.im)).collect();
    parts.join(";")
}

pub fn compare_distributions(
    predicted: &ValueDistribution,
    enumerated: &ValueDistribution,
) -> Result<CompareOutcome> {
    if predicted.arity != enumerated.arity {
        return Err(Error::ShapeMismatch(format!(
            "arity {} vs {}",
            predicted.arity, enumerated.arity
        )));
    }
    let mut out = CompareOutcome::default();
    let p: BTreeMap<_, _> = predicted.entries.iter().cloned().collect();
    let e: BTreeMap<_, _> = enumerated.entries.iter().cloned().collect();
    for key in p.keys().chain(e.keys()) {
        let pf = p.get(key).copied().unwrap_or(0);
        let ef = e.get(key).copied().unwrap_or(0);
        if pf != ef && !out.diffs.iter().any(|d| d.key == key_string(key)) {
            out.note(key_string(key), pf, ef);
        }
    }
    Ok(out)
}

/// Enumerated counterpart of a closed-form prediction.
#[derive(Debug, Clone)]
pub struct EnumeratedCode {
    pub n: u64,
    pub codewords: u64,
    pub d_lee: Option<u64>,
    pub table: BTreeMap<u64, u64>,
}

pub fn compare_code(predicted: &ClosedFormPrediction, enumerated: &EnumeratedCode) -> CompareOutcome {
    let mut out = CompareOutcome::default();
    if predicted.n != enumerated.n {
        out.note("n", predicted.n, enumerated.n);
    }
    if predicted.codeword_count != enumerated.codewords {
        out.note("codewords", predicted.codeword_count, enumerated.codewords);
    }
    match enumerated.d_lee {
        Some(d) if d == predicted.d_lee => {}
        Some(d) => out.note("d_lee", predicted.d_lee, d),
        None => out.note("d_lee", predicted.d_lee, "none"),
    }
    for w in predicted.table.keys().chain(enumerated.table.keys()) {
        let pf = predicted.table.get(w).copied().unwrap_or(0);
        let ef = enumerated.table.get(w).copied().unwrap_or(0);
        if pf != ef && !out.diffs.iter().any(|d| d.key == format!("weight:{w}")) {
            out.note(format!("weight:{w}"), pf, ef);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identical_inputs_pass() {
        let out = compare_gauss(GaussInt::new(3, -1), GaussInt::new(3, -1));
        assert!(out.pass());
    }

    #[test]
    fn differing_distributions_list_every_diff() {
        let p = ValueDistribution {
            arity: 1,
            entries: vec![
                (vec![GaussInt::real(0)], 1),
                (vec![GaussInt::real(2)], 15),
            ],
        };
        let e = ValueDistribution {
            arity: 1,
            entries: vec![
                (vec![GaussInt::real(0)], 1),
                (vec![GaussInt::real(2)], 14),
                (vec![GaussInt::real(4)], 1),
            ],
        };
        let out = compare_distributions(&p, &e).unwrap();
        assert!(!out.pass());
        assert_eq!(out.diffs.len(), 2);
    }

    #[test]
    fn arity_mismatch_is_shape_error() {
        let p = ValueDistribution {
            arity: 1,
            entries: vec![],
        };
        let e = ValueDistribution {
            arity: 2,
            entries: vec![],
        };
        assert!(compare_distributions(&p, &e).is_err());
    }

    #[test]
    fn report_serializes_with_expected_keys() {
        let mut out = CompareOutcome::default();
        out.note("n", 5, 6);
        let report = VerificationReport::new(5, "theorem1/t=0", out, 12);
        let json = serde_json::to_value(&report).unwrap();
        assert_eq!(json["status"], "fail");
        assert_eq!(json["m"], 5);
        assert_eq!(json["diffs"][0]["key"], "n");
        assert!(json.get("runtime_ms").is_some());
    }
}
