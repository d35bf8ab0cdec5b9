//! Report envelopes and their JSON / CSV encodings.
//!
//! Every command emits an envelope
//! `{ command, parameters, results, allPass, engineVersion }` whose `results`
//! are flat records carrying a boolean `pass` field. Rationals are strings.

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::catalog::{ClassExpression, RowReport};
use crate::rational::{self, Rational};
use crate::sweep::SweepResult;

pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");

/// A flat record that knows whether it passed.
pub trait Record: Serialize {
    fn passed(&self) -> bool;
}

impl Record for RowReport {
    fn passed(&self) -> bool {
        self.pass
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ReportEnvelope<R> {
    pub command: String,
    pub parameters: Map<String, Value>,
    pub results: Vec<R>,
    pub all_pass: bool,
    pub engine_version: String,
}

impl<R: Record> ReportEnvelope<R> {
    pub fn new(command: &str, parameters: Map<String, Value>, results: Vec<R>) -> Self {
        let all_pass = results.iter().all(Record::passed);
        ReportEnvelope {
            command: command.to_string(),
            parameters,
            results,
            all_pass,
            engine_version: ENGINE_VERSION.to_string(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report records serialise")
    }

    /// Header row plus one line per record, LF-terminated.
    pub fn to_csv(&self) -> String {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        for r in &self.results {
            w.serialize(r).expect("report records serialise");
        }
        let bytes = w.into_inner().expect("in-memory writer");
        String::from_utf8(bytes).expect("csv output is utf-8")
    }
}

/// Recomputes `allPass` from the records of a parsed JSON envelope.
pub fn recompute_all_pass(envelope: &Value) -> Option<bool> {
    let results = envelope.get("results")?.as_array()?;
    results
        .iter()
        .map(|r| r.get("pass").and_then(Value::as_bool))
        .try_fold(true, |acc, p| Some(acc && p?))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepRecord {
    pub g: i64,
    #[serde(with = "rational::serde_str")]
    pub lambda: Rational,
    #[serde(with = "rational::serde_str")]
    pub kappa: Rational,
    #[serde(with = "rational::serde_str")]
    pub delta: Rational,
    #[serde(with = "rational::serde_str")]
    pub slope: Rational,
    #[serde(with = "rational::serde_str")]
    pub expected: Rational,
    pub pass: bool,
}

impl SweepRecord {
    pub fn new(r: &SweepResult, expected: Rational) -> Self {
        SweepRecord {
            g: r.g,
            lambda: r.lambda.clone(),
            kappa: r.kappa.clone(),
            delta: r.delta.clone(),
            pass: r.slope == expected,
            slope: r.slope.clone(),
            expected,
        }
    }
}

impl Record for SweepRecord {
    fn passed(&self) -> bool {
        self.pass
    }
}

/// One term of a class expression. `term` is `lead`, `lambda`, `delta`, or
/// a boundary divisor name.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassRecord {
    pub term: String,
    pub row: Option<String>,
    pub g1: Option<i64>,
    pub g2: Option<i64>,
    #[serde(with = "rational::serde_str")]
    pub coefficient: Rational,
    pub pass: bool,
}

impl Record for ClassRecord {
    fn passed(&self) -> bool {
        self.pass
    }
}

pub fn class_records(class: &ClassExpression) -> Vec<ClassRecord> {
    let head = |term: &str, c: &Rational| ClassRecord {
        term: term.to_string(),
        row: None,
        g1: None,
        g2: None,
        coefficient: c.clone(),
        pass: true,
    };
    let mut out = vec![
        head("lead", &class.lead_coefficient),
        head("lambda", &class.lambda_coeff),
        head("delta", &class.delta_coeff),
    ];
    out.extend(class.higher.iter().map(|h| ClassRecord {
        term: h.label.kind.to_string(),
        row: Some(h.row.clone()),
        g1: h.label.g1,
        g2: h.label.g2,
        pass: rational::is_nonnegative(&h.coefficient),
        coefficient: h.coefficient.clone(),
    }));
    out
}

/// Outcome of one check in the full verification suite.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub check: String,
    pub row: Option<String>,
    pub cases: u64,
    pub detail: String,
    pub pass: bool,
}

impl Record for CheckRecord {
    fn passed(&self) -> bool {
        self.pass
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{even_rows, residual};
    use crate::rational::int;

    fn sample_envelope() -> ReportEnvelope<RowReport> {
        let rows = even_rows();
        let results = vec![
            residual(&rows[0], 3, None, &int(50), &int(60)).unwrap(),
            residual(&rows[2], 4, Some(2), &int(5), &int(7)).unwrap(),
        ];
        ReportEnvelope::new("tables", Map::new(), results)
    }

    #[test]
    fn json_roundtrip_and_all_pass() {
        let env = sample_envelope();
        let v: Value = serde_json::from_str(&env.to_json()).unwrap();
        assert_eq!(v["allPass"], Value::Bool(true));
        assert_eq!(recompute_all_pass(&v), Some(true));
        assert_eq!(v["results"][1]["lambda"], Value::String("34".into()));
        assert_eq!(v["results"][0]["b"], Value::Null);
        let back: ReportEnvelope<RowReport> = serde_json::from_value(v).unwrap();
        assert_eq!(back.results[1].delta, int(271));
    }

    #[test]
    fn csv_header_matches_json_fields() {
        let csv = sample_envelope().to_csv();
        assert!(!csv.contains('\r'));
        let mut lines = csv.lines();
        assert_eq!(
            lines.next().unwrap(),
            "row,n,b,l,m,lambda,kappa,delta,mu_or_tau,residual,expected,pass"
        );
        assert!(lines.next().unwrap().starts_with("T1.1,3,,50,60,"));
    }
}
