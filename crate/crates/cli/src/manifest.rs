//! Suites of claim/parameter/expectation rows and their aggregate report.

use rayon::prelude::*;
use repcheck_core::chartab::TableSource;
use repcheck_core::jacquet::compositions;
use repcheck_core::symgrp::strong_gelfand_predicate;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::commands::{evaluate, Command, Params};
use crate::report::{Report, Verdict, VERSION};

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Row {
    pub command: Command,
    #[serde(default)]
    pub params: Params,
    pub expect: Verdict,
}

impl<'de> Deserialize<'de> for Verdict {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        match String::deserialize(d)?.as_str() {
            "pass" => Ok(Verdict::Pass),
            "fail" => Ok(Verdict::Fail),
            other => Err(serde::de::Error::custom(format!("expected `pass` or `fail`, got `{other}`"))),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RowOutcome {
    pub command: Command,
    pub params: Params,
    pub expect: Verdict,
    pub met: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub report: Option<Report>,
    /// Infrastructure error; the row counts as unmet.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub version: String,
    pub total: usize,
    pub met: usize,
    pub errors: usize,
    pub all_met: bool,
    pub rows: Vec<RowOutcome>,
}

fn row(command: Command, expect: Verdict, f: impl FnOnce(&mut Params)) -> Row {
    let mut params = Params::default();
    f(&mut params);
    Row { command, params, expect }
}

const MAXIMAL: [(u32, usize, usize); 9] =
    [(2, 1, 1), (2, 2, 1), (2, 1, 2), (2, 3, 1), (2, 1, 3), (2, 2, 2), (3, 1, 1), (3, 2, 1), (3, 1, 2)];

/// The release suite: every positive claim on its test matrix and every
/// known failure as an expected fail.
pub fn default_manifest() -> Vec<Row> {
    use Command::*;
    use Verdict::{Fail, Pass};
    let mut rows = Vec::new();
    for (q, n, k) in MAXIMAL {
        for cmd in [Jacquet, Gelfand, Hecke] {
            rows.push(row(cmd, Pass, |p| {
                p.q = Some(q);
                p.n = Some(n);
                p.k = Some(k);
            }));
        }
    }
    for cmd in [Jacquet, Gelfand, Hecke] {
        rows.push(row(cmd, Fail, |p| {
            p.q = Some(2);
            p.composition = Some(vec![1, 1, 1]);
        }));
    }
    for (q, n) in [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2)] {
        rows.push(row(Thmgl, Pass, |p| {
            p.q = Some(q);
            p.n = Some(n);
        }));
    }
    for (q, top) in [(2u32, 4usize), (3, 3)] {
        for n in 1..=top {
            for cmd in [Geometry, Deligne, Chartab] {
                rows.push(row(cmd, Pass, |p| {
                    p.q = Some(q);
                    p.n = Some(n);
                }));
            }
            if q == 2 {
                rows.push(row(Nuimage, Pass, |p| {
                    p.q = Some(q);
                    p.n = Some(n);
                }));
            }
        }
    }
    for q in [2u32, 3, 5] {
        for k in 1..=2 {
            for comp in compositions(k) {
                rows.push(row(Keylemma, Pass, |p| {
                    p.q = Some(q);
                    p.k = Some(k);
                    p.composition = Some(comp.clone());
                }));
                if q != 5 {
                    rows.push(row(Dualkey, Pass, |p| {
                        p.q = Some(q);
                        p.k = Some(k);
                        p.composition = Some(comp.clone());
                    }));
                }
            }
        }
    }
    rows.push(row(Keylemma, Fail, |p| {
        p.q = Some(2);
        p.k = Some(3);
        p.composition = Some(vec![1, 1, 1]);
    }));
    for q in [2u32, 3] {
        rows.push(row(Dualkey, Fail, |p| {
            p.q = Some(q);
            p.k = Some(2);
            p.composition = Some(vec![1, 1]);
            p.all_maps = true;
        }));
    }
    for n in 1..=8 {
        for comp in compositions(n) {
            let expect = if strong_gelfand_predicate(&comp) { Pass } else { Fail };
            rows.push(row(Symgroup, expect, |p| p.composition = Some(comp.clone())));
        }
    }
    rows
}

pub fn parse_manifest(text: &str) -> serde_json::Result<Vec<Row>> {
    serde_json::from_str(text)
}

/// Runs every row, in parallel; failures are recorded, never fatal.
pub fn run_suite(rows: &[Row], tables: &dyn TableSource) -> SuiteReport {
    let outcomes: Vec<RowOutcome> = rows
        .par_iter()
        .map(|r| {
            let (report, error) = match evaluate(r.command, &r.params, tables) {
                Ok(e) => (Some(e.report), None),
                Err(e) => (None, Some(e.to_string())),
            };
            let met = report.as_ref().is_some_and(|rep| rep.verdict == r.expect);
            RowOutcome { command: r.command, params: r.params.clone(), expect: r.expect, met, report, error }
        })
        .collect();
    let met = outcomes.iter().filter(|o| o.met).count();
    let errors = outcomes.iter().filter(|o| o.error.is_some()).count();
    SuiteReport {
        version: VERSION.to_string(),
        total: outcomes.len(),
        met,
        errors,
        all_met: met == outcomes.len(),
        rows: outcomes,
    }
}

/// Row-level summary lines for the terminal.
pub fn summary_lines(s: &SuiteReport) -> Vec<String> {
    s.rows
        .iter()
        .filter(|o| !o.met)
        .map(|o| {
            let params = serde_json::to_string(&o.params).unwrap_or_default();
            let got = match (&o.report, &o.error) {
                (Some(r), _) => r.verdict.to_string(),
                (None, Some(e)) => format!("error: {e}"),
                _ => String::new(),
            };
            format!("unmet: {} {params}: expected {}, got {got}", o.command.claim(), o.expect)
        })
        .collect()
}

pub fn as_value(s: &SuiteReport) -> Value {
    serde_json::to_value(s).unwrap_or(Value::Null)
}
