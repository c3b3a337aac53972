//! One evaluation per claim: dispatch, verdict and counterexample payload.

use std::str::FromStr;
use std::sync::Arc;

use repcheck_core::chartab::{
    choose_prime_after, default_gl_prime, gl_exponent, kappa_selfduality_check, kappa_twists_are_contragredients,
    PrimeChoice, TableSource,
};
use repcheck_core::error::Error as CoreError;
use repcheck_core::ffalg::{field, MatFq};
use repcheck_core::geometry::{
    deligne_filtration, deligne_uniqueness_check, dual_key_lemma_check, key_lemma_check, nilpotent_representatives,
    nu_image_check, verify_geometric_statement, HomDomain, OrbitCheckReport,
};
use repcheck_core::groups::{gl_order, FiniteGroup, GroupSpec, DEFAULT_ORDER_BOUND};
use repcheck_core::jacquet::{equivalence_check, parabolic_hecke_check, verify_theorem_gl, JacquetSetup};
use repcheck_core::symgrp::{adjoint_hecke_commute, strong_gelfand_check};
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::report::{Report, Verdict, VERSION};
use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Jacquet,
    Thmgl,
    Gelfand,
    Geometry,
    Keylemma,
    Dualkey,
    Deligne,
    Nuimage,
    Symgroup,
    Hecke,
    Chartab,
}

impl Command {
    pub fn claim(self) -> &'static str {
        match self {
            Command::Jacquet => "multiplicity-one",
            Command::Thmgl => "restriction-multiplicity-one",
            Command::Gelfand => "gelfand-pair",
            Command::Geometry => "geometric-statement",
            Command::Keylemma => "key-lemma",
            Command::Dualkey => "dual-key-lemma",
            Command::Deligne => "deligne-filtration",
            Command::Nuimage => "nu-image",
            Command::Symgroup => "strong-gelfand",
            Command::Hecke => "hecke-commutativity",
            Command::Chartab => "character-table",
        }
    }
}

/// An explicit prime, or the next admissible prime after the default one.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PrimeArg {
    Value(u64),
    Next,
}

impl FromStr for PrimeArg {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        if s == "next" {
            return Ok(PrimeArg::Next);
        }
        s.parse().map(PrimeArg::Value).map_err(|_| format!("expected a prime or `next`, got `{s}`"))
    }
}

impl Serialize for PrimeArg {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            PrimeArg::Value(p) => s.serialize_u64(*p),
            PrimeArg::Next => s.serialize_str("next"),
        }
    }
}

impl<'de> Deserialize<'de> for PrimeArg {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        match Value::deserialize(d)? {
            Value::Number(n) => n.as_u64().map(PrimeArg::Value).ok_or_else(|| serde::de::Error::custom("bad prime")),
            Value::String(s) => s.parse().map_err(serde::de::Error::custom),
            _ => Err(serde::de::Error::custom("expected a prime or `next`")),
        }
    }
}

/// A claim with its parameters; the unit of work for one report.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Params {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub composition: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prime: Option<PrimeArg>,
    /// Dual orbit lemma over every map instead of isomorphisms only.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub all_maps: bool,
}

fn config(msg: impl Into<String>) -> CliError {
    CliError::Config(msg.into())
}

impl Params {
    fn q(&self) -> Result<u32, CliError> {
        self.q.ok_or_else(|| config("--q is required"))
    }

    fn n(&self) -> Result<usize, CliError> {
        self.n.ok_or_else(|| config("--n is required"))
    }

    /// `--composition`, or `(n, k)`; when both are given they must agree.
    fn parabolic_composition(&self) -> Result<Vec<usize>, CliError> {
        let comp = match (&self.composition, self.n, self.k) {
            (Some(c), None, None) => c.clone(),
            (Some(c), n, k) => {
                let total = n.unwrap_or(0) + k.unwrap_or(0);
                if c.iter().sum::<usize>() != total {
                    return Err(config(format!("composition {c:?} does not sum to {total}")));
                }
                c.clone()
            }
            (None, Some(n), Some(k)) => vec![n, k],
            (None, Some(n), None) => vec![n],
            _ => return Err(config("give --composition or --n and --k")),
        };
        validate_composition(&comp)?;
        Ok(comp)
    }

    /// Size `k` and a composition of it; defaults to the full flag.
    fn filtered_space(&self) -> Result<(usize, Vec<usize>), CliError> {
        let comp = match (&self.composition, self.k) {
            (Some(c), Some(k)) if c.iter().sum::<usize>() != k => {
                return Err(config(format!("composition {c:?} does not sum to k = {k}")))
            }
            (Some(c), _) => c.clone(),
            (None, Some(k)) => vec![1; k],
            (None, None) => return Err(config("--k is required")),
        };
        validate_composition(&comp)?;
        Ok((comp.iter().sum(), comp))
    }

    fn canonical(&self) -> Map<String, Value> {
        match serde_json::to_value(self) {
            Ok(Value::Object(m)) => m,
            _ => Map::new(),
        }
    }
}

fn validate_composition(c: &[usize]) -> Result<(), CliError> {
    if c.is_empty() || c.contains(&0) {
        return Err(config(format!("{c:?} is not a composition")));
    }
    Ok(())
}

/// The prime for tables of `GL_n(F_q)`, honoring an override.
pub fn resolve_prime(n: usize, q: u32, arg: Option<PrimeArg>) -> Result<Option<PrimeChoice>, CliError> {
    let (e, order) = (gl_exponent(n, q), gl_order(n, q) as u64);
    match arg {
        None => Ok(None),
        Some(PrimeArg::Next) => {
            let base = default_gl_prime(n, q)?;
            Ok(Some(choose_prime_after(e, order, base.p)?))
        }
        Some(PrimeArg::Value(p)) => {
            let c = choose_prime_after(e, order, p.saturating_sub(1))?;
            if c.p != p {
                return Err(config(format!(
                    "{p} is not admissible for GL_{n}(F_{q}): need a prime p = 1 mod {e} with p > 2 ceil(sqrt({order})); next is {}",
                    c.p
                )));
            }
            Ok(Some(c))
        }
    }
}

/// Result of one evaluation: the canonical report and supporting evidence.
pub struct Evaluation {
    pub report: Report,
    pub details: Value,
}

struct Outcome {
    pass: bool,
    max_multiplicity: Option<u64>,
    counterexample: Option<Value>,
    prime: Option<u64>,
    details: Value,
}

fn rows(m: &MatFq) -> Value {
    json!(m.to_rows())
}

fn orbit_payload(r: &OrbitCheckReport) -> Option<Value> {
    r.violation.as_ref().map(|v| {
        json!({
            "member": rows(&v.member),
            "transpose": rows(&v.member.transpose()),
            "orbit": v.orbit.iter().map(rows).collect::<Vec<_>>(),
        })
    })
}

fn reject_prime(p: &Params, cmd: Command) -> Result<(), CliError> {
    if p.prime.is_some() {
        return Err(config(format!("--prime is not used by {}", cmd.claim())));
    }
    Ok(())
}

pub fn evaluate(cmd: Command, p: &Params, tables: &dyn TableSource) -> Result<Evaluation, CliError> {
    if p.all_maps && cmd != Command::Dualkey {
        return Err(config("--all-maps applies only to dualkey"));
    }
    let out = match cmd {
        Command::Jacquet => {
            let (q, comp) = (p.q()?, p.parabolic_composition()?);
            let prime = resolve_prime(comp.iter().sum(), q, p.prime)?;
            let r = JacquetSetup::new(q, &comp, tables, prime)?.jacquet()?;
            let counterexample = r.first_exceeding(1).map(|c| {
                json!({
                    "row": c.row, "col": c.col, "multiplicity": c.multiplicity,
                    "g_degree": r.g_degrees[c.row], "m_degree": r.m_degrees[c.col],
                    "matrix": r.matrix,
                })
            });
            Outcome {
                pass: r.max_multiplicity <= 1,
                max_multiplicity: Some(r.max_multiplicity),
                counterexample,
                prime: Some(r.prime),
                details: json!({ "g_degrees": r.g_degrees, "m_degrees": r.m_degrees, "matrix": r.matrix }),
            }
        }
        Command::Thmgl => {
            reject_prime(p, cmd)?;
            let (q, n) = (p.q()?, p.n()?);
            let r = verify_theorem_gl(q, n, tables)?;
            let pass = r.pass && r.identity_holds;
            let counterexample = (!pass).then(|| {
                let entry = r.matrix.iter().enumerate().find_map(|(i, row)| {
                    row.iter().position(|&m| m > 1).map(|j| json!({ "row": i, "col": j, "multiplicity": row[j] }))
                });
                json!({ "entry": entry, "identity_holds": r.identity_holds, "matrix": r.matrix })
            });
            Outcome {
                pass,
                max_multiplicity: Some(r.max_multiplicity),
                counterexample,
                prime: Some(r.prime),
                details: json!({ "matrix": r.matrix, "identity_holds": r.identity_holds }),
            }
        }
        Command::Gelfand | Command::Hecke => {
            let (q, comp) = (p.q()?, p.parabolic_composition()?);
            let big: usize = comp.iter().sum();
            let setup = JacquetSetup::new(q, &comp, tables, resolve_prime(big, q, p.prime)?)?;
            let group = FiniteGroup::new(GroupSpec::gl(big, q), DEFAULT_ORDER_BOUND)?;
            let hecke = parabolic_hecke_check(&group, &setup.pdata)?;
            if cmd == Command::Hecke {
                Outcome {
                    pass: hecke.commutative,
                    max_multiplicity: None,
                    counterexample: hecke.witness.as_ref().map(|w| json!(w)),
                    prime: None,
                    details: json!(hecke),
                }
            } else {
                let eq = equivalence_check(&setup)?;
                let jac = setup.jacquet()?;
                let mult_one = jac.max_multiplicity <= 1;
                let consistent = eq.holds() && hecke.commutative == mult_one;
                let pass = consistent && mult_one;
                let counterexample = (!pass).then(|| {
                    json!({
                        "consistent": consistent,
                        "equivalences": eq,
                        "hecke_witness": hecke.witness,
                        "multiplicity": jac.first_exceeding(1),
                    })
                });
                Outcome {
                    pass,
                    max_multiplicity: Some(jac.max_multiplicity),
                    counterexample,
                    prime: Some(jac.prime),
                    details: json!({ "equivalences": eq, "hecke_basis": hecke.basis_size, "commutative": hecke.commutative }),
                }
            }
        }
        Command::Geometry => {
            reject_prime(p, cmd)?;
            let q = p.q()?;
            let size = p.n()? + p.k.unwrap_or(0);
            let r = verify_geometric_statement(q, size)?;
            Outcome {
                pass: r.pass,
                max_multiplicity: None,
                counterexample: (!r.pass).then(|| json!({ "refutations": r.refutations })),
                prime: None,
                details: json!({ "counts": r.counts, "witnessed": r.witnessed, "nilpotent_witnessed": r.nilpotent_witnessed }),
            }
        }
        Command::Keylemma | Command::Dualkey => {
            reject_prime(p, cmd)?;
            let q = p.q()?;
            let (k, comp) = p.filtered_space()?;
            let r = if cmd == Command::Keylemma {
                key_lemma_check(q, k, &comp)?
            } else {
                let domain = if p.all_maps { HomDomain::AllMaps } else { HomDomain::Isomorphisms };
                dual_key_lemma_check(q, k, &comp, domain)?
            };
            Outcome {
                pass: r.pass,
                max_multiplicity: None,
                counterexample: orbit_payload(&r),
                prime: None,
                details: json!({ "orbits": r.orbits, "action": r.action, "domain": r.domain }),
            }
        }
        Command::Deligne => {
            reject_prime(p, cmd)?;
            let (q, n) = (p.q()?, p.n()?);
            let f = field(q)?;
            if (q as u128).pow((n * n) as u32) > DEFAULT_ORDER_BOUND as u128 {
                return Err(CoreError::OrderBoundExceeded {
                    order: (q as u128).pow((n * n) as u32),
                    bound: DEFAULT_ORDER_BOUND,
                }
                .into());
            }
            let mut checked = 0;
            let mut failures = Vec::new();
            for a in MatFq::all(f, n, n).filter(MatFq::is_nilpotent) {
                if !deligne_filtration(&a)?.verify() {
                    failures.push(rows(&a));
                }
                checked += 1;
            }
            let uniqueness = if q == 2 && n <= 3 { Some(deligne_uniqueness_check(q, n)?) } else { None };
            let unique_ok = uniqueness.as_ref().is_none_or(|u| u.pass);
            let pass = failures.is_empty() && unique_ok;
            let counterexample = (!pass).then(|| {
                json!({
                    "invariant_failures": failures,
                    "uniqueness_failures": uniqueness.as_ref().map(|u| u.failures.iter().map(rows).collect::<Vec<_>>()),
                })
            });
            Outcome {
                pass,
                max_multiplicity: None,
                counterexample,
                prime: None,
                details: json!({ "nilpotents": checked, "uniqueness_checked": uniqueness.is_some() }),
            }
        }
        Command::Nuimage => {
            reject_prime(p, cmd)?;
            let (q, n) = (p.q()?, p.n()?);
            let reports = nilpotent_representatives(q, n)?
                .iter()
                .map(nu_image_check)
                .collect::<Result<Vec<_>, _>>()?;
            let bad: Vec<_> = reports.iter().filter(|r| !r.pass).collect();
            Outcome {
                pass: bad.is_empty(),
                max_multiplicity: None,
                counterexample: (!bad.is_empty()).then(|| json!(bad)),
                prime: None,
                details: json!(reports
                    .iter()
                    .map(|r| json!({ "blocks": r.blocks, "image_size": r.image_size, "pa_size": r.pa_size }))
                    .collect::<Vec<_>>()),
            }
        }
        Command::Symgroup => {
            reject_prime(p, cmd)?;
            let comp = p.composition.clone().ok_or_else(|| config("--composition is required"))?;
            validate_composition(&comp)?;
            let sg = strong_gelfand_check(&comp);
            let hecke = adjoint_hecke_commute(&comp)?;
            let consistent = hecke.commutative == sg.pass;
            let pass = sg.pass && consistent;
            let counterexample = (!pass).then(|| {
                json!({
                    "lambda": sg.argmax.0,
                    "targets": sg.argmax.1,
                    "multiplicity": sg.max_multiplicity,
                    "noncommuting_pair": hecke.full_witness_cycles,
                    "named_pair": hecke.named,
                    "consistent": consistent,
                })
            });
            Outcome {
                pass,
                max_multiplicity: Some(sg.max_multiplicity),
                counterexample,
                prime: None,
                details: json!({ "hecke_basis": hecke.basis_size, "commutative": hecke.commutative }),
            }
        }
        Command::Chartab => {
            let (q, n) = (p.q()?, p.n()?);
            let prime = match resolve_prime(n, q, p.prime)? {
                Some(c) => c,
                None => default_gl_prime(n, q)?,
            };
            let t: Arc<_> = tables.gl_table(n, q, prime)?;
            let valid = t.validate();
            let kappa = kappa_selfduality_check(t.classes()) && kappa_twists_are_contragredients(&t);
            let pass = valid.is_ok() && kappa;
            let counterexample = (!pass).then(|| {
                json!({ "validation": valid.as_ref().err().map(|e| e.to_string()), "kappa": kappa, "table": t.to_record() })
            });
            Outcome {
                pass,
                max_multiplicity: None,
                counterexample,
                prime: Some(prime.p),
                details: json!({ "classes": t.classes().num_classes(), "degrees": t.degrees() }),
            }
        }
    };
    let report = Report {
        claim: cmd.claim().to_string(),
        params: p.canonical(),
        verdict: Verdict::from_pass(out.pass),
        max_multiplicity: out.max_multiplicity,
        counterexample: out.counterexample,
        prime: out.prime,
        version: VERSION.to_string(),
    };
    Ok(Evaluation { report, details: out.details })
}
