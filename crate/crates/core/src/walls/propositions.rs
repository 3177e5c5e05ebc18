//! The proposition parameter tables and their verification.
//!
//! Tables are data under `fixtures/v1`; entries are written in terms of
//! the degree `d` (`"d"`, `"d-1"`, `"d-9/4"`, `"2"`). Set `VGIT_FIXTURE_DIR`
//! to read `propositions.json` from another directory.

use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::criterion::{
    destabilizer_search, interval_mu_claim, Certificate, Claim, Counterexample, ExponentSet, SearchOptions, SlopeSpec,
    Strictness,
};
use crate::curve::{hyperflex_curve, Surface};
use crate::error::{Error, Result};
use crate::exact::rational::parse_rational_lenient;
use crate::exact::{Exponent, Rational};
use crate::walls::wall_slopes;

pub const FIXTURE_ENV: &str = "VGIT_FIXTURE_DIR";

const BUILTIN: &str = include_str!("../../fixtures/v1/propositions.json");

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PropositionTable {
    pub version: u32,
    pub propositions: Vec<PropositionEntry>,
    pub negative_controls: Vec<NegativeControl>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PropositionEntry {
    pub id: String,
    pub surface: Surface,
    pub degrees: Vec<u32>,
    pub claims: Vec<ClaimTemplate>,
    /// Extra destabilizer search on a witness family.
    #[serde(default)]
    pub search: Option<String>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClaimTemplate {
    #[serde(default)]
    pub label: Option<String>,
    pub weights: Vec<String>,
    pub point_entries: Vec<Vec<usize>>,
    #[serde(default)]
    pub excluding: Option<Vec<Vec<String>>>,
    #[serde(default)]
    pub only: Option<Vec<Vec<String>>>,
    pub slope: SlopeTemplate,
    pub strictness: String,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum SlopeTemplate {
    Point(String),
    Open([String; 2]),
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NegativeControl {
    pub id: String,
    pub base: String,
    pub excluding: Vec<Vec<String>>,
    pub expected_counterexample: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropositionCheck {
    pub id: String,
    pub degree: u32,
    pub surface: Surface,
    pub parameters: Vec<Claim>,
    pub outcome: Outcome,
    pub counterexamples: Vec<Counterexample>,
    /// Monomials attaining equality, per claim.
    pub equality: Vec<Vec<Exponent>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Certificate>,
    pub notes: Vec<String>,
}

impl PropositionTable {
    pub fn builtin() -> Self {
        serde_json::from_str(BUILTIN).expect("builtin fixture parses")
    }

    /// The table from `VGIT_FIXTURE_DIR` if set, else the builtin copy.
    pub fn load() -> Result<Self> {
        match std::env::var_os(FIXTURE_ENV) {
            Some(dir) => {
                let path = PathBuf::from(dir).join("propositions.json");
                let text = std::fs::read_to_string(&path)
                    .map_err(|e| Error::input(format!("cannot read {}: {e}", path.display())))?;
                serde_json::from_str(&text)
                    .map_err(|e| Error::Parse { location: path.display().to_string(), message: e.to_string() })
            }
            None => Ok(Self::builtin()),
        }
    }

    pub fn entry(&self, id: &str) -> Result<&PropositionEntry> {
        self.propositions
            .iter()
            .find(|p| p.id == id)
            .ok_or_else(|| Error::input(format!("unknown proposition id {id:?}")))
    }

    pub fn ids(&self) -> Vec<&str> {
        self.propositions.iter().map(|p| p.id.as_str()).collect()
    }
}

/// Evaluates `"d"`, `"d-9/4"`, `"d+1"` or a constant at the given degree.
pub fn eval_degree_expr(expr: &str, d: u32) -> Result<Rational> {
    let s: String = expr.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || Error::input(format!("malformed degree expression {expr:?}"));
    let constant = |t: &str| parse_rational_lenient(t).map_err(|_| bad());
    match s.strip_prefix('d') {
        Some("") => Ok(Rational::from_integer(d.into())),
        Some(rest) => {
            let (sign, body) = match rest.split_at(1) {
                ("+", b) => (1, b),
                ("-", b) => (-1, b),
                _ => return Err(bad()),
            };
            let c = constant(body)?;
            Ok(Rational::from_integer(d.into()) + if sign > 0 { c } else { -c })
        }
        None => constant(&s),
    }
}

fn eval_exponent(entry: &[String], d: u32) -> Result<Exponent> {
    entry
        .iter()
        .map(|e| {
            let v = eval_degree_expr(e, d)?;
            if !v.is_integer() || v < Rational::from_integer(0.into()) {
                return Err(Error::input(format!("exponent {e:?} is not a nonnegative integer at d = {d}")));
            }
            u32::try_from(v.to_integer()).map_err(|_| Error::input("exponent too large"))
        })
        .collect()
}

fn eval_exponents(entries: &[Vec<String>], d: u32) -> Result<Vec<Exponent>> {
    entries.iter().map(|e| eval_exponent(e, d)).collect()
}

fn instantiate(surface: Surface, t: &ClaimTemplate, d: u32) -> Result<Claim> {
    let weights = t.weights.iter().map(|w| eval_degree_expr(w, d)).collect::<Result<Vec<_>>>()?;
    if weights.len() != surface.nvars() {
        return Err(Error::input(format!("{surface} claims take {} weights", surface.nvars())));
    }
    let exponents = match (&t.excluding, &t.only) {
        (Some(ex), None) => ExponentSet::Excluding(eval_exponents(ex, d)?),
        (None, Some(only)) => ExponentSet::Only(eval_exponents(only, d)?),
        _ => return Err(Error::input("a claim needs exactly one of `excluding` and `only`")),
    };
    let slope = match &t.slope {
        SlopeTemplate::Point(p) => SlopeSpec::Point(eval_degree_expr(p, d)?),
        SlopeTemplate::Open([a, b]) => SlopeSpec::Open(eval_degree_expr(a, d)?, eval_degree_expr(b, d)?),
    };
    let strictness = match t.strictness.as_str() {
        ">0" => Strictness::Positive,
        ">=0" => Strictness::NonNegative,
        other => return Err(Error::input(format!("unknown strictness {other:?}"))),
    };
    Ok(Claim { surface, degree: d, weights, point_entries: t.point_entries.clone(), exponents, slope, strictness })
}

pub fn verify_proposition(id: &str, d: u32) -> Result<PropositionCheck> {
    verify_in(&PropositionTable::load()?, id, d)
}

pub fn verify_in(table: &PropositionTable, id: &str, d: u32) -> Result<PropositionCheck> {
    let entry = table.entry(id)?;
    if d < 3 {
        return Err(Error::input(format!("degree {d} is below 3")));
    }
    let mut check = PropositionCheck {
        id: id.to_string(),
        degree: d,
        surface: entry.surface,
        parameters: Vec::new(),
        outcome: Outcome::Pass,
        counterexamples: Vec::new(),
        equality: Vec::new(),
        certificate: None,
        notes: Vec::new(),
    };
    for template in &entry.claims {
        let claim = instantiate(entry.surface, template, d)?;
        let out = interval_mu_claim(&claim)?;
        if let Some(label) = &template.label {
            check.notes.push(format!("{label}: {}", if out.pass { "pass" } else { "fail" }));
        }
        check.counterexamples.extend(out.counterexamples);
        check.equality.push(out.equality);
        check.parameters.push(claim);
    }
    let mut pass = check.counterexamples.is_empty();
    match entry.search.as_deref() {
        None => {}
        Some("hyperflex") => {
            let curve = hyperflex_curve(d)?;
            let t = wall_slopes(Surface::P2, d)?.wall;
            match destabilizer_search(&curve, &t, SearchOptions::default())? {
                Some(cert) => {
                    check.notes.push(format!("hyperflex witness destabilized by {} at the wall", cert.lambda));
                    check.certificate = Some(cert);
                }
                None => {
                    check.notes.push("no destabilizer found for the hyperflex witness".into());
                    pass = false;
                }
            }
        }
        Some(other) => return Err(Error::input(format!("unknown search family {other:?}"))),
    }
    check.outcome = if pass { Outcome::Pass } else { Outcome::Fail };
    Ok(check)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NegativeControlCheck {
    pub id: String,
    pub degree: u32,
    /// True when the tampered claim fails at exactly the expected monomial.
    pub behaves: bool,
    pub counterexamples: Vec<Counterexample>,
}

pub fn run_negative_control(table: &PropositionTable, control: &NegativeControl, d: u32) -> Result<NegativeControlCheck> {
    let entry = table.entry(&control.base)?;
    let template = entry.claims.first().ok_or_else(|| Error::input("base proposition has no claims"))?;
    let tampered = ClaimTemplate { excluding: Some(control.excluding.clone()), only: None, ..template.clone() };
    let out = interval_mu_claim(&instantiate(entry.surface, &tampered, d)?)?;
    let expected = eval_exponent(&control.expected_counterexample, d)?;
    let behaves = !out.pass && out.counterexamples.iter().all(|c| c.monomial == expected);
    Ok(NegativeControlCheck { id: control.id.clone(), degree: d, behaves, counterexamples: out.counterexamples })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{int, rat};

    #[test]
    fn degree_expressions() {
        assert_eq!(eval_degree_expr("d", 4).unwrap(), int(4));
        assert_eq!(eval_degree_expr("d-9/4", 4).unwrap(), rat(7, 4));
        assert_eq!(eval_degree_expr("d + 1", 4).unwrap(), int(5));
        assert_eq!(eval_degree_expr("-11/10", 4).unwrap(), rat(-11, 10));
        assert!(eval_degree_expr("2d", 4).is_err());
        assert!(eval_exponent(&["d-4".into()], 3).is_err());
    }

    #[test]
    fn builtin_table_lists_twelve_ids() {
        let t = PropositionTable::builtin();
        assert_eq!(t.ids().len(), 12);
        assert!(verify_in(&t, "nope", 4).is_err());
    }

    #[test]
    fn edge_claim_equality_set() {
        let c = verify_in(&PropositionTable::builtin(), "4.2", 4).unwrap();
        assert_eq!(c.outcome, Outcome::Pass);
        assert!(c.equality[0].contains(&vec![1, 0, 3]));
        assert!(c.equality[0].contains(&vec![0, 2, 2]));
    }

    #[test]
    fn negative_control_fails_at_dropped_monomial() {
        let t = PropositionTable::builtin();
        let n = run_negative_control(&t, &t.negative_controls[0], 4).unwrap();
        assert!(n.behaves);
        assert_eq!(n.counterexamples[0].monomial, vec![0, 1, 3]);
    }
}
