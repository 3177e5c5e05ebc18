//! Inflection data at the marked point and membership in the inflectionary
//! divisors.

use std::collections::BTreeMap;

use serde::Serialize;

use super::sequence::{inflection_weight, vanishing_sequence, VanishingSequence};
use super::special::{special_locus_membership, Membership, SpecialLoci};
use crate::curve::{local_geometry, Contact, PointedCurve, Surface};
use crate::error::Result;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[allow(non_snake_case)]
pub struct InflectionReport {
    pub surface: Surface,
    pub smooth_at_p: bool,
    /// Absent at a singular point.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weight_O1: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weight_O2: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weight_O11: Option<i64>,
    /// Some weight is only a lower bound (a section contains the branch).
    pub weight_lower_bound: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub in_H1: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub flex: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hyperflex: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub in_H2prime: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub in_H01: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub in_H11: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ruling_contacts: Option<[Contact; 2]>,
    pub in_S: bool,
    pub in_X0: bool,
    pub special: SpecialLoci,
    pub sequences: BTreeMap<String, VanishingSequence>,
    pub undecided: bool,
    pub notes: Vec<String>,
}

impl InflectionReport {
    /// `H₁` on P2, `H₀,₁` on the quadric.
    pub fn in_first_divisor(&self) -> bool {
        self.in_H1.or(self.in_H01).unwrap_or(true)
    }

    /// `H₂′` on P2, `H₁,₁` on the quadric.
    pub fn in_second_divisor(&self) -> bool {
        self.in_H2prime.or(self.in_H11).unwrap_or(true)
    }
}

pub fn inflection_report(curve: &PointedCurve) -> Result<InflectionReport> {
    let geometry = local_geometry(curve)?;
    let special = special_locus_membership(curve)?;
    let smooth = geometry.smooth_at_p;
    let mut notes = special.notes.clone();
    let undecided = special.in_s == Membership::Undecided || special.in_x0 == Membership::Undecided;
    let mut report = InflectionReport {
        surface: curve.surface,
        smooth_at_p: smooth,
        weight_O1: None,
        weight_O2: None,
        weight_O11: None,
        weight_lower_bound: false,
        in_H1: None,
        flex: None,
        hyperflex: None,
        in_H2prime: None,
        in_H01: None,
        in_H11: None,
        ruling_contacts: geometry.ruling_contacts,
        in_S: special.in_s.holds(),
        in_X0: special.in_x0.holds(),
        special,
        sequences: BTreeMap::new(),
        undecided,
        notes: Vec::new(),
    };
    if !smooth {
        notes.push(format!("marked point is singular (multiplicity {})", geometry.multiplicity));
    }
    match curve.surface {
        Surface::P2 => {
            if smooth {
                let s1 = vanishing_sequence(curve, &[1], None)?;
                let w1 = inflection_weight(&s1);
                let top = s1.top();
                report.flex = Some(top.at_least(3));
                report.hyperflex = Some(top.at_least(4));
                report.in_H1 = Some(w1.value > 0);
                report.weight_O1 = Some(w1.value);
                report.weight_lower_bound |= w1.lower_bound;
                if s1.has_flags() {
                    notes.push("branch lies on a line component; counted in H2'".into());
                    report.in_H2prime = Some(true);
                }
                if curve.degree > 2 {
                    let s2 = vanishing_sequence(curve, &[2], None)?;
                    let w2 = inflection_weight(&s2);
                    report.weight_O2 = Some(w2.value);
                    report.weight_lower_bound |= w2.lower_bound;
                    if report.in_H2prime.is_none() {
                        report.in_H2prime = Some(w2.value > w1.value);
                    }
                    report.sequences.insert("O(2)".into(), s2);
                }
                report.sequences.insert("O(1)".into(), s1);
            } else {
                report.in_H1 = Some(true);
                report.in_H2prime = Some(true);
                report.flex = Some(false);
                report.hyperflex = Some(false);
            }
        }
        Surface::Quadric => {
            if smooth {
                let contacts = geometry.ruling_contacts.expect("quadric contacts");
                report.in_H01 = Some(contacts.iter().any(|c| c.at_least(2)));
                let s = vanishing_sequence(curve, &[1, 1], None)?;
                let w = inflection_weight(&s);
                report.weight_O11 = Some(w.value);
                report.weight_lower_bound |= w.lower_bound;
                report.in_H11 = Some(s.top().at_least(4));
                report.sequences.insert("O(1,1)".into(), s);
            } else {
                report.in_H01 = Some(true);
                report.in_H11 = Some(true);
            }
        }
    }
    report.notes = notes;
    Ok(report)
}
