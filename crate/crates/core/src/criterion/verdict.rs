//! Stability verdicts across the analyzed slope range.
//!
//! Between the wall and the edge the verdict follows the inflectionary
//! characterizations of the (semi)stable loci; every instability claim
//! carries a searched, exactly re-verified certificate.

use std::cmp::Ordering;

use num_traits::{Signed, Zero};
use serde::Serialize;

use super::mu::mu_min;
use super::search::{destabilizer_search, zero_certificate_search, Certificate, SearchOptions};
use super::torus::torus_verdict;
use crate::curve::{normalize_frame, PointedCurve, Surface};
use crate::error::{Error, Result};
use crate::exact::rational::serde_rational;
use crate::exact::Rational;
use crate::inflection::{inflection_report, InflectionReport};
use crate::walls::wall_slopes;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Status {
    Stable,
    StrictlySemistable,
    Unstable,
    Unknown,
}

impl Status {
    pub fn is_semistable(self) -> bool {
        matches!(self, Status::Stable | Status::StrictlySemistable)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SlopePosition {
    BelowWall,
    Wall,
    Chamber,
    Edge,
    AboveEdge,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StabilityVerdict {
    pub status: Status,
    #[serde(with = "serde_rational")]
    pub slope: Rational,
    pub position: SlopePosition,
    pub certificate: Option<Certificate>,
    pub citations: Vec<String>,
    pub notes: Vec<String>,
    /// A structural membership test was inconclusive.
    pub undecided: bool,
}

struct Labels {
    edge: &'static str,
    chamber: &'static str,
    wall: &'static str,
    first: &'static str,
    second: &'static str,
    first_key: &'static str,
    second_key: &'static str,
}

fn labels(surface: Surface) -> Labels {
    match surface {
        Surface::P2 => Labels { edge: "4.2", chamber: "4.3", wall: "4.4", first: "H1", second: "H2'", first_key: "in_H1", second_key: "in_H2prime" },
        Surface::Quadric => Labels { edge: "5.2", chamber: "5.3", wall: "5.4", first: "H01", second: "H11", first_key: "in_H01", second_key: "in_H11" },
    }
}

pub fn stability_verdict(curve: &PointedCurve, t: &Rational) -> Result<StabilityVerdict> {
    stability_verdict_with(curve, t, SearchOptions::default())
}

pub fn stability_verdict_with(curve: &PointedCurve, t: &Rational, options: SearchOptions) -> Result<StabilityVerdict> {
    if t.is_negative() {
        return Err(Error::input("slope must be nonnegative"));
    }
    let slopes = wall_slopes(curve.surface, curve.degree)?;
    let position = match (t.cmp(&slopes.wall), t.cmp(&slopes.edge)) {
        (Ordering::Less, _) => SlopePosition::BelowWall,
        (Ordering::Equal, _) => SlopePosition::Wall,
        (_, Ordering::Less) => SlopePosition::Chamber,
        (_, Ordering::Equal) => SlopePosition::Edge,
        _ => SlopePosition::AboveEdge,
    };
    let report = inflection_report(curve)?;
    let l = labels(curve.surface);
    let mut v = StabilityVerdict {
        status: Status::Unknown,
        slope: t.clone(),
        position,
        certificate: None,
        citations: Vec::new(),
        notes: Vec::new(),
        undecided: report.undecided,
    };
    if report.undecided {
        v.notes.push("structural membership undecided; counted as not in S / X0".into());
    }
    let first = report.in_first_divisor();
    let second = report.in_second_divisor();
    let in_s = report.in_S;
    let preds = predicates(&report, &l);
    match position {
        SlopePosition::BelowWall | SlopePosition::AboveEdge => {
            v.notes.push("outside analyzed slopes".into());
            unstable_or_unknown(&mut v, curve, t, options, None)?;
        }
        SlopePosition::Chamber => {
            if first || in_s {
                let cite = format!("{}: in {} ∪ S ({preds})", l.chamber, l.first);
                unstable_or_unknown(&mut v, curve, t, options, Some(cite))?;
            } else {
                v.status = Status::Stable;
                v.citations.push(format!("{}: not in {} ∪ S ({preds})", l.chamber, l.first));
            }
        }
        SlopePosition::Wall => {
            if (first && second) || in_s {
                let cite = format!("{}: in ({} ∩ {}) ∪ S ({preds})", l.wall, l.first, l.second);
                unstable_or_unknown(&mut v, curve, t, options, Some(cite))?;
            } else if first {
                let cite = format!("{}: in {} \\ {}, semistable but not stable ({preds})", l.wall, l.first, l.second);
                semistable_with_zero(&mut v, curve, t, options, cite)?;
            } else {
                let (frame, normalized) = normalize_frame(curve)?;
                let torus = torus_verdict(&normalized, t)?;
                match (torus.sign, torus.witness) {
                    (1, Some(lambda)) => {
                        let mu = mu_min(&normalized, &lambda, t)?;
                        v.status = Status::Unstable;
                        v.notes.push("diagonal destabilizer in the normalized frame".into());
                        v.certificate = Some(Certificate { frame, lambda, mu });
                    }
                    (0, Some(lambda)) => {
                        let mu = mu_min(&normalized, &lambda, t)?;
                        v.status = Status::StrictlySemistable;
                        v.citations.push(format!("{}: not in ({} ∩ {}) ∪ S ({preds})", l.wall, l.first, l.second));
                        v.notes.push("nontrivial subgroup with zero weight in the normalized frame".into());
                        v.certificate = Some(Certificate { frame, lambda, mu });
                    }
                    _ => {
                        v.status = Status::Stable;
                        v.citations.push(format!("{}: not in {} ∪ S ({preds})", l.wall, l.first));
                    }
                }
            }
        }
        SlopePosition::Edge => {
            if !first {
                let cite = format!("{}: not in {}, semistable and never stable at the edge ({preds})", l.edge, l.first);
                semistable_with_zero(&mut v, curve, t, options, cite)?;
            } else {
                let cite = format!("{}: in {} at the edge ({preds})", l.edge, l.first);
                unstable_or_unknown(&mut v, curve, t, options, Some(cite))?;
            }
        }
    }
    Ok(v)
}

fn predicates(r: &InflectionReport, l: &Labels) -> String {
    format!(
        "{}={}, {}={}, in_S={}, in_X0={}",
        l.first_key,
        r.in_first_divisor(),
        l.second_key,
        r.in_second_divisor(),
        r.in_S,
        r.in_X0
    )
}

fn unstable_or_unknown(
    v: &mut StabilityVerdict,
    curve: &PointedCurve,
    t: &Rational,
    options: SearchOptions,
    citation: Option<String>,
) -> Result<()> {
    v.citations.extend(citation);
    match destabilizer_search(curve, t, options)? {
        Some(cert) => {
            v.status = Status::Unstable;
            v.certificate = Some(cert);
        }
        None => {
            v.status = Status::Unknown;
            v.notes.push(format!("no destabilizing subgroup found within {} frames", options.budget));
        }
    }
    Ok(())
}

fn semistable_with_zero(
    v: &mut StabilityVerdict,
    curve: &PointedCurve,
    t: &Rational,
    options: SearchOptions,
    citation: String,
) -> Result<()> {
    let outcome = zero_certificate_search(curve, t, options)?;
    if let Some(cert) = outcome.positive {
        // a sound certificate overrides the characterization
        v.status = Status::Unstable;
        v.notes.push("destabilizer found although the characterization predicts semistability".into());
        v.certificate = Some(cert);
        return Ok(());
    }
    v.status = Status::StrictlySemistable;
    v.citations.push(citation);
    match outcome.zero {
        Some(cert) => {
            debug_assert!(cert.mu.value.is_zero());
            v.certificate = Some(cert);
        }
        None => v.notes.push("no zero-weight subgroup found within the budget".into()),
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::criterion::OneParamSubgroup;
    use crate::curve::{make_witness, WitnessKind};
    use crate::exact::rational::rat;

    fn verdict(kind: WitnessKind, d: u32, t: Rational) -> StabilityVerdict {
        stability_verdict(&make_witness(kind, d).unwrap(), &t).unwrap()
    }

    #[test]
    fn cuspidal_triple() {
        let below = verdict(WitnessKind::P2CuspidalX0, 4, rat(7, 4) - rat(1, 100));
        assert_eq!(below.status, Status::Unstable);
        assert_eq!(below.certificate.unwrap().lambda, OneParamSubgroup::p2(5, -1, -4));
        assert_eq!(verdict(WitnessKind::P2CuspidalX0, 4, rat(7, 4)).status, Status::StrictlySemistable);
        assert_eq!(verdict(WitnessKind::P2CuspidalX0, 4, rat(7, 4) + rat(1, 100)).status, Status::Unstable);
    }

    #[test]
    fn nonflex_stable_in_chamber() {
        let v = verdict(WitnessKind::P2NonFlex, 4, rat(15, 8));
        assert_eq!(v.status, Status::Stable);
        assert!(v.citations[0].starts_with("4.3"));
    }

    #[test]
    fn quadric_x0_triple() {
        assert_eq!(verdict(WitnessKind::QuadricX0, 3, rat(5, 3)).status, Status::StrictlySemistable);
        assert_eq!(verdict(WitnessKind::QuadricX0, 3, rat(5, 3) - rat(1, 100)).status, Status::Unstable);
        assert_eq!(verdict(WitnessKind::QuadricX0, 3, rat(5, 3) + rat(1, 100)).status, Status::Unstable);
    }

    #[test]
    fn json_shape() {
        let v = serde_json::to_value(verdict(WitnessKind::P2Hyperflex, 4, rat(7, 4))).unwrap();
        assert_eq!(v["status"], "Unstable");
        assert!(v["certificate"]["lambda"].is_array());
        let mu = v["certificate"]["mu"].as_str().unwrap();
        assert!(!mu.starts_with('-') && mu != "0", "{mu}");
    }
}
