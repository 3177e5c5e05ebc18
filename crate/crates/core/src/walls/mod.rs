//! Wall and chamber structure per surface and degree, the proposition
//! suite, and classification of wall-semistable curves.

pub mod propositions;

use serde::Serialize;

pub use propositions::{
    eval_degree_expr, run_negative_control, verify_in, verify_proposition, NegativeControlCheck, Outcome,
    PropositionCheck, PropositionTable, FIXTURE_ENV,
};

use crate::criterion::{stabilizer_dimension, stability_verdict, Stabilizer, Status};
use crate::curve::{make_witness, PointedCurve, Surface, WitnessKind};
use crate::error::Result;
use crate::exact::rational::{rat, serde_rational};
use crate::exact::Rational;
use crate::hessian::{first_divisor_class, second_divisor_class, wall_slope, DivisorClass};
use crate::inflection::inflection_report;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WallSlopes {
    #[serde(with = "serde_rational")]
    pub edge: Rational,
    #[serde(with = "serde_rational")]
    pub wall: Rational,
}

/// Edge and wall slopes, from the classes of the two invariant Hessian
/// sections.
pub fn wall_slopes(surface: Surface, d: u32) -> Result<WallSlopes> {
    Ok(WallSlopes {
        edge: wall_slope(&first_divisor_class(surface, d)?)?,
        wall: wall_slope(&second_divisor_class(surface, d)?)?,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Region {
    #[serde(rename = "X_minus")]
    XMinus,
    #[serde(rename = "X_0")]
    X0,
    #[serde(rename = "common")]
    Common,
    #[serde(rename = "not_semistable")]
    NotSemistable,
}

#[allow(non_snake_case)]
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WallClassification {
    pub region: Region,
    /// Membership in `H₁ ∖ H₂′` (resp. `H₀,₁ ∖ H₁,₁`), which contains `X⁰`.
    pub in_X_minus: bool,
    #[serde(with = "serde_rational")]
    pub wall: Rational,
    pub basis: Vec<String>,
    pub undecided: bool,
}

pub fn classify_at_wall(curve: &PointedCurve) -> Result<WallClassification> {
    let wall = wall_slopes(curve.surface, curve.degree)?.wall;
    let r = inflection_report(curve)?;
    let (first, second) = (r.in_first_divisor(), r.in_second_divisor());
    let (h1, h2) = match curve.surface {
        Surface::P2 => ("H1", "H2'"),
        Surface::Quadric => ("H01", "H11"),
    };
    let mut basis = vec![format!("in_{h1}={first}"), format!("in_{h2}={second}"), format!("in_S={}", r.in_S), format!("in_X0={}", r.in_X0)];
    let in_minus = first && !second;
    let region = if (first && second) || r.in_S {
        basis.push(format!("in ({h1} ∩ {h2}) ∪ S"));
        Region::NotSemistable
    } else if r.in_X0 {
        basis.push("closed-orbit configuration".into());
        Region::X0
    } else if in_minus {
        basis.push(format!("in {h1} \\ {h2}"));
        Region::XMinus
    } else {
        basis.push(format!("not in {h1} ∪ S"));
        Region::Common
    };
    if r.undecided {
        basis.push("Undecided: structural membership inconclusive".into());
    }
    Ok(WallClassification { region, in_X_minus: in_minus, wall, basis, undecided: r.undecided })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Characterization {
    pub slopes: String,
    pub semistable: String,
    pub stable: String,
    pub citation: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessTriple {
    pub below: Status,
    pub at: Status,
    pub above: Status,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Contraction {
    pub from: String,
    pub to: String,
    pub contracted_locus: String,
    pub image: String,
    pub isomorphism_elsewhere: bool,
    pub citation: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChamberReport {
    pub surface: Surface,
    pub degree: u32,
    #[serde(with = "serde_rational")]
    pub edge: Rational,
    #[serde(with = "serde_rational")]
    pub wall: Rational,
    pub chamber: [String; 2],
    pub classes: [DivisorClass; 2],
    pub regions: Vec<Characterization>,
    pub x_minus: String,
    pub x0: String,
    pub x0_witness: WitnessKind,
    pub x0_stabilizer: Stabilizer,
    pub x0_verdicts: WitnessTriple,
    pub contraction: Contraction,
}

pub fn chamber_report(surface: Surface, d: u32) -> Result<ChamberReport> {
    let slopes = wall_slopes(surface, d)?;
    let classes = [first_divisor_class(surface, d)?, second_divisor_class(surface, d)?];
    let (edge, wall) = (slopes.edge.clone(), slopes.wall.clone());
    let fmt = crate::exact::format_rational;
    let (h1, h2, ids, witness, x0) = match surface {
        Surface::P2 => (
            "H1",
            "H2'",
            ["4.2", "4.3", "4.4", "4.5", "4.6"],
            WitnessKind::P2CuspidalX0,
            format!("cuspidal cubic + {} x tangent cone at the cusp; p = smooth flex of the cubic", d - 3),
        ),
        Surface::Quadric => (
            "H01",
            "H11",
            ["5.2", "5.3", "5.4", "5.5", "5.6"],
            WitnessKind::QuadricX0,
            format!(
                "smooth (1,2) or (2,1) curve + {} x tangent ruling + {} x other ruling at a ruling-tangency point; p = the other ruling-tangency point",
                d - 1,
                d - 2
            ),
        ),
    };
    let regions = vec![
        Characterization {
            slopes: fmt(&edge),
            semistable: format!("X \\ {h1} (at least)"),
            stable: "empty".into(),
            citation: ids[0].into(),
        },
        Characterization {
            slopes: format!("({}, {})", fmt(&wall), fmt(&edge)),
            semistable: format!("X \\ ({h1} ∪ S)"),
            stable: format!("X \\ ({h1} ∪ S)"),
            citation: ids[1].into(),
        },
        Characterization {
            slopes: fmt(&wall),
            semistable: format!("X \\ (({h1} ∩ {h2}) ∪ S)"),
            stable: format!("⊆ X \\ ({h1} ∪ S)"),
            citation: ids[2].into(),
        },
    ];
    let curve = make_witness(witness, d)?;
    let x0_stabilizer = stabilizer_dimension(&curve)?;
    let step = rat(1, 100);
    let x0_verdicts = WitnessTriple {
        below: stability_verdict(&curve, &(&wall - &step))?.status,
        at: stability_verdict(&curve, &wall)?.status,
        above: stability_verdict(&curve, &(&wall + &step))?.status,
    };
    Ok(ChamberReport {
        surface,
        degree: d,
        chamber: [fmt(&wall), fmt(&edge)],
        edge,
        wall: wall.clone(),
        classes,
        regions,
        x_minus: format!("{h1} \\ {h2}"),
        x0,
        x0_witness: witness,
        x0_stabilizer,
        x0_verdicts,
        contraction: Contraction {
            from: format!("X//({} - e)", fmt(&wall)),
            to: format!("X//{}", fmt(&wall)),
            contracted_locus: format!("{h1} \\ {h2}"),
            image: "point".into(),
            isomorphism_elsewhere: true,
            citation: ids[4].into(),
        },
    })
}
