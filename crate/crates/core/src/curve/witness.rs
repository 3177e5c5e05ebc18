//! Fixed representatives of the special configurations.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use super::curve::PointedCurve;
use super::surface::Surface;
use crate::error::{Error, Result};
use crate::exact::rational::int;
use crate::exact::Polynomial;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum WitnessKind {
    P2S,
    P2CuspidalX0,
    P2Hyperflex,
    P2Flex,
    P2NonFlex,
    QuadricS,
    QuadricX0,
    QuadricRulingTangent,
}

impl WitnessKind {
    pub const ALL: [WitnessKind; 8] = [
        WitnessKind::P2S,
        WitnessKind::P2CuspidalX0,
        WitnessKind::P2Hyperflex,
        WitnessKind::P2Flex,
        WitnessKind::P2NonFlex,
        WitnessKind::QuadricS,
        WitnessKind::QuadricX0,
        WitnessKind::QuadricRulingTangent,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            WitnessKind::P2S => "P2_S",
            WitnessKind::P2CuspidalX0 => "P2_CuspidalX0",
            WitnessKind::P2Hyperflex => "P2_Hyperflex",
            WitnessKind::P2Flex => "P2_Flex",
            WitnessKind::P2NonFlex => "P2_NonFlex",
            WitnessKind::QuadricS => "Quadric_S",
            WitnessKind::QuadricX0 => "Quadric_X0",
            WitnessKind::QuadricRulingTangent => "Quadric_RulingTangent",
        }
    }

    /// Command-line spelling, e.g. `quadric-x0`.
    pub fn cli_name(self) -> &'static str {
        match self {
            WitnessKind::P2S => "p2-s",
            WitnessKind::P2CuspidalX0 => "p2-cuspidal-x0",
            WitnessKind::P2Hyperflex => "p2-hyperflex",
            WitnessKind::P2Flex => "p2-flex",
            WitnessKind::P2NonFlex => "p2-nonflex",
            WitnessKind::QuadricS => "quadric-s",
            WitnessKind::QuadricX0 => "quadric-x0",
            WitnessKind::QuadricRulingTangent => "quadric-ruling-tangent",
        }
    }

    pub fn surface(self) -> Surface {
        match self {
            WitnessKind::QuadricS | WitnessKind::QuadricX0 | WitnessKind::QuadricRulingTangent => Surface::Quadric,
            _ => Surface::P2,
        }
    }

    pub fn fixed_degree(self) -> Option<u32> {
        match self {
            WitnessKind::P2Hyperflex | WitnessKind::P2Flex | WitnessKind::P2NonFlex => Some(4),
            _ => None,
        }
    }
}

impl fmt::Display for WitnessKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl Serialize for WitnessKind {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.tag())
    }
}

fn squash(s: &str) -> String {
    s.chars().filter(char::is_ascii_alphanumeric).collect::<String>().to_ascii_lowercase()
}

impl FromStr for WitnessKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let key = squash(s);
        WitnessKind::ALL
            .into_iter()
            .find(|k| squash(k.tag()) == key)
            .ok_or_else(|| Error::input(format!("unknown witness kind {s:?}")))
    }
}

fn p2_curve(d: u32, point: [i64; 3], eq: Polynomial) -> PointedCurve {
    PointedCurve::new(Surface::P2, d, point.iter().map(|&x| int(x)).collect(), eq).expect("witness is valid")
}

fn quadric_curve(d: u32, eq: Polynomial) -> PointedCurve {
    PointedCurve::new(Surface::Quadric, d, vec![int(0), int(1), int(0), int(1)], eq).expect("witness is valid")
}

fn mono(e: &[u32]) -> Polynomial {
    Polynomial::from_int_terms(e.len(), &[(e, 1)])
}

pub fn make_witness(kind: WitnessKind, d: u32) -> Result<PointedCurve> {
    if d < 3 {
        return Err(Error::input(format!("witnesses need degree at least 3, got {d}")));
    }
    if let Some(fixed) = kind.fixed_degree() {
        if d != fixed {
            return Err(Error::input(format!("{kind} is only defined in degree {fixed}")));
        }
    }
    let p = |t: &[(&[u32], i64)]| Polynomial::from_int_terms(3, t);
    let q = |t: &[(&[u32], i64)]| Polynomial::from_int_terms(4, t);
    Ok(match kind {
        WitnessKind::P2S => {
            let conic = p(&[(&[1, 0, 1], 1), (&[0, 2, 0], -1)]);
            p2_curve(d, [1, 1, 1], &mono(&[0, 0, d - 2]) * &conic)
        }
        WitnessKind::P2CuspidalX0 => {
            let cubic = p(&[(&[0, 3, 0], 1), (&[2, 0, 1], 1)]);
            p2_curve(d, [1, 0, 0], &mono(&[d - 3, 0, 0]) * &cubic)
        }
        WitnessKind::P2Hyperflex => p2_curve(4, [0, 0, 1], p(&[(&[1, 0, 3], 1), (&[0, 4, 0], 1)])),
        WitnessKind::P2Flex => p2_curve(4, [0, 0, 1], p(&[(&[0, 3, 1], 1), (&[1, 0, 3], 1)])),
        WitnessKind::P2NonFlex => p2_curve(
            4,
            [0, 0, 1],
            p(&[(&[0, 1, 3], 1), (&[2, 0, 2], 1), (&[4, 0, 0], 1), (&[0, 4, 0], 1)]),
        ),
        WitnessKind::QuadricS => {
            let conic = q(&[(&[1, 0, 0, 1], 1), (&[0, 1, 1, 0], -1)]);
            quadric_curve(d, &conic * &mono(&[0, d - 1, 0, d - 1]))
        }
        WitnessKind::QuadricX0 => {
            let k = q(&[(&[2, 0, 0, 1], 1), (&[0, 2, 1, 0], 1)]);
            quadric_curve(d, &mono(&[0, d - 2, 0, d - 1]) * &k)
        }
        WitnessKind::QuadricRulingTangent => {
            quadric_curve(d, q(&[(&[1, d - 1, 0, d], 1), (&[0, d, 2, d - 2], 1)]))
        }
    })
}

/// A plane curve of degree `d` whose marked point is a smooth point with
/// tangent contact at least 4: `x0 x2^{d-1} + x1^4 x2^{d-4}` for `d ≥ 4`,
/// and a line plus a conic (the line being the tangent) for `d = 3`.
pub fn hyperflex_curve(d: u32) -> Result<PointedCurve> {
    if d < 3 {
        return Err(Error::input(format!("degree {d} is below 3")));
    }
    let eq = if d >= 4 {
        Polynomial::from_int_terms(3, &[(&[1, 0, d - 1], 1), (&[0, 4, d - 4], 1)])
    } else {
        Polynomial::from_int_terms(3, &[(&[3, 0, 0], 1), (&[1, 2, 0], 1), (&[1, 0, 2], 1)])
    };
    Ok(p2_curve(d, [0, 0, 1], eq))
}
