use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::exact::{Exponent, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Surface {
    P2,
    Quadric,
}

impl Surface {
    pub fn nvars(self) -> usize {
        match self {
            Surface::P2 => 3,
            Surface::Quadric => 4,
        }
    }

    pub fn tag(self) -> &'static str {
        match self {
            Surface::P2 => "p2",
            Surface::Quadric => "quadric",
        }
    }

    /// Whether `e` is an exponent of a degree-`d` curve on this surface.
    pub fn exponent_fits(self, e: &[u32], d: u32) -> bool {
        match self {
            Surface::P2 => e.len() == 3 && e.iter().sum::<u32>() == d,
            Surface::Quadric => e.len() == 4 && e[0] + e[1] == d && e[2] + e[3] == d,
        }
    }

    /// All exponents of degree-`d` curves, in lexicographic order.
    pub fn exponents(self, d: u32) -> Vec<Exponent> {
        match self {
            Surface::P2 => monomials_p2(d),
            Surface::Quadric => monomials_quadric(d, d),
        }
    }

    /// Sections of the degree-`m` system: `m[0]` on P2, `(m[0], m[1])` on
    /// the quadric.
    pub fn section_basis(self, m: &[u32]) -> Vec<Exponent> {
        match self {
            Surface::P2 => monomials_p2(m[0]),
            Surface::Quadric => monomials_quadric(m[0], m[1]),
        }
    }

    /// Coordinate index groups that are scaled independently.
    pub fn factors(self) -> &'static [std::ops::Range<usize>] {
        match self {
            Surface::P2 => &[0..3],
            Surface::Quadric => &[0..2, 2..4],
        }
    }
}

impl fmt::Display for Surface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Surface {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s.to_ascii_lowercase().as_str() {
            "p2" => Ok(Surface::P2),
            "quadric" | "p1xp1" => Ok(Surface::Quadric),
            other => Err(Error::input(format!("unknown surface {other:?} (expected p2 or quadric)"))),
        }
    }
}

pub fn monomials_p2(d: u32) -> Vec<Exponent> {
    let mut out = Vec::new();
    for i in 0..=d {
        for j in 0..=d - i {
            out.push(vec![i, j, d - i - j]);
        }
    }
    out
}

pub fn monomials_quadric(d1: u32, d2: u32) -> Vec<Exponent> {
    let mut out = Vec::new();
    for i in 0..=d1 {
        for j in 0..=d2 {
            out.push(vec![i, d1 - i, j, d2 - j]);
        }
    }
    out
}

/// Scales each factor of a point so its first nonzero coordinate is 1.
/// Returns `None` if some factor is zero.
pub fn normalize_point(surface: Surface, p: &[Rational]) -> Option<Vec<Rational>> {
    let mut out = p.to_vec();
    for r in surface.factors() {
        let lead = p[r.clone()].iter().find(|x| !x.is_zero())?.clone();
        if !lead.is_one() {
            for x in &mut out[r.clone()] {
                *x /= &lead;
            }
        }
    }
    Some(out)
}

/// Coordinate indices (P2) or index pairs `(l, m)` (quadric) where the point
/// is nonzero, encoded as the list of coordinate positions that contribute
/// to the point weight: `[l]` on P2, `[l, 2 + m]` on the quadric.
pub fn point_support(surface: Surface, p: &[Rational]) -> Vec<Vec<usize>> {
    match surface {
        Surface::P2 => (0..3).filter(|&l| !p[l].is_zero()).map(|l| vec![l]).collect(),
        Surface::Quadric => {
            let mut out = Vec::new();
            for l in 0..2 {
                for m in 0..2 {
                    if !p[l].is_zero() && !p[2 + m].is_zero() {
                        out.push(vec![l, 2 + m]);
                    }
                }
            }
            out
        }
    }
}
