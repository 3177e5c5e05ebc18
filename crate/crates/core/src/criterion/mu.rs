//! The numerical function μ for diagonal one-parameter subgroups.
//!
//! Sign convention: `μ = t · min_l ω(x_l) − max_e ω(e)`, where `l` runs over
//! the nonzero coordinates of the point and `e` over the support of the
//! equation. A pointed curve is stable iff μ < 0 for every nontrivial
//! subgroup, semistable iff μ ≤ 0.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::curve::{point_support, PointedCurve, Surface};
use crate::error::{Error, Result};
use crate::exact::rational::{format_rational, int};
use crate::exact::{Exponent, Rational};

/// Integer weights: `(r0, r1, r2)` summing to zero on P2; `(r0, r1)` on the
/// quadric, acting on `(x0, x1, y0, y1)` with weights `(−r0, r0, −r1, r1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OneParamSubgroup {
    pub surface: Surface,
    pub weights: Vec<i64>,
}

impl OneParamSubgroup {
    pub fn new(surface: Surface, weights: Vec<i64>) -> Result<Self> {
        let expected = match surface {
            Surface::P2 => 3,
            Surface::Quadric => 2,
        };
        if weights.len() != expected {
            return Err(Error::input(format!(
                "{surface} subgroups take {expected} weights, got {}",
                weights.len()
            )));
        }
        if weights.iter().all(|&w| w == 0) {
            return Err(Error::input("the trivial subgroup has no numerical function"));
        }
        if surface == Surface::P2 && weights.iter().sum::<i64>() != 0 {
            return Err(Error::input("P2 weights must sum to zero"));
        }
        Ok(OneParamSubgroup { surface, weights })
    }

    pub fn p2(r0: i64, r1: i64, r2: i64) -> Self {
        Self::new(Surface::P2, vec![r0, r1, r2]).expect("valid P2 weights")
    }

    pub fn quadric(r0: i64, r1: i64) -> Self {
        Self::new(Surface::Quadric, vec![r0, r1]).expect("valid quadric weights")
    }

    /// From big integers, as produced by clearing LP denominators.
    pub fn from_big(surface: Surface, weights: &[BigInt]) -> Result<Self> {
        let w: Option<Vec<i64>> = weights.iter().map(ToPrimitive::to_i64).collect();
        Self::new(surface, w.ok_or_else(|| Error::internal("subgroup weight overflows i64"))?)
    }

    /// Weight of each homogeneous coordinate.
    pub fn coordinate_weights(&self) -> Vec<Rational> {
        match self.surface {
            Surface::P2 => self.weights.iter().map(|&w| int(w)).collect(),
            Surface::Quadric => {
                let (r0, r1) = (self.weights[0], self.weights[1]);
                vec![int(-r0), int(r0), int(-r1), int(r1)]
            }
        }
    }

    pub fn scaled(&self, k: i64) -> Self {
        OneParamSubgroup { surface: self.surface, weights: self.weights.iter().map(|w| w * k).collect() }
    }

    pub fn negated(&self) -> Self {
        self.scaled(-1)
    }
}

impl fmt::Display for OneParamSubgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w: Vec<String> = self.coordinate_weights().iter().map(format_rational).collect();
        write!(f, "({})", w.join(","))
    }
}

impl Serialize for OneParamSubgroup {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.weights.serialize(s)
    }
}

pub fn monomial_weight(weights: &[Rational], e: &[u32]) -> Rational {
    weights.iter().zip(e).fold(Rational::zero(), |acc, (w, &k)| acc + w * Rational::from(BigInt::from(k)))
}

/// Weight of a point-support entry (a coordinate, or a pair of coordinates on
/// the quadric).
pub fn point_weight(weights: &[Rational], entry: &[usize]) -> Rational {
    entry.iter().fold(Rational::zero(), |acc, &i| acc + &weights[i])
}

/// `t · ω(point entry) − ω(monomial)`.
pub fn term_mu(weights: &[Rational], entry: &[usize], e: &[u32], t: &Rational) -> Rational {
    t * point_weight(weights, entry) - monomial_weight(weights, e)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MuValue {
    pub value: Rational,
    pub monomial: Exponent,
    /// Coordinate indices of the achieving point-support entry.
    pub coordinate: Vec<usize>,
}

impl Serialize for MuValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("MuValue", 3)?;
        st.serialize_field("mu", &format_rational(&self.value))?;
        st.serialize_field("monomial", &self.monomial)?;
        st.serialize_field("coordinate", &self.coordinate)?;
        st.end()
    }
}

/// `min` over the point support and the equation support of the per-term μ,
/// with an achieving pair (first in lexicographic order among ties).
pub fn mu_min(curve: &PointedCurve, lambda: &OneParamSubgroup, t: &Rational) -> Result<MuValue> {
    if lambda.surface != curve.surface {
        return Err(Error::input("subgroup and curve live on different surfaces"));
    }
    if lambda.weights.iter().all(|&w| w == 0) {
        return Err(Error::input("the trivial subgroup has no numerical function"));
    }
    let w = lambda.coordinate_weights();
    let entries = point_support(curve.surface, &curve.point);
    let (coordinate, pw) = entries
        .iter()
        .map(|l| (l.clone(), point_weight(&w, l)))
        .min_by(|a, b| a.1.cmp(&b.1))
        .ok_or_else(|| Error::input("point is zero"))?;
    let mut best: Option<(Exponent, Rational)> = None;
    for e in curve.equation.support() {
        let m = monomial_weight(&w, e);
        if best.as_ref().is_none_or(|(_, b)| m > *b) {
            best = Some((e.clone(), m));
        }
    }
    let (monomial, mw) = best.ok_or_else(|| Error::input("equation is zero"))?;
    Ok(MuValue { value: t * pw - mw, monomial, coordinate })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::{make_witness, WitnessKind};
    use crate::exact::rational::rat;
    use crate::exact::Polynomial;

    #[test]
    fn edge_value_for_tangent_subgroup() {
        let c = PointedCurve::new(
            Surface::P2,
            4,
            vec![int(0), int(0), int(1)],
            Polynomial::from_int_terms(3, &[(&[1, 0, 3], 1), (&[0, 2, 2], 1)]),
        )
        .unwrap();
        let lambda = OneParamSubgroup::p2(-1, 0, 1);
        assert_eq!(mu_min(&c, &lambda, &int(2)).unwrap().value, int(0));
        assert_eq!(mu_min(&c, &lambda.scaled(2), &int(2)).unwrap().value, int(0));
    }

    #[test]
    fn hyperflex_values() {
        let c = make_witness(WitnessKind::P2Hyperflex, 4).unwrap();
        let t = rat(7, 4);
        let lambda = OneParamSubgroup::p2(-11, 3, 8);
        let m = mu_min(&c, &lambda, &t).unwrap();
        assert_eq!(m.value, int(1));
        assert_eq!(m.monomial, vec![1, 0, 3]);
        assert_eq!(mu_min(&c, &lambda.scaled(2), &t).unwrap().value, int(2));
        let w = lambda.coordinate_weights();
        assert_eq!(term_mu(&w, &[2], &[0, 4, 0], &t), int(2));
    }

    #[test]
    fn quadric_term() {
        let lambda = OneParamSubgroup::quadric(1, 1);
        let w = lambda.coordinate_weights();
        assert_eq!(term_mu(&w, &[1, 3], &[1, 2, 0, 3], &int(2)), int(0));
    }

    #[test]
    fn invalid_subgroups() {
        assert!(OneParamSubgroup::new(Surface::P2, vec![0, 0, 0]).is_err());
        assert!(OneParamSubgroup::new(Surface::P2, vec![1, 0, 0]).is_err());
        assert!(OneParamSubgroup::new(Surface::Quadric, vec![1, 0, 0]).is_err());
    }
}
