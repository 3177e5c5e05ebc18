//! Exact sign of `sup μ` over the diagonal torus of the current frame.
//!
//! μ is concave and piecewise linear in the weights, so its supremum over
//! the box `|r_i| ≤ 1` is a linear program in `(r0, r1, u, v)`:
//! `u ≤ t·ω(l)` for every point-support entry, `v ≥ ω(e)` for every support
//! monomial, maximize `u − v`. Homogeneity makes the box lossless for the
//! sign.

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::mu::{mu_min, OneParamSubgroup};
use crate::curve::{point_support, PointedCurve, Surface};
use crate::error::{Error, Result};
use crate::exact::rational::{int, primitive_integer_vector};
use crate::exact::{LinearProgram, Rational, Relation};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorusVerdict {
    /// Sign of the supremum of μ over nontrivial diagonal subgroups.
    pub sign: i8,
    /// A subgroup attaining a positive value (sign +1) or the value zero
    /// (sign 0).
    pub witness: Option<OneParamSubgroup>,
}

/// Coordinate weights as linear forms in `(r0, r1)`.
fn weight_forms(surface: Surface) -> Vec<[Rational; 2]> {
    let (o, z, m) = (int(1), int(0), int(-1));
    match surface {
        Surface::P2 => vec![[o.clone(), z.clone()], [z.clone(), o.clone()], [m.clone(), m]],
        Surface::Quadric => vec![[m.clone(), z.clone()], [o.clone(), z.clone()], [z.clone(), m], [z, o]],
    }
}

fn combine(forms: &[[Rational; 2]], coeffs: impl Iterator<Item = (usize, Rational)>) -> [Rational; 2] {
    let mut out = [Rational::zero(), Rational::zero()];
    for (i, c) in coeffs {
        out[0] += &forms[i][0] * &c;
        out[1] += &forms[i][1] * &c;
    }
    out
}

fn base_program(curve: &PointedCurve, t: &Rational) -> LinearProgram {
    let forms = weight_forms(curve.surface);
    let mut lp = LinearProgram::new(4, vec![int(0), int(0), int(1), int(-1)]);
    for entry in point_support(curve.surface, &curve.point) {
        let pw = combine(&forms, entry.iter().map(|&i| (i, Rational::one())));
        // u − t·pw(r) ≤ 0
        lp.add(vec![-(t * &pw[0]), -(t * &pw[1]), int(1), int(0)], Relation::Le, int(0));
    }
    let images: Vec<[Rational; 2]> = curve
        .equation
        .support()
        .map(|e| combine(&forms, e.iter().enumerate().map(|(i, &k)| (i, int(k as i64)))))
        .collect();
    for mw in hull_vertices(images) {
        // v − mw(r) ≥ 0
        lp.add(vec![-mw[0].clone(), -mw[1].clone(), int(0), int(1)], Relation::Ge, int(0));
    }
    let mut bound = |coeffs: Vec<Rational>| {
        lp.add(coeffs.clone(), Relation::Le, int(1));
        lp.add(coeffs, Relation::Ge, int(-1));
    };
    bound(vec![int(1), int(0), int(0), int(0)]);
    bound(vec![int(0), int(1), int(0), int(0)]);
    if curve.surface == Surface::P2 {
        bound(vec![int(1), int(1), int(0), int(0)]);
    }
    lp
}

fn cross(o: &[Rational; 2], a: &[Rational; 2], b: &[Rational; 2]) -> Rational {
    (&a[0] - &o[0]) * (&b[1] - &o[1]) - (&a[1] - &o[1]) * (&b[0] - &o[0])
}

/// Vertices of the convex hull of planar points (monotone chain). A linear
/// function attains its maximum over the points at one of them.
fn hull_vertices(mut pts: Vec<[Rational; 2]>) -> Vec<[Rational; 2]> {
    pts.sort();
    pts.dedup();
    if pts.len() <= 2 {
        return pts;
    }
    let mut lower: Vec<[Rational; 2]> = Vec::new();
    for p in &pts {
        while lower.len() >= 2 && !cross(&lower[lower.len() - 2], &lower[lower.len() - 1], p).is_positive() {
            lower.pop();
        }
        lower.push(p.clone());
    }
    let mut upper: Vec<[Rational; 2]> = Vec::new();
    for p in pts.iter().rev() {
        while upper.len() >= 2 && !cross(&upper[upper.len() - 2], &upper[upper.len() - 1], p).is_positive() {
            upper.pop();
        }
        upper.push(p.clone());
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

fn subgroup_from(surface: Surface, r0: &Rational, r1: &Rational) -> Result<OneParamSubgroup> {
    let full = match surface {
        Surface::P2 => vec![r0.clone(), r1.clone(), -(r0 + r1)],
        Surface::Quadric => vec![r0.clone(), r1.clone()],
    };
    let ints = primitive_integer_vector(&full).ok_or_else(|| Error::internal("zero weight vector"))?;
    OneParamSubgroup::from_big(surface, &ints)
}

pub fn torus_verdict(curve: &PointedCurve, t: &Rational) -> Result<TorusVerdict> {
    let lp = base_program(curve, t);
    let sol = lp.maximize().map_err(|e| Error::internal(format!("torus program: {e}")))?;
    if sol.optimum.is_positive() {
        let lambda = subgroup_from(curve.surface, &sol.vertex[0], &sol.vertex[1])?;
        debug_assert!(mu_min(curve, &lambda, t)?.value.is_positive());
        return Ok(TorusVerdict { sign: 1, witness: Some(lambda) });
    }
    // optimum is 0 (r = 0 is feasible); look for a nonzero r with μ(r) = 0
    let mut zero = lp.clone();
    zero.add(vec![int(0), int(0), int(1), int(-1)], Relation::Ge, int(0));
    for (idx, sign) in [(0, 1), (0, -1), (1, 1), (1, -1)] {
        let mut obj = vec![int(0); 4];
        obj[idx] = int(sign);
        zero.objective = obj;
        let s = zero.maximize().map_err(|e| Error::internal(format!("torus zero program: {e}")))?;
        if s.optimum.is_positive() {
            let lambda = subgroup_from(curve.surface, &s.vertex[0], &s.vertex[1])?;
            return Ok(TorusVerdict { sign: 0, witness: Some(lambda) });
        }
    }
    Ok(TorusVerdict { sign: -1, witness: None })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::{make_witness, normalize_frame, WitnessKind};
    use crate::exact::rational::rat;

    #[test]
    fn flex_is_torus_unstable_in_chamber() {
        let c = make_witness(WitnessKind::P2Flex, 4).unwrap();
        let (_, n) = normalize_frame(&c).unwrap();
        let v = torus_verdict(&n, &rat(15, 8)).unwrap();
        assert_eq!(v.sign, 1);
        assert!(mu_min(&n, &v.witness.unwrap(), &rat(15, 8)).unwrap().value.is_positive());
    }

    #[test]
    fn nonflex_is_torus_stable() {
        let c = make_witness(WitnessKind::P2NonFlex, 4).unwrap();
        let (_, n) = normalize_frame(&c).unwrap();
        assert_eq!(torus_verdict(&n, &rat(15, 8)).unwrap().sign, -1);
    }

    #[test]
    fn hull_keeps_extreme_points() {
        let p = |a: i64, b: i64| [int(a), int(b)];
        let h = hull_vertices(vec![p(0, 0), p(1, 1), p(2, 0), p(1, 0), p(0, 2), p(0, 1), p(1, 0)]);
        assert_eq!(h, vec![p(0, 0), p(2, 0), p(0, 2)]);
        assert_eq!(hull_vertices(vec![p(0, 0), p(1, 1), p(2, 2)]), vec![p(0, 0), p(2, 2)]);
    }

    #[test]
    fn cuspidal_zero_witness() {
        let c = make_witness(WitnessKind::P2CuspidalX0, 4).unwrap();
        let v = torus_verdict(&c, &rat(7, 4)).unwrap();
        assert_eq!(v.sign, 0);
        assert_eq!(v.witness, Some(OneParamSubgroup::p2(4, 1, -5)));
    }
}
