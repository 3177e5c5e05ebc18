//! Diagonal subgroups fixing a pointed curve projectively.

use num_traits::{Signed, Zero};
use serde::Serialize;

use super::mu::OneParamSubgroup;
use crate::curve::{PointedCurve, Surface};
use crate::error::{Error, Result};
use crate::exact::linalg::nullspace;
use crate::exact::rational::{int, primitive_integer_vector};
use crate::exact::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Stabilizer {
    pub dimension: usize,
    pub generator: Option<OneParamSubgroup>,
}

fn torus_fixed(curve: &PointedCurve) -> bool {
    curve.surface.factors().iter().all(|r| curve.point[r.clone()].iter().filter(|x| !x.is_zero()).count() == 1)
}

/// Solves "every support monomial has the same weight" over the subgroup
/// parameters. The point must already be a coordinate point.
pub fn stabilizer_dimension(curve: &PointedCurve) -> Result<Stabilizer> {
    if !torus_fixed(curve) {
        return Err(Error::input("point is not fixed by the diagonal torus; normalize the frame first"));
    }
    let support: Vec<_> = curve.equation.support().cloned().collect();
    // weight of monomial e as a row over the unknowns
    let row = |e: &[u32]| -> Vec<Rational> {
        match curve.surface {
            Surface::P2 => e.iter().map(|&k| int(k as i64)).collect(),
            Surface::Quadric => vec![int(e[1] as i64 - e[0] as i64), int(e[3] as i64 - e[2] as i64)],
        }
    };
    let ncols = match curve.surface {
        Surface::P2 => 3,
        Surface::Quadric => 2,
    };
    let mut system: Vec<Vec<Rational>> = Vec::new();
    if curve.surface == Surface::P2 {
        system.push(vec![int(1); 3]);
    }
    let base = row(&support[0]);
    for e in &support[1..] {
        system.push(row(e).iter().zip(&base).map(|(a, b)| a - b).collect());
    }
    let basis = nullspace(&system, ncols);
    let generator = if basis.len() == 1 {
        let mut ints = primitive_integer_vector(&basis[0]).expect("basis vector is nonzero");
        let lead_negative = ints.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative());
        if lead_negative {
            ints = ints.into_iter().map(|x| -x).collect();
        }
        Some(OneParamSubgroup::from_big(curve.surface, &ints)?)
    } else {
        None
    };
    Ok(Stabilizer { dimension: basis.len(), generator })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::{make_witness, WitnessKind};

    #[test]
    fn witness_stabilizers() {
        let c = make_witness(WitnessKind::P2CuspidalX0, 4).unwrap();
        let s = stabilizer_dimension(&c).unwrap();
        assert_eq!(s.dimension, 1);
        assert_eq!(s.generator, Some(OneParamSubgroup::p2(4, 1, -5)));

        let q = make_witness(WitnessKind::QuadricX0, 3).unwrap();
        let s = stabilizer_dimension(&q).unwrap();
        assert_eq!(s.dimension, 1);
        assert_eq!(s.generator.unwrap().coordinate_weights(), vec![int(-1), int(1), int(-2), int(2)]);
    }

    #[test]
    fn non_fixed_point_rejected() {
        let c = make_witness(WitnessKind::P2S, 4).unwrap();
        assert!(stabilizer_dimension(&c).is_err());
    }
}
