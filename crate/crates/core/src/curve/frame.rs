//! Coordinate changes. A frame `g` moves the point to `g·p` and the
//! equation to `C ∘ g⁻¹`, so incidence is preserved.

use num_traits::Zero;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::curve::PointedCurve;
use super::surface::{normalize_point, Surface};
use crate::error::{Error, Result};
use crate::exact::linalg::{determinant, identity, inverse, mat_mul, mat_vec, Matrix};
use crate::exact::rational::format_rational;
use crate::exact::{Polynomial, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FrameChange {
    P2 {
        matrix: Matrix,
    },
    /// Optionally swap the two factors, then act by `x` on the first and
    /// `y` on the second.
    Quadric {
        x: Matrix,
        y: Matrix,
        swap: bool,
    },
}

impl FrameChange {
    pub fn identity(surface: Surface) -> Self {
        match surface {
            Surface::P2 => FrameChange::P2 { matrix: identity(3) },
            Surface::Quadric => FrameChange::Quadric { x: identity(2), y: identity(2), swap: false },
        }
    }

    pub fn surface(&self) -> Surface {
        match self {
            FrameChange::P2 { .. } => Surface::P2,
            FrameChange::Quadric { .. } => Surface::Quadric,
        }
    }

    pub fn is_identity(&self) -> bool {
        *self == FrameChange::identity(self.surface())
    }

    pub fn check(&self) -> Result<()> {
        let singular = match self {
            FrameChange::P2 { matrix } => !is_square(matrix, 3) || determinant(matrix).is_zero(),
            FrameChange::Quadric { x, y, .. } => {
                !is_square(x, 2) || !is_square(y, 2) || determinant(x).is_zero() || determinant(y).is_zero()
            }
        };
        if singular {
            Err(Error::input("frame matrix is singular or misshapen"))
        } else {
            Ok(())
        }
    }

    /// `self ∘ first`: apply `first`, then `self`.
    pub fn compose(&self, first: &FrameChange) -> Result<FrameChange> {
        match (self, first) {
            (FrameChange::P2 { matrix: h }, FrameChange::P2 { matrix: g }) => {
                Ok(FrameChange::P2 { matrix: mat_mul(h, g) })
            }
            (
                FrameChange::Quadric { x: a2, y: b2, swap: s2 },
                FrameChange::Quadric { x: a1, y: b1, swap: s1 },
            ) => {
                let (x, y) = if *s2 { (mat_mul(a2, b1), mat_mul(b2, a1)) } else { (mat_mul(a2, a1), mat_mul(b2, b1)) };
                Ok(FrameChange::Quadric { x, y, swap: s1 ^ s2 })
            }
            _ => Err(Error::input("cannot compose frames of different surfaces")),
        }
    }

    pub fn inverse(&self) -> Result<FrameChange> {
        self.check()?;
        match self {
            FrameChange::P2 { matrix } => Ok(FrameChange::P2 { matrix: inverse(matrix).expect("checked") }),
            FrameChange::Quadric { x, y, swap } => {
                let xi = inverse(x).expect("checked");
                let yi = inverse(y).expect("checked");
                // (s, A, B)⁻¹ = (s, B⁻¹, A⁻¹) when swapping, (s, A⁻¹, B⁻¹) otherwise
                Ok(if *swap {
                    FrameChange::Quadric { x: yi, y: xi, swap: true }
                } else {
                    FrameChange::Quadric { x: xi, y: yi, swap: false }
                })
            }
        }
    }

    pub fn map_point(&self, p: &[Rational]) -> Vec<Rational> {
        match self {
            FrameChange::P2 { matrix } => mat_vec(matrix, p),
            FrameChange::Quadric { x, y, swap } => {
                let (px, py) = if *swap { (&p[2..4], &p[0..2]) } else { (&p[0..2], &p[2..4]) };
                let mut out = mat_vec(x, px);
                out.extend(mat_vec(y, py));
                out
            }
        }
    }

    /// `C ∘ g⁻¹`.
    pub fn map_equation(&self, c: &Polynomial) -> Result<Polynomial> {
        let inv = self.inverse()?;
        match inv {
            FrameChange::P2 { matrix } => Ok(c.substitute_linear(&matrix)),
            FrameChange::Quadric { x, y, swap } => {
                // g⁻¹(x', y') = swap^s(x·x', y·y') with (x, y, s) taken from g⁻¹
                let lin = |m: &Matrix, i: usize, offset: usize| {
                    Polynomial::from_terms(
                        4,
                        (0..2).map(|j| {
                            let mut e = vec![0; 4];
                            e[offset + j] = 1;
                            (e, m[i][j].clone())
                        }),
                    )
                };
                let (ox, oy) = if swap { (2, 0) } else { (0, 2) };
                let images: Vec<Polynomial> =
                    (0..2).map(|i| lin(&x, i, ox)).chain((0..2).map(|i| lin(&y, i, oy))).collect();
                Ok(c.substitute(&images))
            }
        }
    }
}

fn is_square(m: &Matrix, n: usize) -> bool {
    m.len() == n && m.iter().all(|r| r.len() == n)
}

/// The curve in the new frame; the point is rescaled so the first nonzero
/// coordinate of each factor is 1.
pub fn apply_frame(curve: &PointedCurve, g: &FrameChange) -> Result<PointedCurve> {
    if g.surface() != curve.surface {
        return Err(Error::input("frame and curve live on different surfaces"));
    }
    g.check()?;
    let point = normalize_point(curve.surface, &g.map_point(&curve.point))
        .ok_or_else(|| Error::internal("frame sent the point to zero"))?;
    let equation = g.map_equation(&curve.equation)?;
    Ok(PointedCurve { surface: curve.surface, degree: curve.degree, point, equation })
}

fn matrix_strings(m: &Matrix) -> Vec<Vec<String>> {
    m.iter().map(|r| r.iter().map(format_rational).collect()).collect()
}

impl Serialize for FrameChange {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            FrameChange::P2 { matrix } => {
                let mut st = s.serialize_struct("FrameChange", 2)?;
                st.serialize_field("surface", "p2")?;
                st.serialize_field("matrix", &matrix_strings(matrix))?;
                st.end()
            }
            FrameChange::Quadric { x, y, swap } => {
                let mut st = s.serialize_struct("FrameChange", 4)?;
                st.serialize_field("surface", "quadric")?;
                st.serialize_field("x", &matrix_strings(x))?;
                st.serialize_field("y", &matrix_strings(y))?;
                st.serialize_field("swap", swap)?;
                st.end()
            }
        }
    }
}
