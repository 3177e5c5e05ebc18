//! Local data at the marked point: affine chart, smoothness, tangent line or
//! ruling contacts, and the normalizing frame.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::curve::PointedCurve;
use super::frame::{apply_frame, FrameChange};
use super::surface::{normalize_point, Surface};
use crate::error::{Error, Result};
use crate::exact::linalg::{inverse, rank, Matrix};
use crate::exact::rational::primitive_integer_vector;
use crate::exact::{Polynomial, Rational};

/// Dehomogenization around the point. On P2 the chart is `x_c = 1` for the
/// first nonzero coordinate `c`; on the quadric it is `x_c = y_c' = 1` per
/// factor. The two remaining coordinates become `p + (u, v)`.
#[derive(Clone, Debug)]
pub struct AffineChart {
    pub surface: Surface,
    pub point: Vec<Rational>,
    /// Homogeneous coordinates set to 1.
    pub fixed: Vec<usize>,
    /// Homogeneous coordinates carrying `u` and `v`.
    pub moving: [usize; 2],
}

impl AffineChart {
    pub fn at(surface: Surface, point: &[Rational]) -> Result<Self> {
        let point = normalize_point(surface, point).ok_or_else(|| Error::input("zero point"))?;
        let mut fixed = Vec::new();
        let mut moving = Vec::new();
        for r in surface.factors() {
            let c = r.clone().find(|&i| !point[i].is_zero()).expect("normalized");
            fixed.push(c);
            moving.extend(r.clone().filter(|&i| i != c));
        }
        Ok(AffineChart { surface, point, fixed, moving: [moving[0], moving[1]] })
    }

    /// Homogeneous coordinates as polynomials in `(u, v)`.
    pub fn coordinate_images(&self) -> Vec<Polynomial> {
        let n = self.surface.nvars();
        (0..n)
            .map(|i| {
                if self.fixed.contains(&i) {
                    Polynomial::one(2)
                } else {
                    let k = if self.moving[0] == i { 0 } else { 1 };
                    &Polynomial::constant(2, self.point[i].clone()) + &Polynomial::var(2, k)
                }
            })
            .collect()
    }

    pub fn to_affine(&self, form: &Polynomial) -> Polynomial {
        form.substitute(&self.coordinate_images())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Contact {
    Finite(u32),
    /// The line is a component of the curve.
    Contained,
}

impl Contact {
    pub fn at_least(self, k: u32) -> bool {
        match self {
            Contact::Finite(c) => c >= k,
            Contact::Contained => true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalGeometry {
    pub smooth_at_p: bool,
    /// Multiplicity of the curve at the point.
    pub multiplicity: u32,
    /// P2 only: tangent line coefficients (primitive integers), if smooth.
    pub tangent: Option<Vec<Rational>>,
    /// Quadric only: contact orders of the ruling `{x = p_x}` and of the
    /// ruling `{y = p_y}` with the curve at the point.
    pub ruling_contacts: Option<[Contact; 2]>,
}

fn lowest_degree(f: &Polynomial) -> Option<u32> {
    f.support().map(|e| e.iter().sum()).min()
}

fn univariate_order(f: &Polynomial) -> Contact {
    match lowest_degree(f) {
        Some(k) => Contact::Finite(k),
        None => Contact::Contained,
    }
}

pub fn local_geometry(curve: &PointedCurve) -> Result<LocalGeometry> {
    let chart = AffineChart::at(curve.surface, &curve.point)?;
    let f = chart.to_affine(&curve.equation);
    let multiplicity = lowest_degree(&f).ok_or_else(|| Error::internal("equation vanishes on the chart"))?;
    let smooth_at_p = multiplicity == 1;
    let tangent = match curve.surface {
        Surface::P2 if smooth_at_p => {
            let grad: Vec<Rational> = curve
                .equation
                .gradient()
                .iter()
                .map(|g| g.evaluate(&chart.point).expect("arity"))
                .collect();
            Some(primitive_line(&grad))
        }
        _ => None,
    };
    let ruling_contacts = match curve.surface {
        Surface::Quadric => {
            let on_x_line = f.specialize(0, &Rational::zero());
            let on_y_line = f.specialize(1, &Rational::zero());
            Some([univariate_order(&on_x_line), univariate_order(&on_y_line)])
        }
        Surface::P2 => None,
    };
    Ok(LocalGeometry { smooth_at_p, multiplicity, tangent, ruling_contacts })
}

/// Primitive integer representative with first nonzero entry positive.
pub fn primitive_line(v: &[Rational]) -> Vec<Rational> {
    let mut ints = primitive_integer_vector(v).expect("nonzero line");
    if ints.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
        ints = ints.into_iter().map(|x| -x).collect();
    }
    ints.into_iter().map(Rational::from_integer).collect()
}

fn unit(n: usize, i: usize) -> Vec<Rational> {
    (0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect()
}

fn independent(vectors: &[Vec<Rational>]) -> bool {
    rank(&vectors.to_vec()) == vectors.len()
}

fn columns_to_matrix(cols: &[Vec<Rational>]) -> Matrix {
    let n = cols[0].len();
    (0..n).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect()
}

fn first_independent_unit(n: usize, taken: &[Vec<Rational>], accept: impl Fn(&[Rational]) -> bool) -> Option<Vec<Rational>> {
    (0..n).map(|j| unit(n, j)).find(|e| {
        let mut all = taken.to_vec();
        all.push(e.clone());
        accept(e) && independent(&all)
    })
}

/// Frame moving the point to `(0,0,1)` (P2) or `(0,1:0,1)` (quadric). On P2
/// a smooth point's tangent goes to `x0 = 0`; on the quadric a tangent
/// ruling goes to `y0 = 0`. The completion to a basis takes the first
/// suitable standard basis vectors, so an already normalized curve gets the
/// identity.
pub fn normalize_frame(curve: &PointedCurve) -> Result<(FrameChange, PointedCurve)> {
    let geo = local_geometry(curve)?;
    let p = normalize_point(curve.surface, &curve.point).ok_or_else(|| Error::input("zero point"))?;
    let frame = match curve.surface {
        Surface::P2 => {
            let (c0, c1) = match &geo.tangent {
                Some(l) => {
                    let on_line = |e: &[Rational]| dot(l, e).is_zero();
                    let c1 = first_independent_unit(3, std::slice::from_ref(&p), on_line).unwrap_or_else(|| {
                        [(0, 1), (0, 2), (1, 2)]
                            .iter()
                            .map(|&(a, b)| {
                                let mut v = vec![Rational::zero(); 3];
                                v[a] = l[b].clone();
                                v[b] = -l[a].clone();
                                v
                            })
                            .find(|v| independent(&[p.clone(), v.clone()]))
                            .expect("tangent line has a second point")
                    });
                    let c0 = first_independent_unit(3, &[], |e| !dot(l, e).is_zero()).expect("line is nonzero");
                    (c0, c1)
                }
                None => {
                    let c0 = first_independent_unit(3, std::slice::from_ref(&p), |_| true).expect("basis");
                    let c1 = first_independent_unit(3, &[p.clone(), c0.clone()], |_| true).expect("basis");
                    (c0, c1)
                }
            };
            let ginv = columns_to_matrix(&[c0, c1, p.clone()]);
            FrameChange::P2 { matrix: inverse(&ginv).ok_or_else(|| Error::internal("normalizing basis is singular"))? }
        }
        Surface::Quadric => {
            let factor = |q: &[Rational]| -> Matrix {
                let c = first_independent_unit(2, &[q.to_vec()], |_| true).expect("basis");
                inverse(&columns_to_matrix(&[c, q.to_vec()])).expect("independent")
            };
            let x = factor(&p[0..2]);
            let y = factor(&p[2..4]);
            let x_line_tangent = geo.smooth_at_p
                && geo.ruling_contacts.is_some_and(|[cx, _]| cx.at_least(2));
            if x_line_tangent {
                // the x-line becomes the y-line after swapping factors
                FrameChange::Quadric { x: y, y: x, swap: true }
            } else {
                FrameChange::Quadric { x, y, swap: false }
            }
        }
    };
    let out = apply_frame(curve, &frame)?;
    Ok((frame, out))
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

pub fn integer_entries(v: &[Rational]) -> Option<Vec<BigInt>> {
    v.iter().map(|x| x.is_integer().then(|| x.to_integer())).collect()
}
