//! Frame search for destabilizing (or zero-weight) diagonal subgroups.
//!
//! A certificate is a frame `F` and a subgroup `λ` with `μ_min` of
//! `apply_frame(curve, F)` positive (or zero), re-evaluated exactly. Not
//! finding one proves nothing.

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::mu::{mu_min, MuValue, OneParamSubgroup};
use super::torus::torus_verdict;
use crate::curve::{apply_frame, normalize_frame, FrameChange, PointedCurve, Surface};
use crate::error::{Error, Result};
use crate::exact::linalg::{determinant, identity, inverse, nullspace, rank, Matrix};
use crate::exact::rational::{format_rational, int};
use crate::exact::Rational;
use crate::inflection::special_locus_membership;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub frame: FrameChange,
    pub lambda: OneParamSubgroup,
    pub mu: MuValue,
}

impl Serialize for Certificate {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Certificate", 5)?;
        st.serialize_field("frame", &self.frame)?;
        st.serialize_field("lambda", &self.lambda)?;
        st.serialize_field("mu", &format_rational(&self.mu.value))?;
        st.serialize_field("monomial", &self.mu.monomial)?;
        st.serialize_field("coordinate", &self.mu.coordinate)?;
        st.end()
    }
}

impl Certificate {
    /// Exact re-evaluation on the original curve.
    pub fn recompute(&self, curve: &PointedCurve, t: &Rational) -> Result<Rational> {
        let moved = apply_frame(curve, &self.frame)?;
        Ok(mu_min(&moved, &self.lambda, t)?.value)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    /// Total number of frames examined.
    pub budget: usize,
    pub seed: u64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { budget: 500, seed: 0 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOutcome {
    pub positive: Option<Certificate>,
    pub zero: Option<Certificate>,
    pub frames_tried: usize,
}

fn catalog(surface: Surface) -> Vec<OneParamSubgroup> {
    let base: Vec<OneParamSubgroup> = match surface {
        Surface::P2 => [(-1, 0, 1), (-5, 1, 4), (-1, -1, 2), (5, -1, -4)]
            .iter()
            .map(|&(a, b, c)| OneParamSubgroup::p2(a, b, c))
            .collect(),
        Surface::Quadric => {
            [(1, 1), (1, 2), (-1, -1), (11, 20), (9, 20)].iter().map(|&(a, b)| OneParamSubgroup::quadric(a, b)).collect()
        }
    };
    let mut all = base.clone();
    for l in base {
        let n = l.negated();
        if !all.contains(&n) {
            all.push(n);
        }
    }
    all
}

fn permutation(perm: [usize; 3]) -> FrameChange {
    let matrix = (0..3).map(|i| (0..3).map(|j| if perm[i] == j { int(1) } else { int(0) }).collect()).collect();
    FrameChange::P2 { matrix }
}

const PERMUTATIONS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

fn swap_frame() -> FrameChange {
    FrameChange::Quadric { x: identity(2), y: identity(2), swap: true }
}

/// Variants of a frame: coordinate permutations on P2, the factor swap on
/// the quadric.
fn relabelings(base: &FrameChange) -> Result<Vec<FrameChange>> {
    Ok(match base.surface() {
        Surface::P2 => PERMUTATIONS.iter().map(|&p| permutation(p).compose(base)).collect::<Result<_>>()?,
        Surface::Quadric => vec![base.clone(), swap_frame().compose(base)?],
    })
}

fn columns(cols: &[Vec<Rational>]) -> Matrix {
    (0..cols[0].len()).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect()
}

fn unit(n: usize, i: usize) -> Vec<Rational> {
    (0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect()
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

/// Frame sending the S tangency point to a coordinate vertex with the
/// multiple line becoming a coordinate line (P2) or to `(1,0:1,0)` (quadric).
fn s_adapted_frame(curve: &PointedCurve) -> Result<Option<FrameChange>> {
    let loci = special_locus_membership(curve)?;
    let Some(details) = loci.s.filter(|_| loci.in_s.holds()) else {
        return Ok(None);
    };
    let q = details.point;
    Ok(match curve.surface {
        Surface::P2 => {
            let line = line_through_equation(curve, &q);
            let Some(line) = line else { return Ok(None) };
            let c1 = nullspace(&vec![line.clone()], 3).into_iter().find(|v| rank(&vec![q.clone(), v.clone()]) == 2);
            let c0 = (0..3).map(|j| unit(3, j)).find(|e| !dot(&line, e).is_zero());
            match (c0, c1) {
                (Some(c0), Some(c1)) => inverse(&columns(&[c0, c1, q.clone()])).map(|matrix| FrameChange::P2 { matrix }),
                _ => None,
            }
        }
        Surface::Quadric => {
            let factor = |v: &[Rational]| -> Option<Matrix> {
                let c = (0..2).map(|j| unit(2, j)).find(|e| rank(&vec![v.to_vec(), e.clone()]) == 2)?;
                inverse(&columns(&[v.to_vec(), c]))
            };
            match (factor(&q[0..2]), factor(&q[2..4])) {
                (Some(x), Some(y)) => Some(FrameChange::Quadric { x, y, swap: false }),
                _ => None,
            }
        }
    })
}

/// The multiple line of an S configuration, as coefficients.
fn line_through_equation(curve: &PointedCurve, q: &[Rational]) -> Option<Vec<Rational>> {
    let lines = crate::exact::factor::linear_factors_p2(&curve.equation)?;
    let (l, _) = lines.into_iter().max_by_key(|(_, k)| *k)?;
    let c: Vec<Rational> = (0..3)
        .map(|i| {
            let mut e = vec![0; 3];
            e[i] = 1;
            l.coefficient(&e)
        })
        .collect();
    dot(&c, q).is_zero().then_some(c)
}

fn random_matrix(rng: &mut ChaCha8Rng, n: usize) -> Matrix {
    loop {
        let m: Matrix = (0..n).map(|_| (0..n).map(|_| int(rng.gen_range(-3..=3))).collect()).collect();
        if !determinant(&m).is_zero() {
            return m;
        }
    }
}

/// Random matrix fixing the last basis vector up to scale.
fn random_fixing_matrix(rng: &mut ChaCha8Rng, n: usize) -> Matrix {
    loop {
        let mut m = random_matrix(rng, n);
        for row in m.iter_mut().take(n - 1) {
            row[n - 1] = Rational::zero();
        }
        if m[n - 1][n - 1].is_zero() {
            m[n - 1][n - 1] = int(1);
        }
        if !determinant(&m).is_zero() {
            return m;
        }
    }
}

fn random_frame(rng: &mut ChaCha8Rng, surface: Surface, normalized: &FrameChange) -> Result<FrameChange> {
    let general = rng.gen_bool(0.25);
    match surface {
        Surface::P2 => {
            if general {
                Ok(FrameChange::P2 { matrix: random_matrix(rng, 3) })
            } else {
                FrameChange::P2 { matrix: random_fixing_matrix(rng, 3) }.compose(normalized)
            }
        }
        Surface::Quadric => {
            let swap = rng.gen_bool(0.5);
            if general {
                Ok(FrameChange::Quadric { x: random_matrix(rng, 2), y: random_matrix(rng, 2), swap })
            } else {
                let h = FrameChange::Quadric { x: random_fixing_matrix(rng, 2), y: random_fixing_matrix(rng, 2), swap };
                h.compose(normalized)
            }
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Goal {
    Positive,
    Zero,
}

fn search(curve: &PointedCurve, t: &Rational, options: SearchOptions, goal: Goal) -> Result<SearchOutcome> {
    if options.budget == 0 {
        return Err(Error::input("search budget must be at least 1"));
    }
    if t.is_negative() {
        return Err(Error::input("slope must be nonnegative"));
    }
    let surface = curve.surface;
    let (normalized, _) = normalize_frame(curve)?;
    let mut structured = relabelings(&normalized)?;
    structured.extend(relabelings(&FrameChange::identity(surface))?);
    if let Some(f) = s_adapted_frame(curve)? {
        structured.extend(relabelings(&f)?);
    }
    let mut seen: Vec<FrameChange> = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
    let lambdas = catalog(surface);
    let mut outcome = SearchOutcome { positive: None, zero: None, frames_tried: 0 };
    let mut queue = structured.into_iter();
    let mut attempts = 0usize;
    while outcome.frames_tried < options.budget {
        let frame = match queue.next() {
            Some(f) => f,
            None => {
                attempts += 1;
                if attempts > 20 * options.budget {
                    break;
                }
                random_frame(&mut rng, surface, &normalized)?
            }
        };
        if seen.contains(&frame) {
            continue;
        }
        seen.push(frame.clone());
        outcome.frames_tried += 1;
        let moved = apply_frame(curve, &frame)?;
        let mut candidates: Vec<OneParamSubgroup> = lambdas.clone();
        let torus = torus_verdict(&moved, t)?;
        if let Some(w) = torus.witness {
            candidates.push(w);
        }
        for lambda in candidates {
            let mu = mu_min(&moved, &lambda, t)?;
            let cert = || Certificate { frame: frame.clone(), lambda: lambda.clone(), mu: mu.clone() };
            if mu.value.is_positive() {
                let c = cert();
                debug_assert!(c.recompute(curve, t)?.is_positive());
                outcome.positive = Some(c);
                return Ok(outcome);
            }
            if goal == Goal::Zero && mu.value.is_zero() && outcome.zero.is_none() {
                outcome.zero = Some(cert());
            }
        }
        if goal == Goal::Zero && outcome.zero.is_some() {
            return Ok(outcome);
        }
    }
    Ok(outcome)
}

/// Frame and diagonal subgroup with `μ_min > 0`, if one is found within the
/// budget. Search order: the normalized frame, structured frames (coordinate
/// relabelings, the identity, an S-adapted frame), then seeded random frames.
pub fn destabilizer_search(curve: &PointedCurve, t: &Rational, options: SearchOptions) -> Result<Option<Certificate>> {
    Ok(search(curve, t, options, Goal::Positive)?.positive)
}

/// Like [`destabilizer_search`], but stops at the first frame offering a
/// nontrivial subgroup with `μ_min = 0`; a positive find still wins.
pub fn zero_certificate_search(curve: &PointedCurve, t: &Rational, options: SearchOptions) -> Result<SearchOutcome> {
    search(curve, t, options, Goal::Zero)
}
