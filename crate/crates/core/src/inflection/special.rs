//! Structural recognition of the boundary configuration S and of the
//! closed-orbit configuration X⁰, by squarefree and linear-factor analysis.

use num_traits::Zero;
use serde::Serialize;

use super::classical::{hessian_determinant, hessian_matrix};
use super::sequence::{inflection_weight, vanishing_sequence_of_form};
use crate::curve::{normalize_point, PointedCurve, Surface};
use crate::error::Result;
use crate::exact::factor::{linear_factors_p2, ruling_factors_quadric};
use crate::exact::linalg::{determinant, nullspace, rank};
use crate::exact::{squarefree_decompose, Polynomial, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Membership {
    Yes,
    No,
    /// Factorization over the rationals was inconclusive.
    Undecided,
}

impl Membership {
    pub fn holds(self) -> bool {
        self == Membership::Yes
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpecialDetails {
    /// Distinguished point: the tangency point `q` for S, the cusp (P2) or
    /// the corner `r` (quadric) for X⁰.
    #[serde(with = "crate::exact::rational::serde_rational_vec")]
    pub point: Vec<Rational>,
    /// Multiple line components, rendered.
    pub lines: Vec<String>,
    /// The residual curve component, rendered.
    pub residual: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpecialLoci {
    pub in_s: Membership,
    pub in_x0: Membership,
    pub s: Option<SpecialDetails>,
    pub x0: Option<SpecialDetails>,
    pub notes: Vec<String>,
}

pub fn special_locus_membership(curve: &PointedCurve) -> Result<SpecialLoci> {
    let mut notes = Vec::new();
    let (in_s, s) = match curve.surface {
        Surface::P2 => p2_s(curve, &mut notes)?,
        Surface::Quadric => quadric_s(curve, &mut notes)?,
    };
    let (in_x0, x0) = match curve.surface {
        Surface::P2 => p2_x0(curve, &mut notes)?,
        Surface::Quadric => quadric_x0(curve, &mut notes)?,
    };
    Ok(SpecialLoci { in_s, in_x0, s, x0, notes })
}

type Found = (Membership, Option<SpecialDetails>);

fn no() -> Result<Found> {
    Ok((Membership::No, None))
}

fn undecided(notes: &mut Vec<String>, what: &str) -> Result<Found> {
    notes.push(format!("{what}: rational factorization inconclusive"));
    Ok((Membership::Undecided, None))
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

fn line_coeffs(l: &Polynomial) -> Vec<Rational> {
    let n = l.nvars();
    (0..n)
        .map(|i| {
            let mut e = vec![0; n];
            e[i] = 1;
            l.coefficient(&e)
        })
        .collect()
}

fn same_point(surface: Surface, a: &[Rational], b: &[Rational]) -> bool {
    normalize_point(surface, a) == normalize_point(surface, b)
}

fn eval(f: &Polynomial, p: &[Rational]) -> Rational {
    f.evaluate(p).expect("arity matches")
}

/// Constant matrix of second partials of a quadratic form.
fn quadratic_matrix(q: &Polynomial) -> Vec<Vec<Rational>> {
    let grad = q.gradient();
    grad.iter()
        .map(|g| g.gradient().iter().map(|h| h.coefficient(&vec![0; q.nvars()])).collect())
        .collect()
}

fn bilinear(m: &[Vec<Rational>], a: &[Rational], b: &[Rational]) -> Rational {
    let mb: Vec<Rational> = m.iter().map(|row| dot(row, b)).collect();
    dot(a, &mb)
}

fn p2_s(curve: &PointedCurve, notes: &mut Vec<String>) -> Result<Found> {
    let d = curve.degree;
    let Some(lines) = linear_factors_p2(&curve.equation) else {
        return undecided(notes, "S");
    };
    let [(l, k)] = lines.as_slice() else {
        return no();
    };
    if *k != d - 2 {
        return no();
    }
    let q_form = curve.equation.div_exact(&l.pow(d - 2)).expect("multiplicity divides");
    if !q_form.is_homogeneous_of(2) {
        return no();
    }
    let m = quadratic_matrix(&q_form);
    if determinant(&m).is_zero() {
        return no();
    }
    let lc = line_coeffs(l);
    let basis = nullspace(&vec![lc.clone()], 3);
    let (a, b) = (&basis[0], &basis[1]);
    let qa = bilinear(&m, a, a);
    let qb = bilinear(&m, b, b);
    let cross = bilinear(&m, a, b) * Rational::from_integer(2.into());
    // Q(s a + u b) ∝ qa s² + cross s u + qb u²
    if !(&cross * &cross - Rational::from_integer(4.into()) * &qa * &qb).is_zero() {
        return no();
    }
    let q: Vec<Rational> = if qa.is_zero() {
        a.clone()
    } else {
        a.iter().zip(b).map(|(x, y)| -(&cross * x) + Rational::from_integer(2.into()) * &qa * y).collect()
    };
    let q = normalize_point(Surface::P2, &q).expect("tangency point is nonzero");
    if same_point(Surface::P2, &q, &curve.point) {
        return no();
    }
    if eval(&q_form, &curve.point).is_zero() {
        notes.push("S: marked point lies on the conic".into());
    } else {
        notes.push("S: marked point lies on the multiple line".into());
    }
    Ok((
        Membership::Yes,
        Some(SpecialDetails { point: q, lines: vec![l.to_string()], residual: q_form.to_string() }),
    ))
}

/// Point of P1 cut out by a ruling form `a·z0 + b·z1` in variables `i, i+1`.
fn ruling_root(form: &Polynomial, first: usize) -> Vec<Rational> {
    let c = line_coeffs(form);
    vec![c[first + 1].clone(), -c[first].clone()]
}

fn quadric_s(curve: &PointedCurve, notes: &mut Vec<String>) -> Result<Found> {
    let d = curve.degree;
    let Some((xs, ys)) = ruling_factors_quadric(&curve.equation) else {
        return undecided(notes, "S");
    };
    let ([(x, kx)], [(y, ky)]) = (xs.as_slice(), ys.as_slice()) else {
        return no();
    };
    if *kx != d - 1 || *ky != d - 1 {
        return no();
    }
    let rest = curve.equation.div_exact(&(&x.pow(d - 1) * &y.pow(d - 1))).expect("multiplicities divide");
    let m = vec![
        vec![rest.coefficient(&[1, 0, 1, 0]), rest.coefficient(&[1, 0, 0, 1])],
        vec![rest.coefficient(&[0, 1, 1, 0]), rest.coefficient(&[0, 1, 0, 1])],
    ];
    if determinant(&m).is_zero() {
        return no();
    }
    let mut q = ruling_root(x, 0);
    q.extend(ruling_root(y, 2));
    let q = normalize_point(Surface::Quadric, &q).expect("ruling roots are nonzero");
    if !eval(&rest, &q).is_zero() || same_point(Surface::Quadric, &q, &curve.point) {
        return no();
    }
    if !eval(&rest, &curve.point).is_zero() {
        notes.push("S: marked point lies on a multiple ruling".into());
    }
    Ok((
        Membership::Yes,
        Some(SpecialDetails { point: q, lines: vec![x.to_string(), y.to_string()], residual: rest.to_string() }),
    ))
}

fn p2_x0(curve: &PointedCurve, notes: &mut Vec<String>) -> Result<Found> {
    let d = curve.degree;
    let Some(lines) = linear_factors_p2(&curve.equation) else {
        return undecided(notes, "X0");
    };
    let (cubic, tangent) = if d == 3 {
        if !lines.is_empty() {
            return no();
        }
        (curve.equation.clone(), None)
    } else {
        let [(t, k)] = lines.as_slice() else {
            return no();
        };
        if *k != d - 3 {
            return no();
        }
        (curve.equation.div_exact(&t.pow(d - 3)).expect("multiplicity divides"), Some(t.clone()))
    };
    let hess = hessian_determinant(&cubic)?;
    if hess.is_zero() {
        return no();
    }
    let sqf = squarefree_decompose(&hess)?;
    let [(t_prime, 2), (m_line, 1)] = sqf.as_slice() else {
        return no();
    };
    if t_prime.total_degree() != Some(1) || m_line.total_degree() != Some(1) {
        return no();
    }
    let tp = line_coeffs(t_prime);
    let ml = line_coeffs(m_line);
    let cusp = normalize_point(Surface::P2, &cross(&tp, &ml)).expect("distinct lines meet in a point");
    if !eval(&cubic, &cusp).is_zero() || cubic.gradient().iter().any(|g| !eval(g, &cusp).is_zero()) {
        return no();
    }
    let h_at: Vec<Vec<Rational>> =
        hessian_matrix(&cubic)?.iter().map(|row| row.iter().map(|h| eval(h, &cusp)).collect()).collect();
    if rank(&h_at) != 1 {
        return no();
    }
    let row = h_at.iter().find(|r| r.iter().any(|x| !x.is_zero())).expect("rank one");
    if !proportional(row, &tp) {
        return no();
    }
    if let Some(t) = &tangent {
        if !proportional(&line_coeffs(t), &tp) {
            return no();
        }
    }
    let p = &curve.point;
    if !eval(&cubic, p).is_zero() || same_point(Surface::P2, p, &cusp) {
        return no();
    }
    match vanishing_sequence_of_form(Surface::P2, &cubic, p, &[1], 4) {
        Ok(seq) if inflection_weight(&seq).value > 0 => {}
        _ => return no(),
    }
    notes.push("X0: marked point is the smooth flex of the cuspidal cubic".into());
    Ok((
        Membership::Yes,
        Some(SpecialDetails {
            point: cusp,
            lines: tangent.iter().map(|t| t.to_string()).collect(),
            residual: cubic.to_string(),
        }),
    ))
}

fn cross(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    vec![
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

fn proportional(a: &[Rational], b: &[Rational]) -> bool {
    rank(&vec![a.to_vec(), b.to_vec()]) == 1
}

/// Restriction of a bihomogeneous form to the ruling through `pt` of the
/// given factor (0: fix x, 1: fix y).
fn restrict_to_ruling(f: &Polynomial, fixed_factor: usize, pt: &[Rational]) -> Polynomial {
    let base = 2 * fixed_factor;
    f.specialize(base, &pt[base]).specialize(base + 1, &pt[base + 1])
}

/// Squared linear form vanishing at the `free_factor` coordinates of `pt`.
fn double_root_form(free_factor: usize, pt: &[Rational]) -> Polynomial {
    let base = 2 * free_factor;
    let mut e0 = vec![0; 4];
    e0[base] = 1;
    let mut e1 = vec![0; 4];
    e1[base + 1] = 1;
    Polynomial::from_terms(4, vec![(e0, pt[base + 1].clone()), (e1, -pt[base].clone())]).pow(2)
}

fn quadric_x0(curve: &PointedCurve, notes: &mut Vec<String>) -> Result<Found> {
    let d = curve.degree;
    let Some((xs, ys)) = ruling_factors_quadric(&curve.equation) else {
        return undecided(notes, "X0");
    };
    // `t_factor`: factor whose coordinate the multiple tangent ruling fixes
    for t_factor in [1usize, 0] {
        let (t_lines, u_lines) = if t_factor == 1 { (&ys, &xs) } else { (&xs, &ys) };
        let ([(t, kt)], [(u, ku)]) = (t_lines.as_slice(), u_lines.as_slice()) else {
            continue;
        };
        if *kt != d - 1 || *ku != d - 2 {
            continue;
        }
        let k = curve.equation.div_exact(&(&t.pow(d - 1) * &u.pow(d - 2))).expect("multiplicities divide");
        let free = 1 - t_factor;
        let deg_free = k.support().next().map(|e| e[2 * free] + e[2 * free + 1]).unwrap_or(0);
        let deg_fixed = k.support().next().map(|e| e[2 * t_factor] + e[2 * t_factor + 1]).unwrap_or(0);
        if deg_free != 2 || deg_fixed != 1 {
            continue;
        }
        // K = A·z0 + B·z1 in the fixed factor; smooth iff gcd(A, B) = 1
        let coeffs = k.coefficients_in(2 * t_factor);
        let (a, b) = (coeffs.first().cloned(), coeffs.get(1).cloned());
        let (Some(a), Some(b)) = (a, b) else {
            continue;
        };
        if !crate::exact::gcd(&a, &b).is_constant() {
            continue;
        }
        let mut r = vec![Rational::zero(); 4];
        let t_root = ruling_root(t, 2 * t_factor);
        let u_root = ruling_root(u, 2 * free);
        r[2 * t_factor] = t_root[0].clone();
        r[2 * t_factor + 1] = t_root[1].clone();
        r[2 * free] = u_root[0].clone();
        r[2 * free + 1] = u_root[1].clone();
        let r = normalize_point(Surface::Quadric, &r).expect("ruling roots are nonzero");
        if !eval(&k, &r).is_zero() || !restrict_to_ruling(&k, t_factor, &r).proportional(&double_root_form(free, &r)) {
            continue;
        }
        let p = &curve.point;
        if !eval(&k, p).is_zero() || same_point(Surface::Quadric, p, &r) {
            continue;
        }
        if !restrict_to_ruling(&k, t_factor, p).proportional(&double_root_form(free, p)) {
            continue;
        }
        notes.push("X0: marked point is the other ruling-tangency point of the residual curve".into());
        return Ok((
            Membership::Yes,
            Some(SpecialDetails { point: r, lines: vec![t.to_string(), u.to_string()], residual: k.to_string() }),
        ));
    }
    no()
}
