//! Independent oracles and random generators shared by the integration
//! tests. Nothing here calls the code paths it is used to check.

#![allow(dead_code)]

use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use vgit_core::curve::{FrameChange, PointedCurve, Surface};
use vgit_core::exact::linalg::{determinant, rank, Matrix};
use vgit_core::exact::{int, Polynomial, Rational};
use vgit_core::inflection::Order;

pub fn rng(seed: u64) -> ChaCha8Rng {
    use rand::SeedableRng;
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn nonzero(rng: &mut ChaCha8Rng, r: i64) -> Rational {
    loop {
        let c = rng.gen_range(-r..=r);
        if c != 0 {
            return int(c);
        }
    }
}

/// Point-support entries straight from the definition: nonzero
/// coordinates on P2, pairs of nonzero coordinates (one per factor) on the
/// quadric.
pub fn point_entries(surface: Surface, p: &[Rational]) -> Vec<Vec<usize>> {
    let nz: Vec<usize> = (0..p.len()).filter(|&i| !p[i].is_zero()).collect();
    match surface {
        Surface::P2 => nz.into_iter().map(|i| vec![i]).collect(),
        Surface::Quadric => {
            let mut out = Vec::new();
            for &i in nz.iter().filter(|&&i| i < 2) {
                for &j in nz.iter().filter(|&&j| j >= 2) {
                    out.push(vec![i, j]);
                }
            }
            out
        }
    }
}

/// Coordinate weights of a subgroup given by its parameters.
pub fn coordinate_weights(surface: Surface, r: &[i64]) -> Vec<i64> {
    match surface {
        Surface::P2 => r.to_vec(),
        Surface::Quadric => vec![-r[0], r[0], -r[1], r[1]],
    }
}

/// `t · min_l ω(l) − max_e ω(e)`.
pub fn oracle_mu(curve: &PointedCurve, r: &[i64], t: &Rational) -> Rational {
    let w = coordinate_weights(curve.surface, r);
    let pmin = point_entries(curve.surface, &curve.point)
        .iter()
        .map(|l| l.iter().map(|&i| w[i]).sum::<i64>())
        .min()
        .expect("point has support");
    let emax = curve
        .equation
        .support()
        .map(|e| e.iter().zip(&w).map(|(&k, &x)| k as i64 * x).sum::<i64>())
        .max()
        .expect("equation is nonzero");
    t * int(pmin) - int(emax)
}

/// All nontrivial parameter vectors with coordinate weights in `[-r, r]`.
pub fn box_subgroups(surface: Surface, r: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    for a in -r..=r {
        for b in -r..=r {
            let v = match surface {
                Surface::P2 => vec![a, b, -a - b],
                Surface::Quadric => vec![a, b],
            };
            if v.iter().all(|&x| x == 0) || v.iter().any(|x| x.abs() > r) {
                continue;
            }
            out.push(v);
        }
    }
    out
}

/// Sign of the maximum of μ over the box.
pub fn box_sign(curve: &PointedCurve, t: &Rational, r: i64) -> i8 {
    let mut best = -1i8;
    for v in box_subgroups(curve.surface, r) {
        let m = oracle_mu(curve, &v, t);
        if m.is_positive() {
            return 1;
        }
        if m.is_zero() {
            best = 0;
        }
    }
    best
}

fn p2_exponents(d: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for i in 0..=d {
        for j in 0..=d - i {
            out.push(vec![i, j, d - i - j]);
        }
    }
    out
}

fn quadric_exponents(a: u32, b: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for i in 0..=a {
        for j in 0..=b {
            out.push(vec![i, a - i, j, b - j]);
        }
    }
    out
}

pub fn exponents(surface: Surface, m: &[u32]) -> Vec<Vec<u32>> {
    match surface {
        Surface::P2 => p2_exponents(m[0]),
        Surface::Quadric => quadric_exponents(m[0], m[1]),
    }
}

fn monomial_at(e: &[u32], p: &[Rational]) -> Rational {
    e.iter().zip(p).fold(Rational::one(), |acc, (&k, x)| {
        let mut v = acc;
        for _ in 0..k {
            v *= x;
        }
        v
    })
}

/// A sparse curve through a point with a random zero pattern. The support
/// has `terms` monomials, adjusted so the point lies on the curve.
pub fn random_sparse_curve(rng: &mut ChaCha8Rng, surface: Surface, d: u32, terms: usize) -> PointedCurve {
    let n = surface.nvars();
    loop {
        let point: Vec<Rational> = (0..n)
            .map(|_| if rng.gen_bool(0.5) { Rational::zero() } else { nonzero(rng, 3) })
            .collect();
        let ok = match surface {
            Surface::P2 => point.iter().any(|x| !x.is_zero()),
            Surface::Quadric => point[..2].iter().any(|x| !x.is_zero()) && point[2..].iter().any(|x| !x.is_zero()),
        };
        if !ok {
            continue;
        }
        let all = exponents(surface, &[d, d]);
        let mut eq = Polynomial::zero(n);
        for _ in 0..terms {
            let e = all[rng.gen_range(0..all.len())].clone();
            eq.add_term(e, nonzero(rng, 4));
        }
        let value = eq.evaluate(&point).unwrap();
        if !value.is_zero() {
            let fixers: Vec<&Vec<u32>> =
                eq.support().filter(|e| !monomial_at(e, &point).is_zero()).collect::<Vec<_>>();
            let Some(e) = fixers.first().map(|e| (*e).clone()) else { continue };
            let c = -value / monomial_at(&e, &point);
            eq.add_term(e, c);
        }
        if eq.is_zero() {
            continue;
        }
        if let Ok(c) = PointedCurve::new(surface, d, point, eq) {
            return c;
        }
    }
}

/// The torus-fixed marked point used by the dense generators.
pub fn base_point(surface: Surface) -> Vec<Rational> {
    match surface {
        Surface::P2 => vec![int(0), int(0), int(1)],
        Surface::Quadric => vec![int(0), int(1), int(0), int(1)],
    }
}

/// Affine coordinates `(u, v)` at the base point: `(x0, x1)` on P2 and
/// `(x0, y0)` on the quadric.
pub fn affine_exponent(surface: Surface, e: &[u32]) -> (u32, u32) {
    match surface {
        Surface::P2 => (e[0], e[1]),
        Surface::Quadric => (e[0], e[2]),
    }
}

/// A dense curve through the base point, smooth there, with prescribed
/// affine coefficients: `affine(a, b)` returns the coefficient of `u^a v^b`
/// or `None` to draw it at random. The constant term is forced to zero.
pub fn dense_curve(
    rng: &mut ChaCha8Rng,
    surface: Surface,
    d: u32,
    mut affine: impl FnMut(u32, u32) -> Option<Rational>,
) -> PointedCurve {
    let n = surface.nvars();
    let mut eq = Polynomial::zero(n);
    for e in exponents(surface, &[d, d]) {
        let (a, b) = affine_exponent(surface, &e);
        let c = if (a, b) == (0, 0) {
            Rational::zero()
        } else {
            affine(a, b).unwrap_or_else(|| int(rng.gen_range(-4..=4)))
        };
        eq.add_term(e, c);
    }
    PointedCurve::new(surface, d, base_point(surface), eq).expect("dense curve is valid")
}

fn random_invertible(rng: &mut ChaCha8Rng, n: usize) -> Matrix {
    loop {
        let m: Matrix = (0..n).map(|_| (0..n).map(|_| int(rng.gen_range(-3..=3))).collect()).collect();
        if !determinant(&m).is_zero() {
            return m;
        }
    }
}

pub fn random_frame(rng: &mut ChaCha8Rng, surface: Surface) -> FrameChange {
    match surface {
        Surface::P2 => FrameChange::P2 { matrix: random_invertible(rng, 3) },
        Surface::Quadric => {
            FrameChange::Quadric { x: random_invertible(rng, 2), y: random_invertible(rng, 2), swap: false }
        }
    }
}

// ---- series oracle for the base point -------------------------------------

type Series = Vec<Rational>;

fn series_mul(a: &Series, b: &Series) -> Series {
    let n = a.len();
    let mut out = vec![Rational::zero(); n];
    for i in 0..n {
        if a[i].is_zero() {
            continue;
        }
        for j in 0..n - i {
            out[i + j] += &a[i] * &b[j];
        }
    }
    out
}

fn series_pow(a: &Series, k: u32) -> Series {
    let n = a.len();
    let mut out = vec![Rational::zero(); n];
    out[0] = Rational::one();
    for _ in 0..k {
        out = series_mul(&out, a);
    }
    out
}

/// Affine form at the base point as `(a, b) -> coefficient` pairs.
fn affine_terms(curve: &PointedCurve) -> Vec<((u32, u32), Rational)> {
    curve.equation.terms().iter().map(|(e, c)| (affine_exponent(curve.surface, e), c.clone())).collect()
}

fn eval_affine(terms: &[((u32, u32), Rational)], u: &Series, v: &Series) -> Series {
    let n = u.len();
    let mut out = vec![Rational::zero(); n];
    for ((a, b), c) in terms {
        let s = series_mul(&series_pow(u, *a), &series_pow(v, *b));
        for k in 0..n {
            out[k] += c * &s[k];
        }
    }
    out
}

/// The branch `(u(s), v(s))` at the base point, to `n` terms, solved one
/// coefficient at a time.
pub fn oracle_branch(curve: &PointedCurve, n: usize) -> (Series, Series) {
    let terms = affine_terms(curve);
    let coef = |ab: (u32, u32)| terms.iter().find(|(e, _)| *e == ab).map(|(_, c)| c.clone()).unwrap_or_default();
    let (fu, fv) = (coef((1, 0)), coef((0, 1)));
    let mut s = vec![Rational::zero(); n];
    s[1] = Rational::one();
    let mut phi = vec![Rational::zero(); n];
    let solve_v = !fv.is_zero();
    let slope = if solve_v { fv } else { fu };
    assert!(!slope.is_zero(), "base point must be smooth");
    for k in 1..n {
        let r = if solve_v { eval_affine(&terms, &s, &phi) } else { eval_affine(&terms, &phi, &s) };
        phi[k] = &phi[k] - &r[k] / &slope;
    }
    if solve_v {
        (s, phi)
    } else {
        (phi, s)
    }
}

/// Vanishing sequence of the degree-`m` monomial system at the base point
/// by the naive filtration: `dim V_k` for every `k`, read off from ranks of
/// truncated coefficient matrices.
pub fn oracle_sequence(curve: &PointedCurve, m: &[u32], n: usize) -> Vec<Order> {
    let (u, v) = oracle_branch(curve, n);
    let rows: Vec<Series> = exponents(curve.surface, m)
        .iter()
        .map(|e| {
            let (a, b) = affine_exponent(curve.surface, e);
            series_mul(&series_pow(&u, a), &series_pow(&v, b))
        })
        .collect();
    let total = rows.len();
    // sections vanishing to order ≥ k form the kernel of the first k columns
    let dim = |k: usize| -> usize {
        if k == 0 {
            return total;
        }
        let cols: Matrix = rows.iter().map(|r| r[..k].to_vec()).collect();
        total - rank(&cols)
    };
    let mut out = Vec::new();
    let mut prev = dim(0);
    for k in 0..n {
        let next = dim(k + 1);
        for _ in 0..prev - next {
            out.push(Order::Finite(k));
        }
        prev = next;
    }
    for _ in 0..prev {
        out.push(Order::AtLeast(n));
    }
    out
}

/// `det(∂²F/∂xᵢ∂xⱼ)` at the point, from raw second partials.
pub fn classical_hessian_at(curve: &PointedCurve) -> Rational {
    let f = &curve.equation;
    let m: Matrix = (0..3)
        .map(|i| {
            (0..3)
                .map(|j| {
                    f.partial_derivative(i)
                        .unwrap()
                        .partial_derivative(j)
                        .unwrap()
                        .evaluate(&curve.point)
                        .unwrap()
                })
                .collect()
        })
        .collect();
    determinant(&m)
}

pub fn is_smooth_at_point(curve: &PointedCurve) -> bool {
    (0..curve.nvars()).any(|i| !curve.equation.partial_derivative(i).unwrap().evaluate(&curve.point).unwrap().is_zero())
}

pub fn sign(r: &Rational) -> i8 {
    if r.is_positive() {
        1
    } else if r.is_negative() {
        -1
    } else {
        0
    }
}

pub fn random_between(rng: &mut ChaCha8Rng, lo: &Rational, hi: &Rational) -> Rational {
    let k = rng.gen_range(1..1000i64);
    lo + (hi - lo) * Rational::new(k.into(), 1000.into())
}
