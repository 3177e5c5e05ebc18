//! Multivariate gcd and squarefree decomposition.
//!
//! Polynomials are viewed as univariate in one variable over the field of
//! rational functions in the rest; contents are computed recursively and the
//! primitive parts are combined with a primitive pseudo-remainder sequence.

use std::collections::BTreeMap;

use super::poly::Polynomial;
use crate::error::{Error, Result};

/// Variable with the lowest positive degree across both inputs, ties to the
/// lowest index.
fn main_variable(a: &Polynomial, b: &Polynomial) -> Option<usize> {
    (0..a.nvars())
        .filter_map(|v| {
            let d = a.degree_in(v).unwrap_or(0).max(b.degree_in(v).unwrap_or(0));
            (d > 0).then_some((d, v))
        })
        .min()
        .map(|(_, v)| v)
}

/// Gcd of the coefficients of `p` viewed in `var`; normalized.
pub fn content_in(p: &Polynomial, var: usize) -> Polynomial {
    let mut g = Polynomial::zero(p.nvars());
    for c in p.coefficients_in(var) {
        if c.is_zero() {
            continue;
        }
        g = gcd(&g, &c);
        if g.is_constant() {
            break;
        }
    }
    g
}

pub fn primitive_part_in(p: &Polynomial, var: usize) -> Polynomial {
    if p.is_zero() {
        return p.clone();
    }
    let c = content_in(p, var);
    p.div_exact(&c).expect("content divides").normalize()
}

fn pseudo_remainder(a: &Polynomial, b: &Polynomial, var: usize) -> Polynomial {
    let n = b.degree_in(var).unwrap_or(0);
    let lc_b = b.coefficients_in(var).pop().expect("nonzero divisor");
    let mut r = a.clone();
    while !r.is_zero() {
        let m = r.degree_in(var).unwrap_or(0);
        if m < n {
            break;
        }
        let lc_r = r.coefficients_in(var).pop().expect("nonzero");
        r = &(&r * &lc_b) - &(&lc_r.shift(var, m - n) * b);
    }
    r
}

/// Greatest common divisor, normalized (primitive integer, positive
/// lex-leading coefficient). `gcd(0, 0) = 0`.
pub fn gcd(a: &Polynomial, b: &Polynomial) -> Polynomial {
    if a.is_zero() {
        return b.normalize();
    }
    if b.is_zero() {
        return a.normalize();
    }
    let Some(var) = main_variable(a, b) else {
        return Polynomial::one(a.nvars());
    };
    let ca = content_in(a, var);
    let cb = content_in(b, var);
    let content = gcd(&ca, &cb);
    let mut x = a.div_exact(&ca).expect("content divides");
    let mut y = b.div_exact(&cb).expect("content divides");
    if x.degree_in(var) < y.degree_in(var) {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_zero() {
        let r = pseudo_remainder(&x, &y, var);
        x = y;
        y = primitive_part_in(&r, var);
    }
    (&primitive_part_in(&x, var) * &content).normalize()
}

/// Squarefree decomposition `p = c · Π f_i^{e_i}`: pairwise coprime,
/// squarefree, normalized factors sorted by multiplicity, highest first.
pub fn squarefree_decompose(p: &Polynomial) -> Result<Vec<(Polynomial, u32)>> {
    if p.is_zero() {
        return Err(Error::input("squarefree decomposition of the zero polynomial"));
    }
    let mut by_mult: BTreeMap<u32, Polynomial> = BTreeMap::new();
    collect_squarefree(p, &mut by_mult);
    let mut out: Vec<(Polynomial, u32)> = by_mult.into_iter().map(|(e, f)| (f.normalize(), e)).collect();
    out.reverse();
    Ok(out)
}

fn collect_squarefree(p: &Polynomial, acc: &mut BTreeMap<u32, Polynomial>) {
    let Some(var) = main_variable(p, p) else {
        return;
    };
    let content = content_in(p, var);
    let a = p.div_exact(&content).expect("content divides");
    for (f, e) in yun(&a, var) {
        let entry = acc.entry(e).or_insert_with(|| Polynomial::one(p.nvars()));
        *entry = &*entry * &f;
    }
    if !content.is_constant() {
        collect_squarefree(&content, acc);
    }
}

/// Yun's algorithm in `var` on a polynomial primitive in `var`.
fn yun(a: &Polynomial, var: usize) -> Vec<(Polynomial, u32)> {
    let mut out = Vec::new();
    let da = a.partial_derivative(var).expect("index in range");
    let c = gcd(a, &da);
    let mut w = a.div_exact(&c).expect("gcd divides");
    let mut y = da.div_exact(&c).expect("gcd divides");
    let mut z = &y - &w.partial_derivative(var).expect("index in range");
    let mut i = 1;
    while !w.is_constant() {
        let g = gcd(&w, &z);
        if !g.is_constant() {
            out.push((g.clone(), i));
        }
        w = w.div_exact(&g).expect("gcd divides");
        y = z.div_exact(&g).expect("gcd divides");
        z = &y - &w.partial_derivative(var).expect("index in range");
        i += 1;
    }
    out
}
