//! Power series truncated at a fixed order.

use num_traits::{One, Zero};

use super::poly::Polynomial;
use super::rational::Rational;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<Rational>,
}

impl TruncatedSeries {
    pub fn zero(n: usize) -> Self {
        assert!(n > 0, "truncation order must be positive");
        TruncatedSeries { coeffs: vec![Rational::zero(); n] }
    }

    pub fn constant(n: usize, c: Rational) -> Self {
        let mut s = Self::zero(n);
        s.coeffs[0] = c;
        s
    }

    /// The parameter `s` itself.
    pub fn parameter(n: usize) -> Self {
        let mut s = Self::zero(n);
        if n > 1 {
            s.coeffs[1] = Rational::one();
        }
        s
    }

    /// Pads or truncates `coeffs` to length `n`.
    pub fn from_coeffs(mut coeffs: Vec<Rational>, n: usize) -> Self {
        coeffs.resize(n, Rational::zero());
        TruncatedSeries { coeffs }
    }

    pub fn truncation(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &Rational {
        &self.coeffs[k]
    }

    pub fn set_coeff(&mut self, k: usize, c: Rational) {
        self.coeffs[k] = c;
    }

    /// Least index with a nonzero coefficient; `None` means "≥ N".
    pub fn order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn add(&self, other: &Self) -> Self {
        TruncatedSeries { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect() }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        TruncatedSeries { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.coeffs.len();
        let mut out = vec![Rational::zero(); n];
        let lo_a = self.order().unwrap_or(n);
        let lo_b = other.order().unwrap_or(n);
        for i in lo_a..n {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in lo_b..n - i {
                if !other.coeffs[j].is_zero() {
                    out[i + j] += &self.coeffs[i] * &other.coeffs[j];
                }
            }
        }
        TruncatedSeries { coeffs: out }
    }
}

/// Composition `poly(branch)` truncated at the common order.
pub fn series_substitute(poly: &Polynomial, branch: &[TruncatedSeries]) -> Result<TruncatedSeries> {
    if branch.len() != poly.nvars() {
        return Err(Error::input(format!(
            "branch has {} series, polynomial has {} variables",
            branch.len(),
            poly.nvars()
        )));
    }
    let n = branch.first().map(TruncatedSeries::truncation).unwrap_or(1);
    if branch.iter().any(|s| s.truncation() != n) {
        return Err(Error::input("branch series have different truncation orders"));
    }
    let mut powers: Vec<Vec<TruncatedSeries>> = Vec::with_capacity(branch.len());
    for (i, s) in branch.iter().enumerate() {
        let max = poly.degree_in(i).unwrap_or(0) as usize;
        let mut v = vec![TruncatedSeries::constant(n, Rational::one())];
        for k in 1..=max {
            let next = v[k - 1].mul(s);
            v.push(next);
        }
        powers.push(v);
    }
    let mut out = TruncatedSeries::zero(n);
    for (e, c) in poly.terms() {
        let mut term = TruncatedSeries::constant(n, c.clone());
        for (i, &k) in e.iter().enumerate() {
            if k > 0 {
                term = term.mul(&powers[i][k as usize]);
            }
        }
        out = out.add(&term);
    }
    Ok(out)
}
