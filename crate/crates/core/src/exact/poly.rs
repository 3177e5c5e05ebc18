//! Sparse multivariate polynomials over the rationals.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rational::Rational;
use crate::error::{Error, Result};

pub type Exponent = Vec<u32>;

/// Terms are keyed by exponent vector; `BTreeMap` order is lexicographic with
/// `x0` most significant, so the last entry is the lex-leading term.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Exponent, Rational>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn var(nvars: usize, index: usize) -> Self {
        let mut e = vec![0; nvars];
        e[index] = 1;
        Self::monomial(e, Rational::one())
    }

    pub fn monomial(exp: Exponent, c: Rational) -> Self {
        let mut p = Self::zero(exp.len());
        p.add_term(exp, c);
        p
    }

    /// Builds from `(exponent, coefficient)` pairs, summing repeats.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Exponent, Rational)>,
    {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent length mismatch");
            p.add_term(e, c);
        }
        p
    }

    /// Convenience for tests and fixtures: integer coefficients.
    pub fn from_int_terms(nvars: usize, terms: &[(&[u32], i64)]) -> Self {
        Self::from_terms(
            nvars,
            terms.iter().map(|(e, c)| (e.to_vec(), Rational::from_integer(BigInt::from(*c)))),
        )
    }

    pub fn add_term(&mut self, exp: Exponent, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Exponent, Rational> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&k| k == 0))
    }

    pub fn coefficient(&self, exp: &[u32]) -> Rational {
        self.terms.get(exp).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn support(&self) -> impl Iterator<Item = &Exponent> {
        self.terms.keys()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|e| e[var]).max()
    }

    pub fn is_homogeneous_of(&self, degree: u32) -> bool {
        self.terms.keys().all(|e| e.iter().sum::<u32>() == degree)
    }

    pub fn leading_term(&self) -> Option<(&Exponent, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.nvars);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn evaluate(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.nvars {
            return Err(Error::input(format!(
                "point has {} coordinates, polynomial has {} variables",
                point.len(),
                self.nvars
            )));
        }
        let mut total = Rational::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (x, &k) in point.iter().zip(e) {
                if k > 0 {
                    term *= num_traits::pow(x.clone(), k as usize);
                }
            }
            total += term;
        }
        Ok(total)
    }

    pub fn partial_derivative(&self, var: usize) -> Result<Self> {
        if var >= self.nvars {
            return Err(Error::input(format!("variable index {var} out of range for {} variables", self.nvars)));
        }
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[var] == 0 {
                continue;
            }
            let mut f = e.clone();
            f[var] -= 1;
            out.add_term(f, c * Rational::from_integer(BigInt::from(e[var])));
        }
        Ok(out)
    }

    pub fn gradient(&self) -> Vec<Self> {
        (0..self.nvars).map(|i| self.partial_derivative(i).expect("index in range")).collect()
    }

    /// Replaces variable `i` by `images[i]`; all images share a variable count.
    pub fn substitute(&self, images: &[Polynomial]) -> Self {
        assert_eq!(images.len(), self.nvars, "one image per variable");
        let target = images.first().map_or(0, |p| p.nvars);
        let max_deg: Vec<u32> = (0..self.nvars).map(|i| self.degree_in(i).unwrap_or(0)).collect();
        let powers: Vec<Vec<Polynomial>> = images
            .iter()
            .zip(&max_deg)
            .map(|(img, &m)| {
                let mut v = vec![Polynomial::one(target)];
                for k in 1..=m as usize {
                    let next = &v[k - 1] * img;
                    v.push(next);
                }
                v
            })
            .collect();
        let mut out = Polynomial::zero(target);
        for (e, c) in &self.terms {
            let mut term = Polynomial::constant(target, c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    term = &term * &powers[i][k as usize];
                }
            }
            out = &out + &term;
        }
        out
    }

    /// Substitutes `x_i = Σ_j m[i][j] y_j`.
    pub fn substitute_linear(&self, m: &[Vec<Rational>]) -> Self {
        let n = self.nvars;
        let images: Vec<Polynomial> = (0..n)
            .map(|i| {
                Polynomial::from_terms(
                    n,
                    (0..n).map(|j| {
                        let mut e = vec![0; n];
                        e[j] = 1;
                        (e, m[i][j].clone())
                    }),
                )
            })
            .collect();
        self.substitute(&images)
    }

    /// Sets variable `var` to the constant `value`, keeping the variable count.
    pub fn specialize(&self, var: usize, value: &Rational) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut f = e.clone();
            let k = f[var];
            f[var] = 0;
            out.add_term(f, c * num_traits::pow(value.clone(), k as usize));
        }
        out
    }

    /// Coefficients as a polynomial in `var`: entry `k` multiplies `var^k`.
    pub fn coefficients_in(&self, var: usize) -> Vec<Polynomial> {
        let deg = self.degree_in(var).unwrap_or(0) as usize;
        let mut out = vec![Polynomial::zero(self.nvars); deg + 1];
        for (e, c) in &self.terms {
            let mut f = e.clone();
            let k = f[var] as usize;
            f[var] = 0;
            out[k].add_term(f, c.clone());
        }
        out
    }

    pub fn from_coefficients_in(nvars: usize, var: usize, coeffs: &[Polynomial]) -> Self {
        let mut out = Self::zero(nvars);
        for (k, c) in coeffs.iter().enumerate() {
            for (e, v) in &c.terms {
                let mut f = e.clone();
                f[var] += k as u32;
                out.add_term(f, v.clone());
            }
        }
        out
    }

    /// Multiplies by `var^k`.
    pub fn shift(&self, var: usize, k: u32) -> Self {
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut f = e.clone();
                    f[var] += k;
                    (f, c.clone())
                })
                .collect(),
        }
    }

    /// Exact quotient `self / divisor`, or `None` if the division leaves a
    /// remainder.
    pub fn div_exact(&self, divisor: &Polynomial) -> Option<Polynomial> {
        let (lead_e, lead_c) = divisor.leading_term()?;
        let mut rem = self.clone();
        let mut quot = Polynomial::zero(self.nvars);
        while let Some((e, c)) = rem.leading_term() {
            if e.iter().zip(lead_e).any(|(a, b)| a < b) {
                return None;
            }
            let qe: Exponent = e.iter().zip(lead_e).map(|(a, b)| a - b).collect();
            let qc = c / lead_c;
            let step = Polynomial::monomial(qe.clone(), qc.clone());
            rem = &rem - &(&step * divisor);
            quot.add_term(qe, qc);
        }
        Some(quot)
    }

    /// Primitive integer multiple with positive lex-leading coefficient.
    pub fn normalize(&self) -> Polynomial {
        let Some((_, lead)) = self.leading_term() else {
            return self.clone();
        };
        let lcm = self.terms.values().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let gcd = self
            .terms
            .values()
            .fold(BigInt::zero(), |acc, c| acc.gcd(&(c.numer() * (&lcm / c.denom()))));
        let mut factor = Rational::new(lcm, gcd);
        if lead.is_negative() {
            factor = -factor;
        }
        self.scale(&factor)
    }

    /// True when the two polynomials agree up to a nonzero rational factor.
    pub fn proportional(&self, other: &Polynomial) -> bool {
        self.normalize() == other.normalize()
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero(self.nvars.max(rhs.nvars));
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e: Exponent = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-Rational::one())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let names: Vec<String> = if self.nvars == 4 {
            vec!["x0".into(), "x1".into(), "y0".into(), "y1".into()]
        } else {
            (0..self.nvars).map(|i| format!("x{i}")).collect()
        };
        for (idx, (e, c)) in self.terms.iter().rev().enumerate() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| if k == 1 { names[i].clone() } else { format!("{}^{}", names[i], k) })
                .collect();
            let (sign, mag) = if c.is_negative() { ("-", -c.clone()) } else { ("+", c.clone()) };
            if idx == 0 {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            if mono.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{mag}*{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::int;

    fn p3(terms: &[(&[u32], i64)]) -> Polynomial {
        Polynomial::from_int_terms(3, terms)
    }

    #[test]
    fn evaluation_examples() {
        let conic = p3(&[(&[1, 0, 1], 1), (&[0, 2, 0], -1)]);
        assert_eq!(conic.evaluate(&[int(1), int(1), int(1)]).unwrap(), int(0));
        let cusp = p3(&[(&[0, 3, 0], 1), (&[2, 0, 1], 1)]);
        assert_eq!(cusp.evaluate(&[int(0), int(0), int(1)]).unwrap(), int(0));
        let quartic = p3(&[(&[1, 0, 3], 1), (&[0, 4, 0], 1)]);
        assert_eq!(quartic.evaluate(&[int(1), int(1), int(1)]).unwrap(), int(2));
        assert!(quartic.evaluate(&[int(1), int(1)]).is_err());
    }

    #[test]
    fn derivative_examples() {
        let cusp = p3(&[(&[0, 3, 0], 1), (&[2, 0, 1], 1)]);
        assert_eq!(cusp.partial_derivative(0).unwrap(), p3(&[(&[1, 0, 1], 2)]));
        let quartic = p3(&[(&[1, 0, 3], 1), (&[0, 4, 0], 1)]);
        assert_eq!(quartic.partial_derivative(1).unwrap(), p3(&[(&[0, 3, 0], 4)]));
        assert!(p3(&[(&[4, 0, 0], 1)]).partial_derivative(2).unwrap().is_zero());
        assert!(quartic.partial_derivative(3).is_err());
    }

    #[test]
    fn exact_division() {
        let a = p3(&[(&[1, 0, 0], 1), (&[0, 1, 0], 1)]);
        let b = p3(&[(&[1, 0, 1], 1), (&[0, 2, 0], -1)]);
        let prod = &(&a * &a) * &b;
        assert_eq!(prod.div_exact(&a).unwrap(), &a * &b);
        assert!(b.div_exact(&a).is_none());
    }

    #[test]
    fn normalization_is_primitive_with_positive_lead() {
        let p = Polynomial::from_terms(
            3,
            vec![(vec![1, 0, 0], crate::exact::rational::rat(-2, 3)), (vec![0, 1, 0], crate::exact::rational::rat(4, 9))],
        );
        assert_eq!(p.normalize(), p3(&[(&[1, 0, 0], 3), (&[0, 1, 0], -2)]));
    }

    #[test]
    fn linear_substitution_relabels() {
        let cusp = p3(&[(&[0, 3, 0], 1), (&[2, 0, 1], 1)]);
        let swap = vec![
            vec![int(0), int(0), int(1)],
            vec![int(0), int(1), int(0)],
            vec![int(1), int(0), int(0)],
        ];
        assert_eq!(cusp.substitute_linear(&swap), p3(&[(&[0, 3, 0], 1), (&[1, 0, 2], 1)]));
    }
}
