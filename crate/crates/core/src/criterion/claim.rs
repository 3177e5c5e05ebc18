//! Universally quantified monomial inequalities, decided exactly.
//!
//! Per-term μ is affine in `t`, so a claim over an open interval is settled
//! by its two endpoint values: `> 0` holds on `(a, b)` iff both endpoint
//! values are `≥ 0` and not both zero.

use num_traits::{Signed, Zero};
use serde::Serialize;

use super::mu::term_mu;
use crate::curve::Surface;
use crate::error::{Error, Result};
use crate::exact::rational::serde_rational;
use crate::exact::{Exponent, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ExponentSet {
    /// Every exponent of the degree except these.
    Excluding(Vec<Exponent>),
    /// Exactly these exponents.
    Only(Vec<Exponent>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SlopeSpec {
    Point(#[serde(with = "serde_rational")] Rational),
    Open(
        #[serde(with = "serde_rational")] Rational,
        #[serde(with = "serde_rational")] Rational,
    ),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Strictness {
    #[serde(rename = ">0")]
    Positive,
    #[serde(rename = ">=0")]
    NonNegative,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Claim {
    pub surface: Surface,
    pub degree: u32,
    /// Coordinate weights of the subgroup (may be rational).
    #[serde(with = "crate::exact::rational::serde_rational_vec")]
    pub weights: Vec<Rational>,
    /// Point-support entries: `[l]` on P2, `[l, 2 + m]` on the quadric.
    pub point_entries: Vec<Vec<usize>>,
    pub exponents: ExponentSet,
    pub slope: SlopeSpec,
    pub strictness: Strictness,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub monomial: Exponent,
    pub point_entry: Vec<usize>,
    #[serde(with = "serde_rational")]
    pub t: Rational,
    #[serde(with = "serde_rational")]
    pub mu: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClaimOutcome {
    pub pass: bool,
    pub counterexamples: Vec<Counterexample>,
    /// Monomials where μ vanishes at a closed point of the slope spec.
    pub equality: Vec<Exponent>,
}

impl Claim {
    pub fn monomials(&self) -> Result<Vec<Exponent>> {
        let all = self.surface.exponents(self.degree);
        let set: Vec<Exponent> = match &self.exponents {
            ExponentSet::Excluding(ex) => all.into_iter().filter(|e| !ex.contains(e)).collect(),
            ExponentSet::Only(only) => {
                if let Some(bad) = only.iter().find(|e| !self.surface.exponent_fits(e, self.degree)) {
                    return Err(Error::input(format!("exponent {bad:?} does not fit degree {}", self.degree)));
                }
                only.clone()
            }
        };
        if set.is_empty() {
            return Err(Error::input("claim quantifies over an empty exponent set"));
        }
        Ok(set)
    }
}

pub fn interval_mu_claim(claim: &Claim) -> Result<ClaimOutcome> {
    let monomials = claim.monomials()?;
    let mut counterexamples = Vec::new();
    let mut equality = Vec::new();
    let w = &claim.weights;
    for e in &monomials {
        for l in &claim.point_entries {
            let at = |t: &Rational| term_mu(w, l, e, t);
            match &claim.slope {
                SlopeSpec::Point(t) => {
                    let mu = at(t);
                    let ok = match claim.strictness {
                        Strictness::Positive => mu.is_positive(),
                        Strictness::NonNegative => !mu.is_negative(),
                    };
                    if mu.is_zero() && !equality.contains(e) {
                        equality.push(e.clone());
                    }
                    if !ok {
                        counterexamples.push(Counterexample {
                            monomial: e.clone(),
                            point_entry: l.clone(),
                            t: t.clone(),
                            mu,
                        });
                    }
                }
                SlopeSpec::Open(a, b) => {
                    let (ma, mb) = (at(a), at(b));
                    let both_zero = ma.is_zero() && mb.is_zero();
                    for (t, mu) in [(a, ma), (b, mb)] {
                        let bad = mu.is_negative() || (claim.strictness == Strictness::Positive && both_zero);
                        if bad {
                            counterexamples.push(Counterexample {
                                monomial: e.clone(),
                                point_entry: l.clone(),
                                t: t.clone(),
                                mu,
                            });
                        }
                    }
                }
            }
        }
    }
    Ok(ClaimOutcome { pass: counterexamples.is_empty(), counterexamples, equality })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{int, rat};

    fn p2_claim(w: [i64; 3], excluded: Vec<Exponent>, slope: SlopeSpec, strictness: Strictness) -> Claim {
        Claim {
            surface: Surface::P2,
            degree: 4,
            weights: w.iter().map(|&x| int(x)).collect(),
            point_entries: vec![vec![2]],
            exponents: ExponentSet::Excluding(excluded),
            slope,
            strictness,
        }
    }

    #[test]
    fn edge_claim_holds_with_equality() {
        let c = p2_claim(
            [-1, 0, 1],
            vec![vec![0, 0, 4], vec![0, 1, 3]],
            SlopeSpec::Point(int(2)),
            Strictness::NonNegative,
        );
        let out = interval_mu_claim(&c).unwrap();
        assert!(out.pass);
        assert!(out.equality.contains(&vec![1, 0, 3]));
        assert!(out.equality.contains(&vec![0, 2, 2]));
    }

    #[test]
    fn chamber_claim_for_flex_subgroup() {
        let c = p2_claim(
            [-5, 1, 4],
            vec![vec![0, 0, 4], vec![0, 1, 3], vec![0, 2, 2]],
            SlopeSpec::Open(rat(7, 4), int(2)),
            Strictness::Positive,
        );
        assert!(interval_mu_claim(&c).unwrap().pass);
    }

    #[test]
    fn tampered_edge_claim_fails_at_the_dropped_monomial() {
        let c = p2_claim([-1, 0, 1], vec![vec![0, 0, 4]], SlopeSpec::Point(int(2)), Strictness::NonNegative);
        let out = interval_mu_claim(&c).unwrap();
        assert!(!out.pass);
        assert_eq!(out.counterexamples.len(), 1);
        assert_eq!(out.counterexamples[0].monomial, vec![0, 1, 3]);
        assert_eq!(out.counterexamples[0].mu, int(-1));
    }

    #[test]
    fn empty_set_rejected() {
        let mut c = p2_claim([-1, 0, 1], vec![], SlopeSpec::Point(int(2)), Strictness::NonNegative);
        c.exponents = ExponentSet::Only(vec![]);
        assert!(interval_mu_claim(&c).is_err());
    }
}
