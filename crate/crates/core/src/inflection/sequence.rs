//! Vanishing sequences of restricted monomial systems and contact orders.

use std::fmt;

use serde::{Serialize, Serializer};

use super::branch::{branch_of_form, local_branch, Branch};
use crate::curve::{PointedCurve, Surface};
use crate::error::{Error, Result};
use crate::exact::linalg::pivot_orders;
use crate::exact::{Polynomial, Rational};

/// A vanishing order, or "at least the truncation" when the series vanished
/// to the working precision.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Order {
    Finite(usize),
    AtLeast(usize),
}

impl Order {
    pub fn at_least(self, k: usize) -> bool {
        match self {
            Order::Finite(a) | Order::AtLeast(a) => a >= k,
        }
    }

    pub fn finite(self) -> Option<usize> {
        match self {
            Order::Finite(a) => Some(a),
            Order::AtLeast(_) => None,
        }
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(a) => write!(f, "{a}"),
            Order::AtLeast(n) => write!(f, ">={n}"),
        }
    }
}

impl Serialize for Order {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Order::Finite(a) => s.serialize_u64(*a as u64),
            Order::AtLeast(_) => s.serialize_str(&self.to_string()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VanishingSequence {
    /// Finite orders, then one `AtLeast(N)` per section containing the
    /// branch.
    pub orders: Vec<Order>,
    pub rank: usize,
    pub truncation: usize,
}

impl VanishingSequence {
    pub fn top(&self) -> Order {
        *self.orders.last().expect("rank is positive")
    }

    pub fn has_flags(&self) -> bool {
        self.orders.iter().any(|o| matches!(o, Order::AtLeast(_)))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Weight {
    pub value: i64,
    /// True when flagged entries make `value` only a lower bound.
    pub lower_bound: bool,
}

/// `Σ (a_i − i)`; a flagged entry at position `i` (the `j`-th flagged one)
/// contributes its least possible value `N + j − i`.
pub fn inflection_weight(seq: &VanishingSequence) -> Weight {
    let mut value = 0i64;
    let mut flagged = 0usize;
    for (i, o) in seq.orders.iter().enumerate() {
        match o {
            Order::Finite(a) => value += *a as i64 - i as i64,
            Order::AtLeast(n) => {
                value += (*n + flagged) as i64 - i as i64;
                flagged += 1;
            }
        }
    }
    Weight { value, lower_bound: flagged > 0 }
}

fn default_truncation(surface: Surface, degree: u32, m: &[u32]) -> usize {
    let total: u32 = match surface {
        Surface::P2 => m[0],
        Surface::Quadric => m[0] + m[1],
    };
    ((total * degree + 1) as usize).max(2)
}

fn check_m(surface: Surface, degree: u32, m: &[u32]) -> Result<()> {
    let expected = match surface {
        Surface::P2 => 1,
        Surface::Quadric => 2,
    };
    if m.len() != expected {
        return Err(Error::input(format!("{surface} systems take {expected} degree(s), got {}", m.len())));
    }
    if m.iter().any(|&k| k >= degree) {
        return Err(Error::input("restricted-system rank formula requires m < d"));
    }
    Ok(())
}

/// Sequence of the monomial system of degree `m` restricted to a branch.
pub fn sequence_on_branch(surface: Surface, branch: &Branch, m: &[u32]) -> Result<VanishingSequence> {
    let n = branch.truncation();
    let rows: Vec<Vec<Rational>> = surface
        .section_basis(m)
        .into_iter()
        .map(|e| {
            let mono = Polynomial::monomial(e, Rational::from_integer(1.into()));
            branch.restrict(&mono).map(|s| s.coeffs().to_vec())
        })
        .collect::<Result<_>>()?;
    let pivots = pivot_orders(&rows)?;
    let mut orders: Vec<Order> = pivots.orders.into_iter().map(Order::Finite).collect();
    orders.extend(std::iter::repeat_n(Order::AtLeast(n), pivots.deficient));
    Ok(VanishingSequence { rank: rows.len(), orders, truncation: n })
}

/// Vanishing sequence at the marked point of the degree-`m` system
/// (`[m]` on P2, `[m1, m2]` on the quadric). `n` defaults to the Bézout
/// bound plus one.
pub fn vanishing_sequence(curve: &PointedCurve, m: &[u32], n: Option<usize>) -> Result<VanishingSequence> {
    check_m(curve.surface, curve.degree, m)?;
    let n = n.unwrap_or_else(|| default_truncation(curve.surface, curve.degree, m));
    let branch = local_branch(curve, n)?;
    sequence_on_branch(curve.surface, &branch, m)
}

/// Same, for an arbitrary form through the point (used on components).
pub fn vanishing_sequence_of_form(
    surface: Surface,
    form: &Polynomial,
    point: &[Rational],
    m: &[u32],
    n: usize,
) -> Result<VanishingSequence> {
    let branch = branch_of_form(surface, form, point, n)?;
    sequence_on_branch(surface, &branch, m)
}

/// Order of `aux` along the branch at the marked point.
pub fn intersection_multiplicity(curve: &PointedCurve, aux: &Polynomial, n: usize) -> Result<Order> {
    if aux.nvars() != curve.nvars() {
        return Err(Error::input("auxiliary form lives on a different surface"));
    }
    let branch = local_branch(curve, n)?;
    Ok(match branch.restrict(aux)?.order() {
        Some(k) => Order::Finite(k),
        None => Order::AtLeast(n),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::{make_witness, WitnessKind};
    use crate::exact::rational::int;

    fn seq(orders: &[usize]) -> VanishingSequence {
        VanishingSequence {
            orders: orders.iter().map(|&a| Order::Finite(a)).collect(),
            rank: orders.len(),
            truncation: 10,
        }
    }

    #[test]
    fn weights() {
        assert_eq!(inflection_weight(&seq(&[0, 1, 2])).value, 0);
        assert_eq!(inflection_weight(&seq(&[0, 1, 3])).value, 1);
        assert_eq!(inflection_weight(&seq(&[0, 1, 4])).value, 2);
    }

    #[test]
    fn sequences_of_examples() {
        let cubic = PointedCurve::new(
            Surface::P2,
            3,
            vec![int(1), int(0), int(0)],
            Polynomial::from_int_terms(3, &[(&[0, 3, 0], 1), (&[2, 0, 1], 1)]),
        )
        .unwrap();
        let s = vanishing_sequence(&cubic, &[1], None).unwrap();
        assert_eq!(s.orders, vec![Order::Finite(0), Order::Finite(1), Order::Finite(3)]);
        assert_eq!(vanishing_sequence(&cubic, &[0], None).unwrap().orders, vec![Order::Finite(0)]);
        assert!(vanishing_sequence(&cubic, &[3], None).is_err());

        let hyper = make_witness(WitnessKind::P2Hyperflex, 4).unwrap();
        let s = vanishing_sequence(&hyper, &[1], None).unwrap();
        assert_eq!(s.orders, vec![Order::Finite(0), Order::Finite(1), Order::Finite(4)]);
    }

    #[test]
    fn contact_orders() {
        let cubic = PointedCurve::new(
            Surface::P2,
            3,
            vec![int(1), int(0), int(0)],
            Polynomial::from_int_terms(3, &[(&[0, 3, 0], 1), (&[2, 0, 1], 1)]),
        )
        .unwrap();
        let x2 = Polynomial::from_int_terms(3, &[(&[0, 0, 1], 1)]);
        assert_eq!(intersection_multiplicity(&cubic, &x2, 7).unwrap(), Order::Finite(3));

        let hyper = make_witness(WitnessKind::P2Hyperflex, 4).unwrap();
        let x0 = Polynomial::from_int_terms(3, &[(&[1, 0, 0], 1)]);
        assert_eq!(intersection_multiplicity(&hyper, &x0, 9).unwrap(), Order::Finite(4));

        let s = make_witness(WitnessKind::P2S, 4).unwrap();
        let conic = Polynomial::from_int_terms(3, &[(&[1, 0, 1], 1), (&[0, 2, 0], -1)]);
        assert_eq!(intersection_multiplicity(&s, &conic, 9).unwrap(), Order::AtLeast(9));
    }
}
