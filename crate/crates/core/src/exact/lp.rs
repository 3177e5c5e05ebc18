//! Exact two-phase simplex over the rationals with Bland's rule.
//!
//! Variables are free; each is split into a difference of two nonnegative
//! columns internally. Programs here are tiny (a handful of variables, a few
//! dozen constraints), so a dense tableau is the simplest correct choice.

use std::fmt;

use num_traits::{One, Signed, Zero};

use super::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub relation: Relation,
    pub rhs: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearProgram {
    pub nvars: usize,
    pub objective: Vec<Rational>,
    pub constraints: Vec<Constraint>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LpSolution {
    pub optimum: Rational,
    pub vertex: Vec<Rational>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LpError {
    Infeasible,
    Unbounded,
}

impl fmt::Display for LpError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LpError::Infeasible => write!(f, "linear program is infeasible"),
            LpError::Unbounded => write!(f, "linear program is unbounded"),
        }
    }
}

impl std::error::Error for LpError {}

impl LinearProgram {
    pub fn new(nvars: usize, objective: Vec<Rational>) -> Self {
        assert_eq!(objective.len(), nvars);
        LinearProgram { nvars, objective, constraints: Vec::new() }
    }

    pub fn add(&mut self, coeffs: Vec<Rational>, relation: Relation, rhs: Rational) {
        assert_eq!(coeffs.len(), self.nvars);
        self.constraints.push(Constraint { coeffs, relation, rhs });
    }

    pub fn objective_at(&self, x: &[Rational]) -> Rational {
        dot(&self.objective, x)
    }

    pub fn is_feasible(&self, x: &[Rational]) -> bool {
        self.constraints.iter().all(|c| {
            let lhs = dot(&c.coeffs, x);
            match c.relation {
                Relation::Le => lhs <= c.rhs,
                Relation::Ge => lhs >= c.rhs,
                Relation::Eq => lhs == c.rhs,
            }
        })
    }

    /// Optimal value and the vertex reached by the deterministic pivot
    /// sequence.
    pub fn maximize(&self) -> Result<LpSolution, LpError> {
        Tableau::build(self).solve(&self.objective)
    }
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

/// Maximizes and then refines the vertex to the lexicographically greatest
/// optimal point, so the answer does not depend on pivot history.
pub fn lp_max(lp: &LinearProgram) -> Result<LpSolution, LpError> {
    let first = lp.maximize()?;
    let mut fixed = lp.clone();
    fixed.add(lp.objective.clone(), Relation::Eq, first.optimum.clone());
    let mut vertex = Vec::with_capacity(lp.nvars);
    for i in 0..lp.nvars {
        let mut e = vec![Rational::zero(); lp.nvars];
        e[i] = Rational::one();
        let mut probe = fixed.clone();
        probe.objective = e.clone();
        let best = probe.maximize()?;
        fixed.add(e, Relation::Eq, best.optimum.clone());
        vertex.push(best.optimum);
    }
    Ok(LpSolution { optimum: first.optimum, vertex })
}

struct Tableau {
    /// Rows of `[A | b]`; the last entry of each row is the right-hand side.
    rows: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    nstruct: usize,
    nartificial: usize,
    nvars: usize,
}

impl Tableau {
    fn build(lp: &LinearProgram) -> Self {
        let n = lp.nvars;
        let nslack = lp.constraints.iter().filter(|c| c.relation != Relation::Eq).count();
        let m = lp.constraints.len();
        let nstruct = 2 * n + nslack;
        let width = nstruct + m + 1;
        let mut rows = Vec::with_capacity(m);
        let mut slack = 2 * n;
        let mut basis = Vec::with_capacity(m);
        for (i, c) in lp.constraints.iter().enumerate() {
            let mut row = vec![Rational::zero(); width];
            for (j, a) in c.coeffs.iter().enumerate() {
                row[j] = a.clone();
                row[n + j] = -a.clone();
            }
            let slack_col = match c.relation {
                Relation::Le => {
                    row[slack] = Rational::one();
                    slack += 1;
                    Some(slack - 1)
                }
                Relation::Ge => {
                    row[slack] = -Rational::one();
                    slack += 1;
                    Some(slack - 1)
                }
                Relation::Eq => None,
            };
            row[width - 1] = c.rhs.clone();
            if c.rhs.is_negative() || (c.rhs.is_zero() && c.relation == Relation::Ge) {
                for x in row.iter_mut() {
                    *x = -x.clone();
                }
            }
            row[nstruct + i] = Rational::one();
            // a slack with coefficient +1 starts the basis without an artificial
            match slack_col {
                Some(s) if row[s].is_one() => basis.push(s),
                _ => basis.push(nstruct + i),
            }
            rows.push(row);
        }
        Tableau { rows, basis, nstruct, nartificial: m, nvars: n }
    }

    fn width(&self) -> usize {
        self.nstruct + self.nartificial + 1
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let w = self.width();
        let inv = Rational::one() / &self.rows[r][c];
        for x in self.rows[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for j in 0..w {
                if !pivot_row[j].is_zero() {
                    row[j] -= &f * &pivot_row[j];
                }
            }
        }
        self.basis[r] = c;
    }

    /// Primal simplex maximizing `cost · x` over columns `< allowed`.
    fn run(&mut self, cost: &[Rational], allowed: usize) -> Result<(), LpError> {
        let w = self.width();
        loop {
            // reduced profit of column j: cost_j − c_B · column_j
            let mut entering = None;
            for j in 0..allowed {
                if self.basis.contains(&j) {
                    continue;
                }
                let mut red = cost[j].clone();
                for (i, row) in self.rows.iter().enumerate() {
                    if !row[j].is_zero() {
                        red -= &cost[self.basis[i]] * &row[j];
                    }
                }
                if red.is_positive() {
                    entering = Some(j);
                    break;
                }
            }
            let Some(c) = entering else {
                return Ok(());
            };
            let mut leave: Option<(usize, Rational)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if row[c].is_positive() {
                    let ratio = &row[w - 1] / &row[c];
                    let better = match &leave {
                        None => true,
                        Some((li, lr)) => ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li]),
                    };
                    if better {
                        leave = Some((i, ratio));
                    }
                }
            }
            let Some((r, _)) = leave else {
                return Err(LpError::Unbounded);
            };
            self.pivot(r, c);
        }
    }

    fn solve(mut self, objective: &[Rational]) -> Result<LpSolution, LpError> {
        let w = self.width();
        let total = self.nstruct + self.nartificial;
        let mut phase1 = vec![Rational::zero(); total];
        for c in phase1.iter_mut().skip(self.nstruct) {
            *c = -Rational::one();
        }
        self.run(&phase1, total)?;
        let infeasibility: Rational = self
            .basis
            .iter()
            .zip(&self.rows)
            .filter(|(&b, _)| b >= self.nstruct)
            .fold(Rational::zero(), |acc, (_, row)| acc + &row[w - 1]);
        if !infeasibility.is_zero() {
            return Err(LpError::Infeasible);
        }
        // drive zero-level artificials out of the basis; drop redundant rows
        let mut i = 0;
        while i < self.rows.len() {
            if self.basis[i] >= self.nstruct {
                match (0..self.nstruct).find(|&j| !self.rows[i][j].is_zero()) {
                    Some(j) => {
                        self.pivot(i, j);
                        i += 1;
                    }
                    None => {
                        self.rows.remove(i);
                        self.basis.remove(i);
                    }
                }
            } else {
                i += 1;
            }
        }
        let n = self.nvars;
        let mut cost = vec![Rational::zero(); total];
        for (j, c) in objective.iter().enumerate() {
            cost[j] = c.clone();
            cost[n + j] = -c.clone();
        }
        self.run(&cost, self.nstruct)?;
        let mut value = vec![Rational::zero(); total];
        for (i, &b) in self.basis.iter().enumerate() {
            value[b] = self.rows[i][w - 1].clone();
        }
        let vertex: Vec<Rational> = (0..n).map(|j| &value[j] - &value[n + j]).collect();
        Ok(LpSolution { optimum: dot(objective, &vertex), vertex })
    }
}
