//! Dense exact linear algebra on small rational matrices.

use num_traits::{One, Zero};

use super::rational::Rational;
use crate::error::{Error, Result};

pub type Matrix = Vec<Vec<Rational>>;

pub fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect())
        .collect()
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).fold(Rational::zero(), |acc, k| acc + &row[k] * &b[k][j]))
                .collect()
        })
        .collect()
}

pub fn mat_vec(a: &Matrix, v: &[Rational]) -> Vec<Rational> {
    a.iter().map(|row| row.iter().zip(v).fold(Rational::zero(), |acc, (x, y)| acc + x * y)).collect()
}

pub fn transpose(a: &Matrix) -> Matrix {
    let cols = a.first().map_or(0, Vec::len);
    (0..cols).map(|j| a.iter().map(|row| row[j].clone()).collect()).collect()
}

/// Reduced row echelon form and its pivot columns.
pub fn rref(a: &Matrix) -> (Matrix, Vec<usize>) {
    let mut m = a.clone();
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = Rational::one() / &m[r][c];
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..cols {
                    let delta = &f * &m[r][j];
                    m[i][j] -= delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (m, pivots)
}

pub fn rank(a: &Matrix) -> usize {
    rref(a).1.len()
}

pub fn determinant(a: &Matrix) -> Rational {
    let n = a.len();
    let mut m = a.clone();
    let mut det = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return Rational::zero();
        };
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        det *= &m[c][c];
        for i in c + 1..n {
            if !m[i][c].is_zero() {
                let f = &m[i][c] / &m[c][c];
                for j in c..n {
                    let delta = &f * &m[c][j];
                    m[i][j] -= delta;
                }
            }
        }
    }
    det
}

pub fn inverse(a: &Matrix) -> Option<Matrix> {
    let n = a.len();
    let aug: Matrix = a
        .iter()
        .zip(identity(n))
        .map(|(row, id)| row.iter().cloned().chain(id).collect())
        .collect();
    let (r, pivots) = rref(&aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(r.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Basis of the right nullspace, one vector per free column, in the order
/// of the free columns.
pub fn nullspace(a: &Matrix, ncols: usize) -> Vec<Vec<Rational>> {
    if a.is_empty() {
        return identity(ncols);
    }
    let (r, pivots) = rref(a);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); ncols];
            v[f] = Rational::one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = -r[row][f].clone();
            }
            v
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PivotOrders {
    /// Strictly increasing pivot columns, one per unit of rank.
    pub orders: Vec<usize>,
    /// Number of rows lost to rank deficiency; each counts as "order ≥ N".
    pub deficient: usize,
}

/// Pivot columns of the row-reduced matrix. When rows are series
/// coefficients indexed by order, these are the distinct vanishing orders
/// attained by the span of the rows.
pub fn pivot_orders(rows: &Matrix) -> Result<PivotOrders> {
    if rows.is_empty() || rows[0].is_empty() {
        return Err(Error::input("pivot_orders needs a nonempty matrix"));
    }
    let width = rows[0].len();
    if rows.iter().any(|r| r.len() != width) {
        return Err(Error::input("matrix rows have different lengths"));
    }
    let (_, pivots) = rref(rows);
    Ok(PivotOrders { deficient: rows.len() - pivots.len(), orders: pivots })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::int;

    fn m(rows: &[&[i64]]) -> Matrix {
        rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()
    }

    #[test]
    fn pivot_examples() {
        assert_eq!(pivot_orders(&m(&[&[1, 0, 0], &[0, 0, 1]])).unwrap().orders, vec![0, 2]);
        assert_eq!(pivot_orders(&m(&[&[1, 1, 0], &[1, 1, 1]])).unwrap().orders, vec![0, 2]);
        let p = pivot_orders(&m(&[&[1, 1, 0], &[2, 2, 0]])).unwrap();
        assert_eq!((p.orders, p.deficient), (vec![0], 1));
        assert!(pivot_orders(&Vec::new()).is_err());
    }

    #[test]
    fn determinant_and_inverse() {
        let a = m(&[&[2, 1, 0], &[0, 1, 3], &[1, 0, 1]]);
        assert_eq!(determinant(&a), int(5));
        let inv = inverse(&a).unwrap();
        assert_eq!(mat_mul(&a, &inv), identity(3));
        assert!(inverse(&m(&[&[1, 2], &[2, 4]])).is_none());
    }

    #[test]
    fn nullspace_vectors_are_annihilated() {
        let a = m(&[&[1, 1, 1, 0], &[0, 1, -1, 2]]);
        let ns = nullspace(&a, 4);
        assert_eq!(ns.len(), 2);
        for v in ns {
            assert!(mat_vec(&a, &v).iter().all(Zero::is_zero));
        }
    }
}
