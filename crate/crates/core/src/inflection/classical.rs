//! The classical Hessian of a ternary form.

use crate::error::{Error, Result};
use crate::exact::Polynomial;

/// Matrix of second partials.
pub fn hessian_matrix(form: &Polynomial) -> Result<Vec<Vec<Polynomial>>> {
    if form.nvars() != 3 {
        return Err(Error::input("the classical Hessian is defined for ternary forms"));
    }
    let grad = form.gradient();
    Ok(grad.iter().map(|g| g.gradient()).collect())
}

/// `det(∂²F/∂x_i∂x_j)`, of degree `3(d − 2)` unless it vanishes.
pub fn hessian_determinant(form: &Polynomial) -> Result<Polynomial> {
    let h = hessian_matrix(form)?;
    let minor = |a: usize, b: usize, c: usize, d: usize| &(&h[1][a] * &h[2][b]) - &(&h[1][c] * &h[2][d]);
    let t0 = &h[0][0] * &minor(1, 2, 2, 1);
    let t1 = &h[0][1] * &minor(0, 2, 2, 0);
    let t2 = &h[0][2] * &minor(0, 1, 1, 0);
    Ok(&(&t0 - &t1) + &t2)
}
