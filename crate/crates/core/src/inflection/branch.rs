//! Power-series parametrization of a smooth branch.

use num_traits::Zero;

use crate::curve::{AffineChart, PointedCurve, Surface};
use crate::error::{Error, Result};
use crate::exact::{series_substitute, Polynomial, Rational, TruncatedSeries};

/// A branch `s ↦ point + (u(s), v(s))` in an affine chart, lifted to
/// homogeneous coordinates.
#[derive(Clone, Debug)]
pub struct Branch {
    pub chart: AffineChart,
    /// One series per homogeneous coordinate.
    pub coordinates: Vec<TruncatedSeries>,
    /// Which affine variable (0 = u, 1 = v) is the parameter.
    pub parameter: usize,
}

impl Branch {
    pub fn truncation(&self) -> usize {
        self.coordinates[0].truncation()
    }

    /// Restriction of a form to the branch.
    pub fn restrict(&self, form: &Polynomial) -> Result<TruncatedSeries> {
        series_substitute(form, &self.coordinates)
    }
}

/// Branch of the zero set of `form` through `point` (smooth there).
pub fn branch_of_form(surface: Surface, form: &Polynomial, point: &[Rational], n: usize) -> Result<Branch> {
    if n < 2 {
        return Err(Error::input("branch truncation must be at least 2"));
    }
    let chart = AffineChart::at(surface, point)?;
    let f = chart.to_affine(form);
    if !f.coefficient(&[0, 0]).is_zero() {
        return Err(Error::input("point is not on the curve"));
    }
    let fu = f.coefficient(&[1, 0]);
    let fv = f.coefficient(&[0, 1]);
    let (solve, parameter, slope) = if !fv.is_zero() {
        (1, 0, fv)
    } else if !fu.is_zero() {
        (0, 1, fu)
    } else {
        return Err(Error::SingularPoint("gradient vanishes at the marked point".into()));
    };
    let mut affine = [TruncatedSeries::zero(n), TruncatedSeries::zero(n)];
    affine[parameter] = TruncatedSeries::parameter(n);
    for k in 1..n {
        let residual = series_substitute(&f, &affine)?;
        let e = residual.coeff(k).clone();
        if !e.is_zero() {
            let mut s = affine[solve].clone();
            s.set_coeff(k, -(e / &slope));
            affine[solve] = s;
        }
    }
    let coordinates = (0..surface.nvars())
        .map(|i| {
            if chart.fixed.contains(&i) {
                TruncatedSeries::constant(n, Rational::from_integer(1.into()))
            } else {
                let k = if chart.moving[0] == i { 0 } else { 1 };
                affine[k].add(&TruncatedSeries::constant(n, chart.point[i].clone()))
            }
        })
        .collect();
    Ok(Branch { chart, coordinates, parameter })
}

/// Branch of the curve at its marked point, to order `n`.
pub fn local_branch(curve: &PointedCurve, n: usize) -> Result<Branch> {
    branch_of_form(curve.surface, &curve.equation, &curve.point, n)
}
