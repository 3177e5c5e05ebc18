use std::collections::BTreeSet;
use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::surface::Surface;
use crate::error::{Error, Result};
use crate::exact::rational::{format_rational, parse_rational};
use crate::exact::{Polynomial, Rational};

/// A point `p` together with a curve `C` of degree `d` through it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointedCurve {
    pub surface: Surface,
    pub degree: u32,
    pub point: Vec<Rational>,
    pub equation: Polynomial,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    DegreeTooSmall(u32),
    PointArity { expected: usize, found: usize },
    ZeroPoint,
    EquationArity { expected: usize, found: usize },
    ZeroEquation,
    WrongDegree(Vec<u32>),
    PointNotOnCurve,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DegreeTooSmall(d) => write!(f, "degree {d} is below 3"),
            Violation::PointArity { expected, found } => {
                write!(f, "point has {found} coordinates, expected {expected}")
            }
            Violation::ZeroPoint => write!(f, "point has a zero factor"),
            Violation::EquationArity { expected, found } => {
                write!(f, "equation has {found} variables, expected {expected}")
            }
            Violation::ZeroEquation => write!(f, "equation is zero"),
            Violation::WrongDegree(e) => write!(f, "exponent {e:?} does not have the declared degree"),
            Violation::PointNotOnCurve => write!(f, "p ∉ C"),
        }
    }
}

impl PointedCurve {
    /// Builds and validates.
    pub fn new(surface: Surface, degree: u32, point: Vec<Rational>, equation: Polynomial) -> Result<Self> {
        let c = PointedCurve { surface, degree, point, equation };
        c.validate().map_err(|v| Error::input(v.to_string()))?;
        Ok(c)
    }

    /// First violated invariant, if any.
    pub fn validate(&self) -> std::result::Result<(), Violation> {
        let n = self.surface.nvars();
        if self.degree < 3 {
            return Err(Violation::DegreeTooSmall(self.degree));
        }
        if self.point.len() != n {
            return Err(Violation::PointArity { expected: n, found: self.point.len() });
        }
        if self.surface.factors().iter().any(|r| self.point[r.clone()].iter().all(Zero::is_zero)) {
            return Err(Violation::ZeroPoint);
        }
        if self.equation.nvars() != n {
            return Err(Violation::EquationArity { expected: n, found: self.equation.nvars() });
        }
        if self.equation.is_zero() {
            return Err(Violation::ZeroEquation);
        }
        if let Some(e) = self.equation.support().find(|e| !self.surface.exponent_fits(e, self.degree)) {
            return Err(Violation::WrongDegree(e.clone()));
        }
        if !self.equation.evaluate(&self.point).expect("arity checked").is_zero() {
            return Err(Violation::PointNotOnCurve);
        }
        Ok(())
    }

    pub fn nvars(&self) -> usize {
        self.surface.nvars()
    }

    pub fn to_file(&self) -> CurveFile {
        CurveFile {
            surface: self.surface,
            degree: self.degree,
            point: self.point.iter().map(format_rational).collect(),
            terms: self
                .equation
                .terms()
                .iter()
                .map(|(e, c)| TermEntry { exp: e.clone(), coeff: format_rational(c) })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_file()).expect("curve serializes")
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("curve serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: CurveFile = serde_json::from_str(text).map_err(|e| Error::Parse {
            location: format!("line {} column {}", e.line(), e.column()),
            message: e.to_string(),
        })?;
        file.into_curve()
    }
}

/// On-disk curve interchange format.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveFile {
    pub surface: Surface,
    pub degree: u32,
    pub point: Vec<String>,
    pub terms: Vec<TermEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermEntry {
    pub exp: Vec<u32>,
    pub coeff: String,
}

impl CurveFile {
    pub fn into_curve(self) -> Result<PointedCurve> {
        let at = |location: String, message: String| Error::Parse { location, message };
        let n = self.surface.nvars();
        if self.point.len() != n {
            return Err(at(
                "point".into(),
                format!("expected {n} coordinates, found {}", self.point.len()),
            ));
        }
        let mut point = Vec::with_capacity(n);
        for (i, s) in self.point.iter().enumerate() {
            point.push(parse_rational(s).map_err(|e| at(format!("point[{i}]"), e.to_string()))?);
        }
        let mut seen = BTreeSet::new();
        let mut equation = Polynomial::zero(n);
        for (i, t) in self.terms.iter().enumerate() {
            if !self.surface.exponent_fits(&t.exp, self.degree) {
                return Err(at(
                    format!("terms[{i}].exp"),
                    format!("exponent {:?} does not fit degree {} on {}", t.exp, self.degree, self.surface),
                ));
            }
            if !seen.insert(t.exp.clone()) {
                return Err(at(format!("terms[{i}].exp"), format!("duplicate exponent {:?}", t.exp)));
            }
            let c = parse_rational(&t.coeff).map_err(|e| at(format!("terms[{i}].coeff"), e.to_string()))?;
            if c.is_zero() {
                return Err(at(format!("terms[{i}].coeff"), "zero coefficient".into()));
            }
            equation.add_term(t.exp.clone(), c);
        }
        let curve = PointedCurve { surface: self.surface, degree: self.degree, point, equation };
        curve.validate().map_err(|v| at("curve".into(), v.to_string()))?;
        Ok(curve)
    }
}
