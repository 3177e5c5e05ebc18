//! Divisor classes of relative Hessians on the space of pointed curves and
//! the slopes of their invariant sections.
//!
//! Classes live on `Pic Y × Z`: `(A, B)` on P2 and `(A₁, A₂, B)` on the
//! quadric, the last coordinate being the pullback of `𝒪(1)` from the
//! parameter space of curves.

use std::fmt;

use num_integer::binomial;
use serde::Serialize;

use crate::curve::Surface;
use crate::error::{Error, Result};
use crate::exact::rational::serde_rational;
use crate::exact::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DivisorClass {
    pub surface: Surface,
    pub components: Vec<i64>,
    pub description: String,
}

impl DivisorClass {
    fn new(surface: Surface, components: Vec<i64>, description: String) -> Self {
        DivisorClass { surface, components, description }
    }

    pub fn b(&self) -> i64 {
        *self.components.last().expect("nonempty class")
    }

    pub fn is_symmetric(&self) -> bool {
        match self.surface {
            Surface::P2 => true,
            Surface::Quadric => self.components[0] == self.components[1],
        }
    }

    /// Componentwise difference.
    pub fn minus(&self, other: &DivisorClass, description: impl Into<String>) -> Result<DivisorClass> {
        if self.surface != other.surface {
            return Err(Error::input("classes live on different surfaces"));
        }
        let components = self.components.iter().zip(&other.components).map(|(a, b)| a - b).collect();
        Ok(DivisorClass::new(self.surface, components, description.into()))
    }

    pub fn plus(&self, other: &DivisorClass, description: impl Into<String>) -> Result<DivisorClass> {
        if self.surface != other.surface {
            return Err(Error::input("classes live on different surfaces"));
        }
        let components = self.components.iter().zip(&other.components).map(|(a, b)| a + b).collect();
        Ok(DivisorClass::new(self.surface, components, description.into()))
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c: Vec<String> = self.components.iter().map(i64::to_string).collect();
        write!(f, "({})", c.join(", "))
    }
}

fn check_m(surface: Surface, d: u32, m: &[u32]) -> Result<()> {
    let expected = match surface {
        Surface::P2 => 1,
        Surface::Quadric => 2,
    };
    if m.len() != expected {
        return Err(Error::input(format!("{surface} classes take {expected} degree(s), got {}", m.len())));
    }
    if d < 3 {
        return Err(Error::input(format!("degree {d} is below 3")));
    }
    if m.iter().any(|&k| k >= d) {
        let h0 = twisted_sections(surface, d, m);
        return Err(Error::input(format!(
            "m must be below d: the pushforward rank formula fails and h0(L - C) = {h0} is nonzero"
        )));
    }
    Ok(())
}

/// `h⁰` of the system twisted down by the curve: `h⁰(𝒪(m − d))` on P2 and
/// `h⁰(𝒪(m₁ − d, m₂ − d))` on the quadric.
pub fn twisted_sections(surface: Surface, d: u32, m: &[u32]) -> i64 {
    let shifted: Vec<i64> = m.iter().map(|&k| k as i64 - d as i64).collect();
    match surface {
        Surface::P2 => {
            let k = shifted[0];
            if k < 0 { 0 } else { binomial(k + 2, 2) }
        }
        Surface::Quadric => {
            if shifted.iter().any(|&k| k < 0) {
                0
            } else {
                (shifted[0] + 1) * (shifted[1] + 1)
            }
        }
    }
}

fn section_rank(surface: Surface, m: &[u32]) -> i64 {
    match surface {
        Surface::P2 => binomial(m[0] as i64 + 2, 2),
        Surface::Quadric => (m[0] as i64 + 1) * (m[1] as i64 + 1),
    }
}

/// Class of the relative Hessian of `𝒪(m)` (resp. `𝒪(m₁, m₂)`), unsymmetrized
/// on the quadric.
pub fn relative_hessian_class(surface: Surface, d: u32, m: &[u32]) -> Result<DivisorClass> {
    check_m(surface, d, m)?;
    let n1 = section_rank(surface, m);
    let pairs = binomial(n1, 2);
    let d = d as i64;
    let b = pairs - twisted_sections(surface, d as u32, m);
    let (components, label) = match surface {
        Surface::P2 => (vec![n1 * m[0] as i64 + pairs * (d - 3), b], format!("W_{}", m[0])),
        Surface::Quadric => (
            vec![n1 * m[0] as i64 + pairs * (d - 2), n1 * m[1] as i64 + pairs * (d - 2), b],
            format!("W'_{{{},{}}}", m[0], m[1]),
        ),
    };
    Ok(DivisorClass::new(surface, components, format!("{label}, d = {d}")))
}

/// Class of `W′_{m₁,m₂} ⊗ W′_{m₂,m₁}`, or of `W′_{m,m}` itself when the two
/// degrees agree.
pub fn symmetrized_class_quadric(d: u32, m1: u32, m2: u32) -> Result<DivisorClass> {
    let a = relative_hessian_class(Surface::Quadric, d, &[m1, m2])?;
    let label = format!("W_{{{m1},{m2}}}, d = {d}");
    if m1 == m2 {
        return Ok(DivisorClass { description: label, ..a });
    }
    let b = relative_hessian_class(Surface::Quadric, d, &[m2, m1])?;
    a.plus(&b, label)
}

/// Class of the sextatic component `W₂′ = W₂ − W₁`.
pub fn h2prime_class(d: u32) -> Result<DivisorClass> {
    let w2 = relative_hessian_class(Surface::P2, d, &[2])?;
    let w1 = relative_hessian_class(Surface::P2, d, &[1])?;
    w2.minus(&w1, format!("W_2', d = {d}"))
}

/// `A / B` for a symmetric class.
pub fn wall_slope(class: &DivisorClass) -> Result<Rational> {
    if !class.is_symmetric() {
        return Err(Error::input(format!("class {class} is not symmetric in the two factors")));
    }
    if class.b() <= 0 {
        return Err(Error::input(format!("class {class} has nonpositive last component")));
    }
    Ok(Rational::new(class.components[0].into(), class.b().into()))
}

/// The invariant section vanishing on the first inflectionary divisor:
/// `W₁` on P2 and `W_{0,1}` on the quadric.
pub fn first_divisor_class(surface: Surface, d: u32) -> Result<DivisorClass> {
    match surface {
        Surface::P2 => relative_hessian_class(surface, d, &[1]),
        Surface::Quadric => symmetrized_class_quadric(d, 0, 1),
    }
}

/// `W₂′` on P2 and `W_{1,1}` on the quadric.
pub fn second_divisor_class(surface: Surface, d: u32) -> Result<DivisorClass> {
    match surface {
        Surface::P2 => h2prime_class(d),
        Surface::Quadric => symmetrized_class_quadric(d, 1, 1),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassRow {
    pub degree: u32,
    pub m: Vec<u32>,
    pub class: DivisorClass,
    /// `None` for classes asymmetric in the two factors.
    #[serde(serialize_with = "optional_rational")]
    pub slope: Option<Rational>,
}

fn optional_rational<S: serde::Serializer>(v: &Option<Rational>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(r) => serde_rational::serialize(r, s),
        None => s.serialize_none(),
    }
}

/// One row per degree and twist: `m = 1, 2` on P2, `(0,1)`, `(1,0)`, `(1,1)`
/// on the quadric (unsymmetrized).
pub fn class_table(surface: Surface, degrees: &[u32]) -> Result<Vec<ClassRow>> {
    let twists: Vec<Vec<u32>> = match surface {
        Surface::P2 => vec![vec![1], vec![2]],
        Surface::Quadric => vec![vec![0, 1], vec![1, 0], vec![1, 1]],
    };
    let mut rows = Vec::new();
    for &d in degrees {
        for m in &twists {
            let class = relative_hessian_class(surface, d, m)?;
            let slope = if class.is_symmetric() { Some(wall_slope(&class)?) } else { None };
            rows.push(ClassRow { degree: d, m: m.clone(), class, slope });
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{int, rat};

    #[test]
    fn plane_classes() {
        assert_eq!(relative_hessian_class(Surface::P2, 4, &[1]).unwrap().components, vec![6, 3]);
        assert_eq!(relative_hessian_class(Surface::P2, 4, &[2]).unwrap().components, vec![27, 15]);
        assert_eq!(h2prime_class(4).unwrap().components, vec![21, 12]);
        assert_eq!(h2prime_class(3).unwrap().components, vec![9, 12]);
        assert!(relative_hessian_class(Surface::P2, 3, &[3]).is_err());
    }

    #[test]
    fn quadric_classes() {
        assert_eq!(relative_hessian_class(Surface::Quadric, 3, &[0, 1]).unwrap().components, vec![1, 3, 1]);
        assert_eq!(symmetrized_class_quadric(3, 0, 1).unwrap().components, vec![4, 4, 2]);
        assert_eq!(symmetrized_class_quadric(3, 1, 1).unwrap().components, vec![10, 10, 6]);
    }

    #[test]
    fn slopes() {
        let c = |v: Vec<i64>, s| DivisorClass::new(s, v, String::new());
        assert_eq!(wall_slope(&c(vec![6, 3], Surface::P2)).unwrap(), int(2));
        assert_eq!(wall_slope(&c(vec![21, 12], Surface::P2)).unwrap(), rat(7, 4));
        assert_eq!(wall_slope(&c(vec![10, 10, 6], Surface::Quadric)).unwrap(), rat(5, 3));
        assert!(wall_slope(&c(vec![1, 3, 1], Surface::Quadric)).is_err());
    }

    #[test]
    fn table_rows() {
        let rows = class_table(Surface::Quadric, &[3]).unwrap();
        assert_eq!(rows.len(), 3);
        assert_eq!(rows[0].slope, None);
        assert_eq!(rows[2].slope, Some(rat(5, 3)));
        let json = serde_json::to_value(class_table(Surface::P2, &[4]).unwrap()).unwrap();
        assert_eq!(json[0]["slope"], "2");
    }

    #[test]
    fn twisted_sections_vanish_below_d() {
        assert_eq!(twisted_sections(Surface::P2, 4, &[3]), 0);
        assert_eq!(twisted_sections(Surface::P2, 4, &[5]), 3);
        assert_eq!(twisted_sections(Surface::Quadric, 3, &[3, 4]), 2);
    }
}
