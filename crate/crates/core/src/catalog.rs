//! Named algebras: the five 3-dimensional multiplicative Heisenberg families,
//! the 3-dimensional Lie superalgebras with one even and two odd basis
//! vectors, and three twisted members of the `L_{1,2}` list.
//!
//! Heisenberg families use the basis `(h | v1, v2)` with `[v1,v2] = h`, or
//! `(u | v, h)` with `[u,v] = h`. Everything else uses `(e1 | e2, e3)`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::algebra::HomLieSuperalgebra;
use crate::field::Scalar;
use crate::linalg::{Matrix, Vector};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    H1Diag,
    H1Antidiag,
    H1Row,
    H2Diag,
    H2Offdiag,
    L1,
    L2,
    L3,
    L4,
    L5,
    L2Prime,
    L12_43,
    L12_45,
    L12_46,
}

impl Family {
    pub const ALL: [Family; 14] = [
        Family::H1Diag,
        Family::H1Antidiag,
        Family::H1Row,
        Family::H2Diag,
        Family::H2Offdiag,
        Family::L1,
        Family::L2,
        Family::L3,
        Family::L4,
        Family::L5,
        Family::L2Prime,
        Family::L12_43,
        Family::L12_45,
        Family::L12_46,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::H1Diag => "h1_diag",
            Family::H1Antidiag => "h1_antidiag",
            Family::H1Row => "h1_row",
            Family::H2Diag => "h2_diag",
            Family::H2Offdiag => "h2_offdiag",
            Family::L1 => "L1",
            Family::L2 => "L2",
            Family::L3 => "L3_lambda",
            Family::L4 => "L4",
            Family::L5 => "L5",
            Family::L2Prime => "L2prime",
            Family::L12_43 => "L12_43",
            Family::L12_45 => "L12_45",
            Family::L12_46 => "L12_46",
        }
    }

    /// Parameter names in their canonical order.
    pub fn param_names(self) -> &'static [&'static str] {
        match self {
            Family::H1Diag => &["mu11", "mu22"],
            Family::H1Antidiag => &["mu12", "mu21"],
            Family::H1Row => &["mu11", "mu12"],
            Family::H2Diag | Family::H2Offdiag => &["mu0", "mu11"],
            Family::L3 => &["lambda"],
            Family::L12_43 => &["a", "beta", "gamma"],
            Family::L12_45 => &["a", "beta", "gamma", "nu"],
            Family::L12_46 => &["a", "b", "beta", "mu"],
            Family::L1 | Family::L2 | Family::L4 | Family::L5 | Family::L2Prime => &[],
        }
    }

    /// One of the five multiplicative Heisenberg families.
    pub fn is_heisenberg_family(self) -> bool {
        matches!(
            self,
            Family::H1Diag | Family::H1Antidiag | Family::H1Row | Family::H2Diag | Family::H2Offdiag
        )
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = CatalogError;
    fn from_str(s: &str) -> Result<Self, CatalogError> {
        if s == "L3" {
            return Ok(Family::L3);
        }
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| CatalogError::UnknownFamily(s.to_string()))
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CatalogError {
    #[error("unknown family '{0}'")]
    UnknownFamily(String),
    #[error("family {family} needs parameter '{param}'")]
    MissingParam { family: Family, param: String },
    #[error("family {family} has no parameter '{param}'")]
    UnknownParam { family: Family, param: String },
    #[error("{family}: constraint {constraint} violated")]
    Constraint {
        family: Family,
        constraint: &'static str,
    },
}

/// A family together with concrete parameter values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogId {
    pub family: Family,
    pub params: BTreeMap<String, Scalar>,
}

impl CatalogId {
    pub fn new(family: Family, params: &[(&str, Scalar)]) -> Self {
        CatalogId {
            family,
            params: params
                .iter()
                .map(|(k, v)| (k.to_string(), v.clone()))
                .collect(),
        }
    }

    /// Parameter values in canonical order; fails on missing or unknown names.
    pub fn ordered_params(&self) -> Result<Vec<Scalar>, CatalogError> {
        let names = self.family.param_names();
        if let Some(k) = self.params.keys().find(|k| !names.contains(&k.as_str())) {
            return Err(CatalogError::UnknownParam {
                family: self.family,
                param: k.clone(),
            });
        }
        names
            .iter()
            .map(|&n| {
                self.params.get(n).cloned().ok_or(CatalogError::MissingParam {
                    family: self.family,
                    param: n.to_string(),
                })
            })
            .collect()
    }
}

impl fmt::Display for CatalogId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(", self.family)?;
        for (k, n) in self.family.param_names().iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            match self.params.get(*n) {
                Some(v) => write!(f, "{n}={v}")?,
                None => write!(f, "{n}=?")?,
            }
        }
        write!(f, ")")
    }
}

fn e(k: usize) -> Vector {
    let mut v = vec![Scalar::zero(); 3];
    v[k] = Scalar::one();
    v
}

fn vec3(a: Scalar, b: Scalar, c: Scalar) -> Vector {
    vec![a, b, c]
}

fn m3(rows: [[Scalar; 3]; 3]) -> Matrix {
    Matrix::from_rows(rows.into_iter().map(Vec::from).collect()).expect("3x3")
}

fn z() -> Scalar {
    Scalar::zero()
}

/// `(h | v1, v2)`, `[v1, v2] = h`.
pub fn h1_bracket(alpha: Matrix) -> HomLieSuperalgebra {
    HomLieSuperalgebra::new(vec![0, 1, 1], vec![(1, 2, e(0))], alpha).expect("valid h1")
}

/// `(u | v, h)`, `[u, v] = h`.
pub fn h2_bracket(alpha: Matrix) -> HomLieSuperalgebra {
    HomLieSuperalgebra::new(vec![0, 1, 1], vec![(0, 1, e(2))], alpha).expect("valid h2")
}

fn lie(entries: Vec<(usize, usize, Vector)>, alpha: Matrix) -> HomLieSuperalgebra {
    HomLieSuperalgebra::new(vec![0, 1, 1], entries, alpha).expect("valid catalog entry")
}

pub fn catalog(id: &CatalogId) -> Result<HomLieSuperalgebra, CatalogError> {
    let p = id.ordered_params()?;
    let family = id.family;
    let require = |ok: bool, constraint: &'static str| {
        if ok {
            Ok(())
        } else {
            Err(CatalogError::Constraint { family, constraint })
        }
    };
    let id3 = Matrix::identity(3);
    let g = match family {
        Family::H1Diag => {
            let (m11, m22) = (&p[0], &p[1]);
            require(!(m11 * m22).is_zero(), "mu11*mu22 != 0")?;
            h1_bracket(Matrix::diagonal(&[m11 * m22, m11.clone(), m22.clone()]))
        }
        Family::H1Antidiag => {
            let (m12, m21) = (&p[0], &p[1]);
            require(!(m12 * m21).is_zero(), "mu12*mu21 != 0")?;
            h1_bracket(m3([
                [m12 * m21, z(), z()],
                [z(), z(), m12.clone()],
                [z(), m21.clone(), z()],
            ]))
        }
        Family::H1Row => h1_bracket(m3([
            [z(), z(), z()],
            [z(), p[0].clone(), p[1].clone()],
            [z(), z(), z()],
        ])),
        Family::H2Diag => {
            let (m0, m11) = (&p[0], &p[1]);
            h2_bracket(Matrix::diagonal(&[m0.clone(), m11.clone(), m0 * m11]))
        }
        Family::H2Offdiag => {
            let (m0, m11) = (&p[0], &p[1]);
            require(((m0 - Scalar::one()) * m11).is_zero(), "(mu0-1)*mu11 = 0")?;
            h2_bracket(m3([
                [m0.clone(), z(), z()],
                [z(), m11.clone(), z()],
                [z(), Scalar::one(), m11.clone()],
            ]))
        }
        Family::L1 => lie(vec![(1, 1, e(0))], id3),
        Family::L2 => lie(vec![(1, 1, e(0)), (2, 2, e(0))], id3),
        Family::L3 => lie(
            vec![(0, 1, e(1)), (0, 2, vec3(z(), z(), p[0].clone()))],
            id3,
        ),
        Family::L4 => lie(
            vec![(0, 1, e(1)), (0, 2, vec3(z(), Scalar::one(), Scalar::one()))],
            id3,
        ),
        Family::L5 => lie(vec![(0, 2, e(1))], id3),
        Family::L2Prime => h1_bracket(id3),
        Family::L12_43 | Family::L12_45 | Family::L12_46 => {
            let a = p[0].clone();
            let (b, beta, rest) = match family {
                Family::L12_46 => (p[1].clone(), p[2].clone(), &p[3..]),
                _ => (z(), p[1].clone(), &p[2..]),
            };
            match family {
                Family::L12_46 => require(!(&a * &a + &b * &b).is_zero(), "a^2+b^2 != 0")?,
                _ => require(!a.is_zero(), "a != 0")?,
            }
            let sigma = m3([[z(), z(), z()], [z(), z(), a], [z(), z(), b]]);
            let mut entries = vec![(0, 2, vec3(z(), beta, z()))];
            match family {
                Family::L12_43 => entries.push((2, 2, vec3(rest[0].clone(), z(), z()))),
                Family::L12_45 => {
                    entries.push((1, 2, vec3(rest[1].clone(), z(), z())));
                    entries.push((2, 2, vec3(rest[0].clone(), z(), z())));
                }
                _ => entries.push((1, 2, vec3(rest[0].clone(), z(), z()))),
            }
            lie(entries, sigma)
        }
    };
    Ok(g)
}
