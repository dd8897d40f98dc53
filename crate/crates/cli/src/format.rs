//! JSON file formats. Indices are 1-based; scalars are strings in the
//! `parse_scalar` grammar so that exact values survive the round trip.

use std::fs;
use std::path::Path;

use serde::{de::DeserializeOwned, Deserialize, Serialize};

use hsuper_core::{format_scalar, parse_scalar, Cochain, HomLieSuperalgebra, Matrix, Scalar};

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketEntry {
    pub i: usize,
    pub j: usize,
    pub coeffs: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub name: String,
    pub parity: Vec<u8>,
    pub bracket: Vec<BracketEntry>,
    pub alpha: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CochainEntry {
    pub out: usize,
    pub tuple: Vec<usize>,
    pub coeff: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CochainFile {
    pub degree: usize,
    pub parity: u8,
    pub entries: Vec<CochainEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessFile {
    pub matrix: Vec<Vec<String>>,
}

pub fn read_text(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn write_text(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn from_json<T: DeserializeOwned>(text: &str, origin: &str) -> Result<T, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::parse(origin, e))
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("file types always serialize")
}

fn scalar(text: &str, context: impl FnOnce() -> String) -> Result<Scalar, CliError> {
    parse_scalar(text).map_err(|e| CliError::parse(context(), e))
}

fn strings(v: &[Scalar]) -> Vec<String> {
    v.iter().map(format_scalar).collect()
}

fn parse_matrix(rows: &[Vec<String>], field: &str) -> Result<Matrix, CliError> {
    let mut parsed = Vec::with_capacity(rows.len());
    for (r, row) in rows.iter().enumerate() {
        let mut out = Vec::with_capacity(row.len());
        for (c, text) in row.iter().enumerate() {
            out.push(scalar(text, || format!("{field}[{}][{}]", r + 1, c + 1))?);
        }
        parsed.push(out);
    }
    Matrix::from_rows(parsed).map_err(|e| CliError::invariant(field, e))
}

fn matrix_strings(m: &Matrix) -> Vec<Vec<String>> {
    m.to_rows().iter().map(|r| strings(r)).collect()
}

impl AlgebraFile {
    pub fn from_algebra(name: &str, g: &HomLieSuperalgebra) -> Self {
        AlgebraFile {
            name: name.to_string(),
            parity: g.parity().to_vec(),
            bracket: g
                .canonical_entries()
                .into_iter()
                .map(|(i, j, v)| BracketEntry {
                    i: i + 1,
                    j: j + 1,
                    coeffs: strings(&v),
                })
                .collect(),
            alpha: matrix_strings(g.alpha()),
        }
    }

    pub fn to_algebra(&self) -> Result<HomLieSuperalgebra, CliError> {
        let n = self.parity.len();
        if let Some(k) = self.parity.iter().position(|&p| p > 1) {
            return Err(CliError::invariant(format!("parity[{}]", k + 1), "must be 0 or 1"));
        }
        let mut entries = Vec::with_capacity(self.bracket.len());
        for (k, b) in self.bracket.iter().enumerate() {
            let ctx = format!("bracket[{}]", k + 1);
            if b.i == 0 || b.j == 0 || b.i > n || b.j > n {
                return Err(CliError::invariant(ctx, format!("indices must lie in 1..={n}")));
            }
            if b.i > b.j {
                return Err(CliError::invariant(ctx, "entries need i ≤ j"));
            }
            if b.coeffs.len() != n {
                return Err(CliError::invariant(
                    ctx,
                    format!("coeffs has length {}, expected {n}", b.coeffs.len()),
                ));
            }
            let mut v = Vec::with_capacity(n);
            for (c, text) in b.coeffs.iter().enumerate() {
                v.push(scalar(text, || format!("{ctx}.coeffs[{}]", c + 1))?);
            }
            entries.push((b.i - 1, b.j - 1, v));
        }
        let alpha = parse_matrix(&self.alpha, "alpha")?;
        if alpha.rows() != n || alpha.cols() != n {
            return Err(CliError::invariant("alpha", format!("must be {n}×{n}")));
        }
        HomLieSuperalgebra::new(self.parity.clone(), entries, alpha).map_err(|e| CliError::invariant(&self.name, e))
    }
}

impl CochainFile {
    pub fn from_cochain(phi: &Cochain) -> Self {
        CochainFile {
            degree: phi.degree(),
            parity: phi.parity(),
            entries: phi
                .entries()
                .into_iter()
                .map(|(out, tuple, c)| CochainEntry {
                    out: out + 1,
                    tuple: tuple.iter().map(|i| i + 1).collect(),
                    coeff: format_scalar(&c),
                })
                .collect(),
        }
    }

    pub fn to_cochain(&self, algebra_parity: &[u8]) -> Result<Cochain, CliError> {
        let mut entries = Vec::with_capacity(self.entries.len());
        for (k, e) in self.entries.iter().enumerate() {
            let ctx = format!("entries[{}]", k + 1);
            if e.out == 0 || e.tuple.contains(&0) {
                return Err(CliError::invariant(ctx, "indices are 1-based"));
            }
            let c = scalar(&e.coeff, || format!("{ctx}.coeff"))?;
            entries.push((e.out - 1, e.tuple.iter().map(|i| i - 1).collect(), c));
        }
        Cochain::from_entries(algebra_parity, self.degree, self.parity, &entries)
            .map_err(|e| CliError::invariant("cochain", e))
    }
}

impl WitnessFile {
    pub fn from_matrix(m: &Matrix) -> Self {
        WitnessFile { matrix: matrix_strings(m) }
    }

    pub fn to_matrix(&self) -> Result<Matrix, CliError> {
        parse_matrix(&self.matrix, "matrix")
    }
}

pub fn load_algebra(path: &Path) -> Result<HomLieSuperalgebra, CliError> {
    let file: AlgebraFile = from_json(&read_text(path)?, &path.display().to_string())?;
    file.to_algebra()
}

pub fn load_cochain(path: &Path, algebra_parity: &[u8]) -> Result<Cochain, CliError> {
    let file: CochainFile = from_json(&read_text(path)?, &path.display().to_string())?;
    file.to_cochain(algebra_parity)
}

pub fn load_witness(path: &Path) -> Result<Matrix, CliError> {
    let file: WitnessFile = from_json(&read_text(path)?, &path.display().to_string())?;
    file.to_matrix()
}
