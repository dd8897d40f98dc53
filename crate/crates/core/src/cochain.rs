//! Super-skew multilinear maps stored on a reduced domain.
//!
//! A degree-`k` cochain is determined by its values on non-decreasing index
//! tuples; tuples repeating an even index carry no data because super-skew
//! symmetry forces the value to vanish. Values on other orderings follow
//! from `φ(…,y,x,…) = −(−1)^{|x||y|} φ(…,x,y,…)`.

use thiserror::Error;

use crate::algebra::sign;
use crate::field::Scalar;
use crate::linalg::{Matrix, Vector};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CochainError {
    #[error("tuple {0:?} is not non-decreasing")]
    NotCanonical(Vec<usize>),
    #[error("tuple {0:?} repeats an even basis index")]
    RepeatedEven(Vec<usize>),
    #[error("tuple {tuple:?} has length {found}, expected degree {degree}")]
    WrongDegree {
        tuple: Vec<usize>,
        degree: usize,
        found: usize,
    },
    #[error("index {index} out of range for dimension {dim}")]
    OutOfRange { index: usize, dim: usize },
    #[error("output e{out} on tuple {tuple:?} violates the cochain parity")]
    Parity { out: usize, tuple: Vec<usize> },
    #[error("duplicate entry for output e{out} on tuple {tuple:?}")]
    Duplicate { out: usize, tuple: Vec<usize> },
    #[error("cochain parity must be 0 or 1, got {0}")]
    BadParity(u8),
}

/// Canonical domain tuples of a given degree, in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TupleBasis {
    parity: Vec<u8>,
    degree: usize,
    tuples: Vec<Vec<usize>>,
}

impl TupleBasis {
    pub fn new(parity: &[u8], degree: usize) -> Self {
        let n = parity.len();
        let mut tuples = Vec::new();
        let mut cur = Vec::with_capacity(degree);
        fn rec(
            parity: &[u8],
            n: usize,
            left: usize,
            start: usize,
            cur: &mut Vec<usize>,
            out: &mut Vec<Vec<usize>>,
        ) {
            if left == 0 {
                out.push(cur.clone());
                return;
            }
            for i in start..n {
                if cur.last() == Some(&i) && parity[i] == 0 {
                    continue;
                }
                cur.push(i);
                rec(parity, n, left - 1, i, cur, out);
                cur.pop();
            }
        }
        rec(parity, n, degree, 0, &mut cur, &mut tuples);
        TupleBasis {
            parity: parity.to_vec(),
            degree,
            tuples,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn algebra_parity(&self) -> &[u8] {
        &self.parity
    }

    pub fn tuples(&self) -> &[Vec<usize>] {
        &self.tuples
    }

    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }

    pub fn index_of(&self, tuple: &[usize]) -> Option<usize> {
        self.tuples.binary_search_by(|t| t.as_slice().cmp(tuple)).ok()
    }

    pub fn tuple_parity(&self, tuple: &[usize]) -> u8 {
        tuple.iter().map(|&i| self.parity[i]).sum::<u8>() % 2
    }

    /// Sorts an arbitrary index tuple, returning the canonical position and
    /// the super-skew sign, or `None` when the value is forced to zero.
    pub fn canonicalize(&self, tuple: &[usize]) -> Option<(usize, Scalar)> {
        let mut t = tuple.to_vec();
        let mut flips = 0u32;
        let mut swaps = 0u32;
        for a in 0..t.len() {
            for b in 0..t.len() - 1 - a {
                if t[b] > t[b + 1] {
                    let (x, y) = (t[b], t[b + 1]);
                    swaps += 1;
                    flips += (self.parity[x] * self.parity[y]) as u32;
                    t.swap(b, b + 1);
                }
            }
        }
        let idx = self.index_of(&t)?;
        let s = sign(((swaps + flips) % 2) as u8);
        Some((idx, s))
    }
}

/// A homogeneous cochain; `coeffs[(m, T)]` is the `e_m`-coefficient of `φ(e_T)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cochain {
    basis: TupleBasis,
    parity: u8,
    coeffs: Matrix,
}

/// Matrix-display column order for 3-dimensional 2-cochains with parities
/// `(0,1,1)`: the label `a_{mn}` is the `e_m` coefficient on column `n`.
pub const DISPLAY_COLUMNS: [[usize; 2]; 6] = [[0, 0], [1, 1], [1, 2], [2, 2], [0, 1], [0, 2]];

impl Cochain {
    pub fn zero(algebra_parity: &[u8], degree: usize, parity: u8) -> Self {
        let basis = TupleBasis::new(algebra_parity, degree);
        let coeffs = Matrix::zeros(algebra_parity.len(), basis.len());
        Cochain {
            basis,
            parity,
            coeffs,
        }
    }

    /// Builds a cochain from `(output, tuple, coefficient)` triples on
    /// canonical tuples (0-based).
    pub fn from_entries(
        algebra_parity: &[u8],
        degree: usize,
        parity: u8,
        entries: &[(usize, Vec<usize>, Scalar)],
    ) -> Result<Self, CochainError> {
        if parity > 1 {
            return Err(CochainError::BadParity(parity));
        }
        let n = algebra_parity.len();
        let mut c = Cochain::zero(algebra_parity, degree, parity);
        let mut seen = vec![false; n * c.basis.len()];
        for (out, tuple, coeff) in entries {
            if tuple.len() != degree {
                return Err(CochainError::WrongDegree {
                    tuple: tuple.clone(),
                    degree,
                    found: tuple.len(),
                });
            }
            if let Some(&index) = tuple.iter().chain(std::iter::once(out)).find(|&&i| i >= n) {
                return Err(CochainError::OutOfRange { index, dim: n });
            }
            if tuple.windows(2).any(|w| w[0] > w[1]) {
                return Err(CochainError::NotCanonical(tuple.clone()));
            }
            let t = c
                .basis
                .index_of(tuple)
                .ok_or_else(|| CochainError::RepeatedEven(tuple.clone()))?;
            if coeff.is_zero() {
                continue;
            }
            if algebra_parity[*out] != (c.basis.tuple_parity(tuple) + parity) % 2 {
                return Err(CochainError::Parity {
                    out: *out,
                    tuple: tuple.clone(),
                });
            }
            if std::mem::replace(&mut seen[out * c.basis.len() + t], true) {
                return Err(CochainError::Duplicate {
                    out: *out,
                    tuple: tuple.clone(),
                });
            }
            c.coeffs[(*out, t)] = coeff.clone();
        }
        Ok(c)
    }

    /// 3-dimensional 2-cochain from display labels `((m, n), coeff)`, 1-based.
    pub fn from_display_labels(
        algebra_parity: &[u8],
        parity: u8,
        labels: &[((usize, usize), Scalar)],
    ) -> Result<Self, CochainError> {
        let entries: Vec<_> = labels
            .iter()
            .map(|&((m, n), ref c)| (m - 1, DISPLAY_COLUMNS[n - 1].to_vec(), c.clone()))
            .collect();
        Cochain::from_entries(algebra_parity, 2, parity, &entries)
    }

    /// A 1-cochain from its matrix (column `j` is `φ(e_j)`).
    pub fn from_linear_map(algebra_parity: &[u8], parity: u8, m: &Matrix) -> Result<Self, CochainError> {
        let n = algebra_parity.len();
        let mut entries = Vec::new();
        for j in 0..n {
            for k in 0..n {
                entries.push((k, vec![j], m[(k, j)].clone()));
            }
        }
        Cochain::from_entries(algebra_parity, 1, parity, &entries)
    }

    /// Reassembles a cochain from its flattened coefficient vector.
    pub fn from_raw(basis: &TupleBasis, parity: u8, raw: &[Scalar]) -> Self {
        let n = basis.algebra_parity().len();
        let cols = basis.len();
        assert_eq!(raw.len(), n * cols);
        let mut coeffs = Matrix::zeros(n, cols);
        for m in 0..n {
            for t in 0..cols {
                coeffs[(m, t)] = raw[m * cols + t].clone();
            }
        }
        Cochain {
            basis: basis.clone(),
            parity,
            coeffs,
        }
    }

    /// Coefficients flattened output-major: index `m * |tuples| + t`.
    pub fn raw(&self) -> Vector {
        (0..self.coeffs.rows())
            .flat_map(|m| self.coeffs.row(m).to_vec())
            .collect()
    }

    pub fn degree(&self) -> usize {
        self.basis.degree()
    }

    pub fn parity(&self) -> u8 {
        self.parity
    }

    pub fn basis(&self) -> &TupleBasis {
        &self.basis
    }

    pub fn coeffs(&self) -> &Matrix {
        &self.coeffs
    }

    pub fn dim(&self) -> usize {
        self.coeffs.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_zero()
    }

    /// Parity homogeneity: every nonzero coefficient has the right output parity.
    pub fn is_homogeneous(&self) -> bool {
        let p = self.basis.algebra_parity();
        self.basis.tuples().iter().enumerate().all(|(t, tuple)| {
            let want = (self.basis.tuple_parity(tuple) + self.parity) % 2;
            (0..self.dim()).all(|m| p[m] == want || self.coeffs[(m, t)].is_zero())
        })
    }

    /// The 1-cochain as a matrix.
    pub fn linear_map(&self) -> Matrix {
        assert_eq!(self.degree(), 1);
        self.coeffs.clone()
    }

    /// Nonzero entries as `(output, tuple, coefficient)`.
    pub fn entries(&self) -> Vec<(usize, Vec<usize>, Scalar)> {
        let mut out = Vec::new();
        for (t, tuple) in self.basis.tuples().iter().enumerate() {
            for m in 0..self.dim() {
                if !self.coeffs[(m, t)].is_zero() {
                    out.push((m, tuple.clone(), self.coeffs[(m, t)].clone()));
                }
            }
        }
        out
    }

    /// `φ(e_{i_1}, …, e_{i_k})` for any index tuple.
    pub fn eval_basis(&self, tuple: &[usize]) -> Vector {
        match self.basis.canonicalize(tuple) {
            Some((t, s)) => self.coeffs.column(t).iter().map(|c| &s * c).collect(),
            None => vec![Scalar::zero(); self.dim()],
        }
    }

    /// Multilinear evaluation on coordinate vectors.
    pub fn eval(&self, args: &[Vector]) -> Vector {
        assert_eq!(args.len(), self.degree());
        let n = self.dim();
        let mut out = vec![Scalar::zero(); n];
        let supports: Vec<Vec<usize>> = args
            .iter()
            .map(|a| (0..n).filter(|&i| !a[i].is_zero()).collect())
            .collect();
        let mut idx = vec![0usize; args.len()];
        if supports.iter().any(Vec::is_empty) {
            return out;
        }
        loop {
            let tuple: Vec<usize> = idx.iter().zip(&supports).map(|(&k, s)| s[k]).collect();
            if let Some((t, s)) = self.basis.canonicalize(&tuple) {
                let w = tuple
                    .iter()
                    .zip(args)
                    .fold(s, |acc, (&i, a)| &acc * &a[i]);
                for (o, c) in out.iter_mut().zip(self.coeffs.column(t)) {
                    if !c.is_zero() {
                        *o += &(&w * &c);
                    }
                }
            }
            // odometer over the supports
            let mut pos = args.len();
            loop {
                if pos == 0 {
                    return out;
                }
                pos -= 1;
                idx[pos] += 1;
                if idx[pos] < supports[pos].len() {
                    break;
                }
                idx[pos] = 0;
            }
        }
    }

    pub fn add(&self, other: &Cochain) -> Cochain {
        assert_eq!(self.basis, other.basis);
        Cochain {
            basis: self.basis.clone(),
            parity: self.parity,
            coeffs: self.coeffs.add(&other.coeffs),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Cochain {
        Cochain {
            basis: self.basis.clone(),
            parity: self.parity,
            coeffs: self.coeffs.scale(c),
        }
    }
}
