//! α-compatible cochain spaces, the twisted coboundary operator and the
//! resulting parity-split cohomology in degrees 1 and 2.
//!
//! Conventions:
//! * `C^k_α` consists of homogeneous super-skew cochains with
//!   `α(φ(x_1,…,x_k)) = φ(α x_1,…,α x_k)`; `C^0_α` is the α-fixed subspace.
//! * `δφ(x_0,…,x_k)` is
//!   `Σ_{s<t} (−1)^{t+|x_t|(|x_{s+1}|+…+|x_{t−1}|)} φ(αx_0,…,[x_s,x_t],…,x̂_t,…,αx_k)`
//!   `+ Σ_{s=0..k} (−1)^{s+|x_s|(|φ|+|x_0|+…+|x_{s−1}|)} [α^{k−1}(x_s), φ(x_0,…,x̂_s,…,x_k)]`.
//!   The second sum starts at `s = 0`; without that term δ²∘δ¹ ≠ 0.
//! * `B^1 = 0`, so `H^1 = Z^1`.

use thiserror::Error;

use crate::algebra::{sign, HomLieSuperalgebra};
use crate::cochain::{Cochain, TupleBasis};
use crate::field::Scalar;
use crate::linalg::{image_basis, kernel_basis, rref, solve, Matrix, Subspace, Vector};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CohomologyError {
    #[error("cohomology is only computed in degrees 1 and 2 (got {0})")]
    UnsupportedDegree(usize),
    #[error("cochain spaces are built for degrees 0..=3 (got {0})")]
    UnsupportedCochainDegree(usize),
    #[error("coboundary of a degree-{degree} basis cochain leaves the α-compatible space")]
    NotClosed { degree: usize },
}

/// A basis of `C^k_α`, split by parity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CochainSpace {
    pub degree: usize,
    pub tuples: TupleBasis,
    /// `[even basis, odd basis]`.
    pub bases: [Vec<Cochain>; 2],
}

impl CochainSpace {
    pub fn dim(&self, parity: u8) -> usize {
        self.bases[parity as usize].len()
    }

    pub fn basis(&self, parity: u8) -> &[Cochain] {
        &self.bases[parity as usize]
    }

    /// All basis cochains, even first.
    pub fn all(&self) -> impl Iterator<Item = &Cochain> {
        self.bases[0].iter().chain(&self.bases[1])
    }

    /// Coordinates of `phi` in the basis of its parity, if it lies in the space.
    pub fn coordinates(&self, phi: &Cochain) -> Option<Vector> {
        if phi.degree() != self.degree || phi.basis() != &self.tuples {
            return None;
        }
        let basis = self.basis(phi.parity());
        let raw = phi.raw();
        if basis.is_empty() {
            return raw.iter().all(Scalar::is_zero).then(Vec::new);
        }
        let cols: Vec<Vector> = basis.iter().map(Cochain::raw).collect();
        let m = Matrix::from_columns(raw.len(), &cols);
        solve(&m, &raw).expect("shapes agree")
    }

    /// Linear combination of the basis of the given parity.
    pub fn combine(&self, parity: u8, coords: &[Scalar]) -> Cochain {
        let basis = self.basis(parity);
        assert_eq!(coords.len(), basis.len());
        let n = self.tuples.algebra_parity().len();
        let mut raw = vec![Scalar::zero(); n * self.tuples.len()];
        for (c, b) in coords.iter().zip(basis) {
            if c.is_zero() {
                continue;
            }
            for (r, x) in raw.iter_mut().zip(b.raw()) {
                *r += &(c * &x);
            }
        }
        Cochain::from_raw(&self.tuples, parity, &raw)
    }
}

/// Whether `phi` commutes with α in the sense of the cochain condition.
pub fn satisfies_alpha_condition(g: &HomLieSuperalgebra, phi: &Cochain) -> bool {
    let alpha = g.alpha();
    let cols: Vec<Vector> = (0..g.dim()).map(|j| alpha.column(j)).collect();
    phi.basis().tuples().iter().all(|t| {
        let lhs = alpha.mul_vec(&phi.eval_basis(t));
        let args: Vec<Vector> = t.iter().map(|&i| cols[i].clone()).collect();
        lhs == phi.eval(&args)
    })
}

/// Membership in `C^k_α`: right tuple basis, homogeneous, α-compatible.
pub fn in_cochain_space(g: &HomLieSuperalgebra, phi: &Cochain) -> bool {
    phi.basis().algebra_parity() == g.parity() && phi.is_homogeneous() && satisfies_alpha_condition(g, phi)
}

/// Positions `(m, t)` allowed by parity homogeneity, in raw order.
fn free_positions(tuples: &TupleBasis, parity: u8) -> Vec<usize> {
    let p = tuples.algebra_parity();
    let cols = tuples.len();
    (0..p.len())
        .flat_map(|m| (0..cols).map(move |t| (m, t)))
        .filter(|&(m, t)| p[m] == (tuples.tuple_parity(&tuples.tuples()[t]) + parity) % 2)
        .map(|(m, t)| m * cols + t)
        .collect()
}

pub fn cochain_space(g: &HomLieSuperalgebra, k: usize) -> Result<CochainSpace, CohomologyError> {
    if k > 3 {
        return Err(CohomologyError::UnsupportedCochainDegree(k));
    }
    let n = g.dim();
    let tuples = TupleBasis::new(g.parity(), k);
    let cols = tuples.len();
    let alpha = g.alpha();
    let images: Vec<Vector> = (0..n).map(|j| alpha.column(j)).collect();
    let bases = [0u8, 1].map(|q| {
        let free = free_positions(&tuples, q);
        // constraint rows: for every tuple T and output m, (αφ(T) − φ(αT))_m
        let mut m = Matrix::zeros(n * cols, free.len());
        for (f, &pos) in free.iter().enumerate() {
            let mut raw = vec![Scalar::zero(); n * cols];
            raw[pos] = Scalar::one();
            let phi = Cochain::from_raw(&tuples, q, &raw);
            for (t, tuple) in tuples.tuples().iter().enumerate() {
                let lhs = alpha.mul_vec(&phi.eval_basis(tuple));
                let args: Vec<Vector> = tuple.iter().map(|&i| images[i].clone()).collect();
                let rhs = phi.eval(&args);
                for o in 0..n {
                    m[(t * n + o, f)] = &lhs[o] - &rhs[o];
                }
            }
        }
        kernel_basis(&m)
            .into_basis()
            .into_iter()
            .map(|v| {
                let mut raw = vec![Scalar::zero(); n * cols];
                for (f, &pos) in free.iter().enumerate() {
                    raw[pos] = v[f].clone();
                }
                Cochain::from_raw(&tuples, q, &raw)
            })
            .collect()
    });
    Ok(CochainSpace {
        degree: k,
        tuples,
        bases,
    })
}

fn add_scaled(acc: &mut [Scalar], s: &Scalar, v: &[Scalar]) {
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            *a += &(s * x);
        }
    }
}

/// `δφ`, evaluated on every canonical tuple of degree `k + 1`.
pub fn coboundary(g: &HomLieSuperalgebra, phi: &Cochain) -> Cochain {
    let k = phi.degree();
    let n = g.dim();
    let p = g.parity();
    let alpha = g.alpha();
    let twist = alpha.pow(k.saturating_sub(1) as u32);
    let out_basis = TupleBasis::new(p, k + 1);
    let cols = out_basis.len();
    let e = |i: usize| {
        let mut v = vec![Scalar::zero(); n];
        v[i] = Scalar::one();
        v
    };
    let mut raw = vec![Scalar::zero(); n * cols];
    for (t_idx, x) in out_basis.tuples().iter().enumerate() {
        let mut value = vec![Scalar::zero(); n];
        for s in 0..=k {
            for t in s + 1..=k {
                let between: u8 = x[s + 1..t].iter().map(|&i| p[i]).sum();
                let sg = sign(((t as u8) + p[x[t]] * between) % 2);
                let args: Vec<Vector> = (0..=k)
                    .filter(|&j| j != t)
                    .map(|j| {
                        if j == s {
                            g.bracket(&e(x[s]), &e(x[t]))
                        } else {
                            alpha.column(x[j])
                        }
                    })
                    .collect();
                add_scaled(&mut value, &sg, &phi.eval(&args));
            }
        }
        for s in 0..=k {
            let before: u8 = x[..s].iter().map(|&i| p[i]).sum();
            let sg = sign(((s as u8) + p[x[s]] * (phi.parity() + before)) % 2);
            let rest: Vec<usize> = (0..=k).filter(|&j| j != s).map(|j| x[j]).collect();
            let inner = phi.eval_basis(&rest);
            let term = g.bracket(&twist.column(x[s]), &inner);
            add_scaled(&mut value, &sg, &term);
        }
        for o in 0..n {
            raw[o * cols + t_idx] = value[o].clone();
        }
    }
    Cochain::from_raw(&out_basis, phi.parity(), &raw)
}

/// Matrix of `δ^k : C^k_α → C^{k+1}_α` in the bases of [`cochain_space`],
/// one block per parity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoboundaryMatrix {
    pub degree: usize,
    pub blocks: [Matrix; 2],
}

impl CoboundaryMatrix {
    /// Block-diagonal matrix, even coordinates first.
    pub fn to_matrix(&self) -> Matrix {
        let [a, b] = &self.blocks;
        let mut m = Matrix::zeros(a.rows() + b.rows(), a.cols() + b.cols());
        for i in 0..a.rows() {
            for j in 0..a.cols() {
                m[(i, j)] = a[(i, j)].clone();
            }
        }
        for i in 0..b.rows() {
            for j in 0..b.cols() {
                m[(a.rows() + i, a.cols() + j)] = b[(i, j)].clone();
            }
        }
        m
    }
}

pub fn coboundary_matrix_between(
    g: &HomLieSuperalgebra,
    from: &CochainSpace,
    to: &CochainSpace,
) -> Result<CoboundaryMatrix, CohomologyError> {
    assert_eq!(from.degree + 1, to.degree);
    let blocks = [0u8, 1].map(|q| {
        let columns: Option<Vec<Vector>> = from
            .basis(q)
            .iter()
            .map(|phi| to.coordinates(&coboundary(g, phi)))
            .collect();
        columns.map(|c| Matrix::from_columns(to.dim(q), &c))
    });
    match blocks {
        [Some(a), Some(b)] => Ok(CoboundaryMatrix {
            degree: from.degree,
            blocks: [a, b],
        }),
        _ => Err(CohomologyError::NotClosed {
            degree: from.degree,
        }),
    }
}

pub fn coboundary_matrix(g: &HomLieSuperalgebra, k: usize) -> Result<CoboundaryMatrix, CohomologyError> {
    if !(1..=2).contains(&k) {
        return Err(CohomologyError::UnsupportedDegree(k));
    }
    coboundary_matrix_between(g, &cochain_space(g, k)?, &cochain_space(g, k + 1)?)
}

/// Dimensions for one parity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ParityDims {
    pub cochains: usize,
    pub cocycles: usize,
    pub coboundaries: usize,
    pub cohomology: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CohomologyReport {
    pub degree: usize,
    /// `[even, odd]`.
    pub dims: [ParityDims; 2],
    /// Cocycles spanning a complement of `B^k` in `Z^k`, per parity.
    pub representatives: [Vec<Cochain>; 2],
    /// Bases of `Z^k` and `B^k`, per parity.
    pub cocycles: [Vec<Cochain>; 2],
    pub coboundaries: [Vec<Cochain>; 2],
}

impl CohomologyReport {
    /// `(dim Z_0, dim Z_1, dim B_0, dim B_1, dim H_0, dim H_1)`.
    pub fn six_dims(&self) -> [usize; 6] {
        let [e, o] = self.dims;
        [e.cocycles, o.cocycles, e.coboundaries, o.coboundaries, e.cohomology, o.cohomology]
    }

    /// `(dim H_0, dim H_1)`.
    pub fn h(&self) -> (usize, usize) {
        (self.dims[0].cohomology, self.dims[1].cohomology)
    }
}

/// Greedy extension of `b` by vectors of `z`, in order.
fn complement(ambient: usize, z: &Subspace, b: &Subspace) -> Vec<Vector> {
    let mut rows: Vec<Vector> = b.basis().to_vec();
    let mut chosen = Vec::new();
    for v in z.basis() {
        rows.push(v.clone());
        if Matrix::from_rows(rows.clone()).expect("equal length").rank() == rows.len() {
            chosen.push(v.clone());
        } else {
            rows.pop();
        }
    }
    debug_assert!(rows.iter().all(|r| r.len() == ambient));
    chosen
}

pub fn cohomology(g: &HomLieSuperalgebra, k: usize) -> Result<CohomologyReport, CohomologyError> {
    if !(1..=2).contains(&k) {
        return Err(CohomologyError::UnsupportedDegree(k));
    }
    let ck = cochain_space(g, k)?;
    let up = coboundary_matrix_between(g, &ck, &cochain_space(g, k + 1)?)?;
    let down = if k == 2 {
        Some(coboundary_matrix_between(g, &cochain_space(g, 1)?, &ck)?)
    } else {
        None
    };
    let mut dims = [ParityDims::default(); 2];
    let mut representatives: [Vec<Cochain>; 2] = Default::default();
    let mut cocycles: [Vec<Cochain>; 2] = Default::default();
    let mut coboundaries: [Vec<Cochain>; 2] = Default::default();
    for q in [0u8, 1] {
        let qi = q as usize;
        let n = ck.dim(q);
        let z = kernel_basis(&up.blocks[qi]);
        let b = match &down {
            Some(d) => image_basis(&d.blocks[qi]),
            None => Subspace::zero(n),
        };
        let reps = complement(n, &z, &b);
        let to_cochains = |vs: &[Vector]| vs.iter().map(|v| ck.combine(q, v)).collect::<Vec<_>>();
        dims[qi] = ParityDims {
            cochains: n,
            cocycles: z.dim(),
            coboundaries: b.dim(),
            cohomology: z.dim() - b.dim(),
        };
        representatives[qi] = to_cochains(&reps);
        cocycles[qi] = to_cochains(z.basis());
        coboundaries[qi] = to_cochains(b.basis());
    }
    Ok(CohomologyReport {
        degree: k,
        dims,
        representatives,
        cocycles,
        coboundaries,
    })
}

/// Whether `phi` lies in the span of `B^2` of its parity (coboundary test).
pub fn is_coboundary(g: &HomLieSuperalgebra, phi: &Cochain) -> Result<bool, CohomologyError> {
    let c1 = cochain_space(g, 1)?;
    let c2 = cochain_space(g, 2)?;
    let Some(coords) = c2.coordinates(phi) else {
        return Ok(false);
    };
    let d = coboundary_matrix_between(g, &c1, &c2)?;
    Ok(solve(&d.blocks[phi.parity() as usize], &coords)
        .expect("shapes agree")
        .is_some())
}

/// Rank of a stacked list of cochains (used for span comparisons in tests).
pub fn span_rank(cochains: &[Cochain]) -> usize {
    if cochains.is_empty() {
        return 0;
    }
    rref(&Matrix::from_rows(cochains.iter().map(Cochain::raw).collect()).expect("equal length")).rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{catalog, CatalogId, Family};

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    fn fam(f: Family, a: i64, b: i64) -> HomLieSuperalgebra {
        let names = f.param_names();
        catalog(&CatalogId::new(f, &[(names[0], s(a)), (names[1], s(b))])).unwrap()
    }

    #[test]
    fn cochain_space_dims() {
        let g = fam(Family::H1Diag, 2, 3);
        let c1 = cochain_space(&g, 1).unwrap();
        assert_eq!((c1.dim(0), c1.dim(1)), (3, 0));
        let g = fam(Family::H1Diag, 1, 2);
        let c1 = cochain_space(&g, 1).unwrap();
        assert_eq!((c1.dim(0), c1.dim(1)), (3, 2));
        let g = fam(Family::H1Diag, 1, 1);
        let c1 = cochain_space(&g, 1).unwrap();
        assert_eq!(c1.dim(0) + c1.dim(1), 9);
        let c2 = cochain_space(&g, 2).unwrap();
        assert_eq!((c2.dim(0), c2.dim(1)), (7, 8));
        let g = fam(Family::H1Row, 0, 5);
        let c2 = cochain_space(&g, 2).unwrap();
        assert_eq!((c2.dim(0), c2.dim(1)), (4, 5));
    }

    #[test]
    fn degree_zero_is_fixed_subspace() {
        let g = fam(Family::H2Diag, 1, 2);
        let c0 = cochain_space(&g, 0).unwrap();
        // α = diag(1, 2, 2): only u is fixed
        assert_eq!((c0.dim(0), c0.dim(1)), (1, 0));
    }

    #[test]
    fn delta_one_calibration() {
        let g = fam(Family::H1Diag, 2, 3);
        let p = g.parity();
        let (a11, a22, a33, a23, a32) = (s(5), s(7), s(11), s(13), s(17));
        let m = Matrix::from_rows(vec![
            vec![a11.clone(), s(0), s(0)],
            vec![s(0), a22.clone(), a23.clone()],
            vec![s(0), a32.clone(), a33.clone()],
        ])
        .unwrap();
        let phi = Cochain::from_linear_map(p, 0, &m).unwrap();
        let d = coboundary(&g, &phi);
        let h = |c: Scalar| vec![c, s(0), s(0)];
        assert_eq!(d.eval_basis(&[1, 1]), h(s(2) * &a32));
        assert_eq!(d.eval_basis(&[1, 2]), h(&a22 + &a33 - &a11));
        assert_eq!(d.eval_basis(&[2, 2]), h(s(2) * &a23));
        assert!(d.eval_basis(&[0, 1]).iter().all(Scalar::is_zero));
        assert!(d.eval_basis(&[0, 2]).iter().all(Scalar::is_zero));
    }

    #[test]
    fn adjoint_maps_are_cocycles_when_untwisted() {
        let g = fam(Family::H1Diag, 1, 1);
        // ad v2: v1 -> [v2, v1] = h
        let m = Matrix::from_int_rows(&[&[0, 1, 0], &[0, 0, 0], &[0, 0, 0]]);
        let phi = Cochain::from_linear_map(g.parity(), 1, &m).unwrap();
        assert!(coboundary(&g, &phi).is_zero());
        assert!(coboundary(&g, &Cochain::zero(g.parity(), 1, 0)).is_zero());
    }

    #[test]
    fn golden_cohomology() {
        let cases = [
            (Family::H1Diag, 2, 3, (2, 0), (0, 0)),
            (Family::H1Diag, 1, 1, (2, 2), (0, 2)),
            (Family::H1Diag, 1, 2, (2, 1), (0, 1)),
            (Family::H1Row, 2, 0, (2, 1), (1, 1)),
            (Family::H1Row, 0, 5, (1, 1), (1, 2)),
            (Family::H2Diag, 2, 3, (2, 0), (0, 0)),
            (Family::H2Diag, 1, 1, (3, 2), (2, 2)),
            (Family::H2Offdiag, 0, 0, (2, 1), (3, 3)),
        ];
        for (f, a, b, h1, h2) in cases {
            let g = fam(f, a, b);
            assert_eq!(cohomology(&g, 1).unwrap().h(), h1, "{f}({a},{b}) H1");
            assert_eq!(cohomology(&g, 2).unwrap().h(), h2, "{f}({a},{b}) H2");
        }
    }

    #[test]
    fn representatives_complement_coboundaries() {
        let g = fam(Family::H2Offdiag, 0, 0);
        let r = cohomology(&g, 2).unwrap();
        for q in 0..2 {
            let mut all = r.coboundaries[q].clone();
            all.extend(r.representatives[q].iter().cloned());
            assert_eq!(span_rank(&all), r.dims[q].cocycles);
            for c in &r.representatives[q] {
                assert!(coboundary(&g, c).is_zero());
            }
        }
    }

    #[test]
    fn coboundary_membership() {
        let g = fam(Family::H1Diag, 2, 3);
        let m = Matrix::diagonal(&[s(1), s(0), s(0)]);
        let psi = Cochain::from_linear_map(g.parity(), 0, &m).unwrap();
        let d = coboundary(&g, &psi);
        assert!(!d.is_zero());
        assert!(is_coboundary(&g, &d).unwrap());
        assert!(is_coboundary(&g, &Cochain::zero(g.parity(), 2, 0)).unwrap());
    }

    #[test]
    fn unsupported_degrees() {
        let g = fam(Family::H1Diag, 2, 3);
        assert_eq!(cohomology(&g, 3), Err(CohomologyError::UnsupportedDegree(3)));
        assert!(cochain_space(&g, 4).is_err());
    }
}
