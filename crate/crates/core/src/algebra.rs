//! Hom-Lie superalgebras given by structure constants, and their structural checks.
//!
//! Basis vectors are 0-based internally; `table[i][j]` is the coordinate
//! vector of `[e_i, e_j]`. Matrices follow the column convention: column `j`
//! of `alpha` is `alpha(e_j)`.

use thiserror::Error;

use crate::field::Scalar;
use crate::linalg::{invert, kernel_basis, rref, Matrix, Subspace, Vector};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("parity vector entries must be 0 or 1 (found {value} at index {index})")]
    BadParity { index: usize, value: u8 },
    #[error("bracket entry ({i},{j}) is out of range for dimension {dim}")]
    IndexOutOfRange { i: usize, j: usize, dim: usize },
    #[error("bracket entry ({i},{j}) is not canonical: require i <= j")]
    NotCanonical { i: usize, j: usize },
    #[error("bracket entry ({i},{j}) given more than once")]
    DuplicateEntry { i: usize, j: usize },
    #[error("bracket entry ({i},{j}) has {found} coefficients, expected {expected}")]
    CoefficientLength {
        i: usize,
        j: usize,
        expected: usize,
        found: usize,
    },
    #[error("bracket [e{i},e{j}] has a nonzero e{k} component of the wrong parity")]
    BracketParity { i: usize, j: usize, k: usize },
    #[error("[e{i},e{i}] must vanish for an even basis vector")]
    EvenSelfBracket { i: usize },
    #[error("alpha must be {dim}x{dim}, got {rows}x{cols}")]
    AlphaShape { dim: usize, rows: usize, cols: usize },
    #[error("alpha entry ({row},{col}) mixes parities")]
    AlphaParity { row: usize, col: usize },
    #[error("base change matrix is not invertible")]
    SingularBaseChange,
    #[error("base change entry ({row},{col}) mixes parities")]
    OddBaseChange { row: usize, col: usize },
    #[error("base change must be {dim}x{dim}")]
    BaseChangeShape { dim: usize },
}

/// `(V, [·,·], α)` with `V` spanned by homogeneous basis vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomLieSuperalgebra {
    parity: Vec<u8>,
    table: Vec<Vec<Vector>>,
    alpha: Matrix,
}

/// Sign `(-1)^{p}`.
pub(crate) fn sign(p: u8) -> Scalar {
    if p.is_multiple_of(2) {
        Scalar::one()
    } else {
        -Scalar::one()
    }
}

/// Whether `m` maps each parity component into itself.
pub fn is_even_matrix(parity: &[u8], m: &Matrix) -> bool {
    first_odd_entry(parity, m).is_none()
}

fn first_odd_entry(parity: &[u8], m: &Matrix) -> Option<(usize, usize)> {
    (0..m.rows())
        .flat_map(|r| (0..m.cols()).map(move |c| (r, c)))
        .find(|&(r, c)| parity[r] != parity[c] && !m[(r, c)].is_zero())
}

fn check_parity(parity: &[u8]) -> Result<(), AlgebraError> {
    match parity.iter().position(|&p| p > 1) {
        Some(index) => Err(AlgebraError::BadParity {
            index,
            value: parity[index],
        }),
        None => Ok(()),
    }
}

fn check_alpha(parity: &[u8], alpha: &Matrix) -> Result<(), AlgebraError> {
    let dim = parity.len();
    if alpha.rows() != dim || alpha.cols() != dim {
        return Err(AlgebraError::AlphaShape {
            dim,
            rows: alpha.rows(),
            cols: alpha.cols(),
        });
    }
    match first_odd_entry(parity, alpha) {
        Some((row, col)) => Err(AlgebraError::AlphaParity { row, col }),
        None => Ok(()),
    }
}

impl HomLieSuperalgebra {
    /// Builds an algebra from brackets on canonical pairs `i <= j`; the
    /// remaining pairs follow from super-skew-symmetry.
    pub fn new(
        parity: Vec<u8>,
        entries: Vec<(usize, usize, Vector)>,
        alpha: Matrix,
    ) -> Result<Self, AlgebraError> {
        check_parity(&parity)?;
        let dim = parity.len();
        check_alpha(&parity, &alpha)?;
        let mut table = vec![vec![vec![Scalar::zero(); dim]; dim]; dim];
        let mut seen = vec![vec![false; dim]; dim];
        for (i, j, coeffs) in entries {
            if i >= dim || j >= dim {
                return Err(AlgebraError::IndexOutOfRange { i, j, dim });
            }
            if i > j {
                return Err(AlgebraError::NotCanonical { i, j });
            }
            if seen[i][j] {
                return Err(AlgebraError::DuplicateEntry { i, j });
            }
            seen[i][j] = true;
            if coeffs.len() != dim {
                return Err(AlgebraError::CoefficientLength {
                    i,
                    j,
                    expected: dim,
                    found: coeffs.len(),
                });
            }
            let pij = (parity[i] + parity[j]) % 2;
            if let Some(k) = (0..dim).find(|&k| parity[k] != pij && !coeffs[k].is_zero()) {
                return Err(AlgebraError::BracketParity { i, j, k });
            }
            if i == j && parity[i] == 0 && coeffs.iter().any(|c| !c.is_zero()) {
                return Err(AlgebraError::EvenSelfBracket { i });
            }
            let s = -sign(parity[i] * parity[j]);
            table[j][i] = coeffs.iter().map(|c| &s * c).collect();
            table[i][j] = coeffs;
        }
        Ok(HomLieSuperalgebra {
            parity,
            table,
            alpha,
        })
    }

    /// Builds an algebra from a complete multiplication table without
    /// imposing skew-symmetry; evenness is still enforced. Useful for
    /// exercising [`check_skew`](Self::check_skew).
    pub fn from_full_table(
        parity: Vec<u8>,
        table: Vec<Vec<Vector>>,
        alpha: Matrix,
    ) -> Result<Self, AlgebraError> {
        check_parity(&parity)?;
        check_alpha(&parity, &alpha)?;
        let dim = parity.len();
        for i in 0..dim {
            for j in 0..dim {
                let v = table
                    .get(i)
                    .and_then(|row| row.get(j))
                    .ok_or(AlgebraError::IndexOutOfRange { i, j, dim })?;
                if v.len() != dim {
                    return Err(AlgebraError::CoefficientLength {
                        i,
                        j,
                        expected: dim,
                        found: v.len(),
                    });
                }
                let pij = (parity[i] + parity[j]) % 2;
                if let Some(k) = (0..dim).find(|&k| parity[k] != pij && !v[k].is_zero()) {
                    return Err(AlgebraError::BracketParity { i, j, k });
                }
            }
        }
        Ok(HomLieSuperalgebra {
            parity,
            table,
            alpha,
        })
    }

    /// Same bracket and parities, different twist map.
    pub fn with_alpha(&self, alpha: Matrix) -> Result<Self, AlgebraError> {
        check_alpha(&self.parity, &alpha)?;
        Ok(HomLieSuperalgebra {
            alpha,
            ..self.clone()
        })
    }

    pub fn dim(&self) -> usize {
        self.parity.len()
    }

    pub fn parity(&self) -> &[u8] {
        &self.parity
    }

    pub fn alpha(&self) -> &Matrix {
        &self.alpha
    }

    /// `[e_i, e_j]` as a coordinate vector.
    pub fn bracket_basis(&self, i: usize, j: usize) -> &Vector {
        &self.table[i][j]
    }

    pub fn table(&self) -> &[Vec<Vector>] {
        &self.table
    }

    /// Nonzero brackets on canonical pairs `i <= j`.
    pub fn canonical_entries(&self) -> Vec<(usize, usize, Vector)> {
        let n = self.dim();
        (0..n)
            .flat_map(|i| (i..n).map(move |j| (i, j)))
            .filter(|&(i, j)| self.table[i][j].iter().any(|c| !c.is_zero()))
            .map(|(i, j)| (i, j, self.table[i][j].clone()))
            .collect()
    }

    /// Bilinear extension of the bracket to arbitrary coordinate vectors.
    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        let n = self.dim();
        let mut out = vec![Scalar::zero(); n];
        for i in (0..n).filter(|&i| !x[i].is_zero()) {
            for j in (0..n).filter(|&j| !y[j].is_zero()) {
                let c = &x[i] * &y[j];
                for (o, t) in out.iter_mut().zip(&self.table[i][j]) {
                    if !t.is_zero() {
                        *o += &(&c * t);
                    }
                }
            }
        }
        out
    }

    pub fn is_abelian(&self) -> bool {
        self.table.iter().flatten().flatten().all(Scalar::is_zero)
    }

    fn basis_vector(&self, i: usize) -> Vector {
        let mut v = vec![Scalar::zero(); self.dim()];
        v[i] = Scalar::one();
        v
    }

    /// `[x,y] = -(-1)^{|x||y|}[y,x]` on all basis pairs.
    pub fn check_skew(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| {
            (i..n).all(|j| {
                let s = -sign(self.parity[i] * self.parity[j]);
                self.table[i][j]
                    .iter()
                    .zip(&self.table[j][i])
                    .all(|(a, b)| *a == &s * b)
            })
        })
    }

    fn jacobi_with(&self, twist: Option<&Matrix>) -> bool {
        let n = self.dim();
        let images: Vec<Vector> = (0..n)
            .map(|i| match twist {
                Some(a) => a.column(i),
                None => self.basis_vector(i),
            })
            .collect();
        let p = &self.parity;
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let mut total = vec![Scalar::zero(); n];
                    for &(a, b, c) in &[(x, y, z), (y, z, x), (z, x, y)] {
                        let term = self.bracket(&images[a], &self.table[b][c]);
                        let s = sign(p[a] * p[c]);
                        for (t, v) in total.iter_mut().zip(term) {
                            *t += &(&s * &v);
                        }
                    }
                    if total.iter().any(|c| !c.is_zero()) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// The twisted super-Jacobi identity `↻ (-1)^{|x||z|}[α(x),[y,z]] = 0`.
    pub fn check_hom_jacobi(&self) -> bool {
        self.jacobi_with(Some(&self.alpha))
    }

    /// The untwisted super-Jacobi identity, i.e. whether the bracket alone
    /// is a Lie superalgebra.
    pub fn is_lie_superalgebra(&self) -> bool {
        self.jacobi_with(None)
    }

    /// `α([e_i,e_j]) = [α(e_i), α(e_j)]` on all basis pairs.
    pub fn check_multiplicative(&self) -> bool {
        let n = self.dim();
        let cols: Vec<Vector> = (0..n).map(|j| self.alpha.column(j)).collect();
        (0..n).all(|i| {
            (0..n).all(|j| self.alpha.mul_vec(&self.table[i][j]) == self.bracket(&cols[i], &cols[j]))
        })
    }

    /// `{x : [x, e_j] = 0 for all j}`.
    pub fn center(&self) -> Subspace {
        let n = self.dim();
        // row (j, k): sum_i x_i [e_i, e_j]_k
        let mut m = Matrix::zeros(n * n, n);
        for j in 0..n {
            for k in 0..n {
                for i in 0..n {
                    m[(j * n + k, i)] = self.table[i][j][k].clone();
                }
            }
        }
        kernel_basis(&m)
    }

    /// `[g, g]`, the span of all brackets of basis vectors.
    pub fn derived_ideal(&self) -> Subspace {
        let vectors: Vec<Vector> = self.table.iter().flatten().cloned().collect();
        Subspace::span(self.dim(), &vectors)
    }

    /// Heisenberg certificate: one-dimensional derived ideal spanned by a
    /// homogeneous central `h`, with non-degenerate induced form on `g/Z(g)`.
    pub fn is_heisenberg(&self) -> Result<HeisenbergCertificate, NotHeisenberg> {
        let derived = self.derived_ideal();
        if derived.dim() != 1 {
            return Err(NotHeisenberg::DerivedDimension(derived.dim()));
        }
        let h = derived.basis()[0].clone();
        let support: Vec<u8> = (0..self.dim())
            .filter(|&k| !h[k].is_zero())
            .map(|k| self.parity[k])
            .collect();
        let generator_parity = support[0];
        if support.iter().any(|&p| p != generator_parity) {
            return Err(NotHeisenberg::InhomogeneousGenerator);
        }
        let center = self.center();
        if !center.contains(&h) {
            return Err(NotHeisenberg::GeneratorNotCentral);
        }
        // complement of Z(g): basis vectors at the non-pivot columns of its rref
        let pivots = if center.dim() == 0 {
            Vec::new()
        } else {
            rref(&center.to_matrix()).pivots
        };
        let complement: Vec<usize> = (0..self.dim()).filter(|c| !pivots.contains(c)).collect();
        let hk = (0..self.dim()).find(|&k| !h[k].is_zero()).expect("nonzero generator");
        let hinv = h[hk].inv().expect("nonzero");
        let m = complement.len();
        let mut form = Matrix::zeros(m, m);
        for (a, &i) in complement.iter().enumerate() {
            for (b, &j) in complement.iter().enumerate() {
                form[(a, b)] = &self.table[i][j][hk] * &hinv;
            }
        }
        if form.rank() != m {
            return Err(NotHeisenberg::DegenerateForm { rank: form.rank(), size: m });
        }
        Ok(HeisenbergCertificate {
            generator: h,
            generator_parity,
            quotient_basis: complement,
            form_matrix: form,
            central: true,
        })
    }

    /// The algebra transported along `P`: `[x,y]' = P[P⁻¹x, P⁻¹y]`, `α' = PαP⁻¹`.
    pub fn apply_base_change(&self, p: &Matrix) -> Result<Self, AlgebraError> {
        let n = self.dim();
        if p.rows() != n || p.cols() != n {
            return Err(AlgebraError::BaseChangeShape { dim: n });
        }
        if let Some((row, col)) = first_odd_entry(&self.parity, p) {
            return Err(AlgebraError::OddBaseChange { row, col });
        }
        let pinv = invert(p)
            .expect("square")
            .ok_or(AlgebraError::SingularBaseChange)?;
        let cols: Vec<Vector> = (0..n).map(|j| pinv.column(j)).collect();
        let table = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| p.mul_vec(&self.bracket(&cols[i], &cols[j])))
                    .collect()
            })
            .collect();
        Ok(HomLieSuperalgebra {
            parity: self.parity.clone(),
            table,
            alpha: &(p * &self.alpha) * &pinv,
        })
    }
}

/// `P` is an even bijection with `P[x,y]₁ = [Px,Py]₂` and `Pα₁ = α₂P`.
pub fn verify_isomorphism(g1: &HomLieSuperalgebra, g2: &HomLieSuperalgebra, p: &Matrix) -> bool {
    let n = g1.dim();
    if g1.parity != g2.parity || p.rows() != n || p.cols() != n {
        return false;
    }
    if !is_even_matrix(&g1.parity, p) || p.rank() != n {
        return false;
    }
    if p * &g1.alpha != &g2.alpha * p {
        return false;
    }
    let cols: Vec<Vector> = (0..n).map(|j| p.column(j)).collect();
    (0..n).all(|i| (0..n).all(|j| p.mul_vec(&g1.table[i][j]) == g2.bracket(&cols[i], &cols[j])))
}

/// Evidence that an algebra is Heisenberg.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeisenbergCertificate {
    pub generator: Vector,
    pub generator_parity: u8,
    /// Basis indices spanning the chosen complement of the center.
    pub quotient_basis: Vec<usize>,
    /// `B(e_a, e_b)` with `[e_a, e_b] = B(e_a, e_b)·h` on the complement.
    pub form_matrix: Matrix,
    pub central: bool,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NotHeisenberg {
    #[error("derived ideal has dimension {0}, expected 1")]
    DerivedDimension(usize),
    #[error("derived ideal is not spanned by a homogeneous element")]
    InhomogeneousGenerator,
    #[error("generator of the derived ideal is not central")]
    GeneratorNotCentral,
    #[error("induced form has rank {rank} on a {size}-dimensional quotient")]
    DegenerateForm { rank: usize, size: usize },
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    fn e(n: usize, k: usize) -> Vector {
        let mut v = vec![Scalar::zero(); n];
        v[k] = Scalar::one();
        v
    }

    fn h1(alpha: Matrix) -> HomLieSuperalgebra {
        HomLieSuperalgebra::new(vec![0, 1, 1], vec![(1, 2, e(3, 0))], alpha).unwrap()
    }

    fn h2(alpha: Matrix) -> HomLieSuperalgebra {
        HomLieSuperalgebra::new(vec![0, 1, 1], vec![(0, 1, e(3, 2))], alpha).unwrap()
    }

    #[test]
    fn new_expands_skew_closure() {
        let g = h1(Matrix::diagonal(&[s(6), s(2), s(3)]));
        assert_eq!(g.bracket_basis(2, 1), &e(3, 0));
        let g = h2(Matrix::identity(3));
        assert_eq!(g.bracket_basis(1, 0), &vec![s(0), s(0), s(-1)]);
        let g = HomLieSuperalgebra::new(vec![0, 1, 1], vec![(1, 1, e(3, 0))], Matrix::identity(3));
        assert!(g.unwrap().check_skew());
    }

    #[test]
    fn new_rejects_bad_input() {
        let id = Matrix::identity(3);
        let par = vec![0, 1, 1];
        assert_eq!(
            HomLieSuperalgebra::new(par.clone(), vec![(1, 2, e(3, 1))], id.clone()),
            Err(AlgebraError::BracketParity { i: 1, j: 2, k: 1 })
        );
        assert!(matches!(
            HomLieSuperalgebra::new(par.clone(), vec![], Matrix::from_int_rows(&[&[1, 1, 0], &[0, 1, 0], &[0, 0, 1]])),
            Err(AlgebraError::AlphaParity { row: 0, col: 1 })
        ));
        assert!(matches!(
            HomLieSuperalgebra::new(par.clone(), vec![(1, 2, e(3, 0)), (1, 2, e(3, 0))], id.clone()),
            Err(AlgebraError::DuplicateEntry { .. })
        ));
        assert!(matches!(
            HomLieSuperalgebra::new(par.clone(), vec![(2, 1, e(3, 0))], id.clone()),
            Err(AlgebraError::NotCanonical { .. })
        ));
        assert!(matches!(
            HomLieSuperalgebra::new(par.clone(), vec![(1, 2, vec![s(1)])], id.clone()),
            Err(AlgebraError::CoefficientLength { .. })
        ));
        assert!(matches!(
            HomLieSuperalgebra::new(vec![0, 0], vec![(0, 0, e(2, 0))], Matrix::identity(2)),
            Err(AlgebraError::EvenSelfBracket { i: 0 })
        ));
    }

    #[test]
    fn skew_check_catches_symmetric_even_table() {
        let z = vec![s(0); 3];
        let mut table = vec![vec![z.clone(); 3]; 3];
        table[0][1] = e(3, 2);
        table[1][0] = e(3, 2);
        let g = HomLieSuperalgebra::from_full_table(vec![0, 0, 0], table, Matrix::identity(3)).unwrap();
        assert!(!g.check_skew());
        assert!(h2(Matrix::identity(3)).check_skew());
        let ab = HomLieSuperalgebra::new(vec![0, 1, 1], vec![], Matrix::identity(3)).unwrap();
        assert!(ab.check_skew());
    }

    #[test]
    fn hom_jacobi_examples() {
        assert!(h1(Matrix::diagonal(&[s(6), s(2), s(3)])).check_hom_jacobi());
        // [e1,e2]=e3, [e2,e3]=e1, [e3,e1]=e1 is not Lie
        let g = HomLieSuperalgebra::new(
            vec![0, 0, 0],
            vec![(0, 1, e(3, 2)), (1, 2, e(3, 0)), (0, 2, vec![s(-1), s(0), s(0)])],
            Matrix::identity(3),
        )
        .unwrap();
        assert!(!g.check_hom_jacobi());
        assert!(!g.is_lie_superalgebra());
        let a = Matrix::from_int_rows(&[&[5, 0, 0], &[0, 1, 7], &[0, -2, 3]]);
        assert!(h2(a).check_hom_jacobi());
    }

    #[test]
    fn multiplicativity_examples() {
        assert!(h2(Matrix::diagonal(&[s(2), s(3), s(6)])).check_multiplicative());
        let bad = Matrix::from_int_rows(&[&[2, 0, 0], &[0, 3, 1], &[0, 0, 6]]);
        assert!(!h2(bad).check_multiplicative());
        let bad = Matrix::diagonal(&[s(2), s(3), s(5)]);
        assert!(!h2(bad).check_multiplicative());
        assert!(h2(Matrix::zeros(3, 3)).check_multiplicative());
    }

    #[test]
    fn center_and_derived() {
        let g = h1(Matrix::identity(3));
        assert_eq!(g.center(), Subspace::span(3, &[e(3, 0)]));
        assert_eq!(g.derived_ideal(), Subspace::span(3, &[e(3, 0)]));
        let g = h2(Matrix::identity(3));
        assert_eq!(g.center(), Subspace::span(3, &[e(3, 2)]));
        let ab = HomLieSuperalgebra::new(vec![0, 1, 1], vec![], Matrix::identity(3)).unwrap();
        assert_eq!(ab.center().dim(), 3);
        assert_eq!(ab.derived_ideal().dim(), 0);
        // [v1,v2]=h, [h,v1]=v2
        let g = HomLieSuperalgebra::new(
            vec![0, 1, 1],
            vec![(1, 2, e(3, 0)), (0, 1, e(3, 2))],
            Matrix::identity(3),
        )
        .unwrap();
        assert_eq!(g.derived_ideal(), Subspace::span(3, &[e(3, 0), e(3, 2)]));
    }

    #[test]
    fn heisenberg_certificates() {
        let c = h1(Matrix::identity(3)).is_heisenberg().unwrap();
        assert_eq!(c.generator_parity, 0);
        assert_eq!(c.form_matrix, Matrix::from_int_rows(&[&[0, 1], &[1, 0]]));
        let c = h2(Matrix::identity(3)).is_heisenberg().unwrap();
        assert_eq!(c.generator_parity, 1);
        assert_eq!(c.quotient_basis, vec![0, 1]);
        assert_eq!(c.form_matrix, Matrix::from_int_rows(&[&[0, 1], &[-1, 0]]));
        let ab = HomLieSuperalgebra::new(vec![0, 1, 1], vec![], Matrix::identity(3)).unwrap();
        assert_eq!(ab.is_heisenberg(), Err(NotHeisenberg::DerivedDimension(0)));
    }

    #[test]
    fn base_change_round_trip() {
        let g = h1(Matrix::diagonal(&[s(6), s(2), s(3)]));
        assert_eq!(g.apply_base_change(&Matrix::identity(3)).unwrap(), g);
        let p = Matrix::diagonal(&[s(1), s(1), s(2)]);
        let g2 = g.apply_base_change(&p).unwrap();
        assert_eq!(g2.bracket_basis(1, 2), &vec![Scalar::from_ratio(1, 2), s(0), s(0)]);
        assert!(verify_isomorphism(&g, &g2, &p));
        assert!(!verify_isomorphism(&g, &g, &p));
        assert_eq!(
            g.apply_base_change(&Matrix::zeros(3, 3)),
            Err(AlgebraError::SingularBaseChange)
        );
        let odd = Matrix::from_int_rows(&[&[1, 1, 0], &[0, 1, 0], &[0, 0, 1]]);
        assert!(matches!(g.apply_base_change(&odd), Err(AlgebraError::OddBaseChange { .. })));
    }
}
