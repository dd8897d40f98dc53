//! Infinitesimal deformations `[·,·]_t = [·,·] + t·φ` with the twist kept fixed.

use thiserror::Error;

use crate::algebra::{sign, verify_isomorphism, AlgebraError, HomLieSuperalgebra};
use crate::cochain::Cochain;
use crate::cohomology::{coboundary, cohomology, in_cochain_space, CohomologyError};
use crate::field::Scalar;
use crate::linalg::{invert, Matrix, Vector};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DeformationError {
    #[error("deforming cochain must be an even 2-cochain on the same space")]
    NotEvenTwoCochain,
    #[error("deforming cochain does not commute with the twist map")]
    NotAlphaCompatible,
    #[error("deforming cochain is not a 2-cocycle")]
    NotCocycle,
    #[error("deforming cochain is not integrable (φ∘φ ≠ 0)")]
    NotIntegrable,
    #[error("intertwiner must be an even 1-cochain commuting with the twist map")]
    InvalidIntertwiner,
    #[error("deformations do not share base algebra and parameter")]
    Mismatch,
    #[error("id + t·φ is singular at t = {0}")]
    SingularIntertwiner(Box<Scalar>),
    #[error(transparent)]
    Cohomology(#[from] CohomologyError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// A base algebra, an even α-compatible 2-cochain and a parameter value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeformationSpec {
    pub base: HomLieSuperalgebra,
    pub phi: Cochain,
    pub t: Scalar,
}

impl DeformationSpec {
    pub fn new(base: HomLieSuperalgebra, phi: Cochain, t: Scalar) -> Result<Self, DeformationError> {
        check_even_two_cochain(&base, &phi)?;
        if !in_cochain_space(&base, &phi) {
            return Err(DeformationError::NotAlphaCompatible);
        }
        Ok(DeformationSpec { base, phi, t })
    }

    /// The deformed algebra, without integrability checks.
    pub fn algebra(&self) -> HomLieSuperalgebra {
        add_cochain(&self.base, &self.phi, &self.t)
    }
}

fn check_even_two_cochain(g: &HomLieSuperalgebra, phi: &Cochain) -> Result<(), DeformationError> {
    if phi.degree() != 2
        || phi.parity() != 0
        || phi.basis().algebra_parity() != g.parity()
        || !phi.is_homogeneous()
    {
        return Err(DeformationError::NotEvenTwoCochain);
    }
    Ok(())
}

fn add_cochain(g: &HomLieSuperalgebra, phi: &Cochain, t: &Scalar) -> HomLieSuperalgebra {
    let n = g.dim();
    let entries = (0..n)
        .flat_map(|i| (i..n).map(move |j| (i, j)))
        .map(|(i, j)| {
            let extra = phi.eval_basis(&[i, j]);
            let v: Vector = g
                .bracket_basis(i, j)
                .iter()
                .zip(&extra)
                .map(|(a, b)| a + &(t * b))
                .collect();
            (i, j, v)
        })
        .collect();
    HomLieSuperalgebra::new(g.parity().to_vec(), entries, g.alpha().clone())
        .expect("even super-skew perturbation of a valid algebra")
}

/// Values of a trilinear map on all basis triples.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrilinearTable {
    dim: usize,
    values: Vec<Vector>,
}

impl TrilinearTable {
    pub fn get(&self, x: usize, y: usize, z: usize) -> &Vector {
        &self.values[(x * self.dim + y) * self.dim + z]
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().flatten().all(Scalar::is_zero)
    }
}

/// `(φ∘ψ)(x,y,z) = ↻ (−1)^{|x||z|} φ(α x, ψ(y,z))`.
pub fn circle(g: &HomLieSuperalgebra, phi: &Cochain, psi: &Cochain) -> TrilinearTable {
    let n = g.dim();
    let p = g.parity();
    let alpha = g.alpha();
    let mut values = Vec::with_capacity(n * n * n);
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let mut total = vec![Scalar::zero(); n];
                for (a, b, c) in [(x, y, z), (y, z, x), (z, x, y)] {
                    let inner = psi.eval_basis(&[b, c]);
                    let term = phi.eval(&[alpha.column(a), inner]);
                    let s = sign(p[a] * p[c]);
                    for (t, v) in total.iter_mut().zip(term) {
                        *t += &(&s * &v);
                    }
                }
                values.push(total);
            }
        }
    }
    TrilinearTable { dim: n, values }
}

pub fn is_two_cocycle(g: &HomLieSuperalgebra, phi: &Cochain) -> bool {
    phi.degree() == 2 && coboundary(g, phi).is_zero()
}

pub fn is_integrable(g: &HomLieSuperalgebra, phi: &Cochain) -> bool {
    circle(g, phi, phi).is_zero()
}

/// `(V, [·,·] + t·φ, α)`. Unless `allow_nonintegrable` is set, `φ` must be an
/// α-compatible 2-cocycle with `φ∘φ = 0`.
pub fn deform(
    g: &HomLieSuperalgebra,
    phi: &Cochain,
    t: &Scalar,
    allow_nonintegrable: bool,
) -> Result<HomLieSuperalgebra, DeformationError> {
    check_even_two_cochain(g, phi)?;
    if !allow_nonintegrable {
        if !in_cochain_space(g, phi) {
            return Err(DeformationError::NotAlphaCompatible);
        }
        if !is_two_cocycle(g, phi) {
            return Err(DeformationError::NotCocycle);
        }
        if !is_integrable(g, phi) {
            return Err(DeformationError::NotIntegrable);
        }
    }
    Ok(add_cochain(g, phi, t))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EquivalenceMode {
    /// Match the coefficients of `t` in `Φ_t([x,y]_t)` and `[Φ_t x, Φ_t y]'_t`.
    #[default]
    FirstOrder,
    /// Require `Φ_t` to be an isomorphism at the given `t`.
    Exact,
}

/// Whether `Φ_t = id + t·phi1` intertwines the two deformations.
pub fn equivalent_via(
    d1: &DeformationSpec,
    d2: &DeformationSpec,
    phi1: &Cochain,
    mode: EquivalenceMode,
) -> Result<bool, DeformationError> {
    if d1.base != d2.base || d1.t != d2.t {
        return Err(DeformationError::Mismatch);
    }
    let g = &d1.base;
    if phi1.degree() != 1 || phi1.parity() != 0 || !in_cochain_space(g, phi1) {
        return Err(DeformationError::InvalidIntertwiner);
    }
    let m = phi1.linear_map();
    let n = g.dim();
    match mode {
        EquivalenceMode::Exact => {
            let phi_t = Matrix::identity(n).add(&m.scale(&d1.t));
            if invert(&phi_t).expect("square").is_none() {
                return Err(DeformationError::SingularIntertwiner(Box::new(d1.t.clone())));
            }
            Ok(verify_isomorphism(&d1.algebra(), &d2.algebra(), &phi_t))
        }
        EquivalenceMode::FirstOrder => {
            // t-coefficient: φ(x,y) + M[x,y] = ψ(x,y) + [Mx,y] + [x,My]
            let cols: Vec<Vector> = (0..n).map(|j| m.column(j)).collect();
            let e = |i: usize| {
                let mut v = vec![Scalar::zero(); n];
                v[i] = Scalar::one();
                v
            };
            Ok((0..n).all(|i| {
                (0..n).all(|j| {
                    let lhs: Vector = d1
                        .phi
                        .eval_basis(&[i, j])
                        .iter()
                        .zip(m.mul_vec(g.bracket_basis(i, j)))
                        .map(|(a, b)| a + &b)
                        .collect();
                    let r1 = g.bracket(&cols[i], &e(j));
                    let r2 = g.bracket(&e(i), &cols[j]);
                    let rhs: Vector = d2
                        .phi
                        .eval_basis(&[i, j])
                        .iter()
                        .zip(r1.iter().zip(&r2))
                        .map(|(a, (b, c))| a + &(b + c))
                        .collect();
                    lhs == rhs
                })
            }))
        }
    }
}

/// Even `H²` representatives, each tagged with `φ∘φ = 0`. Empty exactly when
/// every infinitesimal deformation is trivial.
pub fn deformation_classes(g: &HomLieSuperalgebra) -> Result<Vec<(Cochain, bool)>, DeformationError> {
    let report = cohomology(g, 2)?;
    Ok(report.representatives[0]
        .iter()
        .map(|c| (c.clone(), is_integrable(g, c)))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{catalog, CatalogId, Family};
    use crate::cohomology::cochain_space;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    fn fam(f: Family, a: i64, b: i64) -> HomLieSuperalgebra {
        let names = f.param_names();
        catalog(&CatalogId::new(f, &[(names[0], s(a)), (names[1], s(b))])).unwrap()
    }

    fn labels(g: &HomLieSuperalgebra, ls: &[((usize, usize), i64)]) -> Cochain {
        let ls: Vec<_> = ls.iter().map(|&(l, c)| (l, s(c))).collect();
        Cochain::from_display_labels(g.parity(), 0, &ls).unwrap()
    }

    #[test]
    fn circle_examples() {
        let g = fam(Family::H2Offdiag, 0, 0);
        let zero = Cochain::zero(g.parity(), 2, 0);
        let phi = labels(&g, &[((1, 2), 1), ((1, 3), 1), ((3, 6), 1)]);
        assert!(circle(&g, &zero, &phi).is_zero());
        assert!(!circle(&g, &phi, &phi).is_zero());
        let only36 = labels(&g, &[((3, 6), 1)]);
        assert!(circle(&g, &only36, &only36).is_zero());
        assert!(!is_integrable(&g, &phi));
        assert!(is_integrable(&g, &zero));
    }

    #[test]
    fn deform_examples() {
        let g = fam(Family::H1Row, 2, 0);
        let phi = labels(&g, &[((1, 4), 1)]);
        assert!(is_two_cocycle(&g, &phi));
        assert!(is_integrable(&g, &phi));
        assert_eq!(deform(&g, &phi, &s(0), false).unwrap(), g);
        let d = deform(&g, &phi, &s(1), false).unwrap();
        assert_eq!(d.bracket_basis(1, 2), &vec![s(1), s(0), s(0)]);
        assert_eq!(d.bracket_basis(2, 2), &vec![s(1), s(0), s(0)]);
        assert!(d.check_skew() && d.check_hom_jacobi() && d.is_lie_superalgebra());

        let g = fam(Family::H2Offdiag, 1, 3);
        // α-compatibility ties a25 = μ0·a36
        assert!(!in_cochain_space(&g, &labels(&g, &[((3, 6), 1)])));
        let phi = labels(&g, &[((2, 5), 1), ((3, 6), 1)]);
        let d = deform(&g, &phi, &s(1), false).unwrap();
        assert_eq!(d.bracket_basis(0, 2), &vec![s(0), s(0), s(1)]);
        assert_eq!(d.bracket_basis(0, 1), &vec![s(0), s(1), s(1)]);
    }

    #[test]
    fn deform_rejects_bad_cochains() {
        let g = fam(Family::H2Offdiag, 0, 0);
        let phi = labels(&g, &[((1, 2), 1), ((1, 3), 1), ((3, 6), 1)]);
        assert_eq!(deform(&g, &phi, &s(1), false), Err(DeformationError::NotIntegrable));
        assert!(deform(&g, &phi, &s(1), true).is_ok());
        let odd = Cochain::zero(g.parity(), 2, 1);
        assert_eq!(deform(&g, &odd, &s(1), true), Err(DeformationError::NotEvenTwoCochain));
    }

    #[test]
    fn lie_boundary_on_row_family() {
        let g = fam(Family::H1Row, 0, 5);
        let phi = labels(&g, &[((2, 6), 1)]);
        let d = deform(&g, &phi, &s(1), true).unwrap();
        assert!(!d.is_lie_superalgebra());
        let g = fam(Family::H1Row, 2, 0);
        let d = deform(&g, &labels(&g, &[((1, 4), 1)]), &s(1), false).unwrap();
        assert!(d.is_lie_superalgebra());
    }

    #[test]
    fn cocycle_checks() {
        let g = fam(Family::H1Diag, 1, 1);
        let c1 = cochain_space(&g, 1).unwrap();
        for psi in c1.all() {
            assert!(is_two_cocycle(&g, &coboundary(&g, psi)));
        }
        // [v1, v1] -> h is δ¹ of v2 -> v1/2
        assert!(is_two_cocycle(&g, &labels(&g, &[((1, 2), 1)])));
        let c2 = cochain_space(&g, 2).unwrap();
        let phi = c2
            .basis(0)
            .iter()
            .find(|c| !coboundary(&g, c).is_zero())
            .expect("C² is not all cocycles");
        assert!(!is_two_cocycle(&g, phi));
    }

    #[test]
    fn equivalence_first_order() {
        let g = fam(Family::H1Diag, 2, 3);
        let zero2 = Cochain::zero(g.parity(), 2, 0);
        let zero1 = Cochain::zero(g.parity(), 1, 0);
        let d0 = DeformationSpec::new(g.clone(), zero2.clone(), s(1)).unwrap();
        assert!(equivalent_via(&d0, &d0, &zero1, EquivalenceMode::FirstOrder).unwrap());
        assert!(equivalent_via(&d0, &d0, &zero1, EquivalenceMode::Exact).unwrap());
        let m = Matrix::diagonal(&[s(1), s(2), s(0)]);
        let psi = Cochain::from_linear_map(g.parity(), 0, &m).unwrap();
        let phi = coboundary(&g, &psi);
        let d1 = DeformationSpec::new(g.clone(), phi, s(1)).unwrap();
        assert!(equivalent_via(&d1, &d0, &psi, EquivalenceMode::FirstOrder).unwrap());
        assert!(!equivalent_via(&d1, &d0, &zero1, EquivalenceMode::FirstOrder).unwrap());
        let singular = Cochain::from_linear_map(g.parity(), 0, &Matrix::diagonal(&[s(-1), s(0), s(0)])).unwrap();
        assert_eq!(
            equivalent_via(&d1, &d0, &singular, EquivalenceMode::Exact),
            Err(DeformationError::SingularIntertwiner(Box::new(s(1))))
        );
    }

    #[test]
    fn classes() {
        assert!(deformation_classes(&fam(Family::H1Diag, 2, 3)).unwrap().is_empty());
        assert!(deformation_classes(&fam(Family::H2Diag, 2, 3)).unwrap().is_empty());
        let c = deformation_classes(&fam(Family::H1Row, 0, 5)).unwrap();
        assert_eq!(c.len(), 1);
        assert!(c[0].1);
    }
}
