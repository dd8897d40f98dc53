//! Reduction of a 3-dimensional multiplicative Heisenberg Hom-Lie
//! superalgebra to one of the five normal-form families.
//!
//! The algebra is first moved to an adapted basis (`(u | v, h)` with
//! `[u,v] = h`, or `(h | v1, v2)` with `[v1,v2] = h`); multiplicativity then
//! restricts the odd block of the twist, and a final rescaling / shear /
//! swap lands in the family. The returned witness always satisfies
//! `verify_isomorphism(input, catalog(canonical), witness)`.

use thiserror::Error;

use crate::algebra::{verify_isomorphism, HomLieSuperalgebra, NotHeisenberg};
use crate::catalog::{catalog, CatalogId, Family};
use crate::field::Scalar;
use crate::linalg::{invert, Matrix, Vector};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NormalizeError {
    #[error("normal forms are only defined in dimension 3 (got {0})")]
    WrongDimension(usize),
    #[error("expected parities (0,1,1), got {0:?}")]
    UnsupportedParity(Vec<u8>),
    #[error("not Heisenberg: {0}")]
    NotHeisenberg(#[from] NotHeisenberg),
    #[error("twist map is not multiplicative")]
    NotMultiplicative,
    #[error("the odd form has no isotropic vector over Q(i)")]
    NoRationalIsotropicVector,
    #[error("internal error: normal-form witness failed verification")]
    WitnessFailed,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalFormResult {
    pub canonical: CatalogId,
    pub witness: Matrix,
}

fn coeff_of(v: &[Scalar], h: &[Scalar]) -> Scalar {
    let k = (0..h.len()).find(|&k| !h[k].is_zero()).expect("nonzero generator");
    &v[k] * &h[k].inv().expect("nonzero")
}

fn basis_change(columns: &[Vector]) -> Matrix {
    let q = Matrix::from_columns(columns.len(), columns);
    invert(&q).expect("square").expect("adapted basis is a basis")
}

pub fn normalize_heisenberg(g: &HomLieSuperalgebra) -> Result<NormalFormResult, NormalizeError> {
    if g.dim() != 3 {
        return Err(NormalizeError::WrongDimension(g.dim()));
    }
    if g.parity() != [0, 1, 1] {
        return Err(NormalizeError::UnsupportedParity(g.parity().to_vec()));
    }
    let cert = g.is_heisenberg()?;
    if !g.check_multiplicative() {
        return Err(NormalizeError::NotMultiplicative);
    }
    let h = cert.generator;
    let (canonical, witness) = if cert.generator_parity == 1 {
        odd_generator(g, &h)
    } else {
        even_generator(g, &h)?
    };
    let target = catalog(&canonical).map_err(|_| NormalizeError::WitnessFailed)?;
    if !verify_isomorphism(g, &target, &witness) {
        return Err(NormalizeError::WitnessFailed);
    }
    Ok(NormalFormResult { canonical, witness })
}

fn e(k: usize) -> Vector {
    let mut v = vec![Scalar::zero(); 3];
    v[k] = Scalar::one();
    v
}

fn params(f: Family, a: &Scalar, b: &Scalar) -> CatalogId {
    let n = f.param_names();
    CatalogId::new(f, &[(n[0], a.clone()), (n[1], b.clone())])
}

fn odd_generator(g: &HomLieSuperalgebra, h: &Vector) -> (CatalogId, Matrix) {
    let u = e(0);
    let v = [e(1), e(2)]
        .into_iter()
        .find(|x| !g.bracket(&u, x).iter().all(Scalar::is_zero))
        .expect("non-degenerate form pairs u with an odd vector");
    let c = coeff_of(&g.bracket(&u, &v), h);
    let u = vec![c.inv().expect("nonzero"), Scalar::zero(), Scalar::zero()];
    let p0 = basis_change(&[u, v, h.clone()]);
    let a = &(&p0 * g.alpha()) * &invert(&p0).unwrap().unwrap();
    let (mu0, mu11, mu21) = (a[(0, 0)].clone(), a[(1, 1)].clone(), a[(2, 1)].clone());
    let one = Scalar::one();
    let step = if mu21.is_zero() {
        None
    } else if mu0 != one && !mu11.is_zero() {
        // shear v -> v + b21 h with b21 = −(1−μ0)⁻¹ μ11⁻¹ μ21
        let b21 = -(&mu21 * &(&(&one - &mu0) * &mu11).inv().unwrap());
        let mut s = Matrix::identity(3);
        s[(2, 1)] = b21;
        Some((Family::H2Diag, s))
    } else {
        // rescale u (and with it h) by b0 = μ21⁻¹
        let b0 = mu21.inv().unwrap();
        Some((Family::H2Offdiag, Matrix::diagonal(&[b0.clone(), one.clone(), b0])))
    };
    match step {
        None => (params(Family::H2Diag, &mu0, &mu11), p0),
        Some((f, s)) => (params(f, &mu0, &mu11), &s * &p0),
    }
}

fn even_generator(g: &HomLieSuperalgebra, h: &Vector) -> Result<(CatalogId, Matrix), NormalizeError> {
    let form = |x: &Vector, y: &Vector| coeff_of(&g.bracket(x, y), h);
    let (e1, e2) = (e(1), e(2));
    let (b11, b12, b22) = (form(&e1, &e1), form(&e1, &e2), form(&e2, &e2));
    let v1 = if b11.is_zero() {
        e1.clone()
    } else if b22.is_zero() {
        e2.clone()
    } else {
        // e1 + x e2 with b11 + 2x b12 + x² b22 = 0
        let disc = &(&b12 * &b12) - &(&b11 * &b22);
        let root = disc.sqrt().ok_or(NormalizeError::NoRationalIsotropicVector)?;
        let x = &(&(-b12.clone()) + &root) * &b22.inv().unwrap();
        vec![Scalar::zero(), Scalar::one(), x]
    };
    let w = if v1 == e1 { e2 } else { e1 };
    let bvw = form(&v1, &w);
    let k = &form(&w, &w) * &(&Scalar::from_int(2) * &bvw).inv().unwrap();
    let v2: Vector = w.iter().zip(&v1).map(|(a, b)| a - &(&k * b)).collect();
    let scale = form(&v1, &v2).inv().unwrap();
    let v2: Vector = v2.iter().map(|x| x * &scale).collect();
    let hh = g.bracket(&v1, &v2);
    let p0 = basis_change(&[hh, v1, v2]);
    let a = &(&p0 * g.alpha()) * &invert(&p0).unwrap().unwrap();
    let (m11, m12, m21, m22) = (
        a[(1, 1)].clone(),
        a[(1, 2)].clone(),
        a[(2, 1)].clone(),
        a[(2, 2)].clone(),
    );
    let swap = Matrix::from_int_rows(&[&[1, 0, 0], &[0, 0, 1], &[0, 1, 0]]);
    let z = Scalar::zero();
    let out = if m12.is_zero() && m21.is_zero() {
        if !m11.is_zero() && !m22.is_zero() {
            (params(Family::H1Diag, &m11, &m22), p0)
        } else if m22.is_zero() {
            (params(Family::H1Row, &m11, &z), p0)
        } else {
            (params(Family::H1Row, &m22, &z), &swap * &p0)
        }
    } else if m21.is_zero() {
        (params(Family::H1Row, &m11, &m12), p0)
    } else if m12.is_zero() {
        (params(Family::H1Row, &m22, &m21), &swap * &p0)
    } else {
        (params(Family::H1Antidiag, &m12, &m21), p0)
    };
    Ok(out)
}
