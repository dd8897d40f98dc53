//! Worked deformation cases: a Heisenberg algebra, a deforming cocycle at
//! `t = 1`, a claimed target algebra and (where one is known) a claimed
//! base change. Each case is re-verified from scratch.
//!
//! Claimed witnesses are tried first. If one fails, the witness solver is run
//! on the claimed zero pattern and then on the full even shape. If the claimed
//! twist is not even similar to the source twist, the bracket alone is
//! matched and the conjugated twist `PαP⁻¹` is reported instead.

use std::fmt;

use crate::algebra::{verify_isomorphism, HomLieSuperalgebra};
use crate::catalog::{catalog, CatalogId, Family};
use crate::cochain::Cochain;
use crate::deformation::{deform, is_integrable, is_two_cocycle, DeformationError};
use crate::field::Scalar;
use crate::linalg::{invert, Matrix};
use crate::witness::{bracket_obstruction, find_witness, pattern_of, similarity_obstruction};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DeformationCase {
    /// `h1_row(2,0)`, `[v2,v2] = a14·h` → `L2'` with a sheared twist.
    H1RowLie,
    /// `h2_diag(1,3)`, `[u,h] = a26·v + a36·h` → `L3^λ`.
    H2DiagL3Lambda,
    /// `h2_diag(1,3)`, `[u,h] = a36·h` → `L3^0`.
    H2DiagL3Zero,
    /// `h2_diag(1,3)`, `[u,h] = a26·v` → `L3^{-1}`.
    H2DiagL3MinusOne,
    /// `h2_diag(-1,0)`, `[u,h] = a36·h` → `L3^0`.
    H2DiagNegL3Zero,
    /// `h2_diag(0,0)`, `[u,h] = a26·v` → `L3^{-1}`.
    H2DiagZeroL3MinusOne,
    /// `h2_offdiag(0,0)`, `[u,h] = a36·h` → `L3^0`.
    H2OffdiagL3Zero,
    /// `h2_offdiag(1,3)`, `[u,v] = a36·v + h`, `[u,h] = a36·h` → `L4`.
    H2OffdiagL4,
    /// `h2_offdiag(3,0)`, `[u,v] = μ0·a36·v + h`, `[u,h] = a36·h` → `L3^{μ0}`.
    H2OffdiagL3Mu0,
    /// `h1_row(0,3)`, `[h,v2] = a26·v1` → `L12_46(a = μ12, b = 0)`.
    H1RowNonLie,
    /// `h2_offdiag(0,0)`, `[v,v] = a12·u`, `[v,h] = a13·u` → `L12_45`.
    H2OffdiagL12_45,
    /// `h2_offdiag(0,0)`, `[v,h] = a13·u` → `L12_46`.
    H2OffdiagL12_46,
    /// `h2_offdiag(0,0)`, `[v,v] = a12·u` → `L12_43`.
    H2OffdiagL12_43,
}

impl DeformationCase {
    pub const ALL: [DeformationCase; 13] = [
        DeformationCase::H1RowLie,
        DeformationCase::H2DiagL3Lambda,
        DeformationCase::H2DiagL3Zero,
        DeformationCase::H2DiagL3MinusOne,
        DeformationCase::H2DiagNegL3Zero,
        DeformationCase::H2DiagZeroL3MinusOne,
        DeformationCase::H2OffdiagL3Zero,
        DeformationCase::H2OffdiagL4,
        DeformationCase::H2OffdiagL3Mu0,
        DeformationCase::H1RowNonLie,
        DeformationCase::H2OffdiagL12_45,
        DeformationCase::H2OffdiagL12_46,
        DeformationCase::H2OffdiagL12_43,
    ];

    pub fn name(self) -> &'static str {
        match self {
            DeformationCase::H1RowLie => "h1-row-lie",
            DeformationCase::H2DiagL3Lambda => "h2-diag-l3-lambda",
            DeformationCase::H2DiagL3Zero => "h2-diag-l3-zero",
            DeformationCase::H2DiagL3MinusOne => "h2-diag-l3-minus-one",
            DeformationCase::H2DiagNegL3Zero => "h2-diag-neg-l3-zero",
            DeformationCase::H2DiagZeroL3MinusOne => "h2-diag-zero-l3-minus-one",
            DeformationCase::H2OffdiagL3Zero => "h2-offdiag-l3-zero",
            DeformationCase::H2OffdiagL4 => "h2-offdiag-l4",
            DeformationCase::H2OffdiagL3Mu0 => "h2-offdiag-l3-mu0",
            DeformationCase::H1RowNonLie => "h1-row-non-lie",
            DeformationCase::H2OffdiagL12_45 => "h2-offdiag-l12-45",
            DeformationCase::H2OffdiagL12_46 => "h2-offdiag-l12-46",
            DeformationCase::H2OffdiagL12_43 => "h2-offdiag-l12-43",
        }
    }
}

impl fmt::Display for DeformationCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WitnessStatus {
    /// The claimed base change verifies as is.
    PrintedVerified,
    /// The claimed matrix fails; the solver found one for the claimed target.
    SolverRecovered,
    /// No witness can exist for the claimed twist; the bracket matches and
    /// the target twist is replaced by the conjugate of the source twist.
    TwistCorrected,
    Failed,
}

#[derive(Debug, Clone)]
pub struct CaseReport {
    pub case: DeformationCase,
    pub base: HomLieSuperalgebra,
    pub phi: Cochain,
    pub deformed: HomLieSuperalgebra,
    pub is_lie: bool,
    pub claimed_target: HomLieSuperalgebra,
    pub claimed_witness: Option<Matrix>,
    pub status: WitnessStatus,
    /// The target actually verified against (differs from the claim only
    /// for [`WitnessStatus::TwistCorrected`]).
    pub target: HomLieSuperalgebra,
    pub witness: Option<Matrix>,
    pub notes: Vec<String>,
}

impl CaseReport {
    /// Final, independent check of the reported witness.
    pub fn verified(&self) -> bool {
        self.witness
            .as_ref()
            .is_some_and(|w| verify_isomorphism(&self.deformed, &self.target, w))
    }
}

fn s(n: i64) -> Scalar {
    Scalar::from_int(n)
}

fn q(n: i64, d: i64) -> Scalar {
    Scalar::from_ratio(n, d)
}

fn fam(f: Family, ps: &[Scalar]) -> HomLieSuperalgebra {
    let names = f.param_names();
    let pairs: Vec<(&str, Scalar)> = names.iter().copied().zip(ps.iter().cloned()).collect();
    catalog(&CatalogId::new(f, &pairs)).expect("case parameters satisfy the family constraints")
}

fn m3(rows: [[Scalar; 3]; 3]) -> Matrix {
    Matrix::from_rows(rows.into_iter().map(Vec::from).collect()).expect("3x3")
}

struct CaseData {
    base: HomLieSuperalgebra,
    labels: Vec<((usize, usize), Scalar)>,
    target: HomLieSuperalgebra,
    witness: Option<Matrix>,
    notes: Vec<String>,
}

fn l3(lambda: Scalar, alpha: Matrix) -> HomLieSuperalgebra {
    fam(Family::L3, &[lambda]).with_alpha(alpha).expect("even twist")
}

fn case_data(case: DeformationCase) -> CaseData {
    let z = Scalar::zero;
    use DeformationCase::*;
    match case {
        H1RowLie => {
            let (m11, a14) = (s(2), s(2));
            let m12p = &(&q(-1, 2) * &a14) * &m11;
            CaseData {
                base: fam(Family::H1Row, &[m11.clone(), z()]),
                labels: vec![((1, 4), a14.clone())],
                target: fam(Family::L2Prime, &[])
                    .with_alpha(m3([[z(), z(), z()], [z(), m11, m12p], [z(), z(), z()]]))
                    .unwrap(),
                witness: Some(m3([
                    [s(1), z(), z()],
                    [z(), s(1), &a14 * &q(1, 2)],
                    [z(), z(), s(1)],
                ])),
                notes: vec![],
            }
        }
        H2DiagL3Lambda => {
            // a26 k² + a36 k − 1 = 0 has roots k ∈ {1, 1/2}
            let (a26, a36) = (s(-2), s(3));
            let (k1, k2) = (s(1), q(1, 2));
            let tau = (&k1 - &k2).inv().unwrap();
            let lambda = &k1 * &k2.inv().unwrap();
            CaseData {
                base: fam(Family::H2Diag, &[s(1), s(3)]),
                labels: vec![((2, 6), a26.clone()), ((3, 6), a36.clone())],
                target: l3(lambda, Matrix::diagonal(&[s(1), s(3), s(3)])),
                witness: Some(m3([
                    [k1.inv().unwrap(), z(), z()],
                    [z(), &tau * &a26.inv().unwrap(), -(&tau * &k2)],
                    [z(), -(&tau * &a36.inv().unwrap()), &tau * &k1],
                ])),
                notes: vec![],
            }
        }
        H2DiagL3Zero => {
            let a36 = s(2);
            CaseData {
                base: fam(Family::H2Diag, &[s(1), s(3)]),
                labels: vec![((3, 6), a36.clone())],
                target: l3(z(), Matrix::diagonal(&[s(1), s(3), s(3)])),
                witness: Some(m3([
                    [a36.clone(), z(), z()],
                    [z(), a36.inv().unwrap(), s(1)],
                    [z(), a36.inv().unwrap(), z()],
                ])),
                notes: vec![],
            }
        }
        H2DiagL3MinusOne | H2DiagZeroL3MinusOne => {
            let (a26, r) = (s(4), s(2));
            let kappa = (&s(1) + &a26).inv().unwrap();
            let (base, alpha) = if case == H2DiagL3MinusOne {
                (fam(Family::H2Diag, &[s(1), s(3)]), Matrix::diagonal(&[s(1), s(3), s(3)]))
            } else {
                // μ0 = 0 forces μ11 = 0 for this cocycle, so the claimed
                // ξ-twist (proportional to μ11) vanishes
                (fam(Family::H2Diag, &[z(), z()]), Matrix::zeros(3, 3))
            };
            let mut notes = vec![];
            if case == H2DiagZeroL3MinusOne {
                notes.push(
                    "an alternative listing names L3^0 as the target; ad u has eigenvalues ±a26^(1/2) on the odd part, so the target is L3^-1".into(),
                );
            }
            CaseData {
                base,
                labels: vec![((2, 6), a26.clone())],
                target: l3(s(-1), alpha),
                witness: Some(m3([
                    [r.clone(), z(), z()],
                    [z(), kappa.clone(), &kappa * &r.pow(3)],
                    [z(), -(&kappa * &r), &kappa * &a26],
                ])),
                notes,
            }
        }
        H2DiagNegL3Zero => {
            let (a36, m11) = (s(2), z());
            CaseData {
                base: fam(Family::H2Diag, &[s(-1), m11.clone()]),
                labels: vec![((3, 6), a36.clone())],
                target: l3(
                    z(),
                    m3([
                        [s(-1), z(), z()],
                        [z(), -m11.clone(), m11.clone()],
                        [z(), z(), &s(2) * &m11],
                    ]),
                ),
                witness: Some(m3([
                    [a36.clone(), z(), z()],
                    [z(), a36.inv().unwrap(), s(1)],
                    [z(), a36.inv().unwrap(), z()],
                ])),
                notes: vec!["cocycle condition at μ0 = -1 forces μ11 = 0".into()],
            }
        }
        H2OffdiagL3Zero => {
            let a36 = s(2);
            CaseData {
                base: fam(Family::H2Offdiag, &[z(), z()]),
                labels: vec![((3, 6), a36.clone())],
                target: l3(z(), Matrix::diagonal(&[z(), z(), a36.clone()])),
                witness: Some(m3([
                    [a36.clone(), z(), z()],
                    [z(), z(), a36.inv().unwrap()],
                    [z(), s(1), a36.inv().unwrap()],
                ])),
                notes: vec![],
            }
        }
        H2OffdiagL4 => {
            let (a36, m11) = (s(2), s(3));
            CaseData {
                base: fam(Family::H2Offdiag, &[s(1), m11.clone()]),
                labels: vec![((2, 5), a36.clone()), ((3, 6), a36.clone())],
                target: fam(Family::L4, &[])
                    .with_alpha(Matrix::diagonal(&[s(1), m11.clone(), m11]))
                    .unwrap(),
                witness: Some(m3([
                    [a36.clone(), z(), z()],
                    [z(), z(), a36.clone()],
                    [z(), s(1), z()],
                ])),
                notes: vec![],
            }
        }
        H2OffdiagL3Mu0 => {
            let (a36, m0) = (s(2), s(3));
            CaseData {
                base: fam(Family::H2Offdiag, &[m0.clone(), z()]),
                labels: vec![((2, 5), &m0 * &a36), ((3, 6), a36.clone())],
                target: l3(
                    m0.clone(),
                    m3([
                        [m0.clone(), z(), z()],
                        [z(), z(), m0.inv().unwrap()],
                        [z(), z(), z()],
                    ]),
                ),
                witness: Some(m3([
                    [a36.clone(), z(), z()],
                    [z(), &(&m0 - &s(1)) * &a36, m0.inv().unwrap()],
                    [z(), z(), z()],
                ])),
                notes: vec![],
            }
        }
        H1RowNonLie => {
            let (m12, a26) = (s(3), s(2));
            CaseData {
                base: fam(Family::H1Row, &[z(), m12.clone()]),
                labels: vec![((2, 6), a26.clone())],
                target: fam(Family::L12_46, &[m12, z(), a26, s(1)]),
                witness: None,
                notes: vec![],
            }
        }
        H2OffdiagL12_45 | H2OffdiagL12_46 | H2OffdiagL12_43 => {
            let (a12, a13) = match case {
                H2OffdiagL12_45 => (s(2), s(3)),
                H2OffdiagL12_46 => (z(), s(3)),
                _ => (s(2), z()),
            };
            let target = match case {
                H2OffdiagL12_45 => fam(Family::L12_45, &[s(1), s(1), a12.clone(), a13.clone()]),
                H2OffdiagL12_46 => fam(Family::L12_46, &[s(1), z(), s(1), a13.clone()]),
                _ => fam(Family::L12_43, &[s(1), s(1), a12.clone()]),
            };
            let mut notes = vec![];
            if case == H2OffdiagL12_45 {
                notes.push(
                    "an alternative listing of this target writes [e3,e3] = a12·e3, which is not even; the family definition has a12·e1".into(),
                );
            }
            CaseData {
                base: fam(Family::H2Offdiag, &[z(), z()]),
                labels: [((1, 2), a12), ((1, 3), a13)]
                    .into_iter()
                    .filter(|(_, c)| !c.is_zero())
                    .collect(),
                target,
                witness: None,
                notes,
            }
        }
    }
}

/// Rebuilds the case, deforms at `t = 1`, and certifies the isomorphism.
pub fn verify_proposition_table(case: DeformationCase) -> Result<CaseReport, DeformationError> {
    let data = case_data(case);
    let phi = Cochain::from_display_labels(data.base.parity(), 0, &data.labels)
        .expect("case cochains are well formed");
    let deformed = deform(&data.base, &phi, &Scalar::one(), false)?;
    let mut notes = data.notes;
    let claimed = data.target;
    let mut status = WitnessStatus::Failed;
    let mut target = claimed.clone();
    let mut witness = None;

    match &data.witness {
        Some(w) if verify_isomorphism(&deformed, &claimed, w) => {
            status = WitnessStatus::PrintedVerified;
            witness = Some(w.clone());
        }
        Some(w) => notes.push(format!("claimed base change {w} does not verify")),
        None => notes.push("no claimed base change; solving".into()),
    }
    if witness.is_none() {
        let pattern = data.witness.as_ref().map(pattern_of);
        let found = pattern
            .as_ref()
            .and_then(|p| find_witness(&deformed, &claimed, Some(p), true))
            .or_else(|| find_witness(&deformed, &claimed, None, true));
        if let Some(w) = found {
            status = WitnessStatus::SolverRecovered;
            witness = Some(w);
        }
    }
    if witness.is_none() {
        if let Some(why) = similarity_obstruction(deformed.parity(), deformed.alpha(), claimed.alpha()) {
            notes.push(format!("claimed twist is impossible: {why}"));
            if let Some(w) = find_witness(&deformed, &claimed, None, false) {
                let winv = invert(&w).expect("square").expect("invertible witness");
                let alpha = &(&w * deformed.alpha()) * &winv;
                notes.push(format!("bracket matches; conjugated twist is {alpha}"));
                target = claimed.with_alpha(alpha).expect("even");
                status = WitnessStatus::TwistCorrected;
                witness = Some(w);
            }
        } else if let Some(why) = bracket_obstruction(&deformed, &claimed) {
            notes.push(format!("brackets are not isomorphic: {why}"));
        }
    }
    Ok(CaseReport {
        case,
        base: data.base,
        is_lie: deformed.is_lie_superalgebra(),
        phi,
        deformed,
        claimed_target: claimed,
        claimed_witness: data.witness,
        status,
        target,
        witness,
        notes,
    })
}

/// The cocycle condition and integrability for a case's deforming cochain.
pub fn case_cocycle_checks(case: DeformationCase) -> (bool, bool) {
    let data = case_data(case);
    let phi = Cochain::from_display_labels(data.base.parity(), 0, &data.labels).expect("well formed");
    (is_two_cocycle(&data.base, &phi), is_integrable(&data.base, &phi))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_case_is_certified() {
        for case in DeformationCase::ALL {
            let r = verify_proposition_table(case).unwrap();
            assert!(r.verified(), "{case}: {:?}", r.notes);
        }
    }

    #[test]
    fn statuses() {
        use DeformationCase::*;
        use WitnessStatus::*;
        let status = |c| verify_proposition_table(c).unwrap().status;
        for c in [H1RowLie, H2DiagL3Zero, H2DiagNegL3Zero] {
            assert_eq!(status(c), PrintedVerified, "{c}");
        }
        for c in [H2DiagL3Lambda, H2DiagL3MinusOne, H2DiagZeroL3MinusOne, H2OffdiagL3Mu0, H1RowNonLie] {
            assert_eq!(status(c), SolverRecovered, "{c}");
        }
        for c in [H2OffdiagL3Zero, H2OffdiagL4] {
            assert_eq!(status(c), TwistCorrected, "{c}");
        }
    }

    #[test]
    fn claimed_l3_zero_is_wrong_at_mu0_zero() {
        let r = verify_proposition_table(DeformationCase::H2DiagZeroL3MinusOne).unwrap();
        let l3_zero = fam(Family::L3, &[Scalar::zero()]).with_alpha(Matrix::zeros(3, 3)).unwrap();
        // the even part is one-dimensional, so rank of ad(e1) on the odd
        // part is an isomorphism invariant
        let odd_rank = |g: &HomLieSuperalgebra| {
            let cols: Vec<_> = (1..3).map(|j| g.bracket_basis(0, j).clone()).collect();
            Matrix::from_columns(3, &cols).rank()
        };
        assert_eq!(odd_rank(&r.deformed), 2);
        assert_eq!(odd_rank(&l3_zero), 1);
        assert_eq!(odd_rank(&r.target), 2);
    }

    #[test]
    fn lie_flags() {
        use DeformationCase::*;
        for case in DeformationCase::ALL {
            let r = verify_proposition_table(case).unwrap();
            let non_lie = matches!(case, H1RowNonLie | H2OffdiagL12_45 | H2OffdiagL12_46 | H2OffdiagL12_43);
            assert_eq!(r.is_lie, !non_lie, "{case}");
        }
    }
}
