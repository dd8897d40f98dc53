//! Exact structure-constant toolkit for finite-dimensional Hom-Lie superalgebras.

pub mod algebra;
pub mod cases;
pub mod catalog;
pub mod cochain;
pub mod cohomology;
pub mod deformation;
pub mod field;
pub mod linalg;
pub mod normalize;
pub mod witness;

pub use algebra::{is_even_matrix, verify_isomorphism, AlgebraError, HeisenbergCertificate, HomLieSuperalgebra, NotHeisenberg};
pub use catalog::{catalog, CatalogError, CatalogId, Family};
pub use cochain::{Cochain, CochainError, TupleBasis};
pub use cohomology::{coboundary, coboundary_matrix, cochain_space, cohomology, CohomologyError, CohomologyReport};
pub use deformation::{circle, deform, deformation_classes, equivalent_via, is_integrable, is_two_cocycle, DeformationError, DeformationSpec, EquivalenceMode};
pub use field::{format_scalar, parse_scalar, FieldError, ParseScalarError, Rational, Scalar};
pub use normalize::{normalize_heisenberg, NormalFormResult, NormalizeError};
pub use linalg::{image_basis, invert, kernel_basis, rref, solve, LinalgError, Matrix, Rref, Subspace};
pub use cases::{case_cocycle_checks, verify_proposition_table, CaseReport, DeformationCase, WitnessStatus};
pub use witness::{bracket_obstruction, find_witness, pattern_of, similarity_obstruction, Pattern};
