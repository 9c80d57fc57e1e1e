//! Exact decision and certification of equality in the Frobenius rank
//! inequality
//!
//! ```text
//! rank(ABC) + rank(B) >= rank(AB) + rank(BC)
//! ```
//!
//! over the rationals and prime fields. Equality holds exactly when
//! `B = BCX + YAB` has a solution; [`construct_certificate`] builds such a
//! pair `(X, Y)` when it exists and otherwise returns a vector of
//! `Rg(B) ∩ Ker(A)` that is missing from `Rg(BC) ∩ Ker(A)`.

pub mod analysis;
pub mod certificate;
pub mod error;
pub mod field;
pub mod io;
pub mod matrix;
pub mod oracle;
pub mod reduce;

pub use analysis::{
    equality_criteria, intersection_basis, quotient_map_matrix, rank_profile, CriteriaReport,
    InequalityWitness, RankProfile,
};
pub use certificate::{
    construct_certificate, solution_family, verify_certificate, ConstructionTrace,
    EqualityCertificate, Outcome,
};
pub use error::{Error, Result};
pub use field::{FieldSpec, Prime, Scalar};
pub use matrix::{matmul, Matrix};
pub use oracle::{brute_force_solvable, random_instance, InstanceSpec, DEFAULT_BUDGET};
pub use reduce::{
    extend_basis, kernel_basis, pivot_column_basis, rank, rref, solve_right, RrefResult,
};
