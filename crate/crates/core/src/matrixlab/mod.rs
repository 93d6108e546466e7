//! Concrete matrix algebras with involution over exact fields: canonical
//! embeddings, signature extraction and brute-force checks of the embedding
//! calculus.

mod algebra;
mod char2;
mod embedding;
mod factor;
mod field;
mod matrix;
mod replay;
pub mod suites;

pub use algebra::{
    hyperbolic_form, involution_type, split_form, symplectic_form, Element, InvolutionAlgebra, InvolutionKind,
};
pub use char2::{char2_alternating_check, Char2Report};
pub use embedding::{canonical_embedding, compose, corner_embedding, hyperbolic_embedding, Embedding, Slot};
pub use factor::{factor_through_type_a, fg_idempotents, TypeAFactorization};
pub use field::{ExactField, Scalar};
pub use matrix::Matrix;
pub use replay::{replay_diagram, ReplayReport, REPLAY_DEGREE_LIMIT};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MatrixLabError {
    #[error("Gram matrix is singular")]
    SingularGram,
    #[error("Gram matrix is neither symmetric nor skew-symmetric")]
    NotSymmetricForm,
    #[error("type S needs even degree, got {0}")]
    OddDegree(usize),
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
    #[error("type mismatch: {0}")]
    TypeMismatch(String),
    #[error("partner multiplicity must be 0 for types O and S")]
    PartnerOnSimpleType,
    #[error("map is not a homomorphism: {0}")]
    NotHomomorphism(String),
    #[error("involution check failed: {0}")]
    NotInvolutive(String),
    #[error("l = {0} is odd")]
    OddMultiplicity(u64),
    #[error("not supported: {0}")]
    Unsupported(String),
    #[error("replay failed: {0}")]
    ReplayFailed(String),
}
