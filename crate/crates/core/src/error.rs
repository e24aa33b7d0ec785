use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("basis index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("invalid Lie algebra data: {0}")]
    InvalidAlgebra(String),

    #[error("Jacobi identity fails on {0}")]
    Jacobi(String),

    #[error("vectors of subspace `{0}` are linearly dependent")]
    DependentVectors(String),

    #[error("`h` is not a subalgebra: [{0}, {1}] leaves the span")]
    NotSubalgebra(String, String),

    #[error("`m` is not complementary to `h`: {0}")]
    NotComplementary(String),

    #[error("character does not vanish on [h,h]: chi([{0}, {1}]) = {2}")]
    InvalidCharacter(String, String, String),

    #[error("component representative {index} is invalid: {reason}")]
    BadComponentRep { index: usize, reason: String },

    #[error("matrix is singular")]
    SingularMatrix,

    #[error("operands belong to different variable sets ({0} vs {1} variables)")]
    ParentMismatch(usize, usize),

    #[error("operands belong to different coset setups")]
    SetupMismatch,

    #[error("element is not in D_mod (fails: {0})")]
    NotInDmod(String),

    #[error("generator {index} does not symmetrize into D_mod (fails: {reason})")]
    GeneratorNotInDmod { index: usize, reason: String },

    #[error("degree {degree} exceeds the symmetrization cap {cap}")]
    DegreeCap { degree: usize, cap: usize },

    #[error("signature has length {found}, expected dim m = {expected}")]
    SignatureLength { expected: usize, found: usize },

    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },

    #[error("unknown identifier `{name}` at byte {offset}")]
    UnknownIdentifier { name: String, offset: usize },

    #[error("setup file: {0}")]
    Format(String),

    #[error("{0}")]
    Io(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
