use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("scalar error: {0}")]
    BadScalar(String),
    #[error("ambient dimension mismatch: {left} vs {right}")]
    AmbientMismatch { left: usize, right: usize },
    #[error("subspace is not contained in the target subspace")]
    NotContained,
    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("variable X{index} out of range (n_vars = {n_vars})")]
    OutOfRangeVariable { index: usize, n_vars: usize },
    #[error("matrix is not invertible")]
    NotInvertible,
    #[error("zero polynomial where a nonzero one is required")]
    ZeroInput,
    #[error("polynomial is not s-homogeneous: {0}")]
    NotSHomogeneous(String),

    #[error("structure constants are not associative at (e{0} e{1}) e{2}")]
    NonAssociative(usize, usize, usize),
    #[error("supplied identity is not a two-sided unit")]
    NotUnital,
    #[error("unsupported radical computation: {0}")]
    UnsupportedRadicalComputation(String),
    #[error("algebra is not split basic: {0}")]
    NotSplitBasic(String),

    #[error("presentation is not admissible: {0}")]
    NotAdmissible(String),
    #[error("algebra is not local")]
    NotLocal,
    #[error("algebra is not commutative")]
    NotCommutative,
    #[error("algebra is not split: {0}")]
    NotSplit(String),
    #[error("presentation is not graded: {0}")]
    NotGraded(String),

    #[error("quadratic-form theory in characteristic 2 is not supported")]
    CharTwo,
    #[error("polynomial is not a quadratic form")]
    NotDegreeTwo,
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("subspace is not stable under the acting Lie algebra")]
    NotStable,
    #[error("degree out of range: {0}")]
    DegreeOutOfRange(String),

    #[error("search space too large: {bound} candidates exceed the limit {limit}")]
    SearchSpaceTooLarge { bound: u128, limit: u128 },
    #[error("operation requires a prime field")]
    RequiresPrimeField,

    #[error("schema error: {0}")]
    Schema(String),
}

impl Error {
    /// Errors that mean "this input cannot be handled by the requested computation"
    /// rather than "this input is malformed".
    pub fn is_unsupported(&self) -> bool {
        matches!(
            self,
            Error::UnsupportedRadicalComputation(_)
                | Error::NotSplitBasic(_)
                | Error::NotLocal
                | Error::NotCommutative
                | Error::NotSplit(_)
                | Error::NotGraded(_)
                | Error::CharTwo
                | Error::SearchSpaceTooLarge { .. }
                | Error::RequiresPrimeField
        )
    }
}
