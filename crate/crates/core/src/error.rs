use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArithError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("cannot parse rational {0:?}")]
    Parse(String),
    #[error("matrix is singular")]
    Singular,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeifertError {
    #[error("component count mismatch: {0} vs {1}")]
    MuMismatch(usize, usize),
    #[error("zeta mismatch")]
    ZetaMismatch,
    #[error("subspace is not a submodule")]
    NotInvariant,
    #[error("subspace is not isotropic")]
    NotIsotropic,
    #[error("form is singular")]
    SingularForm,
    #[error("zero module")]
    ZeroModule,
    #[error("module is not simple")]
    NotSimple,
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NumberTheoryError {
    #[error("{0} is not a prime")]
    NotPrime(String),
    #[error("arguments must be nonzero")]
    Zero,
    #[error("{0} is a square")]
    Square(String),
    #[error("could not factor {0}")]
    Factorization(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoveringError {
    #[error("augmentation is singular")]
    SingularAugmentation,
    #[error("presentation is not linear")]
    NotLinear,
    #[error("augmentation is not the identity")]
    AugmentationNotIdentity,
    #[error("coefficient change {0} is not supported")]
    UnsupportedDirection(String),
    #[error("entries are not integral")]
    NotIntegral,
    #[error("bad word {0:?}")]
    Parse(String),
}
