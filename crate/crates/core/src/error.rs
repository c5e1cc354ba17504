use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not a prime >= 5")]
    InvalidField(u64),
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("division by zero")]
    DivisionByZero,
    #[error("the zero polynomial has no factorization")]
    ZeroPolynomial,
    #[error("the order of zero is undefined")]
    OrderOfZero,
    #[error("function has a pole at the place")]
    PoleAtPlace,
    #[error("invalid place: {0}")]
    InvalidPlace(String),
    #[error("invalid extension: {0}")]
    InvalidExtension(String),
    #[error("singular curve: discriminant vanishes")]
    Singular,
    #[error("point is not on the curve")]
    NotOnCurve,
    #[error("point at infinity is not allowed here")]
    PointAtInfinity,
    #[error("curve is isotrivial (constant j-invariant)")]
    Isotrivial,
    #[error("curve is not isotrivial")]
    NotIsotrivial,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
    #[error("generators are dependent (Gram determinant is not positive)")]
    DependentGenerators,
    #[error("rank {0} exceeds the supported maximum of 3")]
    RankTooLarge(usize),
    #[error("no subset meets the threshold")]
    Infeasible,
    #[error("invalid input: {0}")]
    Input(String),
}

pub type Result<T> = std::result::Result<T, Error>;
