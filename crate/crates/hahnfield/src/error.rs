use alloc::string::String;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("bound exceeded: {0}")]
    BoundExceeded(String),
    #[error("unrepresentable cut: {0}")]
    UnrepresentableCut(String),
    #[error("cut is not above 0-: {0}")]
    NonPositiveCut(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("root depth exceeded (max {0})")]
    RootDepthExceeded(u32),
    #[error("no nonzero coefficient among the first {0} grid points")]
    HorizonExceeded(usize),
    #[error("zero divisor")]
    ZeroDivisor,
    #[error("not pseudo-Cauchy: {0}")]
    NotPseudoCauchy(String),
    #[error("residue root is not a simple root")]
    NotSimpleRoot,
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = core::result::Result<T, Error>;
