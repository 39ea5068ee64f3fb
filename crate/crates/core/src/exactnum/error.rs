use num_bigint::BigInt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumError {
    #[error("negative radicand {0}")]
    NegativeRadicand(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("incompatible discriminants sqrt({left}) and sqrt({right})")]
    IncompatibleDiscriminants { left: BigInt, right: BigInt },
    #[error("indeterminate form: {0}")]
    Indeterminate(&'static str),
    #[error("cannot parse {0:?} as a number")]
    Parse(String),
    #[error("square root of {0} is not representable in a quadratic field")]
    NotRepresentable(String),
}
