use num_bigint::BigUint;
use thiserror::Error;

use crate::instances::ProblemKind;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid instance: {}", .0.join("; "))]
    Invalid(Vec<String>),
    #[error("resource budget exceeded: {0}")]
    Resource(String),
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("expected a {expected} instance, found {found}")]
    KindMismatch {
        expected: ProblemKind,
        found: ProblemKind,
    },
    #[error("witness has {found} bits, expected {expected}")]
    WitnessLength { expected: usize, found: usize },
    #[error("malformed witness: {0}")]
    MalformedWitness(String),
    #[error("permutation degrees differ: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("moduli differ: {0} vs {1}")]
    ModulusMismatch(u64, u64),
    #[error("digit {digit} out of range for base {base}")]
    DigitOutOfRange { digit: BigUint, base: BigUint },
    #[error("construction failed: {0}")]
    Construction(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("target parameter {target} exceeds bound {bound}")]
    ParameterBound { target: u64, bound: u64 },
    #[error("no solution exists: {0}")]
    NoSolution(String),
    #[error("internal invariant broken: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
