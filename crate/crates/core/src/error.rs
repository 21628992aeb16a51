use thiserror::Error;

/// Errors raised by rack, group and covering computations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("shape error: {0}")]
    Shape(String),
    #[error("column {column} is not a permutation")]
    NotBijectiveColumn { column: usize },
    #[error("self-distributivity fails at (x, y, z) = ({x}, {y}, {z})")]
    SelfDistributivityFail { x: usize, y: usize, z: usize },
    #[error("not a group: {0}")]
    NotAGroup(String),
    #[error("group closure exceeded the cap of {cap} elements")]
    ClosureCapExceeded { cap: usize },
    #[error("partition is not compatible: {0}")]
    IncompatiblePartition(String),
    #[error("map is not a homomorphism: f({x} < {y}) != f({x}) < f({y})")]
    NotAHomomorphism { x: usize, y: usize },
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("homomorphism is not surjective (element {missing} of the codomain has no preimage)")]
    NotSurjective { missing: usize },
    #[error("internal consistency failure in {op}: {detail}")]
    MethodDisagreement { op: &'static str, detail: String },
    #[error("horn step {step} is not f-related")]
    InvalidHorn { step: usize },
    #[error("free quandle element has nonzero characteristic {chi}")]
    CharacteristicNonZero { chi: i64 },
    #[error("integer entries exceeded the magnitude guard during Smith reduction")]
    OverflowGuard,
    #[error("rack is empty")]
    EmptyRack,
    #[error("bad pointing: {0}")]
    BadPointing(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0}")]
    Io(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
