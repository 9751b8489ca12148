use thiserror::Error;

/// Errors raised while building or querying rings, lattices and meadows.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("size cap exceeded: {what} has {size} elements, cap is {cap}")]
    CapExceeded { what: String, size: u128, cap: usize },

    #[error("ring spec parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("not an ideal: {0}")]
    NotAnIdeal(String),

    #[error("operands belong to different rings")]
    RingMismatch,

    #[error("element {0} is not a unit")]
    NotAUnit(usize),

    #[error("not a ring homomorphism: {0}")]
    NotAHomomorphism(String),

    #[error("not a lattice: {0}")]
    NotALattice(String),

    #[error("directed lattice invalid: {0}")]
    DirectedLattice(String),

    #[error("coherence violation between vertices {lower} and {upper}: {detail}")]
    Coherence {
        lower: String,
        upper: String,
        detail: String,
    },

    #[error("meadow is not common: element {witness} has {maximal_count} maximal invertibility vertices")]
    NotCommon { witness: String, maximal_count: usize },

    #[error("argument is not an element of 0·P: {0}")]
    NotAFiberZero(String),

    #[error("unsupported meadow: {0}")]
    Unsupported(String),

    #[error("internal consistency failure: {0}")]
    Internal(String),

    #[error("invalid custom lattice document: {0}")]
    Document(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
