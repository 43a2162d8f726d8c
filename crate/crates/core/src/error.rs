use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("group closure exceeds {limit} elements")]
    ClosureTooLarge { limit: usize },

    #[error("element {0} is not in the group")]
    NotInGroup(String),

    #[error("the pair does not generate the group ({generated} of {order} elements)")]
    NotGenerating { generated: usize, order: usize },

    #[error("integer overflow in SL(2,Z) arithmetic")]
    Overflow,

    #[error("matrix has determinant {0}, expected 1")]
    NotUnimodular(i64),

    #[error("invalid word letter {0:?}; expected one of S, T, s, t")]
    InvalidLetter(char),

    #[error("direction ({0}, {1}) is not a primitive integer vector")]
    NotPrimitive(i64, i64),

    #[error("orbit exceeds {limit} origamis")]
    OrbitTooLarge { limit: usize },

    #[error("modulus {n} exceeds the bound {limit}")]
    ModulusTooLarge { n: u64, limit: u64 },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("({a}, {b}, {c}) are not pairwise coprime")]
    NotPairwiseCoprime { a: u64, b: u64, c: u64 },

    #[error("element orders ({a}, {b}, {c}) do not match the requested ({ea}, {eb}, {ec})")]
    OrderMismatch {
        a: u64,
        b: u64,
        c: u64,
        ea: u64,
        eb: u64,
        ec: u64,
    },

    #[error("pair scan of {pairs} candidate pairs exceeds the bound {limit}")]
    ScanTooLarge { pairs: u128, limit: u128 },

    #[error("witness for p = {p} failed verification")]
    WitnessRejected { p: u64 },

    #[error("invalid input: {0}")]
    InvalidInput(String),
}
