use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("partition parts must be positive and non-increasing: {0:?}")]
    InvalidPartition(Vec<u64>),

    #[error("beta-set entries must be distinct positive integers: {0:?}")]
    InvalidBetaSet(Vec<u64>),

    #[error("arithmetic overflow while computing {0}")]
    Overflow(&'static str),

    #[error("modulus must be at least 1")]
    ZeroModulus,

    #[error("invalid pyramid base [{lo}, {hi}] for modulus {modulus}")]
    InvalidPyramid { modulus: u64, lo: u64, hi: u64 },

    #[error("invalid core triple (s = {s}, m = {m}): need s >= 2, m >= 1 and ms - 1 >= 2")]
    InvalidTriple { s: u64, m: u64 },

    #[error("closure of the seed leaves L_m(s) at element {0}")]
    ClosureEscapes(u64),

    #[error("block {block} is not a run of consecutive integers")]
    NotBlockConsecutive { block: usize },

    #[error("element {element} exceeds the bound {bound}")]
    OutOfRange { element: u64, bound: u64 },

    #[error("the empty set has no profile")]
    EmptySet,

    #[error("invalid profile: {0}")]
    InvalidProfile(String),

    #[error("family {kind} is not defined for k = {k} (legal range {lo}..={hi})")]
    FamilyRange {
        kind: &'static str,
        k: u64,
        lo: u64,
        hi: u64,
    },

    #[error("|L_m(s)| = {size} exceeds the enumeration cap {cap}")]
    CapExceeded { size: usize, cap: usize },

    #[error("column cap {cap} was reached by an accepted set; raise the cap")]
    CapTooSmall { cap: u64 },

    #[error("{a} and {b} are not coprime")]
    NotCoprime { a: u64, b: u64 },

    #[error("moduli list is empty")]
    NoModuli,
}

pub type Result<T> = std::result::Result<T, Error>;
