use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("factor {index} ({kind}{rank}): {reason}")]
    InvalidFactor {
        index: usize,
        kind: char,
        rank: usize,
        reason: String,
    },

    #[error("unsupported Dynkin type `{0}`: only classical types A, B, C, D are admitted")]
    UnsupportedType(String),

    #[error("root closure did not terminate within {bound} roots; the Cartan matrix is not of finite type")]
    NonFiniteType { bound: usize },

    #[error("permutation {0:?} is not a bijection on the node set")]
    NotBijection(Vec<usize>),

    #[error("permutation does not preserve the Cartan matrix at ({i}, {j}): a[{i}][{j}] = {expected} but a[p({i})][p({j})] = {found}")]
    CartanMismatch {
        i: usize,
        j: usize,
        expected: i32,
        found: i32,
    },

    #[error("length mismatch: expected {expected}, got {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("node {node} is out of range for a diagram with {rank} nodes")]
    InvalidNode { node: usize, rank: usize },

    #[error("pairing m[{node}] = {value} is negative; the cocharacter must be dominant")]
    NotDominant { node: usize, value: i64 },

    #[error("cocharacter is not minuscule: positive root {root:?} pairs to {value}")]
    NotMinuscule { root: Vec<i32>, value: i64 },

    #[error("Weyl group has order {order}, which exceeds the element bound {bound}")]
    BoundExceeded { order: u128, bound: u64 },

    #[error("elements belong to different ambient groups")]
    AmbientMismatch,

    #[error("{0}")]
    NotMinimal(String),

    #[error("element set is not stable under the Galois generator: {0}")]
    NotStable(String),

    #[error("unknown stratum id {id} (atlas has {count} strata)")]
    UnknownStratum { id: usize, count: usize },

    #[error("case file: {0}")]
    Case(String),

    #[error("unknown preset `{0}`")]
    UnknownPreset(String),

    #[error("internal consistency failure: {0}")]
    Internal(String),

    #[error("i/o: {0}")]
    Io(String),
}

impl Error {
    /// Process exit code for the CLI (2 = input validation, 3 = resource bound).
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::BoundExceeded { .. } => 3,
            Error::Internal(_) | Error::Io(_) => 1,
            _ => 2,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}
