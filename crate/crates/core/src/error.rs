use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cycle length {0} is below 2")]
    ModulusTooSmall(u64),

    #[error("a torus needs at least one coordinate")]
    EmptySpec,

    #[error("vertex count of {0:?} overflows the platform integer size")]
    VertexCountOverflow(Vec<u64>),

    #[error("vertex has {found} coordinates, torus has {expected}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("coordinate {index} = {value} is not reduced modulo {modulus}")]
    UnreducedCoordinate {
        index: usize,
        value: u64,
        modulus: u64,
    },

    #[error("generator x{} does not exist in a torus with {dims} coordinates", .index + 1)]
    InvalidGenerator { index: usize, dims: usize },

    #[error("symbol {0} has no step assigned")]
    UnknownSymbol(String),

    #[error("not a permutation of 0..{0}")]
    InvalidPermutation(usize),

    #[error("permutation maps coordinate {from} (modulus {from_modulus}) onto coordinate {to} (modulus {to_modulus})")]
    PermutationMixesModuli {
        from: usize,
        to: usize,
        from_modulus: u64,
        to_modulus: u64,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{n} is not a multiple of {m}")]
    NotAMultiple { m: u64, n: u64 },

    #[error("no staircase case applies to ({i}, {j}) in Z_{m} x Z_{n}; the target must be transformed first")]
    LemmaInapplicable { m: u64, n: u64, i: u64, j: u64 },

    #[error("cycle modulus {0} must be odd and at least 3")]
    OddModulusRequired(u64),

    #[error("word is not a hamiltonian cycle: {0}")]
    NotACycle(String),

    #[error("k = {0} is unsupported: k >= 3 required; for k = 2 and odd m some congruent targets have no hamiltonian path")]
    UnsupportedDimension(usize),

    #[error("vertex {0} is not in the arc-forcing subgroup")]
    NotInSubgroup(String),

    #[error("torus has {count} vertices, above the search cap of {cap}")]
    SizeCapExceeded { count: usize, cap: usize },

    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("internal construction failure: {0}")]
    Internal(String),
}
