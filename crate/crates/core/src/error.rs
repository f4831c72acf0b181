use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("index ({i},{j}) out of range for n = {n}")]
    IndexOutOfRange { n: usize, i: usize, j: usize },

    #[error("diagonal matrix unit E_({i},{i}) is not traceless")]
    DiagonalUnit { i: usize },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("element is not traceless (trace {trace})")]
    NotTraceless { trace: String },

    #[error("element is not diagonal")]
    NotDiagonal,

    #[error("root vector of length {root} is incompatible with n = {n}")]
    RootLength { root: usize, n: usize },

    #[error("tensor is not skew-symmetric")]
    NotSkew,

    #[error("n = {n} must be odd and at least 3")]
    RequiresOddN { n: usize },

    #[error("parameter `{name}` index {k} out of range 1..={max}")]
    ParameterIndex {
        name: &'static str,
        k: usize,
        max: usize,
    },

    #[error("parameter `{name}` needs {expected} values, got {got}")]
    Arity {
        name: &'static str,
        expected: usize,
        got: usize,
    },

    #[error("ratio xi_{num}/xi_{den} is undefined: xi_{den} = 0 while xi_{num} != 0")]
    UndefinedRatio { num: usize, den: usize },

    #[error("scale factor for zone {zone} is zero but its inverse is required")]
    ZeroScale { zone: String },

    #[error("tensor has a leg outside the enlarged-chain carrier: {unit}")]
    OutsideCarrier { unit: String },

    #[error("unsupported root system {series}{rank}")]
    UnsupportedRank { series: char, rank: usize },

    #[error("kind `{kind}` is defined only for n = {required}, got n = {got}")]
    FixedN {
        kind: &'static str,
        required: usize,
        got: usize,
    },

    #[error("unknown builder kind `{0}`")]
    UnknownKind(String),

    #[error("inconsistent linear system: {0}")]
    Inconsistent(String),

    #[error("tensor is not recognized as a chain-family r-matrix: {0}")]
    Unrecognized(String),

    #[error("parse error: {0}")]
    Parse(String),
}
