use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot parse sequence {text:?}: {reason}")]
    ParseSequence { text: String, reason: String },

    #[error("symbol {symbol} exceeds alphabet max {max}")]
    SymbolOutOfRange { symbol: u32, max: u32 },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("invalid partition spec {spec:?}: {reason}")]
    PartitionFormat { spec: String, reason: String },

    #[error("protocol {protocol:?} does not support partition {partition}")]
    UnsupportedPartition { protocol: String, partition: String },

    #[error("parties disagree on the output: alice={alice} bob={bob}")]
    OutputDisagreement { alice: bool, bob: bool },

    #[error("protocol exceeded the message budget of {budget} messages")]
    RunawayProtocol { budget: usize },

    #[error("budget exceeded: {what} needs {required}, limit is {limit}")]
    BudgetExceeded {
        what: &'static str,
        required: u128,
        limit: u128,
    },

    #[error("unknown protocol {0:?} (expected \"trivial\" or \"iterative\")")]
    UnknownProtocol(String),

    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("strings must share a single length, found {0} and {1}")]
    MixedLengths(usize, usize),

    #[error("triangular claim violated at row {row}, col {col}: expected {expected}")]
    TriangularViolation {
        row: usize,
        col: usize,
        expected: u8,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
