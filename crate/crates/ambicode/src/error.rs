use thiserror::Error;

/// Everything that can go wrong while constructing or combining the
/// values of this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("alphabet is empty")]
    EmptyAlphabet,

    #[error("duplicate label `{0}` in alphabet")]
    DuplicateLabel(String),

    #[error("{what}: entry {index} is {value}, expected a nonnegative probability")]
    NegativeEntry {
        what: &'static str,
        index: usize,
        value: f64,
    },

    #[error("{what}: entries sum to {sum}, expected 1 within {tolerance}")]
    Unnormalized {
        what: &'static str,
        sum: f64,
        tolerance: f64,
    },

    #[error("{what}: expected length {expected}, found {found}")]
    LengthMismatch {
        what: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("referent {referent} is assigned signal index {signal}, but the signal alphabet has {signal_count} entries")]
    SignalOutOfRange {
        referent: usize,
        signal: usize,
        signal_count: usize,
    },

    #[error("matrix row {row} has {found} entries, expected {expected}")]
    RaggedMatrix {
        row: usize,
        expected: usize,
        found: usize,
    },

    #[error("channel row {row} sums to {sum}, expected 1 within {tolerance}")]
    RowNotStochastic {
        row: usize,
        sum: f64,
        tolerance: f64,
    },

    #[error("label `{0}` appears in more than one alphabet of the machine")]
    LabelClash(String),

    #[error("unknown {what} `{label}`")]
    UnknownLabel { what: &'static str, label: String },

    #[error("no transition defined for state `{state}` reading `{referent}`")]
    MissingTransition { state: String, referent: String },

    #[error("duplicate transition for state `{state}` reading `{referent}`")]
    DuplicateTransition { state: String, referent: String },

    #[error("projection undefined: referent `{0}` is written as different signals in different states")]
    ProjectionUndefined(String),

    #[error("exhaustive search over {candidates} candidates exceeds the guard of {limit}; use annealing instead")]
    SearchSpaceExceeded { candidates: u128, limit: u64 },

    #[error("conditional entropy {h_cond} bits exceeds log2(n) = {max} bits; no distribution over n outcomes attains it")]
    InfeasibleConditionalEntropy { h_cond: f64, max: f64 },

    #[error("{what} is {value}, outside its valid range")]
    InvalidParameter { what: &'static str, value: f64 },

    #[error("decode rule has no entry for used signal `{0}`")]
    MissingDecodeEntry(String),

    #[error("config selects method `{found}`, but this operation requires `{expected}`")]
    MethodMismatch {
        expected: &'static str,
        found: &'static str,
    },
}
