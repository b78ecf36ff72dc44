//! Deterministic communication codes treated as computations, and the
//! entropy cost of undoing them.
//!
//! A code maps referents to signals. When that map loses information, the
//! decoder cannot recover the referent with certainty: the code is
//! ambiguous, and the reversal uncertainty `H(referents | signals)`
//! measures exactly how ambiguous. This crate models such codes and the
//! state-bearing machines that compute them, quantifies their ambiguity,
//! synthesizes codes on which coder and decoder efforts balance, and
//! checks the consequences of that balance: half of the information is
//! dissipated, the best decoder's error is floored by the Fano bound, and
//! every erased bit costs `k_B T ln 2` joules of heat.
//!
//! The [`guide`] module carries the narrative documentation; its chapters
//! are the mdbook sources under `book/`, included here so every snippet
//! in the book runs under `cargo test --doc`.

pub mod code;
pub mod error;
pub mod guide;
pub mod info;
pub mod machine;
pub mod simulate;
pub mod synthesis;

pub use code::{
    Alphabet, DeterministicCode, JointDistribution, Posterior, Prior, StochasticChannel,
};
pub use error::Error;
pub use info::{AmbiguityClass, InfoReport, LandauerReport};
pub use machine::{CodingMachine, RunTrace};
pub use simulate::{DecodeRule, FanoCheck, TransmissionReport};
pub use synthesis::{SearchMethod, SynthesisConfig, SynthesisResult};

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Probability tolerance for validating constructor inputs.
pub const VALIDATION_TOLERANCE: f64 = 1e-12;

/// Probability tolerance for derived quantities, which accumulate a little
/// more rounding than raw inputs.
pub const DERIVED_TOLERANCE: f64 = 1e-10;
