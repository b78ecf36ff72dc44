//! The decoder's side of the exchange: maximum-a-posteriori decoding,
//! exact and Monte Carlo error probabilities, and the Fano floor check.
//!
//! Randomness is ChaCha8 (a portable, counter-based generator). Trial `t`
//! of a simulation draws from stream `t` of a cipher keyed by the report
//! seed, so results are byte-identical however trials are scheduled. The
//! generator choice is part of the report contract; changing it is a
//! breaking change.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::code::{DeterministicCode, JointDistribution, Prior, StochasticChannel};
use crate::error::Error;
use crate::info::{
    binary_entropy, conditional_entropy, fano_lower_bound, shannon, symmetry_residual,
    SYMMETRY_TOLERANCE,
};
use crate::Result;

/// A decoding rule: one referent per used signal. Signals the code never
/// emits carry no entry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecodeRule {
    entries: Vec<Option<usize>>,
}

impl DecodeRule {
    /// Wraps per-signal referent choices; `None` marks unused signals.
    pub fn new(entries: Vec<Option<usize>>) -> Self {
        Self { entries }
    }

    /// The referent decoded for a signal, if the rule covers it.
    pub fn decode(&self, signal: usize) -> Option<usize> {
        self.entries.get(signal).copied().flatten()
    }

    pub fn signal_count(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Option<usize>] {
        &self.entries
    }
}

/// Outcome of a transmission experiment. The exact fields refer to the
/// joint distribution actually simulated (composed with the channel when
/// one is present) and to the best possible decoder for it; the empirical
/// error measures whatever rule was supplied.
#[derive(Debug, Clone, PartialEq)]
pub struct TransmissionReport {
    pub trials: u64,
    pub errors: u64,
    pub empirical_error: f64,
    pub exact_map_error: f64,
    pub fano_bound: f64,
    pub conditional_entropy: f64,
    pub seed: u64,
}

/// Both sides of the Fano inequality for a code, plus — when the code
/// satisfies the symmetry equation — the same floor rewritten through the
/// signal entropy.
#[derive(Debug, Clone, PartialEq)]
pub struct FanoCheck {
    pub conditional_entropy: f64,
    pub fano_bound: f64,
    pub exact_map_error: f64,
    /// `(H(signals) - h(p_e)) / log2(n - 1)` at the exact error, present
    /// only for symmetric codes with at least three referents.
    pub symmetry_fano_bound: Option<f64>,
}

/// The maximum-a-posteriori rule: each used signal decodes to the referent
/// of largest joint mass, ties broken toward the lowest referent index.
pub fn map_decoder(code: &DeterministicCode, prior: &Prior) -> Result<DecodeRule> {
    let q = code.induced_signal_distribution(prior)?;
    let mut entries = vec![None; code.signal_count()];
    for (signal, &mass) in q.iter().enumerate() {
        if mass > 0.0 {
            let mut best: Option<(usize, f64)> = None;
            for (referent, &assigned) in code.assignment().iter().enumerate() {
                if assigned == signal {
                    let p = prior.get(referent);
                    if best.map_or(true, |(_, b)| p > b) {
                        best = Some((referent, p));
                    }
                }
            }
            entries[signal] = best.map(|(referent, _)| referent);
        }
    }
    Ok(DecodeRule::new(entries))
}

/// MAP rule for an arbitrary joint table (used for channel-composed
/// distributions): column argmax, lowest row index on ties.
pub fn map_decoder_for_joint(joint: &JointDistribution) -> DecodeRule {
    let entries = (0..joint.col_count())
        .map(|col| {
            let mut best: Option<(usize, f64)> = None;
            for row in 0..joint.row_count() {
                let p = joint.mass(row, col);
                if p > 0.0 && best.map_or(true, |(_, b)| p > b) {
                    best = Some((row, p));
                }
            }
            best.map(|(row, _)| row)
        })
        .collect();
    DecodeRule::new(entries)
}

/// Exact error probability of a rule under the code's noiseless joint.
pub fn exact_error(code: &DeterministicCode, prior: &Prior, rule: &DecodeRule) -> Result<f64> {
    let q = code.induced_signal_distribution(prior)?;
    let mut correct = 0.0;
    for (signal, &mass) in q.iter().enumerate() {
        if mass > 0.0 {
            let referent = rule
                .decode(signal)
                .ok_or_else(|| Error::MissingDecodeEntry(code.signals().label(signal).into()))?;
            if referent < code.referent_count() && code.signal_of(referent) == signal {
                correct += prior.get(referent);
            }
        }
    }
    Ok(1.0 - correct)
}

/// Exact error probability of a rule under an arbitrary joint table.
pub fn exact_error_for_joint(joint: &JointDistribution, rule: &DecodeRule) -> Result<f64> {
    let q = joint.col_marginal();
    let mut correct = 0.0;
    for (col, &mass) in q.iter().enumerate() {
        if mass > 0.0 {
            let row = rule
                .decode(col)
                .ok_or_else(|| Error::MissingDecodeEntry(joint.col_labels().label(col).into()))?;
            if row < joint.row_count() {
                correct += joint.mass(row, col);
            }
        }
    }
    Ok(1.0 - correct)
}

/// Samples referents from the prior, encodes, optionally routes the signal
/// through a channel, decodes with `rule`, and counts mismatches.
///
/// A realized signal the rule does not cover counts as a decoding error
/// rather than aborting the run; this happens only when noise pushes mass
/// onto signals the noiseless rule never sees.
pub fn monte_carlo_error(
    code: &DeterministicCode,
    prior: &Prior,
    rule: &DecodeRule,
    trials: u64,
    seed: u64,
    channel: Option<&StochasticChannel>,
) -> Result<TransmissionReport> {
    if trials < 1 {
        return Err(Error::InvalidParameter {
            what: "trials",
            value: trials as f64,
        });
    }
    let joint = match channel {
        Some(channel) => code.compose_with_channel(prior, channel)?,
        None => code.joint_distribution(prior)?,
    };
    let map_rule = map_decoder_for_joint(&joint);
    let exact_map_error = exact_error_for_joint(&joint, &map_rule)?;
    let h_cond = conditional_entropy(&joint);
    let fano_bound = if code.referent_count() < 2 {
        0.0
    } else {
        fano_lower_bound(h_cond, code.referent_count())?
    };

    let mut errors = 0u64;
    for trial in 0..trials {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(trial);
        let referent = sample_index(prior.as_slice(), rng.gen::<f64>());
        let signal = code.signal_of(referent);
        let observed = match channel {
            Some(channel) => sample_index(channel.row(signal), rng.gen::<f64>()),
            None => signal,
        };
        if rule.decode(observed) != Some(referent) {
            errors += 1;
        }
    }

    debug_assert!(exact_map_error >= fano_bound - 1e-9);
    Ok(TransmissionReport {
        trials,
        errors,
        empirical_error: errors as f64 / trials as f64,
        exact_map_error,
        fano_bound,
        conditional_entropy: h_cond,
        seed,
    })
}

/// Inverse-CDF draw; entries with zero mass are never selected.
fn sample_index(weights: &[f64], u: f64) -> usize {
    let mut cumulative = 0.0;
    let mut last_positive = 0;
    for (index, &weight) in weights.iter().enumerate() {
        if weight > 0.0 {
            last_positive = index;
            cumulative += weight;
            if u < cumulative {
                return index;
            }
        }
    }
    last_positive
}

/// Computes the exact MAP error and the Fano floor for a code, and — for
/// codes on which the symmetry equation holds — the floor rewritten
/// through the signal entropy, which can never exceed the exact error.
pub fn fano_check(code: &DeterministicCode, prior: &Prior) -> Result<FanoCheck> {
    let n = code.referent_count();
    let q = code.induced_signal_distribution(prior)?;
    let h_s = shannon(&q);
    let residual = symmetry_residual(code, prior)?;
    let h_cond = h_s - residual;
    let fano_bound = if n < 2 {
        0.0
    } else {
        fano_lower_bound(h_cond, n)?
    };
    let rule = map_decoder(code, prior)?;
    let exact_map_error = exact_error(code, prior, &rule)?;
    debug_assert!(exact_map_error >= fano_bound - 1e-9);
    let symmetry_fano_bound = if residual.abs() <= SYMMETRY_TOLERANCE && n >= 3 {
        Some((h_s - binary_entropy(exact_map_error)?) / ((n - 1) as f64).log2())
    } else {
        None
    };
    Ok(FanoCheck {
        conditional_entropy: h_cond,
        fano_bound,
        exact_map_error,
        symmetry_fano_bound,
    })
}
