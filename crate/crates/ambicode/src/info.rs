//! Entropies, mutual information, the coder/decoder symmetry residual,
//! the Fano error floor, and entropy-to-heat accounting.
//!
//! Logarithms are base 2 throughout, with `0 * log 0 = 0` by continuity.
//! Sums are accumulated in input-index order with Neumaier compensation,
//! so results are reproducible across platforms at the stated tolerances.

use crate::code::{validate_distribution, DeterministicCode, JointDistribution, Prior};
use crate::error::Error;
use crate::{Result, VALIDATION_TOLERANCE};

/// Boltzmann constant in J/K.
pub const BOLTZMANN: f64 = 1.38e-23;

/// Conditional entropy at or below this many bits counts as zero: the code
/// is reversible and its signals are unambiguous.
pub const AMBIGUITY_THRESHOLD: f64 = 1e-12;

/// Residual magnitude at or below this many bits counts as satisfying the
/// coder/decoder symmetry equation `H(signals) = H(referents | signals)`.
pub const SYMMETRY_TOLERANCE: f64 = 1e-9;

/// Whether reversing a code's output is certain or not.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AmbiguityClass {
    /// Every signal determines its referent: zero reversal uncertainty.
    Unambiguous,
    /// At least one signal admits several referents.
    Ambiguous,
}

impl std::fmt::Display for AmbiguityClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            AmbiguityClass::Unambiguous => write!(f, "unambiguous"),
            AmbiguityClass::Ambiguous => write!(f, "ambiguous"),
        }
    }
}

/// Every entropy of a referent/signal joint distribution, bundled.
///
/// `h_omega_given_s` is the ambiguity of the code: the uncertainty left
/// about the referent once the signal is known.
#[derive(Debug, Clone, PartialEq)]
pub struct InfoReport {
    /// Entropy of the referent marginal, in bits.
    pub h_omega: f64,
    /// Entropy of the signal marginal, in bits.
    pub h_s: f64,
    /// Joint entropy, in bits.
    pub h_joint: f64,
    /// Reversal uncertainty H(referent | signal) — the ambiguity, in bits.
    pub h_omega_given_s: f64,
    /// H(signal | referent); zero for deterministic codes.
    pub h_s_given_omega: f64,
    /// Shared information between referents and signals, in bits.
    pub mutual_information: f64,
    /// H(signals) − H(referents | signals): zero when coder and decoder
    /// efforts balance, positive toward the one-to-one extreme, negative
    /// toward the all-to-one extreme.
    pub symmetry_residual: f64,
    /// True iff the reversal uncertainty is zero.
    pub reversible: bool,
    pub ambiguity_class: AmbiguityClass,
}

/// Thermodynamic cost of the bits a code erases, per Landauer's bound.
#[derive(Debug, Clone, PartialEq)]
pub struct LandauerReport {
    /// Bits dissipated per computation: H(referent | signal).
    pub erased_bits: f64,
    /// Minimum physical entropy generated, in J/K.
    pub entropy_generation: f64,
    /// Minimum heat dissipated at `temperature`, in J.
    pub heat_at_temperature: f64,
    /// Temperature the heat figure was evaluated at, in K.
    pub temperature: f64,
    /// The constant used for the conversion, in J/K.
    pub boltzmann_constant: f64,
}

/// Neumaier-compensated sum, accumulated in input order.
fn compensated_sum(values: impl Iterator<Item = f64>) -> f64 {
    let mut sum = 0.0;
    let mut compensation = 0.0;
    for value in values {
        let t = sum + value;
        if sum.abs() >= value.abs() {
            compensation += (sum - t) + value;
        } else {
            compensation += (value - t) + sum;
        }
        sum = t;
    }
    sum + compensation
}

fn plogp(p: f64) -> f64 {
    if p > 0.0 {
        p * p.log2()
    } else {
        0.0
    }
}

/// Shannon entropy of an already-validated distribution.
pub(crate) fn shannon(dist: &[f64]) -> f64 {
    -compensated_sum(dist.iter().map(|&p| plogp(p)))
}

/// Shannon entropy in bits of a probability vector.
///
/// Rejects vectors with negative entries or total mass away from 1.
pub fn entropy(dist: &[f64]) -> Result<f64> {
    validate_distribution(dist, "distribution", VALIDATION_TOLERANCE)?;
    Ok(shannon(dist))
}

/// The entropy of a two-outcome distribution `(p, 1 - p)`.
pub fn binary_entropy(p: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParameter {
            what: "binary entropy argument",
            value: p,
        });
    }
    Ok(-(plogp(p) + plogp(1.0 - p)))
}

/// Joint entropy of the full table, in bits.
pub fn joint_entropy(joint: &JointDistribution) -> f64 {
    -compensated_sum(
        joint
            .table()
            .iter()
            .flat_map(|row| row.iter().map(|&p| plogp(p))),
    )
}

/// Conditional entropy H(row | column) in bits: the expected uncertainty
/// about the referent after observing the signal. Zero-mass columns are
/// skipped.
pub fn conditional_entropy(joint: &JointDistribution) -> f64 {
    let col = joint.col_marginal();
    let terms = (0..joint.col_count()).flat_map(|k| {
        let q = col[k];
        (0..joint.row_count()).map(move |i| (i, k, q))
    });
    compensated_sum(terms.map(|(i, k, q)| {
        let p = joint.mass(i, k);
        if q > 0.0 && p > 0.0 {
            p * (q.log2() - p.log2())
        } else {
            0.0
        }
    }))
}

/// Mutual information in bits: H(rows) − H(rows | columns).
pub fn mutual_information(joint: &JointDistribution) -> f64 {
    shannon(&joint.row_marginal()) - conditional_entropy(joint)
}

/// H(signals) − H(referents | signals) for a deterministic code, in bits.
///
/// Zero means the symmetry equation holds: the coder emits exactly as many
/// bits as the decoder still lacks. The one-to-one extreme scores
/// +H(referents), the all-to-one extreme −H(referents).
pub fn symmetry_residual(code: &DeterministicCode, prior: &Prior) -> Result<f64> {
    let q = code.induced_signal_distribution(prior)?;
    Ok(residual_from_parts(
        code.assignment(),
        prior.as_slice(),
        &q,
    ))
}

/// Residual from raw parts; `q` must be the induced signal distribution.
/// Shared with the synthesis search loop, which recomputes `q` in place.
pub(crate) fn residual_from_parts(assignment: &[usize], prior: &[f64], q: &[f64]) -> f64 {
    let h_s = shannon(q);
    let h_cond = compensated_sum(assignment.iter().zip(prior).map(|(&signal, &p)| {
        if p > 0.0 {
            p * (q[signal].log2() - p.log2())
        } else {
            0.0
        }
    }));
    h_s - h_cond
}

/// Smallest error probability compatible with `h_cond` bits of reversal
/// uncertainty over `n` referents: the Fano floor.
///
/// Solves `h(p) + p * log2(n - 1) >= h_cond` for the smallest
/// `p in [0, 1 - 1/n]` by bisection to an absolute tolerance of 1e-12.
/// The left side is monotone increasing on that interval and tops out at
/// `log2 n`, so anything above `log2 n` is infeasible.
pub fn fano_lower_bound(h_cond: f64, n: usize) -> Result<f64> {
    if n < 2 {
        return Err(Error::InvalidParameter {
            what: "referent count for the Fano bound",
            value: n as f64,
        });
    }
    if h_cond < -1e-9 {
        return Err(Error::InvalidParameter {
            what: "conditional entropy",
            value: h_cond,
        });
    }
    let h_cond = h_cond.max(0.0);
    let max = (n as f64).log2();
    if h_cond > max + 1e-9 {
        return Err(Error::InfeasibleConditionalEntropy { h_cond, max });
    }
    if h_cond == 0.0 {
        return Ok(0.0);
    }
    let penalty = ((n - 1) as f64).log2();
    let g = |p: f64| -> f64 { -(plogp(p) + plogp(1.0 - p)) + p * penalty };
    let p_max = 1.0 - 1.0 / n as f64;
    // Blind guessing saturates the bound; give it the closed form rather
    // than asking the bisection to resolve a double root at the endpoint.
    if h_cond >= g(p_max) {
        return Ok(p_max);
    }
    let (mut lo, mut hi) = (0.0, p_max);
    while hi - lo > 0.5e-12 {
        let mid = 0.5 * (lo + hi);
        if g(mid) >= h_cond {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

/// Entropy generation and heat for erasing `h_cond` bits at `temperature`.
pub fn landauer(h_cond: f64, temperature: f64) -> Result<LandauerReport> {
    if !(temperature > 0.0) {
        return Err(Error::InvalidParameter {
            what: "temperature",
            value: temperature,
        });
    }
    if h_cond < -1e-9 {
        return Err(Error::InvalidParameter {
            what: "erased bits",
            value: h_cond,
        });
    }
    let erased_bits = h_cond.max(0.0);
    let entropy_generation = BOLTZMANN * std::f64::consts::LN_2 * erased_bits;
    Ok(LandauerReport {
        erased_bits,
        entropy_generation,
        heat_at_temperature: entropy_generation * temperature,
        temperature,
        boltzmann_constant: BOLTZMANN,
    })
}

/// Computes every field of an [`InfoReport`] from one joint table.
pub fn info_report(joint: &JointDistribution) -> InfoReport {
    let h_omega = shannon(&joint.row_marginal());
    let h_s = shannon(&joint.col_marginal());
    let h_joint = joint_entropy(joint);
    let h_omega_given_s = conditional_entropy(joint);
    let h_s_given_omega = conditional_entropy(&joint.transpose());
    let reversible = h_omega_given_s <= AMBIGUITY_THRESHOLD;
    InfoReport {
        h_omega,
        h_s,
        h_joint,
        h_omega_given_s,
        h_s_given_omega,
        mutual_information: h_omega - h_omega_given_s,
        symmetry_residual: h_s - h_omega_given_s,
        reversible,
        ambiguity_class: if reversible {
            AmbiguityClass::Unambiguous
        } else {
            AmbiguityClass::Ambiguous
        },
    }
}
