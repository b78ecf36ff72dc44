//! Construction and search of deterministic codes: the two effort
//! extremes, exact balanced partitions, exhaustive enumeration at small
//! scale, and simulated annealing beyond it.
//!
//! The search objective is the magnitude of the symmetry residual
//! `|H(signals) - H(referents | signals)|` in bits, so a residual of zero
//! is a code on which coder and decoder efforts balance exactly.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::code::{Alphabet, DeterministicCode, Prior};
use crate::error::Error;
use crate::info::{residual_from_parts, SYMMETRY_TOLERANCE};
use crate::Result;

/// Exhaustive enumeration refuses spaces larger than this many codes.
pub const EXHAUSTIVE_GUARD: u64 = 100_000_000;

/// The two poles of the coder/decoder effort conflict.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtremeKind {
    /// One signal per referent: reversible, maximal coder effort.
    OneToOne,
    /// A single signal for everything: maximal ambiguity, no coder effort.
    AllToOne,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchMethod {
    Exhaustive,
    Anneal,
}

impl SearchMethod {
    pub fn name(&self) -> &'static str {
        match self {
            SearchMethod::Exhaustive => "exhaustive",
            SearchMethod::Anneal => "anneal",
        }
    }
}

impl std::fmt::Display for SearchMethod {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Search parameters. `prior: None` means uniform over the referents.
#[derive(Debug, Clone, PartialEq)]
pub struct SynthesisConfig {
    pub n: usize,
    pub m: usize,
    pub prior: Option<Prior>,
    pub method: SearchMethod,
    /// Residual magnitude accepted as satisfying the symmetry equation.
    pub tolerance: f64,
    pub seed: u64,
    pub anneal_steps: u64,
    pub initial_temperature: f64,
    pub cooling_rate: f64,
}

impl SynthesisConfig {
    pub fn exhaustive(n: usize, m: usize) -> Self {
        Self {
            n,
            m,
            prior: None,
            method: SearchMethod::Exhaustive,
            tolerance: SYMMETRY_TOLERANCE,
            seed: 0,
            anneal_steps: 100_000,
            initial_temperature: 1.0,
            cooling_rate: 0.999,
        }
    }

    pub fn anneal(n: usize, m: usize, seed: u64) -> Self {
        Self {
            method: SearchMethod::Anneal,
            seed,
            ..Self::exhaustive(n, m)
        }
    }

    fn validate(&self) -> Result<()> {
        if self.n < 1 {
            return Err(Error::InvalidParameter {
                what: "referent count",
                value: self.n as f64,
            });
        }
        if self.m < 1 {
            return Err(Error::InvalidParameter {
                what: "signal count",
                value: self.m as f64,
            });
        }
        if !(self.tolerance >= 0.0) {
            return Err(Error::InvalidParameter {
                what: "tolerance",
                value: self.tolerance,
            });
        }
        if !(self.cooling_rate > 0.0 && self.cooling_rate < 1.0) {
            return Err(Error::InvalidParameter {
                what: "cooling rate",
                value: self.cooling_rate,
            });
        }
        if !(self.initial_temperature > 0.0) {
            return Err(Error::InvalidParameter {
                what: "initial temperature",
                value: self.initial_temperature,
            });
        }
        if let Some(prior) = &self.prior {
            if prior.len() != self.n {
                return Err(Error::LengthMismatch {
                    what: "prior",
                    expected: self.n,
                    found: prior.len(),
                });
            }
        }
        Ok(())
    }

    /// The prior actually searched under: the configured one or uniform.
    pub fn resolved_prior(&self) -> Result<Prior> {
        match &self.prior {
            Some(prior) => Ok(prior.clone()),
            None => Prior::uniform(self.n),
        }
    }
}

/// Codes found by a search, ordered by residual magnitude (ties in
/// lexicographic assignment order). `residuals[i]` is the absolute
/// residual of `codes[i]`; `explored` counts candidates examined.
#[derive(Debug, Clone, PartialEq)]
pub struct SynthesisResult {
    pub codes: Vec<DeterministicCode>,
    pub residuals: Vec<f64>,
    pub explored: u64,
    pub method: SearchMethod,
}

/// The one-to-one or all-to-one code on `n` referents.
pub fn extreme_code(kind: ExtremeKind, n: usize) -> Result<DeterministicCode> {
    let referents = Alphabet::numbered_referents(n)?;
    match kind {
        ExtremeKind::OneToOne => {
            DeterministicCode::new(referents, Alphabet::numbered_signals(n)?, (0..n).collect())
        }
        ExtremeKind::AllToOne => {
            DeterministicCode::new(referents, Alphabet::numbered_signals(1)?, vec![0; n])
        }
    }
}

/// For `n = c*c` referents, the code with `c` signals covering `c`
/// consecutive referents each. Under a uniform prior its residual is zero,
/// the signal entropy is half the referent entropy, and the best decoder
/// still errs with probability `1 - 1/c`.
pub fn balanced_partition_code(n: usize) -> Result<DeterministicCode> {
    let c = (n as f64).sqrt().round() as usize;
    if n == 0 || c * c != n {
        return Err(Error::InvalidParameter {
            what: "balanced partition size (must be a perfect square)",
            value: n as f64,
        });
    }
    DeterministicCode::new(
        Alphabet::numbered_referents(n)?,
        Alphabet::numbered_signals(c)?,
        (0..n).map(|i| i / c).collect(),
    )
}

/// Dispatches to [`enumerate_codes`] or [`anneal_code`] per the config.
pub fn synthesize(config: &SynthesisConfig) -> Result<SynthesisResult> {
    match config.method {
        SearchMethod::Exhaustive => enumerate_codes(config),
        SearchMethod::Anneal => anneal_code(config),
    }
}

struct ResidualEvaluator<'a> {
    prior: &'a [f64],
    q: Vec<f64>,
}

impl<'a> ResidualEvaluator<'a> {
    fn new(prior: &'a [f64], m: usize) -> Self {
        Self {
            prior,
            q: vec![0.0; m],
        }
    }

    fn abs_residual(&mut self, assignment: &[usize]) -> f64 {
        self.q.fill(0.0);
        for (referent, &signal) in assignment.iter().enumerate() {
            self.q[signal] += self.prior[referent];
        }
        residual_from_parts(assignment, self.prior, &self.q).abs()
    }
}

/// Examines every assignment of `n` referents to `m` signals, in
/// lexicographic order, and returns all codes whose residual magnitude is
/// within tolerance — or, when none qualify, every code attaining the
/// global minimum.
pub fn enumerate_codes(config: &SynthesisConfig) -> Result<SynthesisResult> {
    require_method(config, SearchMethod::Exhaustive)?;
    config.validate()?;
    let candidates = (config.m as u128)
        .checked_pow(config.n as u32)
        .unwrap_or(u128::MAX);
    if candidates > EXHAUSTIVE_GUARD as u128 {
        return Err(Error::SearchSpaceExceeded {
            candidates,
            limit: EXHAUSTIVE_GUARD,
        });
    }
    let prior = config.resolved_prior()?;
    let referents = Alphabet::numbered_referents(config.n)?;
    let signals = Alphabet::numbered_signals(config.m)?;
    let mut evaluator = ResidualEvaluator::new(prior.as_slice(), config.m);

    let mut within: Vec<(Vec<usize>, f64)> = Vec::new();
    let mut minimum = f64::INFINITY;
    let mut argmin: Vec<(Vec<usize>, f64)> = Vec::new();

    let mut assignment = vec![0usize; config.n];
    loop {
        let residual = evaluator.abs_residual(&assignment);
        if residual <= config.tolerance {
            within.push((assignment.clone(), residual));
        }
        if residual < minimum {
            minimum = residual;
            argmin.clear();
            argmin.push((assignment.clone(), residual));
        } else if residual == minimum {
            argmin.push((assignment.clone(), residual));
        }
        if !increment(&mut assignment, config.m) {
            break;
        }
    }

    let mut found = if within.is_empty() { argmin } else { within };
    // Stable by construction: generation order is lexicographic, so ties
    // stay in lexicographic order after the sort.
    found.sort_by(|a, b| a.1.partial_cmp(&b.1).expect("residuals are finite"));

    let mut codes = Vec::with_capacity(found.len());
    let mut residuals = Vec::with_capacity(found.len());
    for (assignment, residual) in found {
        codes.push(DeterministicCode::new(
            referents.clone(),
            signals.clone(),
            assignment,
        )?);
        residuals.push(residual);
    }
    Ok(SynthesisResult {
        codes,
        residuals,
        explored: candidates as u64,
        method: SearchMethod::Exhaustive,
    })
}

fn increment(assignment: &mut [usize], m: usize) -> bool {
    for digit in assignment.iter_mut().rev() {
        if *digit + 1 < m {
            *digit += 1;
            return true;
        }
        *digit = 0;
    }
    false
}

/// Simulated annealing over assignment vectors: each move reassigns one
/// uniformly chosen referent to a uniformly chosen signal, accepted by the
/// Metropolis rule under a geometric cooling schedule. Fully determined by
/// the seed. Returns the best code seen.
pub fn anneal_code(config: &SynthesisConfig) -> Result<SynthesisResult> {
    require_method(config, SearchMethod::Anneal)?;
    config.validate()?;
    if config.anneal_steps < 1 {
        return Err(Error::InvalidParameter {
            what: "anneal steps",
            value: config.anneal_steps as f64,
        });
    }
    let prior = config.resolved_prior()?;
    let mut evaluator = ResidualEvaluator::new(prior.as_slice(), config.m);
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);

    let mut current: Vec<usize> = (0..config.n).map(|_| rng.gen_range(0..config.m)).collect();
    let mut current_cost = evaluator.abs_residual(&current);
    let mut best = current.clone();
    let mut best_cost = current_cost;
    let mut temperature = config.initial_temperature;

    for _ in 0..config.anneal_steps {
        let referent = rng.gen_range(0..config.n);
        let signal = rng.gen_range(0..config.m);
        let previous = current[referent];
        current[referent] = signal;
        let candidate_cost = evaluator.abs_residual(&current);
        let delta = candidate_cost - current_cost;
        let accept =
            delta <= 0.0 || rng.gen::<f64>() < (-delta / temperature.max(f64::MIN_POSITIVE)).exp();
        if accept {
            current_cost = candidate_cost;
            if candidate_cost < best_cost {
                best_cost = candidate_cost;
                best.copy_from_slice(&current);
            }
        } else {
            current[referent] = previous;
        }
        temperature *= config.cooling_rate;
    }

    let code = DeterministicCode::new(
        Alphabet::numbered_referents(config.n)?,
        Alphabet::numbered_signals(config.m)?,
        best,
    )?;
    Ok(SynthesisResult {
        codes: vec![code],
        residuals: vec![best_cost],
        explored: config.anneal_steps + 1,
        method: SearchMethod::Anneal,
    })
}

fn require_method(config: &SynthesisConfig, expected: SearchMethod) -> Result<()> {
    if config.method != expected {
        return Err(Error::MethodMismatch {
            expected: expected.name(),
            found: config.method.name(),
        });
    }
    Ok(())
}
