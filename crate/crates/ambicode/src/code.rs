//! Referent and signal alphabets, priors, deterministic codes, stochastic
//! channels, and the joint distributions every other module consumes.
//!
//! A [`DeterministicCode`] stores the coder's transition matrix as one
//! signal index per referent. In matrix form each row has exactly one 1,
//! and because that is the representation itself, an invalid matrix cannot
//! be constructed; deserializers only have to check index bounds.
//!
//! All values are immutable after construction and all operations are pure,
//! so everything here is safe to share across threads.

use std::collections::HashSet;

use crate::error::Error;
use crate::{Result, DERIVED_TOLERANCE, VALIDATION_TOLERANCE};

/// An ordered set of distinct text labels: the referent set handled by the
/// coder, or the signal set it emits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    labels: Vec<String>,
}

impl Alphabet {
    /// Builds an alphabet from labels, rejecting empty or duplicated input.
    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(Error::EmptyAlphabet);
        }
        let mut seen = HashSet::new();
        for label in &labels {
            if !seen.insert(label.as_str()) {
                return Err(Error::DuplicateLabel(label.clone()));
            }
        }
        Ok(Self { labels })
    }

    /// Numbered labels `m1..mN` for synthesized referent sets.
    pub fn numbered_referents(n: usize) -> Result<Self> {
        Self::new((1..=n).map(|i| format!("m{i}")))
    }

    /// Numbered labels `s1..sM` for synthesized signal sets.
    pub fn numbered_signals(m: usize) -> Result<Self> {
        Self::new((1..=m).map(|i| format!("s{i}")))
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, index: usize) -> &str {
        &self.labels[index]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Index of a label, if present.
    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn contains(&self, label: &str) -> bool {
        self.index_of(label).is_some()
    }
}

/// Probability distribution over a referent alphabet: the fluctuating
/// environment the coder reads from.
#[derive(Debug, Clone, PartialEq)]
pub struct Prior {
    probabilities: Vec<f64>,
}

impl Prior {
    /// Validates entries (nonnegative, summing to 1 within
    /// [`VALIDATION_TOLERANCE`]) and wraps them.
    pub fn new(probabilities: Vec<f64>) -> Result<Self> {
        validate_distribution(&probabilities, "prior", VALIDATION_TOLERANCE)?;
        Ok(Self { probabilities })
    }

    /// The uniform distribution over `n` referents.
    pub fn uniform(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyAlphabet);
        }
        Ok(Self {
            probabilities: vec![1.0 / n as f64; n],
        })
    }

    pub fn len(&self) -> usize {
        self.probabilities.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probabilities.is_empty()
    }

    pub fn get(&self, index: usize) -> f64 {
        self.probabilities[index]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.probabilities
    }

    /// True when every referent has strictly positive mass.
    pub fn is_full_support(&self) -> bool {
        self.probabilities.iter().all(|&p| p > 0.0)
    }
}

pub(crate) fn validate_distribution(
    values: &[f64],
    what: &'static str,
    tolerance: f64,
) -> Result<()> {
    if values.is_empty() {
        return Err(Error::LengthMismatch {
            what,
            expected: 1,
            found: 0,
        });
    }
    for (index, &value) in values.iter().enumerate() {
        if !(value >= 0.0) {
            return Err(Error::NegativeEntry { what, index, value });
        }
    }
    let sum: f64 = values.iter().sum();
    if (sum - 1.0).abs() > tolerance {
        return Err(Error::Unnormalized {
            what,
            sum,
            tolerance,
        });
    }
    Ok(())
}

/// A total deterministic map from referents to signals: the stateless
/// coder. `assignment[i]` is the signal index emitted for referent `i`.
#[derive(Debug, Clone, PartialEq)]
pub struct DeterministicCode {
    referents: Alphabet,
    signals: Alphabet,
    assignment: Vec<usize>,
}

impl DeterministicCode {
    pub fn new(referents: Alphabet, signals: Alphabet, assignment: Vec<usize>) -> Result<Self> {
        if assignment.len() != referents.len() {
            return Err(Error::LengthMismatch {
                what: "assignment",
                expected: referents.len(),
                found: assignment.len(),
            });
        }
        for (referent, &signal) in assignment.iter().enumerate() {
            if signal >= signals.len() {
                return Err(Error::SignalOutOfRange {
                    referent,
                    signal,
                    signal_count: signals.len(),
                });
            }
        }
        Ok(Self {
            referents,
            signals,
            assignment,
        })
    }

    pub fn referents(&self) -> &Alphabet {
        &self.referents
    }

    pub fn signals(&self) -> &Alphabet {
        &self.signals
    }

    pub fn referent_count(&self) -> usize {
        self.referents.len()
    }

    pub fn signal_count(&self) -> usize {
        self.signals.len()
    }

    /// The signal index emitted for each referent index, in referent order.
    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    /// Signal index emitted for referent `i`.
    pub fn signal_of(&self, referent: usize) -> usize {
        self.assignment[referent]
    }

    fn check_alignment(&self, prior: &Prior) -> Result<()> {
        if prior.len() != self.referent_count() {
            return Err(Error::LengthMismatch {
                what: "prior",
                expected: self.referent_count(),
                found: prior.len(),
            });
        }
        Ok(())
    }

    /// Distribution induced on the signal alphabet: `q(s) = sum of p(m)`
    /// over the referents mapped to `s`. Unused signals get probability 0.
    pub fn induced_signal_distribution(&self, prior: &Prior) -> Result<Vec<f64>> {
        self.check_alignment(prior)?;
        let mut q = vec![0.0; self.signal_count()];
        for (referent, &signal) in self.assignment.iter().enumerate() {
            q[signal] += prior.get(referent);
        }
        Ok(q)
    }

    /// The joint table `P(m, s) = p(m)` on the cell `(m, code(m))` and 0
    /// elsewhere: exactly one nonzero entry per supported row.
    pub fn joint_distribution(&self, prior: &Prior) -> Result<JointDistribution> {
        self.check_alignment(prior)?;
        let mut table = vec![vec![0.0; self.signal_count()]; self.referent_count()];
        for (referent, &signal) in self.assignment.iter().enumerate() {
            table[referent][signal] = prior.get(referent);
        }
        JointDistribution::new(table, self.referents.clone(), self.signals.clone())
    }

    /// Posterior over referents for each signal. Columns of unused signals
    /// (`q(s) = 0`) are reported as undefined rather than silently zeroed.
    pub fn posterior(&self, prior: &Prior) -> Result<Posterior> {
        let q = self.induced_signal_distribution(prior)?;
        let columns = q
            .iter()
            .enumerate()
            .map(|(signal, &mass)| {
                if mass > 0.0 {
                    let mut column = vec![0.0; self.referent_count()];
                    for (referent, &assigned) in self.assignment.iter().enumerate() {
                        if assigned == signal {
                            column[referent] = prior.get(referent) / mass;
                        }
                    }
                    Some(column)
                } else {
                    None
                }
            })
            .collect();
        Ok(Posterior { columns })
    }

    /// True iff the assignment, restricted to referents with positive
    /// prior mass, is injective — equivalently, signals determine their
    /// referents with certainty.
    pub fn is_logically_reversible(&self, prior: &Prior) -> Result<bool> {
        self.check_alignment(prior)?;
        let mut taken = vec![false; self.signal_count()];
        for (referent, &signal) in self.assignment.iter().enumerate() {
            if prior.get(referent) > 0.0 {
                if taken[signal] {
                    return Ok(false);
                }
                taken[signal] = true;
            }
        }
        Ok(true)
    }

    /// Joint table over referents and channel outputs for the cascade
    /// coder + channel: `P(m, s') = p(m) * N(code(m) -> s')`.
    pub fn compose_with_channel(
        &self,
        prior: &Prior,
        channel: &StochasticChannel,
    ) -> Result<JointDistribution> {
        self.check_alignment(prior)?;
        if channel.input_count() != self.signal_count() {
            return Err(Error::LengthMismatch {
                what: "channel input",
                expected: self.signal_count(),
                found: channel.input_count(),
            });
        }
        let outputs = channel.output_count();
        let mut table = vec![vec![0.0; outputs]; self.referent_count()];
        for (referent, &signal) in self.assignment.iter().enumerate() {
            let mass = prior.get(referent);
            for (out, &transition) in channel.row(signal).iter().enumerate() {
                table[referent][out] = mass * transition;
            }
        }
        let col_labels = channel.output_labels(&self.signals)?;
        JointDistribution::new(table, self.referents.clone(), col_labels)
    }

    /// Injective extension of the code over composite signals: each
    /// referent is mapped to `original_signal#k` where `k` is its rank
    /// (in referent order) within the preimage class of that signal.
    ///
    /// Dropping the `#k` tag from every composite label recovers the
    /// original assignment; [`split_composite_label`] does the split.
    pub fn reversibilize(&self) -> DeterministicCode {
        let mut class_rank = vec![0usize; self.referent_count()];
        let mut class_size = vec![0usize; self.signal_count()];
        for (referent, &signal) in self.assignment.iter().enumerate() {
            class_rank[referent] = class_size[signal];
            class_size[signal] += 1;
        }
        let mut offsets = vec![0usize; self.signal_count()];
        let mut labels = Vec::new();
        for signal in 0..self.signal_count() {
            offsets[signal] = labels.len();
            for rank in 0..class_size[signal] {
                labels.push(format!("{}#{}", self.signals.label(signal), rank));
            }
        }
        let assignment = self
            .assignment
            .iter()
            .enumerate()
            .map(|(referent, &signal)| offsets[signal] + class_rank[referent])
            .collect();
        // Composite labels are distinct by construction, and there is at
        // least one because the referent alphabet is nonempty.
        let signals = Alphabet::new(labels).expect("composite labels are distinct and nonempty");
        DeterministicCode {
            referents: self.referents.clone(),
            signals,
            assignment,
        }
    }
}

/// Splits a composite signal label produced by
/// [`DeterministicCode::reversibilize`] into its original label and rank.
///
/// The rank is everything after the last `#`, so original labels that
/// themselves contain `#` survive the round trip.
pub fn split_composite_label(label: &str) -> Option<(&str, usize)> {
    let (base, tag) = label.rsplit_once('#')?;
    tag.parse().ok().map(|rank| (base, rank))
}

/// Posterior distributions `P(referent | signal)`, one column per signal.
///
/// Columns of unused signals carry no distribution at all; callers must
/// treat them as undefined instead of all-zero.
#[derive(Debug, Clone, PartialEq)]
pub struct Posterior {
    columns: Vec<Option<Vec<f64>>>,
}

impl Posterior {
    pub fn signal_count(&self) -> usize {
        self.columns.len()
    }

    /// The posterior column for a signal, or `None` when the signal has
    /// zero probability under the prior.
    pub fn column(&self, signal: usize) -> Option<&[f64]> {
        self.columns[signal].as_deref()
    }

    pub fn is_defined(&self, signal: usize) -> bool {
        self.columns[signal].is_some()
    }
}

/// Row-stochastic transition matrix: the noise between emitted signals and
/// observed ones. Rows are indexed by input signals, columns by outputs.
#[derive(Debug, Clone, PartialEq)]
pub struct StochasticChannel {
    matrix: Vec<Vec<f64>>,
    outputs: Option<Alphabet>,
}

impl StochasticChannel {
    pub fn new(matrix: Vec<Vec<f64>>) -> Result<Self> {
        Self::build(matrix, None)
    }

    /// Channel with named output symbols; the label count must match the
    /// column count.
    pub fn with_outputs(matrix: Vec<Vec<f64>>, outputs: Alphabet) -> Result<Self> {
        Self::build(matrix, Some(outputs))
    }

    fn build(matrix: Vec<Vec<f64>>, outputs: Option<Alphabet>) -> Result<Self> {
        if matrix.is_empty() || matrix[0].is_empty() {
            return Err(Error::EmptyAlphabet);
        }
        let width = matrix[0].len();
        for (row, entries) in matrix.iter().enumerate() {
            if entries.len() != width {
                return Err(Error::RaggedMatrix {
                    row,
                    expected: width,
                    found: entries.len(),
                });
            }
            for (index, &value) in entries.iter().enumerate() {
                if !(value >= 0.0) {
                    return Err(Error::NegativeEntry {
                        what: "channel",
                        index: row * width + index,
                        value,
                    });
                }
            }
            let sum: f64 = entries.iter().sum();
            if (sum - 1.0).abs() > VALIDATION_TOLERANCE {
                return Err(Error::RowNotStochastic {
                    row,
                    sum,
                    tolerance: VALIDATION_TOLERANCE,
                });
            }
        }
        if let Some(alphabet) = &outputs {
            if alphabet.len() != width {
                return Err(Error::LengthMismatch {
                    what: "channel outputs",
                    expected: width,
                    found: alphabet.len(),
                });
            }
        }
        Ok(Self { matrix, outputs })
    }

    /// The noiseless channel on `k` signals.
    pub fn identity(k: usize) -> Result<Self> {
        let matrix = (0..k)
            .map(|i| {
                let mut row = vec![0.0; k];
                row[i] = 1.0;
                row
            })
            .collect();
        Self::new(matrix)
    }

    /// Binary channel that flips its input with probability `flip`.
    pub fn binary_symmetric(flip: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&flip) {
            return Err(Error::InvalidParameter {
                what: "flip probability",
                value: flip,
            });
        }
        Self::new(vec![vec![1.0 - flip, flip], vec![flip, 1.0 - flip]])
    }

    /// Channel whose every row is uniform: output independent of input.
    pub fn fully_mixing(inputs: usize, outputs: usize) -> Result<Self> {
        if inputs == 0 || outputs == 0 {
            return Err(Error::EmptyAlphabet);
        }
        Self::new(vec![vec![1.0 / outputs as f64; outputs]; inputs])
    }

    pub fn input_count(&self) -> usize {
        self.matrix.len()
    }

    pub fn output_count(&self) -> usize {
        self.matrix[0].len()
    }

    pub fn row(&self, input: usize) -> &[f64] {
        &self.matrix[input]
    }

    /// Labels for the output symbols: the channel's own if it has them,
    /// the code's signal labels when the matrix is square, generated
    /// `y1..yK` labels otherwise.
    fn output_labels(&self, input_labels: &Alphabet) -> Result<Alphabet> {
        match &self.outputs {
            Some(alphabet) => Ok(alphabet.clone()),
            None if self.output_count() == input_labels.len() => Ok(input_labels.clone()),
            None => Alphabet::new((1..=self.output_count()).map(|k| format!("y{k}"))),
        }
    }
}

/// A full joint table `P(referent, signal)`; the object every entropy in
/// this crate is computed from.
#[derive(Debug, Clone, PartialEq)]
pub struct JointDistribution {
    table: Vec<Vec<f64>>,
    row_labels: Alphabet,
    col_labels: Alphabet,
}

impl JointDistribution {
    /// Validates shape, nonnegativity, and total mass 1 within
    /// [`DERIVED_TOLERANCE`].
    pub fn new(table: Vec<Vec<f64>>, row_labels: Alphabet, col_labels: Alphabet) -> Result<Self> {
        if table.len() != row_labels.len() {
            return Err(Error::LengthMismatch {
                what: "joint rows",
                expected: row_labels.len(),
                found: table.len(),
            });
        }
        let mut total = 0.0;
        for (row, entries) in table.iter().enumerate() {
            if entries.len() != col_labels.len() {
                return Err(Error::RaggedMatrix {
                    row,
                    expected: col_labels.len(),
                    found: entries.len(),
                });
            }
            for (index, &value) in entries.iter().enumerate() {
                if !(value >= 0.0) {
                    return Err(Error::NegativeEntry {
                        what: "joint",
                        index: row * col_labels.len() + index,
                        value,
                    });
                }
                total += value;
            }
        }
        if (total - 1.0).abs() > DERIVED_TOLERANCE {
            return Err(Error::Unnormalized {
                what: "joint",
                sum: total,
                tolerance: DERIVED_TOLERANCE,
            });
        }
        Ok(Self {
            table,
            row_labels,
            col_labels,
        })
    }

    pub fn row_count(&self) -> usize {
        self.table.len()
    }

    pub fn col_count(&self) -> usize {
        self.col_labels.len()
    }

    pub fn mass(&self, row: usize, col: usize) -> f64 {
        self.table[row][col]
    }

    pub fn table(&self) -> &[Vec<f64>] {
        &self.table
    }

    pub fn row_labels(&self) -> &Alphabet {
        &self.row_labels
    }

    pub fn col_labels(&self) -> &Alphabet {
        &self.col_labels
    }

    /// Marginal over referents (row sums).
    pub fn row_marginal(&self) -> Vec<f64> {
        self.table
            .iter()
            .map(|row| row.iter().sum::<f64>())
            .collect()
    }

    /// Marginal over signals (column sums, accumulated in row order).
    pub fn col_marginal(&self) -> Vec<f64> {
        let mut sums = vec![0.0; self.col_count()];
        for row in &self.table {
            for (col, &value) in row.iter().enumerate() {
                sums[col] += value;
            }
        }
        sums
    }

    /// The same distribution with rows and columns swapped.
    pub fn transpose(&self) -> JointDistribution {
        let mut table = vec![vec![0.0; self.row_count()]; self.col_count()];
        for (row, entries) in self.table.iter().enumerate() {
            for (col, &value) in entries.iter().enumerate() {
                table[col][row] = value;
            }
        }
        JointDistribution {
            table,
            row_labels: self.col_labels.clone(),
            col_labels: self.row_labels.clone(),
        }
    }
}
