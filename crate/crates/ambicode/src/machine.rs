//! The state-bearing coder: a restricted machine that sweeps its input
//! once, left to right, replacing each referent it reads with a signal.
//!
//! Because referent and signal labels never overlap, the head can never
//! revisit a written cell, so the move direction is fixed rightward and
//! blanks and start markers never need to be materialized: the tape is the
//! input sequence itself, and the machine halts when it is exhausted.

use std::collections::{HashMap, HashSet};

use crate::code::{Alphabet, DeterministicCode};
use crate::error::Error;
use crate::Result;

/// One entry of the transition table: read a referent in a state, write a
/// signal, move right into the next state.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Step {
    pub next_state: usize,
    pub signal: usize,
}

/// Deterministic coding machine with states `Q`, referent alphabet, signal
/// alphabet, and a total transition table over `Q x referents`.
#[derive(Debug, Clone, PartialEq)]
pub struct CodingMachine {
    states: Alphabet,
    input_alphabet: Alphabet,
    output_alphabet: Alphabet,
    initial_state: usize,
    table: Vec<Vec<Step>>, // [state][referent]
}

/// One executed transition, recorded with labels for readability.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep {
    pub state_before: String,
    pub referent: String,
    pub signal: String,
    pub state_after: String,
}

/// The record of one run: per-symbol steps plus the emitted signals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunTrace {
    pub steps: Vec<TraceStep>,
    pub output: Vec<String>,
}

impl CodingMachine {
    /// Builds a machine from labeled transitions `(state, read, next,
    /// write)`. The three alphabets must be pairwise disjoint as label
    /// sets, and the table must cover every `(state, referent)` pair
    /// exactly once.
    pub fn new(
        states: Alphabet,
        input_alphabet: Alphabet,
        output_alphabet: Alphabet,
        initial_state: &str,
        transitions: &[(&str, &str, &str, &str)],
    ) -> Result<Self> {
        let mut all_labels = HashSet::new();
        for label in states
            .labels()
            .iter()
            .chain(input_alphabet.labels())
            .chain(output_alphabet.labels())
        {
            if !all_labels.insert(label.as_str()) {
                return Err(Error::LabelClash(label.clone()));
            }
        }
        let initial = states.index_of(initial_state).ok_or(Error::UnknownLabel {
            what: "initial state",
            label: initial_state.to_string(),
        })?;

        let mut table = vec![vec![None; input_alphabet.len()]; states.len()];
        for &(state, read, next, write) in transitions {
            let s = states.index_of(state).ok_or(Error::UnknownLabel {
                what: "state",
                label: state.to_string(),
            })?;
            let r = input_alphabet.index_of(read).ok_or(Error::UnknownLabel {
                what: "referent",
                label: read.to_string(),
            })?;
            let n = states.index_of(next).ok_or(Error::UnknownLabel {
                what: "state",
                label: next.to_string(),
            })?;
            let w = output_alphabet.index_of(write).ok_or(Error::UnknownLabel {
                what: "signal",
                label: write.to_string(),
            })?;
            if table[s][r].is_some() {
                return Err(Error::DuplicateTransition {
                    state: state.to_string(),
                    referent: read.to_string(),
                });
            }
            table[s][r] = Some(Step {
                next_state: n,
                signal: w,
            });
        }
        let mut total = Vec::with_capacity(states.len());
        for (s, row) in table.into_iter().enumerate() {
            let mut filled = Vec::with_capacity(input_alphabet.len());
            for (r, entry) in row.into_iter().enumerate() {
                match entry {
                    Some(step) => filled.push(step),
                    None => {
                        return Err(Error::MissingTransition {
                            state: states.label(s).to_string(),
                            referent: input_alphabet.label(r).to_string(),
                        })
                    }
                }
            }
            total.push(filled);
        }
        Ok(Self {
            states,
            input_alphabet,
            output_alphabet,
            initial_state: initial,
            table: total,
        })
    }

    /// Wraps a stateless code as a single-state machine. The state label
    /// is `q0`, extended with underscores until it avoids both alphabets,
    /// so the disjointness requirement always holds.
    pub fn from_code(code: &DeterministicCode) -> CodingMachine {
        let mut label = String::from("q0");
        while code.referents().contains(&label) || code.signals().contains(&label) {
            label.push('_');
        }
        let states = Alphabet::new([label]).expect("single fresh label");
        let table = vec![code
            .assignment()
            .iter()
            .map(|&signal| Step {
                next_state: 0,
                signal,
            })
            .collect()];
        CodingMachine {
            states,
            input_alphabet: code.referents().clone(),
            output_alphabet: code.signals().clone(),
            initial_state: 0,
            table,
        }
    }

    pub fn states(&self) -> &Alphabet {
        &self.states
    }

    pub fn input_alphabet(&self) -> &Alphabet {
        &self.input_alphabet
    }

    pub fn output_alphabet(&self) -> &Alphabet {
        &self.output_alphabet
    }

    pub fn initial_state(&self) -> &str {
        self.states.label(self.initial_state)
    }

    /// The table entry for a state/referent pair (indices).
    pub fn step(&self, state: usize, referent: usize) -> Step {
        self.table[state][referent]
    }

    /// Executes one left-to-right sweep over the input sequence.
    pub fn run<S: AsRef<str>>(&self, input: &[S]) -> Result<RunTrace> {
        let mut state = self.initial_state;
        let mut steps = Vec::with_capacity(input.len());
        let mut output = Vec::with_capacity(input.len());
        for symbol in input {
            let symbol = symbol.as_ref();
            let referent = self
                .input_alphabet
                .index_of(symbol)
                .ok_or(Error::UnknownLabel {
                    what: "input symbol",
                    label: symbol.to_string(),
                })?;
            let step = self.table[state][referent];
            steps.push(TraceStep {
                state_before: self.states.label(state).to_string(),
                referent: symbol.to_string(),
                signal: self.output_alphabet.label(step.signal).to_string(),
                state_after: self.states.label(step.next_state).to_string(),
            });
            output.push(self.output_alphabet.label(step.signal).to_string());
            state = step.next_state;
        }
        Ok(RunTrace { steps, output })
    }

    /// True iff the transition table, viewed as a map from
    /// `(state, referent)` to `(next state, signal)`, is injective — every
    /// step of every run can then be undone.
    pub fn is_reversible(&self) -> bool {
        let mut seen = HashSet::new();
        for row in &self.table {
            for step in row {
                if !seen.insert((step.next_state, step.signal)) {
                    return false;
                }
            }
        }
        true
    }

    /// Collapses the machine to its stateless code, defined whenever each
    /// referent is written as the same signal in every state. Refuses
    /// state-dependent tables, naming the first offending referent.
    pub fn project_to_code(&self) -> Result<DeterministicCode> {
        let mut assignment = Vec::with_capacity(self.input_alphabet.len());
        for referent in 0..self.input_alphabet.len() {
            let signal = self.table[0][referent].signal;
            for row in &self.table[1..] {
                if row[referent].signal != signal {
                    return Err(Error::ProjectionUndefined(
                        self.input_alphabet.label(referent).to_string(),
                    ));
                }
            }
            assignment.push(signal);
        }
        DeterministicCode::new(
            self.input_alphabet.clone(),
            self.output_alphabet.clone(),
            assignment,
        )
    }

    /// The inverse step table for reversible machines: maps each
    /// `(next state, signal)` back to the `(state, referent)` that
    /// produced it. `None` when the machine is irreversible.
    pub fn inverse_table(&self) -> Option<HashMap<(usize, usize), (usize, usize)>> {
        let mut inverse = HashMap::new();
        for (state, row) in self.table.iter().enumerate() {
            for (referent, step) in row.iter().enumerate() {
                if inverse
                    .insert((step.next_state, step.signal), (state, referent))
                    .is_some()
                {
                    return None;
                }
            }
        }
        Some(inverse)
    }
}
