//! File schemas and their validation into domain values. Every failure
//! names the offending file and field.

use std::path::Path;

use ambicode::code::{Alphabet, DeterministicCode, Prior, StochasticChannel};
use ambicode::machine::CodingMachine;
use serde::{Deserialize, Serialize};

use crate::CliError;

/// On-disk description of a code: label lists, an optional prior
/// (absent means uniform), and one signal index per referent.
#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CodeSpecFile {
    pub referents: Vec<String>,
    pub signals: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prior: Option<Vec<f64>>,
    pub map: Vec<usize>,
}

/// On-disk description of a coding machine; the head direction is
/// implicitly rightward for every transition.
#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MachineSpecFile {
    pub states: Vec<String>,
    pub input_alphabet: Vec<String>,
    pub output_alphabet: Vec<String>,
    pub initial_state: String,
    pub transitions: Vec<TransitionSpec>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TransitionSpec {
    pub state: String,
    pub read: String,
    pub next: String,
    pub write: String,
}

/// On-disk row-stochastic matrix, with optional output labels.
#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChannelSpecFile {
    pub matrix: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub outputs: Option<Vec<String>>,
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path, what: &str) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path).map_err(|err| CliError {
        message: format!("{what} `{}`: {err}", path.display()),
        exit: 1,
    })?;
    let mut deserializer = serde_json::Deserializer::from_str(&text);
    // serde_path_to_error keeps the field path in the message, so a bad
    // entry deep inside an array still names its field.
    serde_path_to_error::deserialize(&mut deserializer).map_err(|err| CliError {
        message: format!("{what} `{}`: field \"{}\": {}", path.display(), err.path(), err.inner()),
        exit: 1,
    })
}

fn field_error(path: &Path, what: &str, field: &str, err: impl std::fmt::Display) -> CliError {
    CliError {
        message: format!("{what} `{}`: field \"{field}\": {err}", path.display()),
        exit: 1,
    }
}

/// Parses and validates a code file into a code and its prior.
pub fn load_code(path: &Path) -> Result<(DeterministicCode, Prior), CliError> {
    let spec: CodeSpecFile = read_json(path, "code file")?;
    let referents = Alphabet::new(spec.referents)
        .map_err(|err| field_error(path, "code file", "referents", err))?;
    let signals = Alphabet::new(spec.signals)
        .map_err(|err| field_error(path, "code file", "signals", err))?;
    let prior = match spec.prior {
        Some(values) => {
            if values.len() != referents.len() {
                return Err(field_error(
                    path,
                    "code file",
                    "prior",
                    format!(
                        "expected {} probabilities, found {}",
                        referents.len(),
                        values.len()
                    ),
                ));
            }
            Prior::new(values).map_err(|err| field_error(path, "code file", "prior", err))?
        }
        None => Prior::uniform(referents.len())
            .map_err(|err| field_error(path, "code file", "referents", err))?,
    };
    let code = DeterministicCode::new(referents, signals, spec.map)
        .map_err(|err| field_error(path, "code file", "map", err))?;
    Ok((code, prior))
}

/// Parses and validates a channel file.
pub fn load_channel(path: &Path) -> Result<StochasticChannel, CliError> {
    let spec: ChannelSpecFile = read_json(path, "channel file")?;
    match spec.outputs {
        Some(labels) => {
            let outputs = Alphabet::new(labels)
                .map_err(|err| field_error(path, "channel file", "outputs", err))?;
            let columns = spec.matrix.first().map_or(0, Vec::len);
            if outputs.len() != columns {
                return Err(field_error(
                    path,
                    "channel file",
                    "outputs",
                    format!("expected {columns} labels, found {}", outputs.len()),
                ));
            }
            StochasticChannel::with_outputs(spec.matrix, outputs)
        }
        None => StochasticChannel::new(spec.matrix),
    }
    .map_err(|err| field_error(path, "channel file", "matrix", err))
}

/// Parses a standalone prior file: a bare JSON array of probabilities.
pub fn load_prior(path: &Path, expected_len: usize) -> Result<Prior, CliError> {
    let values: Vec<f64> = read_json(path, "prior file")?;
    if values.len() != expected_len {
        return Err(field_error(
            path,
            "prior file",
            "prior",
            format!("expected {expected_len} probabilities, found {}", values.len()),
        ));
    }
    Prior::new(values).map_err(|err| field_error(path, "prior file", "prior", err))
}

/// Parses and validates a machine file.
pub fn load_machine(path: &Path) -> Result<CodingMachine, CliError> {
    let spec: MachineSpecFile = read_json(path, "machine file")?;
    let states = Alphabet::new(spec.states)
        .map_err(|err| field_error(path, "machine file", "states", err))?;
    let inputs = Alphabet::new(spec.input_alphabet)
        .map_err(|err| field_error(path, "machine file", "input_alphabet", err))?;
    let outputs = Alphabet::new(spec.output_alphabet)
        .map_err(|err| field_error(path, "machine file", "output_alphabet", err))?;
    let transitions: Vec<(&str, &str, &str, &str)> = spec
        .transitions
        .iter()
        .map(|t| {
            (
                t.state.as_str(),
                t.read.as_str(),
                t.next.as_str(),
                t.write.as_str(),
            )
        })
        .collect();
    CodingMachine::new(states, inputs, outputs, &spec.initial_state, &transitions).map_err(
        |err| {
            let field = match &err {
                ambicode::Error::UnknownLabel {
                    what: "initial state",
                    ..
                } => "initial_state",
                ambicode::Error::LabelClash(_) => "alphabets",
                _ => "transitions",
            };
            field_error(path, "machine file", field, err)
        },
    )
}

/// The on-disk form of a synthesized or projected code.
pub fn code_spec(code: &DeterministicCode, prior: Option<&Prior>) -> CodeSpecFile {
    CodeSpecFile {
        referents: code.referents().labels().to_vec(),
        signals: code.signals().labels().to_vec(),
        prior: prior.map(|p| p.as_slice().to_vec()),
        map: code.assignment().to_vec(),
    }
}
