//! Command-line front end: parses code/machine/channel files, dispatches
//! to analysis, synthesis, simulation, and machine checking, and emits
//! deterministic machine-readable reports on standard output.
//!
//! Exit codes: 0 on success, 1 on validation or parse errors, 2 on
//! infeasible requests (exhaustive guard exceeded, projection undefined).

mod files;
mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use ambicode::error::Error;
use ambicode::info;
use ambicode::simulate::{map_decoder, map_decoder_for_joint, monte_carlo_error};
use ambicode::synthesis::{synthesize, SearchMethod, SynthesisConfig};
use clap::{Parser, Subcommand, ValueEnum};

use report::{print_json, TOOL, VERSION};

#[derive(Debug)]
pub struct CliError {
    pub message: String,
    pub exit: u8,
}

impl From<Error> for CliError {
    fn from(err: Error) -> Self {
        let exit = match err {
            Error::SearchSpaceExceeded { .. } | Error::ProjectionUndefined(_) => 2,
            _ => 1,
        };
        CliError {
            message: err.to_string(),
            exit,
        }
    }
}

#[derive(Parser)]
#[command(
    name = "ambicode",
    version,
    about = "Deterministic codes, their ambiguity, and symmetric code synthesis"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Entropy, ambiguity, and heat accounting for a code file.
    Analyze {
        /// Code description file (JSON).
        #[arg(long)]
        code: PathBuf,
        /// Optional channel file composed after the coder.
        #[arg(long)]
        channel: Option<PathBuf>,
        /// Temperature in kelvin for the heat figures.
        #[arg(long, default_value_t = 300.0)]
        temperature: f64,
        /// Emit a flat CSV row instead of the JSON document.
        #[arg(long)]
        csv: bool,
    },
    /// Search for codes satisfying the coder/decoder symmetry equation.
    Synthesize {
        /// Referent count.
        #[arg(long)]
        n: usize,
        /// Signal count.
        #[arg(long)]
        m: usize,
        /// `uniform` or a path to a JSON array of probabilities.
        #[arg(long, default_value = "uniform")]
        prior: String,
        #[arg(long, value_enum)]
        method: MethodArg,
        /// Accepted residual magnitude in bits.
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Annealing steps (ignored by the exhaustive method).
        #[arg(long, default_value_t = 100_000)]
        steps: u64,
        /// Annealing start temperature in bits.
        #[arg(long, default_value_t = 1.0)]
        initial_temperature: f64,
        /// Annealing geometric cooling rate, strictly between 0 and 1.
        #[arg(long, default_value_t = 0.999)]
        cooling_rate: f64,
        /// Directory to write each found code as a code file.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Emit one CSV row per found code instead of the JSON document.
        #[arg(long)]
        csv: bool,
    },
    /// Monte Carlo transmission with a MAP decoder.
    Simulate {
        #[arg(long)]
        code: PathBuf,
        #[arg(long)]
        channel: Option<PathBuf>,
        #[arg(long)]
        trials: u64,
        #[arg(long)]
        seed: u64,
        /// Which joint the MAP decoder is computed against.
        #[arg(long, value_enum, default_value_t = DecoderArg::NoiselessMap)]
        decoder: DecoderArg,
        #[arg(long)]
        csv: bool,
    },
    /// Inspect, run, or project a coding machine.
    Machine {
        #[command(subcommand)]
        action: MachineAction,
    },
}

#[derive(Subcommand)]
enum MachineAction {
    /// Report whether the transition table is logically reversible.
    Check {
        #[arg(long)]
        machine: PathBuf,
    },
    /// Execute the machine on a comma-separated input sequence.
    Run {
        #[arg(long)]
        machine: PathBuf,
        /// Comma-separated referent labels, e.g. `11,00,01`.
        #[arg(long)]
        input: String,
    },
    /// Collapse the machine to its stateless code file.
    Project {
        #[arg(long)]
        machine: PathBuf,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum MethodArg {
    Exhaustive,
    Anneal,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum DecoderArg {
    /// MAP against the noiseless joint, even when a channel is present.
    NoiselessMap,
    /// MAP against the channel-composed joint.
    ComposedMap,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            use clap::error::ErrorKind;
            if matches!(err.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{err}");
                return ExitCode::SUCCESS;
            }
            eprintln!("{err}");
            return ExitCode::from(1);
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {}", err.message);
            ExitCode::from(err.exit)
        }
    }
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Analyze {
            code,
            channel,
            temperature,
            csv,
        } => analyze(&code, channel.as_deref(), temperature, csv),
        Command::Synthesize {
            n,
            m,
            prior,
            method,
            tol,
            seed,
            steps,
            initial_temperature,
            cooling_rate,
            out,
            csv,
        } => run_synthesize(
            n,
            m,
            &prior,
            method,
            tol,
            seed,
            steps,
            initial_temperature,
            cooling_rate,
            out.as_deref(),
            csv,
        ),
        Command::Simulate {
            code,
            channel,
            trials,
            seed,
            decoder,
            csv,
        } => simulate(&code, channel.as_deref(), trials, seed, decoder, csv),
        Command::Machine { action } => machine(action),
    }
}

fn analyze(
    code_path: &Path,
    channel_path: Option<&Path>,
    temperature: f64,
    csv: bool,
) -> Result<(), CliError> {
    let (code, prior) = files::load_code(code_path)?;
    let joint = match channel_path {
        Some(path) => {
            let channel = files::load_channel(path)?;
            code.compose_with_channel(&prior, &channel)?
        }
        None => code.joint_distribution(&prior)?,
    };
    let info = info::info_report(&joint);
    let landauer = info::landauer(info.h_omega_given_s, temperature)?;

    if csv {
        let mut writer = csv::Writer::from_writer(std::io::stdout());
        let header = [
            "h_omega",
            "h_s",
            "h_joint",
            "h_omega_given_s",
            "h_s_given_omega",
            "mutual_information",
            "symmetry_residual",
            "reversible",
            "ambiguity_class",
            "erased_bits",
            "entropy_generation_j_per_k",
            "heat_j",
            "temperature_kelvin",
        ];
        let row = [
            fmt_f64(info.h_omega),
            fmt_f64(info.h_s),
            fmt_f64(info.h_joint),
            fmt_f64(info.h_omega_given_s),
            fmt_f64(info.h_s_given_omega),
            fmt_f64(info.mutual_information),
            fmt_f64(info.symmetry_residual),
            info.reversible.to_string(),
            info.ambiguity_class.to_string(),
            fmt_f64(landauer.erased_bits),
            fmt_f64(landauer.entropy_generation),
            fmt_f64(landauer.heat_at_temperature),
            fmt_f64(landauer.temperature),
        ];
        write_csv(&mut writer, &header, &row)?;
        return Ok(());
    }

    print_json(&report::AnalyzeDoc {
        tool: TOOL,
        version: VERSION,
        command: "analyze",
        code: code_path.display().to_string(),
        channel: channel_path.map(|p| p.display().to_string()),
        info: (&info).into(),
        landauer: (&landauer).into(),
    });
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn run_synthesize(
    n: usize,
    m: usize,
    prior_arg: &str,
    method: MethodArg,
    tol: f64,
    seed: u64,
    steps: u64,
    initial_temperature: f64,
    cooling_rate: f64,
    out: Option<&Path>,
    csv: bool,
) -> Result<(), CliError> {
    let prior = if prior_arg == "uniform" {
        None
    } else {
        Some(files::load_prior(Path::new(prior_arg), n)?)
    };
    let config = SynthesisConfig {
        n,
        m,
        prior,
        method: match method {
            MethodArg::Exhaustive => SearchMethod::Exhaustive,
            MethodArg::Anneal => SearchMethod::Anneal,
        },
        tolerance: tol,
        seed,
        anneal_steps: steps,
        initial_temperature,
        cooling_rate,
    };
    let result = synthesize(&config)?;

    let written_to = match out {
        Some(dir) => {
            std::fs::create_dir_all(dir).map_err(|err| CliError {
                message: format!("out directory `{}`: {err}", dir.display()),
                exit: 1,
            })?;
            let resolved = config.resolved_prior()?;
            for (index, code) in result.codes.iter().enumerate() {
                let spec = files::code_spec(code, Some(&resolved));
                let path = dir.join(format!("code_{index:03}.json"));
                let body = serde_json::to_string_pretty(&spec).expect("code spec serializes");
                std::fs::write(&path, body + "\n").map_err(|err| CliError {
                    message: format!("writing `{}`: {err}", path.display()),
                    exit: 1,
                })?;
            }
            Some(dir.display().to_string())
        }
        None => None,
    };

    if csv {
        let mut writer = csv::Writer::from_writer(std::io::stdout());
        writer
            .write_record(["index", "residual_bits", "assignment"])
            .map_err(csv_error)?;
        for (index, (code, residual)) in result.codes.iter().zip(&result.residuals).enumerate() {
            let assignment = code
                .assignment()
                .iter()
                .map(|s| s.to_string())
                .collect::<Vec<_>>()
                .join(" ");
            writer
                .write_record([index.to_string(), fmt_f64(*residual), assignment])
                .map_err(csv_error)?;
        }
        writer.flush().map_err(|err| CliError {
            message: format!("csv: {err}"),
            exit: 1,
        })?;
        return Ok(());
    }

    let codes = result
        .codes
        .iter()
        .zip(&result.residuals)
        .enumerate()
        .map(|(index, (code, &residual))| report::FoundCodeDoc {
            index,
            assignment: code.assignment().to_vec(),
            residual_bits: residual.into(),
        })
        .collect::<Vec<_>>();
    print_json(&report::SynthesizeDoc {
        tool: TOOL,
        version: VERSION,
        command: "synthesize",
        n,
        m,
        prior: prior_arg.to_string(),
        method: result.method.to_string(),
        tolerance_bits: tol,
        seed,
        explored: result.explored,
        found: codes.len(),
        codes,
        written_to,
    });
    Ok(())
}

fn simulate(
    code_path: &Path,
    channel_path: Option<&Path>,
    trials: u64,
    seed: u64,
    decoder: DecoderArg,
    csv: bool,
) -> Result<(), CliError> {
    let (code, prior) = files::load_code(code_path)?;
    let channel = channel_path.map(files::load_channel).transpose()?;

    let rule = match (decoder, &channel) {
        (DecoderArg::NoiselessMap, Some(channel))
            if channel.output_count() != code.signal_count() =>
        {
            return Err(CliError {
                message: format!(
                    "decoder `noiseless-map` needs matching signal sets, but the channel emits \
                     {} symbols over {} code signals; use --decoder composed-map",
                    channel.output_count(),
                    code.signal_count()
                ),
                exit: 1,
            });
        }
        (DecoderArg::NoiselessMap, _) => map_decoder(&code, &prior)?,
        (DecoderArg::ComposedMap, Some(channel)) => {
            map_decoder_for_joint(&code.compose_with_channel(&prior, channel)?)
        }
        (DecoderArg::ComposedMap, None) => map_decoder(&code, &prior)?,
    };
    let report = monte_carlo_error(&code, &prior, &rule, trials, seed, channel.as_ref())?;
    let decoder_name = match decoder {
        DecoderArg::NoiselessMap => "noiseless-map",
        DecoderArg::ComposedMap => "composed-map",
    };

    if csv {
        let mut writer = csv::Writer::from_writer(std::io::stdout());
        let header = [
            "trials",
            "errors",
            "empirical_error",
            "exact_map_error",
            "fano_bound",
            "conditional_entropy_bits",
            "seed",
            "decoder",
        ];
        let row = [
            report.trials.to_string(),
            report.errors.to_string(),
            fmt_f64(report.empirical_error),
            fmt_f64(report.exact_map_error),
            fmt_f64(report.fano_bound),
            fmt_f64(report.conditional_entropy),
            report.seed.to_string(),
            decoder_name.to_string(),
        ];
        write_csv(&mut writer, &header, &row)?;
        return Ok(());
    }

    print_json(&report::SimulateDoc::new(
        code_path.display().to_string(),
        channel_path.map(|p| p.display().to_string()),
        decoder_name.to_string(),
        &report,
    ));
    Ok(())
}

fn machine(action: MachineAction) -> Result<(), CliError> {
    match action {
        MachineAction::Check { machine } => {
            let loaded = files::load_machine(&machine)?;
            print_json(&report::MachineCheckDoc {
                tool: TOOL,
                version: VERSION,
                command: "machine-check",
                machine: machine.display().to_string(),
                reversible: loaded.is_reversible(),
            });
            Ok(())
        }
        MachineAction::Run { machine, input } => {
            let loaded = files::load_machine(&machine)?;
            let symbols: Vec<String> = input
                .split(',')
                .map(|piece| piece.trim().to_string())
                .filter(|piece| !piece.is_empty())
                .collect();
            let trace = loaded.run(&symbols)?;
            print_json(&report::MachineRunDoc {
                tool: TOOL,
                version: VERSION,
                command: "machine-run",
                machine: machine.display().to_string(),
                input: symbols,
                steps: trace
                    .steps
                    .iter()
                    .map(|step| report::TraceStepDoc {
                        state_before: step.state_before.clone(),
                        read: step.referent.clone(),
                        write: step.signal.clone(),
                        state_after: step.state_after.clone(),
                    })
                    .collect(),
                output: trace.output,
            });
            Ok(())
        }
        MachineAction::Project { machine } => {
            let loaded = files::load_machine(&machine)?;
            let code = loaded.project_to_code()?;
            print_json(&files::code_spec(&code, None));
            Ok(())
        }
    }
}

fn csv_error(err: csv::Error) -> CliError {
    CliError {
        message: format!("csv: {err}"),
        exit: 1,
    }
}

/// Shortest round-trip rendering, scientific when far from unity (plain
/// `Display` would spell 1e-23 out positionally).
fn fmt_f64(value: f64) -> String {
    serde_json::to_string(&value).expect("finite floats serialize")
}

fn write_csv<W: std::io::Write>(
    writer: &mut csv::Writer<W>,
    header: &[&str],
    row: &[String],
) -> Result<(), CliError> {
    writer.write_record(header).map_err(csv_error)?;
    writer.write_record(row).map_err(csv_error)?;
    writer.flush().map_err(|err| CliError {
        message: format!("csv: {err}"),
        exit: 1,
    })
}
