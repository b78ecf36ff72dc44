//! Report documents. Every numeric quantity carries a 6-significant-digit
//! rendering for humans and the exact double for machines, and documents
//! echo the tool version and seed so runs can be audited byte for byte.

use ambicode::info::{InfoReport, LandauerReport};
use ambicode::simulate::TransmissionReport;
use serde::Serialize;

pub const TOOL: &str = "ambicode";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// A number rendered both ways.
#[derive(Debug, Serialize)]
pub struct Precise {
    pub rounded: String,
    pub exact: f64,
}

impl From<f64> for Precise {
    fn from(value: f64) -> Self {
        Self {
            rounded: sig6(value),
            exact: value,
        }
    }
}

/// Six significant digits: plain decimal near unity, scientific notation
/// far from it.
pub fn sig6(value: f64) -> String {
    if value == 0.0 {
        return "0.00000".to_string();
    }
    let magnitude = value.abs().log10().floor() as i32;
    if (-4..=5).contains(&magnitude) {
        let decimals = (5 - magnitude).max(0) as usize;
        format!("{value:.decimals$}")
    } else {
        format!("{value:.5e}")
    }
}

#[derive(Debug, Serialize)]
pub struct InfoDoc {
    pub h_omega: Precise,
    pub h_s: Precise,
    pub h_joint: Precise,
    pub h_omega_given_s: Precise,
    pub h_s_given_omega: Precise,
    pub mutual_information: Precise,
    pub symmetry_residual: Precise,
    pub reversible: bool,
    pub ambiguity_class: String,
}

impl From<&InfoReport> for InfoDoc {
    fn from(report: &InfoReport) -> Self {
        Self {
            h_omega: report.h_omega.into(),
            h_s: report.h_s.into(),
            h_joint: report.h_joint.into(),
            h_omega_given_s: report.h_omega_given_s.into(),
            h_s_given_omega: report.h_s_given_omega.into(),
            mutual_information: report.mutual_information.into(),
            symmetry_residual: report.symmetry_residual.into(),
            reversible: report.reversible,
            ambiguity_class: report.ambiguity_class.to_string(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct LandauerDoc {
    pub erased_bits: Precise,
    pub entropy_generation_j_per_k: Precise,
    pub heat_j: Precise,
    pub temperature_kelvin: f64,
    pub boltzmann_constant_j_per_k: f64,
}

impl From<&LandauerReport> for LandauerDoc {
    fn from(report: &LandauerReport) -> Self {
        Self {
            erased_bits: report.erased_bits.into(),
            entropy_generation_j_per_k: report.entropy_generation.into(),
            heat_j: report.heat_at_temperature.into(),
            temperature_kelvin: report.temperature,
            boltzmann_constant_j_per_k: report.boltzmann_constant,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct AnalyzeDoc {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'static str,
    pub code: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub channel: Option<String>,
    pub info: InfoDoc,
    pub landauer: LandauerDoc,
}

#[derive(Debug, Serialize)]
pub struct FoundCodeDoc {
    pub index: usize,
    pub assignment: Vec<usize>,
    pub residual_bits: Precise,
}

#[derive(Debug, Serialize)]
pub struct SynthesizeDoc {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'static str,
    pub n: usize,
    pub m: usize,
    pub prior: String,
    pub method: String,
    pub tolerance_bits: f64,
    pub seed: u64,
    pub explored: u64,
    pub found: usize,
    pub codes: Vec<FoundCodeDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub written_to: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct SimulateDoc {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'static str,
    pub code: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub channel: Option<String>,
    pub decoder: String,
    pub trials: u64,
    pub errors: u64,
    pub seed: u64,
    pub empirical_error: Precise,
    pub exact_map_error: Precise,
    pub fano_bound: Precise,
    pub conditional_entropy_bits: Precise,
}

impl SimulateDoc {
    pub fn new(
        code: String,
        channel: Option<String>,
        decoder: String,
        report: &TransmissionReport,
    ) -> Self {
        Self {
            tool: TOOL,
            version: VERSION,
            command: "simulate",
            code,
            channel,
            decoder,
            trials: report.trials,
            errors: report.errors,
            seed: report.seed,
            empirical_error: report.empirical_error.into(),
            exact_map_error: report.exact_map_error.into(),
            fano_bound: report.fano_bound.into(),
            conditional_entropy_bits: report.conditional_entropy.into(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct MachineCheckDoc {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'static str,
    pub machine: String,
    pub reversible: bool,
}

#[derive(Debug, Serialize)]
pub struct TraceStepDoc {
    pub state_before: String,
    pub read: String,
    pub write: String,
    pub state_after: String,
}

#[derive(Debug, Serialize)]
pub struct MachineRunDoc {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'static str,
    pub machine: String,
    pub input: Vec<String>,
    pub steps: Vec<TraceStepDoc>,
    pub output: Vec<String>,
}

pub fn print_json<T: Serialize>(doc: &T) {
    println!(
        "{}",
        serde_json::to_string_pretty(doc).expect("report documents serialize")
    );
}
