//! Executes experiment descriptors and renders their results.

use std::fmt::Write as _;

use dqsim::algorithms::{deutsch_jozsa, grover, grover_first_singleton, unique_sat_discrete};
use dqsim::field::FieldElement;
use dqsim::modal::unique_sat_modal;
use dqsim::{AlgorithmError, FieldSpec, GroverConfig, ModalError, StateVector};
use serde::Serialize;
use thiserror::Error;

use crate::descriptor::{Algorithm, DescriptorError, ExperimentDescriptor, OutputFormat};

#[derive(Debug, Error)]
pub enum RunError {
    #[error(transparent)]
    Descriptor(#[from] DescriptorError),
    #[error(transparent)]
    Algorithm(#[from] AlgorithmError),
    #[error(transparent)]
    Modal(#[from] ModalError),
}

/// Exact final state, entries in symmetric-range encoding.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FinalState {
    pub dim: usize,
    pub entries: Vec<(i64, i64)>,
}

impl FinalState {
    fn of<F: FieldElement>(v: &StateVector<F>) -> Self {
        let entries = v
            .entries()
            .iter()
            .map(|e| match e.to_wire() {
                dqsim::field::ElementWire::Prime(re) => (re, 0),
                dqsim::field::ElementWire::Quadratic([re, im]) => (re, im),
            })
            .collect();
        FinalState { dim: v.dim(), entries }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExperimentResult {
    pub algorithm: Algorithm,
    pub field: FieldSpec,
    pub verdict: String,
    pub final_support: Vec<usize>,
    pub oracle_evals: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub marked: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub iterations: Option<u64>,
    /// Grover only: first iteration count `<= N` with singleton support.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_singleton: Option<Option<u64>>,
    /// Discrete UNIQUE-SAT only: amplitude of `|0>|0..0>`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub amplitude: Option<(i64, i64)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub supernatural: Option<bool>,
    pub final_state: FinalState,
}

pub fn run(d: &ExperimentDescriptor) -> Result<ExperimentResult, RunError> {
    let field = d.field()?;
    let base = |verdict: String, support: Vec<usize>, evals: u64, state: FinalState| ExperimentResult {
        algorithm: d.algorithm,
        field,
        verdict,
        final_support: support,
        oracle_evals: evals,
        marked: None,
        iterations: None,
        first_singleton: None,
        amplitude: None,
        supernatural: None,
        final_state: state,
    };
    match d.algorithm {
        Algorithm::UniqueSatModal => {
            let f = d.oracle_table()?;
            let r = unique_sat_modal(&f)?;
            Ok(base(
                r.verdict.to_string(),
                r.outcomes.possible(),
                r.oracle_evals,
                FinalState::of(r.final_state.vector()),
            ))
        }
        Algorithm::UniqueSatDiscrete => {
            let f = d.oracle_table()?;
            let r = unique_sat_discrete(&f, field)?;
            let mut out = base(
                r.verdict.to_string(),
                r.outcomes.possible(),
                r.oracle_evals,
                FinalState::of(&r.final_state),
            );
            out.amplitude = Some(r.amplitude.symmetric());
            out.supernatural = Some(r.supernatural);
            Ok(out)
        }
        Algorithm::DeutschJozsa => {
            let f = d.oracle_table()?;
            let r = deutsch_jozsa(&f, field)?;
            let verdict = serde_json::to_value(r.verdict)
                .ok()
                .and_then(|v| v.as_str().map(str::to_string))
                .unwrap_or_default();
            Ok(base(verdict, r.outcomes.possible(), r.oracle_evals, FinalState::of(&r.final_state)))
        }
        Algorithm::Grover => {
            let size = match (d.database_size, d.n) {
                (Some(size), _) => size,
                (None, Some(n)) if n < 63 => 1u64 << n,
                _ => return Err(DescriptorError::Missing(d.algorithm, "\"N\" or \"n\"").into()),
            };
            let marked = d
                .marked
                .ok_or(DescriptorError::Missing(d.algorithm, "\"marked\""))?;
            let cfg = GroverConfig::new(size, field, d.iterations)?;
            let r = grover(marked, &cfg)?;
            let verdict = if r.found(marked) { "FOUND" } else { "NOT_FOUND" };
            let mut out = base(
                verdict.to_string(),
                r.outcomes.possible(),
                r.oracle_evals,
                FinalState::of(&r.final_state),
            );
            out.marked = Some(marked);
            out.iterations = Some(cfg.iterations);
            out.first_singleton = Some(grover_first_singleton(marked, &cfg, size)?);
            Ok(out)
        }
    }
}

/// Renders a result in the descriptor's output format. Identical results
/// render to identical bytes.
pub fn render(result: &ExperimentResult, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => {
            let mut s = serde_json::to_string_pretty(result).expect("result serializes");
            s.push('\n');
            s
        }
        OutputFormat::Csv => {
            let mut s = String::from("index,re,im,possible\n");
            for (k, (re, im)) in result.final_state.entries.iter().enumerate() {
                let possible = u8::from(*re != 0 || *im != 0);
                let _ = writeln!(s, "{k},{re},{im},{possible}");
            }
            s
        }
    }
}
