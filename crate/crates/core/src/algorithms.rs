//! Quantum algorithms run over `F_{p^2}`: Deutsch-Jozsa, Grover search
//! with the finite-field diffusion matrix, and the one-query UNIQUE-SAT
//! circuit whose success depends on `p | 2^n - 1`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::discrete::{hadamard, normalize, DiscreteError};
use crate::field::{FieldElement, FieldError, FieldSpec, Fp2Element, FpElement};
use crate::limits;
use crate::linalg::{apply_to_qubits, LinalgError, OracleTable, OracleTableError, Operator, StateVector};
use crate::modal::{ModalError, OutcomeSet, Possibility, Verdict};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgorithmError {
    #[error("database size {n} is not invertible modulo {p}")]
    NotInvertibleN { n: u64, p: u64 },
    #[error("database size {0} is not a power of two >= 2")]
    NotPowerOfTwo(u64),
    #[error("the uniform start state is isotropic over this field")]
    IsotropicStart,
    #[error("marked index {marked} outside a database of size {size}")]
    MarkedOutOfRange { marked: usize, size: u64 },
    #[error("oracle is neither constant nor balanced")]
    PromiseViolated,
    #[error("arity {n} exceeds the dense-simulation cap {max}")]
    ArityTooLarge { n: usize, max: usize },
    #[error("algorithm needs a degree-2 field, got {0}")]
    NotQuadratic(FieldSpec),
    #[error("characteristic 2 has no multiplicative order for 2")]
    EvenCharacteristic,
    #[error(transparent)]
    Discrete(#[from] DiscreteError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Oracle(#[from] OracleTableError),
    #[error(transparent)]
    Modal(#[from] ModalError),
}

fn require_quadratic(field: FieldSpec) -> Result<(), AlgorithmError> {
    if field.degree() == 2 {
        Ok(())
    } else {
        Err(AlgorithmError::NotQuadratic(field))
    }
}

fn check_arity(n: usize) -> Result<(), AlgorithmError> {
    let max = limits::max_arity();
    if n > max {
        return Err(AlgorithmError::ArityTooLarge { n, max });
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DjVerdict {
    Constant,
    Balanced,
}

#[derive(Debug, Clone)]
pub struct DjRun {
    pub verdict: DjVerdict,
    /// Possible outcomes of measuring the x register.
    pub outcomes: OutcomeSet,
    pub final_state: StateVector<Fp2Element>,
    pub oracle_evals: u64,
}

/// Deutsch-Jozsa with the field's unitary Hadamard.
///
/// The register is `|y>|x>` with `y` prepared as `H|1>`, so `U_f` kicks
/// back the phase `(-1)^f(x)`. Constant iff `x = 0..0` is certain,
/// balanced iff it is impossible.
pub fn deutsch_jozsa(f: &OracleTable, field: FieldSpec) -> Result<DjRun, AlgorithmError> {
    require_quadratic(field)?;
    let n = f.arity();
    check_arity(n)?;
    let h = hadamard(field)?.operator;
    let qubits = n + 1;
    let half = 1usize << n;

    let before = f.eval_count();
    let mut state = StateVector::<Fp2Element>::basis(field, 2 * half, half);
    state = apply_to_qubits(&state, &h, 0..qubits, qubits)?;
    state = f.apply_xor(&state)?;
    state = apply_to_qubits(&state, &h, 1..qubits, qubits)?;

    let outcomes = OutcomeSet::of(&state)?.marginal_low(n);
    let verdict = match outcomes.classify(0) {
        Possibility::Certain => DjVerdict::Constant,
        Possibility::Impossible => DjVerdict::Balanced,
        Possibility::Possible => return Err(AlgorithmError::PromiseViolated),
    };
    Ok(DjRun {
        verdict,
        outcomes,
        final_state: state,
        oracle_evals: f.eval_count() - before,
    })
}

fn check_database_size(n: u64, field: FieldSpec) -> Result<(), AlgorithmError> {
    if n < 2 || !n.is_power_of_two() {
        return Err(AlgorithmError::NotPowerOfTwo(n));
    }
    if n.is_multiple_of(field.p()) {
        return Err(AlgorithmError::NotInvertibleN { n, p: field.p() });
    }
    Ok(())
}

/// `N x N` matrix with `-1 + 2/N` on the diagonal and `2/N` elsewhere.
pub fn grover_diffusion(n: u64, field: FieldSpec) -> Result<Operator<Fp2Element>, AlgorithmError> {
    require_quadratic(field)?;
    check_database_size(n, field)?;
    let two_over_n = diffusion_weight(n, field)?;
    let minus_one = -Fp2Element::one(field);
    Ok(Operator::from_fn(n as usize, n as usize, |r, c| {
        if r == c {
            minus_one + two_over_n
        } else {
            two_over_n
        }
    }))
}

fn diffusion_weight(n: u64, field: FieldSpec) -> Result<Fp2Element, AlgorithmError> {
    let n_inv = Fp2Element::from_i64(field, n as i64)
        .inverse()
        .map_err(|_| AlgorithmError::NotInvertibleN { n, p: field.p() })?;
    Ok(Fp2Element::from_i64(field, 2) * n_inv)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroverConfig {
    pub database_size: u64,
    pub field: FieldSpec,
    pub iterations: u64,
}

impl GroverConfig {
    /// `iterations` defaults to `round(sqrt(N))`.
    pub fn new(database_size: u64, field: FieldSpec, iterations: Option<u64>) -> Result<Self, AlgorithmError> {
        require_quadratic(field)?;
        check_database_size(database_size, field)?;
        let iterations = iterations.unwrap_or_else(|| (database_size as f64).sqrt().round() as u64);
        Ok(GroverConfig {
            database_size,
            field,
            iterations,
        })
    }

    fn arity(&self) -> usize {
        self.database_size.trailing_zeros() as usize
    }
}

#[derive(Debug, Clone)]
pub struct GroverRun {
    pub outcomes: OutcomeSet,
    pub final_state: StateVector<Fp2Element>,
    pub oracle_evals: u64,
}

impl GroverRun {
    /// Whether the marked index is the only possible outcome.
    pub fn found(&self, marked: usize) -> bool {
        self.outcomes.classify(marked) == Possibility::Certain
    }
}

struct GroverSetup {
    oracle: OracleTable,
    weight: Fp2Element,
    start: StateVector<Fp2Element>,
}

fn grover_setup(marked: usize, cfg: &GroverConfig) -> Result<GroverSetup, AlgorithmError> {
    require_quadratic(cfg.field)?;
    check_database_size(cfg.database_size, cfg.field)?;
    if marked as u64 >= cfg.database_size {
        return Err(AlgorithmError::MarkedOutOfRange {
            marked,
            size: cfg.database_size,
        });
    }
    check_arity(cfg.arity())?;
    let ones = StateVector::<Fp2Element>::from_ints(cfg.field, &vec![1; cfg.database_size as usize]);
    let start = match normalize(&ones) {
        Ok(s) => s.vector().clone(),
        Err(DiscreteError::IsotropicVector(_)) => return Err(AlgorithmError::IsotropicStart),
        Err(e) => return Err(e.into()),
    };
    Ok(GroverSetup {
        oracle: OracleTable::unique_sat(cfg.arity(), Some(marked))?,
        weight: diffusion_weight(cfg.database_size, cfg.field)?,
        start,
    })
}

/// One Grover step: phase-flip the marked entry, then apply the diffusion
/// matrix using `D v = (2/N) sum(v) - v`.
fn grover_step(setup: &GroverSetup, state: &StateVector<Fp2Element>) -> Result<StateVector<Fp2Element>, AlgorithmError> {
    let flipped = setup.oracle.apply_phase(state)?;
    let field = state.field();
    let sum = flipped
        .entries()
        .iter()
        .fold(Fp2Element::zero(field), |acc, &e| acc + e);
    let mean = setup.weight * sum;
    Ok(StateVector::new(flipped.entries().iter().map(|&e| mean - e).collect())?)
}

/// Runs `cfg.iterations` Grover iterations from the normalized uniform
/// state and reports the possible outcomes.
pub fn grover(marked: usize, cfg: &GroverConfig) -> Result<GroverRun, AlgorithmError> {
    let setup = grover_setup(marked, cfg)?;
    let mut state = setup.start.clone();
    for _ in 0..cfg.iterations {
        state = grover_step(&setup, &state)?;
    }
    Ok(GroverRun {
        outcomes: OutcomeSet::of(&state)?,
        final_state: state,
        oracle_evals: setup.oracle.eval_count(),
    })
}

/// The first iteration count in `1..=max_iterations` after which the
/// support is exactly `{marked}`.
pub fn grover_first_singleton(
    marked: usize,
    cfg: &GroverConfig,
    max_iterations: u64,
) -> Result<Option<u64>, AlgorithmError> {
    let setup = grover_setup(marked, cfg)?;
    let mut state = setup.start.clone();
    for k in 1..=max_iterations {
        state = grover_step(&setup, &state)?;
        if state.support() == [marked] {
            return Ok(Some(k));
        }
    }
    Ok(None)
}

/// Multiplicative order of `a` modulo the prime `p`.
pub fn multiplicative_order(a: u64, p: u64) -> Result<u64, AlgorithmError> {
    let field = FieldSpec::prime(p)?;
    let a = FpElement::new(field, a as i64);
    if a.is_zero() {
        return Err(AlgorithmError::EvenCharacteristic);
    }
    let mut acc = a;
    let mut k = 1;
    while !acc.is_one() {
        acc = acc * a;
        k += 1;
    }
    Ok(k)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SupernaturalReport {
    pub p: u64,
    pub n: u64,
    /// `p | 2^n - 1`.
    pub divides: bool,
    /// Smallest `n' >= n` with `p | 2^n' - 1`, when `n` itself fails.
    pub padded_n: Option<u64>,
}

pub fn supernatural_condition(p: u64, n: u64) -> Result<SupernaturalReport, AlgorithmError> {
    let field = FieldSpec::prime(p)?;
    if p == 2 {
        return Err(AlgorithmError::EvenCharacteristic);
    }
    let divides = FpElement::new(field, 2).pow(n).is_one();
    Ok(SupernaturalReport {
        p,
        n,
        divides,
        padded_n: if divides { None } else { Some(pad_database(p, n)?) },
    })
}

/// Least `n' >= n` with `2^n' = 1 (mod p)`: the least multiple of
/// `ord_p(2)` that is at least `n`.
pub fn pad_database(p: u64, n: u64) -> Result<u64, AlgorithmError> {
    if p == 2 {
        return Err(AlgorithmError::EvenCharacteristic);
    }
    let ord = multiplicative_order(2, p)?;
    Ok(n.div_ceil(ord).max(1) * ord)
}

#[derive(Debug, Clone)]
pub struct DiscreteSatRun {
    pub verdict: Verdict,
    /// Amplitude of `|0>|0..0>` before measurement.
    pub amplitude: Fp2Element,
    pub outcomes: OutcomeSet,
    pub final_state: StateVector<Fp2Element>,
    pub supernatural: bool,
    pub oracle_evals: u64,
}

/// UNIQUE-SAT with `y = |0>`, `H` on every x qubit, `U_f`, `H` on every
/// x qubit, then a standard-basis measurement.
///
/// The `|0>|0..0>` amplitude is `s^(2n)` times the number of
/// non-satisfying inputs, so it vanishes for a satisfiable `f` exactly
/// when `p | 2^n - 1`. Under that condition the outcome sets of the two
/// cases are disjoint and the verdict is deterministic. Otherwise
/// `|0>|0..0>` stays possible in both cases and the run is
/// `Inconclusive`.
pub fn unique_sat_discrete(f: &OracleTable, field: FieldSpec) -> Result<DiscreteSatRun, AlgorithmError> {
    require_quadratic(field)?;
    let n = f.arity();
    check_arity(n)?;
    let h = hadamard(field)?.operator;
    let qubits = n + 1;
    let supernatural = supernatural_condition(field.p(), n as u64)?.divides;

    let before = f.eval_count();
    let mut state = StateVector::<Fp2Element>::basis(field, 2 << n, 0);
    state = apply_to_qubits(&state, &h, 1..qubits, qubits)?;
    state = f.apply_xor(&state)?;
    state = apply_to_qubits(&state, &h, 1..qubits, qubits)?;

    let amplitude = state.get(0);
    let outcomes = OutcomeSet::of(&state)?;
    let verdict = if amplitude.is_zero() {
        Verdict::Sat
    } else if supernatural && outcomes.possible() == [0] {
        Verdict::Unsat
    } else {
        Verdict::Inconclusive
    };
    Ok(DiscreteSatRun {
        verdict,
        amplitude,
        outcomes,
        final_state: state,
        supernatural,
        oracle_evals: f.eval_count() - before,
    })
}
