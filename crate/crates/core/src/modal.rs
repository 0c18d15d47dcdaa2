//! Modal quantum theory over a prime field.
//!
//! Any nonzero vector is a state and any invertible matrix is a valid
//! evolution. Measurement in the standard basis is possibilistic: it tells
//! which outcomes can occur, never how likely they are.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::{FieldElement, FieldError, FieldSpec, FpElement};
use crate::limits;
use crate::linalg::{apply_permutation, apply_qubit_gate, apply_to_qubits, LinalgError, OracleTable, Operator, StateVector};

/// Largest characteristic `modal_gates_1q` will enumerate (`p^4` candidates).
pub const MAX_GATE_ENUMERATION_P: u64 = 11;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModalError {
    #[error("the zero vector is not a physical state")]
    ZeroState,
    #[error("arity {n} exceeds the dense-simulation cap {max}")]
    ArityTooLarge { n: usize, max: usize },
    #[error("p = {p} exceeds the enumeration cap {max}")]
    TooLarge { p: u64, max: u64 },
    #[error("modal theory needs a prime field, got {0}")]
    NotPrimeField(FieldSpec),
    #[error("no marked record: both halves of a split were unsatisfiable")]
    NoMarked,
    #[error("more than one marked record: both halves of a split were satisfiable")]
    MultiplyMarked,
    #[error("oracle has {0} satisfying assignments; at most one is allowed")]
    MultipleSatisfying(usize),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Decision returned by the UNIQUE-SAT circuits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Sat,
    Unsat,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Sat => "SAT",
            Verdict::Unsat => "UNSAT",
            Verdict::Inconclusive => "INCONCLUSIVE",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Possibility {
    Certain,
    Possible,
    Impossible,
}

/// The set of standard-basis outcomes with nonzero amplitude.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OutcomeSet {
    dim: usize,
    possible: BTreeSet<usize>,
}

impl OutcomeSet {
    /// Reads off the support of `v`. Fails on the zero vector.
    pub fn of<F: FieldElement>(v: &StateVector<F>) -> Result<Self, ModalError> {
        let possible: BTreeSet<usize> = v.support().into_iter().collect();
        if possible.is_empty() {
            return Err(ModalError::ZeroState);
        }
        Ok(OutcomeSet {
            dim: v.dim(),
            possible,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Possible outcomes, ascending.
    pub fn possible(&self) -> Vec<usize> {
        self.possible.iter().copied().collect()
    }

    pub fn len(&self) -> usize {
        self.possible.len()
    }

    pub fn is_empty(&self) -> bool {
        self.possible.is_empty()
    }

    pub fn contains(&self, k: usize) -> bool {
        self.possible.contains(&k)
    }

    pub fn is_singleton(&self) -> bool {
        self.possible.len() == 1
    }

    pub fn classify(&self, k: usize) -> Possibility {
        match (self.contains(k), self.is_singleton()) {
            (false, _) => Possibility::Impossible,
            (true, true) => Possibility::Certain,
            (true, false) => Possibility::Possible,
        }
    }

    /// Outcomes of measuring only the `low_bits` least significant qubits.
    pub fn marginal_low(&self, low_bits: usize) -> OutcomeSet {
        let mask = (1usize << low_bits) - 1;
        OutcomeSet {
            dim: 1 << low_bits,
            possible: self.possible.iter().map(|&k| k & mask).collect(),
        }
    }
}

impl Serialize for OutcomeSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.possible.serialize(s)
    }
}

/// A nonzero vector over a prime field.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ModalState {
    vector: StateVector<FpElement>,
}

impl ModalState {
    pub fn new(vector: StateVector<FpElement>) -> Result<Self, ModalError> {
        if vector.is_zero() {
            return Err(ModalError::ZeroState);
        }
        Ok(ModalState { vector })
    }

    pub fn vector(&self) -> &StateVector<FpElement> {
        &self.vector
    }

    /// Number of qubits when the dimension is a power of two.
    pub fn qubit_count(&self) -> Option<usize> {
        let d = self.vector.dim();
        d.is_power_of_two().then(|| d.trailing_zeros() as usize)
    }
}

fn require_prime(field: FieldSpec) -> Result<(), ModalError> {
    if field.degree() == 1 {
        Ok(())
    } else {
        Err(ModalError::NotPrimeField(field))
    }
}

/// Identity.
pub fn x0(field: FieldSpec) -> Operator<FpElement> {
    Operator::identity(field, 2)
}

/// Bit flip.
pub fn x1(field: FieldSpec) -> Operator<FpElement> {
    Operator::from_rows(field, &[&[0, 1], &[1, 0]])
}

/// `S = [[1, 0], [1, 1]]`.
pub fn s_gate(field: FieldSpec) -> Operator<FpElement> {
    Operator::from_rows(field, &[&[1, 0], &[1, 1]])
}

/// `S^dagger = [[1, 1], [0, 1]]`, the transpose of `S`.
pub fn s_dagger(field: FieldSpec) -> Operator<FpElement> {
    s_gate(field).conjugate_transpose()
}

/// All invertible 2x2 matrices over `F_p`, in lexicographic order of their
/// row-major entries.
pub fn modal_gates_1q(p: u64) -> Result<Vec<Operator<FpElement>>, ModalError> {
    let field = FieldSpec::prime(p)?;
    if p > MAX_GATE_ENUMERATION_P {
        return Err(ModalError::TooLarge {
            p,
            max: MAX_GATE_ENUMERATION_P,
        });
    }
    let elems = FpElement::enumerate(field)?;
    let mut gates = Vec::new();
    for &a in &elems {
        for &b in &elems {
            for &c in &elems {
                for &d in &elems {
                    let m = Operator::new(2, 2, vec![a, b, c, d])?;
                    if m.is_invertible()? {
                        gates.push(m);
                    }
                }
            }
        }
    }
    Ok(gates)
}

/// Every nonzero vector of dimension `dim` over `field`.
pub fn modal_states(field: FieldSpec, dim: usize) -> Result<Vec<ModalState>, ModalError> {
    require_prime(field)?;
    let elems = FpElement::enumerate(field)?;
    let q = elems.len();
    let total = (q as u64).checked_pow(dim as u32).unwrap_or(u64::MAX);
    if dim == 0 || total > crate::field::ENUMERATION_LIMIT {
        return Err(ModalError::TooLarge {
            p: field.p(),
            max: crate::field::ENUMERATION_LIMIT,
        });
    }
    let mut states = Vec::new();
    for idx in 1..total as usize {
        let mut rest = idx;
        let mut entries = vec![elems[0]; dim];
        for slot in entries.iter_mut().rev() {
            *slot = elems[rest % q];
            rest /= q;
        }
        states.push(ModalState::new(StateVector::new(entries)?)?);
    }
    Ok(states)
}

pub fn measure_possibilistic(s: &ModalState) -> OutcomeSet {
    OutcomeSet::of(s.vector()).expect("modal states are nonzero")
}

/// Outcome of one run of the modal UNIQUE-SAT circuit.
#[derive(Debug, Clone)]
pub struct ModalSatRun {
    pub verdict: Verdict,
    pub final_state: ModalState,
    pub outcomes: OutcomeSet,
    pub oracle_evals: u64,
}

fn check_arity(n: usize) -> Result<(), ModalError> {
    let max = limits::max_arity();
    if n > max {
        return Err(ModalError::ArityTooLarge { n, max });
    }
    Ok(())
}

/// Decides black-box UNIQUE-SAT over `F_2` with one application of `U_f`.
///
/// The register is `|y>|x_1..x_n>` with `y` as the most significant bit.
/// The circuit applies `S` to every `x` qubit, `U_f`, `S` to every `x`
/// qubit again, `S^dagger` to `y`, the fan-out `sum_a |a><a| (x) X_a^n`,
/// and `S^dagger` to `y`. The function is unsatisfiable iff the final
/// support is exactly `{|0>|0..0>}`.
///
/// Tables with two or more satisfying inputs are outside the promise; the
/// decision rule is applied anyway. See [`unique_sat_modal_strict`].
pub fn unique_sat_modal(f: &OracleTable) -> Result<ModalSatRun, ModalError> {
    let n = f.arity();
    check_arity(n)?;
    let field = FieldSpec::prime(2)?;
    let qubits = n + 1;
    let half = 1usize << n;
    let x_register = 1..qubits;

    let before = f.eval_count();
    let mut state = StateVector::<FpElement>::basis(field, 2 * half, 0);
    state = apply_to_qubits(&state, &s_gate(field), x_register.clone(), qubits)?;
    state = f.apply_xor(&state)?;
    state = apply_to_qubits(&state, &s_gate(field), x_register, qubits)?;
    state = apply_qubit_gate(&state, &s_dagger(field), 0, qubits)?;
    // y = 1 flips every x bit
    state = apply_permutation(&state, |k| if k >= half { k ^ (half - 1) } else { k });
    state = apply_qubit_gate(&state, &s_dagger(field), 0, qubits)?;

    let final_state = ModalState::new(state)?;
    let outcomes = measure_possibilistic(&final_state);
    let verdict = if outcomes.possible() == [0] {
        Verdict::Unsat
    } else {
        Verdict::Sat
    };
    Ok(ModalSatRun {
        verdict,
        final_state,
        outcomes,
        oracle_evals: f.eval_count() - before,
    })
}

/// Like [`unique_sat_modal`] but rejects tables outside the promise
/// before running.
pub fn unique_sat_modal_strict(f: &OracleTable) -> Result<ModalSatRun, ModalError> {
    let count = f.satisfying_count();
    if count > 1 {
        return Err(ModalError::MultipleSatisfying(count));
    }
    unique_sat_modal(f)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SearchMode {
    /// One restricted-oracle run per halving: `log2 N` evaluations total.
    #[default]
    Fast,
    /// Tests both halves at every split so a missing or duplicated mark is
    /// reported: `2 log2 N` evaluations total.
    Checked,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchRun {
    pub index: usize,
    pub oracle_evals: u64,
}

/// Finds the marked record of `db` by binary search, deciding each half
/// with [`unique_sat_modal`] on `f_A(x) = f(x) AND x in A`.
///
/// The evaluations spent on restricted oracles are also added to `db`'s
/// counter. In [`SearchMode::Fast`] a table with no mark yields the last
/// index and one with several marks yields one of them.
pub fn database_search_modal(db: &OracleTable, mode: SearchMode) -> Result<SearchRun, ModalError> {
    check_arity(db.arity())?;
    let (mut lo, mut hi) = (0usize, db.size());
    let mut evals = 0u64;
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        let lower = db.restrict(lo..mid);
        let lower_sat = unique_sat_modal(&lower)?.verdict == Verdict::Sat;
        evals += lower.eval_count();
        if mode == SearchMode::Checked {
            let upper = db.restrict(mid..hi);
            let upper_sat = unique_sat_modal(&upper)?.verdict == Verdict::Sat;
            evals += upper.eval_count();
            match (lower_sat, upper_sat) {
                (false, false) => return Err(ModalError::NoMarked),
                (true, true) => return Err(ModalError::MultiplyMarked),
                _ => {}
            }
        }
        if lower_sat {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    db.record_evals(evals);
    Ok(SearchRun {
        index: lo,
        oracle_evals: evals,
    })
}
