//! Local gate application on multi-qubit states without materializing
//! the full Kronecker product. Qubit 0 is the most significant index bit.

use super::{LinalgError, Operator, StateVector};
use crate::field::FieldElement;

fn check_register<F: FieldElement>(state: &StateVector<F>, num_qubits: usize) -> Result<(), LinalgError> {
    let dim = 1usize << num_qubits;
    if state.dim() != dim {
        return Err(LinalgError::DimensionMismatch {
            left: dim,
            right: state.dim(),
        });
    }
    Ok(())
}

/// Applies a 2x2 `gate` to `qubit` of an `num_qubits`-qubit state, i.e.
/// `I (x) .. (x) gate (x) .. (x) I`.
pub fn apply_qubit_gate<F: FieldElement>(
    state: &StateVector<F>,
    gate: &Operator<F>,
    qubit: usize,
    num_qubits: usize,
) -> Result<StateVector<F>, LinalgError> {
    if gate.rows() != 2 || gate.cols() != 2 {
        return Err(LinalgError::DimensionMismatch {
            left: 2,
            right: gate.rows().max(gate.cols()),
        });
    }
    assert!(qubit < num_qubits, "qubit {qubit} out of range");
    check_register(state, num_qubits)?;
    state.field_check(gate.field())?;
    let bit = 1usize << (num_qubits - 1 - qubit);
    let (g00, g01, g10, g11) = (gate.get(0, 0), gate.get(0, 1), gate.get(1, 0), gate.get(1, 1));
    let mut out = state.clone();
    let entries = out.entries_mut();
    for lo in 0..entries.len() {
        if lo & bit != 0 {
            continue;
        }
        let hi = lo | bit;
        let (a, b) = (entries[lo], entries[hi]);
        entries[lo] = g00 * a + g01 * b;
        entries[hi] = g10 * a + g11 * b;
    }
    Ok(out)
}

/// Applies the same 2x2 gate to each listed qubit.
pub fn apply_to_qubits<F: FieldElement>(
    state: &StateVector<F>,
    gate: &Operator<F>,
    qubits: impl IntoIterator<Item = usize>,
    num_qubits: usize,
) -> Result<StateVector<F>, LinalgError> {
    let mut out = state.clone();
    for q in qubits {
        out = apply_qubit_gate(&out, gate, q, num_qubits)?;
    }
    Ok(out)
}

/// Moves the amplitude at index `k` to index `perm(k)`. `perm` must be a
/// bijection on `0..dim`.
pub fn apply_permutation<F: FieldElement>(
    state: &StateVector<F>,
    perm: impl Fn(usize) -> usize,
) -> StateVector<F> {
    let mut out = StateVector::zeros(state.field(), state.dim());
    let entries = out.entries_mut();
    for (k, &a) in state.entries().iter().enumerate() {
        entries[perm(k)] = a;
    }
    out
}
