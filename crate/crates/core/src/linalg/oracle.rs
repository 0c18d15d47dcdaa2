use std::ops::Range;
use std::sync::atomic::{AtomicU64, Ordering};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{LinalgError, Operator, StateVector};
use crate::field::{FieldElement, FieldSpec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleTableError {
    #[error("oracle arity must be at least 1")]
    ZeroArity,
    #[error("arity {0} is too large for a truth table")]
    ArityTooLarge(usize),
    #[error("truth table for arity {n} needs {expected} outputs, got {got}")]
    WrongLength { n: usize, expected: usize, got: usize },
    #[error("output {index} is {value}; only 0 and 1 are allowed")]
    NotBoolean { index: usize, value: u64 },
    #[error("index {index} is outside the domain of size {size}")]
    OutOfRange { index: usize, size: usize },
}

/// Truth table of a classical `f: {0,1}^n -> {0,1}` plus a counter of
/// black-box applications.
///
/// Input `x` is indexed by its binary value with `x_1` as the most
/// significant bit. The counter records applications of the reversible
/// embedding `U_f` (or its phase form) to a whole state; classical
/// lookups through [`OracleTable::value`] are free.
#[derive(Debug, Serialize, Deserialize)]
#[serde(try_from = "RawTable", into = "RawTable")]
pub struct OracleTable {
    n: usize,
    outputs: Vec<bool>,
    evals: AtomicU64,
}

#[derive(Serialize, Deserialize)]
struct RawTable {
    n: usize,
    outputs: Vec<u64>,
}

impl TryFrom<RawTable> for OracleTable {
    type Error = OracleTableError;

    fn try_from(raw: RawTable) -> Result<Self, Self::Error> {
        let outputs = raw
            .outputs
            .iter()
            .enumerate()
            .map(|(index, &value)| match value {
                0 => Ok(false),
                1 => Ok(true),
                _ => Err(OracleTableError::NotBoolean { index, value }),
            })
            .collect::<Result<Vec<_>, _>>()?;
        OracleTable::new(raw.n, outputs)
    }
}

impl From<OracleTable> for RawTable {
    fn from(t: OracleTable) -> Self {
        RawTable {
            n: t.n,
            outputs: t.outputs.iter().map(|&b| b as u64).collect(),
        }
    }
}

impl Clone for OracleTable {
    fn clone(&self) -> Self {
        OracleTable {
            n: self.n,
            outputs: self.outputs.clone(),
            evals: AtomicU64::new(self.eval_count()),
        }
    }
}

impl PartialEq for OracleTable {
    /// Compares truth tables only; counters are ignored.
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.outputs == other.outputs
    }
}

impl Eq for OracleTable {}

impl OracleTable {
    pub fn new(n: usize, outputs: Vec<bool>) -> Result<Self, OracleTableError> {
        if n == 0 {
            return Err(OracleTableError::ZeroArity);
        }
        if n >= usize::BITS as usize - 1 {
            return Err(OracleTableError::ArityTooLarge(n));
        }
        let expected = 1usize << n;
        if outputs.len() != expected {
            return Err(OracleTableError::WrongLength {
                n,
                expected,
                got: outputs.len(),
            });
        }
        Ok(OracleTable {
            n,
            outputs,
            evals: AtomicU64::new(0),
        })
    }

    pub fn from_fn(n: usize, f: impl Fn(usize) -> bool) -> Result<Self, OracleTableError> {
        if n >= usize::BITS as usize - 1 {
            return Err(OracleTableError::ArityTooLarge(n));
        }
        Self::new(n, (0..1usize << n).map(f).collect())
    }

    pub fn constant(n: usize, value: bool) -> Result<Self, OracleTableError> {
        Self::from_fn(n, |_| value)
    }

    /// True exactly at `marked`, or nowhere when `marked` is `None`.
    pub fn unique_sat(n: usize, marked: Option<usize>) -> Result<Self, OracleTableError> {
        if let Some(m) = marked {
            let size = 1usize.checked_shl(n as u32).unwrap_or(0);
            if m >= size {
                return Err(OracleTableError::OutOfRange { index: m, size });
            }
        }
        Self::from_fn(n, |x| Some(x) == marked)
    }

    /// `f(x) = parity(x & mask)`; balanced for every nonzero mask.
    pub fn parity(n: usize, mask: usize) -> Result<Self, OracleTableError> {
        Self::from_fn(n, |x| (x & mask).count_ones() % 2 == 1)
    }

    pub fn arity(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> usize {
        self.outputs.len()
    }

    pub fn outputs(&self) -> &[bool] {
        &self.outputs
    }

    /// Classical lookup; not counted.
    pub fn value(&self, x: usize) -> bool {
        self.outputs[x]
    }

    pub fn satisfying_count(&self) -> usize {
        self.outputs.iter().filter(|&&b| b).count()
    }

    pub fn satisfying(&self) -> Vec<usize> {
        (0..self.size()).filter(|&x| self.outputs[x]).collect()
    }

    pub fn is_constant(&self) -> bool {
        self.outputs.iter().all(|&b| b == self.outputs[0])
    }

    pub fn is_balanced(&self) -> bool {
        self.satisfying_count() * 2 == self.size()
    }

    pub fn eval_count(&self) -> u64 {
        self.evals.load(Ordering::Relaxed)
    }

    pub fn reset_count(&self) {
        self.evals.store(0, Ordering::Relaxed);
    }

    pub(crate) fn record_evals(&self, k: u64) {
        self.evals.fetch_add(k, Ordering::Relaxed);
    }

    /// `f_A(x) = f(x) AND x in range`, with a fresh counter.
    pub fn restrict(&self, range: Range<usize>) -> OracleTable {
        OracleTable {
            n: self.n,
            outputs: (0..self.size())
                .map(|x| self.outputs[x] && range.contains(&x))
                .collect(),
            evals: AtomicU64::new(0),
        }
    }

    /// Applies `U_f |y>|x> = |y + f(x)>|x>` to a `2^(n+1)`-dimensional
    /// state (`y` is the high-order bit). Counts one evaluation.
    pub fn apply_xor<F: FieldElement>(&self, state: &StateVector<F>) -> Result<StateVector<F>, LinalgError> {
        let dim = 2 * self.size();
        if state.dim() != dim {
            return Err(LinalgError::DimensionMismatch {
                left: dim,
                right: state.dim(),
            });
        }
        self.record_evals(1);
        let half = self.size();
        let mut out = state.clone();
        let entries = out.entries_mut();
        for x in 0..half {
            if self.outputs[x] {
                entries.swap(x, half + x);
            }
        }
        Ok(out)
    }

    /// Applies the phase form `|x> -> (-1)^f(x) |x>` to a
    /// `2^n`-dimensional state. Counts one evaluation.
    pub fn apply_phase<F: FieldElement>(&self, state: &StateVector<F>) -> Result<StateVector<F>, LinalgError> {
        if state.dim() != self.size() {
            return Err(LinalgError::DimensionMismatch {
                left: self.size(),
                right: state.dim(),
            });
        }
        self.record_evals(1);
        let mut out = state.clone();
        for (x, e) in out.entries_mut().iter_mut().enumerate() {
            if self.outputs[x] {
                *e = -*e;
            }
        }
        Ok(out)
    }
}

/// The dense `2^(n+1)`-dimensional permutation matrix of `U_f` over
/// `field`. Building the matrix does not count as an evaluation.
pub fn build_oracle<F: FieldElement>(f: &OracleTable, field: FieldSpec) -> Operator<F> {
    let half = f.size();
    let dim = 2 * half;
    let target = |col: usize| {
        let (y, x) = (col / half, col % half);
        (y ^ f.value(x) as usize) * half + x
    };
    Operator::from_fn(dim, dim, |r, c| F::from_i64(field, (target(c) == r) as i64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{FpElement, Fp2Element};

    #[test]
    fn constant_false_is_identity() {
        let f2 = FieldSpec::prime(2).unwrap();
        let f = OracleTable::constant(1, false).unwrap();
        assert_eq!(build_oracle::<FpElement>(&f, f2), Operator::identity(f2, 4));
        assert_eq!(f.eval_count(), 0);
    }

    #[test]
    fn identity_function_swaps_pair() {
        let f2 = FieldSpec::prime(2).unwrap();
        let f = OracleTable::from_fn(1, |x| x == 1).unwrap();
        // |0>|1> <-> |1>|1>, i.e. indices 1 and 3
        let expected = Operator::<FpElement>::from_rows(
            f2,
            &[&[1, 0, 0, 0], &[0, 0, 0, 1], &[0, 0, 1, 0], &[0, 1, 0, 0]],
        );
        assert_eq!(build_oracle::<FpElement>(&f, f2), expected);
    }

    #[test]
    fn every_oracle_is_a_unitary_permutation() {
        let f9 = FieldSpec::quadratic(3).unwrap();
        for n in 1..=2 {
            for bits in 0..1usize << (1 << n) {
                let f = OracleTable::from_fn(n, |x| bits >> x & 1 == 1).unwrap();
                let u = build_oracle::<Fp2Element>(&f, f9);
                assert!(u.is_permutation());
                assert!(u.is_unitary().unwrap());
                assert!(u.is_invertible().unwrap());
            }
        }
    }

    #[test]
    fn apply_xor_matches_matrix_and_counts() {
        let f9 = FieldSpec::quadratic(3).unwrap();
        let f = OracleTable::parity(2, 0b11).unwrap();
        let v = StateVector::<Fp2Element>::from_ints(f9, &[1, 2, 0, 1, 1, 1, 2, 0]);
        let direct = f.apply_xor(&v).unwrap();
        assert_eq!(direct, build_oracle(&f, f9).apply(&v).unwrap());
        assert_eq!(f.eval_count(), 1);
        f.apply_phase(&StateVector::<Fp2Element>::from_ints(f9, &[1, 1, 1, 1]))
            .unwrap();
        assert_eq!(f.eval_count(), 2);
        assert!(f.apply_phase(&v).is_err());
    }

    #[test]
    fn table_validation() {
        assert_eq!(
            OracleTable::new(2, vec![false; 3]),
            Err(OracleTableError::WrongLength {
                n: 2,
                expected: 4,
                got: 3
            })
        );
        assert_eq!(OracleTable::new(0, vec![false]), Err(OracleTableError::ZeroArity));
        assert!(matches!(
            OracleTable::unique_sat(2, Some(4)),
            Err(OracleTableError::OutOfRange { .. })
        ));
        let t: OracleTable = serde_json::from_str(r#"{"n":1,"outputs":[0,1]}"#).unwrap();
        assert_eq!(t.satisfying(), [1]);
        assert!(serde_json::from_str::<OracleTable>(r#"{"n":1,"outputs":[0,2]}"#).is_err());
        assert_eq!(serde_json::to_string(&t).unwrap(), r#"{"n":1,"outputs":[0,1]}"#);
    }

    #[test]
    fn restriction() {
        let f = OracleTable::unique_sat(3, Some(5)).unwrap();
        assert_eq!(f.restrict(0..4).satisfying_count(), 0);
        assert_eq!(f.restrict(4..8).satisfying(), [5]);
    }
}
