use serde::ser::SerializeStruct;
use serde::Serialize;

use super::LinalgError;
use crate::field::{FieldElement, FieldError, FieldSpec};

/// A column vector over a finite field.
///
/// The zero vector is representable (it shows up mid-computation); the
/// state-level wrappers reject it.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StateVector<F> {
    entries: Vec<F>,
}

impl<F: FieldElement> StateVector<F> {
    /// Requires at least one entry, all over one field.
    pub fn new(entries: Vec<F>) -> Result<Self, LinalgError> {
        let first = entries.first().ok_or(LinalgError::Empty)?;
        for e in &entries[1..] {
            first.same_field(e)?;
        }
        Ok(StateVector { entries })
    }

    pub fn from_ints(field: FieldSpec, values: &[i64]) -> Self {
        assert!(!values.is_empty(), "empty vector");
        StateVector {
            entries: values.iter().map(|&v| F::from_i64(field, v)).collect(),
        }
    }

    pub fn zeros(field: FieldSpec, dim: usize) -> Self {
        assert!(dim > 0, "empty vector");
        StateVector {
            entries: vec![F::zero(field); dim],
        }
    }

    /// Computational basis ket `|k>`.
    pub fn basis(field: FieldSpec, dim: usize, k: usize) -> Self {
        assert!(k < dim, "basis index {k} out of range for dimension {dim}");
        let mut v = Self::zeros(field, dim);
        v.entries[k] = F::one(field);
        v
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn field(&self) -> FieldSpec {
        self.entries[0].field()
    }

    pub fn entries(&self) -> &[F] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<F> {
        self.entries
    }

    pub fn get(&self, k: usize) -> F {
        self.entries[k]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    /// Indices with nonzero amplitude, ascending.
    pub fn support(&self) -> Vec<usize> {
        self.entries
            .iter()
            .enumerate()
            .filter(|(_, e)| !e.is_zero())
            .map(|(k, _)| k)
            .collect()
    }

    pub fn scale(&self, s: F) -> Self {
        StateVector {
            entries: self.entries.iter().map(|&e| s * e).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, LinalgError> {
        if self.dim() != other.dim() {
            return Err(LinalgError::DimensionMismatch {
                left: self.dim(),
                right: other.dim(),
            });
        }
        self.field_check(other.field())?;
        Ok(StateVector {
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(&a, &b)| a + b)
                .collect(),
        })
    }

    /// Kronecker product `self (x) other`.
    pub fn tensor(&self, other: &Self) -> Result<Self, LinalgError> {
        self.field_check(other.field())?;
        Ok(StateVector {
            entries: self
                .entries
                .iter()
                .flat_map(|&a| other.entries.iter().map(move |&b| a * b))
                .collect(),
        })
    }

    /// Whether `other = s * self` for some scalar `s` (zero allowed).
    pub fn is_multiple_of(&self, other: &Self) -> bool {
        if self.dim() != other.dim() || self.field() != other.field() {
            return false;
        }
        let Some(k) = self.entries.iter().position(|e| !e.is_zero()) else {
            return other.is_zero();
        };
        let Ok(s) = other.entries[k].checked_div(self.entries[k]) else {
            return false;
        };
        self.scale(s) == *other
    }

    pub(crate) fn field_check(&self, other: FieldSpec) -> Result<(), FieldError> {
        if self.field() == other {
            Ok(())
        } else {
            Err(FieldError::ContextMismatch {
                left: self.field(),
                right: other,
            })
        }
    }

    pub(crate) fn from_entries_unchecked(entries: Vec<F>) -> Self {
        debug_assert!(!entries.is_empty());
        StateVector { entries }
    }

    pub(crate) fn entries_mut(&mut self) -> &mut [F] {
        &mut self.entries
    }
}

impl<F: FieldElement + Serialize> Serialize for StateVector<F> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("StateVector", 2)?;
        st.serialize_field("dim", &self.dim())?;
        st.serialize_field("entries", &self.entries)?;
        st.end()
    }
}
