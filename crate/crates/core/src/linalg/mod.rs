//! Exact vectors and matrices over a finite field.

mod operator;
mod oracle;
mod register;
mod vector;

pub use operator::Operator;
pub use oracle::{build_oracle, OracleTable, OracleTableError};
pub use register::{apply_permutation, apply_qubit_gate, apply_to_qubits};
pub use vector::StateVector;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::{ElementWire, FieldElement, FieldError, FieldSpec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("operator is {rows}x{cols}, not square")]
    NotSquare { rows: usize, cols: usize },
    #[error("vectors and operators must have positive dimension")]
    Empty,
    #[error("entry {0} does not belong to the declared field")]
    BadEntry(usize),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Hermitian dot product `sum_j conj(a_j) b_j`. Over `F_p` conjugation is
/// trivial and this is the plain bilinear form.
pub fn inner_product<F: FieldElement>(
    phi: &StateVector<F>,
    psi: &StateVector<F>,
) -> Result<F, LinalgError> {
    if phi.dim() != psi.dim() {
        return Err(LinalgError::DimensionMismatch {
            left: phi.dim(),
            right: psi.dim(),
        });
    }
    phi.field_check(psi.field())?;
    Ok(phi
        .entries()
        .iter()
        .zip(psi.entries())
        .fold(F::zero(phi.field()), |acc, (a, b)| acc + a.conj() * *b))
}

/// Searches all vectors of dimension `dim` (lexicographic order) for a
/// nonzero `v` with `<v|v> = 0`.
pub fn find_isotropic_vector<F: FieldElement>(
    field: FieldSpec,
    dim: usize,
) -> Result<Option<StateVector<F>>, LinalgError> {
    if dim == 0 {
        return Err(LinalgError::Empty);
    }
    let elems = F::enumerate(field)?;
    let q = elems.len();
    let total = (q as u64).checked_pow(dim as u32).unwrap_or(u64::MAX);
    if total > crate::field::ENUMERATION_LIMIT {
        return Err(FieldError::TooLarge {
            order: total,
            limit: crate::field::ENUMERATION_LIMIT,
        }
        .into());
    }
    let mut digits = vec![0usize; dim];
    for _ in 0..total {
        let v = StateVector::new(digits.iter().map(|&d| elems[d]).collect())?;
        if !v.is_zero() && inner_product(&v, &v)?.is_zero() {
            return Ok(Some(v));
        }
        for d in digits.iter_mut().rev() {
            *d += 1;
            if *d < q {
                break;
            }
            *d = 0;
        }
    }
    Ok(None)
}

/// JSON form `{"dim": d, "entries": [...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VectorWire {
    pub dim: usize,
    pub entries: Vec<ElementWire>,
}

impl VectorWire {
    pub fn into_vector<F: FieldElement>(self, field: FieldSpec) -> Result<StateVector<F>, LinalgError> {
        if self.entries.len() != self.dim {
            return Err(LinalgError::DimensionMismatch {
                left: self.dim,
                right: self.entries.len(),
            });
        }
        let entries = self
            .entries
            .into_iter()
            .enumerate()
            .map(|(k, w)| F::from_wire(field, w).ok_or(LinalgError::BadEntry(k)))
            .collect::<Result<Vec<_>, _>>()?;
        StateVector::new(entries)
    }
}

/// JSON form `{"rows": r, "cols": c, "entries": [...]}`, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OperatorWire {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<ElementWire>,
}

impl OperatorWire {
    pub fn into_operator<F: FieldElement>(self, field: FieldSpec) -> Result<Operator<F>, LinalgError> {
        if self.entries.len() != self.rows * self.cols {
            return Err(LinalgError::DimensionMismatch {
                left: self.rows * self.cols,
                right: self.entries.len(),
            });
        }
        let entries = self
            .entries
            .into_iter()
            .enumerate()
            .map(|(k, w)| F::from_wire(field, w).ok_or(LinalgError::BadEntry(k)))
            .collect::<Result<Vec<_>, _>>()?;
        Operator::new(self.rows, self.cols, entries)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{FpElement, Fp2Element};

    #[test]
    fn inner_product_examples() {
        let f2 = FieldSpec::prime(2).unwrap();
        let plus = StateVector::<FpElement>::from_ints(f2, &[1, 1]);
        assert!(inner_product(&plus, &plus).unwrap().is_zero());

        let f9 = FieldSpec::quadratic(3).unwrap();
        let zero = StateVector::<Fp2Element>::basis(f9, 2, 0);
        assert!(inner_product(&zero, &zero).unwrap().is_one());

        let phi = StateVector::new(vec![Fp2Element::one(f9), Fp2Element::i(f9)]).unwrap();
        assert_eq!(inner_product(&phi, &phi).unwrap(), Fp2Element::new(f9, 2, 0));
    }

    #[test]
    fn inner_product_errors() {
        let f9 = FieldSpec::quadratic(3).unwrap();
        let f49 = FieldSpec::quadratic(7).unwrap();
        let a = StateVector::<Fp2Element>::basis(f9, 2, 0);
        let b = StateVector::<Fp2Element>::basis(f9, 3, 0);
        let c = StateVector::<Fp2Element>::basis(f49, 2, 0);
        assert!(matches!(
            inner_product(&a, &b),
            Err(LinalgError::DimensionMismatch { .. })
        ));
        assert!(matches!(
            inner_product(&a, &c),
            Err(LinalgError::Field(FieldError::ContextMismatch { .. }))
        ));
    }

    #[test]
    fn isotropic_search() {
        let f2 = FieldSpec::prime(2).unwrap();
        let v = find_isotropic_vector::<FpElement>(f2, 2).unwrap().unwrap();
        assert_eq!(v, StateVector::from_ints(f2, &[1, 1]));

        let f9 = FieldSpec::quadratic(3).unwrap();
        let w = find_isotropic_vector::<Fp2Element>(f9, 2).unwrap().unwrap();
        assert!(!w.is_zero());
        assert!(inner_product(&w, &w).unwrap().is_zero());

        // -1 is not a square mod 3, so a^2 + b^2 = 0 forces a = b = 0
        let f3 = FieldSpec::prime(3).unwrap();
        assert_eq!(find_isotropic_vector::<FpElement>(f3, 2).unwrap(), None);
        assert!(find_isotropic_vector::<FpElement>(f3, 3).unwrap().is_some());
    }

    #[test]
    fn wire_forms() {
        let f9 = FieldSpec::quadratic(3).unwrap();
        let wire: OperatorWire =
            serde_json::from_str(r#"{"rows":2,"cols":2,"entries":[[0,0],[0,-1],[0,1],[0,0]]}"#)
                .unwrap();
        let x2 = wire.into_operator::<Fp2Element>(f9).unwrap();
        assert!(x2.is_hermitian().unwrap());
        let json = serde_json::to_string(&x2).unwrap();
        assert_eq!(json, r#"{"rows":2,"cols":2,"entries":[[0,0],[0,-1],[0,1],[0,0]]}"#);

        let f2 = FieldSpec::prime(2).unwrap();
        let v: VectorWire = serde_json::from_str(r#"{"dim":2,"entries":[1,1]}"#).unwrap();
        let plus = v.clone().into_vector::<FpElement>(f2).unwrap();
        assert_eq!(plus, StateVector::from_ints(f2, &[1, 1]));
        assert!(matches!(
            v.into_vector::<Fp2Element>(f9),
            Err(LinalgError::BadEntry(0))
        ));
    }
}
