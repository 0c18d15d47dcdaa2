use serde::ser::SerializeStruct;
use serde::Serialize;

use super::{LinalgError, StateVector};
use crate::field::{FieldElement, FieldError, FieldSpec, Fp2Element, FpElement};

/// A dense row-major matrix over a finite field.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Operator<F> {
    rows: usize,
    cols: usize,
    entries: Vec<F>,
}

impl<F: FieldElement> Operator<F> {
    pub fn new(rows: usize, cols: usize, entries: Vec<F>) -> Result<Self, LinalgError> {
        if rows == 0 || cols == 0 {
            return Err(LinalgError::Empty);
        }
        if entries.len() != rows * cols {
            return Err(LinalgError::DimensionMismatch {
                left: rows * cols,
                right: entries.len(),
            });
        }
        for e in &entries[1..] {
            entries[0].same_field(e)?;
        }
        Ok(Operator {
            rows,
            cols,
            entries,
        })
    }

    /// Builds from integer rows; all rows must have the same length.
    pub fn from_rows(field: FieldSpec, rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(cols > 0, "empty operator");
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Operator {
            rows: rows.len(),
            cols,
            entries: rows
                .iter()
                .flat_map(|r| r.iter().map(|&v| F::from_i64(field, v)))
                .collect(),
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F) -> Self {
        assert!(rows > 0 && cols > 0, "empty operator");
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                entries.push(f(r, c));
            }
        }
        Operator::new(rows, cols, entries).expect("from_fn produced entries over mixed fields")
    }

    pub fn identity(field: FieldSpec, dim: usize) -> Self {
        Self::from_fn(dim, dim, |r, c| F::from_i64(field, (r == c) as i64))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> FieldSpec {
        self.entries[0].field()
    }

    pub fn entries(&self) -> &[F] {
        &self.entries
    }

    pub fn get(&self, r: usize, c: usize) -> F {
        self.entries[r * self.cols + c]
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    fn require_square(&self) -> Result<(), LinalgError> {
        if self.is_square() {
            Ok(())
        } else {
            Err(LinalgError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    fn field_check(&self, other: FieldSpec) -> Result<(), LinalgError> {
        if self.field() == other {
            Ok(())
        } else {
            Err(FieldError::ContextMismatch {
                left: self.field(),
                right: other,
            }
            .into())
        }
    }

    pub fn scale(&self, s: F) -> Self {
        Operator {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|&e| s * e).collect(),
        }
    }

    /// `(M^dagger)_{jk} = conj(M_{kj})`.
    pub fn conjugate_transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self.get(c, r).conj())
    }

    pub fn matmul(&self, other: &Self) -> Result<Self, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::DimensionMismatch {
                left: self.cols,
                right: other.rows,
            });
        }
        self.field_check(other.field())?;
        let zero = F::zero(self.field());
        Ok(Self::from_fn(self.rows, other.cols, |r, c| {
            (0..self.cols).fold(zero, |acc, k| acc + self.get(r, k) * other.get(k, c))
        }))
    }

    pub fn apply(&self, v: &StateVector<F>) -> Result<StateVector<F>, LinalgError> {
        if self.cols != v.dim() {
            return Err(LinalgError::DimensionMismatch {
                left: self.cols,
                right: v.dim(),
            });
        }
        self.field_check(v.field())?;
        let zero = F::zero(self.field());
        let out = (0..self.rows)
            .map(|r| {
                self.entries[r * self.cols..(r + 1) * self.cols]
                    .iter()
                    .zip(v.entries())
                    .fold(zero, |acc, (&m, &x)| acc + m * x)
            })
            .collect();
        Ok(StateVector::from_entries_unchecked(out))
    }

    /// Kronecker product with row-major block layout: block `(i, j)` of
    /// the result is `self[i][j] * other`.
    pub fn tensor(&self, other: &Self) -> Result<Self, LinalgError> {
        self.field_check(other.field())?;
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        Ok(Self::from_fn(rows, cols, |r, c| {
            self.get(r / other.rows, c / other.cols) * other.get(r % other.rows, c % other.cols)
        }))
    }

    /// Rank by Gaussian elimination.
    pub fn rank(&self) -> usize {
        let mut m = self.entries.clone();
        let (rows, cols) = (self.rows, self.cols);
        let mut rank = 0;
        for col in 0..cols {
            let Some(pivot) = (rank..rows).find(|&r| !m[r * cols + col].is_zero()) else {
                continue;
            };
            for c in 0..cols {
                m.swap(pivot * cols + c, rank * cols + c);
            }
            let inv = m[rank * cols + col]
                .inverse()
                .expect("pivot is nonzero");
            for r in 0..rows {
                if r == rank || m[r * cols + col].is_zero() {
                    continue;
                }
                let factor = m[r * cols + col] * inv;
                for c in col..cols {
                    let sub = factor * m[rank * cols + c];
                    m[r * cols + c] = m[r * cols + c] - sub;
                }
            }
            rank += 1;
            if rank == rows {
                break;
            }
        }
        rank
    }

    pub fn is_invertible(&self) -> Result<bool, LinalgError> {
        self.require_square()?;
        Ok(self.rank() == self.rows)
    }

    /// `M^dagger M = I` exactly.
    pub fn is_unitary(&self) -> Result<bool, LinalgError> {
        self.require_square()?;
        let product = self.conjugate_transpose().matmul(self)?;
        Ok(product == Self::identity(self.field(), self.rows))
    }

    /// `M = M^dagger`.
    pub fn is_hermitian(&self) -> Result<bool, LinalgError> {
        self.require_square()?;
        Ok(*self == self.conjugate_transpose())
    }

    /// Whether every entry is 0 or 1 with exactly one 1 per row and column.
    pub fn is_permutation(&self) -> bool {
        if !self.is_square() {
            return false;
        }
        let n = self.rows;
        let line_ok = |get: &dyn Fn(usize) -> F| {
            let mut ones = 0;
            for k in 0..n {
                let e = get(k);
                if e.is_one() {
                    ones += 1;
                } else if !e.is_zero() {
                    return false;
                }
            }
            ones == 1
        };
        (0..n).all(|r| line_ok(&|c| self.get(r, c))) && (0..n).all(|c| line_ok(&|r| self.get(r, c)))
    }
}

impl Operator<FpElement> {
    /// Re-reads each entry's symmetric integer representative in a
    /// degree-2 field, e.g. the modal `S` over `F_2` as a matrix over `F_9`.
    pub fn lift(&self, field: FieldSpec) -> Operator<Fp2Element> {
        Operator::from_fn(self.rows, self.cols, |r, c| {
            Fp2Element::new(field, self.get(r, c).symmetric(), 0)
        })
    }
}

impl<F: FieldElement + Serialize> Serialize for Operator<F> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Operator", 3)?;
        st.serialize_field("rows", &self.rows)?;
        st.serialize_field("cols", &self.cols)?;
        st.serialize_field("entries", &self.entries)?;
        st.end()
    }
}
