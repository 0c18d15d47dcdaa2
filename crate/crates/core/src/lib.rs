//! Exact simulation of quantum theories over finite fields.
//!
//! Two theories are covered. Modal theory works over a prime field `F_p`
//! (usually `F_2`): states are nonzero vectors, dynamics are arbitrary
//! invertible maps, and measurement only records which outcomes are
//! possible. Discrete theory works over `F_{p^2}` with `p = 3 (mod 4)`,
//! which keeps conjugation, a Hermitian inner product, unit-norm states
//! and unitaries.
//!
//! All arithmetic is exact and every routine is deterministic.

pub mod algorithms;
pub mod discrete;
pub mod field;
pub mod limits;
pub mod linalg;
pub mod modal;

pub use algorithms::{AlgorithmError, DjVerdict, GroverConfig, SupernaturalReport};
pub use discrete::{BlochCensus, DiscreteError, DiscreteState, PauliCoefficients, PhaseGroup};
pub use field::{FieldElement, FieldError, FieldSpec, Fp2Element, FpElement};
pub use linalg::{inner_product, LinalgError, Operator, OracleTable, StateVector};
pub use modal::{ModalError, ModalState, OutcomeSet, Possibility, Verdict};
