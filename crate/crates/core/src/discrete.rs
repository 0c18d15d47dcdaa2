//! Discrete quantum theory over `F_{p^2}`, `p = 3 (mod 4)`.
//!
//! States are vectors with `<psi|psi> = 1` taken up to a phase, i.e. a
//! scalar of norm 1. The phase group has `p + 1` elements.

use std::collections::BTreeSet;

use serde::ser::SerializeStruct;
use serde::Serialize;
use thiserror::Error;

use crate::field::{FieldElement, FieldError, FieldSpec, Fp2Element, FpElement};
use crate::linalg::{inner_product, LinalgError, Operator, StateVector};
use crate::modal::OutcomeSet;

/// Hard cap on `p` for the exhaustive Bloch census (`p^4` vectors).
pub const MAX_CENSUS_P: u64 = 31;

/// Cap on `p` for the Hermitian census and the no-cloning witness.
pub const MAX_SMALL_P: u64 = 11;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiscreteError {
    #[error("the zero vector cannot be normalized")]
    ZeroVector,
    #[error("vector {0:?} is isotropic (<v|v> = 0) and cannot be normalized")]
    IsotropicVector(StateVector<Fp2Element>),
    #[error("vector does not have unit norm")]
    NotUnit,
    #[error("expected a 2x2 operator, got {rows}x{cols}")]
    NotTwoByTwo { rows: usize, cols: usize },
    #[error("p = {p} exceeds the enumeration cap {max}")]
    TooLarge { p: u64, max: u64 },
    #[error("discrete theory needs a degree-2 field, got {0}")]
    NotQuadratic(FieldSpec),
    #[error("outcome {0} has zero amplitude")]
    ImpossibleOutcome(usize),
    #[error("no scalar s makes s*[[1,1],[1,-1]] unitary over F_{0}^2")]
    NoUnitaryScaling(u64),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

fn quadratic(p: u64) -> Result<FieldSpec, DiscreteError> {
    Ok(FieldSpec::quadratic(p)?)
}

fn require_quadratic(field: FieldSpec) -> Result<(), DiscreteError> {
    if field.degree() == 2 {
        Ok(())
    } else {
        Err(DiscreteError::NotQuadratic(field))
    }
}

fn cap(p: u64, max: u64) -> Result<(), DiscreteError> {
    if p > max {
        Err(DiscreteError::TooLarge { p, max })
    } else {
        Ok(())
    }
}

/// The scalars of norm 1, lexicographically ordered by `(re, im)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhaseGroup {
    field: FieldSpec,
    elements: Vec<Fp2Element>,
}

impl PhaseGroup {
    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn elements(&self) -> &[Fp2Element] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, s: &Fp2Element) -> bool {
        self.elements.binary_search(s).is_ok()
    }

    /// The phase `u` for which `u * a` is lexicographically least.
    fn minimizing(&self, a: Fp2Element) -> Fp2Element {
        *self
            .elements
            .iter()
            .min_by_key(|&&u| u * a)
            .expect("phase group is never empty")
    }
}

pub fn phase_group(field: FieldSpec) -> Result<PhaseGroup, DiscreteError> {
    require_quadratic(field)?;
    let elements = Fp2Element::enumerate(field)?
        .into_iter()
        .filter(|a| a.norm().is_one())
        .collect();
    Ok(PhaseGroup { field, elements })
}

/// A unit vector `<psi|psi> = 1` over `F_{p^2}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DiscreteState {
    vector: StateVector<Fp2Element>,
    canonical: bool,
}

impl DiscreteState {
    /// Wraps a unit vector as-is.
    pub fn new(vector: StateVector<Fp2Element>) -> Result<Self, DiscreteError> {
        require_quadratic(vector.field())?;
        if !inner_product(&vector, &vector)?.is_one() {
            return Err(DiscreteError::NotUnit);
        }
        let phases = phase_group(vector.field())?;
        let canonical = canonical_vector(&vector, &phases) == vector;
        Ok(DiscreteState { vector, canonical })
    }

    pub fn vector(&self) -> &StateVector<Fp2Element> {
        &self.vector
    }

    pub fn field(&self) -> FieldSpec {
        self.vector.field()
    }

    pub fn dim(&self) -> usize {
        self.vector.dim()
    }

    /// Whether the stored vector is its class's canonical representative.
    pub fn is_canonical(&self) -> bool {
        self.canonical
    }
}

impl Serialize for DiscreteState {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.vector.serialize(s)
    }
}

/// Scales `v` so its first nonzero entry is the least `(re, im)` among its
/// phase multiples.
fn canonical_vector(v: &StateVector<Fp2Element>, phases: &PhaseGroup) -> StateVector<Fp2Element> {
    match v.entries().iter().find(|e| !e.is_zero()) {
        Some(&lead) => v.scale(phases.minimizing(lead)),
        None => v.clone(),
    }
}

pub fn canonicalize(s: &DiscreteState) -> DiscreteState {
    if s.canonical {
        return s.clone();
    }
    let phases = phase_group(s.field()).expect("state field is quadratic");
    DiscreteState {
        vector: canonical_vector(&s.vector, &phases),
        canonical: true,
    }
}

/// Whether two unit states differ only by a phase.
pub fn equivalent(a: &DiscreteState, b: &DiscreteState) -> bool {
    a.field() == b.field() && a.dim() == b.dim() && canonicalize(a).vector == canonicalize(b).vector
}

/// Rescales `v` to unit norm and returns the canonical representative.
///
/// `<v|v>` lies in `F_p`; the scale `s` solves `N(s) <v|v> = 1`, which
/// always has a solution since the norm map is onto `F_p^*`.
pub fn normalize(v: &StateVector<Fp2Element>) -> Result<DiscreteState, DiscreteError> {
    let field = v.field();
    require_quadratic(field)?;
    if v.is_zero() {
        return Err(DiscreteError::ZeroVector);
    }
    let norm = inner_product(v, v)?;
    if norm.is_zero() {
        return Err(DiscreteError::IsotropicVector(v.clone()));
    }
    let target = FpElement::new(field.base(), norm.re() as i64).inverse()?;
    let s = Fp2Element::enumerate(field)?
        .into_iter()
        .find(|s| s.norm() == target)
        .expect("norm map is surjective onto F_p^*");
    let phases = phase_group(field)?;
    Ok(DiscreteState {
        vector: canonical_vector(&v.scale(s), &phases),
        canonical: true,
    })
}

/// Exhaustive count of unit vectors in `F_{p^2}^2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlochCensus {
    pub p: u64,
    pub unit_vectors: usize,
    pub classes: usize,
    pub phases: usize,
    /// Canonical representatives, sorted.
    pub class_reps: Vec<DiscreteState>,
}

impl BlochCensus {
    /// Whether `classes = p(p - 1)`.
    pub fn matches_class_formula(&self) -> bool {
        self.classes as u64 == self.p * (self.p - 1)
    }

    pub fn is_consistent(&self) -> bool {
        self.unit_vectors == self.classes * self.phases && self.class_reps.len() == self.classes
    }
}

impl Serialize for BlochCensus {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let reps: Vec<&[Fp2Element]> = self.class_reps.iter().map(|r| r.vector().entries()).collect();
        let mut st = s.serialize_struct("BlochCensus", 5)?;
        st.serialize_field("p", &self.p)?;
        st.serialize_field("unit_vectors", &self.unit_vectors)?;
        st.serialize_field("classes", &self.classes)?;
        st.serialize_field("phases", &self.phases)?;
        st.serialize_field("reps", &reps)?;
        st.end()
    }
}

/// Scans all `p^4` vectors `(a, b)` with an early norm filter.
pub fn bloch_census(p: u64) -> Result<BlochCensus, DiscreteError> {
    let field = quadratic(p)?;
    cap(p, MAX_CENSUS_P)?;
    let phases = phase_group(field)?;
    let elems = Fp2Element::enumerate(field)?;
    let norms: Vec<FpElement> = elems.iter().map(|e| e.norm()).collect();
    let one = FpElement::one(field.base());

    let mut unit_vectors = 0;
    let mut reps = BTreeSet::new();
    for (a, na) in elems.iter().zip(&norms) {
        for (b, nb) in elems.iter().zip(&norms) {
            if *na + *nb != one {
                continue;
            }
            unit_vectors += 1;
            let v = StateVector::new(vec![*a, *b])?;
            reps.insert(canonical_vector(&v, &phases));
        }
    }
    let class_reps: Vec<DiscreteState> = reps
        .into_iter()
        .map(|vector| DiscreteState {
            vector,
            canonical: true,
        })
        .collect();
    Ok(BlochCensus {
        p,
        unit_vectors,
        classes: class_reps.len(),
        phases: phases.order(),
        class_reps,
    })
}

/// Coefficients of `O = sum_mu a_mu X_mu` in the Pauli basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PauliCoefficients {
    pub a0: Fp2Element,
    pub a1: Fp2Element,
    pub a2: Fp2Element,
    pub a3: Fp2Element,
}

/// `X_0 = I`, `X_1 = [[0,1],[1,0]]`, `X_2 = [[0,-i],[i,0]]`, `X_3 = [[1,0],[0,-1]]`.
pub fn pauli(field: FieldSpec, mu: usize) -> Operator<Fp2Element> {
    let z = Fp2Element::zero(field);
    let one = Fp2Element::one(field);
    let i = Fp2Element::i(field);
    let entries = match mu {
        0 => vec![one, z, z, one],
        1 => vec![z, one, one, z],
        2 => vec![z, -i, i, z],
        3 => vec![one, z, z, -one],
        _ => panic!("Pauli index {mu} out of range 0..4"),
    };
    Operator::new(2, 2, entries).expect("Pauli entries share a field")
}

pub fn pauli_compose(c: &PauliCoefficients) -> Operator<Fp2Element> {
    let i = Fp2Element::i(c.a0.field());
    Operator::new(
        2,
        2,
        vec![c.a0 + c.a3, c.a1 - i * c.a2, c.a1 + i * c.a2, c.a0 - c.a3],
    )
    .expect("Pauli coefficients share a field")
}

pub fn pauli_decompose(o: &Operator<Fp2Element>) -> Result<PauliCoefficients, DiscreteError> {
    if o.rows() != 2 || o.cols() != 2 {
        return Err(DiscreteError::NotTwoByTwo {
            rows: o.rows(),
            cols: o.cols(),
        });
    }
    let field = o.field();
    let half = Fp2Element::from_i64(field, 2).inverse()?;
    let half_over_i = (Fp2Element::from_i64(field, 2) * Fp2Element::i(field)).inverse()?;
    let (o00, o01, o10, o11) = (o.get(0, 0), o.get(0, 1), o.get(1, 0), o.get(1, 1));
    Ok(PauliCoefficients {
        a0: (o00 + o11) * half,
        a1: (o01 + o10) * half,
        a2: (o10 - o01) * half_over_i,
        a3: (o00 - o11) * half,
    })
}

/// Structure of the 2x2 Hermitian matrices over `F_{p^2}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HermitianCensus {
    pub p: u64,
    pub count: usize,
    /// Values seen on the diagonal, sorted.
    pub diagonal_values: Vec<Fp2Element>,
    /// Number of distinct values seen in the upper off-diagonal slot.
    pub off_diagonal_values: usize,
}

/// Counts 2x2 Hermitian matrices.
///
/// `M = M^dagger` constrains the diagonal pair and the off-diagonal pair
/// independently, so the diagonal-only and off-diagonal-only families are
/// scanned separately (`p^4` candidates each) with [`Operator::is_hermitian`]
/// and the count is their product.
pub fn hermitian_census(p: u64) -> Result<HermitianCensus, DiscreteError> {
    let field = quadratic(p)?;
    cap(p, MAX_SMALL_P)?;
    let elems = Fp2Element::enumerate(field)?;
    let z = Fp2Element::zero(field);

    let mut diagonal_pairs = 0;
    let mut diagonal_values = BTreeSet::new();
    let mut off_pairs = 0;
    let mut off_values = BTreeSet::new();
    for &a in &elems {
        for &b in &elems {
            if Operator::new(2, 2, vec![a, z, z, b])?.is_hermitian()? {
                diagonal_pairs += 1;
                diagonal_values.insert(a);
                diagonal_values.insert(b);
            }
            if Operator::new(2, 2, vec![z, a, b, z])?.is_hermitian()? {
                off_pairs += 1;
                off_values.insert(a);
            }
        }
    }
    Ok(HermitianCensus {
        p,
        count: diagonal_pairs * off_pairs,
        diagonal_values: diagonal_values.into_iter().collect(),
        off_diagonal_values: off_values.len(),
    })
}

/// Standard-basis measurement: the support of the state.
pub fn measure_standard(s: &DiscreteState) -> OutcomeSet {
    OutcomeSet::of(s.vector()).expect("unit states are nonzero")
}

/// The canonical state after observing `outcome`: the basis ket itself,
/// which always has unit norm.
pub fn post_state(s: &DiscreteState, outcome: usize) -> Result<DiscreteState, DiscreteError> {
    if outcome >= s.dim() || s.vector().get(outcome).is_zero() {
        return Err(DiscreteError::ImpossibleOutcome(outcome));
    }
    normalize(&StateVector::basis(s.field(), s.dim(), outcome))
}

/// A unitary Hadamard `scale * [[1, 1], [1, -1]]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hadamard {
    pub operator: Operator<Fp2Element>,
    pub scale: Fp2Element,
}

/// Picks the lexicographically least `s` with `2 N(s) = 1`; over `F_9`
/// that is `1 + i`.
pub fn hadamard(field: FieldSpec) -> Result<Hadamard, DiscreteError> {
    require_quadratic(field)?;
    let base = Operator::<Fp2Element>::from_rows(field, &[&[1, 1], &[1, -1]]);
    for s in Fp2Element::enumerate(field)? {
        if s.is_zero() {
            continue;
        }
        let h = base.scale(s);
        if h.is_unitary()? {
            return Ok(Hadamard { operator: h, scale: s });
        }
    }
    Err(DiscreteError::NoUnitaryScaling(field.p()))
}

/// Largest `p` accepted by [`unitaries_2x2`].
pub const MAX_UNITARY_SCAN_P: u64 = 7;

/// All 2x2 unitaries over `field`, sorted.
///
/// Every pair of unit columns is tested with [`Operator::is_unitary`];
/// columns that are not unit vectors cannot occur in a unitary.
pub fn unitaries_2x2(field: FieldSpec) -> Result<Vec<Operator<Fp2Element>>, DiscreteError> {
    require_quadratic(field)?;
    cap(field.p(), MAX_UNITARY_SCAN_P)?;
    let elems = Fp2Element::enumerate(field)?;
    let mut columns = Vec::new();
    for &a in &elems {
        for &b in &elems {
            if (a.norm() + b.norm()).is_one() {
                columns.push((a, b));
            }
        }
    }
    let mut out = Vec::new();
    for &(a, b) in &columns {
        for &(c, d) in &columns {
            let m = Operator::new(2, 2, vec![a, c, b, d])?;
            if m.is_unitary()? {
                out.push(m);
            }
        }
    }
    out.sort();
    Ok(out)
}

/// A linear map that copies basis states, shown to fail on a superposition.
#[derive(Debug, Clone)]
pub struct NoCloningWitness {
    pub p: u64,
    /// `C(|b>|0>) = |b>|b>`, completed to a permutation on `|b>|1>`.
    pub cloner: Operator<Fp2Element>,
    pub psi: DiscreteState,
    /// `C(psi (x) |0>)`.
    pub output: StateVector<Fp2Element>,
    /// `psi (x) psi`.
    pub target: StateVector<Fp2Element>,
    pub clones_basis: bool,
    /// True when `output` is not a scalar multiple of `target`.
    pub fails_on_psi: bool,
}

pub fn no_cloning_witness(p: u64) -> Result<NoCloningWitness, DiscreteError> {
    let field = quadratic(p)?;
    cap(p, MAX_SMALL_P)?;
    let cloner = Operator::<Fp2Element>::from_rows(
        field,
        &[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 0, 1], &[0, 0, 1, 0]],
    );
    let ket0 = StateVector::<Fp2Element>::basis(field, 2, 0);
    let clones_basis = (0..2).try_fold(true, |ok, b| {
        let ket = StateVector::basis(field, 2, b);
        Ok::<_, DiscreteError>(ok && cloner.apply(&ket.tensor(&ket0)?)? == ket.tensor(&ket)?)
    })?;
    let psi = normalize(&StateVector::from_ints(field, &[1, 1]))?;
    let output = cloner.apply(&psi.vector().tensor(&ket0)?)?;
    let target = psi.vector().tensor(psi.vector())?;
    let fails_on_psi = !output.is_multiple_of(&target);
    Ok(NoCloningWitness {
        p,
        cloner,
        psi,
        output,
        target,
        clones_basis,
        fails_on_psi,
    })
}
