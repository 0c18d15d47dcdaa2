//! Algebraic invariants, checked exhaustively on small fields and with
//! proptest where exhaustive enumeration is too large.

use dqsim::algorithms::{grover_diffusion, pad_database, supernatural_condition};
use dqsim::discrete::{bloch_census, pauli_compose, pauli_decompose, unitaries_2x2, PauliCoefficients};
use dqsim::field::{FieldElement, FieldSpec, Fp2Element, FpElement};
use dqsim::linalg::{inner_product, Operator, StateVector};
use proptest::prelude::*;

fn all<F: FieldElement>(field: FieldSpec) -> Vec<F> {
    F::enumerate(field).unwrap()
}

fn check_field_axioms<F: FieldElement>(field: FieldSpec) {
    let elems = all::<F>(field);
    let zero = F::zero(field);
    let one = F::one(field);
    for &a in &elems {
        assert_eq!(a + zero, a);
        assert_eq!(a * one, a);
        assert!((a + -a).is_zero());
        if !a.is_zero() {
            let inv = a.inverse().unwrap();
            assert!((a * inv).is_one(), "{a} * {inv}");
            // the inverse is unique
            assert_eq!(elems.iter().filter(|&&b| (a * b).is_one()).count(), 1);
        }
        for &b in &elems {
            assert_eq!(a + b, b + a);
            assert_eq!(a * b, b * a);
            assert_eq!(a - b, a + -b);
            for &c in &elems {
                assert_eq!((a + b) + c, a + (b + c));
                assert_eq!((a * b) * c, a * (b * c));
                assert_eq!(a * (b + c), a * b + a * c);
            }
        }
    }
}

#[test]
fn field_axioms_prime_fields() {
    for p in [2, 3, 7, 11] {
        check_field_axioms::<FpElement>(FieldSpec::prime(p).unwrap());
    }
}

#[test]
fn field_axioms_quadratic_fields() {
    for p in [3, 7] {
        check_field_axioms::<Fp2Element>(FieldSpec::quadratic(p).unwrap());
    }
}

#[test]
fn inverses_in_f121() {
    let field = FieldSpec::quadratic(11).unwrap();
    for a in all::<Fp2Element>(field).into_iter().filter(|a| !a.is_zero()) {
        assert!((a * a.inverse().unwrap()).is_one());
    }
}

#[test]
fn conjugation_is_an_involutive_automorphism() {
    for p in [3, 7] {
        let elems = all::<Fp2Element>(FieldSpec::quadratic(p).unwrap());
        for &a in &elems {
            assert_eq!(a.conj().conj(), a);
            for &b in &elems {
                assert_eq!((a * b).conj(), a.conj() * b.conj());
                assert_eq!((a + b).conj(), a.conj() + b.conj());
            }
        }
    }
}

#[test]
fn frobenius_agrees_with_conjugation() {
    for p in [3, 7, 11] {
        for a in all::<Fp2Element>(FieldSpec::quadratic(p).unwrap()) {
            assert_eq!(a.pow(p), a.conj(), "p = {p}, a = {a}");
            // independent route: repeated multiplication
            let mut acc = Fp2Element::one(a.field());
            for _ in 0..p {
                acc = acc * a;
            }
            assert_eq!(acc, a.conj());
        }
    }
}

#[test]
fn norm_is_multiplicative_and_onto() {
    for p in [3, 7, 11] {
        let field = FieldSpec::quadratic(p).unwrap();
        let elems = all::<Fp2Element>(field);
        for &a in &elems {
            assert_eq!(Fp2Element::from_base(field, a.norm()), a.conj() * a);
            for &b in &elems {
                assert_eq!((a * b).norm(), a.norm() * b.norm());
            }
        }
        let mut image: Vec<u32> = elems.iter().map(|a| a.norm().value()).collect();
        image.sort();
        image.dedup();
        assert_eq!(image, (0..p as u32).collect::<Vec<_>>());
        // each nonzero value has exactly p + 1 preimages
        for v in 1..p as u32 {
            let fiber = elems.iter().filter(|a| a.norm().value() == v).count();
            assert_eq!(fiber as u64, p + 1);
        }
    }
}

fn vectors_2d(field: FieldSpec) -> Vec<StateVector<Fp2Element>> {
    let elems = all::<Fp2Element>(field);
    elems
        .iter()
        .flat_map(|&a| elems.iter().map(move |&b| StateVector::new(vec![a, b]).unwrap()))
        .collect()
}

#[test]
fn inner_product_is_conjugate_symmetric() {
    let field = FieldSpec::quadratic(3).unwrap();
    let vs = vectors_2d(field);
    for phi in &vs {
        for psi in &vs {
            assert_eq!(
                inner_product(phi, psi).unwrap(),
                inner_product(psi, phi).unwrap().conj()
            );
        }
    }
}

#[test]
fn inner_product_is_scalar_sesquilinear() {
    let field = FieldSpec::quadratic(3).unwrap();
    let vs = vectors_2d(field);
    let scalars = all::<Fp2Element>(field);
    for phi in &vs {
        for psi in &vs {
            let ip = inner_product(phi, psi).unwrap();
            for &c in &scalars {
                assert_eq!(inner_product(phi, &psi.scale(c)).unwrap(), c * ip);
                assert_eq!(inner_product(&phi.scale(c), psi).unwrap(), c.conj() * ip);
            }
        }
    }
}

#[test]
fn every_tested_field_has_isotropic_vectors() {
    use dqsim::linalg::find_isotropic_vector;
    assert!(find_isotropic_vector::<FpElement>(FieldSpec::prime(2).unwrap(), 2)
        .unwrap()
        .is_some());
    for p in [3, 7, 11] {
        let v = find_isotropic_vector::<Fp2Element>(FieldSpec::quadratic(p).unwrap(), 2)
            .unwrap()
            .expect("isotropic vector");
        assert!(!v.is_zero());
        assert!(inner_product(&v, &v).unwrap().is_zero());
    }
}

#[test]
fn unitary_implies_invertible_f9() {
    let field = FieldSpec::quadratic(3).unwrap();
    let elems = all::<Fp2Element>(field);
    let mut unitary = 0;
    for &a in &elems {
        for &b in &elems {
            for &c in &elems {
                for &d in &elems {
                    let m = Operator::new(2, 2, vec![a, b, c, d]).unwrap();
                    if m.is_unitary().unwrap() {
                        unitary += 1;
                        assert!(m.is_invertible().unwrap());
                    }
                }
            }
        }
    }
    assert_eq!(unitary, 96);
}

#[test]
fn unitaries_preserve_unit_states_f9() {
    let census = bloch_census(3).unwrap();
    let field = FieldSpec::quadratic(3).unwrap();
    let units: Vec<_> = vectors_2d(field)
        .into_iter()
        .filter(|v| inner_product(v, v).unwrap().is_one())
        .collect();
    assert_eq!(units.len(), census.unit_vectors);
    for u in unitaries_2x2(field).unwrap() {
        for v in &units {
            let w = u.apply(v).unwrap();
            assert!(inner_product(&w, &w).unwrap().is_one());
        }
    }
}

#[test]
fn pauli_round_trips_f9() {
    let field = FieldSpec::quadratic(3).unwrap();
    let elems = all::<Fp2Element>(field);
    for &a0 in &elems {
        for &a1 in &elems {
            for &a2 in &elems {
                for &a3 in &elems {
                    let c = PauliCoefficients { a0, a1, a2, a3 };
                    let o = pauli_compose(&c);
                    assert_eq!(pauli_decompose(&o).unwrap(), c);
                    if o.is_hermitian().unwrap() {
                        assert_eq!(pauli_compose(&pauli_decompose(&o).unwrap()), o);
                    }
                }
            }
        }
    }
}

#[test]
fn diffusion_is_unitary_where_defined() {
    for (n, p) in [(2, 3), (2, 7), (4, 7), (8, 7), (4, 11)] {
        let d = grover_diffusion(n, FieldSpec::quadratic(p).unwrap()).unwrap();
        assert!(d.is_unitary().unwrap(), "N = {n}, p = {p}");
    }
}

fn fp2(p: u64) -> impl Strategy<Value = Fp2Element> {
    let field = FieldSpec::quadratic(p).unwrap();
    (0..p as i64, 0..p as i64).prop_map(move |(re, im)| Fp2Element::new(field, re, im))
}

fn vector(p: u64, dim: usize) -> impl Strategy<Value = StateVector<Fp2Element>> {
    prop::collection::vec(fp2(p), dim).prop_map(|v| StateVector::new(v).unwrap())
}

fn matrix(p: u64, rows: usize, cols: usize) -> impl Strategy<Value = Operator<Fp2Element>> {
    prop::collection::vec(fp2(p), rows * cols).prop_map(move |v| Operator::new(rows, cols, v).unwrap())
}

proptest! {
    #[test]
    fn sesquilinear_in_sums(
        phi in vector(7, 3),
        psi in vector(7, 3),
        chi in vector(7, 3),
        c in fp2(7),
    ) {
        let lhs = inner_product(&phi, &psi.scale(c).add(&chi).unwrap()).unwrap();
        let rhs = c * inner_product(&phi, &psi).unwrap() + inner_product(&phi, &chi).unwrap();
        prop_assert_eq!(lhs, rhs);
        let lhs = inner_product(&phi.scale(c).add(&chi).unwrap(), &psi).unwrap();
        let rhs = c.conj() * inner_product(&phi, &psi).unwrap() + inner_product(&chi, &psi).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn tensor_respects_apply(
        a in matrix(7, 2, 2),
        b in matrix(7, 3, 3),
        u in vector(7, 2),
        v in vector(7, 3),
    ) {
        let lhs = a.tensor(&b).unwrap().apply(&u.tensor(&v).unwrap()).unwrap();
        let rhs = a.apply(&u).unwrap().tensor(&b.apply(&v).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn tensor_respects_apply_f9(
        a in matrix(3, 2, 2),
        b in matrix(3, 2, 2),
        u in vector(3, 2),
        v in vector(3, 2),
    ) {
        let lhs = a.tensor(&b).unwrap().apply(&u.tensor(&v).unwrap()).unwrap();
        let rhs = a.apply(&u).unwrap().tensor(&b.apply(&v).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn dagger_reverses_products(a in matrix(11, 2, 3), b in matrix(11, 3, 2)) {
        let lhs = a.matmul(&b).unwrap().conjugate_transpose();
        let rhs = b.conjugate_transpose().matmul(&a.conjugate_transpose()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn padding_always_satisfies_divisibility(
        p in prop::sample::select(vec![3u64, 5, 7, 11, 13, 17, 19, 23, 31]),
        n in 1u64..200,
    ) {
        let padded = pad_database(p, n).unwrap();
        prop_assert!(padded >= n);
        prop_assert!(supernatural_condition(p, padded).unwrap().divides);
        // least such size: nothing in [n, padded) works
        for m in n..padded {
            prop_assert!(!supernatural_condition(p, m).unwrap().divides);
        }
    }
}
