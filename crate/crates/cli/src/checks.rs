//! Named reproduction checks, shared by `dqsim verify-paper` and the
//! acceptance test target.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use dqsim::algorithms::{deutsch_jozsa, grover, pad_database, supernatural_condition, unique_sat_discrete};
use dqsim::discrete::{bloch_census, hadamard, hermitian_census, no_cloning_witness, unitaries_2x2};
use dqsim::field::{FieldElement, FieldSpec, Fp2Element, FpElement};
use dqsim::linalg::{find_isotropic_vector, inner_product, Operator, OracleTable, StateVector};
use dqsim::modal::{database_search_modal, modal_gates_1q, modal_states, s_gate, unique_sat_modal, SearchMode};
use dqsim::{DjVerdict, GroverConfig, Verdict};
use serde::Serialize;

/// What a check expected and what it saw.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub expected: String,
    pub observed: String,
    pub pass: bool,
}

impl Outcome {
    fn eq<T: std::fmt::Debug + PartialEq>(expected: T, observed: T) -> Self {
        Outcome {
            pass: expected == observed,
            expected: format!("{expected:?}"),
            observed: format!("{observed:?}"),
        }
    }

    fn error(expected: impl Into<String>, err: impl std::fmt::Display) -> Self {
        Outcome {
            expected: expected.into(),
            observed: format!("error: {err}"),
            pass: false,
        }
    }
}

pub struct Check {
    pub id: &'static str,
    pub name: &'static str,
    pub group: &'static str,
    pub budget: Duration,
    pub run: fn() -> Outcome,
}

impl Check {
    pub fn matches(&self, filter: &str) -> bool {
        self.id == filter || self.group == filter || self.name.contains(filter)
    }

    pub fn execute(&self) -> CheckRecord {
        let start = Instant::now();
        let outcome = (self.run)();
        let elapsed = start.elapsed();
        let in_budget = elapsed <= self.budget;
        CheckRecord {
            id: self.id,
            name: self.name,
            group: self.group,
            expected: outcome.expected,
            observed: outcome.observed,
            elapsed_ms: elapsed.as_millis() as u64,
            budget_ms: self.budget.as_millis() as u64,
            pass: outcome.pass && in_budget,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckRecord {
    pub id: &'static str,
    pub name: &'static str,
    pub group: &'static str,
    pub expected: String,
    pub observed: String,
    pub pass: bool,
    pub elapsed_ms: u64,
    pub budget_ms: u64,
}

impl CheckRecord {
    pub fn line(&self) -> String {
        let status = if self.pass { "PASS" } else { "FAIL" };
        let mut s = format!(
            "{status} {:<4} {:<28} {:>6}ms/{}ms",
            self.id, self.name, self.elapsed_ms, self.budget_ms
        );
        if !self.pass {
            s.push_str(&format!("\n     expected: {}\n     observed: {}", self.expected, self.observed));
        }
        s
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckSuiteResult {
    pub checks: Vec<CheckRecord>,
    pub passed: usize,
    pub failed: usize,
    pub exit_code: i32,
}

impl CheckSuiteResult {
    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }
}

/// Runs the registry, optionally restricted to checks matching `filter`
/// (an id, a group, or a substring of the name).
pub fn run_checks(filter: Option<&str>) -> CheckSuiteResult {
    let checks: Vec<CheckRecord> = registry()
        .iter()
        .filter(|c| filter.is_none_or(|f| c.matches(f)))
        .map(Check::execute)
        .collect();
    let passed = checks.iter().filter(|c| c.pass).count();
    let failed = checks.len() - passed;
    CheckSuiteResult {
        checks,
        passed,
        failed,
        exit_code: i32::from(failed > 0),
    }
}

const INSTANT: Duration = Duration::from_secs(1);

pub fn registry() -> Vec<Check> {
    vec![
        Check { id: "1", name: "plus-self-orthogonal-f2", group: "modal", budget: INSTANT, run: plus_self_orthogonal },
        Check { id: "2", name: "six-modal-gates", group: "modal", budget: INSTANT, run: six_modal_gates },
        Check { id: "3", name: "three-modal-states", group: "modal", budget: INSTANT, run: three_modal_states },
        Check { id: "4", name: "modal-unique-sat", group: "modal", budget: INSTANT, run: modal_unique_sat },
        Check { id: "5", name: "modal-database-search", group: "modal", budget: INSTANT, run: modal_database_search },
        Check { id: "6", name: "frobenius-is-conjugation", group: "field", budget: INSTANT, run: frobenius },
        Check { id: "7", name: "isotropic-vectors", group: "linalg", budget: INSTANT, run: isotropic },
        Check { id: "8", name: "bloch-census", group: "discrete", budget: Duration::from_secs(30), run: census },
        Check { id: "9", name: "hadamard-f9", group: "discrete", budget: INSTANT, run: hadamard_f9 },
        Check { id: "10", name: "hermitian-census-f9", group: "discrete", budget: INSTANT, run: hermitian_f9 },
        Check { id: "11", name: "deutsch-jozsa-f9", group: "algorithms", budget: Duration::from_secs(5), run: dj_f9 },
        Check { id: "12a", name: "grover-n4-f49-singleton", group: "algorithms", budget: INSTANT, run: grover_f49 },
        Check { id: "12b", name: "grover-n4-f9-not-singleton", group: "algorithms", budget: INSTANT, run: grover_f9 },
        Check { id: "13", name: "discrete-unique-sat", group: "algorithms", budget: INSTANT, run: discrete_unique_sat },
        Check { id: "14", name: "database-padding", group: "algorithms", budget: INSTANT, run: padding },
        Check { id: "15", name: "no-cloning", group: "discrete", budget: INSTANT, run: no_cloning },
        Check { id: "16", name: "property-suites", group: "properties", budget: Duration::from_secs(30), run: property_suites },
    ]
}

fn plus_self_orthogonal() -> Outcome {
    let f2 = FieldSpec::prime(2).unwrap();
    let plus = StateVector::<FpElement>::from_ints(f2, &[1, 1]);
    let ip = inner_product(&plus, &plus).unwrap();
    Outcome::eq(0, ip.value())
}

fn six_modal_gates() -> Outcome {
    let f2 = FieldSpec::prime(2).unwrap();
    let listed: BTreeSet<Operator<FpElement>> = [
        [[1, 0], [0, 1]],
        [[0, 1], [1, 0]],
        [[1, 0], [1, 1]],
        [[1, 1], [0, 1]],
        [[0, 1], [1, 1]],
        [[1, 1], [1, 0]],
    ]
    .iter()
    .map(|[r0, r1]| Operator::from_rows(f2, &[r0, r1]))
    .collect();
    match modal_gates_1q(2) {
        Ok(gates) => {
            let count = gates.len();
            let found: BTreeSet<_> = gates.into_iter().collect();
            Outcome::eq((6, true), (count, found == listed))
        }
        Err(e) => Outcome::error("6 gates", e),
    }
}

fn three_modal_states() -> Outcome {
    let f2 = FieldSpec::prime(2).unwrap();
    match modal_states(f2, 2) {
        Ok(states) => Outcome::eq(3, states.len()),
        Err(e) => Outcome::error("3", e),
    }
}

/// Every table with at most one satisfying input, `n` in 1..=3.
fn at_most_one_sat(n: usize) -> Vec<OracleTable> {
    let mut tables = vec![OracleTable::unique_sat(n, None).unwrap()];
    tables.extend((0..1usize << n).map(|k| OracleTable::unique_sat(n, Some(k)).unwrap()));
    tables
}

fn modal_unique_sat() -> Outcome {
    let mut counts = Vec::new();
    let mut wrong = Vec::new();
    for n in 1..=3 {
        let tables = at_most_one_sat(n);
        counts.push(tables.len());
        for f in &tables {
            let expected = if f.satisfying_count() == 0 { Verdict::Unsat } else { Verdict::Sat };
            match unique_sat_modal(f) {
                Ok(r) if r.verdict == expected && r.oracle_evals == 1 => {}
                Ok(r) => wrong.push(format!("n={n} {:?}: {} in {} evals", f.satisfying(), r.verdict, r.oracle_evals)),
                Err(e) => wrong.push(format!("n={n}: {e}")),
            }
        }
    }
    Outcome::eq((vec![3, 5, 9], Vec::<String>::new()), (counts, wrong))
}

fn modal_database_search() -> Outcome {
    let mut wrong = Vec::new();
    for n in 1..=4usize {
        let size = 1usize << n;
        for k in 0..size {
            let db = OracleTable::unique_sat(n, Some(k)).unwrap();
            match database_search_modal(&db, SearchMode::Fast) {
                Ok(r) if r.index == k && r.oracle_evals <= n as u64 => {}
                Ok(r) => wrong.push(format!("N={size} k={k}: {} in {} evals", r.index, r.oracle_evals)),
                Err(e) => wrong.push(format!("N={size} k={k}: {e}")),
            }
        }
    }
    Outcome::eq(Vec::<String>::new(), wrong)
}

fn frobenius() -> Outcome {
    let mut bad = Vec::new();
    for p in [3, 7, 11] {
        let field = FieldSpec::quadratic(p).unwrap();
        for a in Fp2Element::enumerate(field).unwrap() {
            if a.pow(p) != a.conj() {
                bad.push(format!("p={p} a={a}"));
            }
        }
    }
    Outcome::eq(Vec::<String>::new(), bad)
}

fn isotropic() -> Outcome {
    let mut found = Vec::new();
    let f2 = FieldSpec::prime(2).unwrap();
    let witness = find_isotropic_vector::<FpElement>(f2, 2)
        .ok()
        .flatten()
        .filter(|v| !v.is_zero() && inner_product(v, v).unwrap().is_zero());
    found.push(("F_2".to_string(), witness.is_some()));
    for p in [3, 7, 11] {
        let field = FieldSpec::quadratic(p).unwrap();
        let witness = find_isotropic_vector::<Fp2Element>(field, 2)
            .ok()
            .flatten()
            .filter(|v| !v.is_zero() && inner_product(v, v).unwrap().is_zero());
        found.push((field.to_string(), witness.is_some()));
    }
    let expected = found.iter().map(|(f, _)| (f.clone(), true)).collect::<Vec<_>>();
    Outcome::eq(expected, found)
}

fn census() -> Outcome {
    let mut observed = Vec::new();
    for p in [3, 7, 11] {
        match bloch_census(p) {
            Ok(c) => observed.push((p, c.unit_vectors, c.classes, c.phases, c.is_consistent())),
            Err(e) => return Outcome::error("census", e),
        }
    }
    Outcome::eq(
        vec![(3, 24, 6, 4, true), (7, 336, 42, 8, true), (11, 1320, 110, 12, true)],
        observed,
    )
}

fn hadamard_f9() -> Outcome {
    let f9 = FieldSpec::quadratic(3).unwrap();
    let s = Fp2Element::new(f9, 1, 1);
    let expected = Operator::<Fp2Element>::from_rows(f9, &[&[1, 1], &[1, -1]]).scale(s);
    let h = match hadamard(f9) {
        Ok(h) => h.operator,
        Err(e) => return Outcome::error("H = (1+i)[[1,1],[1,-1]]", e),
    };
    let s_lifted = s_gate(FieldSpec::prime(2).unwrap()).lift(f9);
    Outcome::eq(
        (true, true, false),
        (
            h == expected,
            h.is_unitary().unwrap_or(false),
            s_lifted.is_unitary().unwrap_or(true),
        ),
    )
}

fn hermitian_f9() -> Outcome {
    match hermitian_census(3) {
        Ok(c) => {
            let f9 = FieldSpec::quadratic(3).unwrap();
            let diag: BTreeSet<_> = c.diagonal_values.iter().copied().collect();
            let expected: BTreeSet<_> = [0, 1, -1].iter().map(|&v| Fp2Element::new(f9, v, 0)).collect();
            Outcome::eq((81, true, 9), (c.count, diag == expected, c.off_diagonal_values))
        }
        Err(e) => Outcome::error("81", e),
    }
}

/// Balanced tables on `n` inputs: all subsets of size `2^(n-1)`.
fn balanced_tables(n: usize) -> Vec<OracleTable> {
    let size = 1usize << n;
    (0u32..1 << size)
        .filter(|m| m.count_ones() as usize == size / 2)
        .map(|m| OracleTable::from_fn(n, |x| m >> x & 1 == 1).unwrap())
        .collect()
}

fn dj_f9() -> Outcome {
    let f9 = FieldSpec::quadratic(3).unwrap();
    let mut counts = Vec::new();
    let mut wrong = Vec::new();
    for n in 1..=3 {
        let mut tables: Vec<(OracleTable, DjVerdict)> = [false, true]
            .iter()
            .map(|&v| (OracleTable::constant(n, v).unwrap(), DjVerdict::Constant))
            .collect();
        tables.extend(balanced_tables(n).into_iter().map(|t| (t, DjVerdict::Balanced)));
        counts.push(tables.len());
        for (f, expected) in &tables {
            match deutsch_jozsa(f, f9) {
                Ok(r) if r.verdict == *expected && r.oracle_evals == 1 => {}
                Ok(r) => wrong.push(format!("n={n} {:?}: {:?} in {}", f.satisfying(), r.verdict, r.oracle_evals)),
                Err(e) => wrong.push(format!("n={n} {:?}: {e}", f.satisfying())),
            }
        }
    }
    Outcome::eq((vec![4, 8, 72], Vec::<String>::new()), (counts, wrong))
}

fn grover_supports(p: u64) -> Result<Vec<Vec<usize>>, dqsim::AlgorithmError> {
    let cfg = GroverConfig::new(4, FieldSpec::quadratic(p)?, Some(1))?;
    (0..4).map(|m| Ok(grover(m, &cfg)?.outcomes.possible())).collect()
}

fn grover_f49() -> Outcome {
    match grover_supports(7) {
        Ok(s) => Outcome::eq(vec![vec![0], vec![1], vec![2], vec![3]], s),
        Err(e) => Outcome::error("singletons", e),
    }
}

fn grover_f9() -> Outcome {
    match grover_supports(3) {
        Ok(s) => {
            let singletons = s.iter().filter(|x| x.len() == 1).count();
            Outcome {
                expected: "no marked position has singleton support".into(),
                observed: format!("supports {s:?}"),
                pass: singletons == 0,
            }
        }
        Err(e) => Outcome::error("non-singleton supports", e),
    }
}

fn discrete_unique_sat() -> Outcome {
    let mut wrong = Vec::new();
    let mut tally = Vec::new();
    for (p, n) in [(3u64, 2usize), (7, 3)] {
        let field = FieldSpec::quadratic(p).unwrap();
        let tables = at_most_one_sat(n);
        tally.push(tables.len());
        for f in &tables {
            let expected = if f.satisfying_count() == 0 { Verdict::Unsat } else { Verdict::Sat };
            match unique_sat_discrete(f, field) {
                Ok(r) if r.verdict == expected && r.oracle_evals == 1 => {}
                Ok(r) => wrong.push(format!("p={p} n={n} {:?}: {}", f.satisfying(), r.verdict)),
                Err(e) => wrong.push(format!("p={p} n={n}: {e}")),
            }
        }
    }
    let f9 = FieldSpec::quadratic(3).unwrap();
    let mut inconclusive = 0;
    for k in 0..8 {
        let f = OracleTable::unique_sat(3, Some(k)).unwrap();
        match unique_sat_discrete(&f, f9) {
            Ok(r) if r.verdict == Verdict::Inconclusive => inconclusive += 1,
            Ok(r) => wrong.push(format!("p=3 n=3 {k}: {}", r.verdict)),
            Err(e) => wrong.push(format!("p=3 n=3 {k}: {e}")),
        }
    }
    Outcome::eq((vec![5, 9], 8, Vec::<String>::new()), (tally, inconclusive, wrong))
}

fn padding() -> Outcome {
    let pins = (pad_database(7, 4).ok(), pad_database(3, 3).ok());
    let mut violations = Vec::new();
    for p in [3u64, 5, 7, 11, 13] {
        for n in 1..=64 {
            let ok = pad_database(p, n)
                .and_then(|m| Ok(m >= n && supernatural_condition(p, m)?.divides))
                .unwrap_or(false);
            if !ok {
                violations.push((p, n));
            }
        }
    }
    Outcome::eq((Some(6), Some(4), vec![]), (pins.0, pins.1, violations))
}

fn no_cloning() -> Outcome {
    let observed: Vec<_> = [3, 7, 11]
        .iter()
        .map(|&p| no_cloning_witness(p).map(|w| (p, w.clones_basis, w.fails_on_psi)).ok())
        .collect();
    Outcome::eq(vec![Some((3, true, true)), Some((7, true, true)), Some((11, true, true))], observed)
}

fn property_suites() -> Outcome {
    type Suite = fn() -> Result<(), String>;
    let suites: [(&str, Suite); 6] = [
        ("field axioms", props::field_axioms),
        ("conjugation automorphism", props::conjugation),
        ("norm", props::norm),
        ("sesquilinearity", props::sesquilinearity),
        ("unitary implies invertible", props::unitary_invertible),
        ("tensor-apply", props::tensor_apply),
    ];
    let failures: Vec<String> = suites
        .iter()
        .filter_map(|(name, f)| f().err().map(|e| format!("{name}: {e}")))
        .collect();
    Outcome::eq(Vec::<String>::new(), failures)
}

/// Exhaustive property sweeps over the fields with `p` in {2, 3, 7}.
pub mod props {
    use super::*;

    fn prime_fields() -> Vec<FieldSpec> {
        [2, 3, 7].iter().map(|&p| FieldSpec::prime(p).unwrap()).collect()
    }

    fn quadratic_fields() -> Vec<FieldSpec> {
        [3, 7].iter().map(|&p| FieldSpec::quadratic(p).unwrap()).collect()
    }

    fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
        if cond {
            Ok(())
        } else {
            Err(msg())
        }
    }

    fn axioms<F: FieldElement>(field: FieldSpec) -> Result<(), String> {
        let elems = F::enumerate(field).map_err(|e| e.to_string())?;
        let zero = F::zero(field);
        let one = F::one(field);
        for &a in &elems {
            ensure(a + zero == a && a * one == a && (a + -a).is_zero(), || format!("{field}: identities at {a}"))?;
            if !a.is_zero() {
                let ok = a.inverse().map(|b| (a * b).is_one()).unwrap_or(false);
                ensure(ok, || format!("{field}: inverse of {a}"))?;
            }
            for &b in &elems {
                ensure(a + b == b + a && a * b == b * a, || format!("{field}: commutativity at {a}, {b}"))?;
                for &c in &elems {
                    ensure(
                        (a + b) + c == a + (b + c) && (a * b) * c == a * (b * c) && a * (b + c) == a * b + a * c,
                        || format!("{field}: {a}, {b}, {c}"),
                    )?;
                }
            }
        }
        Ok(())
    }

    pub fn field_axioms() -> Result<(), String> {
        for f in prime_fields() {
            axioms::<FpElement>(f)?;
        }
        for f in quadratic_fields() {
            axioms::<Fp2Element>(f)?;
        }
        Ok(())
    }

    pub fn conjugation() -> Result<(), String> {
        for f in prime_fields() {
            for a in FpElement::enumerate(f).unwrap() {
                ensure(a.conj() == a, || format!("{f}: conj({a})"))?;
            }
        }
        for f in quadratic_fields() {
            let elems = Fp2Element::enumerate(f).unwrap();
            for &a in &elems {
                ensure(a.conj().conj() == a, || format!("{f}: involution at {a}"))?;
                for &b in &elems {
                    ensure(
                        (a * b).conj() == a.conj() * b.conj() && (a + b).conj() == a.conj() + b.conj(),
                        || format!("{f}: {a}, {b}"),
                    )?;
                }
            }
        }
        Ok(())
    }

    pub fn norm() -> Result<(), String> {
        for f in quadratic_fields() {
            let p = f.p();
            let elems = Fp2Element::enumerate(f).unwrap();
            let mut fibers = vec![0u64; p as usize];
            for &a in &elems {
                fibers[a.norm().value() as usize] += 1;
                for &b in &elems {
                    ensure((a * b).norm() == a.norm() * b.norm(), || format!("{f}: N({a} * {b})"))?;
                }
            }
            ensure(fibers[0] == 1 && fibers[1..].iter().all(|&c| c == p + 1), || {
                format!("{f}: fiber sizes {fibers:?}")
            })?;
        }
        Ok(())
    }

    fn vectors<F: FieldElement>(field: FieldSpec, dim: usize) -> Vec<StateVector<F>> {
        let elems = F::enumerate(field).unwrap();
        let mut out = vec![Vec::new()];
        for _ in 0..dim {
            out = out
                .into_iter()
                .flat_map(|v: Vec<F>| {
                    elems.iter().map(move |&e| {
                        let mut w = v.clone();
                        w.push(e);
                        w
                    })
                })
                .collect();
        }
        out.into_iter().map(|v| StateVector::new(v).unwrap()).collect()
    }

    fn sesquilinear<F: FieldElement>(field: FieldSpec, dim: usize) -> Result<(), String> {
        let vs = vectors::<F>(field, dim);
        let scalars = F::enumerate(field).unwrap();
        for phi in &vs {
            for psi in &vs {
                let ip = inner_product(phi, psi).unwrap();
                ensure(ip == inner_product(psi, phi).unwrap().conj(), || format!("{field}: symmetry"))?;
                for &c in &scalars {
                    ensure(
                        inner_product(phi, &psi.scale(c)).unwrap() == c * ip
                            && inner_product(&phi.scale(c), psi).unwrap() == c.conj() * ip,
                        || format!("{field}: scalar {c}"),
                    )?;
                }
                for chi in &vs {
                    ensure(
                        inner_product(phi, &psi.add(chi).unwrap()).unwrap()
                            == ip + inner_product(phi, chi).unwrap(),
                        || format!("{field}: additivity"),
                    )?;
                }
            }
        }
        Ok(())
    }

    pub fn sesquilinearity() -> Result<(), String> {
        for p in [2, 3, 7] {
            sesquilinear::<FpElement>(FieldSpec::prime(p).unwrap(), 2)?;
        }
        sesquilinear::<Fp2Element>(FieldSpec::quadratic(3).unwrap(), 2)?;
        sesquilinear::<Fp2Element>(FieldSpec::quadratic(7).unwrap(), 1)
    }

    fn matrices<F: FieldElement>(field: FieldSpec) -> Vec<Operator<F>> {
        vectors::<F>(field, 4)
            .into_iter()
            .map(|v| Operator::new(2, 2, v.into_entries()).unwrap())
            .collect()
    }

    pub fn unitary_invertible() -> Result<(), String> {
        for f in [FieldSpec::prime(2).unwrap(), FieldSpec::prime(3).unwrap()] {
            for m in matrices::<FpElement>(f) {
                if m.is_unitary().unwrap() {
                    ensure(m.is_invertible().unwrap(), || format!("{f}: {m:?}"))?;
                }
            }
        }
        let f9 = FieldSpec::quadratic(3).unwrap();
        let mut count = 0;
        for m in matrices::<Fp2Element>(f9) {
            if m.is_unitary().unwrap() {
                count += 1;
                ensure(m.is_invertible().unwrap(), || format!("{f9}: {m:?}"))?;
            }
        }
        ensure(count == 96, || format!("{f9}: {count} unitaries"))?;
        // F_7 and F_49: every unitary has unit columns.
        let f7 = FieldSpec::prime(7).unwrap();
        let units: Vec<_> = vectors::<FpElement>(f7, 2)
            .into_iter()
            .filter(|v| inner_product(v, v).unwrap().is_one())
            .collect();
        for a in &units {
            for b in &units {
                let m = Operator::new(2, 2, vec![a.get(0), b.get(0), a.get(1), b.get(1)]).unwrap();
                if m.is_unitary().unwrap() {
                    ensure(m.is_invertible().unwrap(), || format!("{f7}: {m:?}"))?;
                }
            }
        }
        let f49 = FieldSpec::quadratic(7).unwrap();
        let us = unitaries_2x2(f49).map_err(|e| e.to_string())?;
        ensure(us.len() == 2688, || format!("{f49}: {} unitaries", us.len()))?;
        for m in &us {
            ensure(m.is_invertible().unwrap(), || format!("{f49}: {m:?}"))?;
        }
        Ok(())
    }

    fn tensor_compatible<F: FieldElement>(
        a: &Operator<F>,
        b: &Operator<F>,
        u: &StateVector<F>,
        v: &StateVector<F>,
    ) -> bool {
        let lhs = a.tensor(b).unwrap().apply(&u.tensor(v).unwrap()).unwrap();
        let rhs = a.apply(u).unwrap().tensor(&b.apply(v).unwrap()).unwrap();
        lhs == rhs
    }

    fn unit_matrices<F: FieldElement>(field: FieldSpec) -> Vec<Operator<F>> {
        (0..4)
            .map(|k| {
                let mut e = vec![F::zero(field); 4];
                e[k] = F::one(field);
                Operator::new(2, 2, e).unwrap()
            })
            .collect()
    }

    /// Full sweep over `F_2` and `F_3`. Both sides are linear in `B`, `u`
    /// and `v`, so for `F_7`, `F_9` and `F_49` those run over matrix units
    /// and basis kets.
    pub fn tensor_apply() -> Result<(), String> {
        for p in [2, 3] {
            let f = FieldSpec::prime(p).unwrap();
            let ms = matrices::<FpElement>(f);
            let vs = vectors::<FpElement>(f, 2);
            for a in &ms {
                for b in &ms {
                    for u in &vs {
                        for v in &vs {
                            ensure(tensor_compatible(a, b, u, v), || format!("{f}"))?;
                        }
                    }
                }
            }
        }
        fn reduced<F: FieldElement>(f: FieldSpec, first: Vec<Operator<F>>) -> Result<(), String> {
            let basis = [StateVector::basis(f, 2, 0), StateVector::basis(f, 2, 1)];
            for a in &first {
                for b in &unit_matrices::<F>(f) {
                    for u in &basis {
                        for v in &basis {
                            ensure(tensor_compatible(a, b, u, v), || format!("{f}"))?;
                        }
                    }
                }
            }
            Ok(())
        }
        let f7 = FieldSpec::prime(7).unwrap();
        reduced::<FpElement>(f7, matrices(f7))?;
        let f9 = FieldSpec::quadratic(3).unwrap();
        reduced::<Fp2Element>(f9, matrices(f9))?;
        // F_49: A over matrix units scaled by every field element.
        let f49 = FieldSpec::quadratic(7).unwrap();
        let scaled: Vec<Operator<Fp2Element>> = Fp2Element::enumerate(f49)
            .unwrap()
            .into_iter()
            .flat_map(|c| unit_matrices::<Fp2Element>(f49).into_iter().map(move |m| m.scale(c)))
            .collect();
        reduced::<Fp2Element>(f49, scaled)
    }
}
