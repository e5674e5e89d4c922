//! Built-in fixture algebras and exhaustive or seeded random search for
//! structure-constant tables satisfying an identity.

use std::collections::BTreeMap;
use std::ops::ControlFlow;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Algebra, IdentityKind};
use crate::enumerate::{field_order, EnumerationBudget, RadicalKind};
use crate::error::{Error, Result};
use crate::exactfield::{Field, PrimeField, Rationals};
use crate::file::{AnyAlgebra, LoadedAlgebra};
use crate::linalg::Subspace;
use crate::verify::Certificates;

/// Constructors for the standard small algebras, over any field.
pub mod builders {
    use super::*;

    fn vector<K: Field>(f: &K, n: usize, entries: &[(usize, i64)]) -> Vec<K::Elem> {
        let mut v = vec![f.zero(); n];
        for &(k, c) in entries {
            v[k] = f.from_i64(c);
        }
        v
    }

    /// Basis `x, y` with `x² = x`, `xy = x`, other products zero.
    pub fn a_ex<K: Field>(f: K) -> Algebra<K> {
        let p = vec![(0, 0, vector(&f, 2, &[(0, 1)])), (0, 1, vector(&f, 2, &[(0, 1)]))];
        Algebra::from_products(f, 2, p)
            .and_then(|a| a.with_labels(vec!["x".into(), "y".into()]))
            .expect("valid table")
    }

    /// Basis `a, b` with `b² = b`, `ab = a`, other products zero.
    pub fn a_nov<K: Field>(f: K) -> Algebra<K> {
        let p = vec![(1, 1, vector(&f, 2, &[(1, 1)])), (0, 1, vector(&f, 2, &[(0, 1)]))];
        Algebra::from_products(f, 2, p)
            .and_then(|a| a.with_labels(vec!["a".into(), "b".into()]))
            .expect("valid table")
    }

    pub fn zero_algebra<K: Field>(f: K, n: usize) -> Algebra<K> {
        Algebra::zero_algebra(f, n)
    }

    /// `t F[t] / (t^{k+1})` on the basis `t, t², ..., t^k`.
    pub fn truncated_polynomial<K: Field>(f: K, k: usize) -> Algebra<K> {
        let mut p = Vec::new();
        for i in 0..k {
            for j in 0..k {
                if i + j + 1 < k {
                    p.push((i, j, vector(&f, k, &[(i + j + 1, 1)])));
                }
            }
        }
        Algebra::from_products(f, k, p).expect("valid table")
    }

    /// `e1 e1 = e2`, other products zero.
    pub fn n1<K: Field>(f: K) -> Algebra<K> {
        let p = vec![(0, 0, vector(&f, 2, &[(1, 1)]))];
        Algebra::from_products(f, 2, p).expect("valid table")
    }

    /// `F ⊕ ... ⊕ F` with orthogonal idempotents `e_i² = e_i`.
    pub fn idempotents<K: Field>(f: K, n: usize) -> Algebra<K> {
        let p: Vec<_> = (0..n).map(|i| (i, i, vector(&f, n, &[(i, 1)]))).collect();
        Algebra::from_products(f, n, p).expect("valid table")
    }
}

use builders::*;

/// Properties a fixture claims about itself, re-checked on load.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CertifiedProperties {
    pub identities: BTreeMap<IdentityKind, bool>,
    /// Claimed dimension of the solvable radical (finite fields only).
    pub radical_dim: Option<usize>,
    /// Claimed dimension of the Frattini ideal (finite fields only).
    pub phi_dim: Option<usize>,
}

#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: String,
    pub provenance: String,
    pub algebra: LoadedAlgebra,
    pub certified: CertifiedProperties,
}

impl Fixture {
    pub fn any(&self) -> AnyAlgebra {
        self.algebra.algebra()
    }

    /// Re-checks every certified property.
    pub fn reverify(&self, budget: &EnumerationBudget) -> Result<()> {
        match &self.algebra {
            LoadedAlgebra::Rational(a, c) => reverify_typed(&self.name, a, c, &self.certified, budget),
            LoadedAlgebra::Prime(a, c) => reverify_typed(&self.name, a, c, &self.certified, budget),
        }
    }
}

fn reverify_typed<K: Field>(
    name: &str,
    a: &Algebra<K>,
    certs: &Certificates<K>,
    claims: &CertifiedProperties,
    budget: &EnumerationBudget,
) -> Result<()> {
    let flags = a.identities();
    for (&kind, &expected) in &claims.identities {
        if flags.holds(kind) != expected {
            return Err(Error::TheoremViolation(format!("fixture {name}: certified {kind} = {expected} does not hold")));
        }
    }
    if let Some(d) = claims.radical_dim {
        let r = crate::enumerate::radical(a, RadicalKind::Solvable, budget)?;
        if r.dim() != d {
            return Err(Error::TheoremViolation(format!("fixture {name}: radical has dimension {}, certified {d}", r.dim())));
        }
    }
    if let Some(d) = claims.phi_dim {
        let phi = crate::enumerate::frattini(a, budget)?.ideal;
        if phi.dim() != d {
            return Err(Error::TheoremViolation(format!("fixture {name}: φ has dimension {}, certified {d}", phi.dim())));
        }
    }
    certs.validate(a).map_err(|e| Error::TheoremViolation(format!("fixture {name}: {e}")))?;
    Ok(())
}

struct Builder {
    out: Vec<Fixture>,
}

impl Builder {
    fn push<K: Field>(
        &mut self,
        name: &str,
        provenance: &str,
        a: Algebra<K>,
        certs: Certificates<K>,
        claims: CertifiedProperties,
    ) where
        LoadedAlgebra: From<(Algebra<K>, Certificates<K>)>,
    {
        self.out.push(Fixture {
            name: name.to_string(),
            provenance: provenance.to_string(),
            algebra: LoadedAlgebra::from((a, certs)),
            certified: claims,
        });
    }
}

impl From<(Algebra<Rationals>, Certificates<Rationals>)> for LoadedAlgebra {
    fn from((a, c): (Algebra<Rationals>, Certificates<Rationals>)) -> Self {
        LoadedAlgebra::Rational(a, c)
    }
}

impl From<(Algebra<PrimeField>, Certificates<PrimeField>)> for LoadedAlgebra {
    fn from((a, c): (Algebra<PrimeField>, Certificates<PrimeField>)) -> Self {
        LoadedAlgebra::Prime(a, c)
    }
}

fn claims(ids: &[(IdentityKind, bool)], radical_dim: Option<usize>, phi_dim: Option<usize>) -> CertifiedProperties {
    CertifiedProperties { identities: ids.iter().copied().collect(), radical_dim, phi_dim }
}

fn all_identities() -> Vec<(IdentityKind, bool)> {
    IdentityKind::ALL.iter().map(|&k| (k, true)).collect()
}

fn span<K: Field>(a: &Algebra<K>, idx: &[usize]) -> Subspace<K> {
    a.span(idx.iter().map(|&i| a.basis_vector(i)).collect()).expect("basis vectors")
}

fn prime(p: u64) -> PrimeField {
    PrimeField::new(p).expect("prime")
}

const EX: &str = "two-dimensional semisimple bicommutative example: x² = x, xy = x";

/// The built-in fixtures, each re-verified against its certified properties.
pub fn load_fixtures(budget: &EnumerationBudget) -> Result<Vec<Fixture>> {
    use IdentityKind::*;
    let mut b = Builder { out: Vec::new() };
    let ex_claims = [(Bicommutative, true), (Commutative, false), (Associative, false)];
    for p in [2, 3, 5] {
        let a = a_ex(prime(p));
        b.push(&format!("A_ex_F{p}"), EX, a, Certificates::default(), claims(&ex_claims, Some(0), Some(0)));
    }
    {
        let a = a_ex(Rationals);
        let certs = Certificates { solvable_radical: None, codim_one_subalgebras: vec![span(&a, &[0]), span(&a, &[1])] };
        b.push("A_ex_Q", EX, a, certs, claims(&ex_claims, None, None));
    }
    for n in 1..=4 {
        b.push(&format!("Z{n}_F2"), "zero algebra", zero_algebra(prime(2), n), Certificates::default(), claims(&all_identities(), Some(n), Some(0)));
    }
    b.push("Z2_F3", "zero algebra", zero_algebra(prime(3), 2), Certificates::default(), claims(&all_identities(), Some(2), Some(0)));
    {
        let a = zero_algebra(Rationals, 2);
        let certs = Certificates { solvable_radical: Some(a.full()), codim_one_subalgebras: vec![span(&a, &[0]), span(&a, &[1])] };
        b.push("Z2_Q", "zero algebra", a, certs, claims(&all_identities(), None, None));
    }
    for k in 1..=4 {
        let a = truncated_polynomial(prime(2), k);
        b.push(&format!("T{k}_F2"), "truncated polynomials t F[t]/(t^{k+1})", a, Certificates::default(), claims(&all_identities(), Some(k), Some(k - 1)));
    }
    for p in [3, 5] {
        let a = truncated_polynomial(prime(p), 3);
        b.push(&format!("T3_F{p}"), "truncated polynomials", a, Certificates::default(), claims(&all_identities(), Some(3), Some(2)));
    }
    {
        let a = truncated_polynomial(Rationals, 3);
        let certs = Certificates { solvable_radical: Some(a.full()), codim_one_subalgebras: vec![span(&a, &[1, 2])] };
        b.push("T3_Q", "truncated polynomials", a, certs, claims(&all_identities(), None, None));
    }
    let n1_claims = all_identities();
    for p in [2, 3] {
        b.push(&format!("N1_F{p}"), "e1e1 = e2", n1(prime(p)), Certificates::default(), claims(&n1_claims, Some(2), Some(1)));
    }
    {
        let a = n1(Rationals);
        let certs = Certificates { solvable_radical: Some(a.full()), codim_one_subalgebras: vec![span(&a, &[1])] };
        b.push("N1_Q", "e1e1 = e2", a, certs, claims(&n1_claims, None, None));
    }
    let nov_claims = [(NovikovLeft, true), (Bicommutative, false), (Associative, true)];
    for p in [2, 3, 5] {
        b.push(&format!("A_nov_F{p}"), "Novikov: b² = b, ab = a", a_nov(prime(p)), Certificates::default(), claims(&nov_claims, Some(1), Some(0)));
    }
    {
        let a = a_nov(Rationals);
        let certs = Certificates { solvable_radical: Some(span(&a, &[0])), codim_one_subalgebras: vec![span(&a, &[0]), span(&a, &[1])] };
        b.push("A_nov_Q", "Novikov: b² = b, ab = a", a, certs, claims(&nov_claims, None, None));
    }
    for p in [2, 3, 5] {
        b.push(&format!("FxF_F{p}"), "two orthogonal idempotents", idempotents(prime(p), 2), Certificates::default(), claims(&all_identities(), Some(0), Some(0)));
    }
    {
        let a = idempotents(Rationals, 2);
        let certs = Certificates { solvable_radical: Some(a.zero_subspace()), codim_one_subalgebras: vec![span(&a, &[0]), span(&a, &[1])] };
        b.push("FxF_Q", "two orthogonal idempotents", a, certs, claims(&all_identities(), None, None));
    }

    // direct sums
    let f2 = prime(2);
    let sum = |x: &Algebra<PrimeField>, y: &Algebra<PrimeField>| x.direct_sum(y).expect("same field");
    b.push("T2+T3_F2", "direct sum", sum(&truncated_polynomial(f2, 2), &truncated_polynomial(f2, 3)), Certificates::default(), claims(&all_identities(), Some(5), Some(3)));
    b.push("N1+T3_F2", "direct sum", sum(&n1(f2), &truncated_polynomial(f2, 3)), Certificates::default(), claims(&all_identities(), Some(5), Some(3)));
    b.push("A_ex+A_ex_F2", "direct sum", sum(&a_ex(f2), &a_ex(f2)), Certificates::default(), claims(&[(Bicommutative, true), (Associative, false)], Some(0), Some(0)));
    b.push("A_ex+Z1_F2", "direct sum", sum(&a_ex(f2), &zero_algebra(f2, 1)), Certificates::default(), claims(&[(Bicommutative, true)], Some(1), Some(0)));
    b.push("A_ex+N1_F2", "direct sum", sum(&a_ex(f2), &n1(f2)), Certificates::default(), claims(&[(Bicommutative, true)], Some(2), Some(1)));
    b.push("A_nov+N1_F2", "direct sum", sum(&a_nov(f2), &n1(f2)), Certificates::default(), claims(&[(NovikovLeft, true), (Bicommutative, false)], Some(3), Some(1)));
    b.push("A_nov+Z1_F2", "direct sum", sum(&a_nov(f2), &zero_algebra(f2, 1)), Certificates::default(), claims(&[(NovikovLeft, true)], Some(2), Some(0)));
    b.push("A_ex+FxF_F3", "direct sum", a_ex(prime(3)).direct_sum(&idempotents(prime(3), 2)).expect("same field"), Certificates::default(), claims(&[(Bicommutative, true)], Some(0), Some(0)));
    b.push("T2+FxF_F5", "direct sum", truncated_polynomial(prime(5), 2).direct_sum(&idempotents(prime(5), 2)).expect("same field"), Certificates::default(), claims(&all_identities(), Some(2), Some(1)));

    // quotients
    {
        let t4 = truncated_polynomial(f2, 4);
        let (q, _) = t4.quotient(&span(&t4, &[3])).expect("ideal");
        b.push("T4/t4_F2", "quotient of T4 by span{t⁴}", q, Certificates::default(), claims(&all_identities(), Some(3), Some(2)));
    }
    {
        let a = sum(&a_nov(f2), &n1(f2));
        let (q, _) = a.quotient(&span(&a, &[3])).expect("ideal");
        b.push("(A_nov+N1)/e2_F2", "quotient of A_nov ⊕ N1 by the square of N1", q, Certificates::default(), claims(&[(NovikovLeft, true)], Some(2), Some(0)));
    }
    {
        let a = sum(&a_ex(f2), &a_ex(f2));
        let (q, _) = a.quotient(&span(&a, &[0])).expect("ideal");
        b.push("(A_ex+A_ex)/x_F2", "quotient of A_ex ⊕ A_ex by the first span{x}", q, Certificates::default(), claims(&[(Bicommutative, true)], Some(1), Some(0)));
    }

    let fixtures = b.out;
    for f in &fixtures {
        f.reverify(budget)?;
    }
    Ok(fixtures)
}

/// The built-in fixtures with the default budget.
pub fn builtin_fixtures() -> Vec<Fixture> {
    load_fixtures(&EnumerationBudget::default()).expect("built-in fixtures satisfy their certified properties")
}

pub fn fixture(name: &str) -> Option<Fixture> {
    builtin_fixtures().into_iter().find(|f| f.name == name)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SearchMode {
    /// Every table, optionally only those with at most `max_nonzero`
    /// nonzero structure constants, in a fixed order.
    Exhaustive { max_nonzero: Option<usize> },
    /// `samples` tables drawn from a ChaCha8 stream seeded with `seed`;
    /// each constant is zero with probability `sparsity`, otherwise a
    /// uniform nonzero element.
    Random { samples: u64, seed: u64, sparsity: f64 },
}

fn binomial(n: u128, k: u128) -> u128 {
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul(n - i) / (i + 1);
    }
    acc
}

/// Number of tables of dimension `n` over `F_q` with at most `m` nonzero entries.
pub fn table_count(q: u64, n: usize, m: usize) -> u128 {
    let cells = (n * n * n) as u128;
    (0..=m.min(n * n * n)).fold(0u128, |acc, k| {
        let ways = binomial(cells, k as u128);
        let vals = (0..k).fold(1u128, |v, _| v.saturating_mul((q - 1) as u128));
        acc.saturating_add(ways.saturating_mul(vals))
    })
}

/// Visits every table in order of nonzero count, then positions, then values.
pub fn for_each_table<K: Field, B>(
    field: &K,
    n: usize,
    max_nonzero: Option<usize>,
    budget: &EnumerationBudget,
    mut visit: impl FnMut(Algebra<K>) -> ControlFlow<B>,
) -> Result<Option<B>> {
    let q = field_order(field)?;
    let cells = n * n * n;
    let m = max_nonzero.unwrap_or(cells).min(cells);
    let count = table_count(q, n, m);
    if count > budget.max_vectors as u128 {
        return Err(Error::budget(format!(
            "exhaustive search over {count} tables exceeds the cap of {}; bound the number of nonzero constants",
            budget.max_vectors
        )));
    }
    let nonzero: Vec<K::Elem> = (1..q).map(|i| field.element(i)).collect();
    for k in 0..=m {
        let mut pos: Vec<usize> = (0..k).collect();
        loop {
            let mut vals = vec![0usize; k];
            loop {
                let mut table = vec![field.zero(); cells];
                for (&p, &v) in pos.iter().zip(&vals) {
                    table[p] = nonzero[v].clone();
                }
                let a = Algebra::new(field.clone(), n, table)?;
                if let ControlFlow::Break(b) = visit(a) {
                    return Ok(Some(b));
                }
                if !bump(&mut vals, nonzero.len()) {
                    break;
                }
            }
            if !next_subset(&mut pos, cells) {
                break;
            }
        }
    }
    Ok(None)
}

fn bump(digits: &mut [usize], base: usize) -> bool {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < base {
            return true;
        }
        *d = 0;
    }
    false
}

fn next_subset(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    for i in (0..k).rev() {
        if c[i] < n - k + i {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Tables satisfying `kind` (any table when `kind` is `None`).
pub fn search<K: Field>(
    field: K,
    n: usize,
    kind: Option<IdentityKind>,
    mode: SearchMode,
    budget: &EnumerationBudget,
) -> Result<Vec<Algebra<K>>> {
    let passes = |a: &Algebra<K>| kind.map(|k| a.check_identity(k)).unwrap_or(true);
    let mut out = Vec::new();
    match mode {
        SearchMode::Exhaustive { max_nonzero } => {
            for_each_table(&field, n, max_nonzero, budget, |a| {
                if passes(&a) {
                    out.push(a);
                }
                ControlFlow::<()>::Continue(())
            })?;
        }
        SearchMode::Random { samples, seed, sparsity } => {
            let q = field_order(&field)?;
            if !(0.0..=1.0).contains(&sparsity) {
                return Err(Error::usage(format!("sparsity {sparsity} is not a probability")));
            }
            if samples > budget.max_vectors {
                return Err(Error::budget(format!("{samples} samples exceed the cap of {}", budget.max_vectors)));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let cells = n * n * n;
            for _ in 0..samples {
                let table: Vec<K::Elem> = (0..cells)
                    .map(|_| {
                        if q == 1 || rng.gen_bool(sparsity) {
                            field.zero()
                        } else {
                            field.element(rng.gen_range(1..q))
                        }
                    })
                    .collect();
                let a = Algebra::new(field.clone(), n, table)?;
                if passes(&a) {
                    out.push(a);
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_load_and_reverify() {
        let fx = builtin_fixtures();
        assert!(fx.len() >= 30);
        let mut names: Vec<_> = fx.iter().map(|f| f.name.clone()).collect();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), fx.len(), "fixture names are unique");
        for want in ["A_ex_F2", "A_ex_F3", "A_ex_F5", "A_ex_Q", "Z4_F2", "T4_F2", "N1_F2", "A_nov_F2", "FxF_F2"] {
            assert!(fixture(want).is_some(), "{want}");
        }
    }

    #[test]
    fn a_nov_is_novikov_not_bicommutative() {
        let a = a_nov(prime(2));
        assert!(a.check_identity(IdentityKind::NovikovLeft));
        assert!(!a.check_identity(IdentityKind::Bicommutative));
        // b(ab) = 0 while a(bb) = a
        let (va, vb) = (a.basis_vector(0), a.basis_vector(1));
        assert_eq!(a.multiply(&vb, &a.multiply(&va, &vb).unwrap()).unwrap(), a.zero_vector());
        assert_eq!(a.multiply(&va, &a.multiply(&vb, &vb).unwrap()).unwrap(), va);
    }

    #[test]
    fn exhaustive_dim2_contains_a_ex() {
        let f = prime(2);
        let found = search(f, 2, Some(IdentityKind::Bicommutative), SearchMode::Exhaustive { max_nonzero: None }, &EnumerationBudget::default()).unwrap();
        let target = a_ex(f).without_labels();
        assert!(found.contains(&target));
        let all = search(f, 2, None, SearchMode::Exhaustive { max_nonzero: None }, &EnumerationBudget::default()).unwrap();
        assert_eq!(all.len(), 256);
        let mut tables: Vec<_> = all.iter().map(|a| a.table().to_vec()).collect();
        tables.sort();
        tables.dedup();
        assert_eq!(tables.len(), 256);
    }

    #[test]
    fn dimension_one_tables() {
        let f = prime(2);
        for kind in IdentityKind::ALL {
            let found = search(f, 1, Some(kind), SearchMode::Exhaustive { max_nonzero: None }, &EnumerationBudget::default()).unwrap();
            assert_eq!(found.len(), 2, "{kind}");
        }
    }

    #[test]
    fn sparse_table_count() {
        assert_eq!(table_count(3, 3, 4), 1 + 54 + 351 * 4 + 2925 * 8 + 17550 * 16);
        assert_eq!(table_count(2, 2, 8), 256);
        let mut n = 0;
        for_each_table(&prime(3), 2, Some(2), &EnumerationBudget::default(), |_| {
            n += 1;
            ControlFlow::<()>::Continue(())
        })
        .unwrap();
        assert_eq!(n as u128, table_count(3, 2, 2));
    }

    #[test]
    fn random_search_is_reproducible() {
        let run = |seed| {
            search(prime(3), 2, Some(IdentityKind::NovikovLeft), SearchMode::Random { samples: 1000, seed, sparsity: 0.7 }, &EnumerationBudget::default()).unwrap()
        };
        let a = run(42);
        assert_eq!(a, run(42));
        assert!(!a.is_empty());
        assert!(a.iter().all(|x| x.check_identity(IdentityKind::NovikovLeft)));
        assert_ne!(a, run(43));
    }

    #[test]
    fn search_budget_and_field_errors() {
        let e = search(prime(3), 3, None, SearchMode::Exhaustive { max_nonzero: None }, &EnumerationBudget::default()).unwrap_err();
        assert!(matches!(e, Error::Budget(ref m) if m.contains("nonzero")));
        let e = search(Rationals, 1, None, SearchMode::Exhaustive { max_nonzero: None }, &EnumerationBudget::default()).unwrap_err();
        assert!(matches!(e, Error::Unsupported(_)));
    }
}
