use std::collections::BTreeSet;

use proptest::prelude::*;

use super::*;
use crate::corpus::builders::*;
use crate::exactfield::{PrimeField, Rationals};

fn f2() -> PrimeField {
    PrimeField::new(2).unwrap()
}

fn b() -> EnumerationBudget {
    EnumerationBudget::default()
}

fn span_of<K: Field>(a: &Algebra<K>, vs: &[&[i64]]) -> Subspace<K> {
    let f = a.field();
    a.span(vs.iter().map(|v| v.iter().map(|&c| f.from_i64(c)).collect()).collect()).unwrap()
}

fn table(n: usize, bits: u64) -> Algebra<PrimeField> {
    let f = f2();
    Algebra::new(f, n, (0..n * n * n).map(|i| f.element((bits >> i) & 1)).collect()).unwrap()
}

// Element-set oracle over F_2: subspaces of F_2^n for n ≤ 3 as bitmasks of
// their 2^n members, found by closing subsets under addition directly.

fn elem(v: &[u64]) -> usize {
    v.iter().enumerate().map(|(i, &c)| (c as usize) << i).sum()
}

fn unelem(e: usize, n: usize) -> Vec<u64> {
    (0..n).map(|i| ((e >> i) & 1) as u64).collect()
}

fn oracle_subspaces(n: usize) -> Vec<u32> {
    let size = 1usize << n;
    let mut out = BTreeSet::new();
    for mask in 0u32..(1 << size) {
        if mask & 1 == 0 {
            continue;
        }
        let members: Vec<usize> = (0..size).filter(|e| mask >> e & 1 == 1).collect();
        if members.iter().all(|&x| members.iter().all(|&y| mask >> (x ^ y) & 1 == 1)) {
            out.insert(mask);
        }
    }
    out.into_iter().collect()
}

fn products_in(a: &Algebra<PrimeField>, lhs: u32, rhs: u32, target: u32) -> bool {
    let n = a.dim();
    (0..1usize << n).filter(|x| lhs >> x & 1 == 1).all(|x| {
        (0..1usize << n)
            .filter(|y| rhs >> y & 1 == 1)
            .all(|y| target >> elem(&a.multiply(&unelem(x, n), &unelem(y, n)).unwrap()) & 1 == 1)
    })
}

fn to_subspace(a: &Algebra<PrimeField>, mask: u32) -> Subspace<PrimeField> {
    let n = a.dim();
    a.span((0..1usize << n).filter(|e| mask >> e & 1 == 1).map(|e| unelem(e, n)).collect()).unwrap()
}

fn oracle_subalgebras(a: &Algebra<PrimeField>) -> Vec<u32> {
    oracle_subspaces(a.dim()).into_iter().filter(|&s| products_in(a, s, s, s)).collect()
}

fn oracle_ideals(a: &Algebra<PrimeField>) -> Vec<u32> {
    let full = (1u32 << (1 << a.dim())) - 1;
    oracle_subspaces(a.dim())
        .into_iter()
        .filter(|&s| products_in(a, full, s, s) && products_in(a, s, full, s))
        .collect()
}

fn minimal_masks(sets: &[u32]) -> Vec<u32> {
    sets.iter().copied().filter(|&s| s != 1 && !sets.iter().any(|&t| t != 1 && t != s && t & s == t)).collect()
}

fn maximal_proper(sets: &[u32], full: u32) -> Vec<u32> {
    sets.iter().copied().filter(|&s| s != full && !sets.iter().any(|&t| t != full && t != s && t & s == s)).collect()
}

fn sorted(mut v: Vec<Subspace<PrimeField>>) -> Vec<Subspace<PrimeField>> {
    v.sort();
    v
}

#[test]
fn lattice_agrees_with_element_set_oracle() {
    let budget = b();
    for n in 1..=3usize {
        let count = oracle_subspaces(n).len() as u128;
        assert_eq!(subspace_count(2, n), count);
        assert_eq!(all_subspaces(&f2(), n, &budget).unwrap().len() as u128, count);
    }
    let mut samples: Vec<Algebra<PrimeField>> = (0u64..256).map(|bits| table(2, bits)).collect();
    samples.extend((0u64..40).map(|i| table(3, i.wrapping_mul(0x9E37_79B9_7F4A_7C15) >> 37)));
    samples.extend([a_ex(f2()), truncated_polynomial(f2(), 3), n1(f2()), a_nov(f2()), zero_algebra(f2(), 3)]);
    for a in &samples {
        let full = (1u32 << (1 << a.dim())) - 1;
        let subs = oracle_subalgebras(a);
        let ideals = oracle_ideals(a);
        let want = |m: &[u32]| sorted(m.iter().map(|&s| to_subspace(a, s)).collect());
        assert_eq!(sorted(all_subalgebras(a, &budget).unwrap()), want(&subs));
        assert_eq!(sorted(all_ideals(a, &budget).unwrap()), want(&ideals));
        assert_eq!(sorted(minimal_ideals(a, &budget).unwrap()), want(&minimal_masks(&ideals)));
        let maximal = maximal_proper(&subs, full);
        assert_eq!(sorted(maximal_subalgebras(a, &budget).unwrap()), want(&maximal));
        let f_mask = maximal.iter().fold(full, |acc, &m| acc & m);
        assert_eq!(frattini(a, &budget).unwrap().subalgebra, to_subspace(a, f_mask));
        // largest solvable ideal, from the ideal lattice
        let r = ideals
            .iter()
            .filter(|&&i| crate::series::is_solvable(a, &to_subspace(a, i)))
            .fold(a.zero_subspace(), |acc, &i| acc.sum(&to_subspace(a, i)).unwrap());
        assert_eq!(radical_unchecked(a, RadicalKind::Solvable, &budget).unwrap(), r);
    }
}

#[test]
fn minimal_ideal_examples() {
    let a = a_ex(f2());
    assert_eq!(minimal_ideals(&a, &b()).unwrap(), vec![span_of(&a, &[&[1, 0]])]);
    assert_eq!(socle(&a, &b()).unwrap(), span_of(&a, &[&[1, 0]]));
    assert!(zero_socle(&a, &b()).unwrap().is_zero());
    assert_eq!(minimal_ideals(&zero_algebra(f2(), 2), &b()).unwrap().len(), 3);
    let t3 = truncated_polynomial(f2(), 3);
    assert_eq!(minimal_ideals(&t3, &b()).unwrap(), vec![span_of(&t3, &[&[0, 0, 1]])]);
}

#[test]
fn maximal_subalgebra_and_frattini_examples() {
    let a = a_ex(f2());
    assert_eq!(maximal_subalgebras(&a, &b()).unwrap().len(), 3);
    let fr = frattini(&a, &b()).unwrap();
    assert!(fr.subalgebra.is_zero() && fr.ideal.is_zero());

    let t3 = truncated_polynomial(f2(), 3);
    let sq = span_of(&t3, &[&[0, 1, 0], &[0, 0, 1]]);
    assert_eq!(maximal_subalgebras(&t3, &b()).unwrap(), vec![sq.clone()]);
    let fr = frattini(&t3, &b()).unwrap();
    assert_eq!(fr.subalgebra, sq);
    assert_eq!(fr.ideal, sq);

    let z2 = zero_algebra(f2(), 2);
    assert_eq!(maximal_subalgebras(&z2, &b()).unwrap().len(), 3);
    assert!(frattini(&z2, &b()).unwrap().ideal.is_zero());
}

#[test]
fn ideal_core_examples() {
    let a = a_ex(Rationals);
    assert!(ideal_core(&a, &span_of(&a, &[&[0, 1]])).unwrap().is_zero());
    let x = span_of(&a, &[&[1, 0]]);
    assert_eq!(ideal_core(&a, &x).unwrap(), x);
    assert_eq!(ideal_core(&a, &a.full()).unwrap(), a.full());
}

#[test]
fn radical_examples() {
    let a = a_ex(f2());
    assert!(radical(&a, RadicalKind::Solvable, &b()).unwrap().is_zero());
    assert!(is_semisimple(&a, &b()).unwrap());
    assert!(is_semisimple(&a_ex(PrimeField::new(3).unwrap()), &b()).unwrap());
    let t3 = truncated_polynomial(f2(), 3);
    assert_eq!(radical(&t3, RadicalKind::Nilpotent, &b()).unwrap(), t3.full());
    assert!(!is_semisimple(&t3, &b()).unwrap());
    let n = a_nov(f2());
    let sa = span_of(&n, &[&[1, 0]]);
    assert_eq!(radical(&n, RadicalKind::Solvable, &b()).unwrap(), sa);
    assert_eq!(radical(&n, RadicalKind::RightNil, &b()).unwrap(), sa);
    assert!(is_semisimple(&idempotents(f2(), 2), &b()).unwrap());
}

#[test]
fn errors_over_q_and_over_budget() {
    let a = a_ex(Rationals);
    assert!(matches!(minimal_ideals(&a, &b()), Err(Error::Unsupported(m)) if m.contains("requires finite field")));
    assert!(matches!(radical(&a, RadicalKind::Solvable, &b()), Err(Error::Unsupported(_))));
    assert!(matches!(maximal_subalgebras(&a, &b()), Err(Error::Unsupported(_))));
    let tight = EnumerationBudget::new(4, 4).unwrap();
    let t3 = truncated_polynomial(f2(), 3);
    assert!(matches!(maximal_subalgebras(&t3, &tight), Err(Error::Budget(_))));
    assert!(matches!(minimal_ideals(&t3, &tight), Err(Error::Budget(_))));
    assert!(matches!(EnumerationBudget::new(0, 1), Err(Error::Usage(_))));
}

#[test]
fn nil_radicals_refused_outside_natural_classes() {
    let a = (0u64..256).map(|bits| table(2, bits)).find(|a| !a.identities().natural_class()).unwrap();
    assert!(!a.identities().natural_class());
    assert!(matches!(radical(&a, RadicalKind::Nilpotent, &b()), Err(Error::Precondition(_))));
    assert!(radical(&a, RadicalKind::Solvable, &b()).is_ok());
}

#[test]
fn gaussian_binomials() {
    assert_eq!(gaussian_binomial(2, 4, 2), 35);
    assert_eq!(gaussian_binomial(3, 3, 1), 13);
    assert_eq!(gaussian_binomial(5, 3, 0), 1);
    assert_eq!(gaussian_binomial(2, 3, 4), 0);
    assert_eq!(subspace_count(2, 4), 67);
}

fn arb_f2_table(n: usize) -> impl Strategy<Value = Algebra<PrimeField>> {
    // sparse tables: a quarter of the constants nonzero on average
    proptest::collection::vec(prop_oneof![3 => Just(0u64), 1 => Just(1u64)], n * n * n).prop_map(move |e| {
        let f = f2();
        Algebra::new(f, n, e.into_iter().map(|c| f.element(c)).collect()).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn bit_packed_radicals_match_generic(n in 2usize..=7, seed in any::<u64>()) {
        let a = {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let f = f2();
            Algebra::new(f, n, (0..n * n * n).map(|_| f.element(u64::from(rng.gen_bool(0.2)))).collect()).unwrap()
        };
        let g = Gf2Algebra::from_algebra(&a);
        for kind in RadicalKind::ALL {
            let fast = Gf2Algebra::to_subspace(a.field(), n, &g.radical(kind));
            prop_assert_eq!(fast, radical_generic(&a, kind, &b()).unwrap(), "{}", kind);
        }
    }

    #[test]
    fn radicals_are_ideals_with_their_property(a in arb_f2_table(3)) {
        for kind in RadicalKind::ALL {
            let r = radical_unchecked(&a, kind, &b()).unwrap();
            prop_assert!(a.is_ideal(&r));
            if a.identities().natural_class() || kind == RadicalKind::Solvable {
                prop_assert!(has_radical_property(&a, &r, kind));
            }
        }
    }

    #[test]
    fn frattini_ideal_inside_frattini_subalgebra(a in arb_f2_table(3)) {
        let fr = frattini(&a, &b()).unwrap();
        prop_assert!(fr.subalgebra.contains(&fr.ideal));
        prop_assert!(a.is_ideal(&fr.ideal));
    }
}
