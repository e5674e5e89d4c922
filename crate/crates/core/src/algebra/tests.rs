use proptest::prelude::*;

use super::*;
use crate::corpus::builders::*;
use crate::exactfield::{PrimeField, Rationals};

fn fp(p: u64) -> PrimeField {
    PrimeField::new(p).unwrap()
}

fn table_algebra(p: u64, n: usize, entries: &[u64]) -> Algebra<PrimeField> {
    let f = fp(p);
    Algebra::new(f, n, entries.iter().map(|&e| f.element(e % p)).collect()).unwrap()
}

fn all_elements(f: &PrimeField, n: usize) -> Vec<Vec<u64>> {
    let q = f.p();
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out.into_iter().flat_map(|v| (0..q).map(move |c| [v.clone(), vec![c]].concat())).collect();
    }
    out
}

/// Evaluates one identity on every triple of elements.
fn brute_force(a: &Algebra<PrimeField>, kind: IdentityKind) -> bool {
    use IdentityKind::*;
    let f = *a.field();
    let m = |x: &[u64], y: &[u64]| a.multiply(x, y).unwrap();
    let assoc = |x: &[u64], y: &[u64], z: &[u64]| {
        let l = m(&m(x, y), z);
        let r = m(x, &m(y, z));
        l.iter().zip(&r).map(|(p, q)| f.sub(p, q)).collect::<Vec<u64>>()
    };
    let elems = all_elements(&f, a.dim());
    let rc = |x: &[u64], y: &[u64], z: &[u64]| m(&m(x, y), z) == m(&m(x, z), y);
    let lc = |x: &[u64], y: &[u64], z: &[u64]| m(x, &m(y, z)) == m(y, &m(x, z));
    let ls = |x: &[u64], y: &[u64], z: &[u64]| assoc(x, y, z) == assoc(y, x, z);
    let rs = |x: &[u64], y: &[u64], z: &[u64]| assoc(x, y, z) == assoc(x, z, y);
    for x in &elems {
        for y in &elems {
            if kind == Commutative && m(x, y) != m(y, x) {
                return false;
            }
            for z in &elems {
                let ok = match kind {
                    RightCommutative => rc(x, y, z),
                    LeftCommutative => lc(x, y, z),
                    Bicommutative => rc(x, y, z) && lc(x, y, z),
                    LeftSymmetric => ls(x, y, z),
                    RightSymmetric => rs(x, y, z),
                    Assosymmetric => ls(x, y, z) && rs(x, y, z),
                    NovikovLeft => ls(x, y, z) && rc(x, y, z),
                    NovikovRight => rs(x, y, z) && lc(x, y, z),
                    Associative => assoc(x, y, z).iter().all(|c| *c == 0),
                    Commutative => true,
                };
                if !ok {
                    return false;
                }
            }
        }
    }
    true
}

#[test]
fn basis_checks_match_brute_force_f2_dim2() {
    for code in 0u64..256 {
        let entries: Vec<u64> = (0..8).map(|i| (code >> i) & 1).collect();
        let a = table_algebra(2, 2, &entries);
        for kind in IdentityKind::ALL {
            assert_eq!(a.check_identity(kind), brute_force(&a, kind), "{kind} on table {code:08b}");
        }
    }
}

#[test]
fn basis_checks_match_brute_force_on_fixtures() {
    for a in [a_ex(fp(2)), a_ex(fp(3)), a_nov(fp(3)), truncated_polynomial(fp(3), 3), n1(fp(2)), idempotents(fp(3), 2)] {
        for kind in IdentityKind::ALL {
            assert_eq!(a.check_identity(kind), brute_force(&a, kind), "{kind}");
        }
    }
}

#[test]
fn example_products() {
    let a = a_ex(fp(2));
    let (x, y) = (a.basis_vector(0), a.basis_vector(1));
    assert_eq!(a.multiply(&x, &y).unwrap(), x);
    assert_eq!(a.multiply(&y, &x).unwrap(), a.zero_vector());
    assert_eq!(a.associator(&x, &y, &y).unwrap(), x);
    assert!(a.check_identity(IdentityKind::Bicommutative));
    assert!(!a.check_identity(IdentityKind::Commutative));
    assert!(!a.check_identity(IdentityKind::Associative));
    assert!(!a.check_identity(IdentityKind::Assosymmetric));
}

#[test]
fn multiply_rejects_wrong_lengths() {
    let a = a_ex(Rationals);
    assert!(matches!(a.multiply(&[Rationals.one()], &a.basis_vector(0)), Err(Error::Usage(_))));
}

#[test]
fn quotient_requires_an_ideal() {
    let a = a_ex(fp(3));
    let y = a.span(vec![a.basis_vector(1)]).unwrap();
    assert!(matches!(a.quotient(&y), Err(Error::Usage(_))));
    let x = a.span(vec![a.basis_vector(0)]).unwrap();
    let (q, _) = a.quotient(&x).unwrap();
    assert_eq!(q.dim(), 1);
    assert_eq!(q.nonzero_constants(), 0);
}

#[test]
fn opposite_swaps_sides() {
    let a = a_nov(fp(5));
    let o = a.opposite();
    assert!(o.check_identity(IdentityKind::NovikovRight));
    assert_eq!(o.opposite(), a);
}

fn arb_table(p: u64, n: usize) -> impl Strategy<Value = Algebra<PrimeField>> {
    proptest::collection::vec(0..p, n * n * n).prop_map(move |e| table_algebra(p, n, &e))
}

fn arb_vec(p: u64, n: usize) -> impl Strategy<Value = Vec<u64>> {
    proptest::collection::vec(0..p, n)
}

proptest! {
    #[test]
    fn multiplication_is_bilinear(a in arb_table(5, 3), x in arb_vec(5, 3), y in arb_vec(5, 3), z in arb_vec(5, 3)) {
        let f = *a.field();
        let sum: Vec<u64> = x.iter().zip(&y).map(|(p, q)| f.add(p, q)).collect();
        let lhs = a.multiply(&sum, &z).unwrap();
        let (xz, yz) = (a.multiply(&x, &z).unwrap(), a.multiply(&y, &z).unwrap());
        let rhs: Vec<u64> = xz.iter().zip(&yz).map(|(p, q)| f.add(p, q)).collect();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn flags_agree_with_single_checks(a in arb_table(3, 2)) {
        let flags = a.identities();
        for kind in IdentityKind::ALL {
            prop_assert_eq!(flags.holds(kind), a.check_identity(kind));
        }
        prop_assert_eq!(flags.holds(IdentityKind::Bicommutative),
            flags.holds(IdentityKind::RightCommutative) && flags.holds(IdentityKind::LeftCommutative));
        prop_assert_eq!(flags.holds(IdentityKind::Assosymmetric),
            flags.holds(IdentityKind::LeftSymmetric) && flags.holds(IdentityKind::RightSymmetric));
    }

    #[test]
    fn opposite_mirrors_identities(a in arb_table(3, 2)) {
        use IdentityKind::*;
        let o = a.opposite();
        for (k, m) in [(RightCommutative, LeftCommutative), (LeftSymmetric, RightSymmetric), (NovikovLeft, NovikovRight)] {
            prop_assert_eq!(a.check_identity(k), o.check_identity(m));
        }
    }

    #[test]
    fn ideal_closure_is_an_ideal(a in arb_table(2, 3), v in arb_vec(2, 3)) {
        let i = a.ideal_closure(std::slice::from_ref(&v)).unwrap();
        prop_assert!(a.is_ideal(&i));
        prop_assert!(i.contains_vector(&v));
        let s = a.subalgebra_closure(std::slice::from_ref(&v)).unwrap();
        prop_assert!(a.is_subalgebra(&s));
        prop_assert!(i.contains(&s));
    }

    #[test]
    fn idealiser_and_annihilator_contain_what_they_should(a in arb_table(2, 3), v in arb_vec(2, 3)) {
        let b = a.subalgebra_closure(&[v]).unwrap();
        let i = a.idealizer(&b).unwrap();
        prop_assert!(i.contains(&b));
        let ann = a.annihilator(&b).unwrap();
        prop_assert!(a.product(&ann, &b).is_zero() && a.product(&b, &ann).is_zero());
    }
}
