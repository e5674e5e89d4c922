use super::*;
use crate::corpus::builders::*;
use crate::corpus::builtin_fixtures;
use crate::exactfield::{PrimeField, Rationals};
use crate::file::LoadedAlgebra;
use crate::linalg::Vector;
use crate::series::SeriesKind;

fn fp(p: u64) -> PrimeField {
    PrimeField::new(p).unwrap()
}

fn holds<K: Field>(a: &Algebra<K>, check: CheckId) -> VerificationReport {
    let r = verify(a, check);
    assert!(r.applicable, "{check} not applicable: {:?}", r.reason);
    assert!(r.holds, "{check} fails: {:?}", r.counterexample);
    r
}

fn inapplicable<K: Field>(a: &Algebra<K>, check: CheckId) -> VerificationReport {
    let r = verify(a, check);
    assert!(!r.applicable, "{check} unexpectedly applicable");
    assert!(!r.holds);
    assert!(r.reason.is_some());
    r
}

#[test]
fn catalogue_names_round_trip() {
    assert_eq!(CheckId::ALL.len(), 41);
    for &c in CheckId::ALL {
        assert_eq!(c.as_str().parse::<CheckId>().unwrap(), c);
        let json = serde_json::to_value(c).unwrap();
        assert_eq!(json, Value::String(c.as_str().into()));
    }
    assert_eq!("PHI_EQ_ASQ_NILPOTENT".parse::<CheckId>().unwrap(), CheckId::PhiEqAsqNilpotent);
    assert!(matches!("no_such_check".parse::<CheckId>(), Err(Error::Usage(_))));
    for a in Atom::ALL {
        assert_eq!(a.as_str().parse::<Atom>().unwrap(), a);
    }
    assert_eq!("right-cube-zero".parse::<Atom>().unwrap(), Atom::RightCubeZero);
}

#[test]
fn example_dt1() {
    let a = a_ex(fp(2));
    let r = holds(&a, CheckId::Dt1AsqCommAssoc);
    assert_eq!(r.witness["Asq"], json!([["1", "0"]]));
}

#[test]
fn truncated_phi_equals_square() {
    let t3 = truncated_polynomial(fp(2), 3);
    let r = holds(&t3, CheckId::PhiEqAsqNilpotent);
    assert_eq!(r.witness["phi"], r.witness["Asq"]);
    assert_eq!(r.witness["frattiniSubalgebra"], r.witness["Asq"]);
}

#[test]
fn novikov_equivalences_all_false() {
    let r = holds(&a_nov(fp(2)), CheckId::NovikovEquivalences);
    assert_eq!(r.witness["rightNilpotent"], json!(false));
    assert_eq!(r.witness["AsqNilpotent"], json!(false));
    assert_eq!(r.witness["solvable"], json!(false));
}

#[test]
fn min1_on_semisimple_example() {
    let r = holds(&a_ex(fp(2)), CheckId::Min1MinimalIdealSides);
    assert_eq!(r.witness["radical"], json!([]));
}

#[test]
fn characteristic_gates() {
    for a in [a_ex(fp(2)), truncated_polynomial(fp(2), 3), zero_algebra(fp(2), 2)] {
        inapplicable(&a, CheckId::AssosymSolvableIsNilpotent);
        inapplicable(&a, CheckId::Char0PhiEqRsq);
    }
    inapplicable(&truncated_polynomial(fp(3), 2), CheckId::KleinfeldSemisimpleAssociative);
    holds(&truncated_polynomial(fp(5), 3), CheckId::AssosymSolvableIsNilpotent);
}

#[test]
fn enumeration_over_q_is_inapplicable_without_certificates() {
    let a = a_ex(Rationals);
    let r = inapplicable(&a, CheckId::NaturalProductBicommutative);
    assert!(r.reason.unwrap().contains("requires finite field"));
    holds(&a, CheckId::Dt1AsqCommAssoc);
    let r = inapplicable(&a, CheckId::Min1MinimalIdealSides);
    assert!(r.reason.unwrap().contains("certificates"));
}

#[test]
fn certified_rational_checks() {
    for f in builtin_fixtures() {
        if let LoadedAlgebra::Rational(a, certs) = &f.algebra {
            if certs.is_empty() {
                continue;
            }
            let v = Verifier::new(a).with_certificates(certs.clone());
            for r in v.run_all() {
                assert!(!r.failed(), "{} on {}: {:?}", r.check, f.name, r.counterexample);
            }
        }
    }
}

#[test]
fn verify_all_on_examples() {
    for a in [truncated_polynomial(fp(2), 3), a_ex(fp(2))] {
        let reports = verify_all(&a);
        assert_eq!(reports.iter().map(|r| r.check).collect::<Vec<_>>(), CheckId::ALL.to_vec());
        assert!(reports.iter().any(|r| r.applicable));
        for r in &reports {
            assert!(!r.failed(), "{}: {:?}", r.check, r.counterexample);
            if !r.applicable {
                assert!(!r.holds && r.reason.is_some());
            }
        }
    }
}

#[test]
fn every_fixture_is_sound() {
    for f in builtin_fixtures() {
        let reports = match &f.algebra {
            LoadedAlgebra::Rational(a, c) => Verifier::new(a).with_certificates(c.clone()).run_all(),
            LoadedAlgebra::Prime(a, c) => Verifier::new(a).with_certificates(c.clone()).run_all(),
        };
        for r in reports {
            assert!(!r.failed(), "{} on {}: {:?}", r.check, f.name, r.counterexample);
        }
    }
}

#[test]
fn corrupted_example_is_caught() {
    let mut a = a_ex(fp(2));
    let y: Vector<PrimeField> = a.basis_vector(1);
    a.set_product(1, 0, y).unwrap();
    let v = Verifier::new(&a).with_assumptions(Assumptions::all());
    let failed: Vec<VerificationReport> = v.run_all().into_iter().filter(|r| r.failed()).collect();
    assert!(!failed.is_empty());
    for r in &failed {
        let cx = r.counterexample.as_ref().expect("failed reports carry a counterexample");
        assert!(cx.get("algebra").is_some());
        assert!(!r.assumed.is_empty() || r.applicable);
    }
}

#[test]
fn assumed_hypotheses_are_listed() {
    let a = a_ex(fp(5));
    let r = Verifier::new(&a)
        .with_assumptions(Assumptions::none().with(Atom::Assosymmetric))
        .run(CheckId::KleinfeldSemisimpleAssociative);
    assert!(r.failed());
    assert_eq!(r.assumed, vec![Atom::Assosymmetric]);
    assert!(r.counterexample.unwrap()["nonzeroAssociatorOnBasis"].is_array());
}

#[test]
fn oracle_examples() {
    let t3 = truncated_polynomial(fp(2), 3);
    assert!(bracket_power_oracle(&t3, 4).unwrap().is_zero());
    assert_eq!(crate::series::compute_series(&t3, SeriesKind::BracketPower).index, Some(4));
    assert!(bracket_power_oracle(&zero_algebra(fp(2), 2), 2).unwrap().is_zero());
    let a = a_ex(fp(2));
    assert_eq!(bracket_power_oracle(&a, 3).unwrap(), a.span(vec![a.basis_vector(0)]).unwrap());
    assert!(matches!(bracket_power_oracle(&a, 7), Err(Error::Budget(_))));
    assert!(matches!(bracket_power_oracle(&a, 0), Err(Error::Usage(_))));
}

#[test]
fn oracle_agrees_with_bracket_series() {
    for f in builtin_fixtures() {
        crate::with_algebra!(f.any(), a => {
            let s = crate::series::compute_series(&a, SeriesKind::BracketPower);
            for n in 1..=MAX_ORACLE_LENGTH {
                assert_eq!(&bracket_power_oracle(&a, n).unwrap(), s.term(n), "{} n = {n}", f.name);
            }
        });
    }
}

#[test]
fn maximal_among_keeps_only_maximal() {
    let a = zero_algebra(fp(2), 2);
    let subs = enumerate::all_subalgebras(&a, &EnumerationBudget::default()).unwrap();
    let m = maximal_among(subs);
    assert_eq!(m.len(), 3);
    assert!(m.iter().all(|s| s.dim() == 1));
}

/// e1² = e1 + e2, e1e2 = e3, e3² = e2 over F2: φ = span{e2, e3} is nilpotent
/// and a minimal ideal with nonzero square, so Zsoc = 0 and A splits trivially.
#[test]
fn split_needs_zero_minimal_ideals_in_phi() {
    let f = fp(2);
    let mut t = vec![0u64; 27];
    for (i, j, k) in [(0, 0, 0), (0, 0, 1), (0, 1, 2), (2, 2, 1)] {
        t[(i * 3 + j) * 3 + k] = 1;
    }
    let a = Algebra::new(f, 3, t).unwrap();
    assert!(!a.identities().natural_class());
    let r = inapplicable(&a, CheckId::SplitIffPhiFree);
    assert!(r.reason.unwrap().contains("phiMinimalIdealsZero"));
    let assumed = Verifier::new(&a).with_assumptions(Assumptions::none().with(Atom::PhiMinimalIdealsZero)).run(CheckId::SplitIffPhiFree);
    assert!(assumed.failed());
    assert!(assumed.counterexample.unwrap().get("algebra").is_some());
}
