//! Decompositions: semisimple bicommutative algebras as `S² ∔ U`, φ-free
//! algebras split over their zero socle (with the bicommutative and Novikov
//! refinements), and radical reports for assosymmetric and Novikov algebras.

use std::ops::ControlFlow;

use serde::Serialize;

use crate::algebra::{Algebra, IdentityKind};
use crate::enumerate::{self, field_order, for_each_complement, EnumerationBudget, RadicalKind};
use crate::error::{Error, Result};
use crate::exactfield::Field;
use crate::linalg::Subspace;
use crate::series::{self, NilpotencyProfile};

/// Which of `S_i U = 0` and `U S_i = 0` hold.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ActionPattern {
    pub simple_times_complement_zero: bool,
    pub complement_times_simple_zero: bool,
}

/// `S = S² ∔ U`, `S² = S_1 ⊕ ... ⊕ S_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemisimpleBicommutativeDecomposition<K: Field> {
    pub square: Subspace<K>,
    pub simples: Vec<Subspace<K>>,
    pub complement: Subspace<K>,
    pub action_pattern: Vec<ActionPattern>,
}

/// The refinement `A = Zsoc(A) ∔ (D ⊕ E)` of a φ-free bicommutative algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BicommutativeRefinement<K: Field> {
    pub radical: Subspace<K>,
    /// `C ∩ R`, a zero subalgebra
    pub d: Subspace<K>,
    /// semisimple complement of `D` in `C`
    pub e: Subspace<K>,
    /// `E = E² ∔ U` expressed in the coordinates of `A`
    pub e_decomposition: SemisimpleBicommutativeDecomposition<K>,
    /// sum of the minimal zero ideals `Z` with `ZR = 0`
    pub z1: Subspace<K>,
    /// direct sum of the remaining minimal zero ideals, each with `RZ = 0`
    pub z2: Subspace<K>,
    /// other complements `E` with a different action pattern exist
    pub e_not_unique: bool,
}

/// `A(C ∩ R) = 0` for a φ-free Novikov algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NovikovSplitWitness<K: Field> {
    pub radical: Subspace<K>,
    pub c_cap_r: Subspace<K>,
    /// `A(C∩R) = 0` (left Novikov) or `(C∩R)A = 0` (right Novikov)
    pub annihilated: bool,
    pub side: IdentityKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiFreeSplit<K: Field> {
    pub zsoc: Subspace<K>,
    pub complement: Subspace<K>,
    pub bicommutative: Option<BicommutativeRefinement<K>>,
    pub novikov: Vec<NovikovSplitWitness<K>>,
}

fn require_finite<K: Field>(a: &Algebra<K>) -> Result<()> {
    field_order(a.field()).map(|_| ())
}

/// Decomposes a semisimple bicommutative algebra over a finite field.
pub fn decompose_semisimple_bicommutative<K: Field>(
    s: &Algebra<K>,
    budget: &EnumerationBudget,
) -> Result<SemisimpleBicommutativeDecomposition<K>> {
    require_finite(s)?;
    if !s.check_identity(IdentityKind::Bicommutative) {
        return Err(Error::precondition("not bicommutative"));
    }
    let r = enumerate::radical(s, RadicalKind::Solvable, budget)?;
    if !r.is_zero() {
        return Err(Error::precondition(format!("not semisimple: the solvable radical has dimension {}", r.dim())));
    }
    semisimple_parts(s, budget)
}

/// The decomposition without re-checking the hypotheses.
pub(crate) fn semisimple_parts<K: Field>(
    s: &Algebra<K>,
    budget: &EnumerationBudget,
) -> Result<SemisimpleBicommutativeDecomposition<K>> {
    let full = s.full();
    let square = s.square(&full);
    let simples: Vec<Subspace<K>> = enumerate::minimal_ideals(s, budget)?
        .into_iter()
        .filter(|m| square.contains(m))
        .collect();
    let total = enumerate::sum_all(s, simples.iter());
    let dims: usize = simples.iter().map(|m| m.dim()).sum();
    if total != square || dims != square.dim() {
        return Err(Error::TheoremViolation(format!(
            "the minimal ideals inside S² do not form a direct sum equal to S² (dimensions {dims} and {})",
            square.dim()
        )));
    }
    for m in &simples {
        if !is_simple(s, m, budget)? {
            return Err(Error::TheoremViolation("a minimal ideal inside S² is not a simple algebra".into()));
        }
    }
    let complement = for_each_complement(&square, &full, budget, |c| {
        if s.is_subalgebra(&c) {
            ControlFlow::Break(c)
        } else {
            ControlFlow::Continue(())
        }
    })?
    .ok_or_else(|| Error::TheoremViolation("no subalgebra complement of S² exists".into()))?;
    if !s.square(&complement).is_zero() {
        return Err(Error::TheoremViolation("the complement U has U² ≠ 0".into()));
    }
    let action_pattern = simples
        .iter()
        .map(|m| ActionPattern {
            simple_times_complement_zero: s.product(m, &complement).is_zero(),
            complement_times_simple_zero: s.product(&complement, m).is_zero(),
        })
        .collect();
    Ok(SemisimpleBicommutativeDecomposition { square, simples, complement, action_pattern })
}

/// `B² ≠ 0` and `B` has no ideals besides `0` and `B`, as an algebra.
pub fn is_simple<K: Field>(a: &Algebra<K>, b: &Subspace<K>, budget: &EnumerationBudget) -> Result<bool> {
    if b.is_zero() || a.square(b).is_zero() {
        return Ok(false);
    }
    let inner = a.restrict(b)?;
    let mins = enumerate::minimal_ideals(&inner, budget)?;
    Ok(mins.len() == 1 && mins[0].is_full())
}

/// Splits a φ-free algebra over its zero socle.
pub fn phi_free_split<K: Field>(a: &Algebra<K>, budget: &EnumerationBudget) -> Result<PhiFreeSplit<K>> {
    require_finite(a)?;
    let phi = enumerate::frattini(a, budget)?.ideal;
    if !phi.is_zero() {
        return Err(Error::precondition(format!("not φ-free: φ(A) has dimension {}", phi.dim())));
    }
    split_over_zero_socle(a, budget)
}

/// The split itself; the φ-freeness check is left to the caller.
pub(crate) fn split_over_zero_socle<K: Field>(a: &Algebra<K>, budget: &EnumerationBudget) -> Result<PhiFreeSplit<K>> {
    let full = a.full();
    let zsoc = enumerate::zero_socle(a, budget)?;
    let complement = first_subalgebra_complement(a, &zsoc, &full, budget)?
        .ok_or_else(|| Error::TheoremViolation("no subalgebra complements the zero socle".into()))?;
    let flags = a.identities();
    let bicommutative = if flags.holds(IdentityKind::Bicommutative) {
        Some(bicommutative_refinement(a, &zsoc, &complement, budget)?)
    } else {
        None
    };
    let mut novikov = Vec::new();
    for side in [IdentityKind::NovikovLeft, IdentityKind::NovikovRight] {
        if flags.holds(side) {
            let radical = enumerate::radical(a, RadicalKind::Solvable, budget)?;
            let c_cap_r = complement.intersect(&radical)?;
            let annihilated = if side == IdentityKind::NovikovLeft {
                a.product(&full, &c_cap_r).is_zero()
            } else {
                a.product(&c_cap_r, &full).is_zero()
            };
            novikov.push(NovikovSplitWitness { radical, c_cap_r, annihilated, side });
        }
    }
    Ok(PhiFreeSplit { zsoc, complement, bicommutative, novikov })
}

pub(crate) fn first_subalgebra_complement<K: Field>(
    a: &Algebra<K>,
    w: &Subspace<K>,
    v: &Subspace<K>,
    budget: &EnumerationBudget,
) -> Result<Option<Subspace<K>>> {
    for_each_complement(w, v, budget, |c| {
        if a.is_subalgebra(&c) {
            ControlFlow::Break(c)
        } else {
            ControlFlow::Continue(())
        }
    })
}

pub(crate) fn bicommutative_refinement<K: Field>(
    a: &Algebra<K>,
    zsoc: &Subspace<K>,
    c: &Subspace<K>,
    budget: &EnumerationBudget,
) -> Result<BicommutativeRefinement<K>> {
    let radical = enumerate::radical(a, RadicalKind::Solvable, budget)?;
    let d = c.intersect(&radical)?;
    // E: the first subalgebra complement of D in C that is semisimple
    let mut patterns = Vec::new();
    let mut chosen: Option<(Subspace<K>, SemisimpleBicommutativeDecomposition<K>)> = None;
    let mut failure: Option<Error> = None;
    for_each_complement(&d, c, budget, |e| {
        if !a.is_subalgebra(&e) {
            return ControlFlow::Continue(());
        }
        let inner = match a.restrict(&e) {
            Ok(x) => x,
            Err(err) => {
                failure = Some(err);
                return ControlFlow::Break(());
            }
        };
        match enumerate::radical(&inner, RadicalKind::Solvable, budget) {
            Ok(r) if r.is_zero() => {}
            Ok(_) => return ControlFlow::Continue(()),
            Err(err) => {
                failure = Some(err);
                return ControlFlow::Break(());
            }
        }
        match semisimple_parts(&inner, budget) {
            Ok(dec) => {
                let lifted = lift_decomposition(&e, &dec);
                patterns.push(lifted.action_pattern.clone());
                if chosen.is_none() {
                    chosen = Some((e, lifted));
                }
                ControlFlow::Continue(())
            }
            Err(err) => {
                failure = Some(err);
                ControlFlow::Break(())
            }
        }
    })?;
    if let Some(err) = failure {
        return Err(err);
    }
    let (e, e_decomposition) =
        chosen.ok_or_else(|| Error::TheoremViolation("no semisimple complement E of C ∩ R in C".into()))?;
    let e_not_unique = patterns.iter().any(|p| *p != e_decomposition.action_pattern);

    let minimal_zero: Vec<Subspace<K>> = enumerate::minimal_ideals(a, budget)?
        .into_iter()
        .filter(|m| a.square(m).is_zero())
        .collect();
    let z1 = enumerate::sum_all(a, minimal_zero.iter().filter(|z| a.product(z, &radical).is_zero()));
    let mut z2 = a.zero_subspace();
    for z in minimal_zero.iter().filter(|z| !a.product(z, &radical).is_zero()) {
        if !z1.sum(&z2)?.contains(z) {
            z2 = z2.sum(z)?;
        }
    }
    debug_assert!(zsoc.contains(&z1) && zsoc.contains(&z2));
    Ok(BicommutativeRefinement { radical, d, e, e_decomposition, z1, z2, e_not_unique })
}

/// Maps a decomposition of the algebra `B` (in the RREF basis of `b`) back
/// into the ambient coordinates.
fn lift_decomposition<K: Field>(
    b: &Subspace<K>,
    dec: &SemisimpleBicommutativeDecomposition<K>,
) -> SemisimpleBicommutativeDecomposition<K> {
    let lift = |s: &Subspace<K>| {
        Subspace::span(b.field().clone(), b.ambient(), s.basis().iter().map(|v| b.combine(v)).collect::<Vec<_>>())
            .expect("lengths agree")
    };
    SemisimpleBicommutativeDecomposition {
        square: lift(&dec.square),
        simples: dec.simples.iter().map(lift).collect(),
        complement: lift(&dec.complement),
        action_pattern: dec.action_pattern.clone(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AssosymmetricReport<K: Field> {
    /// False when the characteristic is 2 or 3.
    pub applicable: bool,
    pub reason: Option<String>,
    pub semisimple: Option<bool>,
    /// Associativity of `A`, reported when `A` is semisimple.
    pub semisimple_associative: Option<bool>,
    pub nilradical: Option<Subspace<K>>,
    pub quotient_by_nilradical_associative: Option<bool>,
}

pub fn assosymmetric_report<K: Field>(a: &Algebra<K>, budget: &EnumerationBudget) -> Result<AssosymmetricReport<K>> {
    if !a.check_identity(IdentityKind::Assosymmetric) {
        return Err(Error::precondition("not assosymmetric"));
    }
    let ch = a.field().characteristic();
    if ch == 2 || ch == 3 {
        return Ok(AssosymmetricReport {
            applicable: false,
            reason: Some(format!("characteristic {ch}")),
            semisimple: None,
            semisimple_associative: None,
            nilradical: None,
            quotient_by_nilradical_associative: None,
        });
    }
    require_finite(a)?;
    let r = enumerate::radical(a, RadicalKind::Solvable, budget)?;
    let semisimple = r.is_zero();
    let n = enumerate::radical(a, RadicalKind::Nilpotent, budget)?;
    let (q, _) = a.quotient(&n)?;
    Ok(AssosymmetricReport {
        applicable: true,
        reason: None,
        semisimple: Some(semisimple),
        semisimple_associative: semisimple.then(|| a.check_identity(IdentityKind::Associative)),
        quotient_by_nilradical_associative: Some(q.check_identity(IdentityKind::Associative)),
        nilradical: Some(n),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NovikovRadicalReport<K: Field> {
    pub radical: Subspace<K>,
    pub ar: Subspace<K>,
    pub ar_profile: NilpotencyProfile,
    pub ar_nilpotent: bool,
    /// `(AR)R`
    pub arr: Subspace<K>,
    pub phi: Subspace<K>,
    pub arr_in_phi: bool,
    pub phi_in_asq: bool,
}

pub fn novikov_radical_report<K: Field>(a: &Algebra<K>, budget: &EnumerationBudget) -> Result<NovikovRadicalReport<K>> {
    if !a.check_identity(IdentityKind::NovikovLeft) {
        return Err(Error::precondition("not a (left) Novikov algebra"));
    }
    require_finite(a)?;
    let full = a.full();
    let radical = enumerate::radical(a, RadicalKind::Solvable, budget)?;
    let ar = a.product(&full, &radical);
    let ar_profile = series::profile_of(a, &ar);
    let arr = a.product(&ar, &radical);
    let phi = enumerate::frattini(a, budget)?.ideal;
    let asq = a.square(&full);
    Ok(NovikovRadicalReport {
        ar_nilpotent: ar_profile.nilpotent,
        arr_in_phi: phi.contains(&arr),
        phi_in_asq: asq.contains(&phi),
        radical,
        ar,
        ar_profile,
        arr,
        phi,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::builders::*;
    use crate::exactfield::{PrimeField, Rationals};

    fn fp(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn b() -> EnumerationBudget {
        EnumerationBudget::default()
    }

    #[test]
    fn example_decomposition() {
        for p in [2, 3, 5] {
            let a = a_ex(fp(p));
            let d = decompose_semisimple_bicommutative(&a, &b()).unwrap();
            let x = a.span(vec![a.basis_vector(0)]).unwrap();
            let y = a.span(vec![a.basis_vector(1)]).unwrap();
            assert_eq!(d.simples, vec![x]);
            assert_eq!(d.complement, y);
            assert_eq!(
                d.action_pattern,
                vec![ActionPattern { simple_times_complement_zero: false, complement_times_simple_zero: true }]
            );
        }
    }

    #[test]
    fn idempotent_sum_decomposition() {
        let a = idempotents(fp(2), 2);
        let d = decompose_semisimple_bicommutative(&a, &b()).unwrap();
        assert_eq!(d.simples.len(), 2);
        assert!(d.complement.is_zero());
    }

    #[test]
    fn decomposition_preconditions() {
        let t = truncated_polynomial(fp(2), 3);
        assert!(matches!(decompose_semisimple_bicommutative(&t, &b()), Err(Error::Precondition(_))));
        let n = a_nov(fp(2));
        assert!(matches!(decompose_semisimple_bicommutative(&n, &b()), Err(Error::Precondition(_))));
        let q = a_ex(Rationals);
        assert!(matches!(decompose_semisimple_bicommutative(&q, &b()), Err(Error::Unsupported(_))));
    }

    #[test]
    fn novikov_split() {
        let a = a_nov(fp(2));
        let s = phi_free_split(&a, &b()).unwrap();
        assert_eq!(s.zsoc, a.span(vec![a.basis_vector(0)]).unwrap());
        assert_eq!(s.complement, a.span(vec![a.basis_vector(1)]).unwrap());
        assert_eq!(s.novikov.len(), 1);
        assert!(s.novikov[0].c_cap_r.is_zero() && s.novikov[0].annihilated);
        assert!(s.bicommutative.is_none());
    }

    #[test]
    fn trivial_splits() {
        let z = zero_algebra(fp(2), 2);
        let s = phi_free_split(&z, &b()).unwrap();
        assert!(s.zsoc.is_full() && s.complement.is_zero());

        let a = a_ex(fp(2));
        let s = phi_free_split(&a, &b()).unwrap();
        assert!(s.zsoc.is_zero() && s.complement.is_full());
        let r = s.bicommutative.unwrap();
        assert!(r.d.is_zero() && r.e.is_full());
    }

    #[test]
    fn split_refuses_when_phi_nonzero() {
        let t = truncated_polynomial(fp(2), 3);
        assert!(matches!(phi_free_split(&t, &b()), Err(Error::Precondition(m)) if m.contains("φ")));
    }

    #[test]
    fn biphifree_pieces_on_a_sum() {
        let a = a_ex(fp(2)).direct_sum(&zero_algebra(fp(2), 1)).unwrap();
        let s = phi_free_split(&a, &b()).unwrap();
        let r = s.bicommutative.unwrap();
        assert_eq!(s.zsoc.dim(), 1);
        assert_eq!(r.radical, s.zsoc);
        assert!(r.d.is_zero());
        assert_eq!(r.e.dim(), 2);
        assert_eq!(r.z1.sum(&r.z2).unwrap(), s.zsoc);
    }

    #[test]
    fn assosymmetric_reports() {
        let t = truncated_polynomial(fp(5), 3);
        let r = assosymmetric_report(&t, &b()).unwrap();
        assert!(r.applicable);
        assert_eq!(r.semisimple, Some(false));
        assert_eq!(r.quotient_by_nilradical_associative, Some(true));
        assert_eq!(r.nilradical.unwrap().dim(), 3);

        let f = idempotents(fp(5), 2);
        let r = assosymmetric_report(&f, &b()).unwrap();
        assert_eq!(r.semisimple_associative, Some(true));

        let r = assosymmetric_report(&truncated_polynomial(fp(2), 2), &b()).unwrap();
        assert!(!r.applicable);
        assert!(matches!(assosymmetric_report(&a_ex(fp(5)), &b()), Err(Error::Precondition(_))));
    }

    #[test]
    fn novikov_radical_reports() {
        let a = a_nov(fp(2));
        let r = novikov_radical_report(&a, &b()).unwrap();
        assert!(r.ar.is_zero() && r.ar_nilpotent && r.arr_in_phi && r.phi_in_asq);

        let n = n1(fp(2));
        let r = novikov_radical_report(&n, &b()).unwrap();
        assert!(r.radical.is_full());
        assert_eq!(r.ar, n.span(vec![n.basis_vector(1)]).unwrap());
        assert!(r.ar_nilpotent);

        let z = zero_algebra(fp(3), 2);
        assert!(novikov_radical_report(&z, &b()).unwrap().ar.is_zero());
    }
}
