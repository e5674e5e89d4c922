//! Derived series, right/left powers and the full power series `A^[n]`,
//! nilpotency predicates, and chief series.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::algebra::Algebra;
use crate::enumerate::{self, EnumerationBudget};
use crate::error::{Error, Result};
use crate::exactfield::Field;
use crate::linalg::Subspace;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum SeriesKind {
    /// `A^(0) = A`, `A^(i+1) = (A^(i))^2`
    Derived,
    /// `A^1 = A`, `A^(n+1) = A^n A`
    RightPower,
    /// `^1A = A`, `^(n+1)A = A (^nA)`
    LeftPower,
    /// `A^[1] = A`, `A^[n+1] = Σ_{i+j=n+1} A^[i] A^[j]`
    BracketPower,
}

impl SeriesKind {
    pub const ALL: [SeriesKind; 4] =
        [SeriesKind::Derived, SeriesKind::RightPower, SeriesKind::LeftPower, SeriesKind::BracketPower];

    pub fn as_str(&self) -> &'static str {
        match self {
            SeriesKind::Derived => "derived",
            SeriesKind::RightPower => "rightPower",
            SeriesKind::LeftPower => "leftPower",
            SeriesKind::BracketPower => "bracketPower",
        }
    }

    /// Mathematical index of the first term: 0 for the derived series, 1 otherwise.
    pub fn first_index(&self) -> usize {
        match self {
            SeriesKind::Derived => 0,
            _ => 1,
        }
    }
}

impl fmt::Display for SeriesKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SeriesKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let key: String = s.chars().filter(|c| *c != '-' && *c != '_').collect::<String>().to_lowercase();
        SeriesKind::ALL
            .into_iter()
            .find(|k| k.as_str().to_lowercase() == key || k.as_str().to_lowercase() == format!("{key}power"))
            .ok_or_else(|| Error::usage(format!("unknown series kind `{s}`")))
    }
}

/// A computed descending chain. Positions are 1-based over `terms`:
/// `terms[0]` is the algebra itself.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesResult<K: Field> {
    pub kind: SeriesKind,
    pub terms: Vec<Subspace<K>>,
    /// The chain reached the zero subspace.
    pub terminated: bool,
    /// 1-based position of the first term of the final constant run, when
    /// the chain stabilises at a nonzero subspace.
    pub stabilized_at: Option<usize>,
    /// Length of the chain up to and including its first zero term.
    pub index: Option<usize>,
}

impl<K: Field> SeriesResult<K> {
    /// Term in the mathematical numbering (`A^(i)` for the derived series,
    /// `A^n`, `^nA`, `A^[n]` for the power series), extended past the
    /// computed range by the limit of the chain.
    pub fn term(&self, n: usize) -> &Subspace<K> {
        let pos = n.saturating_sub(self.kind.first_index());
        self.terms.get(pos).unwrap_or_else(|| self.terms.last().expect("series has at least one term"))
    }

    pub fn limit(&self) -> &Subspace<K> {
        self.terms.last().expect("series has at least one term")
    }
}

/// Series of the algebra `A` itself.
pub fn compute_series<K: Field>(a: &Algebra<K>, kind: SeriesKind) -> SeriesResult<K> {
    series_of(a, &a.full(), kind)
}

/// Series of a subalgebra `u`, with all products taken in `a`.
pub fn series_of<K: Field>(a: &Algebra<K>, u: &Subspace<K>, kind: SeriesKind) -> SeriesResult<K> {
    let mut terms = vec![u.clone()];
    if kind == SeriesKind::BracketPower {
        return bracket_series(a, terms);
    }
    loop {
        let last = terms.last().expect("nonempty");
        if last.is_zero() {
            let index = Some(terms.len());
            return SeriesResult { kind, terms, terminated: true, stabilized_at: None, index };
        }
        let next = match kind {
            SeriesKind::Derived => a.square(last),
            SeriesKind::RightPower => a.product(last, u),
            SeriesKind::LeftPower => a.product(u, last),
            SeriesKind::BracketPower => unreachable!(),
        };
        if &next == last {
            let stabilized_at = Some(terms.len());
            terms.push(next);
            return SeriesResult { kind, terms, terminated: false, stabilized_at, index: None };
        }
        terms.push(next);
    }
}

/// `A^[m] = Σ_{i+j=m} A^[i] A^[j]`. A single repeat does not obviously
/// force the chain to be constant, so computation continues until the
/// constant run starting at position `s` reaches position `2s`, after which
/// every later term provably equals it.
fn bracket_series<K: Field>(a: &Algebra<K>, mut terms: Vec<Subspace<K>>) -> SeriesResult<K> {
    let kind = SeriesKind::BracketPower;
    // start of the current constant run (1-based)
    let mut run_start = 1;
    loop {
        let m = terms.len() + 1;
        if terms.last().expect("nonempty").is_zero() {
            let index = Some(terms.len());
            return SeriesResult { kind, terms, terminated: true, stabilized_at: None, index };
        }
        if terms.len() >= 2 * run_start && run_start < terms.len() {
            return SeriesResult { kind, terms, terminated: false, stabilized_at: Some(run_start), index: None };
        }
        let mut next = a.zero_subspace();
        for i in 1..m {
            let j = m - i;
            let p = a.product(&terms[i - 1], &terms[j - 1]);
            next = next.sum(&p).expect("same ambient");
            if next == terms[terms.len() - 1] {
                // already as large as the previous term, which bounds it
                break;
            }
        }
        if &next != terms.last().expect("nonempty") {
            run_start = m;
        }
        terms.push(next);
    }
}

/// Solvability and the three flavours of nilpotency, with chain lengths.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct NilpotencyProfile {
    pub solvable: bool,
    pub right_nilpotent: bool,
    pub left_nilpotent: bool,
    pub weakly_nilpotent: bool,
    pub nilpotent: bool,
    pub derived_index: Option<usize>,
    pub right_index: Option<usize>,
    pub left_index: Option<usize>,
    pub nilpotent_index: Option<usize>,
}

pub fn nilpotency_profile<K: Field>(a: &Algebra<K>) -> NilpotencyProfile {
    profile_of(a, &a.full())
}

/// Profile of the subalgebra `u` of `a`.
pub fn profile_of<K: Field>(a: &Algebra<K>, u: &Subspace<K>) -> NilpotencyProfile {
    let d = series_of(a, u, SeriesKind::Derived);
    let r = series_of(a, u, SeriesKind::RightPower);
    let l = series_of(a, u, SeriesKind::LeftPower);
    let b = series_of(a, u, SeriesKind::BracketPower);
    NilpotencyProfile {
        solvable: d.terminated,
        right_nilpotent: r.terminated,
        left_nilpotent: l.terminated,
        weakly_nilpotent: r.terminated && l.terminated,
        nilpotent: b.terminated,
        derived_index: d.index,
        right_index: r.index,
        left_index: l.index,
        nilpotent_index: b.index,
    }
}

pub fn is_solvable<K: Field>(a: &Algebra<K>, u: &Subspace<K>) -> bool {
    series_of(a, u, SeriesKind::Derived).terminated
}

pub fn is_nilpotent<K: Field>(a: &Algebra<K>, u: &Subspace<K>) -> bool {
    series_of(a, u, SeriesKind::BracketPower).terminated
}

pub fn is_right_nilpotent<K: Field>(a: &Algebra<K>, u: &Subspace<K>) -> bool {
    series_of(a, u, SeriesKind::RightPower).terminated
}

pub fn is_left_nilpotent<K: Field>(a: &Algebra<K>, u: &Subspace<K>) -> bool {
    series_of(a, u, SeriesKind::LeftPower).terminated
}

/// `0 = B_0 ⊂ ... ⊂ B_r` with each `B_{i+1}/B_i` a minimal ideal of `A/B_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChiefSeries<K: Field> {
    pub ideals: Vec<Subspace<K>>,
}

impl<K: Field> ChiefSeries<K> {
    /// Dimensions of the chief factors.
    pub fn factor_dims(&self) -> Vec<usize> {
        self.ideals.windows(2).map(|w| w[1].dim() - w[0].dim()).collect()
    }

    /// Consecutive pairs `(B_i, B_{i+1})`.
    pub fn factors(&self) -> impl Iterator<Item = (&Subspace<K>, &Subspace<K>)> {
        self.ideals.windows(2).map(|w| (&w[0], &w[1]))
    }
}

/// A chief series from `from` to `to`. At every step the candidate with the
/// least canonical basis (see the `Ord` on [`Subspace`]) is taken.
pub fn chief_series<K: Field>(
    a: &Algebra<K>,
    from: &Subspace<K>,
    to: &Subspace<K>,
    budget: &EnumerationBudget,
) -> Result<ChiefSeries<K>> {
    if !a.field().is_finite() {
        return Err(Error::finite_field_required());
    }
    if !a.is_ideal(from) || !a.is_ideal(to) {
        return Err(Error::usage("chief series endpoints must be ideals"));
    }
    if !to.contains(from) {
        return Err(Error::usage("chief series start is not contained in its end"));
    }
    let mut ideals = vec![from.clone()];
    let mut current = from.clone();
    while current != *to {
        let next = enumerate::minimal_ideals_between(a, &current, to, budget)?
            .into_iter()
            .next()
            .expect("a strictly larger ideal exists below `to`");
        ideals.push(next.clone());
        current = next;
    }
    Ok(ChiefSeries { ideals })
}

/// Chain `0 = A_0 ⊂ A_1 ⊂ ... ⊂ A_n = A` with `dim A_i = i` and
/// `A A_i + A_i A ⊆ A_{i-1}`, obtained by refining the `A^[k]` chain.
/// Exists exactly when `A` is nilpotent.
pub fn central_chain<K: Field>(a: &Algebra<K>) -> Option<Vec<Subspace<K>>> {
    let series = compute_series(a, SeriesKind::BracketPower);
    if !series.terminated {
        return None;
    }
    let mut chain = vec![a.zero_subspace()];
    let mut current = a.zero_subspace();
    for term in series.terms.iter().rev().skip(1) {
        for v in term.basis() {
            if current.insert(v.clone()) {
                chain.push(current.clone());
            }
        }
    }
    Some(chain)
}

/// Whether `chain` satisfies `A A_i + A_i A ⊆ A_{i-1}` with unit steps.
pub fn is_central_chain<K: Field>(a: &Algebra<K>, chain: &[Subspace<K>]) -> bool {
    if chain.first().map(|c| !c.is_zero()).unwrap_or(true) || chain.last().map(|c| !c.is_full()).unwrap_or(true) {
        return false;
    }
    let full = a.full();
    chain.iter().enumerate().all(|(i, s)| s.dim() == i)
        && chain.windows(2).all(|w| {
            w[0].contains(&a.product(&full, &w[1])) && w[0].contains(&a.product(&w[1], &full))
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::builders::*;
    use crate::exactfield::{PrimeField, Rationals};

    fn f2() -> PrimeField {
        PrimeField::new(2).unwrap()
    }

    #[test]
    fn truncated_polynomial_right_powers() {
        let t3 = truncated_polynomial(Rationals, 3);
        let s = compute_series(&t3, SeriesKind::RightPower);
        assert!(s.terminated);
        assert_eq!(s.index, Some(4));
        let dims: Vec<_> = s.terms.iter().map(|t| t.dim()).collect();
        assert_eq!(dims, vec![3, 2, 1, 0]);
        assert_eq!(s.term(2), &t3.span(vec![t3.basis_vector(1), t3.basis_vector(2)]).unwrap());
        assert_eq!(s.term(3), &t3.span(vec![t3.basis_vector(2)]).unwrap());
    }

    #[test]
    fn bracket_series_example_stabilises() {
        let a = a_ex(Rationals);
        let x = a.span(vec![a.basis_vector(0)]).unwrap();
        let s = compute_series(&a, SeriesKind::RightPower);
        assert!(!s.terminated);
        assert_eq!(s.terms, vec![a.full(), x.clone(), x.clone()]);
        assert_eq!(s.stabilized_at, Some(2));
        let d = compute_series(&a, SeriesKind::Derived);
        assert!(!d.terminated);
        assert_eq!(d.limit(), &x);
    }

    #[test]
    fn zero_algebra_derived_series() {
        let z = zero_algebra(f2(), 2);
        let d = compute_series(&z, SeriesKind::Derived);
        assert!(d.terminated);
        assert_eq!(d.index, Some(2));
        let p = nilpotency_profile(&z);
        assert!(p.solvable && p.nilpotent);
    }

    #[test]
    fn profiles() {
        let p = nilpotency_profile(&truncated_polynomial(Rationals, 3));
        assert!(p.solvable && p.right_nilpotent && p.left_nilpotent && p.weakly_nilpotent && p.nilpotent);
        assert_eq!(p.nilpotent_index, Some(4));

        let p = nilpotency_profile(&a_ex(Rationals));
        assert!(!p.solvable && !p.right_nilpotent && !p.left_nilpotent && !p.weakly_nilpotent && !p.nilpotent);

        let p = nilpotency_profile(&n1(Rationals));
        assert!(p.solvable && p.nilpotent && p.weakly_nilpotent);
        assert_eq!(p.nilpotent_index, Some(3));
    }

    #[test]
    fn chief_series_examples() {
        let b = EnumerationBudget::default();
        let a = a_ex(f2());
        let c = chief_series(&a, &a.zero_subspace(), &a.full(), &b).unwrap();
        assert_eq!(c.ideals, vec![a.zero_subspace(), a.span(vec![a.basis_vector(0)]).unwrap(), a.full()]);

        let t = truncated_polynomial(f2(), 3);
        let c = chief_series(&t, &t.zero_subspace(), &t.full(), &b).unwrap();
        assert_eq!(c.factor_dims(), vec![1, 1, 1]);
        assert_eq!(c.ideals[1], t.span(vec![t.basis_vector(2)]).unwrap());
        assert_eq!(c.ideals[2], t.span(vec![t.basis_vector(1), t.basis_vector(2)]).unwrap());

        let z = zero_algebra(f2(), 2);
        let c = chief_series(&z, &z.zero_subspace(), &z.full(), &b).unwrap();
        assert_eq!(c.ideals[1], z.span(vec![z.basis_vector(0)]).unwrap());
    }

    #[test]
    fn chief_series_over_q_is_unsupported() {
        let a = a_ex(Rationals);
        let r = chief_series(&a, &a.zero_subspace(), &a.full(), &EnumerationBudget::default());
        assert!(matches!(r, Err(Error::Unsupported(_))));
    }

    #[test]
    fn chief_series_rejects_non_ideals() {
        let a = a_ex(f2());
        let y = a.span(vec![a.basis_vector(1)]).unwrap();
        let r = chief_series(&a, &a.zero_subspace(), &y, &EnumerationBudget::default());
        assert!(matches!(r, Err(Error::Usage(_))));
    }

    #[test]
    fn central_chain_exists_iff_nilpotent() {
        let t = truncated_polynomial(Rationals, 4);
        let c = central_chain(&t).unwrap();
        assert!(is_central_chain(&t, &c));
        assert_eq!(c.len(), 5);
        assert!(central_chain(&a_ex(Rationals)).is_none());
        let z = zero_algebra(Rationals, 0);
        assert!(is_central_chain(&z, &central_chain(&z).unwrap()));
    }

    #[test]
    fn series_descend() {
        for a in [truncated_polynomial(f2(), 4), a_ex(f2()), a_nov(f2()), n1(f2())] {
            for kind in SeriesKind::ALL {
                let s = compute_series(&a, kind);
                for w in s.terms.windows(2) {
                    assert!(w[0].contains(&w[1]), "{kind} not descending");
                }
            }
        }
    }
}
