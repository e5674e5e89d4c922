//! Exhaustive enumeration over finite fields: vectors, subspaces, minimal
//! ideals, socles, maximal subalgebras, the Frattini subalgebra and ideal,
//! and the four radicals.
//!
//! Every entry point checks its work estimate against an
//! [`EnumerationBudget`] before starting and fails instead of truncating.

mod gf2;

use std::collections::BTreeSet;
use std::fmt;
use std::ops::ControlFlow;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::exactfield::{Field, FieldSpec};
use crate::linalg::{Subspace, Vector};
use crate::series;

pub use gf2::Gf2Algebra;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationBudget {
    /// Cap on the number of vectors visited by one enumeration.
    pub max_vectors: u64,
    /// Cap on the number of subspaces visited by one enumeration.
    pub max_subspaces: u64,
}

impl Default for EnumerationBudget {
    fn default() -> Self {
        EnumerationBudget { max_vectors: 10_000_000, max_subspaces: 1_000_000 }
    }
}

impl EnumerationBudget {
    pub fn new(max_vectors: u64, max_subspaces: u64) -> Result<Self> {
        if max_vectors == 0 || max_subspaces == 0 {
            return Err(Error::usage("enumeration budgets must be positive"));
        }
        Ok(EnumerationBudget { max_vectors, max_subspaces })
    }

    pub(crate) fn check_vectors(&self, count: u128, what: &str) -> Result<()> {
        if count > self.max_vectors as u128 {
            return Err(Error::budget(format!(
                "{what} needs {count} vectors, over the cap of {}",
                self.max_vectors
            )));
        }
        Ok(())
    }

    pub(crate) fn check_subspaces(&self, count: u128, what: &str) -> Result<()> {
        if count > self.max_subspaces as u128 {
            return Err(Error::budget(format!(
                "{what} needs {count} subspaces, over the cap of {}",
                self.max_subspaces
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum RadicalKind {
    /// `R(A)`, the largest solvable ideal
    Solvable,
    /// `N(A)`, the largest nilpotent ideal
    Nilpotent,
    /// `N_r(A)`, the largest right nilpotent ideal
    RightNil,
    /// `N_l(A)`, the largest left nilpotent ideal
    LeftNil,
}

impl RadicalKind {
    pub const ALL: [RadicalKind; 4] =
        [RadicalKind::Solvable, RadicalKind::Nilpotent, RadicalKind::RightNil, RadicalKind::LeftNil];

    pub fn as_str(&self) -> &'static str {
        match self {
            RadicalKind::Solvable => "solvable",
            RadicalKind::Nilpotent => "nil",
            RadicalKind::RightNil => "right-nil",
            RadicalKind::LeftNil => "left-nil",
        }
    }
}

impl fmt::Display for RadicalKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for RadicalKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_lowercase().replace('_', "-").as_str() {
            "solvable" => Ok(RadicalKind::Solvable),
            "nil" | "nilpotent" => Ok(RadicalKind::Nilpotent),
            "right-nil" | "rightnil" => Ok(RadicalKind::RightNil),
            "left-nil" | "leftnil" => Ok(RadicalKind::LeftNil),
            _ => Err(Error::usage(format!("unknown radical `{s}` (solvable, nil, right-nil, left-nil)"))),
        }
    }
}

pub(crate) fn field_order<K: Field>(f: &K) -> Result<u64> {
    f.order().ok_or_else(Error::finite_field_required)
}

fn pow_sat(q: u64, e: usize) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..e {
        acc = acc.saturating_mul(q as u128);
    }
    acc
}

/// Number of `k`-dimensional subspaces of `F_q^n`, saturating.
pub fn gaussian_binomial(q: u64, n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..k {
        let a = pow_sat(q, n - i).saturating_sub(1);
        let b = pow_sat(q, i + 1).saturating_sub(1);
        num = match num.checked_mul(a) {
            Some(x) => x,
            None => return u128::MAX,
        };
        den = den.saturating_mul(b);
    }
    num / den
}

/// Number of subspaces of `F_q^n` of every dimension.
pub fn subspace_count(q: u64, n: usize) -> u128 {
    (0..=n).fold(0u128, |acc, k| acc.saturating_add(gaussian_binomial(q, n, k)))
}

/// The field elements in enumeration order.
fn elements<K: Field>(f: &K) -> Result<Vec<K::Elem>> {
    let q = field_order(f)?;
    Ok((0..q).map(|i| f.element(i)).collect())
}

/// Visits every coefficient vector of length `d` whose first nonzero entry
/// is 1, in lexicographic order of element indices.
pub fn for_each_projective<K: Field, B>(
    field: &K,
    d: usize,
    budget: &EnumerationBudget,
    mut visit: impl FnMut(&[K::Elem]) -> ControlFlow<B>,
) -> Result<Option<B>> {
    let elems = elements(field)?;
    let q = elems.len() as u64;
    budget.check_vectors(pow_sat(q, d), "projective vector enumeration")?;
    let mut v = vec![field.zero(); d];
    for lead in (0..d).rev() {
        v.iter_mut().for_each(|x| *x = field.zero());
        v[lead] = field.one();
        let mut digits = vec![0usize; d - lead - 1];
        loop {
            for (slot, &dgt) in v[lead + 1..].iter_mut().zip(&digits) {
                *slot = elems[dgt].clone();
            }
            if let ControlFlow::Break(b) = visit(&v) {
                return Ok(Some(b));
            }
            if !increment(&mut digits, elems.len()) {
                break;
            }
        }
    }
    Ok(None)
}

/// Visits every vector of `K^d` in lexicographic order.
pub fn for_each_vector<K: Field, B>(
    field: &K,
    d: usize,
    budget: &EnumerationBudget,
    mut visit: impl FnMut(&[K::Elem]) -> ControlFlow<B>,
) -> Result<Option<B>> {
    let elems = elements(field)?;
    budget.check_vectors(pow_sat(elems.len() as u64, d), "vector enumeration")?;
    let mut digits = vec![0usize; d];
    let mut v = vec![field.zero(); d];
    loop {
        for (slot, &dgt) in v.iter_mut().zip(&digits) {
            *slot = elems[dgt].clone();
        }
        if let ControlFlow::Break(b) = visit(&v) {
            return Ok(Some(b));
        }
        if !increment(&mut digits, elems.len()) {
            return Ok(None);
        }
    }
}

/// Big-endian base-`q` increment; false on wrap-around.
fn increment(digits: &mut [usize], q: usize) -> bool {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < q {
            return true;
        }
        *d = 0;
    }
    false
}

/// Every element of `u`.
pub fn subspace_elements<K: Field>(u: &Subspace<K>, budget: &EnumerationBudget) -> Result<Vec<Vector<K>>> {
    let mut out = Vec::new();
    for_each_vector(u.field(), u.dim(), budget, |c| {
        out.push(u.combine(c));
        ControlFlow::<()>::Continue(())
    })?;
    Ok(out)
}

/// Next `k`-subset of `0..n` in lexicographic order.
fn next_combination(c: &mut [usize], n: usize) -> bool {
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

/// Visits every `d`-dimensional subspace of `K^n` in canonical order
/// (pivot sets lexicographically, then free entries lexicographically).
fn for_each_subspace_of_dim<K: Field, B>(
    field: &K,
    elems: &[K::Elem],
    n: usize,
    d: usize,
    visit: &mut impl FnMut(Subspace<K>) -> ControlFlow<B>,
) -> Option<B> {
    let mut pivots: Vec<usize> = (0..d).collect();
    loop {
        // free slots: (row, column) with column > pivot and not a pivot
        let slots: Vec<(usize, usize)> = pivots
            .iter()
            .enumerate()
            .flat_map(|(r, &p)| (p + 1..n).filter(|c| !pivots.contains(c)).map(move |c| (r, c)))
            .collect();
        let mut digits = vec![0usize; slots.len()];
        loop {
            let mut rows = vec![vec![field.zero(); n]; d];
            for (r, &p) in pivots.iter().enumerate() {
                rows[r][p] = field.one();
            }
            for (&(r, c), &dgt) in slots.iter().zip(&digits) {
                rows[r][c] = elems[dgt].clone();
            }
            if let ControlFlow::Break(b) = visit(Subspace::from_rref_rows(field.clone(), n, rows)) {
                return Some(b);
            }
            if !increment(&mut digits, elems.len()) {
                break;
            }
        }
        if d == 0 || !next_combination(&mut pivots, n) {
            return None;
        }
    }
}

/// Visits every subspace of `K^n`, by increasing dimension.
pub fn for_each_subspace<K: Field, B>(
    field: &K,
    n: usize,
    budget: &EnumerationBudget,
    mut visit: impl FnMut(Subspace<K>) -> ControlFlow<B>,
) -> Result<Option<B>> {
    let elems = elements(field)?;
    budget.check_subspaces(subspace_count(elems.len() as u64, n), "subspace enumeration")?;
    for d in 0..=n {
        if let Some(b) = for_each_subspace_of_dim(field, &elems, n, d, &mut visit) {
            return Ok(Some(b));
        }
    }
    Ok(None)
}

pub fn all_subspaces<K: Field>(field: &K, n: usize, budget: &EnumerationBudget) -> Result<Vec<Subspace<K>>> {
    let mut out = Vec::new();
    for_each_subspace(field, n, budget, |s| {
        out.push(s);
        ControlFlow::<()>::Continue(())
    })?;
    Ok(out)
}

/// All subalgebras (including 0 and `A`), by increasing dimension.
pub fn all_subalgebras<K: Field>(a: &Algebra<K>, budget: &EnumerationBudget) -> Result<Vec<Subspace<K>>> {
    let mut out = Vec::new();
    for_each_subspace(a.field(), a.dim(), budget, |s| {
        if a.is_subalgebra(&s) {
            out.push(s);
        }
        ControlFlow::<()>::Continue(())
    })?;
    Ok(out)
}

/// All two-sided ideals (including 0 and `A`), by increasing dimension.
pub fn all_ideals<K: Field>(a: &Algebra<K>, budget: &EnumerationBudget) -> Result<Vec<Subspace<K>>> {
    let mut out = Vec::new();
    for_each_subspace(a.field(), a.dim(), budget, |s| {
        if a.is_ideal(&s) {
            out.push(s);
        }
        ControlFlow::<()>::Continue(())
    })?;
    Ok(out)
}

/// Basis of a complement of `lower` inside `upper`, supported off the
/// pivot columns of `lower`.
pub(crate) fn coordinate_complement<K: Field>(lower: &Subspace<K>, upper: &Subspace<K>) -> Subspace<K> {
    let mut t = Subspace::zero(lower.field().clone(), lower.ambient());
    for b in upper.basis() {
        let mut v = b.clone();
        lower.reduce(&mut v);
        t.insert(v);
    }
    t
}

/// Visits every complement `C` of `w` inside `v` (`w ∔ C = v`). Complements
/// are graphs of linear maps from the coordinate complement of `w` into `w`,
/// enumerated with the zero map first.
pub fn for_each_complement<K: Field, B>(
    w: &Subspace<K>,
    v: &Subspace<K>,
    budget: &EnumerationBudget,
    mut visit: impl FnMut(Subspace<K>) -> ControlFlow<B>,
) -> Result<Option<B>> {
    if !v.contains(w) {
        return Err(Error::usage("complement of a subspace not contained in the ambient subspace"));
    }
    let f = w.field();
    let elems = elements(f)?;
    let t = coordinate_complement(w, v);
    let m = t.dim();
    let d = w.dim();
    budget.check_subspaces(pow_sat(elems.len() as u64, m * d), "complement enumeration")?;
    let mut digits = vec![0usize; m * d];
    loop {
        let mut c = Subspace::zero(f.clone(), w.ambient());
        for (r, tb) in t.basis().iter().enumerate() {
            let coeffs: Vec<K::Elem> = digits[r * d..(r + 1) * d].iter().map(|&x| elems[x].clone()).collect();
            let shift = w.combine(&coeffs);
            c.insert(tb.iter().zip(&shift).map(|(a, b)| f.add(a, b)).collect());
        }
        if let ControlFlow::Break(b) = visit(c) {
            return Ok(Some(b));
        }
        if !increment(&mut digits, elems.len()) {
            return Ok(None);
        }
    }
}

/// Minimal members of `{J ideal : lower ⊊ J ⊆ upper}`, in canonical order.
/// Each is the ideal closure of `lower` and one vector outside it.
pub fn minimal_ideals_between<K: Field>(
    a: &Algebra<K>,
    lower: &Subspace<K>,
    upper: &Subspace<K>,
    budget: &EnumerationBudget,
) -> Result<Vec<Subspace<K>>> {
    let f = a.field();
    field_order(f)?;
    let t = coordinate_complement(lower, upper);
    let mut closures: BTreeSet<Subspace<K>> = BTreeSet::new();
    for_each_projective(f, t.dim(), budget, |c| {
        let mut s = lower.clone();
        s.insert(t.combine(c));
        closures.insert(a.close_ideal(s));
        ControlFlow::<()>::Continue(())
    })?;
    Ok(minimal_members(&closures))
}

fn minimal_members<K: Field>(set: &BTreeSet<Subspace<K>>) -> Vec<Subspace<K>> {
    set.iter()
        .filter(|c| !set.iter().any(|d| d != *c && d.dim() < c.dim() && c.contains(d)))
        .cloned()
        .collect()
}

/// Minimal ideals of `A`, in canonical order.
pub fn minimal_ideals<K: Field>(a: &Algebra<K>, budget: &EnumerationBudget) -> Result<Vec<Subspace<K>>> {
    minimal_ideals_between(a, &a.zero_subspace(), &a.full(), budget)
}

/// Sum of the minimal ideals.
pub fn socle<K: Field>(a: &Algebra<K>, budget: &EnumerationBudget) -> Result<Subspace<K>> {
    Ok(sum_all(a, minimal_ideals(a, budget)?.iter()))
}

/// Sum of the minimal ideals with zero square.
pub fn zero_socle<K: Field>(a: &Algebra<K>, budget: &EnumerationBudget) -> Result<Subspace<K>> {
    let mins = minimal_ideals(a, budget)?;
    Ok(sum_all(a, mins.iter().filter(|m| a.square(m).is_zero())))
}

pub(crate) fn sum_all<'a, K: Field>(a: &Algebra<K>, it: impl Iterator<Item = &'a Subspace<K>>) -> Subspace<K> {
    let mut s = a.zero_subspace();
    for m in it {
        for b in m.basis() {
            s.insert(b.clone());
        }
    }
    s
}

/// Proper subalgebras maximal under inclusion, in canonical order.
pub fn maximal_subalgebras<K: Field>(a: &Algebra<K>, budget: &EnumerationBudget) -> Result<Vec<Subspace<K>>> {
    let mut subs = all_subalgebras(a, budget)?;
    subs.retain(|s| !s.is_full());
    // every proper subalgebra lies in a maximal one of dimension at least
    // its own, so walking by decreasing dimension needs only containment
    subs.sort_by(|x, y| y.dim().cmp(&x.dim()).then_with(|| x.cmp(y)));
    let mut maximal: Vec<Subspace<K>> = Vec::new();
    for s in subs {
        if !maximal.iter().any(|m| m.dim() > s.dim() && m.contains(&s)) {
            maximal.push(s);
        }
    }
    maximal.sort();
    Ok(maximal)
}

/// The Frattini subalgebra `F(A)` and Frattini ideal `φ(A)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Frattini<K: Field> {
    pub subalgebra: Subspace<K>,
    pub ideal: Subspace<K>,
}

pub fn frattini<K: Field>(a: &Algebra<K>, budget: &EnumerationBudget) -> Result<Frattini<K>> {
    let maximal = maximal_subalgebras(a, budget)?;
    Ok(frattini_from_maximal(a, &maximal))
}

pub(crate) fn frattini_from_maximal<K: Field>(a: &Algebra<K>, maximal: &[Subspace<K>]) -> Frattini<K> {
    let mut f = a.full();
    for m in maximal {
        f = f.intersect(m).expect("same ambient");
    }
    let ideal = a.ideal_core(&f).expect("same ambient");
    Frattini { subalgebra: f, ideal }
}

pub fn ideal_core<K: Field>(a: &Algebra<K>, s: &Subspace<K>) -> Result<Subspace<K>> {
    a.ideal_core(s)
}

/// Whether an ideal `u` has the defining property of the radical `kind`.
pub fn has_radical_property<K: Field>(a: &Algebra<K>, u: &Subspace<K>, kind: RadicalKind) -> bool {
    match kind {
        RadicalKind::Solvable => series::is_solvable(a, u),
        RadicalKind::Nilpotent => series::is_nilpotent(a, u),
        RadicalKind::RightNil => series::is_right_nilpotent(a, u),
        RadicalKind::LeftNil => series::is_left_nilpotent(a, u),
    }
}

/// Sum of the ideal closures `⟨v⟩` that have the property `kind`.
pub fn radical<K: Field>(a: &Algebra<K>, kind: RadicalKind, budget: &EnumerationBudget) -> Result<Subspace<K>> {
    let f = a.field();
    field_order(f)?;
    if kind != RadicalKind::Solvable && !a.identities().natural_class() {
        return Err(Error::precondition(format!(
            "the {kind} radical is only defined here for bicommutative, assosymmetric or Novikov algebras"
        )));
    }
    radical_unchecked(a, kind, budget)
}

/// The radical enumeration without the identity-class gate on the nil kinds.
pub(crate) fn radical_unchecked<K: Field>(a: &Algebra<K>, kind: RadicalKind, budget: &EnumerationBudget) -> Result<Subspace<K>> {
    let f = a.field();
    field_order(f)?;
    budget.check_vectors(pow_sat(f.order().unwrap_or(0), a.dim()), "radical enumeration")?;
    if f.spec() == FieldSpec::Prime(2) && a.dim() <= gf2::MAX_DIM {
        let fast = Gf2Algebra::from_algebra(a).radical(kind);
        return Ok(Gf2Algebra::to_subspace(f, a.dim(), &fast));
    }
    radical_generic(a, kind, budget)
}

/// Radical through the generic field arithmetic, without the bit-packed
/// shortcut for `F_2`.
pub fn radical_generic<K: Field>(a: &Algebra<K>, kind: RadicalKind, budget: &EnumerationBudget) -> Result<Subspace<K>> {
    let f = a.field();
    let mut r = a.zero_subspace();
    // v + r ∈ R iff v ∈ R, so only vectors supported off the pivots of the
    // current partial radical need testing; restart whenever it grows
    'grow: loop {
        let t = coordinate_complement(&r, &a.full());
        let hit = for_each_projective(f, t.dim(), budget, |c| {
            let v = t.combine(c);
            let closure = a.close_ideal(a.span(vec![v]).expect("length dim"));
            if has_radical_property(a, &closure, kind) {
                ControlFlow::Break(closure)
            } else {
                ControlFlow::Continue(())
            }
        })?;
        match hit {
            Some(c) => {
                r = r.sum(&c)?;
                continue 'grow;
            }
            None => return Ok(r),
        }
    }
}

pub fn is_semisimple<K: Field>(a: &Algebra<K>, budget: &EnumerationBudget) -> Result<bool> {
    Ok(radical(a, RadicalKind::Solvable, budget)?.is_zero())
}

#[cfg(test)]
mod tests;
