use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::Algebra;
use crate::error::{Error, Result};
use crate::exactfield::Field;

/// The multilinear identities the toolkit recognises.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum IdentityKind {
    /// `(ab)c = (ac)b`
    RightCommutative,
    /// `a(bc) = b(ac)`
    LeftCommutative,
    Bicommutative,
    /// `(x,y,z) = (y,x,z)`
    LeftSymmetric,
    /// `(x,y,z) = (x,z,y)`
    RightSymmetric,
    Assosymmetric,
    /// left symmetric and right commutative
    NovikovLeft,
    /// right symmetric and left commutative
    NovikovRight,
    Associative,
    Commutative,
}

impl IdentityKind {
    pub const ALL: [IdentityKind; 10] = [
        IdentityKind::RightCommutative,
        IdentityKind::LeftCommutative,
        IdentityKind::Bicommutative,
        IdentityKind::LeftSymmetric,
        IdentityKind::RightSymmetric,
        IdentityKind::Assosymmetric,
        IdentityKind::NovikovLeft,
        IdentityKind::NovikovRight,
        IdentityKind::Associative,
        IdentityKind::Commutative,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            IdentityKind::RightCommutative => "rightCommutative",
            IdentityKind::LeftCommutative => "leftCommutative",
            IdentityKind::Bicommutative => "bicommutative",
            IdentityKind::LeftSymmetric => "leftSymmetric",
            IdentityKind::RightSymmetric => "rightSymmetric",
            IdentityKind::Assosymmetric => "assosymmetric",
            IdentityKind::NovikovLeft => "novikovLeft",
            IdentityKind::NovikovRight => "novikovRight",
            IdentityKind::Associative => "associative",
            IdentityKind::Commutative => "commutative",
        }
    }
}

impl fmt::Display for IdentityKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for IdentityKind {
    type Err = Error;

    /// Accepts camelCase (`novikovLeft`), kebab-case (`novikov-left`) and `novikov`.
    fn from_str(s: &str) -> Result<Self> {
        let key: String = s.chars().filter(|c| *c != '-' && *c != '_').collect::<String>().to_lowercase();
        if key == "novikov" {
            return Ok(IdentityKind::NovikovLeft);
        }
        IdentityKind::ALL
            .into_iter()
            .find(|k| k.as_str().to_lowercase() == key)
            .ok_or_else(|| Error::usage(format!("unknown identity `{s}`")))
    }
}

/// Truth values of every [`IdentityKind`] for one algebra, computed from a
/// single pass over basis triples.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct IdentityFlags {
    pub right_commutative: bool,
    pub left_commutative: bool,
    pub left_symmetric: bool,
    pub right_symmetric: bool,
    pub associative: bool,
    pub commutative: bool,
}

impl IdentityFlags {
    pub fn compute<K: Field>(a: &Algebra<K>) -> Self {
        let t = Triples::new(a);
        IdentityFlags {
            right_commutative: t.right_commutative(),
            left_commutative: t.left_commutative(),
            left_symmetric: t.left_symmetric(),
            right_symmetric: t.right_symmetric(),
            associative: t.associative(),
            commutative: commutative(a),
        }
    }

    pub fn holds(&self, kind: IdentityKind) -> bool {
        match kind {
            IdentityKind::RightCommutative => self.right_commutative,
            IdentityKind::LeftCommutative => self.left_commutative,
            IdentityKind::Bicommutative => self.right_commutative && self.left_commutative,
            IdentityKind::LeftSymmetric => self.left_symmetric,
            IdentityKind::RightSymmetric => self.right_symmetric,
            IdentityKind::Assosymmetric => self.left_symmetric && self.right_symmetric,
            IdentityKind::NovikovLeft => self.left_symmetric && self.right_commutative,
            IdentityKind::NovikovRight => self.right_symmetric && self.left_commutative,
            IdentityKind::Associative => self.associative,
            IdentityKind::Commutative => self.commutative,
        }
    }

    /// Membership in one of the classes closed under subalgebras and
    /// quotients whose ideal products are ideals.
    pub fn natural_class(&self) -> bool {
        self.holds(IdentityKind::Bicommutative)
            || self.holds(IdentityKind::Assosymmetric)
            || self.holds(IdentityKind::NovikovLeft)
            || self.holds(IdentityKind::NovikovRight)
    }

    pub fn kinds(&self) -> Vec<IdentityKind> {
        IdentityKind::ALL.into_iter().filter(|k| self.holds(*k)).collect()
    }
}

/// True iff the identity holds on all basis triples, which suffices by multilinearity.
pub fn check_identity<K: Field>(a: &Algebra<K>, kind: IdentityKind) -> bool {
    match kind {
        IdentityKind::Commutative => commutative(a),
        _ => IdentityFlags::compute(a).holds(kind),
    }
}

fn commutative<K: Field>(a: &Algebra<K>) -> bool {
    let n = a.dim();
    (0..n).all(|i| (i + 1..n).all(|j| a.basis_product(i, j) == a.basis_product(j, i)))
}

/// `(e_i e_j) e_k` and `e_i (e_j e_k)` for all basis triples.
struct Triples<'a, K: Field> {
    field: &'a K,
    n: usize,
    left: Vec<K::Elem>,
    right: Vec<K::Elem>,
}

impl<'a, K: Field> Triples<'a, K> {
    fn new(a: &'a Algebra<K>) -> Self {
        let n = a.dim();
        let f = a.field();
        let mut left = vec![f.zero(); n * n * n * n];
        let mut right = vec![f.zero(); n * n * n * n];
        for i in 0..n {
            for j in 0..n {
                let ij = a.basis_product(i, j);
                for k in 0..n {
                    let jk = a.basis_product(j, k);
                    let base = ((i * n + j) * n + k) * n;
                    for m in 0..n {
                        // (e_i e_j) e_k = Σ_m c_ij^m e_m e_k
                        if !f.is_zero(&ij[m]) {
                            for (x, t) in left[base..base + n].iter_mut().zip(a.basis_product(m, k)) {
                                f.mul_add_assign(x, &ij[m], t);
                            }
                        }
                        // e_i (e_j e_k) = Σ_m c_jk^m e_i e_m
                        if !f.is_zero(&jk[m]) {
                            for (x, t) in right[base..base + n].iter_mut().zip(a.basis_product(i, m)) {
                                f.mul_add_assign(x, &jk[m], t);
                            }
                        }
                    }
                }
            }
        }
        Triples { field: f, n, left, right }
    }

    fn at<'b>(&self, v: &'b [K::Elem], i: usize, j: usize, k: usize) -> &'b [K::Elem] {
        let n = self.n;
        let base = ((i * n + j) * n + k) * n;
        &v[base..base + n]
    }

    fn associator(&self, i: usize, j: usize, k: usize) -> Vec<K::Elem> {
        self.at(&self.left, i, j, k)
            .iter()
            .zip(self.at(&self.right, i, j, k))
            .map(|(a, b)| self.field.sub(a, b))
            .collect()
    }

    fn all_triples(&self, mut pred: impl FnMut(usize, usize, usize) -> bool) -> bool {
        let n = self.n;
        (0..n).all(|i| (0..n).all(|j| (0..n).all(|k| pred(i, j, k))))
    }

    fn right_commutative(&self) -> bool {
        self.all_triples(|i, j, k| j >= k || self.at(&self.left, i, j, k) == self.at(&self.left, i, k, j))
    }

    fn left_commutative(&self) -> bool {
        self.all_triples(|i, j, k| i >= j || self.at(&self.right, i, j, k) == self.at(&self.right, j, i, k))
    }

    fn associative(&self) -> bool {
        self.left == self.right
    }

    fn left_symmetric(&self) -> bool {
        self.all_triples(|i, j, k| i >= j || self.associator(i, j, k) == self.associator(j, i, k))
    }

    fn right_symmetric(&self) -> bool {
        self.all_triples(|i, j, k| j >= k || self.associator(i, j, k) == self.associator(i, k, j))
    }

    /// Associator invariant under all six permutations of its arguments.
    fn fully_symmetric(&self) -> bool {
        self.all_triples(|i, j, k| {
            let base = self.associator(i, j, k);
            [(i, k, j), (j, i, k), (j, k, i), (k, i, j), (k, j, i)]
                .iter()
                .all(|&(x, y, z)| self.associator(x, y, z) == base)
        })
    }
}

/// Assosymmetry checked directly against all six permutations, independent
/// of the two-transposition shortcut used by [`IdentityFlags`].
pub fn assosymmetric_all_permutations<K: Field>(a: &Algebra<K>) -> bool {
    Triples::new(a).fully_symmetric()
}
