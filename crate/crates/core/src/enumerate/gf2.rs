//! Bit-packed arithmetic for algebras over `F_2`: a vector is a `u64` mask
//! with coordinate `i` in bit `i`, addition is XOR.

use std::ops::ControlFlow;

use super::RadicalKind;
use crate::algebra::Algebra;
use crate::exactfield::Field;
use crate::linalg::Subspace;

pub(crate) const MAX_DIM: usize = 64;

/// Subspace of `F_2^n` in reduced echelon form; the pivot of a row is its
/// lowest set bit and no other row has that bit.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BitSubspace {
    rows: Vec<u64>,
}

impl BitSubspace {
    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    pub fn reduce(&self, mut v: u64) -> u64 {
        for &r in &self.rows {
            if v & (r & r.wrapping_neg()) != 0 {
                v ^= r;
            }
        }
        v
    }

    pub fn contains_vector(&self, v: u64) -> bool {
        self.reduce(v) == 0
    }

    pub fn contains(&self, other: &BitSubspace) -> bool {
        other.rows.iter().all(|&r| self.contains_vector(r))
    }

    pub fn insert(&mut self, v: u64) -> bool {
        let v = self.reduce(v);
        if v == 0 {
            return false;
        }
        let bit = v & v.wrapping_neg();
        for r in self.rows.iter_mut() {
            if *r & bit != 0 {
                *r ^= v;
            }
        }
        let pos = self.rows.partition_point(|r| r.trailing_zeros() < v.trailing_zeros());
        self.rows.insert(pos, v);
        true
    }

    fn pivot_mask(&self) -> u64 {
        self.rows.iter().fold(0, |acc, r| acc | (r & r.wrapping_neg()))
    }
}

/// An algebra over `F_2` with each `e_i e_j` stored as a mask.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gf2Algebra {
    n: usize,
    table: Vec<u64>,
}

impl Gf2Algebra {
    /// Reads the table of an algebra over `F_2`: an entry is 1 iff nonzero.
    pub fn from_algebra<K: Field>(a: &Algebra<K>) -> Self {
        let n = a.dim();
        assert!(n <= MAX_DIM, "bit-packed algebras hold at most {MAX_DIM} coordinates");
        let f = a.field();
        let mut table = vec![0u64; n * n];
        for i in 0..n {
            for j in 0..n {
                table[i * n + j] = a
                    .basis_product(i, j)
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !f.is_zero(c))
                    .fold(0, |m, (k, _)| m | (1 << k));
            }
        }
        Gf2Algebra { n, table }
    }

    pub fn to_subspace<K: Field>(field: &K, n: usize, s: &BitSubspace) -> Subspace<K> {
        let vectors = s
            .rows
            .iter()
            .map(|&r| (0..n).map(|k| if r >> k & 1 == 1 { field.one() } else { field.zero() }).collect())
            .collect::<Vec<_>>();
        Subspace::span(field.clone(), n, vectors).expect("vectors have length n")
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    fn full_mask(&self) -> u64 {
        if self.n == 64 {
            u64::MAX
        } else {
            (1u64 << self.n) - 1
        }
    }

    pub fn mul(&self, u: u64, v: u64) -> u64 {
        let mut out = 0;
        for i in bits(u) {
            let row = &self.table[i * self.n..(i + 1) * self.n];
            for j in bits(v) {
                out ^= row[j];
            }
        }
        out
    }

    pub fn product(&self, u: &BitSubspace, v: &BitSubspace) -> BitSubspace {
        let mut out = BitSubspace::default();
        for &a in &u.rows {
            for &b in &v.rows {
                out.insert(self.mul(a, b));
                if out.dim() == self.n {
                    return out;
                }
            }
        }
        out
    }

    pub fn close_ideal(&self, mut s: BitSubspace) -> BitSubspace {
        let mut queue: Vec<u64> = s.rows.clone();
        while let Some(v) = queue.pop() {
            if s.dim() == self.n {
                break;
            }
            for i in 0..self.n {
                let e = 1u64 << i;
                for w in [self.mul(e, v), self.mul(v, e)] {
                    if s.insert(w) {
                        queue.push(w);
                    }
                }
            }
        }
        s
    }

    fn solvable(&self, u: &BitSubspace) -> bool {
        let mut cur = u.clone();
        loop {
            if cur.dim() == 0 {
                return true;
            }
            let next = self.product(&cur, &cur);
            if next == cur {
                return false;
            }
            cur = next;
        }
    }

    fn one_sided_nilpotent(&self, u: &BitSubspace, right: bool) -> bool {
        let mut cur = u.clone();
        loop {
            if cur.dim() == 0 {
                return true;
            }
            let next = if right { self.product(&cur, u) } else { self.product(u, &cur) };
            if next == cur {
                return false;
            }
            cur = next;
        }
    }

    fn nilpotent(&self, u: &BitSubspace) -> bool {
        let mut terms = vec![u.clone()];
        let mut run_start = 1;
        loop {
            let last = terms.last().expect("nonempty");
            if last.dim() == 0 {
                return true;
            }
            if terms.len() >= 2 * run_start && run_start < terms.len() {
                return false;
            }
            let m = terms.len() + 1;
            let mut next = BitSubspace::default();
            for i in 1..m {
                for r in self.product(&terms[i - 1], &terms[m - i - 1]).rows {
                    next.insert(r);
                }
            }
            if &next != last {
                run_start = m;
            }
            terms.push(next);
        }
    }

    pub fn has_property(&self, u: &BitSubspace, kind: RadicalKind) -> bool {
        match kind {
            RadicalKind::Solvable => self.solvable(u),
            RadicalKind::Nilpotent => self.nilpotent(u),
            RadicalKind::RightNil => self.one_sided_nilpotent(u, true),
            RadicalKind::LeftNil => self.one_sided_nilpotent(u, false),
        }
    }

    /// Same enumeration as the generic radical, on masks.
    pub fn radical(&self, kind: RadicalKind) -> BitSubspace {
        let mut r = BitSubspace::default();
        'grow: loop {
            let free: Vec<u32> = (0..self.n as u32).filter(|&c| r.pivot_mask() >> c & 1 == 0).collect();
            let hit = for_each_nonzero_on(&free, |v| {
                let mut s = BitSubspace::default();
                s.insert(v);
                let closure = self.close_ideal(s);
                if self.has_property(&closure, kind) {
                    ControlFlow::Break(closure)
                } else {
                    ControlFlow::Continue(())
                }
            });
            match hit {
                Some(c) => {
                    for row in c.rows {
                        r.insert(row);
                    }
                    if r.pivot_mask() == self.full_mask() {
                        return r;
                    }
                    continue 'grow;
                }
                None => return r,
            }
        }
    }
}

/// Every nonzero vector supported on the given columns.
fn for_each_nonzero_on<B>(cols: &[u32], mut visit: impl FnMut(u64) -> ControlFlow<B>) -> Option<B> {
    let k = cols.len();
    let total: u64 = if k == 64 { u64::MAX } else { (1u64 << k) - 1 };
    let mut m: u64 = 0;
    while m < total {
        m += 1;
        let v = cols.iter().enumerate().fold(0u64, |acc, (b, &c)| acc | ((m >> b & 1) << c));
        if let ControlFlow::Break(b) = visit(v) {
            return Some(b);
        }
    }
    None
}

fn bits(mut v: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if v == 0 {
            None
        } else {
            let i = v.trailing_zeros() as usize;
            v &= v - 1;
            Some(i)
        }
    })
}
