//! Dense exact matrices and canonical subspaces of `K^n`.
//!
//! A [`Subspace`] is always stored as the nonzero rows of its reduced row
//! echelon form, so two subspaces are equal exactly when their
//! representations are.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::exactfield::Field;

/// Coordinate vector over `K`.
pub type Vector<K> = Vec<<K as Field>::Elem>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix<K: Field> {
    field: K,
    rows: usize,
    cols: usize,
    data: Vec<K::Elem>,
}

impl<K: Field> Matrix<K> {
    pub fn new(field: K, rows: usize, cols: usize, data: Vec<K::Elem>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::usage(format!(
                "matrix data has {} entries, expected {rows}x{cols}",
                data.len()
            )));
        }
        Ok(Matrix { field, rows, cols, data })
    }

    pub fn zeros(field: K, rows: usize, cols: usize) -> Self {
        let data = vec![field.zero(); rows * cols];
        Matrix { field, rows, cols, data }
    }

    pub fn identity(field: K, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = m.field.one();
        }
        m
    }

    /// Builds a matrix from row vectors; `cols` is needed for the empty case.
    pub fn from_rows(field: K, cols: usize, rows: &[Vector<K>]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(Error::usage(format!("row {i} has length {}, expected {cols}", r.len())));
            }
            data.extend(r.iter().cloned());
        }
        Ok(Matrix { field, rows: rows.len(), cols, data })
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(field: K, rows: usize, columns: &[Vector<K>]) -> Result<Self> {
        let cols = columns.len();
        let mut m = Self::zeros(field, rows, cols);
        for (j, c) in columns.iter().enumerate() {
            if c.len() != rows {
                return Err(Error::usage(format!("column {j} has length {}, expected {rows}", c.len())));
            }
            for (i, x) in c.iter().enumerate() {
                m.data[i * cols + j] = x.clone();
            }
        }
        Ok(m)
    }

    pub fn field(&self) -> &K {
        &self.field
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn get(&self, r: usize, c: usize) -> &K::Elem {
        &self.data[r * self.cols + c]
    }
    pub fn row(&self, r: usize) -> &[K::Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }
    pub fn row_vectors(&self) -> Vec<Vector<K>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| self.field.is_zero(x))
    }

    pub fn mul_vec(&self, v: &[K::Elem]) -> Vector<K> {
        debug_assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                let mut acc = self.field.zero();
                for (a, b) in self.row(r).iter().zip(v) {
                    if !self.field.is_zero(b) {
                        self.field.mul_add_assign(&mut acc, a, b);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn mul(&self, other: &Matrix<K>) -> Result<Matrix<K>> {
        if self.cols != other.rows {
            return Err(Error::usage(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let mut out = Self::zeros(f.clone(), self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    f.mul_add_assign(&mut out.data[idx], a, other.get(k, j));
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> Result<Matrix<K>> {
        if self.rows != self.cols {
            return Err(Error::usage("power of a non-square matrix"));
        }
        let mut result = Self::identity(self.field.clone(), self.rows);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(result)
    }

    /// Stacks `other` below `self`.
    pub fn stack(&self, other: &Matrix<K>) -> Result<Matrix<K>> {
        if self.cols != other.cols {
            return Err(Error::usage("stacking matrices with different column counts"));
        }
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(Matrix { field: self.field.clone(), rows: self.rows + other.rows, cols: self.cols, data })
    }

    /// Reduced row echelon form, same shape, zero rows at the bottom.
    pub fn rref(&self) -> Matrix<K> {
        let mut m = self.clone();
        m.rref_in_place();
        m
    }

    /// Nonzero rows of the RREF.
    pub fn rref_rows(&self) -> Vec<Vector<K>> {
        let r = self.rref();
        let rank = r.rank_of_rref();
        (0..rank).map(|i| r.row(i).to_vec()).collect()
    }

    pub fn rank(&self) -> usize {
        self.rref().rank_of_rref()
    }

    fn rank_of_rref(&self) -> usize {
        (0..self.rows)
            .take_while(|&r| self.row(r).iter().any(|x| !self.field.is_zero(x)))
            .count()
    }

    /// Gauss-Jordan elimination; returns pivot columns.
    fn rref_in_place(&mut self) -> Vec<usize> {
        let f = self.field.clone();
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(p) = (r..rows).find(|&i| !f.is_zero(&self.data[i * cols + c])) else {
                continue;
            };
            if p != r {
                for j in 0..cols {
                    self.data.swap(p * cols + j, r * cols + j);
                }
            }
            let inv = f.inv(&self.data[r * cols + c]).expect("pivot is nonzero");
            for j in c..cols {
                let x = &self.data[r * cols + j];
                self.data[r * cols + j] = f.mul(x, &inv);
            }
            for i in 0..rows {
                if i == r {
                    continue;
                }
                let factor = self.data[i * cols + c].clone();
                if f.is_zero(&factor) {
                    continue;
                }
                for j in c..cols {
                    let t = f.mul(&factor, &self.data[r * cols + j]);
                    self.data[i * cols + j] = f.sub(&self.data[i * cols + j], &t);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    /// `{x : Mx = 0}` as a canonical subspace of `K^cols`.
    pub fn kernel(&self) -> Subspace<K> {
        let f = &self.field;
        let mut r = self.clone();
        let pivots = r.rref_in_place();
        let mut basis = Vec::new();
        let mut pi = 0;
        for free in 0..self.cols {
            if pi < pivots.len() && pivots[pi] == free {
                pi += 1;
                continue;
            }
            let mut v = vec![f.zero(); self.cols];
            v[free] = f.one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(r.get(row, free));
            }
            basis.push(v);
        }
        let mut s = Subspace::zero(f.clone(), self.cols);
        for v in basis {
            s.insert(v);
        }
        s
    }
}

/// Kernel of `m`, the subspace `{x : mx = 0}`.
pub fn solve_membership_system<K: Field>(m: &Matrix<K>) -> Subspace<K> {
    m.kernel()
}

/// A subspace of `K^ambient` held in canonical reduced row echelon form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace<K: Field> {
    field: K,
    ambient: usize,
    rows: Vec<Vector<K>>,
    pivots: Vec<usize>,
}

impl<K: Field> PartialOrd for Subspace<K> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Canonical order: ambient dimension, then the pivot column sequence, then
/// the basis entries. Used for every deterministic tie-break.
impl<K: Field> Ord for Subspace<K> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.ambient
            .cmp(&other.ambient)
            .then_with(|| self.pivots.cmp(&other.pivots))
            .then_with(|| self.rows.cmp(&other.rows))
    }
}

impl<K: Field> Subspace<K> {
    pub fn zero(field: K, ambient: usize) -> Self {
        Subspace { field, ambient, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(field: K, ambient: usize) -> Self {
        let f = &field;
        let rows = (0..ambient)
            .map(|i| {
                let mut v = vec![f.zero(); ambient];
                v[i] = f.one();
                v
            })
            .collect();
        Subspace { pivots: (0..ambient).collect(), field, ambient, rows }
    }

    pub fn span<I>(field: K, ambient: usize, vectors: I) -> Result<Self>
    where
        I: IntoIterator<Item = Vector<K>>,
    {
        let mut s = Self::zero(field, ambient);
        for (i, v) in vectors.into_iter().enumerate() {
            if v.len() != ambient {
                return Err(Error::usage(format!(
                    "vector {i} has length {}, expected {ambient}",
                    v.len()
                )));
            }
            s.insert(v);
        }
        Ok(s)
    }

    /// Builds a subspace from rows already known to be in reduced echelon
    /// form without zero rows.
    pub(crate) fn from_rref_rows(field: K, ambient: usize, rows: Vec<Vector<K>>) -> Self {
        let pivots = rows
            .iter()
            .map(|r| r.iter().position(|x| !field.is_zero(x)).expect("nonzero row"))
            .collect();
        Subspace { field, ambient, rows, pivots }
    }

    pub fn field(&self) -> &K {
        &self.field
    }
    pub fn ambient(&self) -> usize {
        self.ambient
    }
    pub fn dim(&self) -> usize {
        self.rows.len()
    }
    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }
    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ambient
    }
    pub fn basis(&self) -> &[Vector<K>] {
        &self.rows
    }
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// The RREF basis as a matrix.
    pub fn basis_matrix(&self) -> Matrix<K> {
        Matrix::from_rows(self.field.clone(), self.ambient, &self.rows).expect("rows have ambient length")
    }

    /// Columns that are not pivots, in increasing order.
    pub fn free_columns(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.ambient - self.dim());
        let mut pi = 0;
        for c in 0..self.ambient {
            if pi < self.pivots.len() && self.pivots[pi] == c {
                pi += 1;
            } else {
                out.push(c);
            }
        }
        out
    }

    /// Reduces `v` modulo the subspace in place: afterwards `v` is zero on
    /// every pivot column, and `v` is in the subspace iff it became zero.
    pub fn reduce(&self, v: &mut [K::Elem]) {
        let f = &self.field;
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if f.is_zero(&v[p]) {
                continue;
            }
            let c = v[p].clone();
            for (x, r) in v[p..].iter_mut().zip(&row[p..]) {
                if !f.is_zero(r) {
                    let t = f.mul(&c, r);
                    *x = f.sub(x, &t);
                }
            }
        }
    }

    pub fn contains_vector(&self, v: &[K::Elem]) -> bool {
        if v.len() != self.ambient {
            return false;
        }
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|x| self.field.is_zero(x))
    }

    /// `other ⊆ self`
    pub fn contains(&self, other: &Subspace<K>) -> bool {
        other.ambient == self.ambient
            && other.dim() <= self.dim()
            && other.rows.iter().all(|r| self.contains_vector(r))
    }

    /// Adds `v` to the spanning set, keeping the basis in reduced form.
    /// Returns whether the dimension grew.
    pub fn insert(&mut self, mut v: Vector<K>) -> bool {
        debug_assert_eq!(v.len(), self.ambient);
        self.reduce(&mut v);
        let f = self.field.clone();
        let Some(p) = v.iter().position(|x| !f.is_zero(x)) else {
            return false;
        };
        if !f.is_zero(&f.sub(&v[p], &f.one())) {
            let inv = f.inv(&v[p]).expect("nonzero");
            for x in v[p..].iter_mut() {
                *x = f.mul(x, &inv);
            }
        }
        for row in self.rows.iter_mut() {
            if f.is_zero(&row[p]) {
                continue;
            }
            let c = row[p].clone();
            for (x, y) in row[p..].iter_mut().zip(&v[p..]) {
                if !f.is_zero(y) {
                    let t = f.mul(&c, y);
                    *x = f.sub(x, &t);
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, v);
        true
    }

    fn check_compatible(&self, other: &Subspace<K>) -> Result<()> {
        if self.ambient != other.ambient || self.field != other.field {
            return Err(Error::usage(format!(
                "subspaces live in different spaces ({} over {}, {} over {})",
                self.ambient,
                self.field.spec(),
                other.ambient,
                other.field.spec()
            )));
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace<K>) -> Result<Subspace<K>> {
        self.check_compatible(other)?;
        let (mut big, small) = if self.dim() >= other.dim() { (self.clone(), other) } else { (other.clone(), self) };
        for r in &small.rows {
            big.insert(r.clone());
        }
        Ok(big)
    }

    pub fn intersect(&self, other: &Subspace<K>) -> Result<Subspace<K>> {
        self.check_compatible(other)?;
        if self.contains(other) {
            return Ok(other.clone());
        }
        if other.contains(self) {
            return Ok(self.clone());
        }
        Ok(self.constraints().stack(&other.constraints())?.kernel())
    }

    /// A matrix `W` with `self = ker W`.
    pub fn constraints(&self) -> Matrix<K> {
        let f = &self.field;
        let free = self.free_columns();
        let mut data = Vec::with_capacity(free.len() * self.ambient);
        for &q in &free {
            let mut w = vec![f.zero(); self.ambient];
            w[q] = f.one();
            for (row, &p) in self.rows.iter().zip(&self.pivots) {
                w[p] = f.neg(&row[q]);
            }
            data.extend(w);
        }
        Matrix::new(f.clone(), free.len(), self.ambient, data).expect("consistent shape")
    }

    /// Coordinates of `v` in the RREF basis, or `None` if `v` is not in the subspace.
    pub fn coordinates(&self, v: &[K::Elem]) -> Option<Vector<K>> {
        if !self.contains_vector(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    /// `Σ c_i b_i` for the RREF basis `b_i`.
    pub fn combine(&self, coeffs: &[K::Elem]) -> Vector<K> {
        let f = &self.field;
        let mut v = vec![f.zero(); self.ambient];
        for (c, row) in coeffs.iter().zip(&self.rows) {
            if f.is_zero(c) {
                continue;
            }
            for (x, r) in v.iter_mut().zip(row) {
                f.mul_add_assign(x, c, r);
            }
        }
        v
    }
}

pub fn subspace_sum<K: Field>(u: &Subspace<K>, v: &Subspace<K>) -> Result<Subspace<K>> {
    u.sum(v)
}

pub fn subspace_intersect<K: Field>(u: &Subspace<K>, v: &Subspace<K>) -> Result<Subspace<K>> {
    u.intersect(v)
}

pub fn rref<K: Field>(m: &Matrix<K>) -> Matrix<K> {
    m.rref()
}

pub fn span<K: Field>(vectors: Vec<Vector<K>>, ambient: usize, field: K) -> Result<Subspace<K>> {
    Subspace::span(field, ambient, vectors)
}
