//! Finite-dimensional algebras given by structure constants.
//!
//! `e_i e_j = Σ_k c_{ij}^k e_k`; every other product is the bilinear
//! extension of this table.

mod identity;

pub use identity::{assosymmetric_all_permutations, check_identity, IdentityFlags, IdentityKind};

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactfield::Field;
use crate::linalg::{Matrix, Subspace, Vector};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Algebra<K: Field> {
    field: K,
    dim: usize,
    /// `table[(i * dim + j) * dim + k] = c_{ij}^k`
    table: Vec<K::Elem>,
    labels: Option<Vec<String>>,
}

/// Which side a multiplication operator acts from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    /// `ρ_a : x ↦ xa`
    Right,
    /// `λ_a : x ↦ ax`
    Left,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Right => "right",
            Side::Left => "left",
        })
    }
}

/// The matrix of `x ↦ xa` or `x ↦ ax`; column `j` is the image of `e_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MulOperator<K: Field> {
    pub side: Side,
    pub element: Vector<K>,
    pub matrix: Matrix<K>,
}

/// Coordinates of a quotient `A/I`: vectors are reduced modulo `I` and read
/// off on the non-pivot columns of `I`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Projection<K: Field> {
    ideal: Subspace<K>,
    kept: Vec<usize>,
}

impl<K: Field> Projection<K> {
    pub fn ideal(&self) -> &Subspace<K> {
        &self.ideal
    }

    /// Coordinates of `A` that survive in the quotient.
    pub fn kept_coordinates(&self) -> &[usize] {
        &self.kept
    }

    pub fn project(&self, v: &[K::Elem]) -> Vector<K> {
        let mut w = v.to_vec();
        self.ideal.reduce(&mut w);
        self.kept.iter().map(|&c| w[c].clone()).collect()
    }

    /// A canonical preimage: the quotient coordinates placed on the kept columns.
    pub fn lift(&self, w: &[K::Elem]) -> Vector<K> {
        let f = self.ideal.field();
        let mut v = vec![f.zero(); self.ideal.ambient()];
        for (&c, x) in self.kept.iter().zip(w) {
            v[c] = x.clone();
        }
        v
    }

    pub fn project_subspace(&self, u: &Subspace<K>) -> Subspace<K> {
        let f = self.ideal.field().clone();
        let mut out = Subspace::zero(f, self.kept.len());
        for b in u.basis() {
            out.insert(self.project(b));
        }
        out
    }

    /// Full preimage of a subspace of the quotient; always contains the ideal.
    pub fn preimage(&self, w: &Subspace<K>) -> Subspace<K> {
        let mut out = self.ideal.clone();
        for b in w.basis() {
            out.insert(self.lift(b));
        }
        out
    }
}

impl<K: Field> Algebra<K> {
    pub fn new(field: K, dim: usize, table: Vec<K::Elem>) -> Result<Self> {
        if table.len() != dim * dim * dim {
            return Err(Error::usage(format!(
                "structure constant table has {} entries, expected {}",
                table.len(),
                dim * dim * dim
            )));
        }
        Ok(Algebra { field, dim, table, labels: None })
    }

    pub fn zero_algebra(field: K, dim: usize) -> Self {
        let table = vec![field.zero(); dim * dim * dim];
        Algebra { field, dim, table, labels: None }
    }

    /// Builds an algebra from `(i, j, e_i e_j)` entries; missing pairs are zero.
    pub fn from_products<I>(field: K, dim: usize, products: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, Vector<K>)>,
    {
        let mut a = Self::zero_algebra(field, dim);
        let mut seen = vec![false; dim * dim];
        for (i, j, v) in products {
            if i >= dim || j >= dim {
                return Err(Error::usage(format!("product index ({i}, {j}) out of range for dimension {dim}")));
            }
            if std::mem::replace(&mut seen[i * dim + j], true) {
                return Err(Error::usage(format!("duplicate product entry ({i}, {j})")));
            }
            a.set_product(i, j, v)?;
        }
        Ok(a)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.dim {
            return Err(Error::usage(format!("{} labels for dimension {}", labels.len(), self.dim)));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn without_labels(mut self) -> Self {
        self.labels = None;
        self
    }

    pub fn set_product(&mut self, i: usize, j: usize, v: Vector<K>) -> Result<()> {
        if v.len() != self.dim {
            return Err(Error::usage(format!(
                "product e{i}e{j} has {} coordinates, expected {}",
                v.len(),
                self.dim
            )));
        }
        let n = self.dim;
        let start = (i * n + j) * n;
        self.table[start..start + n].clone_from_slice(&v);
        Ok(())
    }

    pub fn field(&self) -> &K {
        &self.field
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }
    pub fn table(&self) -> &[K::Elem] {
        &self.table
    }

    /// Display name of basis element `i`.
    pub fn label(&self, i: usize) -> String {
        match &self.labels {
            Some(l) => l[i].clone(),
            None => format!("e{}", i + 1),
        }
    }

    /// `e_i e_j`
    pub fn basis_product(&self, i: usize, j: usize) -> &[K::Elem] {
        let n = self.dim;
        let start = (i * n + j) * n;
        &self.table[start..start + n]
    }

    pub fn basis_vector(&self, i: usize) -> Vector<K> {
        let mut v = vec![self.field.zero(); self.dim];
        v[i] = self.field.one();
        v
    }

    pub fn zero_vector(&self) -> Vector<K> {
        vec![self.field.zero(); self.dim]
    }

    pub fn full(&self) -> Subspace<K> {
        Subspace::full(self.field.clone(), self.dim)
    }

    pub fn zero_subspace(&self) -> Subspace<K> {
        Subspace::zero(self.field.clone(), self.dim)
    }

    pub fn span(&self, vectors: Vec<Vector<K>>) -> Result<Subspace<K>> {
        Subspace::span(self.field.clone(), self.dim, vectors)
    }

    /// Product of two coordinate vectors without length checks.
    pub(crate) fn mul(&self, a: &[K::Elem], b: &[K::Elem]) -> Vector<K> {
        let f = &self.field;
        let n = self.dim;
        let mut out = vec![f.zero(); n];
        for (i, ai) in a.iter().enumerate() {
            if f.is_zero(ai) {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if f.is_zero(bj) {
                    continue;
                }
                let c = f.mul(ai, bj);
                for (o, t) in out.iter_mut().zip(self.basis_product(i, j)) {
                    if !f.is_zero(t) {
                        f.mul_add_assign(o, &c, t);
                    }
                }
            }
        }
        out
    }

    fn check_element(&self, a: &[K::Elem]) -> Result<()> {
        if a.len() != self.dim {
            return Err(Error::usage(format!(
                "element has {} coordinates but the algebra has dimension {}",
                a.len(),
                self.dim
            )));
        }
        Ok(())
    }

    fn check_subspace(&self, u: &Subspace<K>) -> Result<()> {
        if u.ambient() != self.dim || u.field() != &self.field {
            return Err(Error::usage(format!(
                "subspace of {}-space over {} used with a {}-dimensional algebra over {}",
                u.ambient(),
                u.field().spec(),
                self.dim,
                self.field.spec()
            )));
        }
        Ok(())
    }

    /// `Σ_{i,j} a_i b_j c_{ij}`
    pub fn multiply(&self, a: &[K::Elem], b: &[K::Elem]) -> Result<Vector<K>> {
        self.check_element(a)?;
        self.check_element(b)?;
        Ok(self.mul(a, b))
    }

    /// `(x, y, z) = (xy)z - x(yz)`
    pub fn associator(&self, x: &[K::Elem], y: &[K::Elem], z: &[K::Elem]) -> Result<Vector<K>> {
        self.check_element(x)?;
        self.check_element(y)?;
        self.check_element(z)?;
        let l = self.mul(&self.mul(x, y), z);
        let r = self.mul(x, &self.mul(y, z));
        Ok(l.iter().zip(&r).map(|(a, b)| self.field.sub(a, b)).collect())
    }

    /// `[e_0 v, ..., e_{n-1} v]`
    pub(crate) fn basis_times(&self, v: &[K::Elem]) -> Vec<Vector<K>> {
        let f = &self.field;
        let n = self.dim;
        let mut out = vec![vec![f.zero(); n]; n];
        for (j, vj) in v.iter().enumerate() {
            if f.is_zero(vj) {
                continue;
            }
            for (i, o) in out.iter_mut().enumerate() {
                for (x, t) in o.iter_mut().zip(self.basis_product(i, j)) {
                    if !f.is_zero(t) {
                        f.mul_add_assign(x, vj, t);
                    }
                }
            }
        }
        out
    }

    /// `[v e_0, ..., v e_{n-1}]`
    pub(crate) fn times_basis(&self, v: &[K::Elem]) -> Vec<Vector<K>> {
        let f = &self.field;
        let n = self.dim;
        let mut out = vec![vec![f.zero(); n]; n];
        for (i, vi) in v.iter().enumerate() {
            if f.is_zero(vi) {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                for (x, t) in o.iter_mut().zip(self.basis_product(i, j)) {
                    if !f.is_zero(t) {
                        f.mul_add_assign(x, vi, t);
                    }
                }
            }
        }
        out
    }

    pub fn check_identity(&self, kind: IdentityKind) -> bool {
        check_identity(self, kind)
    }

    pub fn identities(&self) -> IdentityFlags {
        IdentityFlags::compute(self)
    }

    /// `span{uv : u ∈ U, v ∈ V}`
    pub fn subspace_product(&self, u: &Subspace<K>, v: &Subspace<K>) -> Result<Subspace<K>> {
        self.check_subspace(u)?;
        self.check_subspace(v)?;
        Ok(self.product(u, v))
    }

    pub(crate) fn product(&self, u: &Subspace<K>, v: &Subspace<K>) -> Subspace<K> {
        let mut out = self.zero_subspace();
        for a in u.basis() {
            for b in v.basis() {
                out.insert(self.mul(a, b));
                if out.is_full() {
                    return out;
                }
            }
        }
        out
    }

    /// `U^2`
    pub(crate) fn square(&self, u: &Subspace<K>) -> Subspace<K> {
        self.product(u, u)
    }

    /// `UU ⊆ U`
    pub fn is_subalgebra(&self, u: &Subspace<K>) -> bool {
        u.ambient() == self.dim
            && u
                .basis()
                .iter()
                .all(|a| u.basis().iter().all(|b| u.contains_vector(&self.mul(a, b))))
    }

    /// `AU ⊆ U`
    pub fn is_left_ideal(&self, u: &Subspace<K>) -> bool {
        u.ambient() == self.dim
            && u
                .basis()
                .iter()
                .all(|b| self.basis_times(b).iter().all(|w| u.contains_vector(w)))
    }

    /// `UA ⊆ U`
    pub fn is_right_ideal(&self, u: &Subspace<K>) -> bool {
        u.ambient() == self.dim
            && u
                .basis()
                .iter()
                .all(|b| self.times_basis(b).iter().all(|w| u.contains_vector(w)))
    }

    /// `AU + UA ⊆ U`
    pub fn is_ideal(&self, u: &Subspace<K>) -> bool {
        self.is_left_ideal(u) && self.is_right_ideal(u)
    }

    /// Smallest subalgebra containing the given vectors.
    pub fn subalgebra_closure(&self, generators: &[Vector<K>]) -> Result<Subspace<K>> {
        generators.iter().try_for_each(|g| self.check_element(g))?;
        let mut s = self.zero_subspace();
        for g in generators {
            s.insert(g.clone());
        }
        Ok(self.close_subalgebra(s))
    }

    /// Smallest subalgebra containing `s`.
    pub(crate) fn close_subalgebra(&self, mut s: Subspace<K>) -> Subspace<K> {
        let mut queue: Vec<Vector<K>> = s.basis().to_vec();
        let mut done: Vec<Vector<K>> = Vec::new();
        while let Some(v) = queue.pop() {
            if s.is_full() {
                break;
            }
            let mut fresh = Vec::new();
            for u in done.iter().chain(std::iter::once(&v)) {
                fresh.push(self.mul(u, &v));
                fresh.push(self.mul(&v, u));
            }
            done.push(v);
            for w in fresh {
                if s.insert(w.clone()) {
                    queue.push(w);
                }
            }
        }
        s
    }

    /// Smallest two-sided ideal containing the given vectors.
    pub fn ideal_closure(&self, generators: &[Vector<K>]) -> Result<Subspace<K>> {
        generators.iter().try_for_each(|g| self.check_element(g))?;
        let mut s = self.zero_subspace();
        for g in generators {
            s.insert(g.clone());
        }
        Ok(self.close_ideal(s))
    }

    /// Smallest ideal containing `s`.
    pub(crate) fn close_ideal(&self, mut s: Subspace<K>) -> Subspace<K> {
        let mut queue: Vec<Vector<K>> = s.basis().to_vec();
        while let Some(v) = queue.pop() {
            if s.is_full() {
                break;
            }
            for w in self
                .basis_times(&v)
                .into_iter()
                .chain(self.times_basis(&v))
            {
                if s.insert(w.clone()) {
                    queue.push(w);
                }
            }
        }
        s
    }

    /// Matrix of `x ↦ xa` (right) or `x ↦ ax` (left).
    pub fn mul_operator(&self, a: &[K::Elem], side: Side) -> Result<MulOperator<K>> {
        self.check_element(a)?;
        Ok(MulOperator { side, element: a.to_vec(), matrix: self.operator_matrix(a, side) })
    }

    pub(crate) fn operator_matrix(&self, a: &[K::Elem], side: Side) -> Matrix<K> {
        let images = match side {
            Side::Right => self.basis_times(a),
            Side::Left => self.times_basis(a),
        };
        Matrix::from_columns(self.field.clone(), self.dim, &images).expect("images have length dim")
    }

    /// Fitting null component of `ρ_a` or `λ_a`: `ker(op^dim)`.
    pub fn fitting_component(&self, a: &[K::Elem], side: Side) -> Result<Subspace<K>> {
        self.check_element(a)?;
        let m = self.operator_matrix(a, side);
        Ok(m.pow(self.dim as u32)?.kernel())
    }

    /// Whether `ρ_a^k(a) = 0` for some `k ≤ dim + 1`.
    pub fn is_right_nil(&self, a: &[K::Elem]) -> Result<bool> {
        self.check_element(a)?;
        Ok(self.nil_orbit_vanishes(a, Side::Right))
    }

    /// Whether `λ_a^k(a) = 0` for some `k ≤ dim + 1`.
    pub fn is_left_nil(&self, a: &[K::Elem]) -> Result<bool> {
        self.check_element(a)?;
        Ok(self.nil_orbit_vanishes(a, Side::Left))
    }

    pub(crate) fn nil_orbit_vanishes(&self, a: &[K::Elem], side: Side) -> bool {
        let f = &self.field;
        let mut x = a.to_vec();
        for _ in 0..=self.dim + 1 {
            if x.iter().all(|c| f.is_zero(c)) {
                return true;
            }
            x = match side {
                Side::Right => self.mul(&x, a),
                Side::Left => self.mul(a, &x),
            };
        }
        x.iter().all(|c| f.is_zero(c))
    }

    /// Whether `op_a` is a nilpotent linear map on the whole algebra.
    pub(crate) fn acts_nilpotently(&self, a: &[K::Elem], side: Side) -> bool {
        let m = self.operator_matrix(a, side);
        m.pow(self.dim as u32).map(|p| p.is_zero()).unwrap_or(false)
    }

    /// `I_A(B) = {a : aB + Ba ⊆ B}`
    pub fn idealizer(&self, b: &Subspace<K>) -> Result<Subspace<K>> {
        self.check_subspace(b)?;
        let w = b.constraints();
        let mut system = Matrix::zeros(self.field.clone(), 0, self.dim);
        for v in b.basis() {
            // a ↦ a v is ρ_v, a ↦ v a is λ_v
            let rho = self.operator_matrix(v, Side::Right);
            let lam = self.operator_matrix(v, Side::Left);
            system = system.stack(&w.mul(&rho)?)?.stack(&w.mul(&lam)?)?;
        }
        Ok(system.kernel())
    }

    /// `Ann_A(B) = {a : aB = Ba = 0}`
    pub fn annihilator(&self, b: &Subspace<K>) -> Result<Subspace<K>> {
        self.check_subspace(b)?;
        let mut system = Matrix::zeros(self.field.clone(), 0, self.dim);
        for v in b.basis() {
            system = system
                .stack(&self.operator_matrix(v, Side::Right))?
                .stack(&self.operator_matrix(v, Side::Left))?;
        }
        Ok(system.kernel())
    }

    /// Largest ideal of `A` contained in `s`.
    pub fn ideal_core(&self, s: &Subspace<K>) -> Result<Subspace<K>> {
        self.check_subspace(s)?;
        let mut k = s.clone();
        loop {
            if k.is_zero() {
                return Ok(k);
            }
            let w = k.constraints();
            let mut system = w.clone();
            for i in 0..self.dim {
                let e = self.basis_vector(i);
                system = system
                    .stack(&w.mul(&self.operator_matrix(&e, Side::Left))?)?
                    .stack(&w.mul(&self.operator_matrix(&e, Side::Right))?)?;
            }
            let next = system.kernel();
            if next == k {
                return Ok(k);
            }
            k = next;
        }
    }

    /// `A/I` on the coordinates complementary to the pivots of `I`.
    pub fn quotient(&self, ideal: &Subspace<K>) -> Result<(Algebra<K>, Projection<K>)> {
        self.check_subspace(ideal)?;
        if !self.is_ideal(ideal) {
            return Err(Error::usage("quotient by a subspace that is not an ideal"));
        }
        let proj = Projection { ideal: ideal.clone(), kept: ideal.free_columns() };
        let m = proj.kept.len();
        let mut table = Vec::with_capacity(m * m * m);
        for &a in &proj.kept {
            for &b in &proj.kept {
                table.extend(proj.project(self.basis_product(a, b)));
            }
        }
        let mut q = Algebra::new(self.field.clone(), m, table)?;
        if let Some(l) = &self.labels {
            q.labels = Some(proj.kept.iter().map(|&c| l[c].clone()).collect());
        }
        Ok((q, proj))
    }

    /// A subalgebra `B` as an algebra in its own right, in the RREF basis of `B`.
    pub fn restrict(&self, b: &Subspace<K>) -> Result<Algebra<K>> {
        self.check_subspace(b)?;
        if !self.is_subalgebra(b) {
            return Err(Error::usage("restriction to a subspace that is not a subalgebra"));
        }
        let d = b.dim();
        let mut table = Vec::with_capacity(d * d * d);
        for u in b.basis() {
            for v in b.basis() {
                table.extend(b.coordinates(&self.mul(u, v)).expect("closed under products"));
            }
        }
        Algebra::new(self.field.clone(), d, table)
    }

    /// Algebra direct sum `A ⊕ B`.
    pub fn direct_sum(&self, other: &Algebra<K>) -> Result<Algebra<K>> {
        if self.field != other.field {
            return Err(Error::usage("direct sum of algebras over different fields"));
        }
        let (n, m) = (self.dim, other.dim);
        let mut out = Algebra::zero_algebra(self.field.clone(), n + m);
        for i in 0..n {
            for j in 0..n {
                let mut v = out.zero_vector();
                v[..n].clone_from_slice(self.basis_product(i, j));
                out.set_product(i, j, v)?;
            }
        }
        for i in 0..m {
            for j in 0..m {
                let mut v = out.zero_vector();
                v[n..].clone_from_slice(other.basis_product(i, j));
                out.set_product(n + i, n + j, v)?;
            }
        }
        if self.labels.is_some() || other.labels.is_some() {
            let mut labels: Vec<String> = (0..n).map(|i| self.label(i)).collect();
            labels.extend((0..m).map(|i| format!("{}'", other.label(i))));
            out.labels = Some(labels);
        }
        Ok(out)
    }

    /// The opposite algebra, `a ∘ b = ba`.
    pub fn opposite(&self) -> Algebra<K> {
        let n = self.dim;
        let mut out = Algebra::zero_algebra(self.field.clone(), n);
        for i in 0..n {
            for j in 0..n {
                out.set_product(i, j, self.basis_product(j, i).to_vec()).expect("length n");
            }
        }
        out.labels = self.labels.clone();
        out
    }

    /// Number of nonzero structure constants.
    pub fn nonzero_constants(&self) -> usize {
        self.table.iter().filter(|x| !self.field.is_zero(x)).count()
    }
}

#[cfg(test)]
mod tests;
