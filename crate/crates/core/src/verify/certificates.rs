//! Data supplied with algebras over `Q`, where nothing can be enumerated:
//! a solvable radical and some codimension-one subalgebras.

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::exactfield::Field;
use crate::linalg::Subspace;
use crate::series;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificates<K: Field> {
    /// Claimed `R(A)`.
    pub solvable_radical: Option<Subspace<K>>,
    /// Proper subalgebras of codimension one, which are maximal.
    pub codim_one_subalgebras: Vec<Subspace<K>>,
}

impl<K: Field> Default for Certificates<K> {
    fn default() -> Self {
        Certificates { solvable_radical: None, codim_one_subalgebras: Vec::new() }
    }
}

impl<K: Field> Certificates<K> {
    pub fn is_empty(&self) -> bool {
        self.solvable_radical.is_none() && self.codim_one_subalgebras.is_empty()
    }

    /// Checks every certificate against `a`.
    ///
    /// A radical certificate `R` must be a solvable ideal with `A/R` either
    /// zero or spanned by orthogonal idempotents `e_i² = e_i`, `e_i e_j = 0`;
    /// such a quotient is a sum of copies of the field and so is semisimple,
    /// which pins `R` down as the solvable radical.
    pub fn validate(&self, a: &Algebra<K>) -> Result<()> {
        let n = a.dim();
        if let Some(r) = &self.solvable_radical {
            if r.ambient() != n {
                return Err(Error::precondition("certified radical has the wrong ambient dimension"));
            }
            if !a.is_ideal(r) {
                return Err(Error::precondition("certified radical is not an ideal"));
            }
            if !series::is_solvable(a, r) {
                return Err(Error::precondition("certified radical is not solvable"));
            }
            let (q, _) = a.quotient(r)?;
            if !orthogonal_idempotents(&q) {
                return Err(Error::precondition(
                    "the quotient by the certified radical is not spanned by orthogonal idempotents",
                ));
            }
        }
        for (i, m) in self.codim_one_subalgebras.iter().enumerate() {
            if m.ambient() != n || m.dim() + 1 != n {
                return Err(Error::precondition(format!("certified subalgebra {i} does not have codimension one")));
            }
            if !a.is_subalgebra(m) {
                return Err(Error::precondition(format!("certified subalgebra {i} is not closed under products")));
            }
        }
        Ok(())
    }
}

fn orthogonal_idempotents<K: Field>(q: &Algebra<K>) -> bool {
    let f = q.field();
    (0..q.dim()).all(|i| {
        (0..q.dim()).all(|j| {
            let p = q.basis_product(i, j);
            p.iter().enumerate().all(|(k, c)| {
                if i == j && k == i {
                    *c == f.one()
                } else {
                    f.is_zero(c)
                }
            })
        })
    })
}

/// What the certificates say about `φ(A)`: `lower ⊆ φ(A) ⊆ upper`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiBounds<K: Field> {
    pub lower: Subspace<K>,
    pub upper: Subspace<K>,
}

impl<K: Field> PhiBounds<K> {
    /// `upper` is the largest ideal inside the intersection of the certified
    /// maximal subalgebras. `lower` collects `A²` when `A` is nilpotent and
    /// `R²` when the radical `R` is nilpotent, since `φ(R) = R² ⊆ φ(A)`.
    pub fn from_certificates(a: &Algebra<K>, certs: &Certificates<K>, radical: Option<&Subspace<K>>) -> Self {
        let mut f = a.full();
        for m in &certs.codim_one_subalgebras {
            f = f.intersect(m).expect("same ambient");
        }
        let upper = a.ideal_core(&f).expect("same ambient");
        let full = a.full();
        let mut lower = a.zero_subspace();
        if series::is_nilpotent(a, &full) {
            lower = lower.sum(&a.square(&full)).expect("same ambient");
        }
        if let Some(r) = radical {
            if series::is_nilpotent(a, r) {
                lower = lower.sum(&a.square(r)).expect("same ambient");
            }
        }
        PhiBounds { lower, upper }
    }

    pub fn exact(&self) -> Option<&Subspace<K>> {
        (self.lower == self.upper).then_some(&self.lower)
    }
}
