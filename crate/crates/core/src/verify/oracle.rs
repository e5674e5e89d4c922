use std::collections::BTreeSet;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::exactfield::Field;
use crate::linalg::{Subspace, Vector};

pub const MAX_ORACLE_LENGTH: usize = 6;

/// Span of every product of `n` basis elements under every bracketing,
/// built from the values of the monomials rather than from subspaces.
pub fn bracket_power_oracle<K: Field>(a: &Algebra<K>, n: usize) -> Result<Subspace<K>> {
    if n == 0 {
        return Err(Error::usage("products have at least one factor"));
    }
    if n > MAX_ORACLE_LENGTH {
        return Err(Error::budget(format!(
            "bracketings of {n} factors exceed the oracle limit of {MAX_ORACLE_LENGTH}"
        )));
    }
    let f = a.field();
    // values[k] = distinct values of monomials with k + 1 factors
    let mut values: Vec<BTreeSet<Vector<K>>> = vec![(0..a.dim()).map(|i| a.basis_vector(i)).collect()];
    for len in 2..=n {
        let mut out = BTreeSet::new();
        for left in 1..len {
            for u in &values[left - 1] {
                for v in &values[len - left - 1] {
                    let w = a.mul(u, v);
                    if w.iter().any(|c| !f.is_zero(c)) {
                        out.insert(w);
                    }
                }
            }
        }
        values.push(out);
    }
    Subspace::span(f.clone(), a.dim(), values.pop().expect("n ≥ 1").into_iter().collect::<Vec<_>>())
}
