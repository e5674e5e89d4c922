#![allow(dead_code)]

use nonassoc::corpus::fixture;
use nonassoc::file::LoadedAlgebra;
use nonassoc::verify::{Assumptions, CheckId, Certificates, VerificationReport, Verifier};
use nonassoc::{Algebra, Field};

/// One structure constant: `e_i e_j` gets coefficient `c` on `e_k`.
pub type Edit = (usize, usize, usize, i64);

fn edit_table<K: Field>(a: &Algebra<K>, edits: &[Edit]) -> Algebra<K> {
    let n = a.dim();
    let f = a.field();
    let mut t = a.table().to_vec();
    for &(i, j, k, c) in edits {
        t[(i * n + j) * n + k] = f.from_i64(c);
    }
    Algebra::new(f.clone(), n, t).expect("same size")
}

/// A built-in fixture with some structure constants overwritten; the
/// fixture's certificates are kept as they were, stale or not.
pub fn mutant(name: &str, edits: &[Edit]) -> LoadedAlgebra {
    let f = fixture(name).unwrap_or_else(|| panic!("no fixture {name}"));
    match f.algebra {
        LoadedAlgebra::Rational(a, c) => LoadedAlgebra::Rational(edit_table(&a, edits), c),
        LoadedAlgebra::Prime(a, c) => LoadedAlgebra::Prime(edit_table(&a, edits), c),
    }
}

fn run_typed<K: Field>(a: &Algebra<K>, c: &Certificates<K>, check: CheckId, assume: &Assumptions) -> VerificationReport {
    Verifier::new(a).with_certificates(c.clone()).with_assumptions(assume.clone()).run(check)
}

pub fn run(loaded: &LoadedAlgebra, check: CheckId, assume: &Assumptions) -> VerificationReport {
    match loaded {
        LoadedAlgebra::Rational(a, c) => run_typed(a, c, check, assume),
        LoadedAlgebra::Prime(a, c) => run_typed(a, c, check, assume),
    }
}

pub fn run_all(loaded: &LoadedAlgebra, assume: &Assumptions) -> Vec<VerificationReport> {
    CheckId::ALL.iter().map(|&c| run(loaded, c, assume)).collect()
}

/// Corruptions of built-in fixtures, each caught by the named check when
/// its hypotheses are assumed. Found by `mutation_search.rs`.
pub const MUTANTS: &[(CheckId, &str, &[Edit])] = &[
    (CheckId::NilpotentMaxSubalgIdeal, "A_ex_F2", &[(0, 0, 0, 0)]),
    (CheckId::PhiEqAsqNilpotent, "A_ex_F2", &[(0, 0, 0, 0)]),
    (CheckId::WeaklyNilpotentImpliesNilpotent, "A_ex_F2", &[(0, 0, 0, 0)]),
    (CheckId::BimaxRightNilpotent, "A_ex_F2", &[(0, 0, 0, 0)]),
    (CheckId::SsIdealsInAsq, "A_ex_F2", &[(0, 0, 0, 0)]),
    (CheckId::BissDecomposition, "A_ex_F2", &[(0, 0, 0, 0)]),
    (CheckId::NovikovEquivalences, "A_ex_F2", &[(0, 0, 0, 0)]),
    (CheckId::LeftNilpotentNovikovNilpotent, "A_ex_F2", &[(0, 0, 0, 0)]),
    (CheckId::PhifreeNovikov, "A_ex_F2", &[(0, 0, 0, 0)]),
    (CheckId::ArrInclusions, "A_ex_F2", &[(0, 0, 0, 0)]),
    (CheckId::A3NovikovIffBicomm, "A_ex_F2", &[(0, 0, 0, 0)]),
    (CheckId::SolvableBicommAsqNilpotent, "A_ex_F2", &[(0, 0, 0, 1)]),
    (CheckId::Dt1AsqCommAssoc, "A_ex_F2", &[(0, 0, 1, 1)]),
    (CheckId::SolvableBicommA3IffLeftIdeals, "A_ex_F2", &[(0, 1, 0, 0)]),
    (CheckId::NaturalProductNovikov, "A_ex_F2", &[(1, 0, 0, 1)]),
    (CheckId::FittingSubalgebra, "A_ex_F2", &[(1, 0, 0, 1)]),
    (CheckId::BiannSubalgebras, "A_ex_F2", &[(1, 0, 0, 1)]),
    (CheckId::NovikovAnnSubalgebras, "A_ex_F2", &[(1, 0, 0, 1)]),
    (CheckId::TSocleEqualities, "A_ex_F2", &[(1, 0, 0, 1)]),
    (CheckId::BiphifreeStructure, "A_ex_F2", &[(1, 0, 0, 1)]),
    (CheckId::FactorActsNilpotently, "A_ex_F2", &[(1, 1, 0, 1)]),
    (CheckId::PhiRightNil, "A_ex_F2", &[(1, 1, 0, 1)]),
    (CheckId::PhiNilpotentBicomm, "A_ex_F2", &[(1, 1, 0, 1)]),
    (CheckId::NovikovSolvablePhiNilpotent, "A_ex_F2", &[(1, 1, 0, 1)]),
    (CheckId::SplitIffPhiFree, "A_ex_F2", &[(1, 1, 0, 1)]),
    (CheckId::KleinfeldSemisimpleAssociative, "A_ex_F5", &[(0, 0, 0, 0)]),
    (CheckId::AssosymSolvableIsNilpotent, "A_ex_F5", &[(0, 0, 0, 0)]),
    (CheckId::AssosymQuotientAssociative, "A_ex_F5", &[(0, 0, 0, 1)]),
    (CheckId::AssosymPhiNilpotent, "A_ex_F5", &[(1, 1, 0, 1)]),
    (CheckId::ArRaNilpotentBicomm, "Z2_Q", &[(0, 0, 0, -1)]),
    (CheckId::NovarArNilpotent, "Z2_Q", &[(0, 0, 0, -1)]),
    (CheckId::Char0NovikovSplit, "Z2_Q", &[(0, 0, 0, -1)]),
    (CheckId::Char0RadZeroAlgebra, "Z2_Q", &[(0, 0, 0, -1)]),
    (CheckId::Char0PhiEqRsq, "Z2_Q", &[(0, 0, 0, -1)]),
    (CheckId::NaturalProductBicommutative, "T3_F2", &[(0, 0, 0, 1)]),
    (CheckId::NaturalProductAssosymmetric, "T3_F2", &[(0, 0, 0, 1)]),
    (CheckId::ChiefFactorAnnihilated, "T3_F2", &[(0, 2, 1, 1)]),
    (CheckId::Min1MinimalIdealSides, "T3_F2", &[(0, 2, 1, 1)]),
    (CheckId::NovmaxImplications, "T3_F2", &[(0, 2, 1, 1)]),
    (CheckId::MinimalIdealZeroOrSimple, "T3_F2", &[(1, 2, 1, 1)]),
    // Three edits: FxF over Q becomes e1e1 = e2 while its certificates still say R = 0.
    (CheckId::Char0PhiInRsq, "FxF_Q", &[(0, 0, 0, 0), (1, 1, 1, 0), (0, 0, 1, 1)]),
];
