//! Mechanical checks of structure theorems against one algebra.
//!
//! Each [`CheckId`] names a statement with hypotheses and a conclusion. A
//! check first evaluates the hypotheses; if one fails the report is not
//! applicable and nothing else is computed. Hypotheses are atoms
//! ([`Atom`]) that can also be *assumed* through [`Assumptions`], in which
//! case the conclusion is evaluated even though the algebra may not satisfy
//! the hypothesis. That is how corrupted tables that keep stale claims are
//! turned into counterexamples.

mod certificates;
mod checks;
mod oracle;

use std::cell::OnceCell;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

pub use certificates::{Certificates, PhiBounds};
pub use oracle::{bracket_power_oracle, MAX_ORACLE_LENGTH};

use crate::algebra::{Algebra, IdentityFlags, IdentityKind};
use crate::enumerate::{self, EnumerationBudget, Frattini, RadicalKind};
use crate::error::{Error, Result};
use crate::exactfield::Field;
use crate::file::{render_subspace, render_vector, AlgebraFile};
use crate::linalg::{Subspace, Vector};
use crate::series::{self, ChiefSeries, NilpotencyProfile};

macro_rules! check_ids {
    ($($variant:ident => $name:literal, $statement:literal;)*) => {
        /// The catalogue of checkable statements, in catalogue order.
        #[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
        pub enum CheckId {
            $(#[serde(rename = $name)] $variant,)*
        }

        impl CheckId {
            pub const ALL: &'static [CheckId] = &[$(CheckId::$variant,)*];

            pub fn as_str(&self) -> &'static str {
                match self {
                    $(CheckId::$variant => $name,)*
                }
            }

            /// One-line statement of what is checked.
            pub fn statement(&self) -> &'static str {
                match self {
                    $(CheckId::$variant => $statement,)*
                }
            }
        }
    };
}

check_ids! {
    NaturalProductBicommutative => "natural_product_bicommutative",
        "bicommutative: IJ is an ideal for all ideals I, J";
    NaturalProductAssosymmetric => "natural_product_assosymmetric",
        "assosymmetric: IJ is an ideal for all ideals I, J";
    NaturalProductNovikov => "natural_product_novikov",
        "Novikov: IJ, the power series terms and Ann_A(I) are ideals for all ideals I, J";
    NilpotentMaxSubalgIdeal => "nilpotent_max_subalg_ideal",
        "nilpotent: B ⊂ I_A(B) for proper subalgebras B, so maximal subalgebras are ideals";
    PhiEqAsqNilpotent => "phi_eq_Asq_nilpotent",
        "nilpotent: φ(A) = F(A) = A²";
    WeaklyNilpotentImpliesNilpotent => "weakly_nilpotent_implies_nilpotent",
        "natural class, weakly nilpotent: A is nilpotent and its chief factors are 1-dimensional and central";
    ChiefFactorAnnihilated => "chief_factor_annihilated",
        "natural class: BN ⊆ C (NB ⊆ C) for right (left) nilpotent ideals N and chief factors B/C";
    Dt1AsqCommAssoc => "dt1_Asq_comm_assoc",
        "bicommutative: A² is commutative and associative";
    SolvableBicommAsqNilpotent => "solvable_bicomm_Asq_nilpotent",
        "bicommutative, solvable or one-sided nilpotent: A² is nilpotent (and A solvable)";
    ArRaNilpotentBicomm => "AR_RA_nilpotent_bicomm",
        "bicommutative: AR and RA are nilpotent ideals";
    FittingSubalgebra => "fitting_subalgebra",
        "right (left) commutative: E^r_A(a) (E^l_A(a)) is a subalgebra for every a";
    FactorActsNilpotently => "factor_acts_nilpotently",
        "right (left) commutative: if B/C is right (left) nilpotent with C ⊆ φ(A), elements of B act nilpotently";
    PhiRightNil => "phi_right_nil",
        "right (left) commutative: φ(A) is right (left) nil";
    PhiNilpotentBicomm => "phi_nilpotent_bicomm",
        "bicommutative: φ(A) is nilpotent";
    Min1MinimalIdealSides => "min1_minimal_ideal_sides",
        "bicommutative: each minimal ideal B has RB = 0 = BR² or BR = 0 = R²B";
    BimaxRightNilpotent => "bimax_right_nilpotent",
        "bicommutative, right (left) nilpotent: maximal subalgebras are left (right) ideals and A³ ⊆ φ(A) (³A ⊆ φ(A))";
    BiannSubalgebras => "biann_subalgebras",
        "bicommutative: idealisers and annihilators of subalgebras are subalgebras, Ann_A(B) is an ideal for ideals B";
    MinimalIdealZeroOrSimple => "minimal_ideal_zero_or_simple",
        "bicommutative or Novikov: every minimal ideal B has B² = 0 or is simple";
    SsIdealsInAsq => "ss_ideals_in_Asq",
        "semisimple bicommutative: every ideal inside S² is a direct sum of simple minimal ideals";
    BissDecomposition => "biss_decomposition",
        "semisimple bicommutative: S = S² ∔ U, S² = ⊕ S_i simple, U² = 0, S_iU = 0 or US_i = 0";
    KleinfeldSemisimpleAssociative => "kleinfeld_semisimple_associative",
        "assosymmetric, characteristic ≠ 2, 3, semisimple: A is associative";
    AssosymSolvableIsNilpotent => "assosym_solvable_is_nilpotent",
        "assosymmetric, characteristic ≠ 2, 3, solvable: A is nilpotent";
    AssosymQuotientAssociative => "assosym_quotient_associative",
        "assosymmetric, characteristic ≠ 2, 3: A/N(A) is associative";
    AssosymPhiNilpotent => "assosym_phi_nilpotent",
        "assosymmetric, characteristic ≠ 2, 3: φ(A) is nilpotent";
    NovikovEquivalences => "novikov_equivalences",
        "Novikov: right nilpotent ⇔ A² nilpotent ⇔ solvable";
    LeftNilpotentNovikovNilpotent => "left_nilpotent_novikov_nilpotent",
        "Novikov, left nilpotent: A is nilpotent";
    NovikovSolvablePhiNilpotent => "novikov_solvable_phi_nilpotent",
        "Novikov, solvable: φ(A) ⊆ A² is nilpotent";
    NovarArNilpotent => "novar_AR_nilpotent",
        "Novikov: AR is a nilpotent ideal";
    NovikovAnnSubalgebras => "novikov_ann_subalgebras",
        "Novikov: idealisers and annihilators of subalgebras are subalgebras, Ann_A(B) is an ideal for ideals B";
    SplitIffPhiFree => "split_iff_phi_free",
        "φ(A) nilpotent, minimal ideals inside φ(A) zero algebras: A is φ-free iff A splits over Zsoc(A)";
    TSocleEqualities => "t_socle_equalities",
        "natural class, φ-free: Zsoc(A) = N(A) = Ann_A(Soc(A))";
    BiphifreeStructure => "biphifree_structure",
        "bicommutative: φ-free iff A = Zsoc(A) ∔ (D ⊕ E) with the refined structure";
    PhifreeNovikov => "phifree_novikov",
        "Novikov, φ-free: A = Zsoc(A) ∔ C with A(C ∩ R) = 0";
    ArrInclusions => "arr_inclusions",
        "Novikov: (AR)R ⊆ φ(A) ⊆ A²";
    Char0NovikovSplit => "char0_novikov_split",
        "characteristic 0, Novikov, R nilpotent: φ-free iff R² = 0 and A/R is commutative associative semisimple";
    Char0RadZeroAlgebra => "char0_rad_zero_algebra",
        "characteristic 0, Novikov, R nilpotent: φ-free iff R is a zero algebra";
    Char0PhiInRsq => "char0_phi_in_Rsq",
        "characteristic 0, Novikov: φ(A) ⊆ R² and φ(A) is nilpotent";
    Char0PhiEqRsq => "char0_phi_eq_Rsq",
        "characteristic 0, Novikov, R nilpotent: φ(A) = R²";
    A3NovikovIffBicomm => "a3_novikov_iff_bicomm",
        "A²A = 0: A is Novikov iff A is bicommutative";
    NovmaxImplications => "novmax_implications",
        "Novikov: right nilpotent ⇒ A³ ⊆ φ(A) ⇒ maximal subalgebras are left ideals";
    SolvableBicommA3IffLeftIdeals => "solvable_bicomm_A3_iff_left_ideals",
        "solvable bicommutative: A³ ⊆ φ(A) iff all maximal subalgebras are left ideals";
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CheckId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CheckId::ALL
            .iter()
            .copied()
            .find(|c| c.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::usage(format!("unknown check `{s}`")))
    }
}

/// A hypothesis that can be computed or assumed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum Atom {
    RightCommutative,
    LeftCommutative,
    Bicommutative,
    Assosymmetric,
    NovikovLeft,
    NovikovRight,
    /// bicommutative, assosymmetric or Novikov
    NaturalClass,
    Solvable,
    Nilpotent,
    RightNilpotent,
    LeftNilpotent,
    WeaklyNilpotent,
    Semisimple,
    PhiFree,
    PhiNilpotent,
    RadicalNilpotent,
    /// every minimal ideal inside φ(A) has zero square
    PhiMinimalIdealsZero,
    /// `A²A = 0`
    RightCubeZero,
    /// the certificates attached to an algebra over `Q` are valid
    Certified,
}

impl Atom {
    pub const ALL: [Atom; 19] = [
        Atom::RightCommutative,
        Atom::LeftCommutative,
        Atom::Bicommutative,
        Atom::Assosymmetric,
        Atom::NovikovLeft,
        Atom::NovikovRight,
        Atom::NaturalClass,
        Atom::Solvable,
        Atom::Nilpotent,
        Atom::RightNilpotent,
        Atom::LeftNilpotent,
        Atom::WeaklyNilpotent,
        Atom::Semisimple,
        Atom::PhiFree,
        Atom::PhiNilpotent,
        Atom::RadicalNilpotent,
        Atom::PhiMinimalIdealsZero,
        Atom::RightCubeZero,
        Atom::Certified,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            Atom::RightCommutative => "rightCommutative",
            Atom::LeftCommutative => "leftCommutative",
            Atom::Bicommutative => "bicommutative",
            Atom::Assosymmetric => "assosymmetric",
            Atom::NovikovLeft => "novikovLeft",
            Atom::NovikovRight => "novikovRight",
            Atom::NaturalClass => "naturalClass",
            Atom::Solvable => "solvable",
            Atom::Nilpotent => "nilpotent",
            Atom::RightNilpotent => "rightNilpotent",
            Atom::LeftNilpotent => "leftNilpotent",
            Atom::WeaklyNilpotent => "weaklyNilpotent",
            Atom::Semisimple => "semisimple",
            Atom::PhiFree => "phiFree",
            Atom::PhiNilpotent => "phiNilpotent",
            Atom::RadicalNilpotent => "radicalNilpotent",
            Atom::PhiMinimalIdealsZero => "phiMinimalIdealsZero",
            Atom::RightCubeZero => "rightCubeZero",
            Atom::Certified => "certified",
        }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Atom {
    type Err = Error;

    /// Accepts camelCase and kebab-case.
    fn from_str(s: &str) -> Result<Self> {
        let key: String = s.chars().filter(|c| *c != '-' && *c != '_').collect::<String>().to_lowercase();
        Atom::ALL
            .into_iter()
            .find(|a| a.as_str().to_lowercase() == key)
            .ok_or_else(|| Error::usage(format!("unknown hypothesis `{s}`")))
    }
}

/// Hypotheses to take as given instead of checking them.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Assumptions(BTreeSet<Atom>);

impl Assumptions {
    pub fn none() -> Self {
        Assumptions::default()
    }

    pub fn all() -> Self {
        Assumptions(Atom::ALL.into_iter().collect())
    }

    pub fn with(mut self, atom: Atom) -> Self {
        self.0.insert(atom);
        self
    }

    pub fn contains(&self, atom: Atom) -> bool {
        self.0.contains(&atom)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl FromIterator<Atom> for Assumptions {
    fn from_iter<I: IntoIterator<Item = Atom>>(iter: I) -> Self {
        Assumptions(iter.into_iter().collect())
    }
}

/// Outcome of one check. `holds` is only meaningful when `applicable`;
/// an inapplicable report always has `holds = false`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub check: CheckId,
    pub applicable: bool,
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    /// Hypotheses taken from [`Assumptions`] rather than checked.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub assumed: Vec<Atom>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    pub witness: Value,
    /// The violating data together with the algebra, when `holds` is false.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Value>,
}

impl VerificationReport {
    /// Applicable and violated.
    pub fn failed(&self) -> bool {
        self.applicable && !self.holds
    }
}

/// Runs [`CheckId`]s against one algebra, caching the expensive
/// enumerations between checks.
pub struct Verifier<'a, K: Field> {
    a: &'a Algebra<K>,
    certs: Certificates<K>,
    budget: EnumerationBudget,
    assumptions: Assumptions,
    flags: IdentityFlags,
    profile: OnceCell<NilpotencyProfile>,
    certified: OnceCell<std::result::Result<(), String>>,
    radical: OnceCell<Result<Subspace<K>>>,
    nilradical: OnceCell<Result<Subspace<K>>>,
    subalgebras: OnceCell<Result<Vec<Subspace<K>>>>,
    ideals: OnceCell<Result<Vec<Subspace<K>>>>,
    minimal_ideals: OnceCell<Result<Vec<Subspace<K>>>>,
    maximal: OnceCell<Result<Vec<Subspace<K>>>>,
    frattini: OnceCell<Result<Frattini<K>>>,
    zsoc: OnceCell<Result<Subspace<K>>>,
    chief: OnceCell<Result<ChiefSeries<K>>>,
}

/// Why a check stopped early.
#[derive(Clone, Debug)]
pub(crate) enum Stop {
    Inapplicable(String),
    /// A guaranteed object was not found.
    Violation(String),
}

impl From<Error> for Stop {
    fn from(e: Error) -> Self {
        match e {
            Error::TheoremViolation(m) => Stop::Violation(m),
            Error::Unsupported(m) => Stop::Inapplicable(m),
            other => Stop::Inapplicable(other.to_string()),
        }
    }
}

pub(crate) type Step<T> = std::result::Result<T, Stop>;

/// Report under construction.
#[derive(Default)]
pub(crate) struct Out {
    failed: bool,
    witness: Map<String, Value>,
    counterexample: Map<String, Value>,
    notes: Vec<String>,
    assumed: Vec<Atom>,
}

impl Out {
    pub(crate) fn put(&mut self, key: &str, value: impl Into<Value>) {
        self.witness.insert(key.to_string(), value.into());
    }

    pub(crate) fn fail(&mut self, key: &str, value: impl Into<Value>) {
        self.failed = true;
        self.counterexample.insert(key.to_string(), value.into());
    }

    pub(crate) fn note(&mut self, note: impl Into<String>) {
        let note = note.into();
        if !self.notes.contains(&note) {
            self.notes.push(note);
        }
    }

    pub(crate) fn has_failed(&self) -> bool {
        self.failed
    }
}

fn cached<T>(cell: &OnceCell<Result<T>>, init: impl FnOnce() -> Result<T>) -> Step<&T> {
    cell.get_or_init(init).as_ref().map_err(|e| Stop::from(e.clone()))
}

pub(crate) const PHI_UNDETERMINED: &str = "φ(A) is not pinned down by the certificates";

impl<'a, K: Field> Verifier<'a, K> {
    pub fn new(a: &'a Algebra<K>) -> Self {
        Verifier {
            a,
            certs: Certificates::default(),
            budget: EnumerationBudget::default(),
            assumptions: Assumptions::none(),
            flags: a.identities(),
            profile: OnceCell::new(),
            certified: OnceCell::new(),
            radical: OnceCell::new(),
            nilradical: OnceCell::new(),
            subalgebras: OnceCell::new(),
            ideals: OnceCell::new(),
            minimal_ideals: OnceCell::new(),
            maximal: OnceCell::new(),
            frattini: OnceCell::new(),
            zsoc: OnceCell::new(),
            chief: OnceCell::new(),
        }
    }

    pub fn with_certificates(mut self, certs: Certificates<K>) -> Self {
        self.certs = certs;
        self
    }

    pub fn with_budget(mut self, budget: EnumerationBudget) -> Self {
        self.budget = budget;
        self
    }

    pub fn with_assumptions(mut self, assumptions: Assumptions) -> Self {
        self.assumptions = assumptions;
        self
    }

    pub fn algebra(&self) -> &Algebra<K> {
        self.a
    }

    pub fn run(&self, check: CheckId) -> VerificationReport {
        let mut out = Out::default();
        let result = self.dispatch(check, &mut out);
        let mut report = VerificationReport {
            check,
            applicable: true,
            holds: true,
            reason: None,
            assumed: Vec::new(),
            notes: Vec::new(),
            witness: Value::Null,
            counterexample: None,
        };
        match result {
            Ok(()) => report.holds = !out.failed,
            Err(Stop::Inapplicable(reason)) => {
                report.applicable = false;
                report.holds = false;
                report.reason = Some(reason);
            }
            Err(Stop::Violation(message)) => {
                out.fail("violation", message);
                report.holds = false;
            }
        }
        out.assumed.sort();
        out.assumed.dedup();
        report.assumed = out.assumed;
        report.notes = out.notes;
        report.witness = Value::Object(out.witness);
        if report.failed() {
            let mut cx = out.counterexample;
            cx.insert("algebra".into(), serde_json::to_value(AlgebraFile::from_algebra(self.a)).expect("serialisable"));
            report.counterexample = Some(Value::Object(cx));
        }
        report
    }

    /// Every check in catalogue order.
    pub fn run_all(&self) -> Vec<VerificationReport> {
        CheckId::ALL.iter().map(|&c| self.run(c)).collect()
    }

    // ---- hypotheses

    fn is_finite(&self) -> bool {
        self.a.field().is_finite()
    }

    pub(crate) fn profile(&self) -> &NilpotencyProfile {
        self.profile.get_or_init(|| series::nilpotency_profile(self.a))
    }

    fn certified(&self) -> std::result::Result<(), String> {
        self.certified
            .get_or_init(|| {
                if self.certs.is_empty() {
                    return Err("no certificates supplied".into());
                }
                self.certs.validate(self.a).map_err(|e| e.to_string())
            })
            .clone()
    }

    /// The truth value of an atom, computed.
    pub(crate) fn atom(&self, out: &mut Out, atom: Atom) -> Step<bool> {
        use IdentityKind as I;
        let f = &self.flags;
        Ok(match atom {
            Atom::RightCommutative => f.holds(I::RightCommutative),
            Atom::LeftCommutative => f.holds(I::LeftCommutative),
            Atom::Bicommutative => f.holds(I::Bicommutative),
            Atom::Assosymmetric => f.holds(I::Assosymmetric),
            Atom::NovikovLeft => f.holds(I::NovikovLeft),
            Atom::NovikovRight => f.holds(I::NovikovRight),
            Atom::NaturalClass => f.natural_class(),
            Atom::Solvable => self.profile().solvable,
            Atom::Nilpotent => self.profile().nilpotent,
            Atom::RightNilpotent => self.profile().right_nilpotent,
            Atom::LeftNilpotent => self.profile().left_nilpotent,
            Atom::WeaklyNilpotent => self.profile().weakly_nilpotent,
            Atom::Semisimple => self.radical(out)?.is_zero(),
            Atom::PhiFree => self.phi_is_zero(out)?,
            Atom::PhiNilpotent => self.phi_nilpotent(out)?,
            Atom::RadicalNilpotent => {
                let r = self.radical(out)?;
                series::is_nilpotent(self.a, &r)
            }
            Atom::PhiMinimalIdealsZero => {
                let phi = self.phi(out)?;
                self.minimal_ideals()?.iter().all(|m| !phi.contains(m) || self.a.square(m).is_zero())
            }
            Atom::RightCubeZero => series::compute_series(self.a, series::SeriesKind::RightPower).term(3).is_zero(),
            Atom::Certified => self.certified().is_ok(),
        })
    }

    /// Fails the check as inapplicable unless `atom` holds or is assumed.
    pub(crate) fn require(&self, out: &mut Out, atom: Atom) -> Step<()> {
        if self.holds_or_assumed(out, atom)? {
            Ok(())
        } else {
            Err(Stop::Inapplicable(format!("hypothesis `{atom}` does not hold")))
        }
    }

    /// The first of `atoms` that holds or is assumed.
    pub(crate) fn require_any(&self, out: &mut Out, atoms: &[Atom]) -> Step<Atom> {
        for &atom in atoms {
            if self.holds_or_assumed(out, atom)? {
                return Ok(atom);
            }
        }
        let names: Vec<&str> = atoms.iter().map(|a| a.as_str()).collect();
        Err(Stop::Inapplicable(format!("none of the hypotheses {} holds", names.join(", "))))
    }

    pub(crate) fn holds_or_assumed(&self, out: &mut Out, atom: Atom) -> Step<bool> {
        if self.assumptions.contains(atom) {
            out.assumed.push(atom);
            return Ok(true);
        }
        self.atom(out, atom)
    }

    pub(crate) fn require_characteristic_not_2_or_3(&self) -> Step<()> {
        let p = self.a.field().characteristic();
        if p == 2 || p == 3 {
            Err(Stop::Inapplicable(format!("stated for characteristic ≠ 2, 3; the field has characteristic {p}")))
        } else {
            Ok(())
        }
    }

    pub(crate) fn require_characteristic_zero(&self) -> Step<()> {
        let p = self.a.field().characteristic();
        if p != 0 {
            Err(Stop::Inapplicable(format!(
                "characteristic-0 statement; not applicable over a field of characteristic {p}"
            )))
        } else {
            Ok(())
        }
    }

    pub(crate) fn require_finite(&self) -> Step<()> {
        if self.is_finite() {
            Ok(())
        } else {
            Err(Stop::Inapplicable(Error::finite_field_required().to_string()))
        }
    }

    // ---- cached structure

    /// `R(A)`: enumerated over finite fields, certified over `Q`.
    pub(crate) fn radical(&self, out: &mut Out) -> Step<Subspace<K>> {
        if self.is_finite() {
            return cached(&self.radical, || enumerate::radical(self.a, RadicalKind::Solvable, &self.budget)).cloned();
        }
        self.require_certified(out)?;
        match &self.certs.solvable_radical {
            Some(r) => Ok(r.clone()),
            None => Err(Stop::Inapplicable("requires finite field or a certified solvable radical".into())),
        }
    }

    fn require_certified(&self, out: &mut Out) -> Step<()> {
        if self.assumptions.contains(Atom::Certified) {
            out.assumed.push(Atom::Certified);
            return Ok(());
        }
        self.certified().map_err(|e| Stop::Inapplicable(format!("certificates not usable: {e}")))
    }

    /// `N(A)`, by the same enumeration as the radical, with no class gate.
    pub(crate) fn nilradical(&self) -> Step<&Subspace<K>> {
        cached(&self.nilradical, || enumerate::radical_unchecked(self.a, RadicalKind::Nilpotent, &self.budget))
    }

    pub(crate) fn subalgebras(&self) -> Step<&Vec<Subspace<K>>> {
        cached(&self.subalgebras, || enumerate::all_subalgebras(self.a, &self.budget))
    }

    pub(crate) fn ideals(&self) -> Step<&Vec<Subspace<K>>> {
        cached(&self.ideals, || enumerate::all_ideals(self.a, &self.budget))
    }

    pub(crate) fn minimal_ideals(&self) -> Step<&Vec<Subspace<K>>> {
        cached(&self.minimal_ideals, || enumerate::minimal_ideals(self.a, &self.budget))
    }

    pub(crate) fn maximal(&self) -> Step<&Vec<Subspace<K>>> {
        cached(&self.maximal, || {
            let subs = self.subalgebras.get_or_init(|| enumerate::all_subalgebras(self.a, &self.budget)).clone()?;
            Ok(maximal_among(subs))
        })
    }

    pub(crate) fn frattini(&self) -> Step<&Frattini<K>> {
        cached(&self.frattini, || {
            let maximal = match self.maximal() {
                Ok(m) => m.clone(),
                Err(_) => enumerate::maximal_subalgebras(self.a, &self.budget)?,
            };
            Ok(enumerate::frattini_from_maximal(self.a, &maximal))
        })
    }

    pub(crate) fn zsoc(&self) -> Step<&Subspace<K>> {
        cached(&self.zsoc, || {
            let mins = enumerate::minimal_ideals(self.a, &self.budget)?;
            Ok(enumerate::sum_all(self.a, mins.iter().filter(|m| self.a.square(m).is_zero())))
        })
    }

    pub(crate) fn socle(&self) -> Step<Subspace<K>> {
        Ok(enumerate::sum_all(self.a, self.minimal_ideals()?.iter()))
    }

    pub(crate) fn chief(&self) -> Step<&ChiefSeries<K>> {
        cached(&self.chief, || series::chief_series(self.a, &self.a.zero_subspace(), &self.a.full(), &self.budget))
    }

    /// `lower ⊆ φ(A) ⊆ upper`; equal over finite fields.
    pub(crate) fn phi_bounds(&self, out: &mut Out) -> Step<(Subspace<K>, Subspace<K>)> {
        if self.is_finite() {
            let phi = self.frattini()?.ideal.clone();
            return Ok((phi.clone(), phi));
        }
        self.require_certified(out)?;
        let r = self.certs.solvable_radical.as_ref();
        let b = PhiBounds::from_certificates(self.a, &self.certs, r);
        out.note("over Q, φ(A) is bounded by the certified maximal subalgebras and nilpotent squares");
        Ok((b.lower, b.upper))
    }

    pub(crate) fn phi(&self, out: &mut Out) -> Step<Subspace<K>> {
        let (lower, upper) = self.phi_bounds(out)?;
        if lower == upper {
            Ok(lower)
        } else {
            Err(Stop::Inapplicable(PHI_UNDETERMINED.into()))
        }
    }

    pub(crate) fn phi_is_zero(&self, out: &mut Out) -> Step<bool> {
        let (lower, upper) = self.phi_bounds(out)?;
        if upper.is_zero() {
            Ok(true)
        } else if !lower.is_zero() {
            Ok(false)
        } else {
            Err(Stop::Inapplicable(PHI_UNDETERMINED.into()))
        }
    }

    pub(crate) fn phi_nilpotent(&self, out: &mut Out) -> Step<bool> {
        let (lower, upper) = self.phi_bounds(out)?;
        if series::is_nilpotent(self.a, &upper) {
            Ok(true)
        } else if lower == upper {
            Ok(false)
        } else {
            Err(Stop::Inapplicable(PHI_UNDETERMINED.into()))
        }
    }

    /// Whether `x ⊆ φ(A)`, when the bounds decide it. Bounds that contradict
    /// each other (stale certificates) answer no.
    pub(crate) fn within_phi(&self, out: &mut Out, x: &Subspace<K>) -> Step<bool> {
        let (lower, upper) = self.phi_bounds(out)?;
        if !upper.contains(x) {
            Ok(false)
        } else if lower.contains(x) {
            Ok(true)
        } else {
            Err(Stop::Inapplicable(PHI_UNDETERMINED.into()))
        }
    }

    /// Whether `φ(A) ⊆ y`, when the bounds decide it; as above, a
    /// contradiction answers no.
    pub(crate) fn phi_within(&self, out: &mut Out, y: &Subspace<K>) -> Step<bool> {
        let (lower, upper) = self.phi_bounds(out)?;
        if !y.contains(&lower) {
            Ok(false)
        } else if y.contains(&upper) {
            Ok(true)
        } else {
            Err(Stop::Inapplicable(PHI_UNDETERMINED.into()))
        }
    }

    /// All elements of `u` over a finite field; over `Q` the basis, pairwise
    /// sums and differences, and a few seeded small combinations.
    pub(crate) fn elements(&self, out: &mut Out, u: &Subspace<K>) -> Step<Vec<Vector<K>>> {
        if self.is_finite() {
            return Ok(enumerate::subspace_elements(u, &self.budget)?);
        }
        use rand::{Rng, SeedableRng};
        out.note("sampled: over Q only finitely many elements are tested");
        let f = self.a.field();
        let d = u.dim();
        let mut coeffs: Vec<Vec<i64>> = Vec::new();
        for i in 0..d {
            let mut c = vec![0; d];
            c[i] = 1;
            coeffs.push(c);
            for j in i + 1..d {
                for s in [1, -1] {
                    let mut c = vec![0; d];
                    c[i] = 1;
                    c[j] = s;
                    coeffs.push(c);
                }
            }
        }
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0);
        for _ in 0..16 {
            coeffs.push((0..d).map(|_| rng.gen_range(-3..=3)).collect());
        }
        let mut out_vecs = vec![self.a.zero_vector()];
        for c in coeffs {
            let c: Vec<K::Elem> = c.iter().map(|&x| f.from_i64(x)).collect();
            out_vecs.push(u.combine(&c));
        }
        Ok(out_vecs)
    }

    // ---- rendering

    pub(crate) fn sub(&self, s: &Subspace<K>) -> Value {
        json!(render_subspace(s))
    }

    pub(crate) fn vec(&self, v: &[K::Elem]) -> Value {
        json!(render_vector(self.a.field(), v))
    }
}

/// Members of `subs` (all subalgebras, any order) that are proper and maximal.
fn maximal_among<K: Field>(mut subs: Vec<Subspace<K>>) -> Vec<Subspace<K>> {
    subs.retain(|s| !s.is_full());
    subs.sort_by(|x, y| y.dim().cmp(&x.dim()).then_with(|| x.cmp(y)));
    let mut maximal: Vec<Subspace<K>> = Vec::new();
    for s in subs {
        if !maximal.iter().any(|m| m.dim() > s.dim() && m.contains(&s)) {
            maximal.push(s);
        }
    }
    maximal.sort();
    maximal
}

/// One check with default settings.
pub fn verify<K: Field>(a: &Algebra<K>, check: CheckId) -> VerificationReport {
    Verifier::new(a).run(check)
}

/// Every check in catalogue order, with default settings.
pub fn verify_all<K: Field>(a: &Algebra<K>) -> Vec<VerificationReport> {
    Verifier::new(a).run_all()
}

#[cfg(test)]
mod tests;
