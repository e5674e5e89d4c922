use serde_json::json;

use super::{Atom, CheckId, Out, Step, Stop, Verifier};
use crate::algebra::{Algebra, IdentityKind, Side};
use crate::exactfield::Field;
use crate::linalg::Subspace;
use crate::series::{self, SeriesKind};
use crate::structure;

const FACTOR_RESTRICTION: &str =
    "B ranges over the terms of one chief series and C = φ(A) ∩ B; other subideals are not enumerated";

impl<K: Field> Verifier<'_, K> {
    pub(crate) fn dispatch(&self, check: CheckId, out: &mut Out) -> Step<()> {
        use CheckId::*;
        match check {
            NaturalProductBicommutative => self.natural_product(out, &[Atom::Bicommutative], false),
            NaturalProductAssosymmetric => self.natural_product(out, &[Atom::Assosymmetric], false),
            NaturalProductNovikov => self.natural_product(out, &[Atom::NovikovLeft, Atom::NovikovRight], true),
            NilpotentMaxSubalgIdeal => self.nilpotent_max_subalg_ideal(out),
            PhiEqAsqNilpotent => self.phi_eq_asq_nilpotent(out),
            WeaklyNilpotentImpliesNilpotent => self.weakly_nilpotent_implies_nilpotent(out),
            ChiefFactorAnnihilated => self.chief_factor_annihilated(out),
            Dt1AsqCommAssoc => self.dt1(out),
            SolvableBicommAsqNilpotent => self.solvable_bicomm_asq_nilpotent(out),
            ArRaNilpotentBicomm => self.ar_ra_nilpotent(out),
            FittingSubalgebra => self.fitting_subalgebra(out),
            FactorActsNilpotently => self.factor_acts_nilpotently(out),
            PhiRightNil => self.phi_right_nil(out),
            PhiNilpotentBicomm => {
                self.require(out, Atom::Bicommutative)?;
                self.conclude_phi_nilpotent(out)
            }
            Min1MinimalIdealSides => self.min1(out),
            BimaxRightNilpotent => self.bimax(out),
            BiannSubalgebras => self.annihilator_subalgebras(out, &[Atom::Bicommutative]),
            MinimalIdealZeroOrSimple => self.minimal_ideal_zero_or_simple(out),
            SsIdealsInAsq => self.ss_ideals_in_asq(out),
            BissDecomposition => self.biss(out),
            KleinfeldSemisimpleAssociative => self.kleinfeld(out),
            AssosymSolvableIsNilpotent => {
                self.require(out, Atom::Assosymmetric)?;
                self.require_characteristic_not_2_or_3()?;
                self.require(out, Atom::Solvable)?;
                self.conclude_nilpotent(out)
            }
            AssosymQuotientAssociative => self.assosym_quotient(out),
            AssosymPhiNilpotent => {
                self.require(out, Atom::Assosymmetric)?;
                self.require_characteristic_not_2_or_3()?;
                self.conclude_phi_nilpotent(out)
            }
            NovikovEquivalences => self.novikov_equivalences(out),
            LeftNilpotentNovikovNilpotent => {
                self.require(out, Atom::NovikovLeft)?;
                self.require(out, Atom::LeftNilpotent)?;
                self.conclude_nilpotent(out)
            }
            NovikovSolvablePhiNilpotent => self.novikov_solvable_phi(out),
            NovarArNilpotent => self.novar(out),
            NovikovAnnSubalgebras => self.annihilator_subalgebras(out, &[Atom::NovikovLeft, Atom::NovikovRight]),
            SplitIffPhiFree => self.split_iff_phi_free(out),
            TSocleEqualities => self.t_socle(out),
            BiphifreeStructure => self.biphifree(out),
            PhifreeNovikov => self.phifree_novikov(out),
            ArrInclusions => self.arr(out),
            Char0NovikovSplit => self.char0_split(out, true),
            Char0RadZeroAlgebra => self.char0_split(out, false),
            Char0PhiInRsq => self.char0_phi_in_rsq(out),
            Char0PhiEqRsq => self.char0_phi_eq_rsq(out),
            A3NovikovIffBicomm => self.a3(out),
            NovmaxImplications => self.novmax(out),
            SolvableBicommA3IffLeftIdeals => self.solvable_bicomm_a3(out),
        }
    }

    fn full(&self) -> Subspace<K> {
        self.algebra().full()
    }

    fn asq(&self) -> Subspace<K> {
        let a = self.algebra();
        a.square(&a.full())
    }

    fn conclude_nilpotent(&self, out: &mut Out) -> Step<()> {
        let p = *self.profile();
        out.put("nilpotent", p.nilpotent);
        out.put("nilpotentIndex", json!(p.nilpotent_index));
        if !p.nilpotent {
            out.fail("bracketPowerLimit", self.sub(series::compute_series(self.algebra(), SeriesKind::BracketPower).limit()));
        }
        Ok(())
    }

    fn conclude_phi_nilpotent(&self, out: &mut Out) -> Step<()> {
        let nil = self.phi_nilpotent(out)?;
        out.put("phiNilpotent", nil);
        if !nil {
            let phi = self.phi(out)?;
            out.fail("phi", self.sub(&phi));
        }
        Ok(())
    }

    fn natural_product(&self, out: &mut Out, class: &[Atom], novikov: bool) -> Step<()> {
        let a = self.algebra();
        self.require_any(out, class)?;
        let ideals = self.ideals()?;
        out.put("ideals", ideals.len());
        for i in ideals {
            for j in ideals {
                let p = a.product(i, j);
                if !a.is_ideal(&p) {
                    out.fail("I", self.sub(i));
                    out.fail("J", self.sub(j));
                    out.fail("IJ", self.sub(&p));
                    return Ok(());
                }
            }
        }
        if novikov {
            for kind in SeriesKind::ALL {
                let s = series::compute_series(a, kind);
                if let Some(t) = s.terms.iter().find(|t| !a.is_ideal(t)) {
                    out.fail("series", kind.as_str());
                    out.fail("term", self.sub(t));
                    return Ok(());
                }
            }
            for i in ideals {
                let ann = a.annihilator(i)?;
                if !a.is_ideal(&ann) {
                    out.fail("I", self.sub(i));
                    out.fail("annihilator", self.sub(&ann));
                    return Ok(());
                }
            }
        }
        Ok(())
    }

    fn nilpotent_max_subalg_ideal(&self, out: &mut Out) -> Step<()> {
        let a = self.algebra();
        self.require(out, Atom::Nilpotent)?;
        let subs = self.subalgebras()?;
        for b in subs.iter().filter(|b| !b.is_full()) {
            let i = a.idealizer(b)?;
            if i == *b {
                out.fail("subalgebra", self.sub(b));
                out.fail("idealiser", self.sub(&i));
                return Ok(());
            }
        }
        let maximal = self.maximal()?;
        out.put("maximalSubalgebras", maximal.len());
        if let Some(m) = maximal.iter().find(|m| !a.is_ideal(m)) {
            out.fail("maximalNotIdeal", self.sub(m));
        }
        Ok(())
    }

    fn phi_eq_asq_nilpotent(&self, out: &mut Out) -> Step<()> {
        self.require(out, Atom::Nilpotent)?;
        self.require_finite()?;
        let fr = self.frattini()?;
        let asq = self.asq();
        out.put("frattiniSubalgebra", self.sub(&fr.subalgebra));
        out.put("phi", self.sub(&fr.ideal));
        out.put("Asq", self.sub(&asq));
        if fr.subalgebra != asq || fr.ideal != asq {
            out.fail("frattiniSubalgebra", self.sub(&fr.subalgebra));
            out.fail("phi", self.sub(&fr.ideal));
            out.fail("Asq", self.sub(&asq));
        }
        Ok(())
    }

    fn weakly_nilpotent_implies_nilpotent(&self, out: &mut Out) -> Step<()> {
        let a = self.algebra();
        self.require(out, Atom::NaturalClass)?;
        self.require(out, Atom::WeaklyNilpotent)?;
        self.conclude_nilpotent(out)?;
        if !self.algebra().field().is_finite() {
            out.note("chief factors are not enumerated over Q");
            return Ok(());
        }
        let chief = self.chief()?;
        out.put("chiefFactorDims", json!(chief.factor_dims()));
        for (c, b) in chief.factors() {
            let full = a.full();
            let central = c.contains(&a.product(&b.clone(), &full)) && c.contains(&a.product(&full, b));
            if b.dim() != c.dim() + 1 || !central {
                out.fail("chiefFactorTop", self.sub(b));
                out.fail("chiefFactorBottom", self.sub(c));
                break;
            }
        }
        Ok(())
    }

    fn chief_factor_annihilated(&self, out: &mut Out) -> Step<()> {
        let a = self.algebra();
        self.require(out, Atom::NaturalClass)?;
        let ideals = self.ideals()?;
        let right: Vec<&Subspace<K>> = ideals.iter().filter(|n| series::is_right_nilpotent(a, n)).collect();
        let left: Vec<&Subspace<K>> = ideals.iter().filter(|n| series::is_left_nilpotent(a, n)).collect();
        let mut factors = 0usize;
        for c in ideals {
            for b in ideals {
                if b.dim() <= c.dim() || !b.contains(c) {
                    continue;
                }
                let covered = ideals
                    .iter()
                    .any(|d| d.dim() > c.dim() && d.dim() < b.dim() && d.contains(c) && b.contains(d));
                if covered {
                    continue;
                }
                factors += 1;
                for (ns, right_side) in [(&right, true), (&left, false)] {
                    for n in ns.iter() {
                        let p = if right_side { a.product(b, n) } else { a.product(n, b) };
                        if !c.contains(&p) {
                            out.fail("B", self.sub(b));
                            out.fail("C", self.sub(c));
                            out.fail(if right_side { "rightNilpotentN" } else { "leftNilpotentN" }, self.sub(n));
                            return Ok(());
                        }
                    }
                }
            }
        }
        out.put("chiefFactors", factors);
        out.put("rightNilpotentIdeals", right.len());
        out.put("leftNilpotentIdeals", left.len());
        Ok(())
    }

    fn dt1(&self, out: &mut Out) -> Step<()> {
        let a = self.algebra();
        let f = a.field();
        self.require(out, Atom::Bicommutative)?;
        let s = self.asq();
        out.put("Asq", self.sub(&s));
        let basis = s.basis();
        for u in basis {
            for v in basis {
                let uv = a.mul(u, v);
                let vu = a.mul(v, u);
                if uv != vu {
                    out.fail("notCommuting", json!([self.vec(u), self.vec(v)]));
                    return Ok(());
                }
                for w in basis {
                    let left = a.mul(&uv, w);
                    let right = a.mul(u, &a.mul(v, w));
                    if left.iter().zip(&right).any(|(x, y)| !f.is_zero(&f.sub(x, y))) {
                        out.fail("nonzeroAssociator", json!([self.vec(u), self.vec(v), self.vec(w)]));
                        return Ok(());
                    }
                }
            }
        }
        Ok(())
    }

    fn solvable_bicomm_asq_nilpotent(&self, out: &mut Out) -> Step<()> {
        let a = self.algebra();
        self.require(out, Atom::Bicommutative)?;
        let branch = self.require_any(out, &[Atom::Solvable, Atom::RightNilpotent, Atom::LeftNilpotent])?;
        let s = self.asq();
        let nil = series::is_nilpotent(a, &s);
        out.put("AsqNilpotent", nil);
        if !nil {
            out.fail("Asq", self.sub(&s));
        }
        if branch != Atom::Solvable {
            let solvable = self.profile().solvable;
            out.put("solvable", solvable);
            if !solvable {
                out.fail("notSolvable", true);
            }
        }
        Ok(())
    }

    fn ar_ra_nilpotent(&self, out: &mut Out) -> Step<()> {
        let a = self.algebra();
        self.require(out, Atom::Bicommutative)?;
        let r = self.radical(out)?;
        let full = self.full();
        out.put("radical", self.sub(&r));
        for (name, p) in [("AR", a.product(&full, &r)), ("RA", a.product(&r, &full))] {
            if !a.is_ideal(&p) || !series::is_nilpotent(a, &p) {
                out.fail(name, self.sub(&p));
            }
        }
        Ok(())
    }

    fn sides(&self, out: &mut Out) -> Step<Vec<Side>> {
        let mut sides = Vec::new();
        if self.holds_or_assumed(out, Atom::RightCommutative)? {
            sides.push(Side::Right);
        }
        if self.holds_or_assumed(out, Atom::LeftCommutative)? {
            sides.push(Side::Left);
        }
        if sides.is_empty() {
            return Err(Stop::Inapplicable("neither right nor left commutative".into()));
        }
        Ok(sides)
    }

    fn fitting_subalgebra(&self, out: &mut Out) -> Step<()> {
        let a = self.algebra();
        let sides = self.sides(out)?;
        let elems = self.elements(out, &self.full())?;
        out.put("elements", elems.len());
        for x in &elems {
            for &side in &sides {
                let e = a.fitting_component(x, side)?;
                if !a.is_subalgebra(&e) {
                    out.fail("element", self.vec(x));
                    out.fail("side", side.to_string());
                    out.fail("fittingComponent", self.sub(&e));
                    return Ok(());
                }
            }
        }
        Ok(())
    }

    fn factor_acts_nilpotently(&self, out: &mut Out) -> Step<()> {
        let a = self.algebra();
        let sides = self.sides(out)?;
        self.require_finite()?;
        out.note(FACTOR_RESTRICTION);
        let phi = self.phi(out)?;
        let chief = self.chief()?;
        let mut tested = 0usize;
        for b in chief.ideals.iter().filter(|b| !b.is_zero()) {
            let c = phi.intersect(b)?;
            if !(c.contains(&a.product(b, &c)) && c.contains(&a.product(&c, b))) {
                continue;
            }
            for &side in &sides {
                if !nilpotent_modulo(a, b, &c, side) {
                    continue;
                }
                tested += 1;
                for x in self.elements(out, b)? {
                    if !a.acts_nilpotently(&x, side) {
                        out.fail("B", self.sub(b));
                        out.fail("C", self.sub(&c));
                        out.fail("side", side.to_string());
                        out.fail("element", self.vec(&x));
                        return Ok(());
                    }
                }
            }
        }
        out.put("pairsTested", tested);
        Ok(())
    }

    fn phi_right_nil(&self, out: &mut Out) -> Step<()> {
        let a = self.algebra();
        let sides = self.sides(out)?;
        let phi = self.phi(out)?;
        out.put("phi", self.sub(&phi));
        for x in self.elements(out, &phi)? {
            for &side in &sides {
                if !a.nil_orbit_vanishes(&x, side) {
                    out.fail("element", self.vec(&x));
                    out.fail("side", side.to_string());
                    return Ok(());
                }
            }
        }
        Ok(())
    }

    fn min1(&self, out: &mut Out) -> Step<()> {
        let a = self.algebra();
        self.require(out, Atom::Bicommutative)?;
        let r = self.radical(out)?;
        let r2 = a.square(&r);
        out.put("radical", self.sub(&r));
        let mins = self.minimal_ideals()?;
        out.put("minimalIdeals", mins.len());
        for b in mins {
            let first = a.product(&r, b).is_zero() && a.product(b, &r2).is_zero();
            let second = a.product(b, &r).is_zero() && a.product(&r2, b).is_zero();
            if !first && !second {
                out.fail("minimalIdeal", self.sub(b));
                return Ok(());
            }
        }
        Ok(())
    }

    fn bimax(&self, out: &mut Out) -> Step<()> {
        let a = self.algebra();
        self.require(out, Atom::Bicommutative)?;
        let right = self.holds_or_assumed(out, Atom::RightNilpotent)?;
        let left = self.holds_or_assumed(out, Atom::LeftNilpotent)?;
        if !right && !left {
            return Err(Stop::Inapplicable("neither right nor left nilpotent".into()));
        }
        self.require_finite()?;
        let maximal = self.maximal()?;
        let phi = self.phi(out)?;
        out.put("maximalSubalgebras", maximal.len());
        if right {
            if let Some(m) = maximal.iter().find(|m| !a.is_left_ideal(m)) {
                out.fail("maximalNotLeftIdeal", self.sub(m));
            }
            let a3 = series::compute_series(a, SeriesKind::RightPower).term(3).clone();
            if !phi.contains(&a3) {
                out.fail("A3", self.sub(&a3));
                out.fail("phi", self.sub(&phi));
            }
        }
        if left {
            if let Some(m) = maximal.iter().find(|m| !a.is_right_ideal(m)) {
                out.fail("maximalNotRightIdeal", self.sub(m));
            }
            let l3 = series::compute_series(a, SeriesKind::LeftPower).term(3).clone();
            if !phi.contains(&l3) {
                out.fail("leftA3", self.sub(&l3));
                out.fail("phi", self.sub(&phi));
            }
        }
        Ok(())
    }

    fn annihilator_subalgebras(&self, out: &mut Out, class: &[Atom]) -> Step<()> {
        let a = self.algebra();
        self.require_any(out, class)?;
        let subs = self.subalgebras()?;
        out.put("subalgebras", subs.len());
        for b in subs {
            let i = a.idealizer(b)?;
            let ann = a.annihilator(b)?;
            if !a.is_subalgebra(&i) {
                out.fail("subalgebra", self.sub(b));
                out.fail("idealiser", self.sub(&i));
                return Ok(());
            }
            if !a.is_subalgebra(&ann) {
                out.fail("subalgebra", self.sub(b));
                out.fail("annihilator", self.sub(&ann));
                return Ok(());
            }
            if a.is_ideal(b) && !a.is_ideal(&ann) {
                out.fail("ideal", self.sub(b));
                out.fail("annihilatorNotIdeal", self.sub(&ann));
                return Ok(());
            }
        }
        Ok(())
    }

    fn minimal_ideal_zero_or_simple(&self, out: &mut Out) -> Step<()> {
        let a = self.algebra();
        self.require_any(out, &[Atom::Bicommutative, Atom::NovikovLeft, Atom::NovikovRight])?;
        let mins = self.minimal_ideals()?;
        out.put("minimalIdeals", mins.len());
        for b in mins {
            if !a.square(b).is_zero() && !structure::is_simple(a, b, &self.budget)? {
                out.fail("minimalIdeal", self.sub(b));
                return Ok(());
            }
        }
        Ok(())
    }

    fn ss_ideals_in_asq(&self, out: &mut Out) -> Step<()> {
        let a = self.algebra();
        self.require(out, Atom::Bicommutative)?;
        self.require(out, Atom::Semisimple)?;
        let s2 = self.asq();
        let mins = self.minimal_ideals()?;
        let ideals = self.ideals()?;
        let mut count = 0usize;
        for b in ideals.iter().filter(|b| s2.contains(b)) {
            count += 1;
            let inside: Vec<&Subspace<K>> = mins.iter().filter(|m| b.contains(m)).collect();
            if let Some(m) = inside.iter().find(|m| !structure::is_simple(a, m, &self.budget).unwrap_or(false)) {
                out.fail("ideal", self.sub(b));
                out.fail("nonSimpleMinimalIdeal", self.sub(m));
                return Ok(());
            }
            let total = crate::enumerate::sum_all(a, inside.into_iter());
            if total != *b {
                out.fail("ideal", self.sub(b));
                out.fail("sumOfSimpleMinimalIdeals", self.sub(&total));
                return Ok(());
            }
        }
        out.put("idealsInsideSsq", count);
        Ok(())
    }

    fn biss(&self, out: &mut Out) -> Step<()> {
        let a = self.algebra();
        self.require(out, Atom::Bicommutative)?;
        self.require(out, Atom::Semisimple)?;
        let d = structure::semisimple_parts(a, &self.budget)?;
        out.put("simples", d.simples.iter().map(|s| self.sub(s)).collect::<Vec<_>>());
        out.put("complement", self.sub(&d.complement));
        out.put("actionPattern", serde_json::to_value(&d.action_pattern).expect("serialisable"));
        for (s, p) in d.simples.iter().zip(&d.action_pattern) {
            if !p.simple_times_complement_zero && !p.complement_times_simple_zero {
                out.fail("simpleActedOnBothSides", self.sub(s));
                out.fail("complement", self.sub(&d.complement));
            }
        }
        Ok(())
    }

    fn kleinfeld(&self, out: &mut Out) -> Step<()> {
        self.require(out, Atom::Assosymmetric)?;
        self.require_characteristic_not_2_or_3()?;
        self.require(out, Atom::Semisimple)?;
        self.conclude_associative(out, self.algebra(), "A")
    }

    fn conclude_associative(&self, out: &mut Out, q: &Algebra<K>, what: &str) -> Step<()> {
        let n = q.dim();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let (x, y, z) = (q.basis_vector(i), q.basis_vector(j), q.basis_vector(k));
                    let assoc = q.associator(&x, &y, &z).expect("lengths agree");
                    if assoc.iter().any(|c| !q.field().is_zero(c)) {
                        out.fail("algebra", what);
                        out.fail("nonzeroAssociatorOnBasis", json!([i, j, k]));
                        return Ok(());
                    }
                }
            }
        }
        Ok(())
    }

    fn assosym_quotient(&self, out: &mut Out) -> Step<()> {
        let a = self.algebra();
        self.require(out, Atom::Assosymmetric)?;
        self.require_characteristic_not_2_or_3()?;
        self.require_finite()?;
        let n = self.nilradical()?.clone();
        out.put("nilradical", self.sub(&n));
        let (q, _) = a.quotient(&n)?;
        self.conclude_associative(out, &q, "A/N(A)")?;
        if out.has_failed() {
            out.fail("nilradical", self.sub(&n));
        }
        Ok(())
    }

    fn novikov_equivalences(&self, out: &mut Out) -> Step<()> {
        self.require(out, Atom::NovikovLeft)?;
        let p = *self.profile();
        let asq = series::is_nilpotent(self.algebra(), &self.asq());
        out.put("rightNilpotent", p.right_nilpotent);
        out.put("AsqNilpotent", asq);
        out.put("solvable", p.solvable);
        if p.right_nilpotent != asq || asq != p.solvable {
            out.fail("rightNilpotent", p.right_nilpotent);
            out.fail("AsqNilpotent", asq);
            out.fail("solvable", p.solvable);
        }
        Ok(())
    }

    fn novikov_solvable_phi(&self, out: &mut Out) -> Step<()> {
        self.require(out, Atom::NovikovLeft)?;
        self.require(out, Atom::Solvable)?;
        self.conclude_phi_nilpotent(out)?;
        let asq = self.asq();
        if !self.phi_within(out, &asq)? {
            out.fail("phiNotInAsq", self.sub(&asq));
        }
        Ok(())
    }

    fn novar(&self, out: &mut Out) -> Step<()> {
        let a = self.algebra();
        self.require(out, Atom::NovikovLeft)?;
        let r = self.radical(out)?;
        let ar = a.product(&self.full(), &r);
        out.put("radical", self.sub(&r));
        out.put("AR", self.sub(&ar));
        if !a.is_ideal(&ar) || !series::is_nilpotent(a, &ar) {
            out.fail("AR", self.sub(&ar));
        }
        Ok(())
    }

    fn split_iff_phi_free(&self, out: &mut Out) -> Step<()> {
        let a = self.algebra();
        self.require(out, Atom::PhiNilpotent)?;
        self.require_finite()?;
        out.note("φ(A) is nilpotent for bicommutative, assosymmetric (characteristic ≠ 2, 3) and solvable Novikov algebras");
        let phi = self.phi(out)?;
        // Nilpotency of φ(A) only makes its minimal ideals zero algebras in
        // the natural classes; elsewhere this is a separate hypothesis.
        self.require(out, Atom::PhiMinimalIdealsZero)?;
        let zsoc = self.zsoc()?.clone();
        let complement = structure::first_subalgebra_complement(a, &zsoc, &a.full(), &self.budget)?;
        out.put("phiFree", phi.is_zero());
        out.put("zeroSocle", self.sub(&zsoc));
        out.put("complement", complement.as_ref().map(|c| self.sub(c)));
        if phi.is_zero() != complement.is_some() {
            out.fail("phi", self.sub(&phi));
            out.fail("complement", complement.as_ref().map(|c| self.sub(c)));
        }
        Ok(())
    }

    fn t_socle(&self, out: &mut Out) -> Step<()> {
        let a = self.algebra();
        self.require(out, Atom::NaturalClass)?;
        self.require(out, Atom::PhiFree)?;
        self.require_finite()?;
        let zsoc = self.zsoc()?.clone();
        let n = self.nilradical()?.clone();
        let ann = a.annihilator(&self.socle()?)?;
        out.put("zeroSocle", self.sub(&zsoc));
        out.put("nilradical", self.sub(&n));
        out.put("annihilatorOfSocle", self.sub(&ann));
        if zsoc != n || n != ann {
            out.fail("zeroSocle", self.sub(&zsoc));
            out.fail("nilradical", self.sub(&n));
            out.fail("annihilatorOfSocle", self.sub(&ann));
        }
        Ok(())
    }

    fn biphifree(&self, out: &mut Out) -> Step<()> {
        let a = self.algebra();
        self.require(out, Atom::Bicommutative)?;
        self.require_finite()?;
        let phi = self.phi(out)?;
        // Nilpotency of φ(A) only makes its minimal ideals zero algebras in
        // the natural classes; elsewhere this is a separate hypothesis.
        self.require(out, Atom::PhiMinimalIdealsZero)?;
        let zsoc = self.zsoc()?.clone();
        let complement = structure::first_subalgebra_complement(a, &zsoc, &a.full(), &self.budget)?;
        out.put("phiFree", phi.is_zero());
        out.put("zeroSocle", self.sub(&zsoc));
        if phi.is_zero() {
            let c = complement.ok_or_else(|| Stop::Violation("φ-free, but Zsoc(A) has no subalgebra complement".into()))?;
            let conditions = self.biphifree_conditions(&zsoc, &c, out)?;
            let failed: Vec<&str> = conditions.iter().filter(|(_, ok)| !ok).map(|(n, _)| *n).collect();
            if !failed.is_empty() {
                out.fail("failedConditions", json!(failed));
            }
        } else if let Some(c) = complement {
            // the structure forces a split over Zsoc(A); test the first split
            let conditions = match self.biphifree_conditions(&zsoc, &c, out) {
                Ok(c) => c,
                Err(Stop::Violation(_)) => return Ok(()),
                Err(e) => return Err(e),
            };
            out.note("converse tested on the first subalgebra complement of Zsoc(A)");
            if conditions.iter().all(|(_, ok)| *ok) {
                out.fail("phi", self.sub(&phi));
                out.fail("structureWithNonzeroPhi", self.sub(&c));
            }
        }
        Ok(())
    }

    fn biphifree_conditions(
        &self,
        zsoc: &Subspace<K>,
        c: &Subspace<K>,
        out: &mut Out,
    ) -> Step<Vec<(&'static str, bool)>> {
        let a = self.algebra();
        let refinement = structure::bicommutative_refinement(a, zsoc, c, &self.budget)?;
        let r = &refinement.radical;
        let (d, e) = (&refinement.d, &refinement.e);
        let dec = &refinement.e_decomposition;
        out.put("D", self.sub(d));
        out.put("E", self.sub(e));
        out.put("Z1", self.sub(&refinement.z1));
        out.put("Z2", self.sub(&refinement.z2));
        out.put("simples", dec.simples.iter().map(|s| self.sub(s)).collect::<Vec<_>>());
        out.put("U", self.sub(&dec.complement));
        if refinement.e_not_unique {
            out.note("several complements E exist with different action patterns; the first is reported");
        }
        let zd = zsoc.intersect(d)?;
        let de = d.intersect(e)?;
        let z12 = refinement.z1.intersect(&refinement.z2)?;
        Ok(vec![
            ("R = Zsoc ∔ D", zd.is_zero() && zsoc.sum(d)? == *r),
            ("D² = 0", a.square(d).is_zero()),
            ("C = D ⊕ E", de.is_zero() && d.sum(e)? == *c && a.product(d, e).is_zero() && a.product(e, d).is_zero()),
            ("U² = 0", a.square(&dec.complement).is_zero()),
            (
                "S_iU = 0 or US_i = 0",
                dec.action_pattern.iter().all(|p| p.simple_times_complement_zero || p.complement_times_simple_zero),
            ),
            ("Zsoc = Z1 ⊕ Z2", z12.is_zero() && refinement.z1.sum(&refinement.z2)? == *zsoc),
            ("Z1R = 0", a.product(&refinement.z1, r).is_zero()),
            ("RZ2 = 0", a.product(r, &refinement.z2).is_zero()),
        ])
    }

    fn phifree_novikov(&self, out: &mut Out) -> Step<()> {
        let a = self.algebra();
        self.require(out, Atom::NovikovLeft)?;
        self.require(out, Atom::PhiFree)?;
        self.require_finite()?;
        let zsoc = self.zsoc()?.clone();
        let c = structure::first_subalgebra_complement(a, &zsoc, &a.full(), &self.budget)?
            .ok_or_else(|| Stop::Violation("φ-free, but Zsoc(A) has no subalgebra complement".into()))?;
        let r = self.radical(out)?;
        let d = c.intersect(&r)?;
        out.put("complement", self.sub(&c));
        out.put("CcapR", self.sub(&d));
        let p = a.product(&self.full(), &d);
        if !p.is_zero() {
            out.fail("A(C∩R)", self.sub(&p));
        }
        Ok(())
    }

    fn arr(&self, out: &mut Out) -> Step<()> {
        let a = self.algebra();
        self.require(out, Atom::NovikovLeft)?;
        let r = self.radical(out)?;
        let arr = a.product(&a.product(&self.full(), &r), &r);
        let asq = self.asq();
        out.put("ARR", self.sub(&arr));
        if !self.within_phi(out, &arr)? {
            out.fail("ARRNotInPhi", self.sub(&arr));
        }
        if !self.phi_within(out, &asq)? {
            out.fail("phiNotInAsq", self.sub(&asq));
        }
        Ok(())
    }

    fn char0_split(&self, out: &mut Out, with_complement: bool) -> Step<()> {
        let a = self.algebra();
        self.require_characteristic_zero()?;
        self.require(out, Atom::NovikovLeft)?;
        let r = self.radical(out)?;
        self.require(out, Atom::RadicalNilpotent)?;
        let phi_free = self.phi_is_zero(out)?;
        let r2 = a.square(&r);
        let mut rhs = r2.is_zero();
        out.put("phiFree", phi_free);
        out.put("Rsq", self.sub(&r2));
        if with_complement {
            out.note("A/R is semisimple by the radical certificate");
            let (q, _) = a.quotient(&r)?;
            let comm = q.check_identity(IdentityKind::Commutative);
            let assoc = q.check_identity(IdentityKind::Associative);
            out.put("quotientCommutative", comm);
            out.put("quotientAssociative", assoc);
            rhs = rhs && comm && assoc;
        }
        if phi_free != rhs {
            out.fail("phiFree", phi_free);
            out.fail("radical", self.sub(&r));
            out.fail("Rsq", self.sub(&r2));
        }
        Ok(())
    }

    fn char0_phi_in_rsq(&self, out: &mut Out) -> Step<()> {
        let a = self.algebra();
        self.require_characteristic_zero()?;
        self.require(out, Atom::NovikovLeft)?;
        let r = self.radical(out)?;
        let r2 = a.square(&r);
        out.put("Rsq", self.sub(&r2));
        if !self.phi_within(out, &r2)? {
            let (lower, _) = self.phi_bounds(out)?;
            out.fail("phiLowerBound", self.sub(&lower));
            out.fail("Rsq", self.sub(&r2));
        }
        self.conclude_phi_nilpotent(out)
    }

    fn char0_phi_eq_rsq(&self, out: &mut Out) -> Step<()> {
        let a = self.algebra();
        self.require_characteristic_zero()?;
        self.require(out, Atom::NovikovLeft)?;
        let r = self.radical(out)?;
        self.require(out, Atom::RadicalNilpotent)?;
        let r2 = a.square(&r);
        out.put("Rsq", self.sub(&r2));
        let up = self.within_phi(out, &r2)?;
        let down = self.phi_within(out, &r2)?;
        if !up || !down {
            let (lower, upper) = self.phi_bounds(out)?;
            out.fail("phiLowerBound", self.sub(&lower));
            out.fail("phiUpperBound", self.sub(&upper));
            out.fail("Rsq", self.sub(&r2));
        }
        Ok(())
    }

    fn a3(&self, out: &mut Out) -> Step<()> {
        self.require(out, Atom::RightCubeZero)?;
        let nov = self.atom(out, Atom::NovikovLeft)?;
        let bic = self.atom(out, Atom::Bicommutative)?;
        out.put("novikovLeft", nov);
        out.put("bicommutative", bic);
        if nov != bic {
            out.fail("novikovLeft", nov);
            out.fail("bicommutative", bic);
        }
        Ok(())
    }

    /// `(A³ ⊆ φ(A), every maximal subalgebra is a left ideal)`
    fn maximal_conditions(&self, out: &mut Out) -> Step<(bool, bool)> {
        let a = self.algebra();
        self.require_finite()?;
        let phi = self.phi(out)?;
        let a3 = series::compute_series(a, SeriesKind::RightPower).term(3).clone();
        let maximal = self.maximal()?;
        let cube = phi.contains(&a3);
        let left = maximal.iter().all(|m| a.is_left_ideal(m));
        out.put("A3", self.sub(&a3));
        out.put("phi", self.sub(&phi));
        out.put("A3InPhi", cube);
        out.put("maximalAreLeftIdeals", left);
        Ok((cube, left))
    }

    fn novmax(&self, out: &mut Out) -> Step<()> {
        self.require(out, Atom::NovikovLeft)?;
        let right = self.profile().right_nilpotent;
        let (cube, left) = self.maximal_conditions(out)?;
        out.put("rightNilpotent", right);
        if right && !cube {
            out.fail("implication", "right nilpotent but A³ ⊄ φ(A)");
        }
        if cube && !left {
            out.fail("implication", "A³ ⊆ φ(A) but some maximal subalgebra is not a left ideal");
        }
        Ok(())
    }

    fn solvable_bicomm_a3(&self, out: &mut Out) -> Step<()> {
        self.require(out, Atom::Bicommutative)?;
        self.require(out, Atom::Solvable)?;
        let (cube, left) = self.maximal_conditions(out)?;
        if cube != left {
            out.fail("A3InPhi", cube);
            out.fail("maximalAreLeftIdeals", left);
        }
        Ok(())
    }
}

/// Whether `B/C` is right (`Side::Right`) or left nilpotent, for an ideal
/// `C` of the subalgebra `B`.
fn nilpotent_modulo<K: Field>(a: &Algebra<K>, b: &Subspace<K>, c: &Subspace<K>, side: Side) -> bool {
    let mut cur = b.sum(c).expect("same ambient");
    loop {
        if c.contains(&cur) {
            return true;
        }
        let p = match side {
            Side::Right => a.product(&cur, b),
            Side::Left => a.product(b, &cur),
        };
        let next = p.sum(c).expect("same ambient");
        if next == cur {
            return false;
        }
        cur = next;
    }
}
