//! Stability, horizontal linkage and linkage by an ideal.

use crate::algebra::{buchberger, TermOrder, Vector};
use crate::engine::Engine;
use crate::error::{Error, Result};
use crate::iso::IsoVerdict;
use crate::module::Module;
use crate::ring::Ring;

/// The three equivalent characterizations of "horizontally linked", evaluated separately.
#[derive(Clone, Debug)]
pub struct LinkageReport {
    pub module: Module,
    pub stable: bool,
    pub free_rank_stripped: usize,
    /// `Ext^1(Tr M, R) = 0`.
    pub syzygy_test: bool,
    /// `M -> R^m` from generators of `M^*` is injective.
    pub embeds_in_free: bool,
    /// `M` against `λ²M`.
    pub double_link_iso: IsoVerdict,
    /// `stable ∧ syzygy_test`.
    pub verdict: bool,
}

impl LinkageReport {
    pub fn ext_criterion(&self) -> bool {
        self.stable && self.syzygy_test
    }

    pub fn syzygy_criterion(&self) -> bool {
        self.stable && self.embeds_in_free
    }

    /// A resolved disagreement among the criteria; these are provably equivalent, so
    /// any mismatch is a defect in the implementation.
    pub fn discrepancy(&self) -> Option<String> {
        if self.ext_criterion() != self.syzygy_criterion() {
            return Some(format!(
                "stable ∧ Ext^1(Tr M,R)=0 is {} but stable ∧ syzygy is {}",
                self.ext_criterion(),
                self.syzygy_criterion()
            ));
        }
        if self.double_link_iso.is_resolved()
            && self.double_link_iso.is_isomorphic() != self.verdict
        {
            return Some(format!(
                "criteria say {} but M vs λ²M is {}",
                self.verdict,
                self.double_link_iso.kind()
            ));
        }
        None
    }
}

/// Outcome of testing `M ∼_c N`.
#[derive(Clone, Debug)]
pub struct IdealLinkage {
    pub quotient: Ring,
    /// `M` against `λ_{R/c} N`.
    pub forward: IsoVerdict,
    /// `N` against `λ_{R/c} M`.
    pub backward: IsoVerdict,
}

impl IdealLinkage {
    pub fn linked(&self) -> bool {
        self.forward.is_isomorphic() && self.backward.is_isomorphic()
    }

    pub fn is_resolved(&self) -> bool {
        self.linked()
            || matches!(self.forward, IsoVerdict::NotIsomorphic(_))
            || matches!(self.backward, IsoVerdict::NotIsomorphic(_))
    }
}

impl Engine {
    /// `(stable, free rank)` from `N = Tr Tr M`.
    pub fn is_stable(&self, m: &Module) -> Result<(bool, usize)> {
        let beta0 = m.minimal()?.ngens();
        let n = self.stable_part(m)?;
        // transpose hands back a minimal presentation, so ngens is β_0
        let free_rank = beta0.saturating_sub(n.ngens());
        Ok((free_rank == 0, free_rank))
    }

    /// `Tr Tr M`: `M` with its free summands stripped.
    pub fn stable_part(&self, m: &Module) -> Result<Module> {
        let t = self.transpose(m)?;
        self.transpose(&t)
    }

    pub fn is_horizontally_linked(&self, m: &Module) -> Result<LinkageReport> {
        let ring = m.ring();
        let unit = Module::free(ring, &[0]);
        let (stable, free_rank) = self.is_stable(m)?;
        let tr = self.transpose(m)?;
        let syzygy_test = self.ext_vanishes(&tr, &unit, 1)?;
        let embeds_in_free = self.embeds_via_dual(m, &unit)?;
        let double = self.lambda(&self.lambda(m)?)?;
        let double_link_iso = match self.is_isomorphic(&m.minimal()?, &double) {
            Ok(v) => v,
            Err(Error::Budget(note)) => IsoVerdict::Unknown(format!("budget: {note}")),
            Err(e) => return Err(e),
        };
        Ok(LinkageReport {
            module: m.clone(),
            stable,
            free_rank_stripped: free_rank,
            syzygy_test,
            embeds_in_free,
            double_link_iso,
            verdict: stable && syzygy_test,
        })
    }

    /// `λM`, minimally presented.
    pub fn link(&self, m: &Module) -> Result<Module> {
        self.lambda(m)
    }

    /// `M` against `λM`.
    pub fn is_self_linked(&self, m: &Module) -> Result<IsoVerdict> {
        let l = self.lambda(m)?;
        self.is_isomorphic(&m.minimal()?, &l)
    }

    /// `M ∼_c N`: `c ⊆ ann M ∩ ann N`, then horizontal linkage over `R/c`.
    pub fn linked_by_ideal(&self, m: &Module, n: &Module, c: &[Vector]) -> Result<IdealLinkage> {
        let ring = m.ring();
        if n.ring() != ring {
            return Err(Error::Structural(
                "modules live over different rings".into(),
            ));
        }
        let cap = ring.budget().max_degree;
        for (name, x) in [("M", m), ("N", n)] {
            let ann = buchberger(&x.annihilator()?, &[0], &TermOrder::top(), cap)?;
            if let Some(g) = c
                .iter()
                .find(|g| !ann.normal_form(&ring.reduce(g)).is_zero())
            {
                return Err(Error::Inapplicable(format!(
                    "{} does not annihilate {name}",
                    ring.format_poly(g)
                )));
            }
        }
        let quotient = ring.quotient(c)?;
        let m2 = m.change_ring(&quotient)?.minimal()?;
        let n2 = n.change_ring(&quotient)?.minimal()?;
        let forward = self.is_isomorphic(&m2, &self.lambda(&n2)?)?;
        let backward = self.is_isomorphic(&n2, &self.lambda(&m2)?)?;
        Ok(IdealLinkage {
            quotient,
            forward,
            backward,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Field;

    fn poly(vars: &[&str]) -> Ring {
        Ring::polynomial(Field::Rationals, vars).unwrap()
    }

    fn prod(a: &Vector, b: &Vector) -> Vector {
        a.mul_poly(b, &TermOrder::top())
    }

    fn xy_ring() -> Ring {
        let s = poly(&["x", "y"]);
        s.quotient(&[prod(&s.var(0), &s.var(1))]).unwrap()
    }

    #[test]
    fn stability() {
        let e = Engine::default();
        let s = poly(&["x", "y"]);
        assert_eq!(e.is_stable(&Module::free(&s, &[0])).unwrap(), (false, 1));
        let k = Module::cyclic(&s, &[s.var(0), s.var(1)]).unwrap();
        assert_eq!(e.is_stable(&k).unwrap(), (true, 0));
        let sum = k.direct_sum(&Module::free(&s, &[0, 1])).unwrap();
        assert_eq!(e.is_stable(&sum).unwrap(), (false, 2));
        let part = e.stable_part(&sum).unwrap();
        assert!(e.is_isomorphic(&part, &k).unwrap().is_isomorphic());
    }

    #[test]
    fn classical_pair() {
        let e = Engine::default();
        let r = xy_ring();
        let a = Module::cyclic(&r, &[r.var(0)]).unwrap();
        let b = Module::cyclic(&r, &[r.var(1)]).unwrap();
        let v = e.is_isomorphic(&e.link(&a).unwrap(), &b).unwrap();
        match &v {
            IsoVerdict::Isomorphic(w) => assert!(w.verify().unwrap()),
            other => panic!("{other:?}"),
        }
        let rep = e.is_horizontally_linked(&a).unwrap();
        assert!(rep.verdict && rep.embeds_in_free && rep.double_link_iso.is_isomorphic());
        assert!(rep.discrepancy().is_none());
        assert!(matches!(
            e.is_self_linked(&a).unwrap(),
            IsoVerdict::NotIsomorphic(_)
        ));
    }

    #[test]
    fn torsion_is_not_linked() {
        let e = Engine::default();
        let s = poly(&["x", "y"]);
        let m = Module::cyclic(&s, &[s.var(0)]).unwrap();
        let rep = e.is_horizontally_linked(&m).unwrap();
        assert!(rep.stable && !rep.syzygy_test && !rep.embeds_in_free && !rep.verdict);
        assert!(rep.discrepancy().is_none());
        let free = e.is_horizontally_linked(&Module::free(&s, &[0])).unwrap();
        assert!(!free.verdict && free.discrepancy().is_none());
        assert!(e.link(&Module::free(&s, &[0])).unwrap().is_zero().unwrap());
    }

    #[test]
    fn self_linked_over_node() {
        let e = Engine::default();
        let s = poly(&["x", "y"]);
        let x2y2 = prod(&s.var(0), &s.var(0)).sub(&prod(&s.var(1), &s.var(1)), &TermOrder::top());
        let r = s.quotient(&[x2y2]).unwrap();
        let xmy = r.var(0).sub(&r.var(1), &TermOrder::top());
        let m = Module::cyclic(&r, &[xmy]).unwrap();
        // λ(R/(x-y)) = R/(x+y), which differs from R/(x-y) by annihilator
        assert!(matches!(
            e.is_self_linked(&m).unwrap(),
            IsoVerdict::NotIsomorphic(_)
        ));
        assert!(e.is_self_linked(&Module::zero(&r)).unwrap().is_isomorphic());
    }

    #[test]
    fn linkage_by_ideal() {
        let e = Engine::default();
        let s = poly(&["x", "y"]);
        let a = Module::cyclic(&s, &[s.var(0)]).unwrap();
        let b = Module::cyclic(&s, &[s.var(1)]).unwrap();
        let c = [prod(&s.var(0), &s.var(1))];
        let l = e.linked_by_ideal(&a, &b, &c).unwrap();
        assert!(l.linked());
        assert!(e.linked_by_ideal(&b, &a, &c).unwrap().linked());
        let bad = e.linked_by_ideal(&a, &b, &[s.var(0)]);
        assert!(matches!(bad, Err(Error::Inapplicable(_))));
    }

    #[test]
    fn redundant_generator_under_fault() {
        let s = poly(&["x", "y"]);
        let top = TermOrder::top();
        // R presented as R(0) ⊕ R(-1) modulo e_1 - x e_0
        let col = Vector::unit(1, s.field()).sub(&s.var(0), &top);
        let m = Module::new(&s, vec![0, 1], vec![col]).unwrap();
        let honest = Engine::default().is_horizontally_linked(&m).unwrap();
        assert!(!honest.verdict && honest.discrepancy().is_none());
        let mut cfg = crate::engine::Config::default();
        cfg.faults.skip_transpose_minimalization = true;
        let broken = Engine::new(cfg).is_horizontally_linked(&m).unwrap();
        assert!(broken.discrepancy().is_some());
    }
}
