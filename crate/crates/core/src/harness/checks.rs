use std::time::Instant;

use super::{Hypothesis, HypothesisStatus, Instance, TheoremId, TheoremReport, Verdict};
use crate::algebra::{buchberger, TermOrder, Vector};
use crate::engine::Engine;
use crate::error::{Error, Result};
use crate::invariants::{BoundedIndex, BoundedVerdict, GcDimVerdict, ProbePrime};
use crate::iso::IsoVerdict;
use crate::linkage::LinkageReport;
use crate::module::Module;
use crate::ring::Ring;

enum Halt {
    Skip(String),
    Fail(Error),
}

impl From<Error> for Halt {
    fn from(e: Error) -> Halt {
        match e {
            Error::Budget(s) => Halt::Skip(format!("budget exceeded: {s}")),
            Error::Inapplicable(s) => Halt::Skip(s),
            other => Halt::Fail(other),
        }
    }
}

type Step<T> = std::result::Result<T, Halt>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Role {
    Ring,
    Canonical,
    General,
}

/// A truth value and whether it was decided exactly (probe sampling is not).
#[derive(Clone, Copy, Debug)]
struct Val {
    v: bool,
    exact: bool,
}

impl Val {
    fn exact(v: bool) -> Val {
        Val { v, exact: true }
    }

    /// Outcome of a search over probe primes: a counterexample is exact, absence is not.
    fn sampled(v: bool) -> Val {
        Val { v, exact: !v }
    }

    fn and(self, o: Val) -> Val {
        match (self.v, o.v) {
            (false, _) if self.exact => self,
            (_, false) if o.exact => o,
            _ => Val {
                v: self.v && o.v,
                exact: self.exact && o.exact,
            },
        }
    }
}

fn val(b: &BoundedVerdict) -> Val {
    match b {
        BoundedVerdict::TrueOnProbes { .. } => Val {
            v: true,
            exact: false,
        },
        other => Val::exact(other.holds()),
    }
}

struct Fact {
    claim: String,
    holds: bool,
    exact: bool,
}

struct Ctx<'a> {
    e: &'a Engine,
    ring: Ring,
    m: Module,
    c: Module,
    role: Role,
    dualizing: bool,
    b: usize,
    hyps: Vec<Hypothesis>,
    facts: Vec<Fact>,
    notes: Vec<String>,
    probes: Vec<ProbePrime>,
}

pub(super) fn run(e: &Engine, id: TheoremId, inst: &Instance) -> Result<TheoremReport> {
    let start = Instant::now();
    let ring = inst.module.ring().clone();
    let c = match &inst.c {
        Some(c) => {
            if c.ring() != &ring {
                return Err(Error::Structural(
                    "C lives over a different ring than M".into(),
                ));
            }
            c.minimal()?
        }
        None => Module::free(&ring, &[0]),
    };
    let mut cx = Ctx {
        e,
        ring: ring.clone(),
        m: inst.module.minimal()?,
        c,
        role: Role::General,
        dualizing: false,
        b: e.bound_for(ring.nvars()),
        hyps: Vec::new(),
        facts: Vec::new(),
        notes: Vec::new(),
        probes: e.probe_primes(&ring),
    };
    let outcome = cx.setup().and_then(|_| dispatch(&mut cx, id, inst));
    let verdict = match outcome {
        Ok(()) => None,
        Err(Halt::Skip(reason)) => Some(Verdict::Inapplicable { reason }),
        Err(Halt::Fail(err)) => return Err(err),
    };
    let (verdict, suspected) = match verdict {
        Some(v) => (v, false),
        None => cx.conclude(),
    };
    Ok(TheoremReport {
        id,
        instance: inst.label.clone(),
        hypothesis_status: cx.hyps,
        verdict,
        suspected_counterexample: suspected,
        notes: cx.notes,
        elapsed: start.elapsed(),
    })
}

fn dispatch(cx: &mut Ctx, id: TheoremId, inst: &Instance) -> Step<()> {
    use TheoremId::*;
    if !matches!(id, ThmMs | Remark3I | G3AbFormula) && cx.m.ngens() == 0 {
        return Err(Halt::Skip("zero module".into()));
    }
    let ns: Vec<usize> = match inst.n {
        Some(n) if n >= 1 => vec![n],
        Some(_) => return Err(Halt::Fail(Error::Structural("n must be positive".into()))),
        None => vec![1, 2, 3],
    };
    match id {
        ThmMs => thm_ms(cx, &inst.module),
        PropT1 => prop_t1(cx, &ns),
        PropP3 => prop_p3(cx, &ns),
        PropT13 => prop_t13(cx, &ns),
        CorC2 => cor_c2(cx, &ns),
        LemLem2 => lem_lem2(cx, &ns),
        ThmTh5 => thm_th5(cx, &ns),
        CorCor7 => cor_cor7(cx, &ns),
        ThmTheorem1 => thm_theorem1(cx),
        ThmThe1 => thm_the1(cx),
        CorTheorem3 => cor_theorem3(cx, inst),
        ThmPropEven => thm_prop_even(cx, inst, &ns),
        ThmTh1 => thm_th1(cx, &ns),
        CorCor5 => cor_cor5(cx),
        CorCor6 => cor_cor6(cx, inst),
        ThmCor3 => thm_cor3(cx),
        ThmTh2 => thm_th2(cx),
        CorSelf => cor_self(cx),
        ThmTh3 => thm_th3(cx),
        ThmTh6 => thm_th6(cx),
        PropXtm => prop_xtm(cx),
        ThmTh4 => thm_th4(cx),
        ThmTh7 => thm_th7(cx),
        CorCor1 => cor_cor1(cx),
        CorCor4 => cor_cor4(cx),
        Remark3I => remark3_i(cx),
        G3AbFormula => g3_ab_formula(cx),
    }
}

impl Ctx<'_> {
    fn setup(&mut self) -> Step<()> {
        let c = &self.c;
        let gorenstein = self.ring.invariants()?.is_gorenstein;
        if c.ngens() == 1 && c.nrels() == 0 {
            self.role = Role::Ring;
            self.dualizing = gorenstein;
            return Ok(());
        }
        self.e.require_semidualizing(c)?;
        let omega = self.e.canonical_module(&self.ring)?;
        let shift = c.gens().iter().min().copied().unwrap_or(0)
            - omega.gens().iter().min().copied().unwrap_or(0);
        if self.ring.invariants()?.is_cm
            && self
                .e
                .is_isomorphic(&omega.twist(-shift), c)?
                .is_isomorphic()
        {
            self.role = Role::Canonical;
            self.dualizing = true;
        }
        Ok(())
    }

    fn hyp(&mut self, name: &str, status: HypothesisStatus) -> Step<()> {
        let failed = matches!(status, HypothesisStatus::Failed { .. });
        self.hyps.push(Hypothesis {
            hypothesis: name.to_string(),
            status,
        });
        if failed {
            return Err(Halt::Skip(format!("hypothesis fails: {name}")));
        }
        Ok(())
    }

    fn hyp_bool(&mut self, name: &str, ok: bool, detail: impl Into<String>) -> Step<()> {
        let status = if ok {
            HypothesisStatus::Exact
        } else {
            HypothesisStatus::Failed {
                detail: detail.into(),
            }
        };
        self.hyp(name, status)
    }

    /// Records a hypothesis that gates only part of the statement.
    fn optional_hyp(&mut self, name: &str, status: HypothesisStatus) -> bool {
        let ok = !matches!(status, HypothesisStatus::Failed { .. });
        self.hyps.push(Hypothesis {
            hypothesis: name.to_string(),
            status,
        });
        ok
    }

    fn fact(&mut self, claim: impl Into<String>, holds: bool, exact: bool) {
        self.facts.push(Fact {
            claim: claim.into(),
            holds,
            exact,
        });
    }

    fn equiv(&mut self, claim: impl Into<String>, a: Val, b: Val) {
        self.fact(claim, a.v == b.v, a.exact && b.exact);
    }

    fn implies(&mut self, claim: impl Into<String>, a: Val, b: Val) {
        if !a.v {
            self.fact(claim, true, a.exact);
        } else if b.v {
            self.fact(claim, true, b.exact);
        } else {
            self.fact(claim, false, a.exact && b.exact);
        }
    }

    fn conclude(&self) -> (Verdict, bool) {
        let probe_hyp = self
            .hyps
            .iter()
            .any(|h| matches!(h.status, HypothesisStatus::ProbeVerified { .. }));
        let bounded_hyp = self
            .hyps
            .iter()
            .any(|h| matches!(h.status, HypothesisStatus::BoundedTrue { .. }));
        if let Some(f) = self.facts.iter().find(|f| !f.holds && f.exact) {
            if probe_hyp {
                return (
                    Verdict::PartiallyVerified {
                        detail: format!("fails: {} (hypotheses only probe-verified)", f.claim),
                    },
                    true,
                );
            }
            return (
                Verdict::Refuted {
                    witness: f.claim.clone(),
                },
                bounded_hyp,
            );
        }
        if let Some(f) = self.facts.iter().find(|f| !f.holds) {
            return (
                Verdict::PartiallyVerified {
                    detail: format!("sampled disagreement: {}", f.claim),
                },
                true,
            );
        }
        if self.facts.is_empty() {
            return (
                Verdict::Inapplicable {
                    reason: "no claim could be evaluated".into(),
                },
                false,
            );
        }
        let sampled: Vec<&str> = self
            .facts
            .iter()
            .filter(|f| !f.exact)
            .map(|f| f.claim.as_str())
            .collect();
        if !sampled.is_empty() || probe_hyp {
            return (
                Verdict::PartiallyVerified {
                    detail: format!("holds on probe primes only: {}", sampled.join("; ")),
                },
                false,
            );
        }
        (Verdict::Verified, false)
    }

    // ---- quantities ----

    fn unit(&self) -> Module {
        Module::free(&self.ring, &[0])
    }

    fn depth(&self, m: &Module) -> Step<Option<usize>> {
        Ok(self.e.depth(m)?)
    }

    fn serre(&self, m: &Module, n: usize) -> Step<Val> {
        Ok(val(&self.e.serre_tilde(m, n)?))
    }

    /// `Ext^i(Tr M, C) = 0` (or `Tr_C M`) for `1 <= i <= n`.
    fn tr_ext(&self, m: &Module, c: &Module, n: usize, wrt_c: bool) -> Step<bool> {
        let t = if wrt_c {
            self.e.transpose_wrt(m, c)?
        } else {
            self.e.transpose(m)?
        };
        for i in 1..=n {
            if !self.e.ext_vanishes(&t, c, i)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `rgr(M, C) >= n`: `Ext^i(M, C) = 0` for `0 < i < n`.
    fn rgr_at_least(&self, m: &Module, c: &Module, n: usize) -> Step<bool> {
        for i in 1..n {
            if !self.e.ext_vanishes(m, c, i)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Number of universal pushforwards that succeed in a row, capped at `n`.
    fn c_syzygy_steps(&self, m: &Module, c: &Module, n: usize) -> Step<usize> {
        let mut cur = m.minimal()?;
        for k in 0..n {
            if cur.ngens() == 0 {
                return Ok(n);
            }
            match self.e.universal_pushforward(&cur, c) {
                Ok(pf) => cur = pf.cokernel,
                Err(Error::Inapplicable(_)) => return Ok(k),
                Err(err) => return Err(err.into()),
            }
        }
        Ok(n)
    }

    fn linkage(&self, m: &Module) -> Step<LinkageReport> {
        Ok(self.e.is_horizontally_linked(m)?)
    }

    fn require_linked(&mut self) -> Step<LinkageReport> {
        let rep = self.linkage(&self.m.clone())?;
        if let Some(d) = rep.discrepancy() {
            self.notes.push(format!("linkage criteria disagree: {d}"));
        }
        self.hyp_bool(
            "M is horizontally linked",
            rep.verdict,
            format!(
                "stable={}, Ext^1(Tr M,R)=0 is {}",
                rep.stable, rep.syzygy_test
            ),
        )?;
        Ok(rep)
    }

    fn require_stable(&mut self) -> Step<()> {
        let (stable, free) = self.e.is_stable(&self.m)?;
        self.hyp_bool("M is stable", stable, format!("{free} free summands"))
    }

    fn require_cm(&mut self) -> Step<usize> {
        let inv = self.ring.invariants()?;
        self.hyp_bool(
            "R is Cohen-Macaulay",
            inv.is_cm,
            format!("dim {} > depth {}", inv.dim, inv.depth),
        )?;
        Ok(inv.dim)
    }

    fn lambda(&self, m: &Module) -> Step<Module> {
        Ok(self.e.lambda(m)?)
    }

    fn gc_dim(&self, m: &Module) -> Step<GcDimVerdict> {
        Ok(self.e.gc_dim(m, &self.c, self.b)?)
    }

    /// Finite G_C-dimension of `m`, returning its value.
    fn require_gc_finite(&mut self, name: &str, m: &Module) -> Step<usize> {
        let gd = self.gc_dim(m)?;
        match gd {
            GcDimVerdict::Zero { .. } | GcDimVerdict::Finite { .. } => {
                let status = if self.dualizing {
                    HypothesisStatus::Exact
                } else {
                    HypothesisStatus::BoundedTrue { bound: self.b }
                };
                self.hyp(name, status)?;
                if self.dualizing {
                    self.hyps.push(Hypothesis {
                        hypothesis: "G_C-dimension value".into(),
                        status: HypothesisStatus::BoundedTrue { bound: self.b },
                    });
                }
                Ok(gd.value().unwrap())
            }
            GcDimVerdict::PositiveUnknown { note, .. } => {
                Err(Halt::Skip(format!("G_C-dimension undetermined: {note}")))
            }
            GcDimVerdict::Infinite { witness } => {
                if self.dualizing {
                    self.notes.push(format!(
                        "G_C-dimension search failed although C is dualizing: {witness}"
                    ));
                }
                self.hyp(name, HypothesisStatus::Failed { detail: witness })?;
                unreachable!()
            }
        }
    }

    /// `m ∈ A_C`.
    fn require_auslander(&mut self, name: &str, m: &Module) -> Step<()> {
        if self.role == Role::Ring {
            return self.hyp(name, HypothesisStatus::Exact);
        }
        let v = self.e.in_auslander_class(m, &self.c, self.b)?;
        let status = match v {
            BoundedVerdict::True => HypothesisStatus::Exact,
            BoundedVerdict::False { witness } => HypothesisStatus::Failed { detail: witness },
            _ => HypothesisStatus::BoundedTrue { bound: self.b },
        };
        self.hyp(name, status)
    }

    /// Gorenstein dimension of `m` (with respect to `R`) is finite.
    fn gdim_status(&self, m: &Module) -> Step<HypothesisStatus> {
        if self.ring.invariants()?.is_gorenstein {
            return Ok(HypothesisStatus::Exact);
        }
        let gd = self.e.gc_dim(m, &self.unit(), self.b)?;
        Ok(match gd {
            GcDimVerdict::Zero { .. } | GcDimVerdict::Finite { .. } => {
                HypothesisStatus::BoundedTrue { bound: self.b }
            }
            GcDimVerdict::Infinite { witness } => HypothesisStatus::Failed { detail: witness },
            GcDimVerdict::PositiveUnknown { note, .. } => HypothesisStatus::Failed { detail: note },
        })
    }

    /// Finite G_C-dimension of `M` at primes of small depth, via a global witness.
    fn local_gc_status(&self) -> Step<HypothesisStatus> {
        if self.dualizing {
            return Ok(HypothesisStatus::Exact);
        }
        Ok(match self.gc_dim(&self.m)? {
            GcDimVerdict::Zero { .. } | GcDimVerdict::Finite { .. } => {
                HypothesisStatus::BoundedTrue { bound: self.b }
            }
            other => HypothesisStatus::Failed {
                detail: format!("no finite G_C-dimension found: {other:?}"),
            },
        })
    }

    fn omega(&self) -> Step<Module> {
        Ok(self.e.canonical_module(&self.ring)?)
    }

    fn depth_r_at(&self, p: &ProbePrime) -> Step<Option<usize>> {
        Ok(self.e.depth_at_prime(&self.unit(), p)?)
    }

    fn is_maximal(&self, p: &ProbePrime) -> bool {
        p.is_maximal(self.ring.nvars())
    }

    /// Non-Cohen-Macaulay locus membership at a probe.
    fn non_cm_at(&self, m: &Module, p: &ProbePrime) -> Step<bool> {
        let d = self.e.dim_at_prime(m, p)?;
        let t = self.e.depth_at_prime(m, p)?;
        Ok(matches!((d, t), (Some(d), Some(t)) if t < d))
    }

    fn generically_gorenstein(&self) -> bool {
        // squarefree monomial relations: reduced, hence generically Gorenstein
        self.ring
            .ideal_generators()
            .iter()
            .all(|g| g.terms.len() == 1 && (0..self.ring.nvars()).all(|i| g.terms[0].m.exp(i) <= 1))
    }
}

fn add(a: Option<usize>, b: Option<usize>) -> Option<usize> {
    Some(a? + b?)
}

fn show(d: Option<usize>) -> String {
    d.map(|v| v.to_string()).unwrap_or_else(|| "∞".into())
}

/// `M/JM` for an ideal `J`.
fn mod_ideal(m: &Module, j: &[Vector]) -> Result<Module> {
    let top = TermOrder::top();
    let mut cols = m.columns().to_vec();
    for i in 0..m.ngens() {
        for g in j {
            cols.push(g.map_positions(|_| i as u32, &top));
        }
    }
    Module::new(m.ring(), m.gens().to_vec(), cols)
}

/// An `R/c`-module viewed over `R`.
fn pull_back(m: &Module, ring: &Ring, c: &[Vector]) -> Result<Module> {
    let top = TermOrder::top();
    let mut cols = m.columns().to_vec();
    let mut rels = m.rels().to_vec();
    for (i, &g) in m.gens().iter().enumerate() {
        for f in c {
            cols.push(f.map_positions(|_| i as u32, &top));
            rels.push(g + f.degree(&[0]).unwrap_or(0));
        }
    }
    Module::with_degrees(ring, m.gens().to_vec(), rels, cols)
}

/// Ideals inside `ann M` that might link `M`: squares and variable multiples of annihilators.
fn link_candidates(m: &Module) -> Result<Vec<Vec<Vector>>> {
    let ring = m.ring();
    let top = TermOrder::top();
    let ann: Vec<Vector> = m
        .annihilator()?
        .iter()
        .map(|g| ring.reduce(g))
        .filter(|g| !g.is_zero())
        .collect();
    let mut out = Vec::new();
    let Some(g) = ann.first() else { return Ok(out) };
    out.push(vec![g.mul_poly(g, &top)]);
    for i in 0..ring.nvars() {
        out.push(vec![g.mul_poly(&ring.var(i), &top)]);
    }
    if let Some(h) = ann.get(1) {
        out.push(vec![g.mul_poly(g, &top), h.mul_poly(h, &top)]);
    }
    out.retain(|c| c.iter().all(|f| !ring.reduce(f).is_zero()));
    Ok(out)
}

fn horizontally_linked_over(e: &Engine, m: &Module, c: &[Vector]) -> Result<bool> {
    let q = m.ring().quotient(c)?;
    let mq = m.change_ring(&q)?;
    Ok(e.is_horizontally_linked(&mq)?.verdict)
}

fn same_ideal(ring: &Ring, a: &[Vector], b: &[Vector]) -> Result<bool> {
    let cap = ring.budget().max_degree;
    let mut a2 = a.to_vec();
    a2.extend_from_slice(ring.ideal_generators());
    let mut b2 = b.to_vec();
    b2.extend_from_slice(ring.ideal_generators());
    let ga = buchberger(&a2, &[0], &TermOrder::top(), cap)?;
    let gb = buchberger(&b2, &[0], &TermOrder::top(), cap)?;
    Ok(a2.iter().all(|f| gb.normal_form(f).is_zero())
        && b2.iter().all(|f| ga.normal_form(f).is_zero()))
}

// ---- individual checks ----

fn thm_ms(cx: &mut Ctx, m: &Module) -> Step<()> {
    let rep = cx.linkage(m)?;
    cx.notes.push(format!(
        "stable={} (free rank {}), Ext^1(Tr M,R)=0: {}, syzygy: {}, M vs λ²M: {}",
        rep.stable,
        rep.free_rank_stripped,
        rep.syzygy_test,
        rep.embeds_in_free,
        rep.double_link_iso.kind()
    ));
    let a = rep.ext_criterion();
    let b = rep.syzygy_criterion();
    cx.fact(
        format!("stable ∧ Ext^1(Tr M,R)=0 ({a}) ⟺ stable ∧ syzygy ({b})"),
        a == b,
        true,
    );
    let iso = &rep.double_link_iso;
    if iso.is_resolved() {
        cx.fact(
            format!(
                "stable ∧ Ext^1(Tr M,R)=0 ({a}) ⟺ M ≅ λ²M ({})",
                iso.is_isomorphic()
            ),
            a == iso.is_isomorphic(),
            true,
        );
    } else {
        cx.fact(format!("M ≅ λ²M unresolved: {}", iso.detail()), true, false);
    }
    Ok(())
}

fn prop_t1(cx: &mut Ctx, ns: &[usize]) -> Step<()> {
    let role = cx.role;
    cx.hyp(
        "C is semidualizing",
        if role == Role::Ring {
            HypothesisStatus::Exact
        } else {
            HypothesisStatus::BoundedTrue { bound: cx.b }
        },
    )?;
    let local = cx.local_gc_status()?;
    let part_b = cx.optional_hyp("finite G_C-dimension on X^{n-1}(R)", local);
    let (m, c) = (cx.m.clone(), cx.c.clone());
    for &n in ns {
        let i = cx.tr_ext(&m, &c, n, true)?;
        let steps = cx.c_syzygy_steps(&m, &c, n)?;
        let ii = Val::exact(steps >= n);
        let iii = cx.serre(&m, n)?;
        cx.implies(
            format!("n={n}: Ext^{{1..n}}(Tr_C M,C)=0 ⇒ pushforward chain of length n"),
            Val::exact(i),
            Val::exact(steps >= n),
        );
        cx.implies(format!("n={n}: n-th C-syzygy ⇒ S̃_n"), ii, iii);
        if part_b {
            cx.implies(
                format!("n={n}: S̃_n ⇒ Ext^{{1..n}}(Tr_C M,C)=0"),
                iii,
                Val::exact(i),
            );
        }
    }
    Ok(())
}

fn prop_p3(cx: &mut Ctx, ns: &[usize]) -> Step<()> {
    let d = cx.require_cm()?;
    cx.require_linked()?;
    let omega = cx.omega()?;
    let t = cx.e.tensor(&cx.m, &omega)?;
    let s1 = cx.serre(&t, 1)?;
    cx.hyp_bool("M⊗ω satisfies S_1", s1.v, "S_1 fails")?;
    let lam = cx.lambda(&cx.m.clone())?;
    let lc = cx.e.local_cohomology_degrees(&t)?;
    for &n in ns {
        let i = cx.serre(&lam, n)?;
        let ii = !lc.iter().any(|&i| i + n > d && i < d);
        cx.equiv(
            format!("n={n}: λM satisfies S_n ⟺ H^i_m(M⊗ω)=0 for d-n<i<d"),
            i,
            Val::exact(ii),
        );
    }
    Ok(())
}

fn prop_t13(cx: &mut Ctx, ns: &[usize]) -> Step<()> {
    let role = cx.role;
    cx.hyp(
        "C is semidualizing",
        if role == Role::Ring {
            HypothesisStatus::Exact
        } else {
            HypothesisStatus::BoundedTrue { bound: cx.b }
        },
    )?;
    let id_finite = if cx.dualizing {
        HypothesisStatus::Exact
    } else {
        HypothesisStatus::Failed {
            detail: "finite injective dimension of C not established".into(),
        }
    };
    let part_b = cx.optional_hyp("C has finite injective dimension on X^{n-1}(R)", id_finite);
    let (m, c) = (cx.m.clone(), cx.c.clone());
    let t = cx.e.tensor(&m, &c)?;
    for &n in ns {
        let i = cx.tr_ext(&m, &c, n, false)?;
        let steps = cx.c_syzygy_steps(&t, &c, n)?;
        let iii = cx.serre(&t, n)?;
        cx.implies(
            format!("n={n}: Ext^{{1..n}}(Tr M,C)=0 ⇒ M⊗C is an n-th C-syzygy"),
            Val::exact(i),
            Val::exact(steps >= n),
        );
        cx.implies(
            format!("n={n}: M⊗C n-th C-syzygy ⇒ M⊗C satisfies S̃_n"),
            Val::exact(steps >= n),
            iii,
        );
        if part_b {
            cx.implies(
                format!("n={n}: M⊗C satisfies S̃_n ⇒ Ext^{{1..n}}(Tr M,C)=0"),
                iii,
                Val::exact(i),
            );
        }
    }
    Ok(())
}

fn cor_c2(cx: &mut Ctx, ns: &[usize]) -> Step<()> {
    let d = cx.require_cm()?;
    cx.require_linked()?;
    let omega = cx.omega()?;
    let t = cx.e.tensor(&cx.m, &omega)?;
    let s1 = cx.serre(&t, 1)?;
    cx.hyp_bool("M⊗ω satisfies S_1", s1.v, "S_1 fails")?;
    let lam = cx.lambda(&cx.m.clone())?;
    let lc = cx.e.local_cohomology_degrees(&lam)?;
    for &n in ns {
        let i = cx.serre(&t, n)?;
        let ii = !lc.iter().any(|&i| i + n > d && i < d);
        cx.equiv(
            format!("n={n}: M⊗ω satisfies S_n ⟺ H^i_m(λM)=0 for d-n<i<d"),
            i,
            Val::exact(ii),
        );
    }
    Ok(())
}

fn lem_lem2(cx: &mut Ctx, ns: &[usize]) -> Step<()> {
    let m = cx.m.clone();
    cx.require_auslander("M ∈ A_C", &m)?;
    let t = cx.e.tensor(&m, &cx.c)?;
    let (dm, dt) = (cx.depth(&m)?, cx.depth(&t)?);
    cx.fact(
        format!("depth M = {} = depth M⊗C = {}", show(dm), show(dt)),
        dm == dt,
        true,
    );
    let (km, kt) = (cx.e.krull_dim(&m)?, cx.e.krull_dim(&t)?);
    cx.fact(
        format!("dim M = {} = dim M⊗C = {}", show(km), show(kt)),
        km == kt,
        true,
    );
    for &n in ns {
        let (a, b) = (cx.serre(&m, n)?, cx.serre(&t, n)?);
        cx.equiv(format!("n={n}: M satisfies S_n ⟺ M⊗C does"), a, b);
    }
    let (a, b) = (cx.e.is_cm(&m)?, cx.e.is_cm(&t)?);
    cx.equiv(
        "M Cohen-Macaulay ⟺ M⊗C Cohen-Macaulay",
        Val::exact(a),
        Val::exact(b),
    );
    Ok(())
}

fn th5_part_b(cx: &mut Ctx) -> Step<bool> {
    let status = if cx.ring.invariants()?.is_gorenstein || cx.role == Role::Canonical {
        HypothesisStatus::Exact
    } else {
        cx.gdim_status(&cx.m.clone())?
    };
    Ok(cx.optional_hyp("G-dimension of M_p finite on X^{n-1}(R)", status))
}

fn thm_th5(cx: &mut Ctx, ns: &[usize]) -> Step<()> {
    let m = cx.m.clone();
    cx.require_auslander("M ∈ A_C", &m)?;
    let part_b = th5_part_b(cx)?;
    let c = cx.c.clone();
    let unit = cx.unit();
    let t = cx.e.tensor(&m, &c)?;
    for &n in ns {
        let i = Val::exact(cx.tr_ext(&m, &unit, n, false)?);
        let ii = Val::exact(cx.tr_ext(&m, &c, n, false)?);
        let iii = cx.serre(&t, n)?;
        let iv = cx.serre(&m, n)?;
        cx.implies(format!("n={n}: (i) ⇒ (ii)"), i, ii);
        cx.implies(format!("n={n}: (ii) ⇒ (iii)"), ii, iii);
        cx.equiv(format!("n={n}: (iii) ⟺ (iv)"), iii, iv);
        if part_b {
            cx.implies(format!("n={n}: (iv) ⇒ (i)"), iv, i);
        }
    }
    Ok(())
}

fn cor_cor7(cx: &mut Ctx, ns: &[usize]) -> Step<()> {
    cx.require_stable()?;
    let m = cx.m.clone();
    cx.require_auslander("M ∈ A_C", &m)?;
    if !th5_part_b(cx)? {
        return Err(Halt::Skip(
            "finite G-dimension on X^{n-1}(R) not established".into(),
        ));
    }
    let linked = cx.linkage(&m)?.verdict;
    let lam = cx.lambda(&m)?;
    let c = cx.c.clone();
    for &n in ns {
        let i = cx.serre(&m, n)?;
        let ii = linked && cx.rgr_at_least(&lam, &c, n)?;
        cx.equiv(
            format!("n={n}: S̃_n ⟺ linked ∧ Ext^i(λM,C)=0 for 0<i<n"),
            i,
            Val::exact(ii),
        );
    }
    Ok(())
}

fn thm_theorem1(cx: &mut Ctx) -> Step<()> {
    let d = cx.require_cm()?;
    cx.require_linked()?;
    let omega = cx.omega()?;
    let t = cx.e.tensor(&cx.m, &omega)?;
    let s1 = cx.serre(&t, 1)?;
    cx.hyp_bool("M⊗ω satisfies S̃_1", s1.v, "S̃_1 fails")?;
    let lam = cx.lambda(&cx.m.clone())?;
    let i = Val::exact(cx.e.is_mcm(&t)?);
    let ii = Val::exact(cx.e.is_mcm(&lam)?);
    let need = |dep: Option<usize>| -> usize {
        match dep {
            Some(x) if x < d => d - x + 1,
            _ => 1,
        }
    };
    let n3 = need(cx.depth(&lam)?);
    let n4 = need(cx.depth(&t)?);
    let iii = cx.serre(&t, n3)?;
    let iv = cx.serre(&lam, n4)?;
    cx.notes
        .push(format!("(iii) uses n={n3}, (iv) uses n={n4}"));
    cx.equiv("M⊗ω mCM ⟺ λM mCM", i, ii);
    cx.equiv(
        "M⊗ω mCM ⟺ M⊗ω satisfies S_n for some n > d - depth λM",
        i,
        iii,
    );
    cx.equiv(
        "M⊗ω mCM ⟺ λM satisfies S_n for some n > d - depth M⊗ω",
        i,
        iv,
    );
    Ok(())
}

fn require_non_gorenstein_generic(cx: &mut Ctx) -> Step<()> {
    let g = cx.ring.invariants()?.is_gorenstein;
    cx.hyp_bool("R is not Gorenstein", !g, "R is Gorenstein")?;
    let gg = cx.generically_gorenstein();
    cx.hyp_bool(
        "R is generically Gorenstein",
        gg,
        "not established for these relations",
    )
}

fn thm_the1(cx: &mut Ctx) -> Step<()> {
    let d = cx.require_cm()?;
    require_non_gorenstein_generic(cx)?;
    let m = cx.m.clone();
    let mcm = cx.e.is_mcm(&m)?;
    cx.hyp_bool("M is maximal Cohen-Macaulay", mcm, "depth M < dim R")?;
    cx.require_linked()?;
    let omega = cx.omega()?;
    let t = cx.e.tensor(&m, &omega)?;
    let s1 = cx.serre(&t, 1)?;
    cx.hyp_bool("M⊗ω satisfies S_1", s1.v, "S_1 fails")?;
    let (j, _) = cx.e.canonical_ideal(&cx.ring)?;
    cx.notes.push(format!(
        "ω identified with ({})",
        j.iter()
            .map(|g| cx.ring.format_poly(g))
            .collect::<Vec<_>>()
            .join(", ")
    ));
    let lam = cx.lambda(&m)?;
    let i = cx.e.is_mcm(&lam)?;
    let q = mod_ideal(&m, &j)?;
    let ii = cx.e.is_cm(&q)? && cx.e.krull_dim(&q)? == Some(d.wrapping_sub(1)) && d >= 1;
    cx.equiv(
        "λM mCM ⟺ M/ωM Cohen-Macaulay of dimension d-1",
        Val::exact(i),
        Val::exact(ii),
    );
    Ok(())
}

fn cor_theorem3(cx: &mut Ctx, inst: &Instance) -> Step<()> {
    let d = cx.require_cm()?;
    require_non_gorenstein_generic(cx)?;
    let ring = cx.ring.clone();
    let i_gens: Vec<Vector> = match inst.ideals.first() {
        Some(i) => i.clone(),
        None => {
            if cx.m.ngens() != 1 {
                return Err(Halt::Skip(
                    "needs a cyclic module R/I or an explicit ideal".into(),
                ));
            }
            cx.m.columns().to_vec()
        }
    };
    if i_gens.iter().all(|g| ring.reduce(g).is_zero()) {
        return Err(Halt::Skip("I is the zero ideal".into()));
    }
    let j_gens = Module::ideal(&ring, &i_gens)?.annihilator()?;
    let back = Module::ideal(&ring, &j_gens)?.annihilator()?;
    let linked = same_ideal(&ring, &back, &i_gens)?;
    cx.hyp_bool(
        "I and J are linked by the zero ideal",
        linked,
        "I ≠ 0:(0:I)",
    )?;
    let (w, _) = cx.e.canonical_ideal(&ring)?;
    let r_i = Module::cyclic(&ring, &i_gens)?;
    let r_w = Module::cyclic(&ring, &w)?;
    let tor = cx.e.tor_vanishes(&r_w, &r_i, 1)?;
    cx.hyp_bool("Iω = I ∩ ω", tor, "Tor_1(R/ω, R/I) ≠ 0")?;
    let cm_i = cx.e.is_cm(&r_i)?;
    cx.hyp_bool("R/I is Cohen-Macaulay", cm_i, "R/I is not Cohen-Macaulay")?;
    let r_j = Module::cyclic(&ring, &j_gens)?;
    let a = cx.e.is_cm(&r_j)?;
    let mut iw = i_gens.clone();
    iw.extend(w);
    let q = Module::cyclic(&ring, &iw)?;
    let b = d >= 1 && cx.e.is_cm(&q)? && cx.e.krull_dim(&q)? == Some(d - 1);
    cx.equiv(
        "R/J Cohen-Macaulay ⟺ R/(I+ω) Cohen-Macaulay of dimension d-1",
        Val::exact(a),
        Val::exact(b),
    );
    Ok(())
}

fn thm_prop_even(cx: &mut Ctx, inst: &Instance, ns: &[usize]) -> Step<()> {
    let ring = cx.ring.clone();
    let m = cx.m.clone();
    let (c1, c2) = match inst.ideals.as_slice() {
        [a, b, ..] => (a.clone(), b.clone()),
        _ => {
            let mut chosen = Vec::new();
            for c in link_candidates(&m)? {
                if horizontally_linked_over(cx.e, &m, &c)? {
                    chosen.push(c);
                }
                if chosen.len() == 2 {
                    break;
                }
            }
            if chosen.len() < 2 {
                return Err(Halt::Skip("fewer than two linking ideals found".into()));
            }
            let b = chosen.pop().unwrap();
            (chosen.pop().unwrap(), b)
        }
    };
    let c = cx.c.clone();
    for (k, ci) in [(1, &c1), (2, &c2)] {
        let g = cx.e.is_gc_gorenstein(ci, &c)?;
        let status = match g {
            BoundedVerdict::False { witness } => HypothesisStatus::Failed { detail: witness },
            BoundedVerdict::True => HypothesisStatus::Exact,
            _ => HypothesisStatus::BoundedTrue { bound: cx.b },
        };
        cx.hyp(&format!("c{k} is G_C-Gorenstein"), status)?;
    }
    cx.require_gc_finite("G_C-dim M finite", &m)?;
    let mut linked = Vec::new();
    for (k, ci) in [(1, &c1), (2, &c2)] {
        let q = ring.quotient(ci)?;
        let mq = m.change_ring(&q)?;
        let other = pull_back(&cx.e.lambda(&mq)?, &ring, ci)?;
        let l = cx.e.linked_by_ideal(&other, &m, ci)?;
        cx.hyp_bool(
            &format!("M_{k} ∼_c{k} M"),
            l.linked(),
            format!("{} / {}", l.forward.kind(), l.backward.kind()),
        )?;
        linked.push(other);
    }
    cx.notes.push(format!(
        "c1 = ({}), c2 = ({})",
        c1.iter()
            .map(|g| ring.format_poly(g))
            .collect::<Vec<_>>()
            .join(", "),
        c2.iter()
            .map(|g| ring.format_poly(g))
            .collect::<Vec<_>>()
            .join(", ")
    ));
    for &n in ns {
        let a = cx.serre(&linked[0], n)?;
        let b = cx.serre(&linked[1], n)?;
        cx.equiv(format!("n={n}: M_1 satisfies S̃_n ⟺ M_2 does"), a, b);
    }
    if ring.invariants()?.is_cm {
        let a = cx.e.is_cm(&linked[0])?;
        let b = cx.e.is_cm(&linked[1])?;
        cx.equiv(
            "M_1 Cohen-Macaulay ⟺ M_2 Cohen-Macaulay",
            Val::exact(a),
            Val::exact(b),
        );
    }
    Ok(())
}

fn thm_th1(cx: &mut Ctx, ns: &[usize]) -> Step<()> {
    cx.require_stable()?;
    let m = cx.m.clone();
    cx.require_gc_finite("G_C-dim M finite", &m)?;
    let lam = cx.lambda(&m)?;
    cx.require_auslander("λM ∈ A_C", &lam)?;
    let linked = cx.linkage(&m)?.verdict;
    let unit = cx.unit();
    let c = cx.c.clone();
    for &n in ns {
        let s = cx.serre(&m, n)?;
        let r = linked && cx.rgr_at_least(&lam, &unit, n)?;
        cx.equiv(
            format!("n={n}: M satisfies S̃_n ⟺ linked ∧ rgr(λM) ≥ n"),
            s,
            Val::exact(r),
        );
        if linked {
            let a = cx.rgr_at_least(&m, &c, n)?;
            let b = cx.serre(&lam, n)?;
            cx.equiv(
                format!("n={n}: rgr(M,C) ≥ n ⟺ λM satisfies S̃_n"),
                Val::exact(a),
                b,
            );
        }
    }
    Ok(())
}

fn cor_cor5(cx: &mut Ctx) -> Step<()> {
    let d = cx.require_cm()?;
    cx.require_stable()?;
    let m = cx.m.clone();
    cx.require_gc_finite("G_C-dim M finite", &m)?;
    let lam = cx.lambda(&m)?;
    cx.require_auslander("λM ∈ A_C", &lam)?;
    let linked = cx.linkage(&m)?.verdict;
    let i = cx.e.is_mcm(&m)?;
    let ii = linked && cx.e.is_mcm(&lam)?;
    let n = match cx.depth(&m)? {
        Some(x) if x < d => d - x + 1,
        _ => 1,
    };
    let s = cx.serre(&lam, n)?;
    let iii = Val::exact(linked).and(s);
    cx.equiv("M mCM ⟺ λM mCM ∧ linked", Val::exact(i), Val::exact(ii));
    cx.equiv(
        format!("M mCM ⟺ λM satisfies S_{n} ∧ linked"),
        Val::exact(i),
        iii,
    );
    Ok(())
}

fn cor_cor6(cx: &mut Ctx, inst: &Instance) -> Step<()> {
    cx.require_cm()?;
    let ring = cx.ring.clone();
    let m = cx.m.clone();
    let c = cx.c.clone();
    let a = match inst.ideals.first() {
        Some(a) => a.clone(),
        None => {
            let mut found = None;
            for cand in link_candidates(&m)? {
                if horizontally_linked_over(cx.e, &m, &cand)?
                    && cx.e.is_gc_perfect(&cand, &c)?.holds()
                {
                    found = Some(cand);
                    break;
                }
            }
            found.ok_or_else(|| Halt::Skip("no G_C-perfect linking ideal found".into()))?
        }
    };
    cx.notes.push(format!(
        "a = ({})",
        a.iter()
            .map(|g| ring.format_poly(g))
            .collect::<Vec<_>>()
            .join(", ")
    ));
    cx.require_gc_finite("G_C-dim M finite", &m)?;
    let perfect = cx.e.is_gc_perfect(&a, &c)?;
    let status = match perfect {
        BoundedVerdict::False { witness } => HypothesisStatus::Failed { detail: witness },
        BoundedVerdict::True => HypothesisStatus::Exact,
        _ => HypothesisStatus::BoundedTrue { bound: cx.b },
    };
    cx.hyp("a is G_C-perfect", status)?;
    let q = ring.quotient(&a)?;
    let mq = m.change_ring(&q)?.minimal()?;
    let linked = cx.e.is_horizontally_linked(&mq)?.verdict;
    cx.hyp_bool(
        "M is linked by a",
        linked,
        "M is not horizontally linked over R/a",
    )?;
    let (k, cert) = cx.e.induced_semidualizing(&a, &c)?;
    cx.hyp(
        "K = Ext^{gr a}(R/a, C) is semidualizing over R/a",
        if cert.is_valid() {
            HypothesisStatus::BoundedTrue { bound: cx.b }
        } else {
            HypothesisStatus::Failed {
                detail: "homothety or Ext vanishing fails".into(),
            }
        },
    )?;
    let lam = cx.e.lambda(&mq)?;
    let au = cx.e.in_auslander_class(&lam, &k, cx.b)?;
    let status = match au {
        BoundedVerdict::True => HypothesisStatus::Exact,
        BoundedVerdict::False { witness } => HypothesisStatus::Failed { detail: witness },
        _ => HypothesisStatus::BoundedTrue { bound: cx.b },
    };
    cx.hyp("λ_{R/a}M ∈ A_K", status)?;
    let x = cx.e.is_cm(&m)?;
    let y = cx.e.is_cm(&lam)?;
    cx.equiv(
        "M Cohen-Macaulay ⟺ λ_{R/a}M Cohen-Macaulay",
        Val::exact(x),
        Val::exact(y),
    );
    Ok(())
}

/// `∀ p ∈ nonCM(M) \ {m}: depth (λM)_p + k > d` over the probe primes.
fn non_cm_probe_inequality(cx: &mut Ctx, lam: &Module, k: usize, d: usize) -> Step<Val> {
    let m = cx.m.clone();
    let probes = cx.probes.clone();
    for p in &probes {
        if cx.is_maximal(p) || !cx.non_cm_at(&m, p)? {
            continue;
        }
        if let Some(dl) = cx.e.depth_at_prime(lam, p)? {
            if dl + k <= d {
                cx.notes
                    .push(format!("at {}: depth (λM)_p = {dl}", p.label));
                return Ok(Val::exact(false));
            }
        }
    }
    Ok(Val::sampled(true))
}

fn thm_cor3(cx: &mut Ctx) -> Step<()> {
    let d = cx.require_cm()?;
    cx.require_linked()?;
    let m = cx.m.clone();
    let cm = cx.e.is_cm(&m)?;
    cx.hyp_bool("M is not Cohen-Macaulay", !cm, "M is Cohen-Macaulay")?;
    let lam = cx.lambda(&m)?;
    let status = cx.gdim_status(&lam)?;
    cx.hyp("G-dim λM finite", status)?;
    let cc = cx.e.cc(&m)?;
    let n = cx.ring.nvars();
    let fg = cx.e.ambient_ext_dim(&m, n - cc)?.is_none_or(|x| x == 0);
    let dl = cx.depth(&lam)?;
    let eq = dl.map(|x| x + cc) == Some(d);
    let ineq = non_cm_probe_inequality(cx, &lam, cc, d)?;
    cx.notes
        .push(format!("cc(M) = {cc}, depth λM = {}", show(dl)));
    cx.equiv(
        "H^cc_m(M) finitely generated ⟺ depth λM + cc = d ∧ probe inequalities",
        Val::exact(fg),
        Val::exact(eq).and(ineq),
    );
    Ok(())
}

/// `∀ p ∉ X^0: test(depth M_p, depth (λM)_p, depth R_p)` over the probes.
fn probe_depth_condition(
    cx: &mut Ctx,
    lam: &Module,
    test: impl Fn(Option<usize>, Option<usize>, usize) -> bool,
) -> Step<Val> {
    let m = cx.m.clone();
    let probes = cx.probes.clone();
    for p in &probes {
        let Some(dr) = cx.depth_r_at(p)? else {
            continue;
        };
        if dr == 0 {
            continue;
        }
        let dm = cx.e.depth_at_prime(&m, p)?;
        let dl = cx.e.depth_at_prime(lam, p)?;
        if !test(dm, dl, dr) {
            cx.notes.push(format!(
                "at {}: depth M_p = {}, depth (λM)_p = {}, depth R_p = {dr}",
                p.label,
                show(dm),
                show(dl)
            ));
            return Ok(Val::exact(false));
        }
    }
    Ok(Val::sampled(true))
}

fn thm_th2(cx: &mut Ctx) -> Step<()> {
    cx.require_linked()?;
    let m = cx.m.clone();
    let g = cx.require_gc_finite("G_C-dim M finite", &m)?;
    let lam = cx.lambda(&m)?;
    cx.require_auslander("λM ∈ A_C", &lam)?;
    let rhs = probe_depth_condition(cx, &lam, |dm, dl, dr| match (dm, dl) {
        (Some(a), Some(b)) => a + b > dr,
        _ => true,
    })?;
    cx.equiv(
        format!(
            "G_C-dim M = 0 ({}) ⟺ depth M_p + depth (λM)_p > depth R_p off X^0",
            g == 0
        ),
        Val::exact(g == 0),
        rhs,
    );
    Ok(())
}

fn cor_self(cx: &mut Ctx) -> Step<()> {
    let m = cx.m.clone();
    let lam = cx.lambda(&m)?;
    let iso = cx.e.is_isomorphic(&m, &lam)?;
    cx.hyp_bool(
        "M is horizontally self-linked",
        iso.is_isomorphic(),
        iso.kind(),
    )?;
    let g = cx.require_gc_finite("G_C-dim M finite", &m)?;
    cx.require_auslander("M ∈ A_C", &m)?;
    let rhs = probe_depth_condition(cx, &lam, |dm, _, dr| dm.is_none_or(|a| 2 * a > dr))?;
    cx.equiv(
        "G_C-dim M = 0 ⟺ depth M_p > depth R_p / 2 off X^0",
        Val::exact(g == 0),
        rhs,
    );
    Ok(())
}

fn require_positive_gc(cx: &mut Ctx) -> Step<usize> {
    let m = cx.m.clone();
    let g = cx.require_gc_finite("G_C-dim M finite", &m)?;
    cx.hyp_bool("G_C-dim M positive", g > 0, "G_C-dim M = 0")?;
    Ok(g)
}

fn thm_th3(cx: &mut Ctx) -> Step<()> {
    cx.require_linked()?;
    require_positive_gc(cx)?;
    let m = cx.m.clone();
    let lam = cx.lambda(&m)?;
    cx.require_auslander("λM ∈ A_C", &lam)?;
    let unit = cx.unit();
    let b = cx.b;
    let t = match cx.e.reduced_grade(&lam, &unit, b)? {
        BoundedIndex::Exact(t) => t,
        BoundedIndex::InfinityUpTo(_) => {
            return Err(Halt::Skip(format!("rgr(λM) exceeds the bound {b}")))
        }
    };
    let tr = cx.e.transpose(&m)?;
    let mut ntf = 0;
    while ntf < b && cx.e.ext_vanishes(&tr, &unit, ntf + 1)? {
        ntf += 1;
    }
    let dm = cx.depth(&m)?.unwrap_or(usize::MAX);
    cx.notes.push(format!(
        "syz(M) replaced by the torsion-free degree {ntf} (equal under finite G-dimension); rgr(λM) = {t}, depth M = {dm}"
    ));
    cx.fact(
        format!("rgr(λM) = {t} ≤ torsion-free degree {ntf} ≤ depth M = {dm}"),
        t <= ntf && ntf <= dm,
        true,
    );
    let i = dm == ntf && ntf == t;
    let e_t = cx.e.ext(&lam, &unit, t)?;
    let ii = cx.e.m_in_ass(&e_t)?;
    let probes = cx.probes.clone();
    let mut iii = Val::sampled(true);
    for p in &probes {
        let Some(dr) = cx.depth_r_at(p)? else {
            continue;
        };
        let Some(dp) = cx.e.depth_at_prime(&m, p)? else {
            continue;
        };
        if dr > dp && dm > dp {
            cx.notes
                .push(format!("at {}: depth M_p = {dp} < depth M", p.label));
            iii = Val::exact(false);
            break;
        }
    }
    cx.equiv(
        "depth M = syz M = rgr(λM) ⟺ m ∈ Ass Ext^t(λM,R)",
        Val::exact(i),
        Val::exact(ii),
    );
    cx.equiv(
        "m ∈ Ass Ext^t(λM,R) ⟺ depth M ≤ depth M_p on ng(M)",
        Val::exact(ii),
        iii,
    );
    Ok(())
}

fn thm_th6(cx: &mut Ctx) -> Step<()> {
    cx.require_linked()?;
    let m = cx.m.clone();
    cx.require_gc_finite("G_C-dim M finite", &m)?;
    let lam = cx.lambda(&m)?;
    cx.require_auslander("λM ∈ A_C", &lam)?;
    let (b, c, unit) = (cx.b, cx.c.clone(), cx.unit());
    let r = cx.e.reduced_grade(&m, &c, b)?;
    let probes = cx.probes.clone();
    let mut values = Vec::new();
    for p in &probes {
        let Some(dr) = cx.depth_r_at(p)? else {
            continue;
        };
        let Some(dp) = cx.e.depth_at_prime(&m, p)? else {
            continue;
        };
        if dr > dp {
            values.push((p.label.clone(), cx.e.depth_at_prime(&lam, p)?));
        }
    }
    let bound_ok = values.iter().all(|(_, v)| match (r, v) {
        (_, None) => true,
        (BoundedIndex::Exact(x), Some(y)) => x <= *y,
        (BoundedIndex::InfinityUpTo(bb), Some(y)) => *y > bb,
    });
    cx.fact(
        format!("rgr(M,C) = {r:?} ≤ depth (λM)_p at every probe in ng(M)"),
        bound_ok,
        true,
    );
    let attained = match r {
        BoundedIndex::Exact(x) => values.iter().any(|(_, v)| *v == Some(x)),
        BoundedIndex::InfinityUpTo(_) => values.iter().all(|(_, v)| v.is_none()),
    };
    cx.fact("infimum attained at a probe prime", attained, attained);
    let rr = cx.e.reduced_grade(&m, &unit, b)?;
    let le = match (rr, r) {
        (BoundedIndex::Exact(x), BoundedIndex::Exact(y)) => x <= y,
        (_, BoundedIndex::InfinityUpTo(_)) => true,
        (BoundedIndex::InfinityUpTo(_), BoundedIndex::Exact(_)) => false,
    };
    cx.fact(format!("rgr(M) = {rr:?} ≤ rgr(M,C) = {r:?}"), le, true);
    let depth_r = cx.ring.invariants()?.depth;
    let res = cx.e.resolution(&lam, depth_r + 1)?;
    if res.complete || res.rank(depth_r + 1) == 0 {
        cx.fact("pd λM < ∞ ⇒ rgr(M) = rgr(M,C)", rr == r, true);
    }
    Ok(())
}

fn prop_xtm(cx: &mut Ctx) -> Step<()> {
    cx.require_linked()?;
    require_positive_gc(cx)?;
    let m = cx.m.clone();
    let lam = cx.lambda(&m)?;
    cx.require_auslander("λM ∈ A_C", &lam)?;
    let (b, c, unit) = (cx.b, cx.c.clone(), cx.unit());
    let r1 = cx.e.reduced_grade(&m, &c, b)?;
    let r2 = cx.e.reduced_grade(&lam, &unit, b)?;
    let t = match (r1, r2) {
        (BoundedIndex::Exact(a), BoundedIndex::Exact(b)) => a + b,
        _ => usize::MAX,
    };
    cx.notes.push(format!(
        "t_M = {}",
        if t == usize::MAX {
            "∞".into()
        } else {
            t.to_string()
        }
    ));
    let probes = cx.probes.clone();
    let mut ok = Val::sampled(true);
    for p in &probes {
        let Some(dr) = cx.depth_r_at(p)? else {
            continue;
        };
        if dr + 1 > t {
            continue;
        }
        let Some(dp) = cx.e.depth_at_prime(&m, p)? else {
            continue;
        };
        if dr > dp {
            cx.notes
                .push(format!("at {}: G_C-dim M_p = {}", p.label, dr - dp));
            ok = Val::exact(false);
            break;
        }
    }
    cx.fact("G_C-dim M_p = 0 on X^{t_M - 1}(R)", ok.v, ok.exact);
    Ok(())
}

fn thm_th4(cx: &mut Ctx) -> Step<()> {
    cx.require_cm()?;
    let m = cx.m.clone();
    let c = cx.c.clone();
    let rp = cx.e.is_reduced_gc_perfect(&m, &c, cx.b)?;
    let status = match rp {
        BoundedVerdict::False { witness } => HypothesisStatus::Failed { detail: witness },
        _ => HypothesisStatus::BoundedTrue { bound: cx.b },
    };
    cx.hyp("M is reduced G_C-perfect", status)?;
    let n = cx.gc_dim(&m)?.value().unwrap();
    let lam = cx.lambda(&m)?;
    cx.require_auslander("λM ∈ A_C", &lam)?;
    let e = cx.e.ext(&m, &c, n)?;
    let lhs = add(cx.depth(&m)?, cx.depth(&lam)?);
    let depth_r = cx.ring.invariants()?.depth;
    let rhs = cx.depth(&e)?.map(|x| x + depth_r);
    if lhs.is_none() || rhs.is_none() {
        return Err(Halt::Skip("a zero module enters the depth formula".into()));
    }
    cx.fact(
        format!(
            "depth M + depth λM = {} = depth R + depth Ext^{n}(M,C) = {}",
            show(lhs),
            show(rhs)
        ),
        lhs == rhs,
        true,
    );
    Ok(())
}

fn thm_th7(cx: &mut Ctx) -> Step<()> {
    cx.require_linked()?;
    let n = require_positive_gc(cx)?;
    let m = cx.m.clone();
    let lam = cx.lambda(&m)?;
    cx.require_auslander("λM ∈ A_C", &lam)?;
    let c = cx.c.clone();
    let r = cx.e.reduced_grade(&m, &c, cx.b)?;
    let perfect = r == BoundedIndex::Exact(n);
    let s = cx.serre(&lam, n)?;
    cx.equiv(
        format!("rgr(M,C) = {n} ⟺ λM satisfies S̃_{n}"),
        Val::exact(perfect),
        s,
    );
    Ok(())
}

fn cor_cor1(cx: &mut Ctx) -> Step<()> {
    let d = cx.require_cm()?;
    cx.require_linked()?;
    let m = cx.m.clone();
    let n = cx.depth(&m)?.unwrap_or(usize::MAX);
    cx.hyp_bool("depth M < dim R", n < d, format!("depth M = {n}"))?;
    let lam = cx.lambda(&m)?;
    let status = cx.gdim_status(&lam)?;
    cx.hyp("G-dim λM finite", status)?;
    let em = cx.e.is_eilenberg_maclane(&m)?;
    let s = cx.serre(&lam, d - n)?;
    cx.equiv(
        format!("M Eilenberg-Maclane ⟺ λM satisfies S̃_{}", d - n),
        Val::exact(em),
        s,
    );
    Ok(())
}

fn cor_cor4(cx: &mut Ctx) -> Step<()> {
    let d = cx.require_cm()?;
    cx.require_linked()?;
    let m = cx.m.clone();
    let cm = cx.e.is_cm(&m)?;
    cx.hyp_bool("M is not Cohen-Macaulay", !cm, "M is Cohen-Macaulay")?;
    let em = cx.e.is_eilenberg_maclane(&m)?;
    cx.hyp_bool(
        "M is Eilenberg-Maclane",
        em,
        "more than two local cohomology degrees",
    )?;
    let lam = cx.lambda(&m)?;
    let status = cx.gdim_status(&lam)?;
    cx.hyp("G-dim λM finite", status)?;
    let dm = cx.depth(&m)?.unwrap_or(0);
    let gcm = cx.e.is_generalized_cm(&m)?;
    let eq = cx.depth(&lam)?.map(|x| x + dm) == Some(d);
    let ineq = non_cm_probe_inequality(cx, &lam, dm, d)?;
    cx.equiv(
        "M generalized CM ⟺ depth λM + depth M = d ∧ probe inequalities",
        Val::exact(gcm),
        Val::exact(eq).and(ineq),
    );
    Ok(())
}

fn remark3_i(cx: &mut Ctx) -> Step<()> {
    let m = cx.m.clone();
    let c = cx.c.clone();
    let tr = cx.e.transpose(&m)?;
    let lhs = cx.e.tensor(&tr, &c)?;
    let rhs = cx.e.transpose_wrt(&m, &c)?;
    let iso = cx.e.is_isomorphic(&lhs, &rhs)?;
    match &iso {
        IsoVerdict::Unknown(note) => {
            cx.fact(format!("Tr M ⊗ C ≅ Tr_C M unresolved: {note}"), true, false)
        }
        other => cx.fact(
            format!("Tr M ⊗ C ≅ Tr_C M ({})", other.kind()),
            other.is_isomorphic(),
            true,
        ),
    }
    Ok(())
}

fn g3_ab_formula(cx: &mut Ctx) -> Step<()> {
    let m = cx.m.clone();
    if m.ngens() == 0 {
        return Err(Halt::Skip("zero module".into()));
    }
    let r = cx.require_gc_finite("G_C-dim M finite", &m)?;
    let depth_r = cx.ring.invariants()?.depth;
    let dm = cx.depth(&m)?.unwrap();
    cx.fact(
        format!(
            "G_C-dim M = {r} = depth R - depth M = {}",
            depth_r as i64 - dm as i64
        ),
        r as i64 == depth_r as i64 - dm as i64,
        true,
    );
    let c = cx.c.clone();
    let mut sup = None;
    for i in 0..=cx.b {
        if !cx.e.ext_vanishes(&m, &c, i)? {
            sup = Some(i);
        }
    }
    cx.fact(
        format!(
            "G_C-dim M = {r} = sup{{i : Ext^i(M,C) ≠ 0}} = {}",
            show(sup)
        ),
        sup == Some(r),
        true,
    );
    Ok(())
}
