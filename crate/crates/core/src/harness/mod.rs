//! Named theorem checks: hypotheses are evaluated first, then both sides of the
//! claimed equivalence or equality on a concrete instance.

mod checks;
mod corpus;

use std::fmt;
use std::time::Duration;

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::Vector;
use crate::engine::Engine;
use crate::error::Result;
use crate::module::Module;

pub use corpus::{builtin_corpus, builtin_rings, generate_corpus, CorpusEntry, CorpusSize};

macro_rules! theorem_ids {
    ($($variant:ident => $name:literal),* $(,)?) => {
        #[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
        pub enum TheoremId {
            $(#[serde(rename = $name)] $variant,)*
        }

        impl TheoremId {
            pub const ALL: &'static [TheoremId] = &[$(TheoremId::$variant,)*];

            pub fn name(self) -> &'static str {
                match self {
                    $(TheoremId::$variant => $name,)*
                }
            }

            pub fn parse(s: &str) -> Option<TheoremId> {
                match s {
                    $($name => Some(TheoremId::$variant),)*
                    _ => None,
                }
            }
        }
    };
}

theorem_ids! {
    ThmMs => "THM_MS",
    PropT1 => "PROP_T1",
    PropP3 => "PROP_P3",
    PropT13 => "PROP_T13",
    CorC2 => "COR_C2",
    LemLem2 => "LEM_LEM2",
    ThmTh5 => "THM_TH5",
    CorCor7 => "COR_COR7",
    ThmTheorem1 => "THM_THEOREM1",
    ThmThe1 => "THM_THE1",
    CorTheorem3 => "COR_THEOREM3",
    ThmPropEven => "THM_PROP_EVEN",
    ThmTh1 => "THM_TH1",
    CorCor5 => "COR_COR5",
    CorCor6 => "COR_COR6",
    ThmCor3 => "THM_COR3",
    ThmTh2 => "THM_TH2",
    CorSelf => "COR_SELF",
    ThmTh3 => "THM_TH3",
    ThmTh6 => "THM_TH6",
    PropXtm => "PROP_XTM",
    ThmTh4 => "THM_TH4",
    ThmTh7 => "THM_TH7",
    CorCor1 => "COR_COR1",
    CorCor4 => "COR_COR4",
    Remark3I => "REMARK3_I",
    G3AbFormula => "G3_AB_FORMULA",
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status")]
pub enum HypothesisStatus {
    Exact,
    BoundedTrue { bound: usize },
    ProbeVerified { probes: Vec<String> },
    Failed { detail: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Hypothesis {
    pub hypothesis: String,
    #[serde(flatten)]
    pub status: HypothesisStatus,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum Verdict {
    Verified,
    Refuted { witness: String },
    Inapplicable { reason: String },
    PartiallyVerified { detail: String },
}

impl Verdict {
    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Verified => "Verified",
            Verdict::Refuted { .. } => "Refuted",
            Verdict::Inapplicable { .. } => "Inapplicable",
            Verdict::PartiallyVerified { .. } => "PartiallyVerified",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TheoremReport {
    pub id: TheoremId,
    pub instance: String,
    pub hypothesis_status: Vec<Hypothesis>,
    pub verdict: Verdict,
    /// The conclusion failed but some hypothesis is only bounded or probe-verified.
    pub suspected_counterexample: bool,
    pub notes: Vec<String>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl TheoremReport {
    /// Refuted with every hypothesis exact: a genuine counterexample (or a bug).
    pub fn is_exact_refutation(&self) -> bool {
        matches!(self.verdict, Verdict::Refuted { .. })
            && !self.suspected_counterexample
            && self
                .hypothesis_status
                .iter()
                .all(|h| h.status == HypothesisStatus::Exact)
    }
}

/// Concrete data a check runs on. Missing pieces get defaults: `C = R`,
/// `n ∈ {1, 2, 3}`, ideals derived from the module.
#[derive(Clone, Debug)]
pub struct Instance {
    pub label: String,
    pub module: Module,
    pub c: Option<Module>,
    pub n: Option<usize>,
    pub ideals: Vec<Vec<Vector>>,
}

impl Instance {
    pub fn new(label: impl Into<String>, module: Module) -> Instance {
        Instance {
            label: label.into(),
            module,
            c: None,
            n: None,
            ideals: Vec::new(),
        }
    }

    pub fn with_c(mut self, c: Module) -> Instance {
        self.c = Some(c);
        self
    }

    pub fn with_n(mut self, n: usize) -> Instance {
        self.n = Some(n);
        self
    }

    pub fn with_ideal(mut self, ideal: Vec<Vector>) -> Instance {
        self.ideals.push(ideal);
        self
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SuiteSummary {
    pub total: usize,
    pub verified: usize,
    pub refuted: usize,
    pub refuted_exact: usize,
    pub inapplicable: usize,
    pub partial: usize,
    pub suspected: usize,
}

impl SuiteSummary {
    pub fn passed(&self) -> bool {
        self.refuted_exact == 0
    }

    fn count(reports: &[TheoremReport]) -> SuiteSummary {
        let mut s = SuiteSummary {
            total: reports.len(),
            ..Default::default()
        };
        for r in reports {
            match r.verdict {
                Verdict::Verified => s.verified += 1,
                Verdict::Refuted { .. } => s.refuted += 1,
                Verdict::Inapplicable { .. } => s.inapplicable += 1,
                Verdict::PartiallyVerified { .. } => s.partial += 1,
            }
            if r.is_exact_refutation() {
                s.refuted_exact += 1;
            }
            if r.suspected_counterexample {
                s.suspected += 1;
            }
        }
        s
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteResult {
    pub reports: Vec<TheoremReport>,
    pub summary: SuiteSummary,
}

/// Runs one check. Errors are reserved for malformed bindings.
pub fn check(engine: &Engine, id: TheoremId, inst: &Instance) -> Result<TheoremReport> {
    checks::run(engine, id, inst)
}

/// Every id on every instance; report order is instance-major regardless of scheduling.
pub fn run_suite(engine: &Engine, instances: &[Instance], ids: &[TheoremId]) -> SuiteResult {
    let jobs: Vec<(usize, TheoremId)> = (0..instances.len())
        .flat_map(|i| ids.iter().map(move |&id| (i, id)))
        .collect();
    let reports: Vec<TheoremReport> = jobs
        .par_iter()
        .map(|&(i, id)| {
            let inst = &instances[i];
            check(engine, id, inst).unwrap_or_else(|e| TheoremReport {
                id,
                instance: inst.label.clone(),
                hypothesis_status: Vec::new(),
                verdict: Verdict::Inapplicable {
                    reason: e.to_string(),
                },
                suspected_counterexample: false,
                notes: Vec::new(),
                elapsed: Duration::ZERO,
            })
        })
        .collect();
    let summary = SuiteSummary::count(&reports);
    SuiteResult { reports, summary }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Field;
    use crate::ring::Ring;

    fn s2() -> Ring {
        Ring::polynomial(Field::Rationals, &["x", "y"]).unwrap()
    }

    fn node() -> Ring {
        let s = s2();
        s.quotient(&[s.poly("x*y").unwrap()]).unwrap()
    }

    fn cyclic(r: &Ring, gens: &[&str]) -> Module {
        let g: Vec<Vector> = gens.iter().map(|s| r.poly(s).unwrap()).collect();
        Module::cyclic(r, &g).unwrap()
    }

    fn verdict(id: TheoremId, inst: Instance) -> TheoremReport {
        check(&Engine::default(), id, &inst).unwrap()
    }

    #[test]
    fn ids_round_trip() {
        assert_eq!(TheoremId::ALL.len(), 27);
        for &id in TheoremId::ALL {
            assert_eq!(TheoremId::parse(id.name()), Some(id));
        }
        assert_eq!(TheoremId::parse("THM_NOPE"), None);
    }

    #[test]
    fn linked_cyclic_module() {
        let r = node();
        let rep = verdict(TheoremId::ThmMs, Instance::new("R/(x)", cyclic(&r, &["x"])));
        assert_eq!(rep.verdict, Verdict::Verified);
        let rep = verdict(
            TheoremId::CorCor5,
            Instance::new("R/(x)", cyclic(&r, &["x"])),
        );
        assert_eq!(rep.verdict, Verdict::Verified, "{rep:?}");
    }

    #[test]
    fn free_module_equivalence_of_falsehoods() {
        let r = node();
        let rep = verdict(TheoremId::ThmMs, Instance::new("R", Module::free(&r, &[0])));
        assert_eq!(rep.verdict, Verdict::Verified);
    }

    #[test]
    fn auslander_buchsbaum_on_residue_field() {
        let s = s2();
        let rep = verdict(
            TheoremId::G3AbFormula,
            Instance::new("k", cyclic(&s, &["x", "y"])),
        );
        assert_eq!(rep.verdict, Verdict::Verified, "{rep:?}");
    }

    #[test]
    fn hypotheses_gate_conclusions() {
        let s = s2();
        // torsion module over a domain: not linked
        let rep = verdict(
            TheoremId::PropP3,
            Instance::new("S/(x)", cyclic(&s, &["x"])),
        );
        assert!(matches!(rep.verdict, Verdict::Inapplicable { .. }));
        assert!(matches!(
            rep.hypothesis_status.last().unwrap().status,
            HypothesisStatus::Failed { .. }
        ));
        let zero = verdict(TheoremId::ThmTh1, Instance::new("0", Module::zero(&s)));
        assert!(matches!(zero.verdict, Verdict::Inapplicable { .. }));
    }

    #[test]
    fn suite_edges() {
        let e = Engine::default();
        let empty = run_suite(&e, &[], TheoremId::ALL);
        assert!(empty.reports.is_empty());
        assert_eq!(empty.summary, SuiteSummary::default());
        let one = run_suite(
            &e,
            &[Instance::new("R", Module::free(&s2(), &[0]))],
            &[TheoremId::ThmMs],
        );
        assert_eq!(one.summary.total, 1);
        assert_eq!(one.summary.verified, 1);
        assert!(one.summary.passed());
    }

    #[test]
    fn fault_is_detected() {
        let mut cfg = crate::engine::Config::default();
        cfg.faults.skip_transpose_minimalization = true;
        let e = Engine::new(cfg);
        let r = node();
        let corpus: Vec<Instance> = generate_corpus(&e, &r, CorpusSize::Small)
            .unwrap()
            .into_iter()
            .map(|c| Instance::new(c.label, c.module))
            .collect();
        let res = run_suite(&e, &corpus, &[TheoremId::ThmMs]);
        assert!(res.summary.refuted_exact >= 1);
        assert!(!res.summary.passed());
    }

    #[test]
    fn small_corpus_contents() {
        let e = Engine::default();
        let s = s2();
        let labels: Vec<String> = generate_corpus(&e, &s, CorpusSize::Small)
            .unwrap()
            .into_iter()
            .map(|c| c.label)
            .collect();
        for want in ["R/(x,y)", "R/(x)", "(x,y)"] {
            assert!(
                labels.iter().any(|l| l == want),
                "{want} missing from {labels:?}"
            );
        }
        let full = generate_corpus(&e, &s, CorpusSize::Full).unwrap();
        assert!(full.iter().any(|c| c.label == "Omega k"));
        let r = node();
        let labels: Vec<String> = generate_corpus(&e, &r, CorpusSize::Small)
            .unwrap()
            .into_iter()
            .map(|c| c.label)
            .collect();
        for want in ["R/(x)", "R/(y)", "R/(x,y)"] {
            assert!(
                labels.iter().any(|l| l == want),
                "{want} missing from {labels:?}"
            );
        }
        for entry in full {
            let m = entry.module.minimal().unwrap();
            assert!(m.is_known_minimal());
        }
    }
}
