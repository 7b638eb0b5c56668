//! Built-in rings and a deterministic module corpus over each of them.

use std::collections::HashSet;

use super::Instance;
use crate::algebra::{Field, TermOrder, Vector};
use crate::engine::Engine;
use crate::error::Result;
use crate::module::Module;
use crate::ring::{Budget, Ring};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CorpusSize {
    Small,
    Full,
}

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub label: String,
    pub module: Module,
    /// How the module was built, e.g. `"lambda(R/(x^2))"`.
    pub provenance: String,
}

fn budget() -> Budget {
    Budget {
        max_degree: 24,
        max_rank: 2048,
    }
}

fn ring(name_vars: &[&str], rels: &[&str]) -> Ring {
    let s = Ring::quotient_raw(
        Field::Rationals,
        name_vars.iter().map(|v| v.to_string()).collect(),
        &[],
        budget(),
    )
    .expect("valid ring");
    let rels: Vec<Vector> = rels
        .iter()
        .map(|r| s.poly(r).expect("valid relation"))
        .collect();
    s.quotient(&rels).expect("valid ring")
}

/// `QQ[x,y]`, `QQ[x,y]/(xy)`, `QQ[x,y]/(x^2)` and `QQ[x,y,z]/(xy,xz,yz)`.
pub fn builtin_rings() -> Vec<(String, Ring)> {
    vec![
        ("S2".into(), ring(&["x", "y"], &[])),
        ("node".into(), ring(&["x", "y"], &["x*y"])),
        ("double_line".into(), ring(&["x", "y"], &["x^2"])),
        (
            "axes3".into(),
            ring(&["x", "y", "z"], &["x*y", "x*z", "y*z"]),
        ),
    ]
}

struct Builder<'a> {
    ring: &'a Ring,
    out: Vec<CorpusEntry>,
    seen: HashSet<String>,
}

impl Builder<'_> {
    fn p(&self, s: &str) -> Vector {
        self.ring.poly(s).expect("corpus polynomial")
    }

    fn push(&mut self, label: &str, provenance: &str, m: Module) -> Result<()> {
        let key = m.minimal()?.key()?;
        if self.seen.insert(key) {
            self.push_raw(label, provenance, m);
        }
        Ok(())
    }

    /// Kept even when isomorphic to an earlier entry: the presentation is the point.
    fn push_raw(&mut self, label: &str, provenance: &str, m: Module) {
        self.out.push(CorpusEntry {
            label: label.to_string(),
            module: m,
            provenance: provenance.to_string(),
        });
    }

    fn cyclic(&mut self, gens: &[&str]) -> Result<()> {
        let ideal: Vec<Vector> = gens.iter().map(|g| self.p(g)).collect();
        let m = Module::cyclic(self.ring, &ideal)?;
        let label = format!("R/({})", gens.join(","));
        self.push(&label, "cyclic quotient", m)
    }

    fn ideal(&mut self, gens: &[&str]) -> Result<()> {
        let ideal: Vec<Vector> = gens.iter().map(|g| self.p(g)).collect();
        if ideal.iter().all(|g| self.ring.reduce(g).is_zero()) {
            return Ok(());
        }
        let m = Module::ideal(self.ring, &ideal)?;
        let label = format!("({})", gens.join(","));
        self.push(&label, "ideal", m)
    }
}

/// Deterministic corpus over `ring`. Entries with equal minimal presentations are
/// dropped, except the deliberately redundant presentations.
pub fn generate_corpus(e: &Engine, ring: &Ring, size: CorpusSize) -> Result<Vec<CorpusEntry>> {
    let mut b = Builder {
        ring,
        out: Vec::new(),
        seen: HashSet::new(),
    };
    let vars: Vec<String> = ring.vars().to_vec();
    let x = vars[0].as_str();
    let y = vars[1].as_str();
    let z = vars.last().unwrap().as_str();
    let all: Vec<&str> = vars.iter().map(|s| s.as_str()).collect();
    let x2 = format!("{x}^2");
    let y2 = format!("{y}^2");
    let z2 = format!("{z}^2");
    let xpy = format!("{x}+{y}");
    let xy = format!("{x}*{y}");

    b.push("R", "free", Module::free(ring, &[0]))?;
    b.cyclic(&all)?;
    b.cyclic(&[x])?;
    b.cyclic(&[y])?;
    b.cyclic(&[&x2])?;
    b.cyclic(&[x, &y2])?;
    b.ideal(&all)?;
    b.ideal(&[x])?;
    let top = TermOrder::top();
    let k = Module::cyclic(ring, &all.iter().map(|v| b.p(v)).collect::<Vec<_>>())?;
    b.push("Tr k", "transpose of k", e.transpose(&k)?)?;
    b.push("lambda(k)", "link of k", e.lambda(&k)?)?;
    // R presented on a redundant generator e_1 = x e_0
    let col = Vector::unit(1, ring.field()).sub(&b.p(x), &top);
    b.push_raw(
        "R[redundant]",
        "R on generators of degree 0,1 modulo e1 - x e0",
        Module::new(ring, vec![0, 1], vec![col])?,
    );
    if size == CorpusSize::Small {
        return Ok(b.out);
    }

    b.cyclic(&[&xpy])?;
    b.cyclic(&[&xy])?;
    b.cyclic(&[&x2, &xy])?;
    b.cyclic(&[&x2, &y2])?;
    b.cyclic(&[y, &z2])?;
    b.ideal(&[&x2, y])?;
    b.ideal(&[&xpy])?;
    b.push("Omega k", "first syzygy of k", e.syzygy(&k, 1)?)?;
    b.push("Omega^2 k", "second syzygy of k", e.syzygy(&k, 2)?)?;
    let rx2 = Module::cyclic(ring, &[b.p(&x2)])?;
    b.push("lambda(R/(x^2))", "link of R/(x^2)", e.lambda(&rx2)?)?;
    let rx = Module::cyclic(ring, &[b.p(x)])?;
    let ry = Module::cyclic(ring, &[b.p(y)])?;
    b.push("R/(x)+R/(y)", "direct sum", rx.direct_sum(&ry)?)?;
    b.push(
        "k+R",
        "direct sum with a free summand",
        k.direct_sum(&Module::free(ring, &[0]))?,
    )?;
    b.push("R/(x)(1)", "twist", rx.twist(1))?;
    b.push("R^2(0,-1)", "free", Module::free(ring, &[0, 1]))?;
    // R/(x) on a redundant generator e_1 = y e_0
    let col = Vector::unit(1, ring.field()).sub(&b.p(y), &top);
    b.push_raw(
        "R/(x)[redundant]",
        "R/(x) on generators of degree 0,1 modulo e1 - y e0, x e0",
        Module::new(ring, vec![0, 1], vec![col, b.p(x)])?,
    );
    Ok(b.out)
}

/// Every corpus module with `C = R`; on non-Gorenstein Cohen-Macaulay rings also with `C = ω`.
pub fn builtin_corpus(e: &Engine) -> Result<Vec<Instance>> {
    let mut out = Vec::new();
    for (name, ring) in builtin_rings() {
        let entries = generate_corpus(e, &ring, CorpusSize::Full)?;
        let inv = ring.invariants()?;
        let omega = if inv.is_cm && !inv.is_gorenstein {
            Some(e.canonical_module(&ring)?)
        } else {
            None
        };
        for entry in &entries {
            out.push(Instance::new(
                format!("{name}:{}", entry.label),
                entry.module.clone(),
            ));
        }
        if let Some(w) = omega {
            for entry in &entries {
                out.push(
                    Instance::new(
                        format!("{name}:{} [C=ω]", entry.label),
                        entry.module.clone(),
                    )
                    .with_c(w.clone()),
                );
            }
        }
    }
    Ok(out)
}
