//! Shared fixtures for the criterion benches.

use linkage_core::algebra::{Field, Vector};
use linkage_core::harness::{builtin_rings, generate_corpus, CorpusSize, Instance};
use linkage_core::ring::Ring;
use linkage_core::{Engine, Module};

/// `QQ[x1..xn]`.
pub fn polynomial_ring(n: usize) -> Ring {
    let names: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    let vars: Vec<&str> = names.iter().map(String::as_str).collect();
    Ring::polynomial(Field::Rationals, &vars).expect("valid ring")
}

/// The residue field `R/(x1..xn)`.
pub fn residue_field(ring: &Ring) -> Module {
    let vars: Vec<Vector> = (0..ring.nvars()).map(|i| ring.var(i)).collect();
    Module::cyclic(ring, &vars).expect("valid module")
}

pub fn named_ring(name: &str) -> Ring {
    builtin_rings()
        .into_iter()
        .find(|(n, _)| n == name)
        .map(|(_, r)| r)
        .unwrap_or_else(|| panic!("no built-in ring {name}"))
}

/// The small corpus over a built-in ring, as suite instances with `C = R`.
pub fn small_instances(e: &Engine, ring: &str) -> Vec<Instance> {
    generate_corpus(e, &named_ring(ring), CorpusSize::Small)
        .expect("corpus builds")
        .into_iter()
        .map(|c| Instance::new(c.label, c.module))
        .collect()
}

/// Generic-looking quadrics in `n` variables for Groebner timings.
pub fn quadrics(ring: &Ring) -> Vec<Vector> {
    let v: Vec<String> = ring.vars().to_vec();
    let n = v.len();
    (0..n)
        .map(|i| {
            let a = &v[i];
            let b = &v[(i + 1) % n];
            let c = &v[(i + 2) % n];
            ring.poly(&format!("{a}^2 - {b}*{c} + 3*{a}*{b}"))
                .expect("valid quadric")
        })
        .collect()
}
