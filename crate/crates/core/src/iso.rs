//! Isomorphism testing through degree-zero homomorphisms.
//!
//! Both modules are minimally presented first. A degree-0 map between minimally
//! presented modules is surjective iff its constant part (the scalar matrix
//! between generators of equal degree) is invertible; with equal Hilbert series
//! it is then an isomorphism.

use std::collections::BTreeMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{DenseMatrix, Monomial, Scalar, TermOrder, Vector};
use crate::error::{Error, Result};
use crate::module::{coefficient, combine, Module};

/// Images of the generators of `source` in `target`; both minimally presented.
#[derive(Clone, Debug)]
pub struct IsoWitness {
    pub source: Module,
    pub target: Module,
    pub forward: Vec<Vector>,
    pub backward: Vec<Vector>,
}

#[derive(Clone, Debug)]
pub enum IsoVerdict {
    Isomorphic(Box<IsoWitness>),
    NotIsomorphic(String),
    Unknown(String),
}

impl IsoVerdict {
    pub fn is_isomorphic(&self) -> bool {
        matches!(self, IsoVerdict::Isomorphic(_))
    }

    pub fn is_resolved(&self) -> bool {
        !matches!(self, IsoVerdict::Unknown(_))
    }

    pub fn kind(&self) -> &'static str {
        match self {
            IsoVerdict::Isomorphic(_) => "Isomorphic",
            IsoVerdict::NotIsomorphic(_) => "NotIsomorphic",
            IsoVerdict::Unknown(_) => "Unknown",
        }
    }

    /// Human-readable witness, certificate or note.
    pub fn detail(&self) -> String {
        match self {
            IsoVerdict::Isomorphic(w) => w.to_string(),
            IsoVerdict::NotIsomorphic(s) | IsoVerdict::Unknown(s) => s.clone(),
        }
    }
}

impl fmt::Display for IsoWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vars = self.source.ring().vars();
        let show = |v: &[Vector]| -> String {
            let cols: Vec<String> = v
                .iter()
                .map(|c| {
                    let n = c
                        .terms
                        .iter()
                        .map(|t| t.pos as usize + 1)
                        .max()
                        .unwrap_or(0);
                    let comps: Vec<String> = c
                        .components(n)
                        .iter()
                        .map(|p| p.format_poly(vars))
                        .collect();
                    format!("({})", comps.join(", "))
                })
                .collect();
            format!("[{}]", cols.join(", "))
        };
        write!(
            f,
            "forward {} backward {}",
            show(&self.forward),
            show(&self.backward)
        )
    }
}

/// `φ(v)` reduced in the target.
fn apply(images: &[Vector], v: &Vector, target: &Module) -> Result<Vector> {
    if v.is_zero() {
        return Ok(Vector::zero());
    }
    target.normal_form(&combine(images, v))
}

/// Whether the generator images define a homomorphism `source -> target`.
pub fn is_homomorphism(images: &[Vector], source: &Module, target: &Module) -> Result<bool> {
    if images.len() != source.ngens() {
        return Ok(false);
    }
    for col in source.columns() {
        if !apply(images, col, target)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// k-basis of `Hom(M, N)_0`, each element given by the images of the generators of `m`.
pub fn hom0_basis(m: &Module, n: &Module) -> Result<Vec<Vec<Vector>>> {
    let field = m.ring().field();
    let top = TermOrder::top();
    let mut unknowns: Vec<(usize, Monomial, u32)> = Vec::new();
    for (i, &g) in m.gens().iter().enumerate() {
        for (mono, p) in n.basis_in_degree(g)? {
            unknowns.push((i, mono, p));
        }
    }
    if unknowns.is_empty() {
        return Ok(vec![]);
    }
    // one block of equations per relation of m
    let mut row_index: BTreeMap<(usize, Vec<u32>, u32), usize> = BTreeMap::new();
    let mut entries: Vec<(usize, usize, Scalar)> = Vec::new();
    let nv = m.ring().nvars();
    for (j, col) in m.columns().iter().enumerate() {
        for (u, (i, mono, p)) in unknowns.iter().enumerate() {
            let rij = col.component(*i as u32);
            if rij.is_zero() {
                continue;
            }
            let img = n.normal_form(&Vector::term(*mono, *p, field.one()).mul_poly(&rij, &top))?;
            for t in &img.terms {
                let key = (j, t.m.exponents(nv), t.pos);
                let len = row_index.len();
                let r = *row_index.entry(key).or_insert(len);
                entries.push((r, u, t.c.clone()));
            }
        }
    }
    let mut a = DenseMatrix::zeros(field, row_index.len().max(1), unknowns.len());
    for (r, c, v) in entries {
        let cur = a.get(r, c).add(&v);
        a.set(r, c, cur);
    }
    let null = a.nullspace();
    Ok(null
        .into_iter()
        .map(|coeffs| {
            let mut images: Vec<Vec<crate::algebra::Term>> = vec![Vec::new(); m.ngens()];
            for (u, c) in coeffs.into_iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let (i, mono, p) = &unknowns[u];
                images[*i].push(crate::algebra::Term {
                    m: *mono,
                    pos: *p,
                    c,
                });
            }
            images
                .into_iter()
                .map(|t| Vector::from_terms(t, &top))
                .collect()
        })
        .collect())
}

/// Generator indices grouped by degree.
fn degree_blocks(gens: &[i32]) -> BTreeMap<i32, Vec<usize>> {
    let mut out: BTreeMap<i32, Vec<usize>> = BTreeMap::new();
    for (i, &g) in gens.iter().enumerate() {
        out.entry(g).or_default().push(i);
    }
    out
}

fn constant_block(
    images: &[Vector],
    src: &[usize],
    tgt: &[usize],
    field: crate::algebra::Field,
) -> DenseMatrix {
    let mut a = DenseMatrix::zeros(field, src.len(), tgt.len());
    for (r, &i) in src.iter().enumerate() {
        for (c, &k) in tgt.iter().enumerate() {
            if let Some(v) = coefficient(&images[i], &Monomial::ONE, k as u32) {
                a.set(r, c, v);
            }
        }
    }
    a
}

fn sorted(v: &[i32]) -> Vec<i32> {
    let mut v = v.to_vec();
    v.sort_unstable();
    v
}

/// Solves `φ(x) = f_k` degreewise for every generator of the target.
fn invert(forward: &[Vector], m: &Module, n: &Module) -> Result<Option<Vec<Vector>>> {
    let field = m.ring().field();
    let nv = m.ring().nvars();
    let top = TermOrder::top();
    let mut backward = Vec::with_capacity(n.ngens());
    for (k, &h) in n.gens().iter().enumerate() {
        let basis = m.basis_in_degree(h)?;
        let images: Vec<Vector> = basis
            .iter()
            .map(|(mono, p)| apply(forward, &Vector::term(*mono, *p, field.one()), n))
            .collect::<Result<_>>()?;
        let target = n.normal_form(&Vector::unit(k as u32, field))?;
        let mut rows: BTreeMap<(Vec<u32>, u32), usize> = BTreeMap::new();
        for v in images.iter().chain(std::iter::once(&target)) {
            for t in &v.terms {
                let len = rows.len();
                rows.entry((t.m.exponents(nv), t.pos)).or_insert(len);
            }
        }
        let mut a = DenseMatrix::zeros(field, rows.len(), basis.len());
        for (c, v) in images.iter().enumerate() {
            for t in &v.terms {
                a.set(rows[&(t.m.exponents(nv), t.pos)], c, t.c.clone());
            }
        }
        let mut b = vec![field.zero(); rows.len()];
        for t in &target.terms {
            b[rows[&(t.m.exponents(nv), t.pos)]] = t.c.clone();
        }
        let Some(x) = a.solve(&b) else {
            return Ok(None);
        };
        let terms = x
            .into_iter()
            .zip(&basis)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, (mono, p))| crate::algebra::Term {
                m: *mono,
                pos: *p,
                c,
            })
            .collect();
        backward.push(Vector::from_terms(terms, &top));
    }
    Ok(Some(backward))
}

impl IsoWitness {
    /// Re-checks both maps and both composites.
    pub fn verify(&self) -> Result<bool> {
        let (m, n) = (&self.source, &self.target);
        if !is_homomorphism(&self.forward, m, n)? || !is_homomorphism(&self.backward, n, m)? {
            return Ok(false);
        }
        let field = m.ring().field();
        for i in 0..m.ngens() {
            let e = Vector::unit(i as u32, field);
            let back = apply(&self.backward, &apply(&self.forward, &e, n)?, m)?;
            if !m.normal_form(&back.sub(&e, &TermOrder::top()))?.is_zero() {
                return Ok(false);
            }
        }
        for k in 0..n.ngens() {
            let e = Vector::unit(k as u32, field);
            let fwd = apply(&self.forward, &apply(&self.backward, &e, m)?, n)?;
            if !n.normal_form(&fwd.sub(&e, &TermOrder::top()))?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Three-valued isomorphism test; `attempts` random combinations after the basis elements.
pub fn is_isomorphic(m: &Module, n: &Module, seed: u64, attempts: usize) -> Result<IsoVerdict> {
    if m.ring() != n.ring() {
        return Err(Error::Structural(
            "isomorphism test across different rings".into(),
        ));
    }
    let m = m.minimal()?;
    let n = n.minimal()?;
    let (hm, hn) = (m.hilbert_series()?, n.hilbert_series()?);
    if hm != hn {
        return Ok(IsoVerdict::NotIsomorphic(format!(
            "Hilbert series differ: {hm} vs {hn}"
        )));
    }
    if sorted(m.gens()) != sorted(n.gens()) {
        return Ok(IsoVerdict::NotIsomorphic(format!(
            "generator degrees differ: {:?} vs {:?}",
            sorted(m.gens()),
            sorted(n.gens())
        )));
    }
    if sorted(m.rels()) != sorted(n.rels()) {
        return Ok(IsoVerdict::NotIsomorphic(format!(
            "relation degrees differ: {:?} vs {:?}",
            sorted(m.rels()),
            sorted(n.rels())
        )));
    }
    if m.ngens() == 0 {
        return Ok(IsoVerdict::Isomorphic(Box::new(IsoWitness {
            source: m,
            target: n,
            forward: vec![],
            backward: vec![],
        })));
    }
    let field = m.ring().field();
    let basis = hom0_basis(&m, &n)?;
    let blocks_m = degree_blocks(m.gens());
    let blocks_n = degree_blocks(n.gens());
    if basis.is_empty() {
        return Ok(IsoVerdict::NotIsomorphic("Hom(M, N)_0 is zero".into()));
    }
    // If the constant parts of all of Hom_0 span too little, no combination is invertible.
    for (d, src) in &blocks_m {
        let tgt = &blocks_n[d];
        let mats: Vec<DenseMatrix> = basis
            .iter()
            .map(|b| constant_block(b, src, tgt, field))
            .collect();
        let mut rows = DenseMatrix::zeros(field, mats.len() * src.len(), tgt.len());
        let mut cols = DenseMatrix::zeros(field, mats.len() * tgt.len(), src.len());
        for (b, a) in mats.iter().enumerate() {
            for r in 0..src.len() {
                for c in 0..tgt.len() {
                    rows.set(b * src.len() + r, c, a.get(r, c).clone());
                    cols.set(b * tgt.len() + c, r, a.get(r, c).clone());
                }
            }
        }
        let (rr, cr) = (rows.rank(), cols.rank());
        if rr < tgt.len() || cr < src.len() {
            return Ok(IsoVerdict::NotIsomorphic(format!(
                "constant parts of Hom(M, N)_0 in degree {d} span rank {} < {}",
                rr.min(cr),
                src.len()
            )));
        }
    }
    let top = TermOrder::top();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let candidates = basis.len() + attempts;
    for t in 0..candidates {
        let phi: Vec<Vector> = if t < basis.len() {
            basis[t].clone()
        } else {
            let mut acc = vec![Vector::zero(); m.ngens()];
            for b in &basis {
                let c = field.from_i64(rng.gen_range(1..=97));
                for (a, v) in acc.iter_mut().zip(b) {
                    *a = a.add(&v.scale(&c), &top);
                }
            }
            acc
        };
        let invertible = blocks_m.iter().all(|(d, src)| {
            constant_block(&phi, src, &blocks_n[d], field).determinant_is_nonzero()
        });
        if !invertible {
            continue;
        }
        let Some(backward) = invert(&phi, &m, &n)? else {
            continue;
        };
        let w = IsoWitness {
            source: m.clone(),
            target: n.clone(),
            forward: phi,
            backward,
        };
        if w.verify()? {
            return Ok(IsoVerdict::Isomorphic(Box::new(w)));
        }
    }
    Ok(IsoVerdict::Unknown(format!(
        "no invertible element among {candidates} candidates in Hom(M, N)_0 of dimension {}",
        basis.len()
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Field;
    use crate::ring::Ring;

    fn s2() -> Ring {
        Ring::polynomial(Field::Rationals, &["x", "y"]).unwrap()
    }

    #[test]
    fn identity_witness() {
        let s = s2();
        let k = Module::cyclic(&s, &[s.var(0), s.var(1)]).unwrap();
        let v = is_isomorphic(&k, &k, 1, 4).unwrap();
        match v {
            IsoVerdict::Isomorphic(w) => assert!(w.verify().unwrap()),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn different_hilbert_series() {
        let s = s2();
        let x2 = s.var(0).mul_poly(&s.var(0), &TermOrder::top());
        let a = Module::cyclic(&s, &[s.var(0)]).unwrap();
        let b = Module::cyclic(&s, &[x2]).unwrap();
        assert!(matches!(
            is_isomorphic(&a, &b, 1, 4).unwrap(),
            IsoVerdict::NotIsomorphic(_)
        ));
    }

    #[test]
    fn principal_ideal_is_free() {
        let s = s2();
        let ideal = Module::ideal(&s, &[s.var(0)]).unwrap();
        let free = Module::free(&s, &[1]);
        assert!(is_isomorphic(&ideal, &free, 1, 4).unwrap().is_isomorphic());
    }

    #[test]
    fn swapped_generators() {
        let s = s2();
        let top = TermOrder::top();
        let a = Module::cyclic(&s, &[s.var(0)])
            .unwrap()
            .direct_sum(&Module::cyclic(&s, &[s.var(1)]).unwrap())
            .unwrap();
        let b = Module::cyclic(&s, &[s.var(1)])
            .unwrap()
            .direct_sum(&Module::cyclic(&s, &[s.var(0)]).unwrap())
            .unwrap();
        let v = is_isomorphic(&a, &b, 3, 8).unwrap();
        assert!(v.is_isomorphic(), "{v:?}");
        let c = Module::cyclic(&s, &[s.var(0)])
            .unwrap()
            .direct_sum(&Module::cyclic(&s, &[s.var(0).add(&s.var(1), &top)]).unwrap())
            .unwrap();
        let w = Module::cyclic(&s, &[s.var(0)])
            .unwrap()
            .direct_sum(&Module::cyclic(&s, &[s.var(0)]).unwrap())
            .unwrap();
        assert!(matches!(
            is_isomorphic(&c, &w, 3, 8).unwrap(),
            IsoVerdict::NotIsomorphic(_)
        ));
    }
}
