//! Homogeneous Buchberger for submodules of graded free modules S^r.
//!
//! Inputs are processed degree by degree (normal strategy). Within a degree
//! the S-pairs go first, then "ambient" inputs, then "counted" inputs; a
//! counted input that survives reduction is a minimal generator of the
//! counted part modulo the ambient part. Kernel computations use a block
//! order that eliminates the target block.

use std::collections::BTreeMap;

use super::field::{Field, Scalar};
use super::monomial::Monomial;
use super::vector::{TermOrder, Vector};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InputKind {
    Ambient,
    Counted,
}

/// Reduction engine over a list of monic vectors indexed by lead position.
#[derive(Clone, Debug, Default)]
struct Reducer {
    elems: Vec<Vector>,
    by_pos: Vec<Vec<usize>>,
}

impl Reducer {
    fn push(&mut self, v: Vector) -> usize {
        let pos = v.lead().expect("zero vector in basis").pos as usize;
        if self.by_pos.len() <= pos {
            self.by_pos.resize(pos + 1, Vec::new());
        }
        let idx = self.elems.len();
        self.by_pos[pos].push(idx);
        self.elems.push(v);
        idx
    }

    #[inline]
    fn find(&self, m: &Monomial, pos: u32, skip: Option<usize>) -> Option<usize> {
        let cands = self.by_pos.get(pos as usize)?;
        cands
            .iter()
            .copied()
            .find(|&i| Some(i) != skip && self.elems[i].lead().unwrap().m.divides(m))
    }

    fn normal_form(&self, f: Vector, order: &TermOrder, skip: Option<usize>) -> Vector {
        let mut f = f;
        let mut rem = Vec::new();
        while let Some(lt) = f.terms.last() {
            match self.find(&lt.m, lt.pos, skip) {
                Some(i) => {
                    let g = &self.elems[i];
                    let q = g.lead().unwrap().m.quotient_of(&lt.m);
                    let c = lt.c.neg();
                    f = f.add_mul(&c, &q, g, order);
                }
                None => rem.push(f.terms.pop().unwrap()),
            }
        }
        rem.reverse();
        Vector { terms: rem }
    }
}

/// A Gröbner basis (reduced when produced by [`groebner`]) together with its order.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    order: TermOrder,
    reducer: Reducer,
}

impl GroebnerBasis {
    /// Wraps vectors already known to form a Gröbner basis under `order`.
    pub fn from_basis(basis: Vec<Vector>, order: TermOrder) -> GroebnerBasis {
        let mut reducer = Reducer::default();
        for v in basis {
            if !v.is_zero() {
                reducer.push(v.resort(&order).make_monic());
            }
        }
        GroebnerBasis { order, reducer }
    }

    pub fn order(&self) -> &TermOrder {
        &self.order
    }

    pub fn basis(&self) -> &[Vector] {
        &self.reducer.elems
    }

    pub fn len(&self) -> usize {
        self.reducer.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reducer.elems.is_empty()
    }

    /// Unique remainder of `f`; zero iff `f` lies in the submodule.
    pub fn normal_form(&self, f: &Vector) -> Vector {
        self.reducer
            .normal_form(f.resort(&self.order), &self.order, None)
    }

    pub fn contains(&self, f: &Vector) -> bool {
        self.normal_form(f).is_zero()
    }

    /// Whether `m * e_pos` is a leading term of the submodule.
    pub fn is_leading(&self, m: &Monomial, pos: u32) -> bool {
        self.reducer.find(m, pos, None).is_some()
    }

    /// Leading monomials grouped by position.
    pub fn leading_monomials(&self, rank: usize) -> Vec<Vec<Monomial>> {
        let mut out = vec![Vec::new(); rank];
        for v in &self.reducer.elems {
            let t = v.lead().unwrap();
            out[t.pos as usize].push(t.m);
        }
        out
    }
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    pos: u32,
}

pub struct GbOutput {
    pub gb: GroebnerBasis,
    /// Indices (into the input list) of counted inputs that are minimal generators.
    pub minimal: Vec<usize>,
}

/// Reduced Gröbner basis of the submodule generated by `inputs`.
///
/// `twists[p]` is the degree of the basis vector `e_p`; every input must be
/// homogeneous for these twists. Pairs more than `max_degree` above the lowest
/// twist abort with a budget error.
pub fn groebner(
    inputs: &[(Vector, InputKind)],
    twists: &[i32],
    order: &TermOrder,
    max_degree: i32,
) -> Result<GbOutput> {
    let rank_one = twists.len() == 1 && order.blocks.is_none();
    let base = twists.iter().copied().min().unwrap_or(0);
    let mut pending: BTreeMap<i32, (Vec<usize>, Vec<usize>)> = BTreeMap::new();
    let mut sorted_inputs = Vec::with_capacity(inputs.len());
    for (idx, (v, kind)) in inputs.iter().enumerate() {
        if let Some(t) = v.terms.iter().find(|t| t.pos as usize >= twists.len()) {
            return Err(Error::Structural(format!(
                "vector component {} outside free module of rank {}",
                t.pos,
                twists.len()
            )));
        }
        let v = v.resort(order);
        if !v.is_homogeneous(twists) {
            return Err(Error::Structural(
                "inhomogeneous generator in Gröbner input".into(),
            ));
        }
        match v.degree(twists) {
            None => sorted_inputs.push(v),
            Some(d) => {
                let slot = pending.entry(d).or_default();
                match kind {
                    InputKind::Ambient => slot.0.push(idx),
                    InputKind::Counted => slot.1.push(idx),
                }
                sorted_inputs.push(v);
            }
        }
    }

    let mut red = Reducer::default();
    let mut pairs: BTreeMap<i32, Vec<Pair>> = BTreeMap::new();
    let mut minimal = Vec::new();

    loop {
        let dp = pairs.keys().next().copied();
        let di = pending.keys().next().copied();
        let d = match (dp, di) {
            (None, None) => break,
            (Some(a), None) => a,
            (None, Some(b)) => b,
            (Some(a), Some(b)) => a.min(b),
        };
        if d - base > max_degree {
            return Err(Error::Budget(format!(
                "Gröbner basis computation reached internal degree {} (cap {max_degree})",
                d - base
            )));
        }
        if let Some(mut batch) = pairs.remove(&d) {
            batch.sort_by(|a, b| {
                order
                    .cmp(&a.lcm, a.pos, &b.lcm, b.pos)
                    .then(a.j.cmp(&b.j))
                    .then(a.i.cmp(&b.i))
            });
            for p in batch {
                let gi = &red.elems[p.i];
                let gj = &red.elems[p.j];
                let qi = gi.lead().unwrap().m.quotient_of(&p.lcm);
                let qj = gj.lead().unwrap().m.quotient_of(&p.lcm);
                let s = gi
                    .mul_monomial(&qi)
                    .add_mul(&neg_lead_unit(gj), &qj, gj, order);
                let r = red.normal_form(s, order, None);
                if !r.is_zero() {
                    add_element(
                        &mut red,
                        &mut pairs,
                        r.make_monic(),
                        twists,
                        order,
                        rank_one,
                    )?;
                }
            }
        }
        if let Some((amb, cnt)) = pending.remove(&d) {
            for idx in amb {
                let r = red.normal_form(sorted_inputs[idx].clone(), order, None);
                if !r.is_zero() {
                    add_element(
                        &mut red,
                        &mut pairs,
                        r.make_monic(),
                        twists,
                        order,
                        rank_one,
                    )?;
                }
            }
            for idx in cnt {
                let r = red.normal_form(sorted_inputs[idx].clone(), order, None);
                if !r.is_zero() {
                    minimal.push(idx);
                    add_element(
                        &mut red,
                        &mut pairs,
                        r.make_monic(),
                        twists,
                        order,
                        rank_one,
                    )?;
                }
            }
        }
    }

    // Tail-reduce: leads already form a minimal set, so only tails change.
    let mut reduced = Vec::with_capacity(red.elems.len());
    for i in 0..red.elems.len() {
        let v = &red.elems[i];
        let lead = v.terms.last().unwrap().clone();
        let tail = Vector {
            terms: v.terms[..v.terms.len() - 1].to_vec(),
        };
        let mut t = red.normal_form(tail, order, Some(i)).terms;
        t.push(lead);
        reduced.push(Vector { terms: t });
    }
    reduced.sort_by(|a, b| {
        let (x, y) = (a.lead().unwrap(), b.lead().unwrap());
        order.cmp(&x.m, x.pos, &y.m, y.pos)
    });
    let mut reducer = Reducer::default();
    for v in reduced {
        reducer.push(v);
    }
    minimal.sort_unstable();
    Ok(GbOutput {
        gb: GroebnerBasis {
            order: order.clone(),
            reducer,
        },
        minimal,
    })
}

fn neg_lead_unit(v: &Vector) -> Scalar {
    v.lead().unwrap().c.field().one().neg()
}

fn add_element(
    red: &mut Reducer,
    pairs: &mut BTreeMap<i32, Vec<Pair>>,
    h: Vector,
    twists: &[i32],
    _order: &TermOrder,
    rank_one: bool,
) -> Result<()> {
    let lh = h.lead().unwrap().clone();
    if lh.m.degree() > 120 {
        return Err(Error::Budget("monomial degree exceeds 120".into()));
    }
    let t = red.elems.len();
    // candidate pairs with earlier elements sharing the lead position
    let mut cand: Vec<(usize, Monomial, bool)> = Vec::new();
    if let Some(list) = red.by_pos.get(lh.pos as usize) {
        for &i in list {
            let li = red.elems[i].lead().unwrap().m;
            cand.push((i, li.lcm(&lh.m), rank_one && li.is_coprime(&lh.m)));
        }
    }
    // chain criterion on existing pairs
    for list in pairs.values_mut() {
        list.retain(|p| {
            if p.pos != lh.pos || !lh.m.divides(&p.lcm) {
                return true;
            }
            let li = red.elems[p.i].lead().unwrap().m.lcm(&lh.m);
            let lj = red.elems[p.j].lead().unwrap().m.lcm(&lh.m);
            li == p.lcm || lj == p.lcm
        });
    }
    // M criterion: drop pairs whose lcm is a proper multiple of another candidate's
    let mut keep = vec![true; cand.len()];
    for a in 0..cand.len() {
        for b in 0..cand.len() {
            if a != b && cand[b].1 != cand[a].1 && cand[b].1.divides(&cand[a].1) {
                keep[a] = false;
                break;
            }
        }
    }
    // F criterion: one pair per lcm; coprime leads kill the whole group
    let mut seen: Vec<Monomial> = Vec::new();
    for a in 0..cand.len() {
        if !keep[a] {
            continue;
        }
        let l = cand[a].1;
        if seen.contains(&l) {
            keep[a] = false;
            continue;
        }
        seen.push(l);
        let group_coprime = cand
            .iter()
            .enumerate()
            .any(|(b, c)| c.1 == l && c.2 && (keep[b] || b == a));
        if group_coprime {
            keep[a] = false;
        }
    }
    for (a, (i, l, _)) in cand.into_iter().enumerate() {
        if keep[a] {
            let d = l.degree() + twists[lh.pos as usize];
            pairs.entry(d).or_default().push(Pair {
                i,
                j: t,
                lcm: l,
                pos: lh.pos,
            });
        }
    }
    red.push(h);
    Ok(())
}

/// Reduced Gröbner basis of the submodule generated by `gens`.
pub fn buchberger(
    gens: &[Vector],
    twists: &[i32],
    order: &TermOrder,
    max_degree: i32,
) -> Result<GroebnerBasis> {
    let inputs: Vec<_> = gens
        .iter()
        .map(|g| (g.clone(), InputKind::Counted))
        .collect();
    Ok(groebner(&inputs, twists, order, max_degree)?.gb)
}

/// Selects a minimal generating set of `⟨counted⟩ + ⟨ambient⟩` modulo `⟨ambient⟩`.
///
/// Returns the indices of the chosen counted vectors and the Gröbner basis of the sum.
pub fn minimal_generators(
    counted: &[Vector],
    ambient: &[Vector],
    twists: &[i32],
    max_degree: i32,
) -> Result<(Vec<usize>, GroebnerBasis)> {
    let mut inputs: Vec<(Vector, InputKind)> = Vec::with_capacity(counted.len() + ambient.len());
    inputs.extend(ambient.iter().map(|v| (v.clone(), InputKind::Ambient)));
    inputs.extend(counted.iter().map(|v| (v.clone(), InputKind::Counted)));
    let out = groebner(&inputs, twists, &TermOrder::top(), max_degree)?;
    let chosen = out.minimal.iter().map(|&i| i - ambient.len()).collect();
    Ok((chosen, out.gb))
}

/// Generators of `{ v in S^m : sum v_i images[i] lies in <tgt_rels> }`.
///
/// `images` live in S^k with twists `tgt_twists`; `src_twists[i]` must equal
/// the degree of `images[i]` whenever it is nonzero. The result is a Gröbner
/// basis (TOP order) of the kernel in S^m.
pub fn kernel(
    field: Field,
    src_twists: &[i32],
    images: &[Vector],
    tgt_twists: &[i32],
    tgt_rels: &[Vector],
    max_degree: i32,
) -> Result<Vec<Vector>> {
    let k = tgt_twists.len();
    let m = src_twists.len();
    assert_eq!(images.len(), m);
    let mut twists = tgt_twists.to_vec();
    twists.extend_from_slice(src_twists);
    let mut blocks = vec![1u8; k];
    blocks.extend(std::iter::repeat_n(0u8, m));
    let order = TermOrder::blocked(blocks);
    let mut inputs = Vec::with_capacity(m + tgt_rels.len());
    for r in tgt_rels {
        inputs.push((r.clone(), InputKind::Ambient));
    }
    for (i, img) in images.iter().enumerate() {
        let tag = Vector::unit((k + i) as u32, field);
        if let Some(d) = img.degree(tgt_twists) {
            if d != src_twists[i] {
                return Err(Error::Structural(format!(
                    "map is not homogeneous: image {i} has degree {d}, source degree {}",
                    src_twists[i]
                )));
            }
        }
        inputs.push((img.add(&tag, &order), InputKind::Counted));
    }
    let out = groebner(&inputs, &twists, &order, max_degree)?;
    let top = TermOrder::top();
    Ok(out
        .gb
        .basis()
        .iter()
        .filter(|v| v.lead().unwrap().pos as usize >= k)
        .map(|v| v.map_positions(|p| p - k as u32, &top))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::vector::Term;

    fn poly(terms: &[(i64, &[u32])]) -> Vector {
        let f = Field::Rationals;
        Vector::from_terms(
            terms
                .iter()
                .map(|(c, e)| Term {
                    m: Monomial::from_exponents(e),
                    pos: 0,
                    c: f.from_i64(*c),
                })
                .collect(),
            &TermOrder::top(),
        )
    }

    #[test]
    fn two_quadrics_give_squares() {
        let g = buchberger(
            &[
                poly(&[(1, &[2, 0]), (-1, &[0, 2])]),
                poly(&[(1, &[2, 0]), (1, &[0, 2])]),
            ],
            &[0],
            &TermOrder::top(),
            20,
        )
        .unwrap();
        assert_eq!(g.basis(), &[poly(&[(1, &[0, 2])]), poly(&[(1, &[2, 0])])]);
        assert!(g.contains(&poly(&[(1, &[2, 0])])));
        assert!(!g.contains(&poly(&[(1, &[1, 1])])));
    }

    #[test]
    fn normal_form_basics() {
        let g = buchberger(&[poly(&[(1, &[1, 0])])], &[0], &TermOrder::top(), 20).unwrap();
        assert!(g.normal_form(&poly(&[(1, &[2, 0])])).is_zero());
        assert_eq!(g.normal_form(&poly(&[(1, &[0, 1])])), poly(&[(1, &[0, 1])]));
    }

    #[test]
    fn koszul_syzygy() {
        let x = poly(&[(1, &[1, 0])]);
        let y = poly(&[(1, &[0, 1])]);
        let k = kernel(Field::Rationals, &[1, 1], &[x, y], &[0], &[], 20).unwrap();
        assert_eq!(k.len(), 1);
        let c0 = k[0].component(0);
        let c1 = k[0].component(1);
        // (y, -x) up to sign
        let s = c0.lead().unwrap().c.clone();
        assert_eq!(c0.scale(&s.inv()), poly(&[(1, &[0, 1])]));
        assert_eq!(c1.scale(&s.inv()), poly(&[(-1, &[1, 0])]));
    }

    #[test]
    fn unit_has_no_syzygies() {
        let one = poly(&[(1, &[0, 0])]);
        assert!(kernel(Field::Rationals, &[0], &[one], &[0], &[], 20)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn minimal_generators_skip_redundant() {
        let x = poly(&[(1, &[1, 0])]);
        let xy = poly(&[(1, &[1, 1])]);
        let y = poly(&[(1, &[0, 1])]);
        let (chosen, _) = minimal_generators(&[xy, x, y], &[], &[0], 20).unwrap();
        assert_eq!(chosen, vec![1, 2]);
    }
}
