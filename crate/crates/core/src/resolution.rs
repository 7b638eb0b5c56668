//! Minimal graded free resolutions and the Hom / tensor complexes built on them.

use std::fmt::Write as _;

use crate::algebra::{minimal_generators, Field, HilbertSeries, Monomial, Term, TermOrder, Vector};
use crate::error::{Error, Result};
use crate::module::{kernel_over_ring, subquotient, subquotient_with_gens, Module};
use crate::ring::Ring;

/// `F_0 <- F_1 <- ... <- F_L`; `maps[i]` holds the columns of `d_{i+1}: F_{i+1} -> F_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Resolution {
    pub degrees: Vec<Vec<i32>>,
    pub maps: Vec<Vec<Vector>>,
    /// The next free module is known to be zero.
    pub complete: bool,
}

/// Betti numbers `β_{i,j}` as a sorted list of `(i, j, β)`.
pub type BettiTable = Vec<(usize, i32, usize)>;

impl Resolution {
    pub fn length(&self) -> usize {
        self.maps.len()
    }

    pub fn rank(&self, i: usize) -> usize {
        self.degrees.get(i).map(|d| d.len()).unwrap_or(0)
    }

    /// Whether `F_i` is known (computed or known to vanish).
    pub fn covers(&self, i: usize) -> bool {
        i < self.degrees.len() || self.complete
    }

    pub fn degrees_at(&self, i: usize) -> &[i32] {
        self.degrees.get(i).map(|d| d.as_slice()).unwrap_or(&[])
    }

    /// Columns of `d_i: F_i -> F_{i-1}` (empty when `F_i = 0`).
    pub fn map(&self, i: usize) -> &[Vector] {
        if i == 0 {
            return &[];
        }
        self.maps.get(i - 1).map(|m| m.as_slice()).unwrap_or(&[])
    }

    pub fn betti(&self) -> BettiTable {
        let mut out = Vec::new();
        for (i, degs) in self.degrees.iter().enumerate() {
            let mut ds = degs.clone();
            ds.sort_unstable();
            let mut k = 0;
            while k < ds.len() {
                let j = ds[k];
                let c = ds[k..].iter().take_while(|&&x| x == j).count();
                out.push((i, j, c));
                k += c;
            }
        }
        out
    }

    pub fn truncated(&self, len: usize) -> Resolution {
        if self.length() <= len {
            return self.clone();
        }
        Resolution {
            degrees: self.degrees[..=len].to_vec(),
            maps: self.maps[..len].to_vec(),
            complete: false,
        }
    }

    /// Line-oriented text encoding used by persistent caches.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "complete {}", self.complete as u8);
        for (i, degs) in self.degrees.iter().enumerate() {
            let d: Vec<String> = degs.iter().map(|x| x.to_string()).collect();
            let _ = writeln!(s, "F {i} {}", d.join(" "));
        }
        for (i, cols) in self.maps.iter().enumerate() {
            let _ = writeln!(s, "d {}", i + 1);
            for c in cols {
                let mut line = String::from("c");
                for t in &c.terms {
                    let e: Vec<String> = (0..crate::algebra::monomial::MAX_VARS)
                        .map(|v| t.m.exp(v).to_string())
                        .collect();
                    let _ = write!(line, " {}:{}:{}", t.pos, e.join(","), t.c);
                }
                let _ = writeln!(s, "{line}");
            }
        }
        s
    }

    pub fn from_text(text: &str, field: Field) -> Option<Resolution> {
        let mut lines = text.lines();
        let complete = lines.next()?.strip_prefix("complete ")? == "1";
        let mut degrees = Vec::new();
        let mut maps: Vec<Vec<Vector>> = Vec::new();
        let top = TermOrder::top();
        for line in lines {
            if let Some(rest) = line.strip_prefix("F ") {
                let mut it = rest.split_whitespace();
                let i: usize = it.next()?.parse().ok()?;
                if i != degrees.len() {
                    return None;
                }
                degrees.push(it.map(|x| x.parse().ok()).collect::<Option<Vec<i32>>>()?);
            } else if let Some(rest) = line.strip_prefix("d ") {
                if rest.parse::<usize>().ok()? != maps.len() + 1 {
                    return None;
                }
                maps.push(Vec::new());
            } else if let Some(rest) = line.strip_prefix('c') {
                let mut terms = Vec::new();
                for tok in rest.split_whitespace() {
                    let mut parts = tok.splitn(3, ':');
                    let pos: u32 = parts.next()?.parse().ok()?;
                    let exps = parts
                        .next()?
                        .split(',')
                        .map(|x| x.parse().ok())
                        .collect::<Option<Vec<u32>>>()?;
                    let c = field.parse_scalar(parts.next()?).ok()?;
                    terms.push(Term {
                        m: Monomial::from_exponents(&exps),
                        pos,
                        c,
                    });
                }
                maps.last_mut()?.push(Vector::from_terms(terms, &top));
            } else if !line.is_empty() {
                return None;
            }
        }
        if degrees.len() != maps.len() + 1 {
            return None;
        }
        Some(Resolution {
            degrees,
            maps,
            complete,
        })
    }
}

/// Extends `prefix` (or starts from the minimal presentation of `m`) to length `len`.
pub fn resolve(m: &Module, len: usize, prefix: Option<&Resolution>) -> Result<Resolution> {
    let ring = m.ring();
    let mut res = match prefix {
        Some(p) => p.clone(),
        None => {
            let min = m.minimal()?;
            let mut r = Resolution {
                degrees: vec![min.gens().to_vec()],
                maps: vec![],
                complete: min.ngens() == 0,
            };
            if min.ngens() > 0 {
                r.degrees.push(min.rels().to_vec());
                r.maps.push(min.columns().to_vec());
                r.complete = min.nrels() == 0;
            }
            r
        }
    };
    while res.length() < len && !res.complete {
        let i = res.length();
        let (degs, cols) =
            next_syzygies(ring, &res.degrees[i], &res.maps[i - 1], &res.degrees[i - 1])?;
        if degs.is_empty() {
            res.complete = true;
            break;
        }
        if degs.len() > ring.budget().max_rank {
            return Err(Error::Budget(format!(
                "free module of rank {} at homological degree {} exceeds cap {}",
                degs.len(),
                i + 1,
                ring.budget().max_rank
            )));
        }
        res.degrees.push(degs);
        res.maps.push(cols);
    }
    Ok(res)
}

/// Minimal generators of the kernel of `d: F_src -> F_tgt` over the ring.
fn next_syzygies(
    ring: &Ring,
    src: &[i32],
    cols: &[Vector],
    tgt: &[i32],
) -> Result<(Vec<i32>, Vec<Vector>)> {
    let ker = kernel_over_ring(ring, src, cols, tgt, &ring.ideal_multiples(tgt.len()))?;
    let (chosen, _) = minimal_generators(
        &ker,
        &ring.ideal_multiples(src.len()),
        src,
        ring.budget().max_degree,
    )?;
    let out: Vec<Vector> = chosen.into_iter().map(|i| ker[i].clone()).collect();
    let degs = out.iter().map(|v| v.degree(src).unwrap()).collect();
    Ok((degs, out))
}

/// Relations of `N^r` laid out block by block (block `a` occupies positions `a*k..(a+1)*k`).
pub(crate) fn block_relations(n: &Module, blocks: usize) -> Vec<Vector> {
    let k = n.ngens() as u32;
    let top = TermOrder::top();
    let mut out = Vec::new();
    for a in 0..blocks as u32 {
        for c in n.columns() {
            out.push(c.map_positions(|p| a * k + p, &top));
        }
    }
    out
}

/// Twists of `Hom(F_i, N) = ⊕_a N(deg_a)`.
pub(crate) fn hom_twists(res: &Resolution, i: usize, n: &Module) -> Vec<i32> {
    let mut out = Vec::new();
    for &a in res.degrees_at(i) {
        for &h in n.gens() {
            out.push(h - a);
        }
    }
    out
}

/// Twists of `F_i ⊗ N`.
pub(crate) fn tensor_twists(res: &Resolution, i: usize, n: &Module) -> Vec<i32> {
    let mut out = Vec::new();
    for &a in res.degrees_at(i) {
        for &h in n.gens() {
            out.push(h + a);
        }
    }
    out
}

/// Images of the basis of `Hom(F_{i}, N)` under `φ ↦ φ ∘ d_{i+1}`.
pub(crate) fn hom_differential(res: &Resolution, i: usize, n: &Module) -> Vec<Vector> {
    let k = n.ngens();
    let src_rank = res.rank(i);
    let mut terms: Vec<Vec<Term>> = vec![Vec::new(); src_rank * k];
    for (b, col) in res.map(i + 1).iter().enumerate() {
        for t in &col.terms {
            for kk in 0..k {
                terms[t.pos as usize * k + kk].push(Term {
                    m: t.m,
                    pos: (b * k + kk) as u32,
                    c: t.c.clone(),
                });
            }
        }
    }
    let top = TermOrder::top();
    let ring = n.ring();
    terms
        .into_iter()
        .map(|t| ring.reduce_vector(&Vector::from_terms(t, &top)))
        .collect()
}

/// Images of the basis of `F_i ⊗ N` under `d_i ⊗ 1`.
pub(crate) fn tensor_differential(res: &Resolution, i: usize, n: &Module) -> Vec<Vector> {
    let k = n.ngens() as u32;
    let top = TermOrder::top();
    let mut out = Vec::new();
    for col in res.map(i) {
        for kk in 0..k {
            out.push(col.map_positions(|p| p * k + kk, &top));
        }
    }
    out
}

pub(crate) fn hom_quotient(res: &Resolution, i: usize, n: &Module) -> Result<Module> {
    // Hom(F_i, N) / image of Hom(F_{i-1}, N)
    let twists = hom_twists(res, i, n);
    let mut cols = block_relations(n, res.rank(i));
    if i > 0 {
        cols.extend(hom_differential(res, i - 1, n));
    }
    Module::new(n.ring(), twists, cols)
}

fn series_of_sum(n: &Module, degs: &[i32], sign: i32) -> Result<HilbertSeries> {
    let hn = n.hilbert_series()?;
    let mut total = HilbertSeries {
        numerator: Default::default(),
        n: hn.n,
    };
    for &a in degs {
        total = total.add(&hn.shift(sign * a));
    }
    Ok(total)
}

fn neg(h: &HilbertSeries) -> HilbertSeries {
    HilbertSeries {
        numerator: h.numerator.neg(),
        n: h.n,
    }
}

/// Hilbert series of `Ext^i(M, N)` from a resolution of `M` reaching `F_{i+1}`.
pub fn ext_series(res: &Resolution, n: &Module, i: usize) -> Result<HilbertSeries> {
    debug_assert!(res.covers(i + 1));
    if res.rank(i) == 0 || n.ngens() == 0 {
        return Ok(HilbertSeries {
            numerator: Default::default(),
            n: n.ring().nvars(),
        });
    }
    let qi = hom_quotient(res, i, n)?.hilbert_series()?;
    if res.rank(i + 1) == 0 {
        return Ok(qi);
    }
    let qn = hom_quotient(res, i + 1, n)?.hilbert_series()?;
    let cn = series_of_sum(n, res.degrees_at(i + 1), -1)?;
    Ok(qi.add(&qn).add(&neg(&cn)))
}

/// Presentation of `Ext^i(M, N)` from a resolution of `M` reaching `F_{i+1}`.
pub fn ext_module(res: &Resolution, n: &Module, i: usize) -> Result<Module> {
    Ok(ext_module_with_gens(res, n, i)?.0)
}

/// `Ext^i(M, N)` plus, for each generator, its cocycle in `Hom(F_i, N)` (block layout).
pub fn ext_module_with_gens(
    res: &Resolution,
    n: &Module,
    i: usize,
) -> Result<(Module, Vec<Vector>)> {
    let ring = n.ring();
    if res.rank(i) == 0 || n.ngens() == 0 {
        return Ok((Module::zero(ring), vec![]));
    }
    let twists = hom_twists(res, i, n);
    let field = ring.field();
    let z = if res.rank(i + 1) == 0 {
        (0..twists.len())
            .map(|p| Vector::unit(p as u32, field))
            .collect()
    } else {
        let tgt = hom_twists(res, i + 1, n);
        let mut tgt_rels = block_relations(n, res.rank(i + 1));
        tgt_rels.extend(ring.ideal_multiples(tgt.len()));
        kernel_over_ring(ring, &twists, &hom_differential(res, i, n), &tgt, &tgt_rels)?
    };
    let mut d = block_relations(n, res.rank(i));
    if i > 0 {
        d.extend(hom_differential(res, i - 1, n));
    }
    d.extend(ring.ideal_multiples(twists.len()));
    subquotient_with_gens(ring, &twists, &z, &d)
}

pub(crate) fn tensor_quotient(res: &Resolution, i: usize, n: &Module) -> Result<Module> {
    let twists = tensor_twists(res, i, n);
    let mut cols = block_relations(n, res.rank(i));
    cols.extend(tensor_differential(res, i + 1, n));
    Module::new(n.ring(), twists, cols)
}

/// Hilbert series of `Tor_i(M, N)` from a resolution of `M` reaching `F_{i+1}`.
pub fn tor_series(res: &Resolution, n: &Module, i: usize) -> Result<HilbertSeries> {
    let nv = n.ring().nvars();
    if res.rank(i) == 0 || n.ngens() == 0 {
        return Ok(HilbertSeries {
            numerator: Default::default(),
            n: nv,
        });
    }
    let pi = tensor_quotient(res, i, n)?.hilbert_series()?;
    if i == 0 {
        return Ok(pi);
    }
    let pp = tensor_quotient(res, i - 1, n)?.hilbert_series()?;
    let tp = series_of_sum(n, res.degrees_at(i - 1), 1)?;
    Ok(pi.add(&pp).add(&neg(&tp)))
}

/// Presentation of `Tor_i(M, N)`.
pub fn tor_module(res: &Resolution, n: &Module, i: usize) -> Result<Module> {
    let ring = n.ring();
    if res.rank(i) == 0 || n.ngens() == 0 {
        return Ok(Module::zero(ring));
    }
    let twists = tensor_twists(res, i, n);
    if i == 0 {
        return tensor_quotient(res, 0, n)?.minimal();
    }
    let tgt = tensor_twists(res, i - 1, n);
    let mut tgt_rels = block_relations(n, res.rank(i - 1));
    tgt_rels.extend(ring.ideal_multiples(tgt.len()));
    let z = kernel_over_ring(
        ring,
        &twists,
        &tensor_differential(res, i, n),
        &tgt,
        &tgt_rels,
    )?;
    let mut d = block_relations(n, res.rank(i));
    d.extend(tensor_differential(res, i + 1, n));
    d.extend(ring.ideal_multiples(twists.len()));
    subquotient(ring, &twists, &z, &d)
}

/// Resolution of `M` over the ambient polynomial ring (always finite).
pub fn ambient_resolution(m: &Module) -> Result<Resolution> {
    let s = m.over_ambient().minimal()?;
    resolve(&s, m.ring().nvars() + 1, None)
}

/// Hilbert series of `Ext^j_S(M, S)` for `j = 0..=n`.
pub fn ambient_ext_series(m: &Module) -> Result<Vec<HilbertSeries>> {
    m_ambient_series(m)
}

fn m_ambient_series(m: &Module) -> Result<Vec<HilbertSeries>> {
    crate::module::ambient_series_cell(m)
        .get_or_init(|| {
            let res = ambient_resolution(m)?;
            let s = m.ring().ambient();
            let unit = Module::free(&s, &[0]);
            (0..=m.ring().nvars())
                .map(|j| ext_series(&res, &unit, j))
                .collect()
        })
        .clone()
}

/// `Ext^j_S(M, S)` as a module over the ambient ring.
pub fn ambient_ext_module(m: &Module, j: usize) -> Result<Module> {
    let all = crate::module::ambient_modules_cell(m)
        .get_or_init(|| {
            let res = ambient_resolution(m)?;
            let s = m.ring().ambient();
            let unit = Module::free(&s, &[0]);
            (0..=m.ring().nvars())
                .map(|j| ext_module(&res, &unit, j))
                .collect()
        })
        .clone()?;
    Ok(all
        .get(j)
        .cloned()
        .unwrap_or_else(|| Module::zero(&m.ring().ambient())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Field;

    fn koszul_ring(n: usize) -> Ring {
        let names = ["a", "b", "c", "d"];
        Ring::polynomial(Field::Rationals, &names[..n]).unwrap()
    }

    #[test]
    fn koszul_betti_numbers() {
        for n in 1..=4 {
            let s = koszul_ring(n);
            let k = Module::cyclic(&s, &(0..n).map(|i| s.var(i)).collect::<Vec<_>>()).unwrap();
            let res = resolve(&k, n + 1, None).unwrap();
            assert!(res.complete);
            let binom =
                |n: usize, i: usize| -> usize { (0..i).fold(1, |acc, j| acc * (n - j) / (j + 1)) };
            for i in 0..=n {
                assert_eq!(res.rank(i), binom(n, i), "n={n} i={i}");
                assert!(res.degrees_at(i).iter().all(|&d| d == i as i32));
            }
        }
    }

    #[test]
    fn text_round_trip() {
        let s = koszul_ring(2);
        let k = Module::cyclic(&s, &[s.var(0), s.var(1)]).unwrap();
        let res = resolve(&k, 3, None).unwrap();
        let back = Resolution::from_text(&res.to_text(), Field::Rationals).unwrap();
        assert_eq!(back, res);
    }
}
