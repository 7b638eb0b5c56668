//! Finitely generated graded modules given by homogeneous presentations.
//!
//! A module is `coker(A)` where the columns of `A` are relations among the
//! generators. Generator `i` has degree `gens[i]`; column `j` has degree
//! `rels[j]`, so entry `(i, j)` is homogeneous of degree `rels[j] - gens[i]`.

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::algebra::hilbert::monomial_numerator;
use crate::algebra::{
    buchberger, kernel, minimal_generators, GroebnerBasis, HilbertSeries, LaurentPoly, Monomial,
    Scalar, TermOrder, Vector,
};
use crate::error::{Error, Result};
use crate::ring::{canonical_vector, Ring};

struct Inner {
    ring: Ring,
    gens: Vec<i32>,
    rels: Vec<i32>,
    cols: Vec<Vector>,
    known_minimal: bool,
    relation_gb: OnceLock<Result<GroebnerBasis>>,
    minimal: OnceLock<Result<Minimalized>>,
    hilbert: OnceLock<Result<HilbertSeries>>,
    key: OnceLock<Result<String>>,
    ambient_series: OnceLock<Result<Vec<HilbertSeries>>>,
    ambient_modules: OnceLock<Result<Vec<Module>>>,
    annihilator: OnceLock<Result<Vec<Vector>>>,
}

#[derive(Clone)]
pub struct Module(Arc<Inner>);

/// Result of minimalizing a presentation.
#[derive(Clone, Debug)]
pub struct Minimalized {
    pub module: Module,
    /// Original generator index of each surviving generator.
    pub kept: Vec<usize>,
    /// Each original generator written in the surviving generators.
    pub old_to_new: Vec<Vector>,
}

impl fmt::Debug for Module {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.describe())
    }
}

impl Module {
    fn raw(
        ring: &Ring,
        gens: Vec<i32>,
        rels: Vec<i32>,
        cols: Vec<Vector>,
        known_minimal: bool,
    ) -> Module {
        Module(Arc::new(Inner {
            ring: ring.clone(),
            gens,
            rels,
            cols,
            known_minimal,
            relation_gb: OnceLock::new(),
            minimal: OnceLock::new(),
            hilbert: OnceLock::new(),
            key: OnceLock::new(),
            ambient_series: OnceLock::new(),
            ambient_modules: OnceLock::new(),
            annihilator: OnceLock::new(),
        }))
    }

    /// Presentation with explicit relation degrees; zero columns are kept.
    pub fn with_degrees(
        ring: &Ring,
        gens: Vec<i32>,
        rels: Vec<i32>,
        cols: Vec<Vector>,
    ) -> Result<Module> {
        if rels.len() != cols.len() {
            return Err(Error::Structural(format!(
                "{} relation degrees for {} columns",
                rels.len(),
                cols.len()
            )));
        }
        let top = TermOrder::top();
        let mut out = Vec::with_capacity(cols.len());
        for (j, c) in cols.into_iter().enumerate() {
            let c = c.resort(&top);
            for t in &c.terms {
                if t.pos as usize >= gens.len() {
                    return Err(Error::Structural(format!(
                        "column {j} has an entry in row {} but there are {} generators",
                        t.pos,
                        gens.len()
                    )));
                }
                if t.c.field() != ring.field() {
                    return Err(Error::Structural(format!(
                        "coefficient {} not in {}",
                        t.c,
                        ring.field().name()
                    )));
                }
                let d = t.m.degree() + gens[t.pos as usize];
                if d != rels[j] {
                    return Err(Error::Structural(format!(
                        "entry {} in row {}, column {j} has degree {} but the column has degree {}",
                        t.m.format(ring.vars()),
                        t.pos,
                        d - gens[t.pos as usize],
                        rels[j] - gens[t.pos as usize]
                    )));
                }
            }
            out.push(ring.reduce_vector(&c));
        }
        Ok(Module::raw(ring, gens, rels, out, false))
    }

    /// Presentation with relation degrees inferred; zero columns are dropped.
    pub fn new(ring: &Ring, gens: Vec<i32>, cols: Vec<Vector>) -> Result<Module> {
        let mut keep = Vec::new();
        let mut rels = Vec::new();
        for c in cols {
            if c.is_zero() {
                continue;
            }
            let t = c.lead().unwrap();
            if t.pos as usize >= gens.len() {
                return Err(Error::Structural(format!(
                    "relation entry in row {} out of range",
                    t.pos
                )));
            }
            rels.push(t.m.degree() + gens[t.pos as usize]);
            keep.push(c);
        }
        Module::with_degrees(ring, gens, rels, keep)
    }

    /// Builds from a row-major matrix of polynomials (rows are generators).
    pub fn from_rows(ring: &Ring, gens: Vec<i32>, rows: &[Vec<Vector>]) -> Result<Module> {
        if rows.len() != gens.len() {
            return Err(Error::Structural(format!(
                "{} rows for {} twists",
                rows.len(),
                gens.len()
            )));
        }
        let ncols = rows.first().map(|r| r.len()).unwrap_or(0);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::Structural(
                "matrix rows have different lengths".into(),
            ));
        }
        let top = TermOrder::top();
        let cols = (0..ncols)
            .map(|j| {
                let comps: Vec<Vector> = rows.iter().map(|r| r[j].clone()).collect();
                Vector::from_components(&comps, &top)
            })
            .collect();
        Module::new(ring, gens, cols)
    }

    /// Presentation already known to be minimal (e.g. read off a minimal resolution).
    pub(crate) fn minimal_parts(
        ring: &Ring,
        gens: Vec<i32>,
        rels: Vec<i32>,
        cols: Vec<Vector>,
    ) -> Module {
        Module::raw(ring, gens, rels, cols, true)
    }

    pub fn free(ring: &Ring, gens: &[i32]) -> Module {
        Module::raw(ring, gens.to_vec(), vec![], vec![], true)
    }

    pub fn zero(ring: &Ring) -> Module {
        Module::raw(ring, vec![], vec![], vec![], true)
    }

    /// `R/J` for homogeneous polynomials `J`, generated in degree 0.
    pub fn cyclic(ring: &Ring, ideal: &[Vector]) -> Result<Module> {
        Module::new(ring, vec![0], ideal.to_vec())
    }

    /// The ideal `J ⊆ R` as a module, generators in their own degrees.
    pub fn ideal(ring: &Ring, gens: &[Vector]) -> Result<Module> {
        let gens: Vec<Vector> = gens
            .iter()
            .map(|g| ring.reduce(g))
            .filter(|g| !g.is_zero())
            .collect();
        let degs: Vec<i32> = gens.iter().map(|g| g.degree(&[0]).unwrap()).collect();
        let budget = ring.budget();
        let ker = kernel(
            ring.field(),
            &degs,
            &gens,
            &[0],
            &ring.ideal_multiples(1),
            budget.max_degree,
        )?;
        let m = Module::new(ring, degs, ker)?;
        m.minimal()
    }

    pub fn ring(&self) -> &Ring {
        &self.0.ring
    }

    pub fn gens(&self) -> &[i32] {
        &self.0.gens
    }

    pub fn rels(&self) -> &[i32] {
        &self.0.rels
    }

    pub fn columns(&self) -> &[Vector] {
        &self.0.cols
    }

    pub fn ngens(&self) -> usize {
        self.0.gens.len()
    }

    pub fn nrels(&self) -> usize {
        self.0.cols.len()
    }

    pub fn is_known_minimal(&self) -> bool {
        self.0.known_minimal
    }

    /// Entry `(i, j)` of the presentation matrix.
    pub fn entry(&self, i: usize, j: usize) -> Vector {
        self.0.cols[j].component(i as u32)
    }

    /// Relation module over the ambient ring: columns plus `I * S^k`.
    pub fn ambient_relations(&self) -> Vec<Vector> {
        let mut v = self.0.cols.clone();
        v.extend(self.0.ring.ideal_multiples(self.ngens()));
        v
    }

    /// Gröbner basis of the relations (including the ring relations) in `S^k`.
    pub fn relation_gb(&self) -> Result<&GroebnerBasis> {
        self.0
            .relation_gb
            .get_or_init(|| {
                buchberger(
                    &self.ambient_relations(),
                    &self.0.gens,
                    &TermOrder::top(),
                    self.0.ring.budget().max_degree,
                )
            })
            .as_ref()
            .map_err(|e| e.clone())
    }

    /// Normal form of an element of the ambient free module modulo the relations.
    pub fn normal_form(&self, v: &Vector) -> Result<Vector> {
        Ok(self.relation_gb()?.normal_form(v))
    }

    pub fn hilbert_series(&self) -> Result<HilbertSeries> {
        self.0
            .hilbert
            .get_or_init(|| {
                let n = self.0.ring.nvars();
                let gb = self.relation_gb()?;
                let lead = gb.leading_monomials(self.ngens());
                let mut num = LaurentPoly::zero();
                for (j, mons) in lead.iter().enumerate() {
                    num = num.add(&monomial_numerator(mons, n).shift(self.0.gens[j]));
                }
                Ok(HilbertSeries { numerator: num, n })
            })
            .clone()
    }

    pub fn is_zero(&self) -> Result<bool> {
        if self.ngens() == 0 {
            return Ok(true);
        }
        Ok(self.hilbert_series()?.is_zero())
    }

    /// Krull dimension, `None` for the zero module.
    pub fn krull_dim(&self) -> Result<Option<usize>> {
        Ok(self.hilbert_series()?.dimension())
    }

    /// Standard monomials `m * e_p` of total degree `d`: a k-basis of `M_d`.
    pub fn basis_in_degree(&self, d: i32) -> Result<Vec<(Monomial, u32)>> {
        let gb = self.relation_gb()?;
        let n = self.0.ring.nvars();
        let mut out = Vec::new();
        for (p, &g) in self.0.gens.iter().enumerate() {
            for m in Monomial::all_of_degree(n, d - g) {
                if !gb.is_leading(&m, p as u32) {
                    out.push((m, p as u32));
                }
            }
        }
        Ok(out)
    }

    pub fn minimalized(&self) -> Result<&Minimalized> {
        self.0
            .minimal
            .get_or_init(|| self.compute_minimal())
            .as_ref()
            .map_err(|e| e.clone())
    }

    /// Minimal presentation: generator count β₀, relation count β₁.
    pub fn minimal(&self) -> Result<Module> {
        Ok(self.minimalized()?.module.clone())
    }

    fn compute_minimal(&self) -> Result<Minimalized> {
        let k0 = self.ngens();
        let field = self.0.ring.field();
        if self.0.known_minimal {
            return Ok(Minimalized {
                module: self.clone(),
                kept: (0..k0).collect(),
                old_to_new: (0..k0).map(|i| Vector::unit(i as u32, field)).collect(),
            });
        }
        let ring = &self.0.ring;
        let top = TermOrder::top();
        let mut gens = self.0.gens.clone();
        let mut kept: Vec<usize> = (0..k0).collect();
        let mut images: Vec<Vector> = (0..k0).map(|i| Vector::unit(i as u32, field)).collect();
        let mut cols: Vec<Vector> = self
            .0
            .cols
            .iter()
            .map(|c| ring.reduce_vector(c))
            .filter(|c| !c.is_zero())
            .collect();
        loop {
            let found = cols.iter().enumerate().find_map(|(j, c)| {
                c.terms
                    .iter()
                    .filter(|t| t.m.is_one())
                    .min_by_key(|t| t.pos)
                    .map(|t| (j, t.pos, t.c.clone()))
            });
            let Some((j, i, u)) = found else { break };
            let pivot = cols.swap_remove(j);
            let uinv = u.inv();
            let unit_term = Vector::term(Monomial::ONE, i, u.clone());
            let expr = pivot.sub(&unit_term, &top).scale(&uinv.neg());
            for c in cols.iter_mut() {
                let a = c.component(i);
                if !a.is_zero() {
                    *c = c.sub(&pivot.mul_poly(&a, &top).scale(&uinv), &top);
                }
            }
            for v in images.iter_mut() {
                let a = v.component(i);
                if !a.is_zero() {
                    let ei = Vector::unit(i, field);
                    *v = v
                        .sub(&ei.mul_poly(&a, &top), &top)
                        .add(&expr.mul_poly(&a, &top), &top);
                }
            }
            let shift = |p: u32| if p > i { p - 1 } else { p };
            for c in cols.iter_mut() {
                *c = ring.reduce_vector(&c.map_positions(shift, &top));
            }
            cols.retain(|c| !c.is_zero());
            for v in images.iter_mut() {
                *v = ring.reduce_vector(&v.map_positions(shift, &top));
            }
            gens.remove(i as usize);
            kept.remove(i as usize);
        }
        // keep column order deterministic regardless of the swap_remove above
        cols.sort_by(|a, b| {
            let (x, y) = (a.lead().unwrap(), b.lead().unwrap());
            top.cmp(&x.m, x.pos, &y.m, y.pos)
                .then_with(|| canonical_vector(a).cmp(&canonical_vector(b)))
        });
        let (chosen, gb) = minimal_generators(
            &cols,
            &ring.ideal_multiples(gens.len()),
            &gens,
            ring.budget().max_degree,
        )?;
        let cols: Vec<Vector> = chosen.into_iter().map(|i| cols[i].clone()).collect();
        let rels: Vec<i32> = cols.iter().map(|c| c.degree(&gens).unwrap()).collect();
        let module = Module::raw(ring, gens, rels, cols, true);
        let _ = module.0.relation_gb.set(Ok(gb));
        Ok(Minimalized {
            module,
            kept,
            old_to_new: images,
        })
    }

    /// Content key of this presentation: ring, generator degrees, relation Gröbner basis.
    pub fn key(&self) -> Result<String> {
        self.0
            .key
            .get_or_init(|| {
                let gb = self.relation_gb()?;
                let mut s = String::with_capacity(256);
                s.push_str(self.0.ring.key());
                s.push_str("#gens:");
                for g in &self.0.gens {
                    s.push_str(&format!("{g},"));
                }
                s.push_str("#rels:");
                for v in gb.basis() {
                    s.push_str(&canonical_vector(v));
                    s.push(';');
                }
                Ok(s)
            })
            .clone()
    }

    /// `M(a)`: degrees shift down by `a`.
    pub fn twist(&self, a: i32) -> Module {
        Module::raw(
            &self.0.ring,
            self.0.gens.iter().map(|g| g - a).collect(),
            self.0.rels.iter().map(|r| r - a).collect(),
            self.0.cols.clone(),
            self.0.known_minimal,
        )
    }

    pub fn direct_sum(&self, o: &Module) -> Result<Module> {
        if self.ring() != o.ring() {
            return Err(Error::Structural(
                "direct sum of modules over different rings".into(),
            ));
        }
        let k = self.ngens() as u32;
        let top = TermOrder::top();
        let mut gens = self.0.gens.clone();
        gens.extend_from_slice(&o.0.gens);
        let mut rels = self.0.rels.clone();
        rels.extend_from_slice(&o.0.rels);
        let mut cols = self.0.cols.clone();
        cols.extend(o.0.cols.iter().map(|c| c.map_positions(|p| p + k, &top)));
        Ok(Module::raw(
            &self.0.ring,
            gens,
            rels,
            cols,
            self.0.known_minimal && o.0.known_minimal,
        ))
    }

    /// The same module viewed over the ambient polynomial ring.
    pub fn over_ambient(&self) -> Module {
        let ring = &self.0.ring;
        if ring.is_polynomial() {
            return self.clone();
        }
        let mut cols = self.0.cols.clone();
        let mut rels = self.0.rels.clone();
        for j in 0..self.ngens() {
            for g in ring.ideal_generators() {
                cols.push(g.map_positions(|_| j as u32, &TermOrder::top()));
                rels.push(g.degree(&[0]).unwrap() + self.0.gens[j]);
            }
        }
        Module::raw(&ring.ambient(), self.0.gens.clone(), rels, cols, false)
    }

    /// Re-presents over another ring on the same variables (e.g. `R/c` or `S`).
    pub fn change_ring(&self, ring: &Ring) -> Result<Module> {
        if ring.nvars() != self.0.ring.nvars() || ring.field() != self.0.ring.field() {
            return Err(Error::Structural("rings have different variables".into()));
        }
        Module::with_degrees(
            ring,
            self.0.gens.clone(),
            self.0.rels.clone(),
            self.0.cols.clone(),
        )
    }

    /// `ann(M) = ∩_i (relations : e_i)` as ideal generators (reduced mod the ring).
    pub fn annihilator(&self) -> Result<Vec<Vector>> {
        self.0
            .annihilator
            .get_or_init(|| self.compute_annihilator())
            .clone()
    }

    fn compute_annihilator(&self) -> Result<Vec<Vector>> {
        let ring = &self.0.ring;
        let field = ring.field();
        let cap = ring.budget().max_degree;
        let rel = self.ambient_relations();
        let mut current: Option<Vec<Vector>> = None;
        for i in 0..self.ngens() {
            let img = Vector::unit(i as u32, field);
            let colon = kernel(field, &[self.0.gens[i]], &[img], &self.0.gens, &rel, cap)?;
            // shift to degree 0 twist
            let colon: Vec<Vector> = colon
                .into_iter()
                .map(|v| v.map_positions(|_| 0, &TermOrder::top()))
                .collect();
            current = Some(match current {
                None => colon,
                Some(prev) => intersect_ideals(field, &prev, &colon, cap)?,
            });
        }
        let gens = current.unwrap_or_else(|| vec![Vector::constant(field.one())]);
        let gb = buchberger(&gens, &[0], &TermOrder::top(), cap)?;
        Ok(gb.basis().to_vec())
    }

    pub fn describe(&self) -> String {
        let ring = &self.0.ring;
        let mut rows = Vec::new();
        for i in 0..self.ngens() {
            let row: Vec<String> = (0..self.nrels())
                .map(|j| ring.format_poly(&self.entry(i, j)))
                .collect();
            rows.push(format!("[{}]", row.join(", ")));
        }
        format!(
            "coker(twists={:?}, matrix=[{}])",
            self.0.gens,
            rows.join(", ")
        )
    }
}

fn intersect_ideals(
    field: crate::algebra::Field,
    a: &[Vector],
    b: &[Vector],
    cap: i32,
) -> Result<Vec<Vector>> {
    // J1 ∩ J2 = kernel of S -> S/J1 ⊕ S/J2, 1 ↦ (1, 1)
    let top = TermOrder::top();
    let img = Vector::unit(0, field).add(&Vector::unit(1, field), &top);
    let mut rels: Vec<Vector> = a.to_vec();
    rels.extend(b.iter().map(|v| v.map_positions(|_| 1, &top)));
    kernel(field, &[0], &[img], &[0, 0], &rels, cap)
}

/// Cokernel of `cols` inside the free module with the given twists.
pub fn cokernel(ring: &Ring, twists: &[i32], cols: Vec<Vector>) -> Result<Module> {
    Module::new(ring, twists.to_vec(), cols)
}

/// `(⟨z⟩ + ⟨d⟩) / ⟨d⟩` inside the free module `S^twists`, minimally presented.
///
/// `d` must contain the ring-relation multiples of the ambient free module.
pub fn subquotient(ring: &Ring, twists: &[i32], z: &[Vector], d: &[Vector]) -> Result<Module> {
    Ok(subquotient_with_gens(ring, twists, z, d)?.0)
}

/// Like [`subquotient`], also returning the element of `S^twists` behind each generator.
pub fn subquotient_with_gens(
    ring: &Ring,
    twists: &[i32],
    z: &[Vector],
    d: &[Vector],
) -> Result<(Module, Vec<Vector>)> {
    let cap = ring.budget().max_degree;
    let (chosen, _) = minimal_generators(z, d, twists, cap)?;
    if chosen.is_empty() {
        return Ok((Module::zero(ring), vec![]));
    }
    let zs: Vec<Vector> = chosen.iter().map(|&i| z[i].clone()).collect();
    let degs: Vec<i32> = zs.iter().map(|v| v.degree(twists).unwrap()).collect();
    let rels = kernel(ring.field(), &degs, &zs, twists, d, cap)?;
    let m = Module::new(
        ring,
        degs,
        rels.iter().map(|r| ring.reduce_vector(r)).collect(),
    )?;
    let min = m.minimalized()?;
    let gens = min.kept.iter().map(|&i| zs[i].clone()).collect();
    Ok((min.module.clone(), gens))
}

/// Generators of `{ v ∈ R^src : Σ v_i images_i ∈ ⟨tgt_rels⟩ }`, reduced modulo the ring.
pub fn kernel_over_ring(
    ring: &Ring,
    src: &[i32],
    images: &[Vector],
    tgt: &[i32],
    tgt_rels: &[Vector],
) -> Result<Vec<Vector>> {
    let ker = kernel(
        ring.field(),
        src,
        images,
        tgt,
        tgt_rels,
        ring.budget().max_degree,
    )?;
    Ok(ker
        .iter()
        .map(|v| ring.reduce_vector(v))
        .filter(|v| !v.is_zero())
        .collect())
}

/// Multiplies a matrix given by columns (in a free module of rank `rank`) by polynomial coefficients.
pub fn combine(cols: &[Vector], coeffs: &Vector) -> Vector {
    let top = TermOrder::top();
    let mut terms = Vec::new();
    for t in &coeffs.terms {
        for s in &cols[t.pos as usize].terms {
            terms.push(crate::algebra::Term {
                m: s.m.mul(&t.m),
                pos: s.pos,
                c: s.c.mul(&t.c),
            });
        }
    }
    Vector::from_terms(terms, &top)
}

/// Scalar coefficient of `m * e_pos` in `v`.
pub fn coefficient(v: &Vector, m: &Monomial, pos: u32) -> Option<Scalar> {
    v.terms
        .iter()
        .find(|t| t.pos == pos && t.m == *m)
        .map(|t| t.c.clone())
}

pub(crate) fn ambient_series_cell(m: &Module) -> &OnceLock<Result<Vec<HilbertSeries>>> {
    &m.0.ambient_series
}

pub(crate) fn ambient_modules_cell(m: &Module) -> &OnceLock<Result<Vec<Module>>> {
    &m.0.ambient_modules
}
