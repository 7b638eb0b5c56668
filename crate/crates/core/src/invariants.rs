//! Depth, dimension, grade, Serre conditions, G_C-dimension and friends.
//!
//! Local cohomology enters only through graded local duality:
//! `H^i_m(M) != 0` iff `Ext^{n-i}_S(M, S) != 0`.

use serde::Serialize;

use crate::algebra::{buchberger, DenseMatrix, GroebnerBasis, Monomial, TermOrder, Vector};
use crate::engine::Engine;
use crate::error::{Error, Result};
use crate::iso::IsoVerdict;
use crate::module::Module;
use crate::ring::Ring;

/// Honest answer to a "for all i" question.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum BoundedVerdict {
    True,
    False {
        witness: String,
    },
    TrueUpToBound {
        bound: usize,
    },
    /// Checked at every probe prime of the named family, nowhere else.
    TrueOnProbes {
        probes: usize,
    },
}

impl BoundedVerdict {
    pub fn holds(&self) -> bool {
        !matches!(self, BoundedVerdict::False { .. })
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, BoundedVerdict::True | BoundedVerdict::False { .. })
    }

    pub fn label(&self) -> String {
        match self {
            BoundedVerdict::True => "true".into(),
            BoundedVerdict::False { witness } => format!("false ({witness})"),
            BoundedVerdict::TrueUpToBound { bound } => format!("true up to {bound}"),
            BoundedVerdict::TrueOnProbes { probes } => format!("true on {probes} probe primes"),
        }
    }
}

/// Grade or reduced grade: a value, or vanishing through a bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "value")]
pub enum BoundedIndex {
    Exact(usize),
    InfinityUpTo(usize),
}

impl BoundedIndex {
    pub fn at_least(&self, n: usize) -> bool {
        match *self {
            BoundedIndex::Exact(v) => v >= n,
            BoundedIndex::InfinityUpTo(b) => b >= n,
        }
    }

    pub fn value(&self) -> Option<usize> {
        match *self {
            BoundedIndex::Exact(v) => Some(v),
            BoundedIndex::InfinityUpTo(_) => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum GcDimVerdict {
    Zero {
        bound: usize,
    },
    Finite {
        value: usize,
        bound: usize,
    },
    /// Not zero, and no finite value could be confirmed within the caps.
    PositiveUnknown {
        bound: usize,
        note: String,
    },
    /// Exact obstruction: the only possible finite value fails.
    Infinite {
        witness: String,
    },
}

impl GcDimVerdict {
    pub fn value(&self) -> Option<usize> {
        match *self {
            GcDimVerdict::Zero { .. } => Some(0),
            GcDimVerdict::Finite { value, .. } => Some(value),
            _ => None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SemidualizingCertificate {
    pub module: Module,
    pub homothety: IsoVerdict,
    pub ext_vanishing: BoundedVerdict,
}

impl SemidualizingCertificate {
    pub fn is_valid(&self) -> bool {
        self.homothety.is_isomorphic() && self.ext_vanishing.holds()
    }
}

/// A homogeneous prime used to sample "for every prime" statements.
#[derive(Clone, Debug)]
pub struct ProbePrime {
    pub label: String,
    /// Variable indices when the prime is generated by variables.
    pub subset: Option<Vec<usize>>,
    pub generators: Vec<Vector>,
    gb: GroebnerBasis,
    height: usize,
    /// User-supplied primes are not checked for primality.
    pub trusted: bool,
}

impl ProbePrime {
    pub fn variables(ring: &Ring, subset: &[usize]) -> ProbePrime {
        let names: Vec<&str> = subset.iter().map(|&i| ring.vars()[i].as_str()).collect();
        let gens: Vec<Vector> = subset.iter().map(|&i| ring.var(i)).collect();
        ProbePrime {
            label: format!("({})", names.join(",")),
            subset: Some(subset.to_vec()),
            gb: GroebnerBasis::from_basis(gens.clone(), TermOrder::top()),
            generators: gens,
            height: subset.len(),
            trusted: false,
        }
    }

    /// A prime given by homogeneous generators in the ambient ring; primality is trusted.
    pub fn user(ring: &Ring, gens: &[Vector]) -> Result<ProbePrime> {
        let s = ring.ambient();
        let cap = ring.budget().max_degree;
        let gb = buchberger(gens, &[0], &TermOrder::top(), cap)?;
        let quotient = Module::cyclic(&s, gens)?;
        let dim = quotient
            .krull_dim()?
            .ok_or_else(|| Error::Structural("probe prime is the unit ideal".into()))?;
        let shown: Vec<String> = gens.iter().map(|g| ring.format_poly(g)).collect();
        Ok(ProbePrime {
            label: format!("({})", shown.join(",")),
            subset: None,
            generators: gens.to_vec(),
            gb,
            height: ring.nvars() - dim,
            trusted: true,
        })
    }

    /// Height in the ambient polynomial ring.
    pub fn height(&self) -> usize {
        self.height
    }

    pub fn contains(&self, f: &Vector) -> bool {
        match &self.subset {
            Some(vars) => f.terms.iter().all(|t| vars.iter().any(|&v| t.m.exp(v) > 0)),
            None => self.gb.normal_form(f).is_zero(),
        }
    }

    pub fn contains_ideal(&self, gens: &[Vector]) -> bool {
        gens.iter().all(|g| self.contains(g))
    }

    pub fn is_maximal(&self, n: usize) -> bool {
        self.height == n
    }
}

/// Every variable-subset prime containing the ring's defining ideal.
pub fn probe_primes(ring: &Ring) -> Vec<ProbePrime> {
    let n = ring.nvars();
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        let subset: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
        let p = ProbePrime::variables(ring, &subset);
        if p.contains_ideal(ring.ideal_generators()) {
            out.push(p);
        }
    }
    out.sort_by_key(|p| (p.height, p.subset.clone()));
    out
}

impl Engine {
    /// `{ j : Ext^j_S(M, S) != 0 }`.
    fn ambient_support(&self, m: &Module) -> Result<Vec<usize>> {
        let series = self.ambient_series(m)?;
        Ok((0..series.len())
            .filter(|&j| !series[j].is_zero())
            .collect())
    }

    /// `None` for the zero module (depth +∞).
    pub fn depth(&self, m: &Module) -> Result<Option<usize>> {
        let n = m.ring().nvars();
        Ok(self.ambient_support(m)?.last().map(|&j| n - j))
    }

    /// `None` for the zero module.
    pub fn krull_dim(&self, m: &Module) -> Result<Option<usize>> {
        let n = m.ring().nvars();
        Ok(self.ambient_support(m)?.first().map(|&j| n - j))
    }

    /// Degrees `i` with `H^i_m(M) != 0`, ascending.
    pub fn local_cohomology_degrees(&self, m: &Module) -> Result<Vec<usize>> {
        let n = m.ring().nvars();
        let mut v: Vec<usize> = self
            .ambient_support(m)?
            .into_iter()
            .map(|j| n - j)
            .collect();
        v.reverse();
        Ok(v)
    }

    pub fn is_cm(&self, m: &Module) -> Result<bool> {
        Ok(self.local_cohomology_degrees(m)?.len() <= 1)
    }

    /// Maximal Cohen-Macaulay: `depth M = dim R` (the zero module is not mCM).
    pub fn is_mcm(&self, m: &Module) -> Result<bool> {
        let d = m.ring().invariants()?.dim;
        Ok(self.depth(m)? == Some(d))
    }

    /// Largest `i < dim M` with `H^i_m(M) != 0`.
    pub fn cc(&self, m: &Module) -> Result<usize> {
        let degs = self.local_cohomology_degrees(m)?;
        if degs.len() <= 1 {
            return Err(Error::Inapplicable(
                "cc is only defined for non-Cohen-Macaulay modules".into(),
            ));
        }
        Ok(degs[degs.len() - 2])
    }

    /// Dimension of `Ext^j_S(M, S)`, `None` when it vanishes.
    pub fn ambient_ext_dim(&self, m: &Module, j: usize) -> Result<Option<usize>> {
        let series = self.ambient_series(m)?;
        Ok(series.get(j).and_then(|h| h.dimension()))
    }

    /// `gr(M)`: exact over CM rings, a bounded search otherwise.
    pub fn grade(&self, m: &Module) -> Result<BoundedIndex> {
        let ring = m.ring();
        let inv = ring.invariants()?;
        let Some(dm) = self.krull_dim(m)? else {
            return Err(Error::Inapplicable("grade of the zero module".into()));
        };
        if inv.is_cm {
            return Ok(BoundedIndex::Exact(inv.dim - dm));
        }
        let b = self.bound_for(ring.nvars());
        let r = Module::free(ring, &[0]);
        Ok(match self.first_nonvanishing_ext(m, &r, 0, b)? {
            Some(i) => BoundedIndex::Exact(i),
            None => BoundedIndex::InfinityUpTo(b),
        })
    }

    /// `rgr(M, C) = inf{ i > 0 : Ext^i(M, C) != 0 }`, searched through `b`.
    pub fn reduced_grade(&self, m: &Module, c: &Module, b: usize) -> Result<BoundedIndex> {
        Ok(match self.first_nonvanishing_ext(m, c, 1, b)? {
            Some(i) => BoundedIndex::Exact(i),
            None => BoundedIndex::InfinityUpTo(b),
        })
    }

    /// `depth M_p`; `None` when `M_p = 0`.
    pub fn depth_at_prime(&self, m: &Module, p: &ProbePrime) -> Result<Option<usize>> {
        let n = m.ring().nvars();
        let support = self.ambient_support(m)?;
        let mut best = None;
        for j in support {
            // only j <= height p can localize nontrivially
            if j > p.height() {
                continue;
            }
            let e = self.ext_to_ambient(m, j)?;
            if p.contains_ideal(&e.annihilator()?) {
                best = Some(j);
            }
        }
        let _ = n;
        Ok(best.map(|j| p.height() - j))
    }

    /// `dim M_p`; `None` when `M_p = 0`.
    pub fn dim_at_prime(&self, m: &Module, p: &ProbePrime) -> Result<Option<usize>> {
        for j in self.ambient_support(m)? {
            if j > p.height() {
                break;
            }
            let e = self.ext_to_ambient(m, j)?;
            if p.contains_ideal(&e.annihilator()?) {
                return Ok(Some(p.height() - j));
            }
        }
        Ok(None)
    }

    /// Serre's condition `S̃_k`: `depth M_p >= min(k, depth R_p)` for all primes.
    pub fn serre_tilde(&self, m: &Module, k: usize) -> Result<BoundedVerdict> {
        if k < 1 {
            return Err(Error::Structural(
                "Serre condition index must be at least 1".into(),
            ));
        }
        let ring = m.ring();
        let inv = ring.invariants()?;
        let n = ring.nvars();
        if inv.is_cm {
            for j in (inv.codim + 1)..=n {
                if let Some(d) = self.ambient_ext_dim(m, j)? {
                    if d as i64 > n as i64 - j as i64 - k as i64 {
                        return Ok(BoundedVerdict::False {
                            witness: format!(
                                "Ext^{j}_S(M,S) has dimension {d} > {}",
                                n as i64 - j as i64 - k as i64
                            ),
                        });
                    }
                }
            }
            return Ok(BoundedVerdict::True);
        }
        let probes = self.probe_primes(ring);
        self.serre_on_probes(m, k, &probes)
    }

    pub fn serre_on_probes(
        &self,
        m: &Module,
        k: usize,
        probes: &[ProbePrime],
    ) -> Result<BoundedVerdict> {
        let r = Module::free(m.ring(), &[0]);
        for p in probes {
            let Some(dr) = self.depth_at_prime(&r, p)? else {
                continue;
            };
            if let Some(dm) = self.depth_at_prime(m, p)? {
                if dm < k.min(dr) {
                    return Ok(BoundedVerdict::False {
                        witness: format!("depth at {} is {dm} < min({k}, {dr})", p.label),
                    });
                }
            }
        }
        Ok(BoundedVerdict::TrueOnProbes {
            probes: probes.len(),
        })
    }

    /// Homothety `R ≅ Hom(C, C)` and `Ext^i(C, C) = 0` for `1 <= i <= b`.
    pub fn is_semidualizing(&self, c: &Module, b: usize) -> Result<SemidualizingCertificate> {
        let ring = c.ring();
        let r = Module::free(ring, &[0]);
        // a graded module iso R ≅ Hom(C,C) forces the homothety to be bijective
        let end = self.hom(c, c)?;
        let homothety = self.is_isomorphic(&r, &end)?;
        let mut ext_vanishing = BoundedVerdict::TrueUpToBound { bound: b };
        if homothety.is_isomorphic() {
            for i in 1..=b {
                if !self.ext_vanishes(c, c, i)? {
                    ext_vanishing = BoundedVerdict::False {
                        witness: format!("Ext^{i}(C,C) != 0"),
                    };
                    break;
                }
            }
            if c.minimal()?.nrels() == 0 && c.ngens() > 0 {
                ext_vanishing = BoundedVerdict::True;
            }
        }
        Ok(SemidualizingCertificate {
            module: c.minimal()?,
            homothety,
            ext_vanishing,
        })
    }

    pub(crate) fn require_semidualizing(&self, c: &Module) -> Result<()> {
        let b = self.bound_for(c.ring().nvars());
        let key = format!("sd{b}|{}", self.content_key(c)?);
        let ok = self.memo_flag(&key, || Ok(self.is_semidualizing(c, b)?.is_valid()))?;
        if ok {
            Ok(())
        } else {
            Err(Error::Inapplicable("C is not semidualizing".into()))
        }
    }

    /// `ω_R = Ext^c_S(R, S)(-n)` presented over `R`.
    pub fn canonical_module(&self, ring: &Ring) -> Result<Module> {
        let inv = ring.invariants()?;
        let r = Module::free(ring, &[0]);
        let e = self.ext_to_ambient(&r, inv.codim)?;
        let over_r = Module::with_degrees(
            ring,
            e.gens().to_vec(),
            e.rels().to_vec(),
            e.columns().to_vec(),
        )?;
        over_r.twist(-(ring.nvars() as i32)).minimal()
    }

    /// Generators of an ideal `J ⊆ R` with `J ≅ ω_R(δ)`, and `δ`.
    pub fn canonical_ideal(&self, ring: &Ring) -> Result<(Vec<Vector>, i32)> {
        use rand::{Rng, SeedableRng};
        let omega = self.canonical_module(ring)?;
        let unit = Module::free(ring, &[0]);
        let (dual, cocycles, _) = self.ext_with_cocycles(&omega, &unit, 0)?;
        let hs = omega.hilbert_series()?;
        let top = TermOrder::top();
        let field = ring.field();
        let mut degrees: Vec<i32> = dual.gens().to_vec();
        degrees.sort_unstable();
        degrees.dedup();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(self.config.seed);
        for delta in degrees {
            let idx: Vec<usize> = (0..dual.ngens())
                .filter(|&j| dual.gens()[j] == delta)
                .collect();
            let mut candidates: Vec<Vector> = idx.iter().map(|&j| cocycles[j].clone()).collect();
            for _ in 0..self.config.iso_attempts.min(8) {
                let mut v = Vector::zero();
                for &j in &idx {
                    let c = field.from_i64(rng.gen_range(1..=97));
                    v = v.add(&cocycles[j].scale(&c), &top);
                }
                candidates.push(v);
            }
            for f in candidates {
                let images: Vec<Vector> = f
                    .components(omega.ngens())
                    .iter()
                    .map(|p| ring.reduce(p))
                    .filter(|p| !p.is_zero())
                    .collect();
                if images.is_empty() {
                    continue;
                }
                let j = Module::ideal(ring, &images)?;
                if j.hilbert_series()?.sub(&hs.shift(delta)).is_zero() {
                    return Ok((images, delta));
                }
            }
        }
        Err(Error::Inapplicable(
            "ω_R does not embed in R as an ideal".into(),
        ))
    }

    /// `M ∈ A_C`: `μ` bijective, `Tor_i(M,C) = 0 = Ext^i(C, M⊗C)` for `1 <= i <= b`.
    pub fn in_auslander_class(&self, m: &Module, c: &Module, b: usize) -> Result<BoundedVerdict> {
        self.require_semidualizing(c)?;
        let m = m.minimal()?;
        let c = c.minimal()?;
        if m.ngens() == 0 {
            return Ok(BoundedVerdict::True);
        }
        for i in 1..=b {
            if !self.tor_vanishes(&m, &c, i)? {
                return Ok(BoundedVerdict::False {
                    witness: format!("Tor_{i}(M,C) != 0"),
                });
            }
        }
        if !self.evaluation_is_bijective(&m, &c)? {
            return Ok(BoundedVerdict::False {
                witness: "M -> Hom(C, M⊗C) is not bijective".into(),
            });
        }
        let t = self.tensor(&m, &c)?;
        for i in 1..=b {
            if !self.ext_vanishes(&c, &t, i)? {
                return Ok(BoundedVerdict::False {
                    witness: format!("Ext^{i}(C, M⊗C) != 0"),
                });
            }
        }
        let free = m.nrels() == 0 || self.resolution(&m, b + 1)?.complete;
        let cfree = c.nrels() == 0;
        if free && cfree {
            return Ok(BoundedVerdict::True);
        }
        Ok(BoundedVerdict::TrueUpToBound { bound: b })
    }

    /// Whether `μ: M -> Hom(C, M ⊗ C)`, `m ↦ (c ↦ m ⊗ c)`, is bijective.
    fn evaluation_is_bijective(&self, m: &Module, c: &Module) -> Result<bool> {
        use crate::resolution::{block_relations, ext_module_with_gens, tensor_quotient};
        let ring = m.ring();
        let res_m = self.resolution(m, 1)?;
        // M ⊗ C on generators e_a ⊗ c_k at position a*kc + k
        let t = tensor_quotient(&res_m, 0, c)?;
        let res_c = self.resolution(c, 1)?;
        let (h, gens) = ext_module_with_gens(&res_c, &t, 0)?;
        if h.hilbert_series()? != m.hilbert_series()? {
            return Ok(false);
        }
        let (kc, km) = (c.ngens(), m.ngens());
        let kt = t.ngens();
        let field = ring.field();
        let top = TermOrder::top();
        // μ(e_a) sends c_k to e_a ⊗ c_k: block k of Hom(F_0(C), T) holds a copy of T
        let mut span: Vec<Vector> = (0..km)
            .map(|a| {
                let terms = (0..kc)
                    .map(|k| crate::algebra::Term {
                        m: Monomial::ONE,
                        pos: (k * kt + a * kc + k) as u32,
                        c: field.one(),
                    })
                    .collect();
                Vector::from_terms(terms, &top)
            })
            .collect();
        span.extend(block_relations(&t, kc));
        span.extend(ring.ideal_multiples(kc * kt));
        let mut twists = Vec::new();
        for &a in res_c.degrees_at(0) {
            for &g in t.gens() {
                twists.push(g - a);
            }
        }
        let gb = buchberger(&span, &twists, &top, ring.budget().max_degree)?;
        Ok(gens.iter().all(|g| gb.normal_form(g).is_zero()))
    }

    /// Whether `M` has G_C-dimension zero, checking Ext through `b`.
    fn gc_zero_test(
        &self,
        m: &Module,
        c: &Module,
        b: usize,
    ) -> Result<std::result::Result<(), String>> {
        if m.minimal()?.ngens() == 0 {
            return Ok(Ok(()));
        }
        if !self.biduality_vanishes(m, c, 2)? {
            return Ok(Err("M -> M^∇∇ is not bijective".into()));
        }
        if let Some(i) = self.first_nonvanishing_ext(m, c, 1, b)? {
            return Ok(Err(format!("Ext^{i}(M,C) != 0")));
        }
        let dual = self.hom(m, c)?;
        if let Some(i) = self.first_nonvanishing_ext(&dual, c, 1, b)? {
            return Ok(Err(format!("Ext^{i}(M^∇,C) != 0")));
        }
        Ok(Ok(()))
    }

    /// Smallest `r` with `Ω^r M` of G_C-dimension zero (Ext checked through `b`).
    pub fn gc_dim(&self, m: &Module, c: &Module, b: usize) -> Result<GcDimVerdict> {
        self.require_semidualizing(c)?;
        let ring = m.ring();
        let depth_r = ring.invariants()?.depth;
        let Some(depth_m) = self.depth(m)? else {
            return Ok(GcDimVerdict::Zero { bound: b });
        };
        let mut last_failure = String::new();
        for r in 0..=depth_r {
            let omega = match self.syzygy(m, r) {
                Ok(o) => o,
                Err(Error::Budget(note)) => {
                    return Ok(GcDimVerdict::PositiveUnknown { bound: b, note })
                }
                Err(e) => return Err(e),
            };
            match self.gc_zero_test(&omega, c, b) {
                Ok(Ok(())) => {
                    return Ok(if r == 0 {
                        GcDimVerdict::Zero { bound: b }
                    } else {
                        GcDimVerdict::Finite { value: r, bound: b }
                    })
                }
                Ok(Err(w)) => last_failure = format!("Ω^{r}: {w}"),
                Err(Error::Budget(note)) => {
                    return Ok(GcDimVerdict::PositiveUnknown { bound: b, note })
                }
                Err(e) => return Err(e),
            }
        }
        // finite G_C-dimension is at most depth R, so the last failure is decisive
        let _ = depth_m;
        Ok(GcDimVerdict::Infinite {
            witness: last_failure,
        })
    }

    /// `R/I` is G_C-perfect: `gr(R/I) = G_C-dim(R/I)`.
    pub fn is_gc_perfect(&self, ideal: &[Vector], c: &Module) -> Result<BoundedVerdict> {
        let ring = c.ring();
        let q = Module::cyclic(ring, ideal)?;
        self.is_gc_perfect_module(&q, c)
    }

    pub fn is_gc_perfect_module(&self, q: &Module, c: &Module) -> Result<BoundedVerdict> {
        let b = self.bound_for(q.ring().nvars());
        let g = self.grade(q)?;
        let gd = self.gc_dim(q, c, b)?;
        Ok(match (g.value(), gd.value()) {
            (Some(a), Some(v)) if a == v => BoundedVerdict::TrueUpToBound { bound: b },
            (Some(a), Some(v)) => BoundedVerdict::False {
                witness: format!("grade {a} but G_C-dimension {v}"),
            },
            (_, None) if matches!(gd, GcDimVerdict::Infinite { .. }) => BoundedVerdict::False {
                witness: "infinite G_C-dimension".into(),
            },
            _ => return Err(Error::Budget("grade or G_C-dimension undetermined".into())),
        })
    }

    pub fn is_gc_gorenstein(&self, ideal: &[Vector], c: &Module) -> Result<BoundedVerdict> {
        let ring = c.ring();
        let q = Module::cyclic(ring, ideal)?;
        let perfect = self.is_gc_perfect_module(&q, c)?;
        if !perfect.holds() {
            return Ok(perfect);
        }
        let g = self.grade(&q)?.value().unwrap_or(0);
        let e = self.ext(&q, c, g)?;
        if e.ngens() == 1 {
            Ok(perfect)
        } else {
            Ok(BoundedVerdict::False {
                witness: format!("Ext^{g}(R/I,C) needs {} generators", e.ngens()),
            })
        }
    }

    /// `K = Ext^{gr I}(R/I, C)` over `R/I` with its certificate.
    pub fn induced_semidualizing(
        &self,
        ideal: &[Vector],
        c: &Module,
    ) -> Result<(Module, SemidualizingCertificate)> {
        let ring = c.ring();
        let perfect = self.is_gc_perfect(ideal, c)?;
        if !perfect.holds() {
            return Err(Error::Inapplicable(format!(
                "R/I is not G_C-perfect: {}",
                perfect.label()
            )));
        }
        let q = Module::cyclic(ring, ideal)?;
        let g = self.grade(&q)?.value().unwrap_or(0);
        let e = self.ext(&q, c, g)?;
        let quotient = ring.quotient(ideal)?;
        let k = e.change_ring(&quotient)?.minimal()?;
        let cert = self.is_semidualizing(&k, self.bound_for(ring.nvars()))?;
        Ok((k, cert))
    }

    /// `(finite length?, length)`.
    pub fn finite_length(&self, m: &Module) -> Result<(bool, Option<i64>)> {
        let h = m.hilbert_series()?;
        match h.dimension() {
            None => Ok((true, Some(0))),
            Some(0) => Ok((true, h.length())),
            _ => Ok((false, None)),
        }
    }

    /// Dimension of the socle `(0 :_M m)` in degree `d`.
    pub fn socle_dimension(&self, m: &Module, d: i32) -> Result<usize> {
        let m = m.minimal()?;
        let field = m.ring().field();
        let n = m.ring().nvars();
        let basis = m.basis_in_degree(d)?;
        if basis.is_empty() {
            return Ok(0);
        }
        let mut rows: std::collections::BTreeMap<(usize, Vec<u32>, u32), usize> =
            Default::default();
        let mut entries = Vec::new();
        for (c, (mono, p)) in basis.iter().enumerate() {
            for v in 0..n {
                let img =
                    m.normal_form(&Vector::term(mono.mul(&Monomial::var(v)), *p, field.one()))?;
                for t in &img.terms {
                    let len = rows.len();
                    let r = *rows.entry((v, t.m.exponents(n), t.pos)).or_insert(len);
                    entries.push((r, c, t.c.clone()));
                }
            }
        }
        let mut a = DenseMatrix::zeros(field, rows.len().max(1), basis.len());
        for (r, c, v) in entries {
            a.set(r, c, v);
        }
        Ok(a.nullspace().len())
    }

    /// `m ∈ Ass(M)`: a nonzero socle element exists.
    pub fn m_in_ass(&self, m: &Module) -> Result<bool> {
        let n = m.ring().nvars();
        let top_ext = self.ext_to_ambient(m, n)?;
        if top_ext.is_zero()? {
            return Ok(false);
        }
        // H^0_m(M)_d != 0 iff Ext^n_S(M,S)_{-d-n} != 0, so the socle lives below this
        let lo = m.minimal()?.gens().iter().copied().min().unwrap_or(0);
        let hi = -top_ext.gens().iter().copied().min().unwrap_or(0) - n as i32;
        for d in lo..=hi {
            if self.socle_dimension(m, d)? > 0 {
                return Ok(true);
            }
        }
        Ok(false)
    }

    pub fn is_eilenberg_maclane(&self, m: &Module) -> Result<bool> {
        let degs = self.local_cohomology_degrees(m)?;
        Ok(degs.len() <= 2)
    }

    /// `ℓ(H^i_m(M)) < ∞` for all `i < dim M`.
    pub fn is_generalized_cm(&self, m: &Module) -> Result<bool> {
        let n = m.ring().nvars();
        let Some(d) = self.krull_dim(m)? else {
            return Err(Error::Inapplicable("zero module".into()));
        };
        if d == 0 {
            return Err(Error::Inapplicable(
                "generalized Cohen-Macaulay needs dim M >= 1".into(),
            ));
        }
        for i in 0..d {
            if let Some(e) = self.ambient_ext_dim(m, n - i)? {
                if e > 0 {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// `rgr(M, C) = G_C-dim M >= 1`.
    pub fn is_reduced_gc_perfect(
        &self,
        m: &Module,
        c: &Module,
        b: usize,
    ) -> Result<BoundedVerdict> {
        let gd = self.gc_dim(m, c, b)?;
        let rg = self.reduced_grade(m, c, b)?;
        Ok(match (gd.value(), rg) {
            (Some(v), BoundedIndex::Exact(r)) if v == r && v >= 1 => {
                BoundedVerdict::TrueUpToBound { bound: b }
            }
            (Some(v), rg) => BoundedVerdict::False {
                witness: format!("G_C-dimension {v}, reduced grade {rg:?}"),
            },
            (None, _) => BoundedVerdict::False {
                witness: format!("G_C-dimension not finite: {gd:?}"),
            },
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

    fn mul(r: &Ring, a: &Vector, b: &Vector) -> Vector {
        let _ = r;
        a.mul_poly(b, &TermOrder::top())
    }

    fn axes() -> Ring {
        let s = poly(&["x", "y", "z"]);
        let rels = [
            mul(&s, &s.var(0), &s.var(1)),
            mul(&s, &s.var(0), &s.var(2)),
            mul(&s, &s.var(1), &s.var(2)),
        ];
        s.quotient(&rels).unwrap().with_budget(crate::ring::Budget {
            max_degree: 24,
            max_rank: 2048,
        })
    }

    #[test]
    fn depth_and_dimension() {
        let e = Engine::default();
        let s = poly(&["x", "y", "z"]);
        let free = Module::free(&s, &[0]);
        assert_eq!(
            (e.depth(&free).unwrap(), e.krull_dim(&free).unwrap()),
            (Some(3), Some(3))
        );
        let line = Module::cyclic(&s, &[s.var(0), s.var(1)]).unwrap();
        assert_eq!(
            (e.depth(&line).unwrap(), e.krull_dim(&line).unwrap()),
            (Some(1), Some(1))
        );
        let sum = Module::cyclic(&s, &[s.var(0)])
            .unwrap()
            .direct_sum(&Module::cyclic(&s, &[s.var(1), s.var(2)]).unwrap())
            .unwrap();
        assert_eq!(
            (e.depth(&sum).unwrap(), e.krull_dim(&sum).unwrap()),
            (Some(1), Some(2))
        );
        assert_eq!(e.local_cohomology_degrees(&sum).unwrap(), vec![1, 2]);
        assert_eq!(e.cc(&sum).unwrap(), 1);
        assert!(matches!(e.cc(&free), Err(Error::Inapplicable(_))));
    }

    #[test]
    fn serre_conditions() {
        let e = Engine::default();
        let s3 = poly(&["x", "y", "z"]);
        assert!(!e
            .serre_tilde(&Module::cyclic(&s3, &[s3.var(0)]).unwrap(), 1)
            .unwrap()
            .holds());
        let s = poly(&["x", "y"]);
        let m = Module::ideal(&s, &[s.var(0), s.var(1)]).unwrap();
        assert_eq!(e.serre_tilde(&m, 1).unwrap(), BoundedVerdict::True);
        assert!(!e.serre_tilde(&m, 2).unwrap().holds());
    }

    #[test]
    fn depth_at_probe_primes() {
        let e = Engine::default();
        let s = poly(&["x", "y"]);
        let px = ProbePrime::variables(&s, &[0]);
        let py = ProbePrime::variables(&s, &[1]);
        assert_eq!(
            e.depth_at_prime(&Module::free(&s, &[0]), &px).unwrap(),
            Some(1)
        );
        let m = Module::cyclic(&s, &[s.var(0)]).unwrap();
        assert_eq!(e.depth_at_prime(&m, &px).unwrap(), Some(0));
        assert_eq!(e.depth_at_prime(&m, &py).unwrap(), None);
    }

    #[test]
    fn semidualizing_modules() {
        let e = Engine::default();
        let s = poly(&["x", "y"]);
        assert!(e
            .is_semidualizing(&Module::free(&s, &[0]), 3)
            .unwrap()
            .is_valid());
        let k = Module::cyclic(&s, &[s.var(0), s.var(1)]).unwrap();
        assert!(!e.is_semidualizing(&k, 3).unwrap().is_valid());
        let r = axes();
        let w = e.canonical_module(&r).unwrap();
        assert_eq!(w.ngens(), 2);
        assert!(e.is_semidualizing(&w, 6).unwrap().is_valid());
    }

    #[test]
    fn canonical_module_twist() {
        let e = Engine::default();
        let s = poly(&["x", "y"]);
        let w = e.canonical_module(&s).unwrap();
        assert_eq!((w.gens(), w.nrels()), (&[2][..], 0));
    }

    #[test]
    fn gc_dimensions() {
        let e = Engine::default();
        let s = poly(&["x", "y"]);
        let unit = Module::free(&s, &[0]);
        let k = Module::cyclic(&s, &[s.var(0), s.var(1)]).unwrap();
        assert_eq!(
            e.gc_dim(&unit, &unit, 6).unwrap(),
            GcDimVerdict::Zero { bound: 6 }
        );
        assert_eq!(
            e.gc_dim(&k, &unit, 6).unwrap(),
            GcDimVerdict::Finite { value: 2, bound: 6 }
        );
        let xy = s.quotient(&[mul(&s, &s.var(0), &s.var(1))]).unwrap();
        let mx = Module::cyclic(&xy, &[xy.var(0)]).unwrap();
        assert_eq!(
            e.gc_dim(&mx, &Module::free(&xy, &[0]), 6).unwrap(),
            GcDimVerdict::Zero { bound: 6 }
        );
    }

    #[test]
    fn perfect_ideals() {
        let e = Engine::default();
        let s = poly(&["x", "y"]);
        let unit = Module::free(&s, &[0]);
        assert!(e.is_gc_gorenstein(&[s.var(0)], &unit).unwrap().holds());
        assert!(e
            .is_gc_perfect(&[s.var(0), s.var(1)], &unit)
            .unwrap()
            .holds());
        assert!(e
            .is_gc_gorenstein(&[s.var(0), s.var(1)], &unit)
            .unwrap()
            .holds());
        let (k, cert) = e.induced_semidualizing(&[s.var(0)], &unit).unwrap();
        assert_eq!(k.ngens(), 1);
        assert!(cert.is_valid());
    }

    #[test]
    fn auslander_class() {
        let e = Engine::default();
        let s = poly(&["x", "y"]);
        let unit = Module::free(&s, &[0]);
        let k = Module::cyclic(&s, &[s.var(0), s.var(1)]).unwrap();
        assert!(e.in_auslander_class(&k, &unit, 4).unwrap().holds());
        let r = axes();
        let w = e.canonical_module(&r).unwrap();
        let kr = Module::cyclic(&r, &[r.var(0), r.var(1), r.var(2)]).unwrap();
        assert!(e
            .in_auslander_class(&Module::free(&r, &[0]), &w, 4)
            .unwrap()
            .holds());
        assert!(!e.in_auslander_class(&kr, &w, 4).unwrap().holds());
    }

    #[test]
    fn finite_length_and_socle() {
        let e = Engine::default();
        let s = poly(&["x", "y"]);
        let k = Module::cyclic(&s, &[s.var(0), s.var(1)]).unwrap();
        assert_eq!(e.finite_length(&k).unwrap(), (true, Some(1)));
        assert_eq!(
            e.finite_length(&Module::cyclic(&s, &[s.var(0)]).unwrap())
                .unwrap(),
            (false, None)
        );
        let m = Module::cyclic(
            &s,
            &[mul(&s, &s.var(0), &s.var(0)), mul(&s, &s.var(0), &s.var(1))],
        )
        .unwrap();
        assert!(e.m_in_ass(&m).unwrap());
        assert!(!e
            .m_in_ass(&Module::cyclic(&s, &[s.var(0)]).unwrap())
            .unwrap());
    }

    #[test]
    fn local_cohomology_shapes() {
        let e = Engine::default();
        let s3 = poly(&["x", "y", "z"]);
        let m = Module::cyclic(&s3, &[s3.var(0)])
            .unwrap()
            .direct_sum(&Module::cyclic(&s3, &[s3.var(1), s3.var(2)]).unwrap())
            .unwrap()
            .direct_sum(&Module::cyclic(&s3, &[s3.var(0), s3.var(1), s3.var(2)]).unwrap())
            .unwrap();
        assert!(!e.is_eilenberg_maclane(&m).unwrap());
        let s = poly(&["x", "y"]);
        let g = Module::cyclic(&s, &[s.var(0)])
            .unwrap()
            .direct_sum(&Module::cyclic(&s, &[s.var(0), s.var(1)]).unwrap())
            .unwrap();
        assert!(e.is_generalized_cm(&g).unwrap());
    }

    #[test]
    fn grades() {
        let e = Engine::default();
        let s3 = poly(&["x", "y", "z"]);
        let line = Module::cyclic(&s3, &[s3.var(0), s3.var(1)]).unwrap();
        assert_eq!(e.grade(&line).unwrap(), BoundedIndex::Exact(2));
        let s = poly(&["x", "y"]);
        let k = Module::cyclic(&s, &[s.var(0), s.var(1)]).unwrap();
        assert_eq!(
            e.reduced_grade(&k, &Module::free(&s, &[0]), 4).unwrap(),
            BoundedIndex::Exact(2)
        );
    }

    #[test]
    fn canonical_ideal_of_axes() {
        let e = Engine::default();
        let r = axes();
        let (j, _) = e.canonical_ideal(&r).unwrap();
        assert!(!j.is_empty());
        let q = Module::cyclic(&r, &j).unwrap();
        // a height-one ideal: R/J has dimension 0 here
        assert_eq!(e.krull_dim(&q).unwrap(), Some(0));
    }
}
