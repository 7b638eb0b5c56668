//! Standard graded quotient rings `k[x_1..x_n]/I`.

use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::Serialize;

use crate::algebra::{buchberger, Field, GroebnerBasis, Monomial, TermOrder, Vector};
use crate::error::{Error, Result};
use crate::module::Module;

/// Degree and rank caps applied to every computation over a ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Budget {
    pub max_degree: i32,
    pub max_rank: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_degree: 24,
            max_rank: 512,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RingInvariants {
    pub dim: usize,
    pub depth: usize,
    pub codim: usize,
    pub is_cm: bool,
    pub is_gorenstein: bool,
}

pub struct RingData {
    field: Field,
    vars: Vec<String>,
    ideal: GroebnerBasis,
    budget: Budget,
    key: String,
    ambient: OnceLock<Ring>,
    invariants: OnceLock<Result<RingInvariants>>,
}

/// Cheap-to-clone handle; equality is equality of mathematical content.
#[derive(Clone)]
pub struct Ring(Arc<RingData>);

impl PartialEq for Ring {
    fn eq(&self, o: &Ring) -> bool {
        Arc::ptr_eq(&self.0, &o.0) || self.0.key == o.0.key
    }
}

impl Eq for Ring {}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.describe())
    }
}

impl Ring {
    /// Polynomial ring over `field` in the named variables.
    pub fn polynomial(field: Field, vars: &[&str]) -> Result<Ring> {
        Ring::quotient_raw(
            field,
            vars.iter().map(|s| s.to_string()).collect(),
            &[],
            Budget::default(),
        )
    }

    /// `S/I` with all cached invariants computed.
    pub fn make(field: Field, vars: &[&str], relations: &[Vector]) -> Result<Ring> {
        let r = Ring::quotient_raw(
            field,
            vars.iter().map(|s| s.to_string()).collect(),
            relations,
            Budget::default(),
        )?;
        r.invariants()?;
        Ok(r)
    }

    pub fn quotient_raw(
        field: Field,
        vars: Vec<String>,
        relations: &[Vector],
        budget: Budget,
    ) -> Result<Ring> {
        if vars.is_empty() || vars.len() > crate::algebra::monomial::MAX_VARS {
            return Err(Error::Structural(format!(
                "number of variables must be between 1 and {}",
                crate::algebra::monomial::MAX_VARS
            )));
        }
        for (i, v) in vars.iter().enumerate() {
            if vars[..i].contains(v) {
                return Err(Error::Structural(format!("duplicate variable '{v}'")));
            }
        }
        let rels: Vec<Vector> = relations
            .iter()
            .filter(|p| !p.is_zero())
            .map(|p| p.resort(&TermOrder::top()))
            .collect();
        for p in &rels {
            if p.terms.iter().any(|t| t.pos != 0) {
                return Err(Error::Structural(
                    "ring relation must be a polynomial".into(),
                ));
            }
            if let Some(t) = p.terms.iter().find(|t| t.c.field() != field) {
                return Err(Error::Structural(format!(
                    "coefficient {} not in {}",
                    t.c,
                    field.name()
                )));
            }
            if !p.is_homogeneous(&[0]) {
                let names = vars.clone();
                return Err(Error::Structural(format!(
                    "relation {} is not homogeneous",
                    p.format_poly(&names)
                )));
            }
        }
        let ideal = buchberger(&rels, &[0], &TermOrder::top(), budget.max_degree.max(64))?;
        if ideal.basis().iter().any(|g| g.lead().unwrap().m.is_one()) {
            return Err(Error::Structural(
                "relations generate the unit ideal".into(),
            ));
        }
        let mut key = format!("{}|{}|", field.name(), vars.len());
        for g in ideal.basis() {
            key.push_str(&canonical_vector(g));
            key.push(';');
        }
        Ok(Ring(Arc::new(RingData {
            field,
            vars,
            ideal,
            budget,
            key,
            ambient: OnceLock::new(),
            invariants: OnceLock::new(),
        })))
    }

    /// Same ring with different computation caps.
    pub fn with_budget(&self, budget: Budget) -> Ring {
        let rels = self.ideal_generators().to_vec();
        Ring::quotient_raw(self.0.field, self.0.vars.clone(), &rels, budget).expect("valid ring")
    }

    /// `R/c` for homogeneous polynomials `c`.
    pub fn quotient(&self, extra: &[Vector]) -> Result<Ring> {
        let mut rels = self.ideal_generators().to_vec();
        rels.extend_from_slice(extra);
        Ring::quotient_raw(self.0.field, self.0.vars.clone(), &rels, self.0.budget)
    }

    pub fn field(&self) -> Field {
        self.0.field
    }

    pub fn vars(&self) -> &[String] {
        &self.0.vars
    }

    pub fn nvars(&self) -> usize {
        self.0.vars.len()
    }

    pub fn budget(&self) -> Budget {
        self.0.budget
    }

    pub fn key(&self) -> &str {
        &self.0.key
    }

    pub fn ideal(&self) -> &GroebnerBasis {
        &self.0.ideal
    }

    pub fn ideal_generators(&self) -> &[Vector] {
        self.0.ideal.basis()
    }

    pub fn is_polynomial(&self) -> bool {
        self.0.ideal.is_empty()
    }

    /// The ambient polynomial ring `S`.
    pub fn ambient(&self) -> Ring {
        if self.is_polynomial() {
            return self.clone();
        }
        self.0
            .ambient
            .get_or_init(|| {
                Ring::quotient_raw(self.0.field, self.0.vars.clone(), &[], self.0.budget).unwrap()
            })
            .clone()
    }

    /// Normal form of a polynomial modulo the ring relations.
    pub fn reduce(&self, p: &Vector) -> Vector {
        if self.is_polynomial() {
            return p.clone();
        }
        self.0.ideal.normal_form(p)
    }

    /// Reduces each component of a free-module element modulo the relations.
    pub fn reduce_vector(&self, v: &Vector) -> Vector {
        if self.is_polynomial() || v.is_zero() {
            return v.clone();
        }
        let rank = v
            .terms
            .iter()
            .map(|t| t.pos as usize + 1)
            .max()
            .unwrap_or(0);
        let comps: Vec<Vector> = v.components(rank).iter().map(|c| self.reduce(c)).collect();
        Vector::from_components(&comps, &TermOrder::top())
    }

    /// Generators `g * e_j` of `I * S^rank`.
    pub fn ideal_multiples(&self, rank: usize) -> Vec<Vector> {
        let mut out = Vec::with_capacity(rank * self.0.ideal.len());
        for j in 0..rank {
            for g in self.0.ideal.basis() {
                out.push(g.map_positions(|_| j as u32, &TermOrder::top()));
            }
        }
        out
    }

    pub fn invariants(&self) -> Result<RingInvariants> {
        self.0
            .invariants
            .get_or_init(|| compute_invariants(self))
            .clone()
    }

    /// Parses a polynomial in this ring's variables (not reduced).
    pub fn poly(&self, s: &str) -> Result<Vector> {
        crate::algebra::parse_poly(self.0.field, &self.0.vars, s)
            .map_err(|e| Error::Structural(e.to_string()))
    }

    pub fn var(&self, i: usize) -> Vector {
        Vector::term(Monomial::var(i), 0, self.0.field.one())
    }

    pub fn format_poly(&self, p: &Vector) -> String {
        p.format_poly(&self.0.vars)
    }

    pub fn describe(&self) -> String {
        let base = format!("{}[{}]", self.0.field.name(), self.0.vars.join(","));
        if self.is_polynomial() {
            base
        } else {
            let rels: Vec<String> = self
                .ideal_generators()
                .iter()
                .map(|g| self.format_poly(g))
                .collect();
            format!("{base}/({})", rels.join(", "))
        }
    }
}

fn compute_invariants(r: &Ring) -> Result<RingInvariants> {
    let n = r.nvars();
    let unit = Module::free(r, &[0]);
    let series = crate::resolution::ambient_ext_series(&unit)?;
    let nonzero: Vec<usize> = (0..series.len())
        .filter(|&j| !series[j].is_zero())
        .collect();
    let (lo, hi) = (*nonzero.first().unwrap(), *nonzero.last().unwrap());
    let dim = n - lo;
    let depth = n - hi;
    let codim = lo;
    let is_cm = dim == depth;
    let is_gorenstein = is_cm && {
        let omega = crate::resolution::ambient_ext_module(&unit, codim)?;
        omega.minimal()?.ngens() == 1
    };
    Ok(RingInvariants {
        dim,
        depth,
        codim,
        is_cm,
        is_gorenstein,
    })
}

/// Deterministic textual form of a vector, used for content keys.
pub(crate) fn canonical_vector(v: &Vector) -> String {
    let mut s = String::new();
    for t in v.terms.iter().rev() {
        s.push_str(&format!("{}@{}:", t.c, t.pos));
        for i in 0..crate::algebra::monomial::MAX_VARS {
            s.push_str(&t.m.exp(i).to_string());
            s.push(',');
        }
        s.push(' ');
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::TermOrder;

    fn prod(r: &Ring, i: usize, j: usize) -> Vector {
        r.var(i).mul_poly(&r.var(j), &TermOrder::top())
    }

    #[test]
    fn polynomial_ring_invariants() {
        let s = Ring::make(Field::Rationals, &["x", "y"], &[]).unwrap();
        let inv = s.invariants().unwrap();
        assert_eq!(
            (inv.dim, inv.depth, inv.is_cm, inv.is_gorenstein),
            (2, 2, true, true)
        );
    }

    #[test]
    fn hypersurface_invariants() {
        let s = Ring::polynomial(Field::Rationals, &["x", "y"]).unwrap();
        let r = Ring::make(Field::Rationals, &["x", "y"], &[prod(&s, 0, 1)]).unwrap();
        let inv = r.invariants().unwrap();
        assert_eq!(
            (inv.dim, inv.depth, inv.codim, inv.is_cm, inv.is_gorenstein),
            (1, 1, 1, true, true)
        );
    }

    #[test]
    fn coordinate_axes_not_gorenstein() {
        let s = Ring::polynomial(Field::Rationals, &["x", "y", "z"]).unwrap();
        let rels = [prod(&s, 0, 1), prod(&s, 0, 2), prod(&s, 1, 2)];
        let r = Ring::make(Field::Rationals, &["x", "y", "z"], &rels).unwrap();
        let inv = r.invariants().unwrap();
        assert_eq!(
            (inv.dim, inv.depth, inv.codim, inv.is_cm, inv.is_gorenstein),
            (1, 1, 2, true, false)
        );
    }

    #[test]
    fn inhomogeneous_relation_rejected() {
        let s = Ring::polynomial(Field::Rationals, &["x", "y"]).unwrap();
        let bad = s.var(0).add(&prod(&s, 1, 1), &TermOrder::top());
        assert!(matches!(
            Ring::make(Field::Rationals, &["x", "y"], &[bad]),
            Err(Error::Structural(_))
        ));
    }
}
