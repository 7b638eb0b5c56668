//! Sparse elements of graded free modules S^r (polynomials are rank one).
//!
//! Terms are kept sorted ascending under a [`TermOrder`], so the leading term
//! is the last one and can be popped cheaply during reduction.

use std::cmp::Ordering;
use std::sync::Arc;

use super::field::{Field, Scalar};
use super::monomial::{Monomial, MonomialOrder};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Term {
    pub m: Monomial,
    pub pos: u32,
    pub c: Scalar,
}

/// Term-over-position order, optionally refined by position blocks: terms in
/// a higher block always dominate (elimination of the higher block).
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct TermOrder {
    pub mono: MonomialOrder,
    pub blocks: Option<Arc<Vec<u8>>>,
}

impl TermOrder {
    pub fn top() -> TermOrder {
        TermOrder::default()
    }

    pub fn with_mono(mono: MonomialOrder) -> TermOrder {
        TermOrder { mono, blocks: None }
    }

    pub fn blocked(blocks: Vec<u8>) -> TermOrder {
        TermOrder {
            mono: MonomialOrder::GrevLex,
            blocks: Some(Arc::new(blocks)),
        }
    }

    #[inline]
    pub fn cmp(&self, am: &Monomial, ap: u32, bm: &Monomial, bp: u32) -> Ordering {
        if let Some(b) = &self.blocks {
            let o = b[ap as usize].cmp(&b[bp as usize]);
            if o != Ordering::Equal {
                return o;
            }
        }
        let o = match self.mono {
            MonomialOrder::GrevLex => am.cmp_grevlex(bm),
            MonomialOrder::Lex => am.cmp_lex(bm),
        };
        // lower position index ranks higher
        o.then_with(|| bp.cmp(&ap))
    }

    #[inline]
    fn cmp_terms(&self, a: &Term, b: &Term) -> Ordering {
        self.cmp(&a.m, a.pos, &b.m, b.pos)
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Vector {
    pub terms: Vec<Term>,
}

impl Vector {
    pub fn zero() -> Vector {
        Vector { terms: Vec::new() }
    }

    pub fn constant(c: Scalar) -> Vector {
        Vector::term(Monomial::ONE, 0, c)
    }

    pub fn term(m: Monomial, pos: u32, c: Scalar) -> Vector {
        if c.is_zero() {
            Vector::zero()
        } else {
            Vector {
                terms: vec![Term { m, pos, c }],
            }
        }
    }

    /// Unit vector `e_pos`.
    pub fn unit(pos: u32, field: Field) -> Vector {
        Vector::term(Monomial::ONE, pos, field.one())
    }

    /// Builds a vector from arbitrary terms: sorts, merges duplicates, drops zeros.
    pub fn from_terms(mut terms: Vec<Term>, order: &TermOrder) -> Vector {
        terms.sort_by(|a, b| order.cmp_terms(a, b));
        let mut out: Vec<Term> = Vec::with_capacity(terms.len());
        for t in terms {
            if let Some(last) = out.last_mut() {
                if last.m == t.m && last.pos == t.pos {
                    last.c = last.c.add(&t.c);
                    if last.c.is_zero() {
                        out.pop();
                    }
                    continue;
                }
            }
            if !t.c.is_zero() {
                out.push(t);
            }
        }
        Vector { terms: out }
    }

    pub fn resort(&self, order: &TermOrder) -> Vector {
        let mut terms = self.terms.clone();
        terms.sort_by(|a, b| order.cmp_terms(a, b));
        Vector { terms }
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    #[inline]
    pub fn lead(&self) -> Option<&Term> {
        self.terms.last()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Degree of the leading term under the given position twists.
    pub fn degree(&self, twists: &[i32]) -> Option<i32> {
        self.lead().map(|t| t.m.degree() + twists[t.pos as usize])
    }

    pub fn is_homogeneous(&self, twists: &[i32]) -> bool {
        match self.degree(twists) {
            None => true,
            Some(d) => self
                .terms
                .iter()
                .all(|t| t.m.degree() + twists[t.pos as usize] == d),
        }
    }

    /// `self + c * m * other`.
    pub fn add_mul(&self, c: &Scalar, m: &Monomial, other: &Vector, order: &TermOrder) -> Vector {
        if c.is_zero() || other.is_zero() {
            return self.clone();
        }
        let scaled: Vec<Term> = other
            .terms
            .iter()
            .map(|t| Term {
                m: t.m.mul(m),
                pos: t.pos,
                c: t.c.mul(c),
            })
            .collect();
        merge(&self.terms, scaled, order)
    }

    pub fn add(&self, other: &Vector, order: &TermOrder) -> Vector {
        merge(&self.terms, other.terms.clone(), order)
    }

    pub fn sub(&self, other: &Vector, order: &TermOrder) -> Vector {
        let neg: Vec<Term> = other
            .terms
            .iter()
            .map(|t| Term {
                m: t.m,
                pos: t.pos,
                c: t.c.neg(),
            })
            .collect();
        merge(&self.terms, neg, order)
    }

    pub fn scale(&self, c: &Scalar) -> Vector {
        if c.is_zero() {
            return Vector::zero();
        }
        Vector {
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    m: t.m,
                    pos: t.pos,
                    c: t.c.mul(c),
                })
                .collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Vector {
        Vector {
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    m: t.m.mul(m),
                    pos: t.pos,
                    c: t.c.clone(),
                })
                .collect(),
        }
    }

    /// Product with a polynomial (a rank-one vector, positions ignored).
    pub fn mul_poly(&self, p: &Vector, order: &TermOrder) -> Vector {
        let mut terms = Vec::with_capacity(self.len() * p.len());
        for a in &p.terms {
            for b in &self.terms {
                terms.push(Term {
                    m: a.m.mul(&b.m),
                    pos: b.pos,
                    c: a.c.mul(&b.c),
                });
            }
        }
        Vector::from_terms(terms, order)
    }

    pub fn make_monic(&self) -> Vector {
        match self.lead() {
            None => Vector::zero(),
            Some(t) if t.c.is_one() => self.clone(),
            Some(t) => {
                let inv = t.c.inv();
                self.scale(&inv)
            }
        }
    }

    /// Component at `pos` as a polynomial (rank one).
    pub fn component(&self, pos: u32) -> Vector {
        Vector {
            terms: self
                .terms
                .iter()
                .filter(|t| t.pos == pos)
                .map(|t| Term {
                    m: t.m,
                    pos: 0,
                    c: t.c.clone(),
                })
                .collect(),
        }
    }

    /// Splits into components indexed by position.
    pub fn components(&self, rank: usize) -> Vec<Vector> {
        let mut out = vec![Vector::zero(); rank];
        for t in &self.terms {
            out[t.pos as usize].terms.push(Term {
                m: t.m,
                pos: 0,
                c: t.c.clone(),
            });
        }
        out
    }

    /// Reassembles a vector from rank-one components; inverse of [`components`](Self::components).
    pub fn from_components(comps: &[Vector], order: &TermOrder) -> Vector {
        let mut terms = Vec::new();
        for (i, p) in comps.iter().enumerate() {
            for t in &p.terms {
                terms.push(Term {
                    m: t.m,
                    pos: i as u32,
                    c: t.c.clone(),
                });
            }
        }
        Vector::from_terms(terms, order)
    }

    /// Relabels positions through `f`, re-sorting under `order`.
    pub fn map_positions(&self, f: impl Fn(u32) -> u32, order: &TermOrder) -> Vector {
        let terms = self
            .terms
            .iter()
            .map(|t| Term {
                m: t.m,
                pos: f(t.pos),
                c: t.c.clone(),
            })
            .collect();
        Vector::from_terms(terms, order)
    }

    /// Scalar coefficient if this is a nonzero constant polynomial.
    pub fn as_constant(&self) -> Option<&Scalar> {
        match self.terms.as_slice() {
            [t] if t.m.is_one() => Some(&t.c),
            _ => None,
        }
    }

    pub fn format_poly(&self, vars: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, t) in self.terms.iter().rev().enumerate() {
            let neg = t.c.is_negative();
            let abs = if neg { t.c.neg() } else { t.c.clone() };
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            if t.m.is_one() {
                s.push_str(&abs.to_string());
            } else if abs.is_one() {
                s.push_str(&t.m.format(vars));
            } else {
                s.push_str(&format!("{}*{}", abs, t.m.format(vars)));
            }
        }
        s
    }
}

fn merge(a: &[Term], b: Vec<Term>, order: &TermOrder) -> Vector {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut i = 0;
    let mut bi = b.into_iter().peekable();
    while i < a.len() {
        match bi.peek() {
            None => break,
            Some(tb) => match order.cmp_terms(&a[i], tb) {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => out.push(bi.next().unwrap()),
                Ordering::Equal => {
                    let tb = bi.next().unwrap();
                    let c = a[i].c.add(&tb.c);
                    if !c.is_zero() {
                        out.push(Term {
                            m: tb.m,
                            pos: tb.pos,
                            c,
                        });
                    }
                    i += 1;
                }
            },
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend(bi);
    Vector { terms: out }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: i64) -> Scalar {
        Field::Rationals.from_i64(v)
    }

    #[test]
    fn merge_cancels() {
        let o = TermOrder::top();
        let x = Monomial::var(0);
        let y = Monomial::var(1);
        let a = Vector::from_terms(
            vec![
                Term {
                    m: x,
                    pos: 0,
                    c: q(1),
                },
                Term {
                    m: y,
                    pos: 0,
                    c: q(2),
                },
            ],
            &o,
        );
        let b = Vector::term(x, 0, q(1));
        let d = a.sub(&b, &o);
        assert_eq!(d, Vector::term(y, 0, q(2)));
        assert!(d.sub(&d, &o).is_zero());
    }

    #[test]
    fn top_ranks_lower_position_higher() {
        let o = TermOrder::top();
        let x = Monomial::var(0);
        assert_eq!(o.cmp(&x, 0, &x, 1), Ordering::Greater);
        assert_eq!(o.cmp(&Monomial::ONE, 0, &x, 1), Ordering::Less);
        let blk = TermOrder::blocked(vec![1, 0]);
        assert_eq!(blk.cmp(&Monomial::ONE, 0, &x, 1), Ordering::Greater);
    }
}
