//! Monomials in at most eight variables, packed one exponent per byte.

use std::cmp::Ordering;
use std::fmt;

pub const MAX_VARS: usize = 8;
/// Exponents stay below this so packed addition never carries between bytes.
pub const MAX_EXP: u32 = 127;

const HIGH: u64 = 0x8080_8080_8080_8080;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    packed: u64,
    deg: u16,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { packed: 0, deg: 0 };

    pub fn from_exponents(exps: &[u32]) -> Monomial {
        assert!(exps.len() <= MAX_VARS, "too many variables");
        let mut packed = 0u64;
        let mut deg = 0u16;
        for (i, &e) in exps.iter().enumerate() {
            assert!(e <= MAX_EXP, "exponent {e} out of range");
            packed |= (e as u64) << (8 * i);
            deg += e as u16;
        }
        Monomial { packed, deg }
    }

    pub fn var(i: usize) -> Monomial {
        let mut e = [0u32; MAX_VARS];
        e[i] = 1;
        Monomial::from_exponents(&e)
    }

    #[inline]
    pub fn exp(&self, i: usize) -> u32 {
        ((self.packed >> (8 * i)) & 0xff) as u32
    }

    pub fn exponents(&self, n: usize) -> Vec<u32> {
        (0..n).map(|i| self.exp(i)).collect()
    }

    #[inline]
    pub fn degree(&self) -> i32 {
        self.deg as i32
    }

    #[inline]
    pub fn is_one(&self) -> bool {
        self.packed == 0
    }

    /// Product, or `None` when an exponent would leave the packed range.
    #[inline]
    pub fn checked_mul(&self, o: &Monomial) -> Option<Monomial> {
        let p = self.packed + o.packed;
        if p & HIGH != 0 {
            return None;
        }
        Some(Monomial {
            packed: p,
            deg: self.deg + o.deg,
        })
    }

    #[inline]
    pub fn mul(&self, o: &Monomial) -> Monomial {
        self.checked_mul(o).expect("exponent overflow")
    }

    #[inline]
    pub fn divides(&self, o: &Monomial) -> bool {
        self.deg <= o.deg && ((o.packed | HIGH) - self.packed) & HIGH == HIGH
    }

    /// `o / self`, assuming divisibility.
    #[inline]
    pub fn quotient_of(&self, o: &Monomial) -> Monomial {
        debug_assert!(self.divides(o));
        Monomial {
            packed: o.packed - self.packed,
            deg: o.deg - self.deg,
        }
    }

    pub fn lcm(&self, o: &Monomial) -> Monomial {
        let mut packed = 0u64;
        let mut deg = 0u16;
        for i in 0..MAX_VARS {
            let e = self.exp(i).max(o.exp(i));
            packed |= (e as u64) << (8 * i);
            deg += e as u16;
        }
        Monomial { packed, deg }
    }

    pub fn gcd(&self, o: &Monomial) -> Monomial {
        let mut packed = 0u64;
        let mut deg = 0u16;
        for i in 0..MAX_VARS {
            let e = self.exp(i).min(o.exp(i));
            packed |= (e as u64) << (8 * i);
            deg += e as u16;
        }
        Monomial { packed, deg }
    }

    pub fn is_coprime(&self, o: &Monomial) -> bool {
        self.gcd(o).is_one()
    }

    /// Colon by a variable: drops one power of `x_i` if present.
    pub fn colon_var(&self, i: usize) -> Monomial {
        if self.exp(i) == 0 {
            *self
        } else {
            Monomial {
                packed: self.packed - (1u64 << (8 * i)),
                deg: self.deg - 1,
            }
        }
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        (0..MAX_VARS).filter(move |&i| self.exp(i) > 0)
    }

    #[inline]
    pub fn cmp_grevlex(&self, o: &Monomial) -> Ordering {
        // Higher bytes hold later variables; a smaller packed value means the
        // last differing exponent is smaller, which grevlex ranks higher.
        self.deg
            .cmp(&o.deg)
            .then_with(|| o.packed.cmp(&self.packed))
    }

    #[inline]
    pub fn cmp_lex(&self, o: &Monomial) -> Ordering {
        self.packed.swap_bytes().cmp(&o.packed.swap_bytes())
    }

    pub fn cmp_with(&self, o: &Monomial, order: MonomialOrder) -> Ordering {
        match order {
            MonomialOrder::GrevLex => self.cmp_grevlex(o),
            MonomialOrder::Lex => self.cmp_lex(o),
        }
    }

    /// All monomials of total degree `d` in `n` variables, in ascending grevlex order.
    pub fn all_of_degree(n: usize, d: i32) -> Vec<Monomial> {
        let mut out = Vec::new();
        if d < 0 {
            return out;
        }
        if n == 0 {
            if d == 0 {
                out.push(Monomial::ONE);
            }
            return out;
        }
        let mut e = vec![0u32; n];
        fn rec(i: usize, left: u32, e: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            if i + 1 == e.len() {
                e[i] = left;
                out.push(Monomial::from_exponents(e));
                return;
            }
            for k in 0..=left {
                e[i] = k;
                rec(i + 1, left - k, e, out);
            }
        }
        rec(0, d as u32, &mut e, &mut out);
        out.sort_by(|a, b| a.cmp_grevlex(b));
        out
    }

    pub fn format(&self, vars: &[String]) -> String {
        if self.is_one() {
            return "1".into();
        }
        let mut parts = Vec::new();
        for (i, v) in vars.iter().enumerate() {
            match self.exp(i) {
                0 => {}
                1 => parts.push(v.clone()),
                e => parts.push(format!("{v}^{e}")),
            }
        }
        parts.join("*")
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..MAX_VARS).map(|i| format!("x{i}")).collect();
        write!(f, "{}", self.format(&names))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum MonomialOrder {
    #[default]
    GrevLex,
    Lex,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e)
    }

    #[test]
    fn grevlex_ranks_last_variable_lowest() {
        // x > y > z, and in degree 2: x^2 > xy > y^2 > xz > yz > z^2
        let seq = [
            m(&[2, 0, 0]),
            m(&[1, 1, 0]),
            m(&[0, 2, 0]),
            m(&[1, 0, 1]),
            m(&[0, 1, 1]),
            m(&[0, 0, 2]),
        ];
        for w in seq.windows(2) {
            assert_eq!(w[0].cmp_grevlex(&w[1]), Ordering::Greater);
        }
        assert_eq!(m(&[0, 0, 1]).cmp_grevlex(&m(&[2, 0, 0])), Ordering::Less);
    }

    #[test]
    fn lex_order() {
        assert_eq!(m(&[1, 0, 0]).cmp_lex(&m(&[0, 5, 0])), Ordering::Greater);
        assert_eq!(m(&[1, 2, 0]).cmp_lex(&m(&[1, 1, 7])), Ordering::Greater);
    }

    #[test]
    fn divisibility_and_lcm() {
        let a = m(&[1, 2, 0]);
        let b = m(&[2, 2, 1]);
        assert!(a.divides(&b));
        assert!(!b.divides(&a));
        assert_eq!(a.quotient_of(&b), m(&[1, 0, 1]));
        assert_eq!(a.lcm(&m(&[0, 3, 1])), m(&[1, 3, 1]));
        assert!(m(&[1, 0]).is_coprime(&m(&[0, 4])));
        assert!(!m(&[0, 1, 0]).divides(&m(&[1, 0, 5])));
    }

    #[test]
    fn enumerate_degree() {
        assert_eq!(Monomial::all_of_degree(3, 2).len(), 6);
        assert_eq!(Monomial::all_of_degree(2, 0), vec![Monomial::ONE]);
        assert!(Monomial::all_of_degree(2, -1).is_empty());
    }
}
