//! Hilbert series of graded modules from their leading-term modules.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::monomial::Monomial;

/// Integer Laurent polynomial in `t`, stored from its lowest degree.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default, Serialize, Deserialize)]
pub struct LaurentPoly {
    pub low: i32,
    pub coeffs: Vec<i64>,
}

impl LaurentPoly {
    pub fn zero() -> LaurentPoly {
        LaurentPoly::default()
    }

    pub fn monomial(d: i32, c: i64) -> LaurentPoly {
        LaurentPoly {
            low: d,
            coeffs: vec![c],
        }
        .normalized()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, d: i32) -> i64 {
        let i = d - self.low;
        if i < 0 || i as usize >= self.coeffs.len() {
            0
        } else {
            self.coeffs[i as usize]
        }
    }

    pub fn high(&self) -> i32 {
        self.low + self.coeffs.len() as i32 - 1
    }

    fn normalized(mut self) -> LaurentPoly {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
        let lead_zeros = self.coeffs.iter().take_while(|&&c| c == 0).count();
        if lead_zeros == self.coeffs.len() {
            return LaurentPoly::zero();
        }
        self.coeffs.drain(..lead_zeros);
        self.low += lead_zeros as i32;
        self
    }

    pub fn add(&self, o: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let low = self.low.min(o.low);
        let high = self.high().max(o.high());
        let coeffs = (low..=high).map(|d| self.coeff(d) + o.coeff(d)).collect();
        LaurentPoly { low, coeffs }.normalized()
    }

    pub fn neg(&self) -> LaurentPoly {
        LaurentPoly {
            low: self.low,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn sub(&self, o: &LaurentPoly) -> LaurentPoly {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || o.is_zero() {
            return LaurentPoly::zero();
        }
        let mut coeffs = vec![0i64; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        LaurentPoly {
            low: self.low + o.low,
            coeffs,
        }
        .normalized()
    }

    pub fn shift(&self, d: i32) -> LaurentPoly {
        if self.is_zero() {
            return self.clone();
        }
        LaurentPoly {
            low: self.low + d,
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn eval_one(&self) -> i64 {
        self.coeffs.iter().sum()
    }

    /// Exact division by `1 - t`; caller ensures `eval_one() == 0`.
    fn div_one_minus_t(&self) -> LaurentPoly {
        // p = (1 - t) q  =>  q_k = sum_{j <= k} p_j
        let mut acc = 0;
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs[..self.coeffs.len().saturating_sub(1)] {
            acc += c;
            coeffs.push(acc);
        }
        LaurentPoly {
            low: self.low,
            coeffs,
        }
        .normalized()
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let d = self.low + i as i32;
            let sign = if c < 0 { "-" } else { "+" };
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let a = c.abs();
            match d {
                0 => write!(f, "{a}")?,
                _ => {
                    if a != 1 {
                        write!(f, "{a}")?;
                    }
                    if d == 1 {
                        write!(f, "t")?;
                    } else {
                        write!(f, "t^{d}")?;
                    }
                }
            }
            first = false;
        }
        Ok(())
    }
}

/// `numerator / (1 - t)^n`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct HilbertSeries {
    pub numerator: LaurentPoly,
    pub n: usize,
}

impl HilbertSeries {
    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    pub fn add(&self, o: &HilbertSeries) -> HilbertSeries {
        let n = self.n.max(o.n);
        let lift = |h: &HilbertSeries| {
            let mut p = h.numerator.clone();
            for _ in h.n..n {
                p = p.mul(&one_minus_t());
            }
            p
        };
        HilbertSeries {
            numerator: lift(self).add(&lift(o)),
            n,
        }
    }

    pub fn sub(&self, o: &HilbertSeries) -> HilbertSeries {
        self.add(&HilbertSeries {
            numerator: o.numerator.neg(),
            n: o.n,
        })
    }

    pub fn shift(&self, d: i32) -> HilbertSeries {
        HilbertSeries {
            numerator: self.numerator.shift(d),
            n: self.n,
        }
    }

    /// Cancels common factors of `1 - t`: returns `(q, dim)` with `HS = q / (1-t)^dim`.
    pub fn reduced(&self) -> (LaurentPoly, usize) {
        let mut p = self.numerator.clone();
        let mut n = self.n;
        if p.is_zero() {
            return (p, 0);
        }
        while n > 0 && p.eval_one() == 0 {
            p = p.div_one_minus_t();
            n -= 1;
        }
        (p, n)
    }

    /// Krull dimension of the module: pole order at `t = 1`; `None` for the zero module.
    pub fn dimension(&self) -> Option<usize> {
        if self.is_zero() {
            None
        } else {
            Some(self.reduced().1)
        }
    }

    /// `dim_k M_d`.
    pub fn value(&self, d: i32) -> i64 {
        let mut total = 0i64;
        for (i, &c) in self.numerator.coeffs.iter().enumerate() {
            let e = d - (self.numerator.low + i as i32);
            if e < 0 {
                continue;
            }
            total += c * binom(e as i64 + self.n as i64 - 1, self.n as i64 - 1);
        }
        total
    }

    /// Total length, for modules of dimension zero.
    pub fn length(&self) -> Option<i64> {
        let (q, dim) = self.reduced();
        (dim == 0).then(|| q.eval_one())
    }
}

impl fmt::Display for HilbertSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (q, d) = self.reduced();
        match d {
            0 => write!(f, "{q}"),
            1 => write!(f, "({q})/(1 - t)"),
            _ => write!(f, "({q})/(1 - t)^{d}"),
        }
    }
}

fn binom(n: i64, k: i64) -> i64 {
    if k < 0 {
        return if n == -1 && k == -1 { 1 } else { 0 };
    }
    if n < k {
        return 0;
    }
    let mut r: i64 = 1;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

fn one_minus_t() -> LaurentPoly {
    LaurentPoly {
        low: 0,
        coeffs: vec![1, -1],
    }
}

fn minimalize_monomials(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by(|a, b| a.degree().cmp(&b.degree()).then(a.cmp_grevlex(b)));
    gens.dedup();
    let mut out: Vec<Monomial> = Vec::new();
    for g in gens {
        if !out.iter().any(|h| h.divides(&g)) {
            out.push(g);
        }
    }
    out
}

/// Numerator `K(S/J)` of the Hilbert series of `S/J` for a monomial ideal `J`.
pub fn monomial_numerator(gens: &[Monomial], n: usize) -> LaurentPoly {
    let gens = minimalize_monomials(gens.to_vec());
    kpoly(gens, n)
}

fn kpoly(gens: Vec<Monomial>, n: usize) -> LaurentPoly {
    if gens.is_empty() {
        return LaurentPoly::monomial(0, 1);
    }
    if gens.iter().any(|g| g.is_one()) {
        return LaurentPoly::zero();
    }
    let pairwise_coprime = gens
        .iter()
        .enumerate()
        .all(|(i, a)| gens[i + 1..].iter().all(|b| a.is_coprime(b)));
    if pairwise_coprime {
        let mut p = LaurentPoly::monomial(0, 1);
        for g in &gens {
            p = p.mul(&LaurentPoly::monomial(0, 1).sub(&LaurentPoly::monomial(g.degree(), 1)));
        }
        return p;
    }
    // pivot on the variable occurring in the most non-linear generators
    let mut best = (0usize, 0usize);
    for v in 0..n {
        let cnt = gens
            .iter()
            .filter(|g| g.exp(v) > 0 && g.degree() > 1)
            .count();
        if cnt > best.1 {
            best = (v, cnt);
        }
    }
    let v = best.0;
    let x = Monomial::var(v);
    // K(J) = K(J + (x)) + t K(J : x)
    let mut plus: Vec<Monomial> = gens.iter().filter(|g| g.exp(v) == 0).copied().collect();
    plus.push(x);
    let colon: Vec<Monomial> = gens.iter().map(|g| g.colon_var(v)).collect();
    let a = kpoly(minimalize_monomials(plus), n);
    let b = kpoly(minimalize_monomials(colon), n);
    a.add(&b.shift(1))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e)
    }

    #[test]
    fn x_squared_quotient() {
        let hs = HilbertSeries {
            numerator: monomial_numerator(&[m(&[2, 0])], 2),
            n: 2,
        };
        let (q, d) = hs.reduced();
        assert_eq!(d, 1);
        assert_eq!(
            q,
            LaurentPoly {
                low: 0,
                coeffs: vec![1, 1]
            }
        );
        assert_eq!(hs.value(5), 2);
    }

    #[test]
    fn residue_field() {
        let hs = HilbertSeries {
            numerator: monomial_numerator(&[m(&[1, 0]), m(&[0, 1])], 2),
            n: 2,
        };
        assert_eq!(hs.reduced(), (LaurentPoly::monomial(0, 1), 0));
        assert_eq!(hs.length(), Some(1));
    }

    #[test]
    fn three_coordinate_axes() {
        // S/(xy, xz, yz): HS = 1 + 3t/(1-t)
        let hs = HilbertSeries {
            numerator: monomial_numerator(&[m(&[1, 1, 0]), m(&[1, 0, 1]), m(&[0, 1, 1])], 3),
            n: 3,
        };
        assert_eq!(hs.value(0), 1);
        for d in 1..6 {
            assert_eq!(hs.value(d), 3);
        }
        assert_eq!(hs.dimension(), Some(1));
    }
}
