//! Coefficient fields: exact rationals and prime fields.
//!
//! Rationals keep a machine-word fast path and fall back to big integers on
//! overflow. Every value is stored in canonical form, so structural equality
//! and hashing agree with numeric equality.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The residue field `k` of the graded rings we work over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Field {
    Rationals,
    Prime(u32),
}

impl Field {
    pub fn prime(p: u32) -> Result<Field> {
        if p < 2 || !is_prime(p) {
            return Err(Error::Structural(format!("{p} is not a prime")));
        }
        if p >= 1 << 31 {
            return Err(Error::Structural(format!("prime {p} exceeds 2^31")));
        }
        Ok(Field::Prime(p))
    }

    pub fn zero(self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(self, v: i64) -> Scalar {
        match self {
            Field::Rationals => Scalar::Q(Rational::Small(v, 1)),
            Field::Prime(p) => Scalar::Fp {
                value: v.rem_euclid(p as i64) as u32,
                modulus: p,
            },
        }
    }

    pub fn from_ratio(self, num: i64, den: i64) -> Result<Scalar> {
        if den == 0 {
            return Err(Error::Structural("division by zero in coefficient".into()));
        }
        Ok(self.from_i64(num).div(&self.from_i64(den)))
    }

    /// Parses `"3"`, `"-2/5"` (or a big integer) into a field element.
    pub fn parse_scalar(self, s: &str) -> Result<Scalar> {
        let bad = || Error::Structural(format!("malformed coefficient '{s}'"));
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s.trim(), "1"),
        };
        let n: BigInt = n.parse().map_err(|_| bad())?;
        let d: BigInt = d.parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        match self {
            Field::Rationals => Ok(Scalar::Q(Rational::from_big(BigRational::new(n, d)))),
            Field::Prime(p) => {
                let pp = BigInt::from(p);
                let nv = n.mod_floor(&pp).to_i64().unwrap();
                let dv = d.mod_floor(&pp).to_i64().unwrap();
                if dv == 0 {
                    return Err(bad());
                }
                Ok(self.from_i64(nv).div(&self.from_i64(dv)))
            }
        }
    }

    pub fn name(self) -> String {
        match self {
            Field::Rationals => "QQ".to_string(),
            Field::Prime(p) => format!("GF({p})"),
        }
    }
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p as u64 {
        if (p as u64).is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Exact rational number in lowest terms with positive denominator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Rational {
    Small(i64, i64),
    Big(Box<BigRational>),
}

impl Rational {
    fn from_i128(n: i128, d: i128) -> Rational {
        debug_assert!(d != 0);
        let g = gcd_i128(n, d);
        let (mut n, mut d) = (n / g, d / g);
        if d < 0 {
            n = -n;
            d = -d;
        }
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(n), Ok(d)) => Rational::Small(n, d),
            _ => Rational::Big(Box::new(BigRational::new(BigInt::from(n), BigInt::from(d)))),
        }
    }

    fn from_big(r: BigRational) -> Rational {
        match (r.numer().to_i64(), r.denom().to_i64()) {
            (Some(n), Some(d)) => Rational::Small(n, d),
            _ => Rational::Big(Box::new(r)),
        }
    }

    fn to_big(&self) -> BigRational {
        match self {
            Rational::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Rational::Big(b) => (**b).clone(),
        }
    }

    fn is_zero(&self) -> bool {
        matches!(self, Rational::Small(0, _))
    }

    fn add(&self, o: &Rational) -> Rational {
        match (self, o) {
            (Rational::Small(a, b), Rational::Small(c, d)) => {
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                match a
                    .checked_mul(d)
                    .and_then(|x| c.checked_mul(b).and_then(|y| x.checked_add(y)))
                {
                    Some(n) => Rational::from_i128(n, b * d),
                    None => Rational::from_big(self.to_big() + o.to_big()),
                }
            }
            _ => Rational::from_big(self.to_big() + o.to_big()),
        }
    }

    fn mul(&self, o: &Rational) -> Rational {
        match (self, o) {
            (Rational::Small(a, b), Rational::Small(c, d)) => {
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                Rational::from_i128(a * c, b * d)
            }
            _ => Rational::from_big(self.to_big() * o.to_big()),
        }
    }

    fn neg(&self) -> Rational {
        match self {
            Rational::Small(a, b) if *a != i64::MIN => Rational::Small(-a, *b),
            _ => Rational::from_big(-self.to_big()),
        }
    }

    fn inv(&self) -> Rational {
        assert!(!self.is_zero(), "inverse of zero");
        match self {
            Rational::Small(a, b) => Rational::from_i128(*b as i128, *a as i128),
            Rational::Big(r) => Rational::from_big(r.recip()),
        }
    }
}

fn gcd_i128(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    if a == 0 {
        1
    } else {
        a as i128
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rational::Small(n, 1) => write!(f, "{n}"),
            Rational::Small(n, d) => write!(f, "{n}/{d}"),
            Rational::Big(r) if r.denom().is_one() => write!(f, "{}", r.numer()),
            Rational::Big(r) => write!(f, "{}/{}", r.numer(), r.denom()),
        }
    }
}

/// A field element. All elements flowing through one computation share a field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Q(Rational),
    Fp { value: u32, modulus: u32 },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Q(_) => Field::Rationals,
            Scalar::Fp { modulus, .. } => Field::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Q(r) => r.is_zero(),
            Scalar::Fp { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Q(r) => matches!(r, Rational::Small(1, 1)),
            Scalar::Fp { value, .. } => *value == 1,
        }
    }

    pub fn add(&self, o: &Scalar) -> Scalar {
        match (self, o) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a.add(b)),
            (
                Scalar::Fp {
                    value: a,
                    modulus: p,
                },
                Scalar::Fp { value: b, .. },
            ) => Scalar::Fp {
                value: ((*a as u64 + *b as u64) % *p as u64) as u32,
                modulus: *p,
            },
            _ => panic!("mixed coefficient fields"),
        }
    }

    pub fn sub(&self, o: &Scalar) -> Scalar {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Scalar) -> Scalar {
        match (self, o) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a.mul(b)),
            (
                Scalar::Fp {
                    value: a,
                    modulus: p,
                },
                Scalar::Fp { value: b, .. },
            ) => Scalar::Fp {
                value: ((*a as u64 * *b as u64) % *p as u64) as u32,
                modulus: *p,
            },
            _ => panic!("mixed coefficient fields"),
        }
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Q(a) => Scalar::Q(a.neg()),
            Scalar::Fp { value, modulus } => Scalar::Fp {
                value: if *value == 0 { 0 } else { modulus - value },
                modulus: *modulus,
            },
        }
    }

    pub fn inv(&self) -> Scalar {
        match self {
            Scalar::Q(a) => Scalar::Q(a.inv()),
            Scalar::Fp { value, modulus } => {
                assert!(*value != 0, "inverse of zero");
                let (p, mut base, mut e, mut acc) =
                    (*modulus as u64, *value as u64, *modulus as u64 - 2, 1u64);
                while e > 0 {
                    if e & 1 == 1 {
                        acc = acc * base % p;
                    }
                    base = base * base % p;
                    e >>= 1;
                }
                Scalar::Fp {
                    value: acc as u32,
                    modulus: *modulus,
                }
            }
        }
    }

    pub fn div(&self, o: &Scalar) -> Scalar {
        self.mul(&o.inv())
    }

    /// Sign used only for pretty printing (`x - y` rather than `x + -1*y`).
    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Q(Rational::Small(n, _)) => *n < 0,
            Scalar::Q(Rational::Big(r)) => r.is_negative(),
            Scalar::Fp { .. } => false,
        }
    }

    /// A deterministic total order, used only to make output canonical.
    pub fn canonical_cmp(&self, o: &Scalar) -> Ordering {
        self.to_string().cmp(&o.to_string())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Q(r) => r.fmt(f),
            Scalar::Fp { value, .. } => write!(f, "{value}"),
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_arithmetic_is_exact() {
        let q = Field::Rationals;
        let a = q.from_ratio(1, 3).unwrap();
        let b = q.from_ratio(1, 6).unwrap();
        assert_eq!(a.add(&b), q.from_ratio(1, 2).unwrap());
        assert_eq!(a.mul(&b).inv(), q.from_i64(18));
        assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn overflow_promotes_to_big_and_back() {
        let q = Field::Rationals;
        let big = q.from_i64(i64::MAX);
        let sq = big.mul(&big);
        assert!(matches!(sq, Scalar::Q(Rational::Big(_))));
        let back = sq.div(&big);
        assert_eq!(back, big);
        assert!(matches!(back, Scalar::Q(Rational::Small(..))));
    }

    #[test]
    fn prime_field_inverse() {
        let f = Field::prime(101).unwrap();
        for v in 1..101 {
            let x = f.from_i64(v);
            assert!(x.mul(&x.inv()).is_one());
        }
        assert!(Field::prime(100).is_err());
    }

    #[test]
    fn parse_round_trip() {
        let q = Field::Rationals;
        for s in ["0", "-7", "3/4", "123456789012345678901234567890"] {
            assert_eq!(q.parse_scalar(s).unwrap().to_string(), s);
        }
        assert_eq!(q.parse_scalar("6/-4").unwrap().to_string(), "-3/2");
    }
}
