use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};

/// Exact rational number. Small values live in machine words, everything
/// else falls back to arbitrary precision.
#[derive(Clone, Debug)]
pub enum Q {
    /// numerator, denominator; denominator > 0 and gcd = 1
    S(i64, i64),
    B(Box<BigRational>),
}

fn gcd128(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a as i128
}

impl Q {
    pub fn zero() -> Q {
        Q::S(0, 1)
    }

    pub fn one() -> Q {
        Q::S(1, 1)
    }

    pub fn int(n: i64) -> Q {
        Q::S(n, 1)
    }

    pub fn new(n: i64, d: i64) -> Q {
        assert!(d != 0, "zero denominator");
        Q::from_i128(n as i128, d as i128)
    }

    fn from_i128(mut n: i128, mut d: i128) -> Q {
        if d < 0 {
            n = -n;
            d = -d;
        }
        let g = gcd128(n, d);
        if g > 1 {
            n /= g;
            d /= g;
        }
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(a), Ok(b)) => Q::S(a, b),
            _ => Q::B(Box::new(BigRational::new(BigInt::from(n), BigInt::from(d)))),
        }
    }

    pub fn from_big(r: BigRational) -> Q {
        if let (Some(n), Some(d)) = (r.numer().to_i64(), r.denom().to_i64()) {
            Q::S(n, d)
        } else {
            Q::B(Box::new(r))
        }
    }

    pub fn to_big(&self) -> BigRational {
        match self {
            Q::S(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Q::B(b) => (**b).clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Q::S(0, _))
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Q::S(1, 1))
    }

    pub fn is_integer(&self) -> bool {
        match self {
            Q::S(_, d) => *d == 1,
            Q::B(b) => b.is_integer(),
        }
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Q::S(n, _) => *n < 0,
            Q::B(b) => b.is_negative(),
        }
    }

    pub fn numer(&self) -> BigInt {
        match self {
            Q::S(n, _) => BigInt::from(*n),
            Q::B(b) => b.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match self {
            Q::S(_, d) => BigInt::from(*d),
            Q::B(b) => b.denom().clone(),
        }
    }

    pub fn from_bigint(n: BigInt) -> Q {
        Q::from_big(BigRational::from_integer(n))
    }

    pub fn inv(&self) -> Q {
        match self {
            Q::S(0, _) => panic!("inverse of zero"),
            Q::S(n, d) => Q::from_i128(*d as i128, *n as i128),
            Q::B(b) => Q::from_big(b.recip()),
        }
    }

    pub fn div(&self, o: &Q) -> Q {
        self * &o.inv()
    }

    pub fn abs(&self) -> Q {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// Residue modulo a prime, `None` if the denominator vanishes.
    pub fn mod_p(&self, p: u64) -> Option<u64> {
        let (n, d) = match self {
            Q::S(n, d) => (n.rem_euclid(p as i64) as u64, (*d as u64) % p),
            Q::B(b) => {
                let bp = BigInt::from(p);
                let n = b.numer().mod_floor(&bp).to_u64().unwrap();
                let d = b.denom().mod_floor(&bp).to_u64().unwrap();
                (n, d)
            }
        };
        if d == 0 {
            return None;
        }
        Some(super::modular::mul_mod(n, super::modular::inv_mod(d, p), p))
    }

    pub fn parse(s: &str) -> Option<Q> {
        let s = s.trim();
        if let Some((a, b)) = s.split_once('/') {
            let n: BigInt = a.trim().parse().ok()?;
            let d: BigInt = b.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Q::from_big(BigRational::new(n, d)))
        } else {
            let n: BigInt = s.parse().ok()?;
            Some(Q::from_bigint(n))
        }
    }
}

impl PartialEq for Q {
    fn eq(&self, o: &Q) -> bool {
        match (self, o) {
            (Q::S(a, b), Q::S(c, d)) => a == c && b == d,
            (Q::B(a), Q::B(b)) => a == b,
            _ => false,
        }
    }
}

impl Eq for Q {}

impl Hash for Q {
    fn hash<H: Hasher>(&self, h: &mut H) {
        match self {
            Q::S(a, b) => {
                a.hash(h);
                b.hash(h);
            }
            Q::B(b) => {
                b.numer().hash(h);
                b.denom().hash(h);
            }
        }
    }
}

impl Ord for Q {
    fn cmp(&self, o: &Q) -> Ordering {
        match (self, o) {
            (Q::S(a, b), Q::S(c, d)) => ((*a as i128) * (*d as i128)).cmp(&((*c as i128) * (*b as i128))),
            _ => self.to_big().cmp(&o.to_big()),
        }
    }
}

impl PartialOrd for Q {
    fn partial_cmp(&self, o: &Q) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl<'a> Add<&'a Q> for &'a Q {
    type Output = Q;
    fn add(self, o: &Q) -> Q {
        match (self, o) {
            (Q::S(a, b), Q::S(c, d)) => {
                if *b == 1 && *d == 1 {
                    if let Some(s) = a.checked_add(*c) {
                        return Q::S(s, 1);
                    }
                }
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                Q::from_i128(a * d + c * b, b * d)
            }
            _ => Q::from_big(self.to_big() + o.to_big()),
        }
    }
}

impl<'a> Sub<&'a Q> for &'a Q {
    type Output = Q;
    fn sub(self, o: &Q) -> Q {
        self + &(-o)
    }
}

impl<'a> Mul<&'a Q> for &'a Q {
    type Output = Q;
    fn mul(self, o: &Q) -> Q {
        match (self, o) {
            (Q::S(a, b), Q::S(c, d)) => {
                if *b == 1 && *d == 1 {
                    if let Some(s) = a.checked_mul(*c) {
                        return Q::S(s, 1);
                    }
                }
                Q::from_i128(*a as i128 * *c as i128, *b as i128 * *d as i128)
            }
            _ => Q::from_big(self.to_big() * o.to_big()),
        }
    }
}

impl Neg for &Q {
    type Output = Q;
    fn neg(self) -> Q {
        match self {
            Q::S(a, b) => match a.checked_neg() {
                Some(n) => Q::S(n, *b),
                None => Q::from_big(-self.to_big()),
            },
            Q::B(b) => Q::from_big(-(**b).clone()),
        }
    }
}

impl Neg for Q {
    type Output = Q;
    fn neg(self) -> Q {
        -&self
    }
}

impl Add for Q {
    type Output = Q;
    fn add(self, o: Q) -> Q {
        &self + &o
    }
}

impl Sub for Q {
    type Output = Q;
    fn sub(self, o: Q) -> Q {
        &self - &o
    }
}

impl Mul for Q {
    type Output = Q;
    fn mul(self, o: Q) -> Q {
        &self * &o
    }
}

impl Default for Q {
    fn default() -> Q {
        Q::zero()
    }
}

impl From<i64> for Q {
    fn from(n: i64) -> Q {
        Q::int(n)
    }
}

impl fmt::Display for Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Q::S(n, 1) => write!(f, "{}", n),
            Q::S(n, d) => write!(f, "{}/{}", n, d),
            Q::B(b) => {
                if b.is_integer() {
                    write!(f, "{}", b.numer())
                } else {
                    write!(f, "{}/{}", b.numer(), b.denom())
                }
            }
        }
    }
}

/// Integer gcd of numerators and lcm of denominators, used to make a
/// coefficient list primitive over the integers.
pub fn content(cs: &[&Q]) -> Q {
    let mut g = BigInt::zero();
    let mut l = BigInt::one();
    for c in cs {
        g = g.gcd(&c.numer());
        l = l.lcm(&c.denom());
    }
    if g.is_zero() {
        return Q::one();
    }
    Q::from_big(BigRational::new(g, l))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_overflow_promotes() {
        let a = Q::int(i64::MAX);
        let b = &a + &a;
        assert!(matches!(b, Q::B(_)));
        let c = &b - &a;
        assert_eq!(c, a);
        assert!(matches!(c, Q::S(_, _)));
    }

    #[test]
    fn reduce_and_order() {
        assert_eq!(Q::new(2, -4), Q::new(-1, 2));
        assert!(Q::new(1, 3) < Q::new(1, 2));
        assert_eq!(Q::new(3, 7).mod_p(7), None);
        assert_eq!(Q::new(1, 2).mod_p(5), Some(3));
        assert_eq!(Q::parse("-6/4"), Some(Q::new(-3, 2)));
    }

    #[test]
    fn content_of_list() {
        let a = Q::new(2, 3);
        let b = Q::new(4, 5);
        assert_eq!(content(&[&a, &b]), Q::new(2, 15));
    }
}
