use super::coeff::{content, Q};
use super::modular::{add_mod, ipow_mod, mul_mod};
use super::mono::{Mono, NV};
use rustc_hash::FxHashMap;
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

/// Multivariate Laurent polynomial with rational coefficients.
/// Terms are kept sorted in decreasing graded lexicographic order.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: Vec<(Mono, Q)>,
}

pub type LaurentPoly = Poly;

impl Poly {
    pub fn zero() -> Poly {
        Poly { terms: vec![] }
    }

    pub fn one() -> Poly {
        Poly::constant(Q::one())
    }

    pub fn constant(c: Q) -> Poly {
        Poly::term(c, Mono::one())
    }

    pub fn term(c: Q, m: Mono) -> Poly {
        if c.is_zero() {
            Poly::zero()
        } else {
            Poly { terms: vec![(m, c)] }
        }
    }

    pub fn var(s: usize) -> Poly {
        Poly::term(Q::one(), Mono::var(s, 1))
    }

    /// Collects terms, merging duplicates and dropping zeros.
    pub fn from_terms<I: IntoIterator<Item = (Mono, Q)>>(it: I) -> Poly {
        let mut map: FxHashMap<Mono, Q> = FxHashMap::default();
        for (m, c) in it {
            let e = map.entry(m).or_insert_with(Q::zero);
            *e = &*e + &c;
        }
        Poly::from_map(map)
    }

    fn from_map(map: FxHashMap<Mono, Q>) -> Poly {
        let mut terms: Vec<(Mono, Q)> = map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        Poly { terms }
    }

    /// Terms must already be strictly decreasing and nonzero.
    fn from_sorted(terms: Vec<(Mono, Q)>) -> Poly {
        debug_assert!(terms.windows(2).all(|w| w[0].0 > w[1].0));
        debug_assert!(terms.iter().all(|t| !t.1.is_zero()));
        Poly { terms }
    }

    pub fn terms(&self) -> &[(Mono, Q)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn as_constant(&self) -> Option<Q> {
        match self.terms.as_slice() {
            [] => Some(Q::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn as_monomial(&self) -> Option<(&Q, &Mono)> {
        match self.terms.as_slice() {
            [(m, c)] => Some((c, m)),
            _ => None,
        }
    }

    pub fn lt(&self) -> Option<&(Mono, Q)> {
        self.terms.first()
    }

    pub fn neg(&self) -> Poly {
        Poly { terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect() }
    }

    pub fn scale(&self, c: &Q) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(m, d)| (*m, d * c)).collect() }
    }

    /// Multiplication by a monomial preserves the term order.
    pub fn shift(&self, m: &Mono) -> Poly {
        Poly { terms: self.terms.iter().map(|(n, c)| (n.mul(m), c.clone())).collect() }
    }

    pub fn mul_term(&self, c: &Q, m: &Mono) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(n, d)| (n.mul(m), d * c)).collect() }
    }

    pub fn add(&self, o: &Poly) -> Poly {
        self.merge(o, false)
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        self.merge(o, true)
    }

    fn merge(&self, o: &Poly, negate: bool) -> Poly {
        let mut out = Vec::with_capacity(self.terms.len() + o.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &o.terms);
        while i < a.len() || j < b.len() {
            let ord = if i == a.len() {
                Ordering::Less
            } else if j == b.len() {
                Ordering::Greater
            } else {
                a[i].0.cmp(&b[j].0)
            };
            match ord {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate { -&b[j].1 } else { b[j].1.clone() };
                    out.push((b[j].0, c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Poly::from_sorted(out)
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        if let Some((c, m)) = o.as_monomial() {
            return self.mul_term(c, m);
        }
        if let Some((c, m)) = self.as_monomial() {
            return o.mul_term(c, m);
        }
        let mut map: FxHashMap<Mono, Q> = FxHashMap::with_capacity_and_hasher(self.len() * o.len(), Default::default());
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                let e = map.entry(m1.mul(m2)).or_insert_with(Q::zero);
                *e = &*e + &(c1 * c2);
            }
        }
        Poly::from_map(map)
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut r = Poly::one();
        let mut b = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                r = r.mul(&b);
            }
            k >>= 1;
            if k > 0 {
                b = b.mul(&b);
            }
        }
        r
    }

    /// Componentwise minimum exponent over all terms.
    pub fn min_mono(&self) -> Mono {
        let mut it = self.terms.iter();
        let mut m = match it.next() {
            Some(t) => t.0,
            None => return Mono::one(),
        };
        for t in it {
            m = m.gcd(&t.0);
        }
        m
    }

    /// Componentwise maximum exponent over all terms.
    pub fn max_mono(&self) -> Mono {
        let mut it = self.terms.iter();
        let mut m = match it.next() {
            Some(t) => t.0 .0,
            None => return Mono::one(),
        };
        for t in it {
            for (a, b) in m.iter_mut().zip(t.0 .0.iter()) {
                *a = (*a).max(*b);
            }
        }
        Mono(m)
    }

    /// True when every exponent is nonnegative.
    pub fn is_polynomial(&self) -> bool {
        self.terms.iter().all(|t| t.0.is_nonneg())
    }

    /// Writes self = x^m * P with P a polynomial not divisible by any variable.
    pub fn split_monomial(&self) -> (Mono, Poly) {
        let m = self.min_mono();
        if m.is_one() {
            return (m, self.clone());
        }
        (m, self.shift(&m.inv()))
    }

    /// Writes self = c * x^m * P with P integral, primitive, not divisible by
    /// any variable and with positive leading coefficient.
    pub fn normalize_parts(&self) -> (Q, Mono, Poly) {
        if self.is_zero() {
            return (Q::zero(), Mono::one(), Poly::zero());
        }
        let (m, p) = self.split_monomial();
        let cs: Vec<&Q> = p.terms.iter().map(|t| &t.1).collect();
        let mut c = content(&cs);
        if p.terms[0].1.is_negative() {
            c = -c;
        }
        let p = if c.is_one() { p } else { p.scale(&c.inv()) };
        (c, m, p)
    }

    /// Exact division in the Laurent ring, `None` if d does not divide self.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        assert!(!d.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(Poly::zero());
        }
        if let Some((c, m)) = d.as_monomial() {
            return Some(self.mul_term(&c.inv(), &m.inv()));
        }
        let (ma, pa) = self.split_monomial();
        let (mb, pb) = d.split_monomial();
        let q = pa.div_poly(&pb)?;
        Some(q.shift(&ma.div(&mb)))
    }

    /// Exact division of honest polynomials.
    fn div_poly(&self, d: &Poly) -> Option<Poly> {
        let dmax = d.max_mono();
        let smax = self.max_mono();
        if !dmax.divides(&smax) {
            return None;
        }
        if self.len() == 1 {
            return None;
        }
        let (lm, lc) = d.terms[0].clone();
        let lci = lc.inv();
        let mut rem: BTreeMap<Mono, Q> = self.terms.iter().cloned().collect();
        let mut quot = Vec::new();
        while let Some((m, c)) = rem.pop_last() {
            if !lm.divides(&m) {
                return None;
            }
            let tm = m.div(&lm);
            let tc = &c * &lci;
            for (dm, dc) in &d.terms[1..] {
                let key = dm.mul(&tm);
                let sub = &tc * dc;
                match rem.get_mut(&key) {
                    Some(v) => {
                        *v = &*v - &sub;
                        if v.is_zero() {
                            rem.remove(&key);
                        }
                    }
                    None => {
                        rem.insert(key, -sub);
                    }
                }
            }
            quot.push((tm, tc));
        }
        Some(Poly::from_sorted(quot))
    }

    pub fn eval_mod(&self, pt: &[u64; NV], p: u64) -> Option<u64> {
        let mut acc = 0u64;
        for (m, c) in &self.terms {
            let mut t = c.mod_p(p)?;
            for s in m.support() {
                t = mul_mod(t, ipow_mod(pt[s], m.0[s] as i64, p)?, p);
            }
            acc = add_mod(acc, t, p);
        }
        Some(acc)
    }

    /// Substitutes x_s -> x_s^{-1} for every slot in `slots`.
    pub fn invert_slots(&self, slots: &[usize]) -> Poly {
        Poly::from_terms(self.terms.iter().map(|(m, c)| {
            let mut e = m.0;
            for &s in slots {
                e[s] = -e[s];
            }
            (Mono(e), c.clone())
        }))
    }

    /// Substitutes monomials for variables: x_s -> c_s * mono_s.
    pub fn subs_monomial(&self, s: usize, c: &Q, m: &Mono) -> Poly {
        Poly::from_terms(self.terms.iter().map(|(n, d)| {
            let e = n.0[s];
            let base = n.with(s, 0).mul(&m.pow(e as i32));
            let cc = if e >= 0 { qpow(c, e as u32) } else { qpow(&c.inv(), (-e) as u32) };
            (base, d * &cc)
        }))
    }

    /// Substitutes x_s^k -> val; `None` if some exponent of x_s is not a multiple of k.
    pub fn subs_root(&self, s: usize, k: i16, val: &Q) -> Option<Poly> {
        let mut out = Vec::with_capacity(self.terms.len());
        for (n, d) in &self.terms {
            let e = n.0[s];
            if e % k != 0 {
                return None;
            }
            let t = e / k;
            let cc = if t >= 0 { qpow(val, t as u32) } else { qpow(&val.inv(), (-t) as u32) };
            out.push((n.with(s, 0), d * &cc));
        }
        Some(Poly::from_terms(out))
    }

    pub fn degree_in(&self, s: usize) -> (i16, i16) {
        let mut lo = i16::MAX;
        let mut hi = i16::MIN;
        for (m, _) in &self.terms {
            lo = lo.min(m.0[s]);
            hi = hi.max(m.0[s]);
        }
        (lo, hi)
    }

    /// Coefficients with respect to one variable.
    pub fn coeffs_in(&self, s: usize) -> BTreeMap<i16, Poly> {
        let mut out: BTreeMap<i16, Vec<(Mono, Q)>> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.0[s]).or_default().push((m.with(s, 0), c.clone()));
        }
        out.into_iter().map(|(k, v)| (k, Poly::from_terms(v))).collect()
    }

    pub fn uses(&self, s: usize) -> bool {
        self.terms.iter().any(|t| t.0 .0[s] != 0)
    }

    pub fn support(&self) -> Vec<usize> {
        (0..NV).filter(|&s| self.uses(s)).collect()
    }

    pub fn total_degree(&self) -> i32 {
        self.terms.iter().map(|t| t.0 .0.iter().map(|e| (*e as i32).abs()).sum::<i32>()).max().unwrap_or(0)
    }
}

pub fn qpow(c: &Q, e: u32) -> Q {
    let mut r = Q::one();
    for _ in 0..e {
        r = &r * c;
    }
    r
}

impl Ord for Poly {
    fn cmp(&self, o: &Poly) -> Ordering {
        for (a, b) in self.terms.iter().zip(o.terms.iter()) {
            let c = a.0.cmp(&b.0).then_with(|| a.1.cmp(&b.1));
            if c != Ordering::Equal {
                return c;
            }
        }
        self.terms.len().cmp(&o.terms.len())
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, o: &Poly) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "{}", a)?;
            } else if a.is_one() {
                write!(f, "{}", m)?;
            } else {
                write!(f, "{}*{}", a, m)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

#[cfg(test)]
mod tests {
    use super::super::mono::{x, y, V};
    use super::*;

    fn xv(i: usize) -> Poly {
        Poly::var(x(i))
    }

    #[test]
    fn arithmetic() {
        let a = xv(1).add(&Poly::one());
        let b = xv(1).sub(&Poly::one());
        let p = a.mul(&b);
        assert_eq!(p, xv(1).mul(&xv(1)).sub(&Poly::one()));
        assert_eq!(p.div_exact(&b), Some(a.clone()));
        assert_eq!(p.div_exact(&xv(2).add(&Poly::one())), None);
        assert_eq!(format!("{}", p), "x1^2 - 1");
    }

    #[test]
    fn laurent_division() {
        let a = xv(1).sub(&Poly::term(Q::one(), Mono::var(y(1), -1)));
        let b = Poly::var(V).add(&xv(2).shift(&Mono::var(x(1), -3)));
        let p = a.mul(&b);
        assert_eq!(p.div_exact(&a), Some(b.clone()));
        assert_eq!(p.div_exact(&b), Some(a));
    }

    #[test]
    fn parts() {
        let p = xv(1).scale(&Q::int(6)).sub(&Poly::constant(Q::int(4))).shift(&Mono::var(V, -2)).neg();
        let (c, m, q) = p.normalize_parts();
        assert_eq!(c, Q::int(-2));
        assert_eq!(m, Mono::var(V, -2));
        assert_eq!(format!("{}", q), "3*x1 - 2");
    }
}
