use super::coeff::Q;
use super::error::AlgebraError;
use super::gcd::gcd;
use super::modular::{ipow_mod, mul_mod, PRIME};
use super::mono::{Mono, NV};
use super::poly::Poly;
use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

/// A normalized polynomial factor: integral, primitive, positive leading
/// coefficient, not divisible by any variable and not constant.
#[derive(Debug)]
pub struct Atom {
    poly: Poly,
    irreducible: bool,
    /// slot s, A, B with poly = A * x_s + B and A, B free of x_s
    lin: Option<(usize, Poly, Poly)>,
}

impl Atom {
    fn new(poly: Poly, irreducible: bool) -> Arc<Atom> {
        let mut lin = None;
        for s in poly.support() {
            let (lo, hi) = poly.degree_in(s);
            if lo == 0 && hi == 1 {
                let cs = poly.coeffs_in(s);
                let a = cs.get(&1).cloned().unwrap_or_default();
                let b = cs.get(&0).cloned().unwrap_or_default();
                lin = Some((s, a, b));
                break;
            }
        }
        Arc::new(Atom { poly, irreducible, lin })
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn is_irreducible(&self) -> bool {
        self.irreducible
    }

    /// Cheap certificate that `p` is not divisible by this atom. Returns
    /// false when no conclusion can be drawn.
    fn certainly_not_divisor(&self, p: &Poly) -> bool {
        let (s, a, b) = match &self.lin {
            Some(l) => l,
            None => return false,
        };
        let mut pt = [0u64; NV];
        let mut h: u64 = 0x9e37_79b9_7f4a_7c15;
        for (i, v) in pt.iter_mut().enumerate() {
            h ^= (i as u64 + 1).wrapping_mul(0xbf58_476d_1ce4_e5b9);
            h = h.wrapping_mul(0x94d0_49bb_1331_11eb).rotate_left(29);
            *v = 2 + h % (PRIME - 3);
        }
        let av = match a.eval_mod(&pt, PRIME) {
            Some(v) if v != 0 => v,
            _ => return false,
        };
        let bv = match b.eval_mod(&pt, PRIME) {
            Some(v) => v,
            None => return false,
        };
        let root = mul_mod(PRIME - bv % PRIME, super::modular::inv_mod(av, PRIME), PRIME);
        pt[*s] = root;
        match p.eval_mod(&pt, PRIME) {
            Some(v) => v != 0,
            None => false,
        }
    }
}

impl PartialEq for Atom {
    fn eq(&self, o: &Atom) -> bool {
        self.poly == o.poly
    }
}

impl Eq for Atom {}

impl Ord for Atom {
    fn cmp(&self, o: &Atom) -> Ordering {
        self.poly.cmp(&o.poly)
    }
}

impl PartialOrd for Atom {
    fn partial_cmp(&self, o: &Atom) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// Exact multivariate rational function.
///
/// Stored partially factored as `rest * prod atom^e`; atoms with negative
/// exponent never divide `rest`. The canonical reduced fraction is available
/// through [`RatFunc::numerator`] and [`RatFunc::denominator`].
#[derive(Clone)]
pub struct RatFunc {
    rest: Poly,
    fac: Vec<(Arc<Atom>, i32)>,
}

pub type Factor = (Arc<Atom>, i32);

fn merge_factors(a: &[Factor], b: &[Factor], sb: i32) -> Vec<Factor> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ord = if i == a.len() {
            Ordering::Greater
        } else if j == b.len() {
            Ordering::Less
        } else {
            a[i].0.cmp(&b[j].0)
        };
        match ord {
            Ordering::Less => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Greater => {
                out.push((b[j].0.clone(), sb * b[j].1));
                j += 1;
            }
            Ordering::Equal => {
                let e = a[i].1 + sb * b[j].1;
                if e != 0 {
                    out.push((a[i].0.clone(), e));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out
}

fn cyclotomic(d: usize, memo: &mut HashMap<usize, Vec<i64>>) -> Vec<i64> {
    if let Some(c) = memo.get(&d) {
        return c.clone();
    }
    // y^d - 1, low degree first
    let mut num = vec![0i64; d + 1];
    num[0] = -1;
    num[d] = 1;
    for e in 1..d {
        if d.is_multiple_of(e) {
            let f = cyclotomic(e, memo);
            num = div_int_poly(&num, &f);
        }
    }
    memo.insert(d, num.clone());
    num
}

fn div_int_poly(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let da = a.len() - 1;
    let mut q = vec![0i64; da - db + 1];
    for k in (0..=da - db).rev() {
        let c = r[k + db] / b[db];
        q[k] = c;
        for (i, bi) in b.iter().enumerate() {
            r[k + i] -= c * bi;
        }
    }
    debug_assert!(r.iter().all(|&c| c == 0));
    q
}

fn igcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Factorization of a normalized polynomial into (unit, atoms), used when
/// the polynomial has to move into a denominator.
fn factor_normalized(p: &Poly) -> (Q, Mono, Vec<Arc<Atom>>) {
    if p.len() == 2 {
        let (m1, c1) = &p.terms()[0];
        let (m2, c2) = &p.terms()[1];
        let gamma = -&c2.div(c1);
        let d = m1.div(m2);
        let mut g: i64 = 0;
        for &e in d.0.iter() {
            g = igcd(g, e as i64);
        }
        let e = Mono(d.0.map(|k| (k as i64 / g) as i16));
        let divisors: Vec<usize> = if gamma.is_one() {
            (1..=g as usize).filter(|k| (g as usize).is_multiple_of(*k)).collect()
        } else if gamma == Q::int(-1) {
            let g2 = 2 * g as usize;
            (1..=g2).filter(|k| g2.is_multiple_of(*k) && !(g as usize).is_multiple_of(*k)).collect()
        } else if g == 1 {
            return (Q::one(), Mono::one(), vec![Atom::new(p.clone(), true)]);
        } else {
            return (Q::one(), Mono::one(), vec![Atom::new(p.clone(), false)]);
        };
        // p = c1 * x^{m2} * prod Phi_k(x^e)
        let mut memo = HashMap::new();
        let mut unit_c = c1.clone();
        let mut unit_m = *m2;
        let mut atoms = Vec::new();
        for k in divisors {
            let cyc = cyclotomic(k, &mut memo);
            let lp = Poly::from_terms(
                cyc.iter().enumerate().filter(|(_, c)| **c != 0).map(|(i, c)| (e.pow(i as i32), Q::int(*c))),
            );
            let (c, m, q) = lp.normalize_parts();
            unit_c = &unit_c * &c;
            unit_m = unit_m.mul(&m);
            atoms.push(Atom::new(q, true));
        }
        return (unit_c, unit_m, atoms);
    }
    let irreducible = p.total_degree() == 1
        || p.support().iter().any(|&s| {
            let (lo, hi) = p.degree_in(s);
            lo == 0 && hi == 1 && {
                let cs = p.coeffs_in(s);
                cs.values().any(|c| c.as_monomial().is_some())
            }
        });
    (Q::one(), Mono::one(), vec![Atom::new(p.clone(), irreducible)])
}

impl RatFunc {
    pub fn zero() -> RatFunc {
        RatFunc { rest: Poly::zero(), fac: vec![] }
    }

    pub fn one() -> RatFunc {
        RatFunc::constant(Q::one())
    }

    pub fn int(n: i64) -> RatFunc {
        RatFunc::constant(Q::int(n))
    }

    pub fn constant(c: Q) -> RatFunc {
        RatFunc { rest: Poly::constant(c), fac: vec![] }
    }

    pub fn var(s: usize) -> RatFunc {
        RatFunc { rest: Poly::var(s), fac: vec![] }
    }

    pub fn monomial(c: Q, m: Mono) -> RatFunc {
        RatFunc { rest: Poly::term(c, m), fac: vec![] }
    }

    /// Wraps a polynomial; binomials are split into cyclotomic atoms.
    pub fn from_poly(p: &Poly) -> RatFunc {
        if p.len() == 2 {
            let (c, m, q) = p.normalize_parts();
            let (uc, um, atoms) = factor_normalized(&q);
            if atoms.iter().all(|a| a.irreducible) {
                let mut fac: Vec<Factor> = atoms.into_iter().map(|a| (a, 1)).collect();
                fac.sort_by(|a, b| a.0.cmp(&b.0));
                return RatFunc { rest: Poly::term(&c * &uc, m.mul(&um)), fac };
            }
        }
        RatFunc { rest: p.clone(), fac: vec![] }
    }

    /// `1 - c * m`
    pub fn one_minus(c: Q, m: Mono) -> RatFunc {
        RatFunc::from_poly(&Poly::one().sub(&Poly::term(c, m)))
    }

    pub fn is_zero(&self) -> bool {
        self.rest.is_zero()
    }

    /// Cheap structural test; exact only for canonical inputs.
    pub fn is_one(&self) -> bool {
        self.fac.is_empty() && self.rest.is_one()
    }

    /// `Some((c, m))` when the value is a single Laurent monomial.
    pub fn as_monomial(&self) -> Option<(Q, Mono)> {
        if !self.fac.is_empty() {
            return None;
        }
        self.rest.as_monomial().map(|(c, m)| (c.clone(), *m))
    }

    pub fn as_constant(&self) -> Option<Q> {
        if !self.fac.is_empty() {
            return None;
        }
        self.rest.as_constant()
    }

    pub fn factors(&self) -> &[Factor] {
        &self.fac
    }

    pub fn rest(&self) -> &Poly {
        &self.rest
    }

    fn divides(a: &Atom, p: &Poly) -> Option<Poly> {
        if p.as_monomial().is_some() || a.certainly_not_divisor(p) {
            return None;
        }
        p.div_exact(&a.poly)
    }

    /// Restores the invariant that no negative atom divides `rest`.
    fn cancel(mut self) -> RatFunc {
        if self.rest.as_monomial().is_some() || self.rest.is_zero() {
            if self.rest.is_zero() {
                self.fac.clear();
            }
            return self;
        }
        let mut changed = false;
        for (a, e) in self.fac.iter_mut() {
            while *e < 0 {
                match RatFunc::divides(a, &self.rest) {
                    Some(q) => {
                        self.rest = q;
                        *e += 1;
                        changed = true;
                    }
                    None => break,
                }
            }
        }
        if changed {
            self.fac.retain(|(_, e)| *e != 0);
        }
        self
    }

    pub fn mul(&self, o: &RatFunc) -> RatFunc {
        if self.is_zero() || o.is_zero() {
            return RatFunc::zero();
        }
        let rest = self.rest.mul(&o.rest);
        let fac = merge_factors(&self.fac, &o.fac, 1);
        let need = (self.rest.as_monomial().is_none() && o.fac.iter().any(|f| f.1 < 0))
            || (o.rest.as_monomial().is_none() && self.fac.iter().any(|f| f.1 < 0));
        let r = RatFunc { rest, fac };
        if need {
            r.cancel()
        } else {
            r
        }
    }

    fn expand_factors(fac: &[Factor], sign: i32) -> Poly {
        let mut p = Poly::one();
        for (a, e) in fac {
            let k = e * sign;
            if k > 0 {
                p = p.mul(&a.poly.pow(k as u32));
            }
        }
        p
    }

    pub fn add(&self, o: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let mut common = Vec::new();
        let mut extra_a = Vec::new();
        let mut extra_b = Vec::new();
        let (a, b) = (&self.fac, &o.fac);
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            let (atom, ea, eb) = if i == a.len() {
                j += 1;
                (&b[j - 1].0, 0, b[j - 1].1)
            } else if j == b.len() {
                i += 1;
                (&a[i - 1].0, a[i - 1].1, 0)
            } else {
                match a[i].0.cmp(&b[j].0) {
                    Ordering::Less => {
                        i += 1;
                        (&a[i - 1].0, a[i - 1].1, 0)
                    }
                    Ordering::Greater => {
                        j += 1;
                        (&b[j - 1].0, 0, b[j - 1].1)
                    }
                    Ordering::Equal => {
                        i += 1;
                        j += 1;
                        (&a[i - 1].0, a[i - 1].1, b[j - 1].1)
                    }
                }
            };
            let m = ea.min(eb);
            if m != 0 {
                common.push((atom.clone(), m));
            }
            if ea > m {
                extra_a.push((atom.clone(), ea - m));
            }
            if eb > m {
                extra_b.push((atom.clone(), eb - m));
            }
        }
        let ra = self.rest.mul(&RatFunc::expand_factors(&extra_a, 1));
        let rb = o.rest.mul(&RatFunc::expand_factors(&extra_b, 1));
        let rest = ra.add(&rb);
        if rest.is_zero() {
            return RatFunc::zero();
        }
        RatFunc { rest, fac: common }.cancel()
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc { rest: self.rest.neg(), fac: self.fac.clone() }
    }

    pub fn sub(&self, o: &RatFunc) -> RatFunc {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: &Q) -> RatFunc {
        if c.is_zero() {
            return RatFunc::zero();
        }
        RatFunc { rest: self.rest.scale(c), fac: self.fac.clone() }
    }

    pub fn checked_inv(&self) -> Result<RatFunc, AlgebraError> {
        if self.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        let mut fac: Vec<Factor> = self.fac.iter().map(|(a, e)| (a.clone(), -e)).collect();
        let (c, m, mut p) = self.rest.normalize_parts();
        let mut extra: Vec<Factor> = Vec::new();
        if p.as_constant().is_none() {
            for (a, _) in &self.fac {
                let mut k = 0;
                while let Some(q) = RatFunc::divides(a, &p) {
                    p = q;
                    k += 1;
                }
                if k > 0 {
                    extra.push((a.clone(), -k));
                }
            }
        }
        let mut unit_c = c.inv();
        let mut unit_m = m.inv();
        if let Some(k) = p.as_constant() {
            unit_c = unit_c.div(&k);
        } else {
            let (c2, m2, p2) = p.normalize_parts();
            unit_c = unit_c.div(&c2);
            unit_m = unit_m.div(&m2);
            let (uc, um, atoms) = factor_normalized(&p2);
            unit_c = unit_c.div(&uc);
            unit_m = unit_m.div(&um);
            let mut fresh: Vec<Factor> = atoms.into_iter().map(|a| (a, -1)).collect();
            fresh.sort_by(|a, b| a.0.cmp(&b.0));
            fresh = collapse(fresh);
            extra = merge_factors(&extra, &fresh, 1);
        }
        extra.sort_by(|a, b| a.0.cmp(&b.0));
        fac = merge_factors(&fac, &extra, 1);
        Ok(RatFunc { rest: Poly::term(unit_c, unit_m), fac })
    }

    pub fn inv(&self) -> RatFunc {
        self.checked_inv().expect("division by zero polynomial")
    }

    pub fn checked_div(&self, o: &RatFunc) -> Result<RatFunc, AlgebraError> {
        Ok(self.mul(&o.checked_inv()?))
    }

    pub fn div(&self, o: &RatFunc) -> RatFunc {
        self.mul(&o.inv())
    }

    pub fn pow(&self, k: i32) -> RatFunc {
        if k < 0 {
            return self.inv().pow(-k);
        }
        if k == 0 {
            return RatFunc::one();
        }
        if let Some((c, m)) = self.as_monomial() {
            return RatFunc::monomial(super::poly::qpow(&c, k as u32), m.pow(k));
        }
        let fac = self.fac.iter().map(|(a, e)| (a.clone(), e * k)).collect();
        RatFunc { rest: self.rest.pow(k as u32), fac }
    }

    /// Sum with balanced pairing, which keeps intermediate sizes small.
    pub fn sum<I: IntoIterator<Item = RatFunc>>(it: I) -> RatFunc {
        let mut v: Vec<RatFunc> = it.into_iter().collect();
        if v.is_empty() {
            return RatFunc::zero();
        }
        while v.len() > 1 {
            let mut next = Vec::with_capacity(v.len() / 2 + 1);
            let mut iter = v.into_iter();
            while let Some(a) = iter.next() {
                match iter.next() {
                    Some(b) => next.push(a.add(&b)),
                    None => next.push(a),
                }
            }
            v = next;
        }
        v.pop().unwrap()
    }

    pub fn product<I: IntoIterator<Item = RatFunc>>(it: I) -> RatFunc {
        let mut acc = RatFunc::one();
        for f in it {
            acc = acc.mul(&f);
        }
        acc
    }

    /// Canonical reduced fraction: integral numerator, denominator not
    /// divisible by any variable with positive leading coefficient, jointly
    /// primitive.
    pub fn canonical(&self) -> (Poly, Poly) {
        if self.is_zero() {
            return (Poly::zero(), Poly::one());
        }
        let mut num = self.rest.mul(&RatFunc::expand_factors(&self.fac, 1));
        let mut den = RatFunc::expand_factors(&self.fac, -1);
        if self.fac.iter().any(|(a, e)| *e < 0 && !a.irreducible) {
            let g = gcd(&num, &den);
            if g.as_constant().is_none() {
                num = num.div_exact(&g).expect("gcd divides numerator");
                den = den.div_exact(&g).expect("gcd divides denominator");
            }
        }
        let (c, m, d) = den.normalize_parts();
        num = num.mul_term(&c.inv(), &m.inv());
        let mut k = num_bigint::BigInt::from(1);
        for (_, q) in num.terms() {
            k = num_integer::Integer::lcm(&k, &q.denom());
        }
        let k = Q::from_bigint(k);
        (num.scale(&k), d.scale(&k))
    }

    pub fn numerator(&self) -> Poly {
        self.canonical().0
    }

    pub fn denominator(&self) -> Poly {
        self.canonical().1
    }

    /// Rebuilds the value from its canonical fraction, dropping any cached
    /// factorization.
    pub fn normalized(&self) -> RatFunc {
        let (n, d) = self.canonical();
        rf_normalize(&n, &d).expect("nonzero denominator")
    }

    /// True when the canonical denominator is a constant.
    pub fn is_laurent_polynomial(&self) -> bool {
        self.canonical().1.as_constant().is_some()
    }

    /// True when the canonical denominator involves no variable except slot `s`.
    pub fn is_laurent_polynomial_over(&self, s: usize) -> bool {
        let d = self.canonical().1;
        (0..NV).all(|t| t == s || !d.uses(t))
    }

    pub fn eval_mod(&self, pt: &[u64; NV], p: u64) -> Result<u64, AlgebraError> {
        let mut v = self.rest.eval_mod(pt, p).ok_or(AlgebraError::Singular)?;
        for (a, e) in &self.fac {
            let av = a.poly.eval_mod(pt, p).ok_or(AlgebraError::Singular)?;
            let t = ipow_mod(av, *e as i64, p).ok_or(AlgebraError::Singular)?;
            v = mul_mod(v, t, p);
        }
        Ok(v)
    }

    /// Substitutes x_s -> x_s^{-1} for each listed slot.
    pub fn invert_slots(&self, slots: &[usize]) -> RatFunc {
        let mut out = RatFunc { rest: self.rest.invert_slots(slots), fac: vec![] };
        let mut fac = Vec::new();
        for (a, e) in &self.fac {
            let (c, m, q) = a.poly.invert_slots(slots).normalize_parts();
            let unit = RatFunc::monomial(c, m).pow(*e);
            out.rest = out.rest.mul(&unit.rest);
            fac.push((Atom::new(q, a.irreducible), *e));
        }
        fac.sort_by(|a, b| a.0.cmp(&b.0));
        out.fac = fac;
        out
    }

    /// Substitutes the rational function `val` for the variable in slot `s`.
    pub fn subs(&self, s: usize, val: &RatFunc) -> Result<RatFunc, AlgebraError> {
        let mut out = subs_poly(&self.rest, s, val)?;
        for (a, e) in &self.fac {
            let f = subs_poly(&a.poly, s, val)?;
            if *e < 0 && f.is_zero() {
                return Err(AlgebraError::DivisionByZero);
            }
            out = out.mul(&f.pow(*e));
        }
        Ok(out)
    }

    /// Substitutes x_s^k -> val (e.g. v^2 -> q_F). `Ok(None)` when the
    /// reduced form has an exponent of x_s not divisible by k.
    pub fn subs_root(&self, s: usize, k: i16, val: &Q) -> Result<Option<RatFunc>, AlgebraError> {
        let (n, d) = self.canonical();
        let (n2, d2) = match (n.subs_root(s, k, val), d.subs_root(s, k, val)) {
            (Some(a), Some(b)) => (a, b),
            _ => return Ok(None),
        };
        if d2.is_zero() {
            return Err(AlgebraError::Singular);
        }
        rf_normalize(&n2, &d2).map(Some)
    }

    pub fn uses(&self, s: usize) -> bool {
        self.rest.uses(s) || self.fac.iter().any(|(a, _)| a.poly.uses(s))
    }

    /// Power series coefficients in the variable of slot `s`, degrees
    /// `0..=order`. Fails when the expansion has negative powers.
    pub fn series(&self, s: usize, order: usize) -> Result<Vec<RatFunc>, AlgebraError> {
        let mut acc = poly_series(&self.rest, s, order)?;
        for (a, e) in &self.fac {
            let base = poly_series(&a.poly, s, order)?;
            let mut f = if *e > 0 { base } else { series_inverse(&base, order)? };
            for _ in 1..e.abs() {
                let g = if *e > 0 {
                    poly_series(&a.poly, s, order)?
                } else {
                    series_inverse(&poly_series(&a.poly, s, order)?, order)?
                };
                f = series_mul(&f, &g, order);
            }
            acc = series_mul(&acc, &f, order);
        }
        Ok(acc)
    }
}

fn collapse(v: Vec<Factor>) -> Vec<Factor> {
    let mut out: Vec<Factor> = Vec::with_capacity(v.len());
    for (a, e) in v {
        match out.last_mut() {
            Some((b, f)) if **b == *a => *f += e,
            _ => out.push((a, e)),
        }
    }
    out.retain(|(_, e)| *e != 0);
    out
}

fn subs_poly(p: &Poly, s: usize, val: &RatFunc) -> Result<RatFunc, AlgebraError> {
    let mut out = RatFunc::zero();
    for (k, c) in p.coeffs_in(s) {
        let t = if k < 0 { val.checked_inv()?.pow(-(k as i32)) } else { val.pow(k as i32) };
        out = out.add(&RatFunc::from_poly(&c).mul(&t));
    }
    Ok(out)
}

fn poly_series(p: &Poly, s: usize, order: usize) -> Result<Vec<RatFunc>, AlgebraError> {
    let mut out = vec![RatFunc::zero(); order + 1];
    for (k, c) in p.coeffs_in(s) {
        if k < 0 {
            return Err(AlgebraError::NotAPowerSeries);
        }
        if (k as usize) <= order {
            out[k as usize] = RatFunc::from_poly(&c);
        }
    }
    Ok(out)
}

fn series_mul(a: &[RatFunc], b: &[RatFunc], order: usize) -> Vec<RatFunc> {
    let mut out = vec![RatFunc::zero(); order + 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate().take(order + 1 - i) {
            if bj.is_zero() {
                continue;
            }
            out[i + j] = out[i + j].add(&ai.mul(bj));
        }
    }
    out
}

fn series_inverse(a: &[RatFunc], order: usize) -> Result<Vec<RatFunc>, AlgebraError> {
    if a[0].is_zero() {
        return Err(AlgebraError::NotAPowerSeries);
    }
    let i0 = a[0].inv();
    let mut out = vec![RatFunc::zero(); order + 1];
    out[0] = i0.clone();
    for k in 1..=order {
        let mut acc = RatFunc::zero();
        for j in 1..=k {
            if !a[j].is_zero() && !out[k - j].is_zero() {
                acc = acc.add(&a[j].mul(&out[k - j]));
            }
        }
        out[k] = acc.mul(&i0).neg();
    }
    Ok(out)
}

/// Canonical rational function from a raw numerator and denominator.
pub fn rf_normalize(num: &Poly, den: &Poly) -> Result<RatFunc, AlgebraError> {
    if den.is_zero() {
        return Err(AlgebraError::DivisionByZero);
    }
    RatFunc::from_poly(num).checked_div(&RatFunc::from_poly(den))
}

/// Evaluates `f` at an assignment of slot values in the prime field.
pub fn rf_eval_mod(f: &RatFunc, assignment: &[(usize, u64)], prime: u64) -> Result<u64, AlgebraError> {
    if !super::modular::is_prime(prime) {
        return Err(AlgebraError::NotPrime(prime));
    }
    let mut pt = [0u64; NV];
    let mut given = [false; NV];
    for &(s, v) in assignment {
        pt[s] = v % prime;
        given[s] = true;
    }
    for s in 0..NV {
        if f.uses(s) && !given[s] {
            return Err(AlgebraError::Unassigned(super::mono::slot_name(s)));
        }
    }
    f.eval_mod(&pt, prime)
}

impl PartialEq for RatFunc {
    fn eq(&self, o: &RatFunc) -> bool {
        self.sub(o).is_zero()
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (n, d) = self.canonical();
        if let Some(k) = d.as_constant() {
            write!(f, "{}", n.scale(&k.inv()))
        } else {
            write!(f, "({})/({})", n, d)
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl Default for RatFunc {
    fn default() -> RatFunc {
        RatFunc::zero()
    }
}

impl From<i64> for RatFunc {
    fn from(n: i64) -> RatFunc {
        RatFunc::int(n)
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $f:ident) => {
        impl $tr<&RatFunc> for &RatFunc {
            type Output = RatFunc;
            fn $m(self, o: &RatFunc) -> RatFunc {
                RatFunc::$f(self, o)
            }
        }
    };
}

binop!(Add, add, add);
binop!(Sub, sub, sub);
binop!(Mul, mul, mul);
binop!(Div, div, div);

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc::neg(self)
    }
}
