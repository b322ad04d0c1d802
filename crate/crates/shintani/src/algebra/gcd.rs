//! Multivariate polynomial gcd over Q by recursive primitive
//! pseudo-remainder sequences.

use super::modular::{inv_mod, mul_mod, sub_mod, PRIME};
use super::mono::{Mono, NV};
use super::poly::Poly;

/// Gcd of two Laurent polynomials, up to units of the Laurent ring.
/// The result is integral, primitive, not divisible by any variable and has
/// a positive leading coefficient.
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    let (_, _, pa) = a.normalize_parts();
    let (_, _, pb) = b.normalize_parts();
    gcd_poly(&pa, &pb)
}

fn normalized(p: &Poly) -> Poly {
    p.normalize_parts().2
}

fn gcd_poly(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return normalized(b);
    }
    if b.is_zero() {
        return normalized(a);
    }
    let a = normalized(a);
    let b = normalized(b);
    if a.as_constant().is_some() || b.as_constant().is_some() {
        return Poly::one();
    }
    if a == b {
        return a;
    }
    let sa = a.support();
    let sb = b.support();
    let s = match sa.iter().find(|s| sb.contains(s)) {
        Some(&s) => s,
        None => return Poly::one(),
    };
    let ca = content_in(&a, s);
    let cb = content_in(&b, s);
    let c = gcd_poly(&ca, &cb);
    let pa = a.div_exact(&ca).expect("content divides");
    let pb = b.div_exact(&cb).expect("content divides");
    let g = prs(pa, pb, s);
    normalized(&c.mul(&g))
}

/// Gcd of the coefficients of `p` viewed as a polynomial in slot `s`.
fn content_in(p: &Poly, s: usize) -> Poly {
    let mut g = Poly::zero();
    for (_, c) in p.coeffs_in(s) {
        g = gcd_poly(&g, &c);
        if g.as_constant().is_some() {
            return Poly::one();
        }
    }
    g
}

fn primitive_in(p: &Poly, s: usize) -> Poly {
    if p.is_zero() {
        return Poly::zero();
    }
    let c = content_in(p, s);
    normalized(&p.div_exact(&c).expect("content divides"))
}

fn deg(p: &Poly, s: usize) -> i16 {
    p.degree_in(s).1
}

fn lead_in(p: &Poly, s: usize) -> (i16, Poly) {
    let cs = p.coeffs_in(s);
    let (k, c) = cs.into_iter().next_back().expect("nonzero");
    (k, c)
}

fn prem(a: &Poly, b: &Poly, s: usize) -> Poly {
    let (db, lb) = lead_in(b, s);
    let mut r = a.clone();
    while !r.is_zero() && deg(&r, s) >= db {
        let (dr, lr) = lead_in(&r, s);
        let shift = Mono::var(s, dr - db);
        r = r.mul(&lb).sub(&b.mul(&lr).shift(&shift));
    }
    r
}

/// Fixed evaluation point for the coprimality certificate.
fn probe_point() -> [u64; NV] {
    let mut pt = [0u64; NV];
    let mut h: u64 = 0x2545_f491_4f6c_dd1d;
    for v in pt.iter_mut() {
        h ^= h << 13;
        h ^= h >> 7;
        h ^= h << 17;
        *v = 2 + h % (PRIME - 3);
    }
    pt
}

/// Image of `p` in F_PRIME[s] at the probe point, low degree first.
fn image_in(p: &Poly, s: usize, pt: &[u64; NV]) -> Option<Vec<u64>> {
    let cs = p.coeffs_in(s);
    let (lo, hi) = (*cs.keys().next()?, *cs.keys().next_back()?);
    if lo < 0 {
        return None;
    }
    let mut out = vec![0u64; hi as usize + 1];
    for (k, c) in cs {
        out[k as usize] = c.eval_mod(pt, PRIME)?;
    }
    Some(out)
}

fn trim(p: &mut Vec<u64>) {
    while p.last() == Some(&0) {
        p.pop();
    }
}

fn rem_mod(a: &mut Vec<u64>, b: &[u64]) {
    let lb = inv_mod(*b.last().unwrap(), PRIME);
    trim(a);
    while a.len() >= b.len() {
        let k = mul_mod(*a.last().unwrap(), lb, PRIME);
        let off = a.len() - b.len();
        for (i, &c) in b.iter().enumerate() {
            a[off + i] = sub_mod(a[off + i], mul_mod(k, c, PRIME), PRIME);
        }
        trim(a);
    }
}

/// True only if `a` and `b` have no common factor involving `s`: the image
/// gcd bounds the degree in `s` of the true gcd whenever the leading
/// coefficients survive evaluation.
fn coprime_in(a: &Poly, b: &Poly, s: usize) -> bool {
    let pt = probe_point();
    let (Some(mut x), Some(mut y)) = (image_in(a, s, &pt), image_in(b, s, &pt)) else { return false };
    if x.last() == Some(&0) || y.last() == Some(&0) {
        return false;
    }
    while !y.is_empty() {
        rem_mod(&mut x, &y);
        std::mem::swap(&mut x, &mut y);
    }
    x.len() == 1
}

fn prs(a: Poly, b: Poly, s: usize) -> Poly {
    let (mut a, mut b) = if deg(&a, s) >= deg(&b, s) { (a, b) } else { (b, a) };
    loop {
        if b.is_zero() {
            return primitive_in(&a, s);
        }
        if deg(&b, s) == 0 || coprime_in(&a, &b, s) {
            return Poly::one();
        }
        let r = prem(&a, &b, s);
        a = b;
        b = primitive_in(&r, s);
    }
}
