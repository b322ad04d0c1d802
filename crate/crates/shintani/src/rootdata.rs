//! Case taxonomy, cocharacter cones, relative root systems, Weyl groups and
//! modular characters for U(V), U(W) and the Levi G_r.
//!
//! Indices in `RootForm` are 1-based; everything else is 0-based.

use crate::algebra::{vpow, RatFunc};
use crate::error::{Error, Result};
use itertools::Itertools;
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FieldKind {
    Split,
    Inert,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CaseKind {
    Split,
    InertEven,
    InertOdd,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CaseDescriptor {
    pub kind: CaseKind,
    pub n: usize,
    pub m: usize,
    pub r: usize,
    pub rprime: usize,
    pub n_minus: usize,
    pub n_plus: usize,
    pub m_minus: usize,
    pub m_plus: usize,
}

pub fn build_case(field: FieldKind, n: usize, m: usize) -> Result<CaseDescriptor> {
    if m > n || !(n - m).is_multiple_of(2) {
        return Err(Error::InvalidCorank { n, m });
    }
    let r = (n - m) / 2;
    let (kind, n_minus, n_plus, m_minus, m_plus) = match field {
        FieldKind::Split => (CaseKind::Split, n, n, m, m),
        FieldKind::Inert => {
            let kind = if n.is_multiple_of(2) { CaseKind::InertEven } else { CaseKind::InertOdd };
            (kind, n / 2, n - n / 2, m / 2, m - m / 2)
        }
    };
    Ok(CaseDescriptor { kind, n, m, r, rprime: m + r, n_minus, n_plus, m_minus, m_plus })
}

impl CaseDescriptor {
    pub fn field(&self) -> FieldKind {
        match self.kind {
            CaseKind::Split => FieldKind::Split,
            _ => FieldKind::Inert,
        }
    }

    pub fn is_split(&self) -> bool {
        self.kind == CaseKind::Split
    }

    pub fn is_inert(&self) -> bool {
        !self.is_split()
    }

    pub fn is_odd(&self) -> bool {
        self.kind == CaseKind::InertOdd
    }

    /// Exponent e with q_E = v^e.
    pub fn qe_exp(&self) -> i32 {
        if self.is_split() {
            2
        } else {
            4
        }
    }

    /// Number of coordinates a Weyl element of `g` acts on.
    pub fn rank(&self, g: Group) -> usize {
        match g {
            Group::V => self.n_minus,
            Group::W => self.m_minus,
            Group::Gr if self.is_split() => 2 * self.r,
            Group::Gr => self.r,
        }
    }

    pub fn label(&self) -> String {
        let k = match self.kind {
            CaseKind::Split => "split",
            CaseKind::InertEven => "inert-even",
            CaseKind::InertOdd => "inert-odd",
        };
        format!("{} n={} m={}", k, self.n, self.m)
    }
}

impl fmt::Display for CaseDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str(&self.label())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Group {
    V,
    W,
    Gr,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Cocharacter {
    pub lambda_v: Vec<i64>,
    pub lambda_w: Vec<i64>,
}

impl Cocharacter {
    pub fn new(lambda_v: Vec<i64>, lambda_w: Vec<i64>) -> Cocharacter {
        Cocharacter { lambda_v, lambda_w }
    }

    pub fn zero(case: &CaseDescriptor) -> Cocharacter {
        Cocharacter { lambda_v: vec![0; case.n_minus], lambda_w: vec![0; case.m_minus] }
    }

    pub fn is_zero(&self) -> bool {
        self.lambda_v.iter().chain(&self.lambda_w).all(|&a| a == 0)
    }
}

// ---------------------------------------------------------------- Weyl group

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WeylElement {
    /// 0-based; coordinate i of w.chi is chi[perm[i]]^signs[i]
    pub perm: Vec<usize>,
    pub signs: Vec<i8>,
    pub group: Group,
    pub is_longest: bool,
}

impl WeylElement {
    pub fn identity(group: Group, k: usize) -> WeylElement {
        WeylElement { perm: (0..k).collect(), signs: vec![1; k], group, is_longest: k == 0 }
    }

    pub fn rank(&self) -> usize {
        self.perm.len()
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p) && self.signs.iter().all(|&s| s == 1)
    }

    /// `self * o`, acting as `self` after `o`.
    pub fn compose(&self, o: &WeylElement) -> WeylElement {
        assert_eq!(self.rank(), o.rank(), "rank mismatch in composition");
        let perm: Vec<usize> = (0..self.rank()).map(|i| o.perm[self.perm[i]]).collect();
        let signs: Vec<i8> = (0..self.rank()).map(|i| self.signs[i] * o.signs[self.perm[i]]).collect();
        WeylElement { perm, signs, group: self.group, is_longest: false }
    }

    pub fn inverse(&self) -> WeylElement {
        let k = self.rank();
        let mut perm = vec![0; k];
        let mut signs = vec![1; k];
        for i in 0..k {
            perm[self.perm[i]] = i;
            signs[self.perm[i]] = self.signs[i];
        }
        WeylElement { perm, signs, group: self.group, is_longest: self.is_longest }
    }

    /// Action on a character-space vector: (w.a)_i = signs[i] * a[perm[i]].
    pub fn act_vec(&self, a: &[i32]) -> Vec<i32> {
        (0..self.rank()).map(|i| self.signs[i] as i32 * a[self.perm[i]]).collect()
    }

    pub fn act_root(&self, r: &Root) -> Root {
        Root { coeffs: self.act_vec(&r.coeffs), group: r.group }
    }

    /// Number of positive roots sent to negative ones.
    pub fn length(&self, case: &CaseDescriptor) -> usize {
        positive_roots(case, self.group).iter().filter(|a| !self.act_root(a).is_positive()).count()
    }
}

fn longest(case: &CaseDescriptor, g: Group) -> WeylElement {
    let k = case.rank(g);
    let (perm, signs) = match (g, case.is_split()) {
        (Group::Gr, true) => {
            let r = case.r;
            let p = (0..r).rev().chain((r..2 * r).rev()).collect();
            (p, vec![1; k])
        }
        (Group::Gr, false) | (_, true) => ((0..k).rev().collect(), vec![1; k]),
        (_, false) => ((0..k).collect(), vec![-1; k]),
    };
    WeylElement { perm, signs, group: g, is_longest: true }
}

pub fn longest_element(case: &CaseDescriptor, g: Group) -> WeylElement {
    longest(case, g)
}

fn sign_vectors(k: usize) -> Vec<Vec<i8>> {
    (0..1usize << k).map(|b| (0..k).map(|i| if b >> i & 1 == 1 { -1 } else { 1 }).collect()).collect()
}

/// All elements of the Weyl group of `g`, identity first, each exactly once.
pub fn weyl_elements(case: &CaseDescriptor, g: Group) -> Vec<WeylElement> {
    let k = case.rank(g);
    let w0 = longest(case, g);
    let mut out: Vec<WeylElement> = match (g, case.is_split()) {
        (Group::Gr, true) => {
            let r = case.r;
            let mut v = Vec::new();
            for p in (0..r).permutations(r) {
                for q in (0..r).permutations(r) {
                    let perm = p.iter().copied().chain(q.iter().map(|&j| j + r)).collect();
                    v.push(WeylElement { perm, signs: vec![1; k], group: g, is_longest: false });
                }
            }
            v
        }
        (Group::Gr, false) | (_, true) => (0..k)
            .permutations(k)
            .map(|perm| WeylElement { perm, signs: vec![1; k], group: g, is_longest: false })
            .collect(),
        (_, false) => {
            let mut v = Vec::new();
            for perm in (0..k).permutations(k) {
                for signs in sign_vectors(k) {
                    v.push(WeylElement { perm: perm.clone(), signs, group: g, is_longest: false });
                }
            }
            v
        }
    };
    for w in out.iter_mut() {
        if w.perm == w0.perm && w.signs == w0.signs {
            w.is_longest = true;
        }
    }
    out
}

/// (w.chi)_i = chi_{perm(i)}^{signs(i)}.
pub fn weyl_act(w: &WeylElement, chars: &[RatFunc]) -> Result<Vec<RatFunc>> {
    if chars.len() != w.rank() {
        return Err(Error::Arity { expected: w.rank(), got: chars.len() });
    }
    Ok((0..w.rank())
        .map(|i| {
            let c = &chars[w.perm[i]];
            if w.signs[i] < 0 {
                c.inv()
            } else {
                c.clone()
            }
        })
        .collect())
}

/// Simple reflection for the i-th simple root (1-based, in the order of `simple_roots`).
pub fn simple_reflection(case: &CaseDescriptor, g: Group, i: usize) -> Result<WeylElement> {
    let simple = simple_roots(case, g);
    if i == 0 || i > simple.len() {
        return Err(Error::IndexOutOfRange(format!("simple reflection {} of {}", i, simple.len())));
    }
    let mut w = WeylElement::identity(g, case.rank(g));
    match simple[i - 1].form().0 {
        RootForm::Diff(a, b) => w.perm.swap(a - 1, b - 1),
        RootForm::Long(a) | RootForm::Short(a) => w.signs[a - 1] = -1,
        RootForm::Sum(..) => unreachable!("sums are never simple"),
    }
    let w0 = longest(case, g);
    w.is_longest = w.perm == w0.perm && w.signs == w0.signs;
    Ok(w)
}

// ---------------------------------------------------------------- roots

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RootForm {
    /// e_a - e_b
    Diff(usize, usize),
    /// e_a + e_b
    Sum(usize, usize),
    /// 2e_a
    Long(usize),
    /// e_a
    Short(usize),
}

/// A root as an integer vector in the character lattice of the torus of `group`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Root {
    pub coeffs: Vec<i32>,
    pub group: Group,
}

impl Root {
    pub fn from_form(case: &CaseDescriptor, group: Group, form: RootForm) -> Result<Root> {
        let k = case.rank(group);
        let mut c = vec![0i32; k];
        let chk = |a: usize| -> Result<usize> {
            if a == 0 || a > k {
                Err(Error::RootNotInSystem(format!("{:?}: index out of range for rank {}", form, k)))
            } else {
                Ok(a - 1)
            }
        };
        match form {
            RootForm::Diff(a, b) | RootForm::Sum(a, b) if a == b => {
                return Err(Error::RootNotInSystem(format!("{:?}", form)))
            }
            RootForm::Diff(a, b) => {
                c[chk(a)?] = 1;
                c[chk(b)?] = -1;
            }
            RootForm::Sum(a, b) => {
                c[chk(a)?] = 1;
                c[chk(b)?] = 1;
            }
            RootForm::Long(a) => c[chk(a)?] = 2,
            RootForm::Short(a) => c[chk(a)?] = 1,
        }
        let r = Root { coeffs: c, group };
        if !r.in_system(case) {
            return Err(Error::RootNotInSystem(format!("{:?} in {}", form, case)));
        }
        Ok(r)
    }

    pub fn neg(&self) -> Root {
        Root { coeffs: self.coeffs.iter().map(|c| -c).collect(), group: self.group }
    }

    pub fn is_positive(&self) -> bool {
        self.coeffs.iter().find(|&&c| c != 0).is_some_and(|&c| c > 0)
    }

    fn norm2(&self) -> i32 {
        self.coeffs.iter().map(|c| c * c).sum()
    }

    /// The coroot 2 alpha / (alpha, alpha), as an integer vector.
    pub fn coroot(&self) -> Vec<i32> {
        let n2 = self.norm2();
        self.coeffs.iter().map(|c| 2 * c / n2).collect()
    }

    /// The form of the positive root among {self, -self}, and whether self is that root.
    pub fn form(&self) -> (RootForm, bool) {
        let pos = self.is_positive();
        let r = if pos { self.clone() } else { self.neg() };
        let nz: Vec<(usize, i32)> =
            r.coeffs.iter().enumerate().filter(|(_, &c)| c != 0).map(|(i, &c)| (i + 1, c)).collect();
        let f = match nz.as_slice() {
            [(a, 2)] => RootForm::Long(*a),
            [(a, 1)] => RootForm::Short(*a),
            [(a, 1), (b, -1)] => RootForm::Diff(*a, *b),
            [(a, 1), (b, 1)] => RootForm::Sum(*a, *b),
            _ => panic!("malformed root {:?}", self.coeffs),
        };
        (f, pos)
    }

    pub fn in_system(&self, case: &CaseDescriptor) -> bool {
        if self.coeffs.len() != case.rank(self.group) {
            return false;
        }
        let nz: Vec<(usize, i32)> =
            self.coeffs.iter().enumerate().filter(|(_, &c)| c != 0).map(|(i, &c)| (i, c)).collect();
        match nz.as_slice() {
            [(a, c1), (b, c2)] if c1.abs() == 1 && c2.abs() == 1 => {
                if c1 + c2 == 0 {
                    match (self.group, case.is_split()) {
                        (Group::Gr, true) => (*a < case.r) == (*b < case.r),
                        _ => true,
                    }
                } else {
                    case.is_inert() && self.group != Group::Gr
                }
            }
            [(_, c)] if c.abs() == 2 => case.kind == CaseKind::InertEven && self.group != Group::Gr,
            [(_, c)] if c.abs() == 1 => case.kind == CaseKind::InertOdd && self.group != Group::Gr,
            _ => false,
        }
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        let (form, pos) = self.form();
        let s = match form {
            RootForm::Diff(a, b) => format!("e{}-e{}", a, b),
            RootForm::Sum(a, b) => format!("e{}+e{}", a, b),
            RootForm::Long(a) => format!("2e{}", a),
            RootForm::Short(a) => format!("e{}", a),
        };
        if pos {
            f.write_str(&s)
        } else {
            write!(f, "-({})", s)
        }
    }
}

/// The non-divisible positive roots of `g`.
pub fn positive_roots(case: &CaseDescriptor, g: Group) -> Vec<Root> {
    let k = case.rank(g);
    let mut forms = Vec::new();
    for a in 1..=k {
        for b in a + 1..=k {
            forms.push(RootForm::Diff(a, b));
            if case.is_inert() && g != Group::Gr {
                forms.push(RootForm::Sum(a, b));
            }
        }
        match (case.kind, g) {
            (_, Group::Gr) | (CaseKind::Split, _) => {}
            (CaseKind::InertEven, _) => forms.push(RootForm::Long(a)),
            (CaseKind::InertOdd, _) => forms.push(RootForm::Short(a)),
        }
    }
    forms.into_iter().filter_map(|f| Root::from_form(case, g, f).ok()).collect()
}

/// Simple roots in the order e_1 - e_2, ..., then the long/short root for inert V/W.
pub fn simple_roots(case: &CaseDescriptor, g: Group) -> Vec<Root> {
    let k = case.rank(g);
    let mut forms: Vec<RootForm> = (1..k).map(|a| RootForm::Diff(a, a + 1)).collect();
    if case.is_inert() && g != Group::Gr && k > 0 {
        forms.push(if case.is_odd() { RootForm::Short(k) } else { RootForm::Long(k) });
    }
    forms.into_iter().filter_map(|f| Root::from_form(case, g, f).ok()).collect()
}

/// chi^{alpha^vee} = prod_i chi_i^{coroot_i}
pub fn coroot_pairing(case: &CaseDescriptor, chars: &[RatFunc], root: &Root) -> Result<RatFunc> {
    if !root.in_system(case) {
        return Err(Error::RootNotInSystem(format!("{:?}", root.coeffs)));
    }
    if chars.len() != root.coeffs.len() {
        return Err(Error::Arity { expected: root.coeffs.len(), got: chars.len() });
    }
    Ok(RatFunc::product(root.coroot().iter().zip(chars).filter(|(&c, _)| c != 0).map(|(&c, x)| x.pow(c))))
}

// ---------------------------------------------------------------- cones

/// Lambda_V^+ (for `Group::V`) or Lambda_W^+ (for `Group::W`).
pub fn is_dominant(case: &CaseDescriptor, lam: &[i64]) -> bool {
    lam.windows(2).all(|w| w[0] >= w[1]) && (case.is_split() || lam.last().is_none_or(|&a| a >= 0))
}

/// Lambda_W^- = -Lambda_W^+.
pub fn is_antidominant(case: &CaseDescriptor, lam: &[i64]) -> bool {
    let neg: Vec<i64> = lam.iter().map(|a| -a).collect();
    is_dominant(case, &neg)
}

pub fn in_lambda_minus(case: &CaseDescriptor, lam: &Cocharacter) -> Result<()> {
    check_lengths(case, lam)?;
    if !is_dominant(case, &lam.lambda_v) {
        return Err(Error::NotDominant(format!("lambda_V = {:?} is not in Lambda_V^+", lam.lambda_v)));
    }
    if !is_antidominant(case, &lam.lambda_w) {
        return Err(Error::NotDominant(format!("lambda_W = {:?} is not in Lambda_W^-", lam.lambda_w)));
    }
    Ok(())
}

fn check_lengths(case: &CaseDescriptor, lam: &Cocharacter) -> Result<()> {
    if lam.lambda_v.len() != case.n_minus {
        return Err(Error::Arity { expected: case.n_minus, got: lam.lambda_v.len() });
    }
    if lam.lambda_w.len() != case.m_minus {
        return Err(Error::Arity { expected: case.m_minus, got: lam.lambda_w.len() });
    }
    Ok(())
}

/// lam1 <= lam2: lam2 - lam1 is a nonnegative integral combination of simple coroots.
pub fn dominance_leq(case: &CaseDescriptor, lam1: &[i64], lam2: &[i64]) -> bool {
    if lam1.len() != lam2.len() {
        return false;
    }
    let k = lam1.len();
    let mut partial = 0i64;
    for i in 0..k {
        partial += lam2[i] - lam1[i];
        if partial < 0 {
            return false;
        }
    }
    if case.is_split() || k == 0 {
        return partial == 0;
    }
    // last simple coroot is e_k (type C) or 2e_k (odd)
    !case.is_odd() || partial % 2 == 0
}

/// Blocks (r, m_-, [r]) of T_V coordinates, as ranges.
fn x_blocks(case: &CaseDescriptor) -> Vec<std::ops::Range<usize>> {
    let r = case.r;
    if case.is_split() {
        vec![0..r, r..r + case.m, r + case.m..case.n]
    } else {
        vec![0..r, r..case.n_minus]
    }
}

/// lambda_X = lambda_V - lambda_W, with lambda_W placed at positions r+1..r+m_-.
pub fn project_lambda_x(case: &CaseDescriptor, lam: &Cocharacter) -> Result<Vec<i64>> {
    check_lengths(case, lam)?;
    if !is_dominant(case, &lam.lambda_v) {
        return Err(Error::NotDominant(format!("lambda_V = {:?} is not in Lambda_V^+", lam.lambda_v)));
    }
    let mut out = lam.lambda_v.clone();
    for (j, &b) in lam.lambda_w.iter().enumerate() {
        out[case.r + j] -= b;
    }
    if !in_lambda_x_minus(case, &out) {
        return Err(Error::NotDominant(format!("lambda_X = {:?} is not in Lambda_X^-", out)));
    }
    Ok(out)
}

/// Lambda_X^- = Lambda_r^+ + Lambda_W^+ inside Lambda_V.
pub fn in_lambda_x_minus(case: &CaseDescriptor, lx: &[i64]) -> bool {
    let blocks = x_blocks(case);
    for (i, b) in blocks.iter().enumerate() {
        let s = &lx[b.clone()];
        if !s.windows(2).all(|w| w[0] >= w[1]) {
            return false;
        }
        if case.is_inert() && i == 1 && s.last().is_some_and(|&a| a < 0) {
            return false;
        }
    }
    true
}

/// Lambda_r^{++}: inert a_1 >= ... >= a_r >= 0; split (a; b') with both partitions.
pub fn in_lambda_r_pp(case: &CaseDescriptor, lam_r: &[i64]) -> bool {
    let part = |s: &[i64]| s.windows(2).all(|w| w[0] >= w[1]) && s.last().is_none_or(|&a| a >= 0);
    let r = case.r;
    if case.is_split() {
        lam_r.len() == 2 * r && part(&lam_r[..r]) && part(&lam_r[r..])
    } else {
        lam_r.len() == r && part(lam_r)
    }
}

/// Lambda_r^+ (dominant for B_r).
pub fn in_lambda_r_plus(case: &CaseDescriptor, lam_r: &[i64]) -> bool {
    let dec = |s: &[i64]| s.windows(2).all(|w| w[0] >= w[1]);
    let r = case.r;
    if case.is_split() {
        lam_r.len() == 2 * r && dec(&lam_r[..r]) && dec(&lam_r[r..])
    } else {
        lam_r.len() == r && dec(lam_r)
    }
}

/// Embeds lambda_r into Lambda_V: inert (a, 0..); split (a, 0.., -b' reversed).
pub fn embed_lambda_r(case: &CaseDescriptor, lam_r: &[i64]) -> Result<Vec<i64>> {
    let r = case.r;
    let want = case.rank(Group::Gr);
    if lam_r.len() != want {
        return Err(Error::Arity { expected: want, got: lam_r.len() });
    }
    let mut out = vec![0i64; case.n_minus];
    out[..r].copy_from_slice(&lam_r[..r]);
    if case.is_split() {
        for j in 0..r {
            out[case.n - 1 - j] = -lam_r[r + j];
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------- modular characters

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DeltaWhich {
    BV,
    BW,
    BJ,
    BPlus,
    Br,
    PX,
    P,
}

impl std::str::FromStr for DeltaWhich {
    type Err = Error;
    fn from_str(s: &str) -> Result<DeltaWhich> {
        Ok(match s {
            "B_V" => DeltaWhich::BV,
            "B_W" => DeltaWhich::BW,
            "B_J" => DeltaWhich::BJ,
            "B_plus" => DeltaWhich::BPlus,
            "B_r" => DeltaWhich::Br,
            "P_X" => DeltaWhich::PX,
            "P" => DeltaWhich::P,
            _ => return Err(Error::Unsupported(format!("unknown modular character {}", s))),
        })
    }
}

/// The GL-coordinates of a cocharacter of T_V (or T_W) of a space of dimension `dim`.
fn gl_coords(case: &CaseDescriptor, lam: &[i64], dim: usize) -> Vec<i64> {
    if case.is_split() {
        return lam.to_vec();
    }
    let mut k = lam.to_vec();
    if dim % 2 == 1 {
        k.push(0);
    }
    k.extend(lam.iter().rev().map(|a| -a));
    k
}

/// Sum over upper-triangular positions (i, j) selected by `keep` of k_i - k_j.
fn two_rho(k: &[i64], keep: impl Fn(usize, usize) -> bool) -> i64 {
    let mut s = 0;
    for i in 0..k.len() {
        for j in i + 1..k.len() {
            if keep(i, j) {
                s += k[i] - k[j];
            }
        }
    }
    s
}

/// delta(lambda(varpi)) as an exponent of v.
pub fn delta_exponent(case: &CaseDescriptor, which: DeltaWhich, lam: &Cocharacter) -> Result<i64> {
    let (n, m, r) = (case.n, case.m, case.r);
    let need_v = !matches!(which, DeltaWhich::BW | DeltaWhich::BJ);
    let need_w = matches!(which, DeltaWhich::BW | DeltaWhich::BJ | DeltaWhich::BPlus);
    if need_v && lam.lambda_v.len() != case.n_minus {
        return Err(Error::Arity { expected: case.n_minus, got: lam.lambda_v.len() });
    }
    if need_w && lam.lambda_w.len() != case.m_minus {
        return Err(Error::Arity { expected: case.m_minus, got: lam.lambda_w.len() });
    }
    // each q_F^{-1} is v^{-2}
    let kv = || gl_coords(case, &lam.lambda_v, n);
    let kw = || gl_coords(case, &lam.lambda_w, m);
    let bv = || -2 * two_rho(&kv(), |_, _| true);
    let bw = || -2 * two_rho(&kw(), |_, _| true);
    let in_first = |i: usize| i < r;
    let in_last = |i: usize| i >= n - r;
    let block = |i: usize| {
        if in_first(i) {
            0
        } else if in_last(i) {
            2
        } else {
            1
        }
    };
    Ok(match which {
        DeltaWhich::BV => bv(),
        DeltaWhich::BW => bw(),
        DeltaWhich::BJ => {
            let s: i64 = lam.lambda_w.iter().sum();
            bw() - case.qe_exp() as i64 * s
        }
        DeltaWhich::BPlus => -bv() + bw(),
        DeltaWhich::Br => -2 * two_rho(&kv(), |i, j| (in_first(i) && in_first(j)) || (in_last(i) && in_last(j))),
        DeltaWhich::PX => -2 * two_rho(&kv(), |i, j| block(i) < block(j)),
        DeltaWhich::P => -2 * two_rho(&kv(), |i, j| !(block(i) == 1 && block(j) == 1)),
    })
}

pub fn delta_character(case: &CaseDescriptor, which: DeltaWhich, lam: &Cocharacter) -> Result<RatFunc> {
    Ok(vpow(delta_exponent(case, which, lam)? as i32))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::x;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn xs(k: usize) -> Vec<RatFunc> {
        (1..=k).map(|i| RatFunc::var(x(i))).collect()
    }

    fn all_cases() -> Vec<CaseDescriptor> {
        let mut v = Vec::new();
        for n in 0..=6 {
            for m in (0..=n).rev().step_by(2) {
                v.push(build_case(FieldKind::Split, n, m).unwrap());
                v.push(build_case(FieldKind::Inert, n, m).unwrap());
            }
        }
        v
    }

    #[test]
    fn build_case_examples() {
        let c = build_case(FieldKind::Split, 3, 1).unwrap();
        assert_eq!((c.r, c.rprime, c.n_minus, c.m_minus), (1, 2, 3, 1));
        let c = build_case(FieldKind::Inert, 4, 2).unwrap();
        assert_eq!((c.r, c.n_minus, c.n_plus, c.m_minus, c.m_plus, c.kind), (1, 2, 2, 1, 1, CaseKind::InertEven));
        let c = build_case(FieldKind::Inert, 3, 1).unwrap();
        assert_eq!((c.r, c.n_minus, c.n_plus, c.m_minus, c.m_plus, c.kind), (1, 1, 2, 0, 1, CaseKind::InertOdd));
        let e = build_case(FieldKind::Split, 3, 2).unwrap_err();
        assert!(e.to_string().contains("invalid corank"));
        assert!(build_case(FieldKind::Inert, 1, 3).is_err());
    }

    #[test]
    fn weyl_group_sizes() {
        assert_eq!(weyl_elements(&build_case(FieldKind::Split, 3, 1).unwrap(), Group::V).len(), 6);
        assert_eq!(weyl_elements(&build_case(FieldKind::Inert, 4, 2).unwrap(), Group::V).len(), 8);
        assert_eq!(weyl_elements(&build_case(FieldKind::Inert, 3, 1).unwrap(), Group::V).len(), 2);
        assert_eq!(weyl_elements(&build_case(FieldKind::Split, 5, 1).unwrap(), Group::Gr).len(), 4);
        for c in all_cases() {
            for g in [Group::V, Group::W, Group::Gr] {
                let ws = weyl_elements(&c, g);
                assert!(ws[0].is_identity());
                let longest: Vec<_> = ws.iter().filter(|w| w.is_longest).collect();
                assert_eq!(longest.len(), 1);
                let w0 = longest[0];
                assert!(w0.compose(w0).is_identity());
                let npos = positive_roots(&c, g).len();
                assert_eq!(w0.length(&c), npos);
                let mut seen = std::collections::HashSet::new();
                for w in &ws {
                    assert!(seen.insert((w.perm.clone(), w.signs.clone())));
                }
            }
        }
    }

    #[test]
    fn weyl_act_examples() {
        let a = xs(2);
        let c = build_case(FieldKind::Split, 2, 0).unwrap();
        let ws = weyl_elements(&c, Group::V);
        assert_eq!(weyl_act(&ws[1], &a).unwrap(), vec![a[1].clone(), a[0].clone()]);
        assert_eq!(weyl_act(&ws[0], &a).unwrap(), a);
        let c = build_case(FieldKind::Inert, 2, 0).unwrap();
        let w0 = weyl_elements(&c, Group::V).into_iter().find(|w| w.is_longest).unwrap();
        assert_eq!(weyl_act(&w0, &xs(1)).unwrap(), vec![RatFunc::var(x(1)).inv()]);
        assert!(weyl_act(&w0, &xs(2)).is_err());
    }

    #[test]
    fn action_is_a_group_action() {
        for c in all_cases().into_iter().filter(|c| c.n <= 5) {
            for g in [Group::V, Group::W] {
                let ws = weyl_elements(&c, g);
                let k = c.rank(g);
                let a = xs(k);
                for w1 in &ws {
                    assert!(w1.compose(&w1.inverse()).is_identity());
                    for w2 in ws.iter().take(6) {
                        let lhs = weyl_act(&w1.compose(w2), &a).unwrap();
                        let rhs = weyl_act(w1, &weyl_act(w2, &a).unwrap()).unwrap();
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn inert_w0_inverts_everything() {
        for n in 2..=7 {
            let c = build_case(FieldKind::Inert, n, n % 2).unwrap();
            let w0 = weyl_elements(&c, Group::V).into_iter().find(|w| w.is_longest).unwrap();
            assert!(w0.signs.iter().all(|&s| s == -1));
            let a = xs(c.n_minus);
            for (i, b) in weyl_act(&w0, &a).unwrap().iter().enumerate() {
                assert_eq!(b, &a[w0.perm[i]].inv());
            }
        }
    }

    #[test]
    fn pairing_examples() {
        let a = xs(2);
        let c = build_case(FieldKind::Split, 2, 0).unwrap();
        let r = Root::from_form(&c, Group::V, RootForm::Diff(1, 2)).unwrap();
        assert_eq!(coroot_pairing(&c, &a, &r).unwrap(), a[0].div(&a[1]));
        assert!(Root::from_form(&c, Group::V, RootForm::Long(1)).is_err());
        let c = build_case(FieldKind::Inert, 4, 0).unwrap();
        let r = Root::from_form(&c, Group::V, RootForm::Long(1)).unwrap();
        assert_eq!(coroot_pairing(&c, &a, &r).unwrap(), a[0]);
        let r = Root::from_form(&c, Group::V, RootForm::Sum(1, 2)).unwrap();
        assert_eq!(coroot_pairing(&c, &a, &r).unwrap(), a[0].mul(&a[1]));
        assert!(Root::from_form(&c, Group::V, RootForm::Short(1)).is_err());
        let c = build_case(FieldKind::Inert, 5, 1).unwrap();
        let r = Root::from_form(&c, Group::V, RootForm::Short(1)).unwrap();
        assert_eq!(coroot_pairing(&c, &a, &r).unwrap(), a[0].pow(2));
        let bad = Root { coeffs: vec![2, 0], group: Group::V };
        assert!(coroot_pairing(&c, &a, &bad).is_err());
    }

    #[test]
    fn root_counts() {
        let c = build_case(FieldKind::Split, 4, 0).unwrap();
        assert_eq!(positive_roots(&c, Group::V).len(), 6);
        let c = build_case(FieldKind::Inert, 6, 0).unwrap();
        assert_eq!(positive_roots(&c, Group::V).len(), 9);
        assert_eq!(simple_roots(&c, Group::V).len(), 3);
        let c = build_case(FieldKind::Split, 5, 1).unwrap();
        assert_eq!(positive_roots(&c, Group::Gr).len(), 2);
        assert_eq!(simple_roots(&c, Group::Gr).len(), 2);
    }

    #[test]
    fn simple_reflections_match_simple_roots() {
        for c in all_cases().into_iter().filter(|c| c.n <= 6) {
            for g in [Group::V, Group::W, Group::Gr] {
                for (i, a) in simple_roots(&c, g).iter().enumerate() {
                    let s = simple_reflection(&c, g, i + 1).unwrap();
                    assert_eq!(s.act_root(a), a.neg(), "{} {:?} {}", c, g, i);
                    assert_eq!(s.length(&c), 1);
                }
            }
        }
    }

    #[test]
    fn pairing_equivariance() {
        for c in all_cases().into_iter().filter(|c| c.n <= 6) {
            for g in [Group::V, Group::W] {
                let k = c.rank(g);
                if k > 3 {
                    continue;
                }
                let a = xs(k);
                for w in weyl_elements(&c, g) {
                    let wa = weyl_act(&w, &a).unwrap();
                    for al in positive_roots(&c, g) {
                        let lhs = coroot_pairing(&c, &wa, &al).unwrap();
                        let rhs = coroot_pairing(&c, &a, &w.inverse().act_root(&al)).unwrap();
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn dominance_examples() {
        let c = build_case(FieldKind::Split, 2, 0).unwrap();
        assert!(dominance_leq(&c, &[1, 1], &[2, 0]));
        assert!(!dominance_leq(&c, &[2, 0], &[1, 1]));
        assert!(dominance_leq(&c, &[3, -1], &[3, -1]));
        let c = build_case(FieldKind::Inert, 4, 0).unwrap();
        assert!(dominance_leq(&c, &[1, 1], &[2, 0]));
        assert!(dominance_leq(&c, &[0, 0], &[1, 0]));
        let c = build_case(FieldKind::Inert, 5, 1).unwrap();
        assert!(!dominance_leq(&c, &[0, 0], &[1, 0]));
        assert!(dominance_leq(&c, &[0, 0], &[2, 0]));
    }

    #[test]
    fn project_examples() {
        let c = build_case(FieldKind::Split, 3, 1).unwrap();
        let l = Cocharacter::new(vec![2, 1, 0], vec![1]);
        assert_eq!(project_lambda_x(&c, &l).unwrap(), vec![2, 0, 0]);
        let l = Cocharacter::new(vec![2, 1, 0], vec![0]);
        assert_eq!(project_lambda_x(&c, &l).unwrap(), vec![2, 1, 0]);
        let c = build_case(FieldKind::Split, 2, 2).unwrap();
        let l = Cocharacter::new(vec![1, 0], vec![0, -1]);
        assert_eq!(project_lambda_x(&c, &l).unwrap(), vec![1, 1]);
        let l = Cocharacter::new(vec![0, 1], vec![0, 0]);
        assert!(project_lambda_x(&c, &l).is_err());
    }

    #[test]
    fn delta_examples() {
        let c = build_case(FieldKind::Split, 1, 1).unwrap();
        let l = Cocharacter::new(vec![0], vec![1]);
        assert_eq!(delta_character(&c, DeltaWhich::BJ, &l).unwrap(), vpow(-2));
        let c = build_case(FieldKind::Split, 2, 0).unwrap();
        let l = Cocharacter::new(vec![1, 0], vec![]);
        assert_eq!(delta_character(&c, DeltaWhich::BV, &l).unwrap(), vpow(-2));
        let c = build_case(FieldKind::Inert, 4, 2).unwrap();
        let l = Cocharacter::zero(&c);
        for w in [
            DeltaWhich::BV,
            DeltaWhich::BW,
            DeltaWhich::BJ,
            DeltaWhich::BPlus,
            DeltaWhich::Br,
            DeltaWhich::PX,
            DeltaWhich::P,
        ] {
            assert!(delta_character(&c, w, &l).unwrap().is_one());
        }
        // U(2): unipotent radical is one F-line with weight N(t_1)
        let c = build_case(FieldKind::Inert, 2, 0).unwrap();
        assert_eq!(delta_exponent(&c, DeltaWhich::BV, &Cocharacter::new(vec![1], vec![])).unwrap(), -4);
        // U(3): an E-line (weight t_1/t_0) and an F-line (weight N(t_1))
        let c = build_case(FieldKind::Inert, 3, 1).unwrap();
        assert_eq!(delta_exponent(&c, DeltaWhich::BV, &Cocharacter::new(vec![1], vec![])).unwrap(), -8);
        assert!("bogus".parse::<DeltaWhich>().is_err());
    }

    #[test]
    fn delta_b_plus_is_opposite_times_bw() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for c in all_cases().into_iter().filter(|c| c.n <= 6) {
            let wv = weyl_elements(&c, Group::V).into_iter().find(|w| w.is_longest).unwrap();
            for _ in 0..50 {
                let lv: Vec<i64> = (0..c.n_minus).map(|_| rng.gen_range(-3..=3)).collect();
                let lw: Vec<i64> = (0..c.m_minus).map(|_| rng.gen_range(-3..=3)).collect();
                let l = Cocharacter::new(lv.clone(), lw.clone());
                let w0lv: Vec<i64> =
                    wv.act_vec(&lv.iter().map(|&a| a as i32).collect::<Vec<_>>()).iter().map(|&a| a as i64).collect();
                let lhs = delta_exponent(&c, DeltaWhich::BPlus, &l).unwrap();
                let rhs = delta_exponent(&c, DeltaWhich::BV, &Cocharacter::new(w0lv, vec![])).unwrap()
                    + delta_exponent(&c, DeltaWhich::BW, &Cocharacter::new(vec![], lw)).unwrap();
                assert_eq!(lhs, rhs, "{}", c);
            }
        }
    }

    #[test]
    fn delta_identity_on_lambda_r() {
        for c in all_cases().into_iter().filter(|c| c.r >= 1 && c.n <= 6) {
            let k = c.rank(Group::Gr);
            let grid = (0..k).map(|_| -3i64..=3).multi_cartesian_product();
            for lr in grid {
                let lv = embed_lambda_r(&c, &lr).unwrap();
                let l = Cocharacter::new(lv, vec![0; c.m_minus]);
                let e = |w| delta_exponent(&c, w, &l).unwrap();
                assert_eq!(e(DeltaWhich::BV) + e(DeltaWhich::Br) + e(DeltaWhich::PX) - 2 * e(DeltaWhich::P), 0);
            }
        }
    }

    #[test]
    fn cones() {
        let c = build_case(FieldKind::Inert, 5, 1).unwrap();
        assert!(in_lambda_minus(&c, &Cocharacter::new(vec![2, 0], vec![])).is_ok());
        assert!(in_lambda_minus(&c, &Cocharacter::new(vec![2, -1], vec![])).is_err());
        assert!(in_lambda_r_pp(&c, &[2, 1]));
        assert!(!in_lambda_r_pp(&c, &[2, -1]));
        let c = build_case(FieldKind::Split, 3, 1).unwrap();
        assert_eq!(embed_lambda_r(&c, &[2, 1]).unwrap(), vec![2, 0, -1]);
        assert!(in_lambda_r_pp(&c, &[2, 1]));
    }
}
