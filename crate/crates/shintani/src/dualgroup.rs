//! Dual-group data as explicit matrices: Satake representatives, the star
//! involution, the twisted tensor product and the representations built on
//! it, quotient determinants D and the characters ch_lambda.

use crate::algebra::{det_one_minus, RFMatrix, RatFunc, XS};
use crate::error::{Error, Result};
use crate::lfactors::CharacterTuple;
use crate::rootdata::{weyl_act, weyl_elements, CaseDescriptor, Group, WeylElement};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Block {
    V,
    W,
    Gr,
    GPair,
}

/// A diagonal representative t.Fr (or t alone when `frobenius` is false).
#[derive(Clone, Debug, PartialEq)]
pub struct SatakeParam {
    pub case: CaseDescriptor,
    pub block: Block,
    pub diag: Vec<RatFunc>,
    pub frobenius: bool,
}

/// How the inert representative fills the slots not carried by chi.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Completion {
    /// diag(chi_1..chi_k, 1, ..., 1)
    Ones,
    /// diag(chi_1..chi_k, [1], chi_k..chi_1)
    Mirrored,
}

pub const SATAKE_COMPLETION: Completion = Completion::Ones;

pub fn block_dim(case: &CaseDescriptor, block: Block) -> usize {
    match block {
        Block::V => case.n,
        Block::W => case.m,
        Block::Gr => 2 * case.r,
        Block::GPair => case.n + case.m,
    }
}

/// An element (g1, g2) of ^L G_k, with or without the Frobenius.
#[derive(Clone, Debug, PartialEq)]
pub struct LElem {
    pub g1: RFMatrix,
    pub g2: RFMatrix,
    pub frob: bool,
}

impl LElem {
    pub fn new(g1: RFMatrix, g2: RFMatrix, frob: bool) -> LElem {
        LElem { g1, g2, frob }
    }

    pub fn diag(d1: &[RatFunc], d2: &[RatFunc], frob: bool) -> LElem {
        LElem { g1: RFMatrix::diag(d1), g2: RFMatrix::diag(d2), frob }
    }

    pub fn k(&self) -> usize {
        self.g1.rows
    }

    /// (g1, g2)^star = (g2^star, g1^star)
    pub fn star(&self) -> Result<LElem> {
        Ok(LElem { g1: star(&self.g2)?, g2: star(&self.g1)?, frob: self.frob })
    }

    /// Conjugate by c: (g2, g1).
    pub fn conj_c(&self) -> LElem {
        LElem { g1: self.g2.clone(), g2: self.g1.clone(), frob: self.frob }
    }

    /// Componentwise product of identity-component elements.
    pub fn mul(&self, o: &LElem) -> Result<LElem> {
        Ok(LElem { g1: self.g1.mul(&o.g1)?, g2: self.g2.mul(&o.g2)?, frob: self.frob || o.frob })
    }

    pub fn scale(&self, c: &RatFunc) -> LElem {
        LElem { g1: self.g1.scale(c), g2: self.g2.scale(c), frob: self.frob }
    }
}

impl SatakeParam {
    pub fn new(case: &CaseDescriptor, block: Block, diag: Vec<RatFunc>) -> Result<SatakeParam> {
        let want = block_dim(case, block);
        if diag.len() != want {
            return Err(Error::Arity { expected: want, got: diag.len() });
        }
        Ok(SatakeParam { case: *case, block, diag, frobenius: true })
    }

    pub fn without_frobenius(mut self) -> SatakeParam {
        self.frobenius = false;
        self
    }

    pub fn matrix(&self) -> RFMatrix {
        RFMatrix::diag(&self.diag)
    }

    /// (S_V, S_W) from a pair parameter.
    pub fn split_pair(&self) -> Result<(SatakeParam, SatakeParam)> {
        if self.block != Block::GPair {
            return Err(Error::Unsupported(format!("{:?} is not a pair", self.block)));
        }
        let n = self.case.n;
        let mk =
            |block, d: &[RatFunc]| SatakeParam { case: self.case, block, diag: d.to_vec(), frobenius: self.frobenius };
        Ok((mk(Block::V, &self.diag[..n]), mk(Block::W, &self.diag[n..])))
    }

    /// The ^L G_r element (g1, g2) of a G_r parameter.
    pub fn gk(&self) -> Result<LElem> {
        if self.block != Block::Gr {
            return Err(Error::Unsupported(format!("{:?} is not a G_r parameter", self.block)));
        }
        let r = self.case.r;
        Ok(LElem::diag(&self.diag[..r], &self.diag[r..], self.frobenius))
    }

    /// Base change image (t, t^star) of a unitary parameter.
    pub fn bc(&self) -> Result<LElem> {
        match self.block {
            Block::V | Block::W => bc(&self.matrix(), self.frobenius),
            _ => Err(Error::Unsupported(format!("base change of {:?}", self.block))),
        }
    }
}

fn unitary_diag(case: &CaseDescriptor, k: usize, chars: &[RatFunc], completion: Completion) -> Vec<RatFunc> {
    if case.is_split() {
        return chars.to_vec();
    }
    let mut d = chars.to_vec();
    match completion {
        Completion::Ones => d.resize(k, RatFunc::one()),
        Completion::Mirrored => {
            if k % 2 == 1 {
                d.push(RatFunc::one());
            }
            d.extend(chars.iter().rev().cloned());
        }
    }
    d
}

/// Satake representative of a unitary group of size n (V) or m (W) from its character coordinates.
pub fn satake_unitary(case: &CaseDescriptor, block: Block, chars: &[RatFunc]) -> Result<SatakeParam> {
    satake_unitary_with(case, block, chars, SATAKE_COMPLETION)
}

pub fn satake_unitary_with(
    case: &CaseDescriptor,
    block: Block,
    chars: &[RatFunc],
    completion: Completion,
) -> Result<SatakeParam> {
    let (k, g) = match block {
        Block::V => (case.n, Group::V),
        Block::W => (case.m, Group::W),
        _ => return Err(Error::Unsupported(format!("{:?} is not unitary", block))),
    };
    let want = case.rank(g);
    if chars.len() != want {
        return Err(Error::Arity { expected: want, got: chars.len() });
    }
    SatakeParam::new(case, block, unitary_diag(case, k, chars, completion))
}

/// (S_V, S_W) for the characters (chi, eta).
pub fn satake_from_characters(case: &CaseDescriptor, chars: &CharacterTuple) -> Result<(SatakeParam, SatakeParam)> {
    satake_with(case, chars, SATAKE_COMPLETION)
}

pub fn satake_with(
    case: &CaseDescriptor,
    chars: &CharacterTuple,
    completion: Completion,
) -> Result<(SatakeParam, SatakeParam)> {
    Ok((
        satake_unitary_with(case, Block::V, &chars.chi, completion)?,
        satake_unitary_with(case, Block::W, &chars.eta, completion)?,
    ))
}

/// J_k with J[i][k-1-i] = (-1)^i.
pub fn j_matrix(k: usize) -> RFMatrix {
    let mut m = RFMatrix::zeros(k, k);
    for i in 0..k {
        m.set(i, k - 1 - i, RatFunc::int(if i % 2 == 0 { 1 } else { -1 }));
    }
    m
}

/// g^star = J ^t g^{-1} J^{-1}
pub fn star(g: &RFMatrix) -> Result<RFMatrix> {
    if !g.is_square() {
        return Err(Error::Arity { expected: g.rows, got: g.cols });
    }
    let k = g.rows;
    if g.is_diagonal() {
        let mut d = Vec::with_capacity(k);
        for i in 0..k {
            d.push(g.get(k - 1 - i, k - 1 - i).checked_inv()?);
        }
        return Ok(RFMatrix::diag(&d));
    }
    let j = j_matrix(k);
    let jinv = j.monomial_inverse().expect("J is monomial");
    Ok(j.mul(&g.transpose().inverse()?)?.mul(&jinv)?)
}

pub fn bc(g: &RFMatrix, frob: bool) -> Result<LElem> {
    Ok(LElem { g1: g.clone(), g2: star(g)?, frob })
}

/// The mu-bar twist: (u^{-1} g1, u g2) split, (g1, -g2) inert.
pub fn mubar(case: &CaseDescriptor, e: &LElem, mu_unit: &RatFunc) -> LElem {
    if case.is_split() {
        LElem { g1: e.g1.scale(&mu_unit.inv()), g2: e.g2.scale(mu_unit), frob: e.frob }
    } else {
        LElem { g1: e.g1.clone(), g2: e.g2.scale(&RatFunc::int(-1)), frob: e.frob }
    }
}

/// a (x)^I b: block-diagonal, or the block swap when the inert Frobenius is present.
pub fn tensor_i(case: &CaseDescriptor, a: &LElem, b: &LElem) -> RFMatrix {
    let k1 = a.g1.kron(&b.g1);
    let k2 = a.g2.kron(&b.g2);
    if case.is_inert() && (a.frob || b.frob) {
        let z = RFMatrix::zeros(k1.rows, k1.cols);
        RFMatrix::block2(&z, &k1, &k2, &z)
    } else {
        RFMatrix::direct_sum(&[&k1, &k2])
    }
}

/// a (x)^I_mubar b = a (x)^I (mubar b) when `mu_unit` is given.
pub fn tensor_i_mu(case: &CaseDescriptor, a: &LElem, b: &LElem, mu_unit: Option<&RatFunc>) -> RepMatrix {
    let mat = match mu_unit {
        Some(u) => tensor_i(case, a, &mubar(case, b, u)),
        None => tensor_i(case, a, b),
    };
    RepMatrix::new(mat, if mu_unit.is_some() { "tensor_I_mu" } else { "tensor_I" })
}

#[derive(Clone, Debug, PartialEq)]
pub struct RepMatrix {
    pub dim: usize,
    pub mat: RFMatrix,
    pub label: String,
}

impl RepMatrix {
    pub fn new(mat: RFMatrix, label: &str) -> RepMatrix {
        RepMatrix { dim: mat.rows, mat, label: label.to_string() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RepWhich {
    RMu,
    RMinus,
    RTildeMinus,
    YMu,
    /// As^{sign}
    Asai(i32),
    Ad,
    BC,
}

/// R_mubar(S) = BC(S_V) (x)^I_mubar BC(S_W)
pub fn r_mu(sv: &SatakeParam, sw: &SatakeParam, mu_unit: &RatFunc) -> Result<RepMatrix> {
    let m = tensor_i_mu(&sv.case, &sv.bc()?, &sw.bc()?, Some(mu_unit));
    Ok(RepMatrix::new(m.mat, "R_mu"))
}

/// Indices (copy, i, j) of C^k (x) C^l (+) C^k (x) C^l with i + j > threshold (1-based).
fn upper_pairs(k: usize, l: usize, threshold: usize) -> Vec<usize> {
    let mut keep = Vec::new();
    for c in 0..2 {
        for i in 0..k {
            for j in 0..l {
                if (i + 1) + (j + 1) > threshold {
                    keep.push(c * k * l + i * l + j);
                }
            }
        }
    }
    keep
}

fn restrict(m: &RFMatrix, idx: &[usize], label: &str) -> RepMatrix {
    RepMatrix::new(m.submatrix(idx, idx), label)
}

/// Basis indices spanning V_-.
pub fn v_minus_indices(case: &CaseDescriptor) -> Vec<usize> {
    upper_pairs(case.n, case.m, case.rprime + 1)
}

/// R_-(S): restriction of R_mubar(S) to V_-.
pub fn r_minus(sv: &SatakeParam, sw: &SatakeParam, mu_unit: &RatFunc) -> Result<RepMatrix> {
    let full = r_mu(sv, sw, mu_unit)?;
    Ok(restrict(&full.mat, &v_minus_indices(&sv.case), "R_minus"))
}

/// The same construction on ^L(U(W') x U(W)) with dim W' = dim W, restricted to i + j > m + 1.
pub fn r_tilde_minus(a: &SatakeParam, b: &SatakeParam, mu_unit: &RatFunc) -> Result<RepMatrix> {
    let case = &a.case;
    let m = case.m;
    if a.diag.len() != m || b.diag.len() != m {
        return Err(Error::Arity { expected: m, got: a.diag.len() });
    }
    let full = tensor_i_mu(case, &bc(&a.matrix(), a.frobenius)?, &bc(&b.matrix(), b.frobenius)?, Some(mu_unit));
    Ok(restrict(&full.mat, &upper_pairs(m, m, m + 1), "R_tilde_minus"))
}

/// Basis of the Lagrangian Y = R(w_{0,V}) Y_- (split case only).
pub fn y_indices(case: &CaseDescriptor) -> Result<Vec<usize>> {
    if case.is_inert() {
        return Err(Error::NoLagrangian);
    }
    let (n, m, r) = (case.n, case.m, case.r);
    let mut y_minus = v_minus_indices(case);
    for j in 1..=m {
        y_minus.push((j + r - 1) * m + (m - j));
    }
    let mut p = RFMatrix::zeros(n, n);
    for i in 0..n {
        p.set(n - 1 - i, i, RatFunc::one());
    }
    let w0 = bc(&p, false)?;
    let id = LElem::new(RFMatrix::identity(m), RFMatrix::identity(m), false);
    let rw = tensor_i(case, &w0, &id);
    let mut out = Vec::new();
    for &e in &y_minus {
        let img = (0..rw.rows).find(|&row| !rw.get(row, e).is_zero()).expect("invertible");
        out.push(img);
    }
    out.sort_unstable();
    Ok(out)
}

/// Y_mubar(S): restriction of R_mubar(S) to the Lagrangian Y.
pub fn y_mu(sv: &SatakeParam, sw: &SatakeParam, mu_unit: &RatFunc) -> Result<RepMatrix> {
    let idx = y_indices(&sv.case)?;
    let full = r_mu(sv, sw, mu_unit)?;
    Ok(restrict(&full.mat, &idx, "Y_mu"))
}

/// The symplectic form on C^n (x) C^m (+) C^n (x) C^m.
pub fn symplectic_form(n: usize, m: usize) -> RFMatrix {
    let jn = j_matrix(n).monomial_inverse().expect("monomial");
    let jm = j_matrix(m).monomial_inverse().expect("monomial");
    let k = jn.kron(&jm);
    let z = RFMatrix::zeros(k.rows, k.cols);
    RFMatrix::block2(&z, &k, &k.transpose().scale(&RatFunc::int(-1)), &z)
}

/// As^{sign}(S_r) = g1 (x) g2, composed with sign * swap under the inert Frobenius.
pub fn asai(case: &CaseDescriptor, sign: i32, s: &LElem) -> RepMatrix {
    let k = s.k();
    let m = s.g1.kron(&s.g2);
    if case.is_split() || !s.frob {
        return RepMatrix::new(m, "Asai");
    }
    let mut sw = RFMatrix::zeros(k * k, k * k);
    for a in 0..k {
        for b in 0..k {
            sw.set(b * k + a, a * k + b, RatFunc::int(sign as i64));
        }
    }
    RepMatrix::new(m.mul(&sw).expect("square"), "Asai")
}

/// Ad(t.Fr) E_ij = c E_ab for diagonal t.
fn ad_unitary_image(case: &CaseDescriptor, t: &RFMatrix, frob: bool, i: usize, j: usize) -> (usize, usize, RatFunc) {
    let k = t.rows;
    let (a, b, sign) = if case.is_inert() && frob {
        (k - 1 - j, k - 1 - i, if (i + j).is_multiple_of(2) { -1 } else { 1 })
    } else {
        (i, j, 1)
    };
    let c = t.get(a, a).div(t.get(b, b)).scale(&crate::algebra::Q::int(sign));
    (a, b, c)
}

fn ad_on_basis(case: &CaseDescriptor, t: &RFMatrix, frob: bool, basis: &[(usize, usize)]) -> Result<RFMatrix> {
    let n = basis.len();
    let mut m = RFMatrix::zeros(n, n);
    if t.is_diagonal() {
        for (col, &(i, j)) in basis.iter().enumerate() {
            let (a, b, c) = ad_unitary_image(case, t, frob, i, j);
            let row = basis
                .iter()
                .position(|&e| e == (a, b))
                .ok_or_else(|| Error::Unsupported("basis not stable under Ad".into()))?;
            m.set(row, col, c);
        }
        return Ok(m);
    }
    let k = t.rows;
    let tinv = t.inverse()?;
    let j = j_matrix(k);
    let jinv = j.monomial_inverse().expect("monomial");
    for (col, &(i, jj)) in basis.iter().enumerate() {
        let mut x = RFMatrix::zeros(k, k);
        x.set(i, jj, RatFunc::one());
        if case.is_inert() && frob {
            x = j.mul(&x.transpose())?.mul(&jinv)?.scale(&RatFunc::int(-1));
        }
        let y = t.mul(&x)?.mul(&tinv)?;
        for a in 0..k {
            for b in 0..k {
                let e = y.get(a, b);
                if e.is_zero() {
                    continue;
                }
                let row = basis
                    .iter()
                    .position(|&p| p == (a, b))
                    .ok_or_else(|| Error::Unsupported("basis not stable under Ad".into()))?;
                m.set(row, col, e.clone());
            }
        }
    }
    Ok(m)
}

/// Ad on the full gl_k for a unitary representative.
pub fn ad_unitary(case: &CaseDescriptor, t: &RFMatrix, frob: bool) -> Result<RepMatrix> {
    let k = t.rows;
    let basis: Vec<(usize, usize)> = (0..k).flat_map(|i| (0..k).map(move |j| (i, j))).collect();
    Ok(RepMatrix::new(ad_on_basis(case, t, frob, &basis)?, "Ad"))
}

/// Ad on gl_r (+) gl_r for an element of ^L G_r; the inert Frobenius swaps the summands.
pub fn ad_gk(case: &CaseDescriptor, s: &LElem) -> Result<RepMatrix> {
    let basis: Vec<(usize, usize, usize)> = gk_basis(s.k(), |_, _| true);
    Ok(RepMatrix::new(ad_gk_on(case, s, &basis)?, "Ad"))
}

fn gk_basis<F: Fn(usize, usize) -> bool>(r: usize, keep: F) -> Vec<(usize, usize, usize)> {
    let mut v = Vec::new();
    for c in 0..2 {
        for i in 0..r {
            for j in 0..r {
                if keep(i, j) {
                    v.push((c, i, j));
                }
            }
        }
    }
    v
}

fn ad_gk_on(case: &CaseDescriptor, s: &LElem, basis: &[(usize, usize, usize)]) -> Result<RFMatrix> {
    let r = s.k();
    let gs = [&s.g1, &s.g2];
    let invs = [s.g1.inverse()?, s.g2.inverse()?];
    let n = basis.len();
    let mut m = RFMatrix::zeros(n, n);
    for (col, &(c, i, j)) in basis.iter().enumerate() {
        let tgt = if case.is_inert() && s.frob { 1 - c } else { c };
        let mut x = RFMatrix::zeros(r, r);
        x.set(i, j, RatFunc::one());
        let y = gs[tgt].mul(&x)?.mul(&invs[tgt])?;
        for a in 0..r {
            for b in 0..r {
                let e = y.get(a, b);
                if e.is_zero() {
                    continue;
                }
                let row = basis
                    .iter()
                    .position(|&p| p == (tgt, a, b))
                    .ok_or_else(|| Error::Unsupported("basis not stable under Ad".into()))?;
                m.set(row, col, e.clone());
            }
        }
    }
    Ok(m)
}

/// Ad of any parameter block: V, W, G_r, or the direct sum for the pair.
pub fn ad(p: &SatakeParam) -> Result<RepMatrix> {
    match p.block {
        Block::V | Block::W => ad_unitary(&p.case, &p.matrix(), p.frobenius),
        Block::Gr => ad_gk(&p.case, &p.gk()?),
        Block::GPair => {
            let (a, b) = p.split_pair()?;
            let (ma, mb) = (ad(&a)?, ad(&b)?);
            Ok(RepMatrix::new(RFMatrix::direct_sum(&[&ma.mat, &mb.mat]), "Ad"))
        }
    }
}

/// Representation matrices by name. Inputs: (S_V, S_W) or a pair for R/Y,
/// two W-sized parameters for R_tilde, S_r for Asai, any block for Ad and
/// a unitary parameter for BC.
pub fn build_rep(which: RepWhich, params: &[&SatakeParam], mu_unit: &RatFunc) -> Result<RepMatrix> {
    let pair = || -> Result<(SatakeParam, SatakeParam)> {
        match params {
            [p] => p.split_pair(),
            [a, b] => Ok(((*a).clone(), (*b).clone())),
            _ => Err(Error::Arity { expected: 2, got: params.len() }),
        }
    };
    let single = || -> Result<&SatakeParam> {
        match params {
            [p] => Ok(*p),
            _ => Err(Error::Arity { expected: 1, got: params.len() }),
        }
    };
    match which {
        RepWhich::RMu => {
            let (a, b) = pair()?;
            r_mu(&a, &b, mu_unit)
        }
        RepWhich::RMinus => {
            let (a, b) = pair()?;
            r_minus(&a, &b, mu_unit)
        }
        RepWhich::RTildeMinus => match params {
            [a, b] => r_tilde_minus(a, b, mu_unit),
            _ => Err(Error::Arity { expected: 2, got: params.len() }),
        },
        RepWhich::YMu => {
            let (a, b) = pair()?;
            y_mu(&a, &b, mu_unit)
        }
        RepWhich::Asai(sign) => {
            let p = single()?;
            Ok(asai(&p.case, sign, &p.gk()?))
        }
        RepWhich::Ad => ad(single()?),
        RepWhich::BC => {
            let p = single()?;
            let e = p.bc()?;
            let one = LElem::diag(&[RatFunc::one()], &[RatFunc::one()], false);
            Ok(RepMatrix::new(tensor_i(&p.case, &e, &one), "BC"))
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Parabolic {
    B,
    BPlus,
    /// block-lower with blocks (r, m, r); V only
    PX,
    /// the whole group: empty quotient
    G,
}

fn unitary_complement(case: &CaseDescriptor, block: Block, k: usize, q: Parabolic) -> Result<Vec<(usize, usize)>> {
    let (r, m) = (case.r, case.m);
    let blk = |i: usize| {
        if i < r {
            0
        } else if i < r + m {
            1
        } else {
            2
        }
    };
    let keep = |i: usize, j: usize| -> Result<bool> {
        Ok(match q {
            Parabolic::B => i > j,
            Parabolic::BPlus => i < j,
            Parabolic::G => false,
            Parabolic::PX => {
                if block != Block::V {
                    return Err(Error::Unsupported("P(X) lives in U(V)".into()));
                }
                blk(i) > blk(j)
            }
        })
    };
    let mut v = Vec::new();
    for i in 0..k {
        for j in 0..k {
            if keep(i, j)? {
                v.push((i, j));
            }
        }
    }
    Ok(v)
}

/// det(1 - Ad(S)) on Lie(G^)/Lie(Q^).
pub fn d_quotient(p: &SatakeParam, q: Parabolic) -> Result<RatFunc> {
    let one = RatFunc::one();
    match p.block {
        Block::V | Block::W => {
            let t = p.matrix();
            let basis = unitary_complement(&p.case, p.block, t.rows, q)?;
            let m = ad_on_basis(&p.case, &t, p.frobenius, &basis)?;
            Ok(det_one_minus(&one, &m)?)
        }
        Block::Gr => {
            let keep = match q {
                Parabolic::B => |i: usize, j: usize| i > j,
                Parabolic::BPlus => |i: usize, j: usize| i < j,
                Parabolic::G => |_: usize, _: usize| false,
                Parabolic::PX => return Err(Error::Unsupported("P(X) lives in U(V)".into())),
            };
            let s = p.gk()?;
            let basis = gk_basis(s.k(), keep);
            let m = ad_gk_on(&p.case, &s, &basis)?;
            Ok(det_one_minus(&one, &m)?)
        }
        Block::GPair => {
            let (a, b) = p.split_pair()?;
            let qw = if q == Parabolic::PX { Parabolic::B } else { q };
            Ok(d_quotient(&a, q)?.mul(&d_quotient(&b, qw)?))
        }
    }
}

/// w applied to a G_r parameter: within halves when split, simultaneously on both factors when inert.
pub fn weyl_act_gr(w: &WeylElement, p: &SatakeParam) -> Result<SatakeParam> {
    let r = p.case.r;
    let diag = if p.case.is_split() {
        weyl_act(w, &p.diag)?
    } else {
        let mut d = weyl_act(w, &p.diag[..r])?;
        d.extend(weyl_act(w, &p.diag[r..])?);
        d
    };
    Ok(SatakeParam { diag, ..p.clone() })
}

/// chi_lambda(S) for a diagonal G_r parameter.
fn chi_lambda(p: &SatakeParam, lam: &[i64]) -> RatFunc {
    let r = p.case.r;
    let mut acc = RatFunc::one();
    if p.case.is_split() {
        for (x, &k) in p.diag.iter().zip(lam) {
            acc = acc.mul(&x.pow(k as i32));
        }
    } else {
        for i in 0..r {
            acc = acc.mul(&p.diag[i].mul(&p.diag[r + i]).pow(lam[i] as i32));
        }
    }
    acc
}

/// ch_lambda(S_r) := sum over W_{G_r} of chi_lambda(wS)/D(wS).
pub fn ch_lambda(p: &SatakeParam, lam: &[i64]) -> Result<RatFunc> {
    if p.block != Block::Gr {
        return Err(Error::Unsupported(format!("ch_lambda on {:?}", p.block)));
    }
    let case = &p.case;
    if !crate::rootdata::in_lambda_r_plus(case, lam) {
        return Err(Error::NotDominant(format!("{:?}", lam)));
    }
    let mut terms = Vec::new();
    for w in weyl_elements(case, Group::Gr) {
        let wp = weyl_act_gr(&w, p)?;
        terms.push(chi_lambda(&wp, lam).div(&d_quotient(&wp, Parabolic::B)?));
    }
    Ok(RatFunc::sum(terms))
}

/// det(1 - X rep), X standing for q^{-s}.
pub fn l_factor_from_rep(rep: &RepMatrix) -> Result<RatFunc> {
    Ok(det_one_minus(&RatFunc::var(XS), &rep.mat)?)
}

/// (S_V^{(r)}, S_V^{(m)}): the G_r block (t[..r], star(t[n-r..])) and the middle U(m) block.
pub fn blocks_of(sv: &SatakeParam) -> Result<(SatakeParam, SatakeParam)> {
    let case = &sv.case;
    let (n, m, r) = (case.n, case.m, case.r);
    if sv.block != Block::V {
        return Err(Error::Unsupported("blocks of a non-V parameter".into()));
    }
    let tail = star(&RFMatrix::diag(&sv.diag[n - r..]))?;
    let mut d: Vec<RatFunc> = sv.diag[..r].to_vec();
    d.extend((0..r).map(|i| tail.get(i, i).clone()));
    let gr = SatakeParam { case: *case, block: Block::Gr, diag: d, frobenius: sv.frobenius };
    let mid = SatakeParam { case: *case, block: Block::W, diag: sv.diag[r..r + m].to_vec(), frobenius: sv.frobenius };
    Ok((gr, mid))
}

/// The parameter of I_{P(X)}(tau x sigma_W) inside ^L U(V): diag(x, t_W, star(y)) for S_r = (x, y).
pub fn sigma_param(sw: &SatakeParam, sr: &SatakeParam) -> Result<SatakeParam> {
    let case = &sw.case;
    let r = case.r;
    let tail = star(&RFMatrix::diag(&sr.diag[r..]))?;
    let mut d: Vec<RatFunc> = sr.diag[..r].to_vec();
    d.extend(sw.diag.iter().cloned());
    d.extend((0..r).map(|i| tail.get(i, i).clone()));
    SatakeParam::new(case, Block::V, d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_ratfunc, z, U};
    use crate::lfactors::default_mu_unit;
    use crate::rootdata::{build_case, FieldKind};

    fn p(s: &str) -> RatFunc {
        parse_ratfunc(s).unwrap()
    }

    fn vars(names: &[&str]) -> Vec<RatFunc> {
        names.iter().map(|s| p(s)).collect()
    }

    fn split(n: usize, m: usize) -> CaseDescriptor {
        build_case(FieldKind::Split, n, m).unwrap()
    }

    fn inert(n: usize, m: usize) -> CaseDescriptor {
        build_case(FieldKind::Inert, n, m).unwrap()
    }

    #[test]
    fn star_examples() {
        let g = RFMatrix::diag(&vars(&["x1", "x2"]));
        assert_eq!(star(&g).unwrap(), RFMatrix::diag(&vars(&["x2^-1", "x1^-1"])));
        assert_eq!(star(&RFMatrix::identity(3)).unwrap(), RFMatrix::identity(3));
        for k in 1..=4 {
            let d: Vec<RatFunc> = (1..=k).map(|i| RatFunc::var(z(i))).collect();
            let g = RFMatrix::diag(&d);
            assert_eq!(star(&star(&g).unwrap()).unwrap(), g);
        }
        let g = RFMatrix::new(2, 2, vars(&["x1", "1", "0", "x2"])).unwrap();
        assert_eq!(star(&star(&g).unwrap()).unwrap(), g);
        assert!(star(&RFMatrix::zeros(2, 2)).is_err());
    }

    #[test]
    fn tensor_examples() {
        let c = split(3, 1);
        let a = LElem::diag(&vars(&["x1", "x2"]), &vars(&["x1", "x2"]), true);
        let b = LElem::diag(&vars(&["y1", "y2", "y3"]), &vars(&["y1", "y2", "y3"]), true);
        assert_eq!(tensor_i(&c, &a, &b).rows, 12);
        let a = bc(&RFMatrix::diag(&vars(&["x1"])), true).unwrap();
        let b = bc(&RFMatrix::diag(&vars(&["y1"])), true).unwrap();
        assert_eq!(tensor_i(&c, &a, &b), RFMatrix::diag(&vars(&["x1*y1", "x1^-1*y1^-1"])));
        let ci = inert(2, 2);
        let l = l_factor_from_rep(&RepMatrix::new(tensor_i(&ci, &a, &b), "t")).unwrap();
        assert_eq!(l, p("1 - X^2"));
        let l = l_factor_from_rep(&tensor_i_mu(&ci, &a, &b, Some(&RatFunc::int(-1)))).unwrap();
        assert_eq!(l, p("1 + X^2"));
    }

    #[test]
    fn multiplicativity() {
        let c = split(3, 1);
        let d = |s: &str| RFMatrix::diag(&vars(&s.split(',').collect::<Vec<_>>()));
        let a = LElem::new(d("x1,x2,x3"), d("z1,z2,z3"), false);
        let a2 = LElem::new(d("x4,x5,x6"), d("z4,z5,z6"), false);
        let b = LElem::new(d("y1,y2"), d("y3,y4"), false);
        let b2 = LElem::new(d("y5,y6"), d("u,v"), false);
        for case in [c, inert(4, 2)] {
            let lhs = tensor_i(&case, &a.mul(&a2).unwrap(), &b.mul(&b2).unwrap());
            let rhs = tensor_i(&case, &a, &b).mul(&tensor_i(&case, &a2, &b2)).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn rep_dims() {
        let c = split(3, 1);
        let ch = CharacterTuple::symbolic(&c);
        let (sv, sw) = satake_from_characters(&c, &ch).unwrap();
        let u = default_mu_unit(&c);
        assert_eq!(r_mu(&sv, &sw, &u).unwrap().dim, 6);
        let rm = r_minus(&sv, &sw, &u).unwrap();
        assert_eq!(rm.dim, 2);
        assert_eq!(v_minus_indices(&c), vec![2, 5]);
        assert_eq!(y_mu(&sv, &sw, &u).unwrap().dim, 3);
        let ci = inert(3, 1);
        let ch = CharacterTuple::symbolic(&ci);
        let (sv, sw) = satake_from_characters(&ci, &ch).unwrap();
        assert_eq!(y_mu(&sv, &sw, &RatFunc::int(-1)), Err(Error::NoLagrangian));
    }

    #[test]
    fn asai_one_dim() {
        let ci = inert(3, 1);
        let s = LElem::diag(&vars(&["x1"]), &vars(&["x2"]), true);
        assert_eq!(asai(&ci, -1, &s).mat, RFMatrix::diag(&vars(&["-x1*x2"])));
        assert_eq!(asai(&ci, 1, &s).mat, RFMatrix::diag(&vars(&["x1*x2"])));
        let c = split(3, 1);
        assert_eq!(asai(&c, -1, &s).mat, RFMatrix::diag(&vars(&["x1*x2"])));
    }

    #[test]
    fn d_quotient_examples() {
        let c = split(2, 0);
        let s = satake_unitary(&c, Block::V, &vars(&["x1", "x2"])).unwrap();
        assert_eq!(d_quotient(&s, Parabolic::B).unwrap(), p("1 - x2*x1^-1"));
        assert!(d_quotient(&s, Parabolic::G).unwrap().is_one());
        let s2 = satake_unitary(&c, Block::V, &vars(&["x2", "x1"])).unwrap();
        let tot = d_quotient(&s, Parabolic::B).unwrap().inv().add(&d_quotient(&s2, Parabolic::B).unwrap().inv());
        assert!(tot.is_one());
    }

    #[test]
    fn ad_fast_matches_generic() {
        for case in [split(3, 1), inert(3, 1), inert(4, 2)] {
            let k = case.n;
            let d: Vec<RatFunc> = (1..=k).map(|i| RatFunc::var(z(i))).collect();
            let t = RFMatrix::diag(&d);
            let fast = ad_unitary(&case, &t, true).unwrap();
            let basis: Vec<(usize, usize)> = (0..k).flat_map(|i| (0..k).map(move |j| (i, j))).collect();
            let mut gen = RFMatrix::zeros(k * k, k * k);
            let tinv = t.inverse().unwrap();
            let j = j_matrix(k);
            let jinv = j.inverse().unwrap();
            for (col, &(a, b)) in basis.iter().enumerate() {
                let mut x = RFMatrix::zeros(k, k);
                x.set(a, b, RatFunc::one());
                if case.is_inert() {
                    x = j.mul(&x.transpose()).unwrap().mul(&jinv).unwrap().scale(&RatFunc::int(-1));
                }
                let y = t.mul(&x).unwrap().mul(&tinv).unwrap();
                for (row, &(c, e)) in basis.iter().enumerate() {
                    gen.set(row, col, y.get(c, e).clone());
                }
            }
            assert_eq!(fast.mat, gen);
        }
    }

    #[test]
    fn ch_lambda_examples() {
        let c = split(4, 0);
        let s = SatakeParam::new(&c, Block::Gr, vars(&["x1", "x2", "y1", "y2"])).unwrap();
        assert!(ch_lambda(&s, &[0, 0, 0, 0]).unwrap().is_one());
        assert_eq!(ch_lambda(&s, &[1, 0, 0, 0]).unwrap(), p("x1 + x2"));
        assert_eq!(ch_lambda(&s, &[1, 1, 0, 0]).unwrap(), p("x1*x2"));
        assert_eq!(ch_lambda(&s, &[1, 0, 1, 0]).unwrap(), p("(x1 + x2)*(y1 + y2)"));
        assert!(ch_lambda(&s, &[0, 1, 0, 0]).is_err());
        let ci = inert(4, 0);
        let s = SatakeParam::new(&ci, Block::Gr, vars(&["x1", "x2", "y1", "y2"])).unwrap();
        assert_eq!(ch_lambda(&s, &[1, 0]).unwrap(), p("x1*y1 + x2*y2"));
    }

    /// s_lambda by the bialternant formula.
    fn schur(xs: &[RatFunc], lam: &[i64]) -> RatFunc {
        let r = xs.len();
        let alt = |e: &dyn Fn(usize) -> i64| {
            let m = RFMatrix::from_fn(r, r, |i, j| xs[i].pow(e(j) as i32));
            crate::algebra::rf_det(&m).unwrap()
        };
        alt(&|j| lam[j] + (r - 1 - j) as i64).div(&alt(&|j| (r - 1 - j) as i64))
    }

    #[test]
    fn ch_lambda_matches_bialternant() {
        let c = split(6, 0);
        let xs = vars(&["x1", "x2", "x3"]);
        let ys = vars(&["y1", "y2", "y3"]);
        let mut d = xs.clone();
        d.extend(ys.iter().cloned());
        let s = SatakeParam::new(&c, Block::Gr, d).unwrap();
        for (a, b) in [([2, 1, 0], [1, 0, 0]), ([1, 1, 1], [0, 0, 0]), ([2, 0, -1], [1, 1, -2])] {
            let mut lam = a.to_vec();
            lam.extend(b);
            let want = schur(&xs, &a).mul(&schur(&ys, &b));
            assert_eq!(ch_lambda(&s, &lam).unwrap(), want);
        }
    }

    #[test]
    fn l_factor_examples() {
        assert!(l_factor_from_rep(&RepMatrix::new(RFMatrix::zeros(3, 3), "0")).unwrap().is_one());
        let c = split(1, 1);
        let ch = CharacterTuple::symbolic(&c);
        let (sv, sw) = satake_from_characters(&c, &ch).unwrap();
        let l = l_factor_from_rep(&r_mu(&sv, &sw, &RatFunc::var(U)).unwrap()).unwrap();
        assert_eq!(l, p("(1 - X*x1*y1*u^-1)*(1 - X*x1^-1*y1^-1*u)"));
        assert!(l.subs(XS, &RatFunc::zero()).unwrap().is_one());
    }

    #[test]
    fn symplectic_invariance() {
        for case in [split(3, 1), split(2, 2), inert(4, 2), inert(3, 1)] {
            let ch = CharacterTuple::symbolic(&case);
            let (sv, sw) = satake_from_characters(&case, &ch).unwrap();
            let (sv, sw) = (sv.without_frobenius(), sw.without_frobenius());
            let om = symplectic_form(case.n, case.m);
            let mu = default_mu_unit(&case);
            for twisted in [false, true] {
                let rep = tensor_i_mu(&case, &sv.bc().unwrap(), &sw.bc().unwrap(), twisted.then_some(&mu));
                let lhs = rep.mat.transpose().mul(&om).unwrap().mul(&rep.mat).unwrap();
                let sim = if twisted && case.is_inert() { -1 } else { 1 };
                assert_eq!(lhs, om.scale(&RatFunc::int(sim)));
            }
        }
    }

    #[test]
    fn y_is_lagrangian() {
        for (n, m) in [(1, 1), (2, 2), (3, 1), (4, 2), (3, 3), (4, 4)] {
            let case = split(n, m);
            let idx = y_indices(&case).unwrap();
            assert_eq!(idx.len(), n * m);
            let om = symplectic_form(n, m);
            for &a in &idx {
                for &b in &idx {
                    assert!(om.get(a, b).is_zero());
                }
            }
        }
    }

    #[test]
    fn px_weyl_sum() {
        // sum over W_{M(X)} of 1/D_B(wS) = 1/D_{P(X)}(S)
        for case in [split(3, 1), split(4, 2), inert(4, 2), inert(5, 1)] {
            let k = case.n_minus;
            let chi: Vec<RatFunc> = (1..=k).map(|i| RatFunc::var(crate::algebra::x(i))).collect();
            let s = satake_unitary(&case, Block::V, &chi).unwrap();
            let (r, m) = (case.r, case.m);
            let mut tot = Vec::new();
            for w in weyl_elements(&case, Group::V) {
                let ok = (0..k).all(|i| {
                    let j = w.perm[i];
                    if case.is_split() {
                        let blk = |a: usize| (a >= r) as u8 + (a >= r + m) as u8;
                        blk(i) == blk(j) && w.signs[i] > 0
                    } else {
                        (i < r) == (j < r) && (i >= r || w.signs[i] > 0)
                    }
                });
                if ok {
                    let ws = satake_unitary(&case, Block::V, &weyl_act(&w, &chi).unwrap()).unwrap();
                    tot.push(d_quotient(&ws, Parabolic::B).unwrap().inv());
                }
            }
            assert_eq!(RatFunc::sum(tot), d_quotient(&s, Parabolic::PX).unwrap().inv(), "{}", case);
        }
    }
}
