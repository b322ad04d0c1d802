//! Closed-form evaluators: the normalized Whittaker-Shintani function, its
//! split-case cross variant, the G_r-unfolded form, the unfolding identities
//! and the L-function equality at the end of the Ichino-Ikeda computation.

use crate::algebra::{det_one_minus, vpow, RFMatrix, RatFunc, NV, PRIME, XS};
use crate::dualgroup::{
    ad, ad_gk, ad_unitary, asai, bc, blocks_of, ch_lambda, d_quotient, mubar, r_minus, r_mu, satake_unitary,
    sigma_param, tensor_i, y_mu, Block, LElem, Parabolic, SatakeParam,
};
use crate::error::{Error, Result};
use crate::lfactors::{b_factor, d_group, delta_const, BVariant, CharacterTuple, DeltaConst};
use crate::rootdata::{
    delta_exponent, embed_lambda_r, in_lambda_minus, in_lambda_r_pp, longest_element, weyl_act, weyl_elements,
    CaseDescriptor, Cocharacter, DeltaWhich, Group, WeylElement,
};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq)]
pub struct WSQuery {
    pub case: CaseDescriptor,
    pub chars: CharacterTuple,
    pub lambda: Cocharacter,
}

impl WSQuery {
    pub fn new(case: &CaseDescriptor, chars: CharacterTuple, lambda: Cocharacter) -> WSQuery {
        WSQuery { case: *case, chars, lambda }
    }
}

/// The two ways of computing each Weyl summand.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Route {
    /// b and d as products of L-values
    LFactor,
    /// det(1 - v^{-1} R_-(S)) / D(S) on Satake parameters
    Determinant,
}

/// A Weyl sum kept unsummed: value = prefactor * sum(terms).
#[derive(Clone, Debug)]
pub struct WeylSum {
    pub prefactor: RatFunc,
    pub terms: Vec<RatFunc>,
}

impl WeylSum {
    pub fn total(&self) -> RatFunc {
        self.prefactor.mul(&RatFunc::sum(self.terms.iter().cloned()))
    }

    /// Value at a point mod PRIME; None when some term is singular there.
    pub fn eval_mod(&self, pt: &[u64; NV]) -> Option<u64> {
        use crate::algebra::modular::{add_mod, mul_mod};
        let mut acc = 0u64;
        for t in &self.terms {
            acc = add_mod(acc, t.eval_mod(pt, PRIME).ok()?, PRIME);
        }
        Some(mul_mod(acc, self.prefactor.eval_mod(pt, PRIME).ok()?, PRIME))
    }
}

/// prod chars_i^{lam_i}
pub fn char_pow(chars: &[RatFunc], lam: &[i64]) -> RatFunc {
    RatFunc::product(chars.iter().zip(lam).filter(|(_, &k)| k != 0).map(|(c, &k)| c.pow(k as i32)))
}

fn v_inv() -> RatFunc {
    vpow(-1)
}

fn half_exponent(e: i64) -> Result<i32> {
    if e % 2 != 0 {
        return Err(Error::Unsupported("odd modulus exponent".into()));
    }
    Ok((e / 2) as i32)
}

/// delta_{B^+}^{-1/2}(lambda)
pub fn delta_bplus_inv_sqrt(case: &CaseDescriptor, lam: &Cocharacter) -> Result<RatFunc> {
    Ok(vpow(-half_exponent(delta_exponent(case, DeltaWhich::BPlus, lam)?)?))
}

fn weyl_pairs(case: &CaseDescriptor) -> Vec<(WeylElement, WeylElement)> {
    let wv = weyl_elements(case, Group::V);
    let ww = weyl_elements(case, Group::W);
    let mut out = Vec::with_capacity(wv.len() * ww.len());
    for a in &wv {
        for b in &ww {
            out.push((a.clone(), b.clone()));
        }
    }
    out
}

/// det(1 - v^{-1} R_-(S)) / D_{G/B}(S) at S = Satake(chi, eta).
pub fn normalization_term(
    case: &CaseDescriptor,
    chi: &[RatFunc],
    eta: &[RatFunc],
    mu_unit: &RatFunc,
) -> Result<RatFunc> {
    let sv = satake_unitary(case, Block::V, chi)?;
    let sw = satake_unitary(case, Block::W, eta)?;
    let num = det_one_minus(&v_inv(), &r_minus(&sv, &sw, mu_unit)?.mat)?;
    let den = d_quotient(&sv, Parabolic::B)?.mul(&d_quotient(&sw, Parabolic::B)?);
    Ok(num.div(&den))
}

/// Summands of sum_{w in W_G} det(1 - v^{-1} R_-(wS)) / D(wS).
pub fn normalization_sum(case: &CaseDescriptor, chars: &CharacterTuple) -> Result<WeylSum> {
    let mut terms = Vec::new();
    for (wv, ww) in weyl_pairs(case) {
        let chi = weyl_act(&wv, &chars.chi)?;
        let eta = weyl_act(&ww, &chars.eta)?;
        terms.push(normalization_term(case, &chi, &eta, &chars.mu_unit)?);
    }
    Ok(WeylSum { prefactor: RatFunc::one(), terms })
}

/// Delta_{T_W} / Delta_{U(W)}
pub fn normalization_target(case: &CaseDescriptor) -> RatFunc {
    delta_const(case, DeltaConst::TW).div(&delta_const(case, DeltaConst::UW))
}

/// One Weyl summand of ws_normalized, without the character and delta factors.
pub fn ws_summand(
    case: &CaseDescriptor,
    chars: &CharacterTuple,
    wv: &WeylElement,
    ww: &WeylElement,
    route: Route,
) -> Result<RatFunc> {
    let chi = weyl_act(wv, &chars.chi)?;
    let eta = weyl_act(ww, &chars.eta)?;
    match route {
        Route::LFactor => {
            let tw = chars.with_eta(eta.clone());
            let b = b_factor(case, &chi, &tw.mubar_eta(), BVariant::Standard)?;
            Ok(b.mul(&d_group(case, Group::V, &chi)?).mul(&d_group(case, Group::W, &eta)?))
        }
        Route::Determinant => {
            let w0v = longest_element(case, Group::V);
            let w0w = longest_element(case, Group::W);
            normalization_term(case, &weyl_act(&w0v, &chi)?, &weyl_act(&w0w, &eta)?, &chars.mu_unit)
        }
    }
}

/// The normalized Whittaker-Shintani function as an unsummed Weyl sum.
pub fn ws_terms(q: &WSQuery, route: Route) -> Result<WeylSum> {
    let case = &q.case;
    in_lambda_minus(case, &q.lambda)?;
    if q.chars.chi.len() != case.n_minus || q.chars.eta.len() != case.m_minus {
        return Err(Error::Arity { expected: case.n_minus + case.m_minus, got: q.chars.chi.len() + q.chars.eta.len() });
    }
    let w0v = longest_element(case, Group::V);
    let mut terms = Vec::new();
    for (wv, ww) in weyl_pairs(case) {
        let chi = weyl_act(&wv, &q.chars.chi)?;
        let eta = weyl_act(&ww, &q.chars.eta)?;
        let ch = char_pow(&weyl_act(&w0v, &chi)?, &q.lambda.lambda_v).mul(&char_pow(&eta, &q.lambda.lambda_w));
        terms.push(ws_summand(case, &q.chars, &wv, &ww, route)?.mul(&ch));
    }
    let prefactor = normalization_target(case).inv().mul(&delta_bplus_inv_sqrt(case, &q.lambda)?);
    Ok(WeylSum { prefactor, terms })
}

pub fn ws_normalized_route(q: &WSQuery, route: Route) -> Result<RatFunc> {
    Ok(ws_terms(q, route)?.total())
}

pub fn ws_normalized(q: &WSQuery) -> Result<RatFunc> {
    ws_normalized_route(q, Route::LFactor)
}

/// The split-case variant built on the Lagrangian Y.
pub fn ws_cross_terms(q: &WSQuery, route: Route) -> Result<WeylSum> {
    let case = &q.case;
    if !case.is_split() {
        return Err(Error::NoLagrangian);
    }
    in_lambda_minus(case, &q.lambda)?;
    let w0v = longest_element(case, Group::V);
    let w0w = longest_element(case, Group::W);
    let mut terms = Vec::new();
    for (wv, ww) in weyl_pairs(case) {
        let chi = weyl_act(&wv, &q.chars.chi)?;
        let eta = weyl_act(&ww, &q.chars.eta)?;
        let body = match route {
            Route::Determinant => {
                let sv = satake_unitary(case, Block::V, &chi)?;
                let sw = satake_unitary(case, Block::W, &eta)?;
                let num = det_one_minus(&v_inv(), &y_mu(&sv, &sw, &q.chars.mu_unit)?.mat)?;
                num.div(&d_quotient(&sv, Parabolic::BPlus)?.mul(&d_quotient(&sw, Parabolic::BPlus)?))
            }
            Route::LFactor => {
                let w0eta = q.chars.with_eta(weyl_act(&w0w, &eta)?);
                let b = b_factor(case, &chi, &w0eta.mubar_eta(), BVariant::Cross)?;
                b.mul(&d_group(case, Group::V, &chi)?).mul(&d_group(case, Group::W, &eta)?)
            }
        };
        let ch = char_pow(&weyl_act(&w0v, &chi)?, &q.lambda.lambda_v)
            .mul(&char_pow(&weyl_act(&w0w, &eta)?, &q.lambda.lambda_w));
        terms.push(body.mul(&ch));
    }
    let prefactor = delta_const(case, DeltaConst::UW).mul(&delta_bplus_inv_sqrt(case, &q.lambda)?);
    Ok(WeylSum { prefactor, terms })
}

pub fn ws_cross(q: &WSQuery) -> Result<RatFunc> {
    Ok(ws_cross_terms(q, Route::Determinant)?.total())
}

/// det(1 - v^{-1} (S_V^{(r)})^star (x)^I_mubar BC(S_W)) / D_{U(V)/B_V}(S_V)
fn unfold_weight(sv: &SatakeParam, sw: &SatakeParam, mu_unit: &RatFunc) -> Result<(RatFunc, SatakeParam, SatakeParam)> {
    let case = &sv.case;
    let (vr, vm) = blocks_of(sv)?;
    let vr_star = vr.gk()?.star()?;
    let m = tensor_i(case, &vr_star, &mubar(case, &sw.bc()?, mu_unit));
    let a = det_one_minus(&v_inv(), &m)?.div(&d_quotient(sv, Parabolic::B)?);
    Ok((a, vr, vm))
}

fn check_r(case: &CaseDescriptor) -> Result<()> {
    if case.r == 0 {
        return Err(Error::Unsupported("needs r >= 1".into()));
    }
    Ok(())
}

/// The G_r-unfolded form at lambda_r in Lambda_r^{++}, normalized to 1 at lambda_r = 0.
pub fn ws_unfolded_r(case: &CaseDescriptor, chars: &CharacterTuple, lam_r: &[i64]) -> Result<RatFunc> {
    Ok(ws_unfolded_terms(case, chars, lam_r)?.total())
}

pub fn ws_unfolded_terms(case: &CaseDescriptor, chars: &CharacterTuple, lam_r: &[i64]) -> Result<WeylSum> {
    check_r(case)?;
    if !in_lambda_r_pp(case, lam_r) {
        return Err(Error::NotDominant(format!("{:?} not in Lambda_r^++", lam_r)));
    }
    let sw = satake_unitary(case, Block::W, &chars.eta)?;
    let mut terms = Vec::new();
    for w in weyl_elements(case, Group::V) {
        let sv = satake_unitary(case, Block::V, &weyl_act(&w, &chars.chi)?)?;
        let (a, vr, _) = unfold_weight(&sv, &sw, &chars.mu_unit)?;
        terms.push(a.mul(&ch_lambda(&vr, lam_r)?));
    }
    let lam = Cocharacter::new(embed_lambda_r(case, lam_r)?, vec![0; case.m_minus]);
    let prefactor = vpow(half_exponent(delta_exponent(case, DeltaWhich::BV, &lam)?)?);
    Ok(WeylSum { prefactor, terms })
}

/// sum_{w in W_V} det(1 - v^{-1} (wS_V)^{(r) star} (x)^I_mubar S_W) / D(wS_V); equals 1.
pub fn unfolding_weyl_sum(case: &CaseDescriptor, chars: &CharacterTuple) -> Result<WeylSum> {
    check_r(case)?;
    let sw = satake_unitary(case, Block::W, &chars.eta)?;
    let mut terms = Vec::new();
    for w in weyl_elements(case, Group::V) {
        let sv = satake_unitary(case, Block::V, &weyl_act(&w, &chars.chi)?)?;
        terms.push(unfold_weight(&sv, &sw, &chars.mu_unit)?.0);
    }
    Ok(WeylSum { prefactor: RatFunc::one(), terms })
}

/// det(1 - z BC(S_W) (x)^I S_r^c) det(1 - z2 As^{(-1)^m}(S_r))
fn unfold_denominators(
    case: &CaseDescriptor,
    sw: &SatakeParam,
    sr: &LElem,
    z: &RatFunc,
    z2: &RatFunc,
) -> Result<RatFunc> {
    let sign = if case.m.is_multiple_of(2) { 1 } else { -1 };
    let a = det_one_minus(z, &tensor_i(case, &sw.bc()?, &sr.conj_c()))?;
    let b = det_one_minus(z2, &asai(case, sign, sr).mat)?;
    Ok(a.mul(&b))
}

/// Both sides of the L-function unfolding lemma for generic S_V, S_W, S_r.
pub fn lemma_unfolding_sides(
    case: &CaseDescriptor,
    chars: &CharacterTuple,
    sr: &SatakeParam,
) -> Result<(RatFunc, WeylSum)> {
    check_r(case)?;
    let sw = satake_unitary(case, Block::W, &chars.eta)?;
    let srl = sr.gk()?;
    let lhs = unfold_denominators(case, &sw, &srl, &vpow(-2), &vpow(-2))?;
    let srmu = mubar(case, &srl, &chars.mu_unit);
    let mut terms = Vec::new();
    for w in weyl_elements(case, Group::V) {
        let sv = satake_unitary(case, Block::V, &weyl_act(&w, &chars.chi)?)?;
        let (a, vr, vm) = unfold_weight(&sv, &sw, &chars.mu_unit)?;
        let f1 = det_one_minus(&v_inv(), &tensor_i(case, &vr.gk()?.star()?, &srmu))?;
        let f2 = det_one_minus(&v_inv(), &tensor_i(case, &vm.bc()?, &srmu))?;
        terms.push(a.mul(&f1).mul(&f2));
    }
    Ok((lhs, WeylSum { prefactor: RatFunc::one(), terms }))
}

/// Partitions with at most `parts` parts and size at most `max`.
pub fn partitions_upto(parts: usize, max: usize) -> Vec<Vec<i64>> {
    fn go(parts: usize, left: usize, cap: usize, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if cur.len() == parts {
            out.push(cur.clone());
            return;
        }
        for k in 0..=cap.min(left) {
            cur.push(k as i64);
            go(parts, left - k, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(parts, max, max, &mut Vec::new(), &mut out);
    out
}

/// Elements of Lambda_r^{++} with X-degree at most `degree`, paired with that degree.
pub fn lambda_r_pp_upto(case: &CaseDescriptor, degree: usize) -> Vec<(Vec<i64>, usize)> {
    let r = case.r;
    let mut out = Vec::new();
    if case.is_split() {
        for a in partitions_upto(r, degree) {
            let sa: i64 = a.iter().sum();
            for b in partitions_upto(r, degree - sa as usize) {
                let sb: i64 = b.iter().sum();
                let mut l = a.clone();
                l.extend(b);
                out.push((l, (sa + sb) as usize));
            }
        }
    } else {
        for a in partitions_upto(r, degree / 2) {
            let sa: i64 = a.iter().sum();
            out.push((a, 2 * sa as usize));
        }
    }
    out
}

fn mubar_gr(sr: &SatakeParam, mu_unit: &RatFunc) -> Result<SatakeParam> {
    let case = &sr.case;
    let e = mubar(case, &sr.gk()?, mu_unit);
    let r = case.r;
    let mut d: Vec<RatFunc> = (0..r).map(|i| e.g1.get(i, i).clone()).collect();
    d.extend((0..r).map(|i| e.g2.get(i, i).clone()));
    SatakeParam::new(case, Block::Gr, d)
}

/// Truncated series in X = q_F^{-s} of both sides of the L_unfold identity, degrees 0..=degree.
/// The left side sums Whittaker-Shintani values times Casselman-Shalika values over
/// Lambda_r^{++}; the right side expands the L-ratio.
pub fn l_unfold_sides(
    case: &CaseDescriptor,
    chars: &CharacterTuple,
    sr_diag: &[RatFunc],
    degree: usize,
) -> Result<(Vec<RatFunc>, Vec<RatFunc>)> {
    check_r(case)?;
    if degree > 8 {
        return Err(Error::Unsupported("series degree above 8".into()));
    }
    let sr = SatakeParam::new(case, Block::Gr, sr_diag.to_vec())?;
    let x = RatFunc::var(XS);
    let mut lhs = vec![RatFunc::zero(); degree + 1];
    for (lam_r, deg) in lambda_r_pp_upto(case, degree) {
        let lam = Cocharacter::new(embed_lambda_r(case, &lam_r)?, vec![0; case.m_minus]);
        let ws = ws_normalized(&WSQuery::new(case, chars.clone(), lam.clone()))?;
        // omega_V(lambda_r) contributes mubar(lambda_r) |lambda_r|^{1/2}
        let weil = ch_lambda(&mubar_gr(&sr_unit(case)?, &chars.mu_unit)?, &lam_r)?.mul(&vpow(-(deg as i32)));
        let cs = ch_lambda(&sr, &lam_r)?.mul(&vpow(half_exponent(delta_exponent(case, DeltaWhich::Br, &lam)?)?));
        let e = delta_exponent(case, DeltaWhich::PX, &lam)? / 2 - delta_exponent(case, DeltaWhich::P, &lam)?;
        let weight = vpow(e as i32);
        lhs[deg] = lhs[deg].add(&ws.mul(&weil).mul(&cs).mul(&weight));
    }
    let sv = satake_unitary(case, Block::V, &chars.chi)?;
    let sw = satake_unitary(case, Block::W, &chars.eta)?;
    let srs = sr.gk()?.scale(&x);
    let srl = sr.gk()?;
    let num = unfold_denominators(case, &sw, &srl, &vpow(-2).mul(&x), &vpow(-2).mul(&x.pow(2)))?;
    let srs_mu = mubar(case, &srs, &chars.mu_unit);
    let den = det_one_minus(&v_inv(), &tensor_i(case, &sv.bc()?, &srs_mu))?;
    let rhs = num.div(&den).series(XS, degree)?;
    Ok((lhs, rhs))
}

/// The unit G_r parameter, used to read off the mubar character of lambda_r.
fn sr_unit(case: &CaseDescriptor) -> Result<SatakeParam> {
    SatakeParam::new(case, Block::Gr, vec![RatFunc::one(); 2 * case.r])
}

/// L(1/2, A x B (x) mubar)^{-1} = det(1 - v^{-1} A (x)^I_mubar B)
fn l12_inv(case: &CaseDescriptor, a: &LElem, b: &LElem, mu_unit: &RatFunc) -> Result<RatFunc> {
    Ok(det_one_minus(&v_inv(), &tensor_i(case, a, &mubar(case, b, mu_unit)))?)
}

fn lad_inv(m: &RFMatrix) -> Result<RatFunc> {
    Ok(det_one_minus(&vpow(-2), m)?)
}

fn final_f(
    case: &CaseDescriptor,
    sv: &SatakeParam,
    sw: &SatakeParam,
    sr: &SatakeParam,
    mu: &RatFunc,
) -> Result<RatFunc> {
    let srl = sr.gk()?;
    let num = l12_inv(case, &sv.bc()?, &srl, mu)?;
    Ok(unfold_denominators(case, sw, &srl, &vpow(-2), &vpow(-2))?.div(&num))
}

fn invert_param(p: &SatakeParam) -> SatakeParam {
    SatakeParam { diag: p.diag.iter().map(|d| d.inv()).collect(), ..p.clone() }
}

/// Both sides of L(1/2, sigma_V x Sigma (x) mubar)/L(1, Sigma, Ad) = [...] |f|^2,
/// Sigma = I_{P(X)}(tau x sigma_W), with |f|^2 = f(S) f(S^{-1}, u^{-1}).
pub fn final_l_identity_sides(
    sv: &SatakeParam,
    sw: &SatakeParam,
    sr: &SatakeParam,
    mu_unit: &RatFunc,
) -> Result<(RatFunc, RatFunc)> {
    let case = &sv.case;
    check_r(case)?;
    let sig = sigma_param(sw, sr)?;
    let lhs = lad_inv(&ad(&sig)?.mat)?.div(&l12_inv(case, &sv.bc()?, &sig.bc()?, mu_unit)?);
    let base = lad_inv(&ad_unitary(case, &sw.matrix(), sw.frobenius)?.mat)?
        .mul(&lad_inv(&ad_gk(case, &sr.gk()?)?.mat)?)
        .div(&l12_inv(case, &sv.bc()?, &sw.bc()?, mu_unit)?);
    let f = final_f(case, sv, sw, sr, mu_unit)?;
    let fbar = final_f(case, &invert_param(sv), &invert_param(sw), &invert_param(sr), &mu_unit.inv())?;
    Ok((lhs, base.mul(&f).mul(&fbar)))
}

/// Delta_{U(V)} L(1/2, sigma (x) mubar) / L(1, sigma, Ad) for sigma = sigma_V x sigma_W.
pub fn ii_constant(case: &CaseDescriptor, chars: &CharacterTuple) -> Result<RatFunc> {
    let sv = satake_unitary(case, Block::V, &chars.chi)?;
    let sw = satake_unitary(case, Block::W, &chars.eta)?;
    let l = det_one_minus(&v_inv(), &r_mu(&sv, &sw, &chars.mu_unit)?.mat)?;
    let a =
        lad_inv(&ad_unitary(case, &sv.matrix(), true)?.mat)?.mul(&lad_inv(&ad_unitary(case, &sw.matrix(), true)?.mat)?);
    Ok(delta_const(case, DeltaConst::UV).mul(&a).div(&l))
}

/// Base change of a unitary parameter as a G_k element (re-exported for callers assembling reps).
pub fn bc_of(p: &SatakeParam) -> Result<LElem> {
    bc(&p.matrix(), p.frobenius)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_ratfunc, x, y, z, U};
    use crate::lfactors::zeta_f;
    use crate::lfactors::HalfInteger;
    use crate::rootdata::{build_case, FieldKind};

    fn p(s: &str) -> RatFunc {
        parse_ratfunc(s).unwrap()
    }

    fn split(n: usize, m: usize) -> CaseDescriptor {
        build_case(FieldKind::Split, n, m).unwrap()
    }

    fn inert(n: usize, m: usize) -> CaseDescriptor {
        build_case(FieldKind::Inert, n, m).unwrap()
    }

    fn q(case: &CaseDescriptor, lv: Vec<i64>, lw: Vec<i64>) -> WSQuery {
        WSQuery::new(case, CharacterTuple::symbolic(case), Cocharacter::new(lv, lw))
    }

    fn sr_sym(case: &CaseDescriptor) -> SatakeParam {
        SatakeParam::new(case, Block::Gr, (1..=2 * case.r).map(|i| RatFunc::var(z(i))).collect()).unwrap()
    }

    #[test]
    fn normalization_small() {
        for c in [split(1, 1), split(2, 2), split(3, 1), inert(2, 2), inert(3, 1), inert(4, 2)] {
            let s = normalization_sum(&c, &CharacterTuple::symbolic(&c)).unwrap().total();
            assert_eq!(s, normalization_target(&c), "{}", c);
        }
    }

    #[test]
    fn ws_examples() {
        let c = split(1, 1);
        for (a, b) in [(0, 0), (2, -1), (-3, 4)] {
            let w = ws_normalized(&q(&c, vec![a], vec![b])).unwrap();
            assert_eq!(w, RatFunc::var(x(1)).pow(a as i32).mul(&RatFunc::var(y(1)).pow(b as i32)));
        }
        for c in [split(2, 2), inert(3, 1), inert(4, 2)] {
            let z0 = Cocharacter::zero(&c);
            assert!(ws_normalized(&q(&c, z0.lambda_v, z0.lambda_w)).unwrap().is_one());
        }
        let c = split(2, 2);
        assert!(ws_normalized(&q(&c, vec![0, 1], vec![0, 0])).is_err());
    }

    #[test]
    fn routes_agree_termwise() {
        for (c, lv, lw) in
            [(split(3, 1), vec![2, 0, -1], vec![1]), (inert(4, 2), vec![1, 0], vec![0]), (inert(3, 1), vec![2], vec![])]
        {
            let qq = q(&c, lv, lw);
            let a = ws_terms(&qq, Route::LFactor).unwrap();
            let b = ws_terms(&qq, Route::Determinant).unwrap();
            assert_eq!(a.terms, b.terms, "{}", c);
        }
    }

    #[test]
    fn ws_is_weyl_invariant_and_regular() {
        let c = split(2, 2);
        let qq = q(&c, vec![1, 0], vec![-1, 0]);
        let base = ws_normalized(&qq).unwrap();
        assert!(base.is_laurent_polynomial_over(crate::algebra::V), "{}", base);
        for w in weyl_elements(&c, Group::V) {
            let chi = weyl_act(&w, &qq.chars.chi).unwrap();
            let q2 = WSQuery::new(&c, qq.chars.with_chi(chi), qq.lambda.clone());
            assert_eq!(ws_normalized(&q2).unwrap(), base);
        }
    }

    #[test]
    fn cross_examples() {
        let c = split(1, 1);
        let w = ws_cross(&q(&c, vec![0], vec![0])).unwrap();
        assert_eq!(w, zeta_f(HalfInteger::int(1)).mul(&p("1 - v^-1*x1*y1*u^-1")));
        for c in [split(2, 2), split(3, 1)] {
            let z0 = Cocharacter::zero(&c);
            let qq = q(&c, z0.lambda_v, z0.lambda_w);
            let a = ws_cross_terms(&qq, Route::Determinant).unwrap();
            let b = ws_cross_terms(&qq, Route::LFactor).unwrap();
            assert_eq!(a.terms, b.terms);
            assert!(a.total().is_laurent_polynomial_over(crate::algebra::V));
        }
        assert!(ws_cross(&q(&inert(2, 2), vec![0], vec![0])).is_err());
    }

    #[test]
    fn unfolded_matches_normalized() {
        for (c, lams) in [
            (split(3, 1), vec![vec![1, 0], vec![2, 1], vec![0, 2]]),
            (inert(3, 1), vec![vec![1], vec![2]]),
            (inert(4, 2), vec![vec![1]]),
        ] {
            let ch = CharacterTuple::symbolic(&c);
            assert!(unfolding_weyl_sum(&c, &ch).unwrap().total().is_one());
            for lr in lams {
                let lv = embed_lambda_r(&c, &lr).unwrap();
                let a = ws_unfolded_r(&c, &ch, &lr).unwrap();
                let b = ws_normalized(&WSQuery::new(&c, ch.clone(), Cocharacter::new(lv, vec![0; c.m_minus]))).unwrap();
                assert_eq!(a, b, "{} {:?}", c, lr);
            }
        }
        assert!(ws_unfolded_r(&split(2, 2), &CharacterTuple::symbolic(&split(2, 2)), &[]).is_err());
    }

    #[test]
    fn lemma_unfolding() {
        for c in [split(3, 1), inert(3, 1), inert(4, 2)] {
            let (l, r) = lemma_unfolding_sides(&c, &CharacterTuple::symbolic(&c), &sr_sym(&c)).unwrap();
            assert_eq!(l, r.total(), "{}", c);
        }
    }

    #[test]
    fn l_unfold_series() {
        for (c, d) in [(split(3, 1), 3), (inert(3, 1), 4)] {
            let sr = sr_sym(&c).diag;
            let (l, r) = l_unfold_sides(&c, &CharacterTuple::symbolic(&c), &sr, d).unwrap();
            assert!(l[0].is_one() && r[0].is_one());
            assert_eq!(l, r, "{}", c);
        }
    }

    #[test]
    fn final_identity() {
        for c in [split(3, 1), inert(3, 1)] {
            let ch = CharacterTuple::symbolic(&c);
            let sv = satake_unitary(&c, Block::V, &ch.chi).unwrap();
            let sw = satake_unitary(&c, Block::W, &ch.eta).unwrap();
            let (l, r) = final_l_identity_sides(&sv, &sw, &sr_sym(&c), &ch.mu_unit).unwrap();
            assert_eq!(l, r, "{}", c);
        }
    }

    #[test]
    fn ii_example() {
        let c = split(1, 1);
        let got = ii_constant(&c, &CharacterTuple::symbolic(&c)).unwrap();
        let want = zeta_f(HalfInteger::int(1))
            .mul(&p("(1 - v^-2)^2"))
            .div(&p("(1 - v^-1*x1*y1*u^-1)*(1 - v^-1*x1^-1*y1^-1*u)"));
        assert_eq!(got, want);
        let _ = U;
    }
}
