//! Scalar local factors: zeta and L-values, Gross constants, the b/d factors
//! of the closed formula, Casselman c-factors, Gamma aggregates and the
//! volume-stripped pairing values attached to simple reflections.

use crate::algebra::{vpow, x, y, RatFunc, U};
use crate::error::{Error, Result};
use crate::rootdata::{
    coroot_pairing, longest_element, positive_roots, simple_reflection, weyl_act, CaseDescriptor, CaseKind, Group,
    Root, RootForm, WeylElement,
};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HalfInteger {
    pub twice: i32,
}

impl HalfInteger {
    pub fn new(twice: i32) -> HalfInteger {
        HalfInteger { twice }
    }

    pub fn int(k: i32) -> HalfInteger {
        HalfInteger { twice: 2 * k }
    }

    pub fn half() -> HalfInteger {
        HalfInteger { twice: 1 }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CharacterTuple {
    pub chi: Vec<RatFunc>,
    pub eta: Vec<RatFunc>,
    /// u in the split case, -1 in the inert case
    pub mu_unit: RatFunc,
}

impl CharacterTuple {
    pub fn new(chi: Vec<RatFunc>, eta: Vec<RatFunc>, mu_unit: RatFunc) -> CharacterTuple {
        CharacterTuple { chi, eta, mu_unit }
    }

    /// chi_i = x_i, eta_j = y_j, mu_unit = u or -1.
    pub fn symbolic(case: &CaseDescriptor) -> CharacterTuple {
        CharacterTuple {
            chi: (1..=case.n_minus).map(|i| RatFunc::var(x(i))).collect(),
            eta: (1..=case.m_minus).map(|j| RatFunc::var(y(j))).collect(),
            mu_unit: default_mu_unit(case),
        }
    }

    /// The conjugate of mu_unit: u^{-1} (split) or -1 (inert).
    pub fn mu_unit_conj(&self) -> RatFunc {
        self.mu_unit.inv()
    }

    pub fn mu_eta(&self) -> Vec<RatFunc> {
        self.eta.iter().map(|e| e.mul(&self.mu_unit)).collect()
    }

    pub fn mubar_eta(&self) -> Vec<RatFunc> {
        let c = self.mu_unit_conj();
        self.eta.iter().map(|e| e.mul(&c)).collect()
    }

    pub fn with_chi(&self, chi: Vec<RatFunc>) -> CharacterTuple {
        CharacterTuple { chi, eta: self.eta.clone(), mu_unit: self.mu_unit.clone() }
    }

    pub fn with_eta(&self, eta: Vec<RatFunc>) -> CharacterTuple {
        CharacterTuple { chi: self.chi.clone(), eta, mu_unit: self.mu_unit.clone() }
    }

    fn check(&self, case: &CaseDescriptor) -> Result<()> {
        if self.chi.len() != case.n_minus {
            return Err(Error::Arity { expected: case.n_minus, got: self.chi.len() });
        }
        if self.eta.len() != case.m_minus {
            return Err(Error::Arity { expected: case.m_minus, got: self.eta.len() });
        }
        Ok(())
    }
}

pub fn default_mu_unit(case: &CaseDescriptor) -> RatFunc {
    if case.is_split() {
        RatFunc::var(U)
    } else {
        RatFunc::int(-1)
    }
}

/// eta_{E/F}(varpi)
pub fn eta_ef(case: &CaseDescriptor) -> RatFunc {
    RatFunc::int(if case.is_split() { 1 } else { -1 })
}

// ---------------------------------------------------------------- L-values

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LWhich {
    ZetaF,
    ZetaE,
    LF,
    LE,
}

/// 1 - x * v^{-k}
fn one_minus_v(x: &RatFunc, k: i32) -> RatFunc {
    if let Some((c, m)) = x.as_monomial() {
        let mut mm = m;
        mm.0[crate::algebra::V] -= k as i16;
        return RatFunc::one_minus(c, mm);
    }
    RatFunc::one().sub(&x.mul(&vpow(-k)))
}

/// L_F(s, x)^{-1} = 1 - x q_F^{-s}
pub fn linv_f(s: HalfInteger, x: &RatFunc) -> RatFunc {
    one_minus_v(x, s.twice)
}

/// L_E(s, x)^{-1} = 1 - x q_E^{-s}
pub fn linv_e(case: &CaseDescriptor, s: HalfInteger, x: &RatFunc) -> RatFunc {
    one_minus_v(x, case.qe_exp() * s.twice / 2)
}

pub fn l_f(s: HalfInteger, x: &RatFunc) -> RatFunc {
    linv_f(s, x).inv()
}

pub fn l_e(case: &CaseDescriptor, s: HalfInteger, x: &RatFunc) -> RatFunc {
    linv_e(case, s, x).inv()
}

pub fn zeta_f(s: HalfInteger) -> RatFunc {
    l_f(s, &RatFunc::one())
}

/// zeta_E(s); in the split case this is zeta_F(s)^2.
pub fn zeta_e(case: &CaseDescriptor, s: HalfInteger) -> RatFunc {
    if case.is_split() {
        zeta_f(s).pow(2)
    } else {
        l_e(case, s, &RatFunc::one())
    }
}

pub fn local_l(case: &CaseDescriptor, which: LWhich, s: HalfInteger, arg: Option<&RatFunc>) -> Result<RatFunc> {
    match (which, arg) {
        (LWhich::ZetaF, None) => Ok(zeta_f(s)),
        (LWhich::ZetaE, None) => Ok(zeta_e(case, s)),
        (LWhich::LF, Some(a)) => Ok(l_f(s, a)),
        (LWhich::LE, Some(a)) => Ok(l_e(case, s, a)),
        (LWhich::ZetaF | LWhich::ZetaE, Some(_)) => Err(Error::Unsupported("zeta takes no argument".into())),
        (LWhich::LF | LWhich::LE, None) => Err(Error::Unsupported("L needs an argument".into())),
    }
}

// ---------------------------------------------------------------- Gross constants

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DeltaConst {
    UV,
    UW,
    Gk(usize),
    /// the tabulated form next to the closed formula
    TW,
    /// zeta_F(1)^{m_-} L(1, eta_{E/F})^{m_+} in the inert case
    TWArtinTate,
    TWPrime,
}

fn prod_l_eta(case: &CaseDescriptor, k: usize) -> RatFunc {
    let eta = eta_ef(case);
    RatFunc::product((1..=k as i32).map(|i| l_f(HalfInteger::int(i), &eta.pow(i))))
}

pub fn delta_const(case: &CaseDescriptor, which: DeltaConst) -> RatFunc {
    let one = HalfInteger::int(1);
    let mm = case.m_minus as i32;
    let l1eta = l_f(one, &eta_ef(case));
    match which {
        DeltaConst::UV => prod_l_eta(case, case.n),
        DeltaConst::UW => prod_l_eta(case, case.m),
        DeltaConst::Gk(k) => RatFunc::product((1..=k as i32).map(|i| zeta_e(case, HalfInteger::int(i)))),
        DeltaConst::TW => match case.kind {
            CaseKind::Split => zeta_f(one).pow(case.m as i32),
            CaseKind::InertEven => zeta_e(case, one).pow(mm),
            CaseKind::InertOdd => zeta_e(case, one).pow(mm).mul(&l1eta),
        },
        DeltaConst::TWArtinTate => match case.kind {
            CaseKind::Split => zeta_f(one).pow(case.m as i32),
            _ => zeta_f(one).pow(mm).mul(&l1eta.pow(case.m_plus as i32)),
        },
        DeltaConst::TWPrime => match case.kind {
            CaseKind::InertOdd => zeta_f(one).pow(mm).mul(&l1eta.pow(mm)),
            _ => delta_const(case, DeltaConst::TW),
        },
    }
}

// ---------------------------------------------------------------- b and d

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BVariant {
    Standard,
    Cross,
}

/// b(chi, eta) or b^x(chi, eta); the caller supplies the (possibly twisted) eta.
pub fn b_factor(case: &CaseDescriptor, chi: &[RatFunc], eta: &[RatFunc], variant: BVariant) -> Result<RatFunc> {
    if chi.len() != case.n_minus || eta.len() != case.m_minus {
        return Err(Error::Arity { expected: case.n_minus + case.m_minus, got: chi.len() + eta.len() });
    }
    let h = HalfInteger::half();
    let mut fs = Vec::new();
    if case.is_split() {
        let rp1 = case.rprime + 1;
        for i in 1..=case.n {
            for j in 1..=case.m {
                let (a, b) = (&chi[i - 1], &eta[j - 1]);
                let low = match variant {
                    BVariant::Standard => i + j < rp1,
                    BVariant::Cross => i + j <= rp1,
                };
                if low {
                    fs.push(linv_f(h, &a.mul(b)));
                } else if i + j > rp1 {
                    fs.push(linv_f(h, &a.mul(b).inv()));
                }
            }
        }
        return Ok(RatFunc::product(fs));
    }
    if variant == BVariant::Cross {
        return Err(Error::Unsupported("b^x exists only in the split case".into()));
    }
    let r = case.r;
    for i in 1..=case.n_minus {
        for j in 1..=case.m_minus {
            let (a, b) = (&chi[i - 1], &eta[j - 1]);
            fs.push(linv_e(case, h, &a.mul(b)));
            if i < r + j {
                fs.push(linv_e(case, h, &a.div(b)));
            }
            if i > r + j {
                fs.push(linv_e(case, h, &b.div(a)));
            }
        }
    }
    if case.is_odd() {
        for a in chi {
            fs.push(linv_e(case, h, &a.neg()));
        }
        for b in eta {
            fs.push(linv_e(case, h, b));
        }
    }
    Ok(RatFunc::product(fs))
}

/// prod over non-divisible positive roots of (1 - <chars, alpha^vee>)^{-1}.
pub fn d_group(case: &CaseDescriptor, g: Group, chars: &[RatFunc]) -> Result<RatFunc> {
    let mut fs = Vec::new();
    for a in positive_roots(case, g) {
        let p = coroot_pairing(case, chars, &a)?;
        fs.push(one_minus_v(&p, 0));
    }
    Ok(RatFunc::product(fs).inv())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DWhich {
    V,
    W,
    /// d(chi x eta) = d_V(w_0 chi) d_W(eta), the product over roots positive for B^+
    Combined,
}

pub fn d_factor(case: &CaseDescriptor, chars: &CharacterTuple, which: DWhich) -> Result<RatFunc> {
    chars.check(case)?;
    match which {
        DWhich::V => d_group(case, Group::V, &chars.chi),
        DWhich::W => d_group(case, Group::W, &chars.eta),
        DWhich::Combined => {
            let w0 = longest_element(case, Group::V);
            let c = weyl_act(&w0, &chars.chi)?;
            Ok(d_group(case, Group::V, &c)?.mul(&d_group(case, Group::W, &chars.eta)?))
        }
    }
}

// ---------------------------------------------------------------- c-factors

/// Numerator of c_alpha; the denominator is 1 - <chars, alpha^vee>.
fn c_numerator(case: &CaseDescriptor, chars: &[RatFunc], a: &Root) -> Result<RatFunc> {
    let p = coroot_pairing(case, chars, a)?;
    let (form, _) = a.form();
    Ok(match (case.kind, form) {
        (CaseKind::Split, _) => one_minus_v(&p, 2),
        (_, RootForm::Diff(..) | RootForm::Sum(..)) => one_minus_v(&p, case.qe_exp()),
        (_, RootForm::Long(_)) => one_minus_v(&p, 2),
        (_, RootForm::Short(k)) => {
            let c = &chars[k - 1];
            one_minus_v(c, 4).mul(&one_minus_v(&c.neg(), 2))
        }
    })
}

pub fn c_alpha(case: &CaseDescriptor, chars: &[RatFunc], a: &Root) -> Result<RatFunc> {
    let p = coroot_pairing(case, chars, a)?;
    Ok(c_numerator(case, chars, a)?.div(&one_minus_v(&p, 0)))
}

#[derive(Clone, Debug, PartialEq)]
pub enum CWhat {
    Alpha(Root),
    W(WeylElement),
    W0(Group),
}

pub fn c_factor(case: &CaseDescriptor, chars: &[RatFunc], what: &CWhat) -> Result<RatFunc> {
    match what {
        CWhat::Alpha(a) => {
            if !a.is_positive() {
                return Err(Error::RootNotInSystem(format!("{} is not positive", a)));
            }
            c_alpha(case, chars, a)
        }
        CWhat::W(w) => {
            let mut fs = Vec::new();
            for a in positive_roots(case, w.group) {
                if !w.act_root(&a).is_positive() {
                    fs.push(c_alpha(case, chars, &a)?);
                }
            }
            Ok(RatFunc::product(fs))
        }
        CWhat::W0(g) => c_factor(case, chars, &CWhat::W(longest_element(case, *g))),
    }
}

// ---------------------------------------------------------------- Gamma

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GammaWhich {
    Gamma1V,
    Gamma1W,
    Gamma2,
    Gamma,
    Pi,
}

/// Gamma_1 = c_{w_0} / d = prod over positive roots of the c-numerators.
fn gamma1(case: &CaseDescriptor, g: Group, chars: &[RatFunc]) -> Result<RatFunc> {
    let mut fs = Vec::new();
    for a in positive_roots(case, g) {
        fs.push(c_numerator(case, chars, &a)?);
    }
    Ok(RatFunc::product(fs))
}

fn gamma2(case: &CaseDescriptor, chi: &[RatFunc], eta: &[RatFunc]) -> RatFunc {
    let h = HalfInteger::half();
    let one = HalfInteger::int(1);
    let mut num = Vec::new();
    let mut den = Vec::new();
    if case.is_split() {
        for i in 1..=case.n {
            for j in 1..=case.m {
                let p = chi[i - 1].mul(&eta[j - 1]);
                den.push(if i + j <= case.rprime + 1 { linv_f(h, &p) } else { linv_f(h, &p.inv()) });
            }
        }
    } else {
        for j in 1..=case.m_minus {
            let b = &eta[j - 1];
            for a in chi {
                den.push(linv_e(case, h, &a.mul(b)));
                den.push(linv_e(case, h, &b.div(a)));
            }
            for a in chi.iter().take(case.r + j - 1) {
                den.push(linv_e(case, h, &a.div(b)));
                num.push(linv_e(case, h, &b.div(a)));
            }
        }
        if case.is_odd() {
            for a in chi {
                den.push(linv_f(one, &a.neg()));
            }
            for b in eta {
                den.push(linv_f(one, b));
            }
        }
    }
    RatFunc::product(num).div(&RatFunc::product(den))
}

fn pi_factor(case: &CaseDescriptor, chi: &[RatFunc], eta: &[RatFunc]) -> RatFunc {
    let h = HalfInteger::half();
    let mut den = Vec::new();
    if case.is_split() {
        for j in 1..=case.m {
            den.push(linv_f(h, &eta[j - 1].mul(&chi[case.rprime - j])));
        }
    } else {
        for j in 1..=case.m_minus {
            den.push(linv_e(case, h, &eta[j - 1].div(&chi[case.r + j - 1])));
        }
    }
    RatFunc::product(den).mul(&delta_const(case, DeltaConst::TWPrime)).inv()
}

/// Gamma = Gamma_1^V(chi) Gamma_1^W(mu eta) Gamma_2(chi, eta); Gamma1W is
/// evaluated at the eta it is given.
pub fn gamma_factors(case: &CaseDescriptor, chars: &CharacterTuple, which: GammaWhich) -> Result<RatFunc> {
    chars.check(case)?;
    Ok(match which {
        GammaWhich::Gamma1V => gamma1(case, Group::V, &chars.chi)?,
        GammaWhich::Gamma1W => gamma1(case, Group::W, &chars.eta)?,
        GammaWhich::Gamma2 => gamma2(case, &chars.chi, &chars.eta),
        GammaWhich::Pi => pi_factor(case, &chars.chi, &chars.eta),
        GammaWhich::Gamma => gamma1(case, Group::V, &chars.chi)?
            .mul(&gamma1(case, Group::W, &chars.mu_eta())?)
            .mul(&gamma2(case, &chars.chi, &chars.eta)),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Reflection {
    /// i-th simple root of Delta_V (1-based)
    Alpha(usize),
    /// j-th simple root of Delta_W (1-based)
    Beta(usize),
}

/// Reading of the inert j = m_- entry of the beta table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BetaVariant {
    /// L_F(1, chi_{m_-} eta_{n_-}) as printed
    Printed,
    /// L_F(1, chi_{n_-} eta_{m_-})
    Swapped,
}

/// Applies the simple reflection to the relevant component of `chars`.
pub fn reflect(case: &CaseDescriptor, chars: &CharacterTuple, s: Reflection) -> Result<CharacterTuple> {
    Ok(match s {
        Reflection::Alpha(i) => chars.with_chi(weyl_act(&simple_reflection(case, Group::V, i)?, &chars.chi)?),
        Reflection::Beta(j) => chars.with_eta(weyl_act(&simple_reflection(case, Group::W, j)?, &chars.eta)?),
    })
}

/// Closed-form pairing values with the volume prefactors removed.
pub fn gamma_pairing_value(
    case: &CaseDescriptor,
    chars: &CharacterTuple,
    s: Reflection,
    variant: BetaVariant,
) -> Result<RatFunc> {
    chars.check(case)?;
    let h = HalfInteger::half();
    let one = HalfInteger::int(1);
    let chi = |k: usize| chars.chi[k - 1].clone();
    let eta = |k: usize| chars.eta[k - 1].clone();
    let qf = vpow(2);
    let qe = vpow(case.qe_exp());
    let le = |s, a: &RatFunc| l_e(case, s, a);
    let (r, rp) = (case.r, case.rprime);
    match s {
        Reflection::Alpha(i) => {
            let count = if case.is_split() { case.n.saturating_sub(1) } else { case.n_minus };
            if i == 0 || i > count {
                return Err(Error::IndexOutOfRange(format!("alpha {} of {}", i, count)));
            }
            let nm = case.n_minus;
            if case.is_split() {
                if i <= r || i > rp {
                    return Ok(qf.mul(&linv_f(one, &chi(i).div(&chi(i + 1)))));
                }
                let j = rp + 1 - i;
                let num = l_f(h, &chi(i).mul(&eta(j))).mul(&l_f(h, &chi(i + 1).mul(&eta(j)).inv()));
                return Ok(qf.sub(&RatFunc::one()).mul(&num).mul(&linv_f(one, &chi(i).div(&chi(i + 1)))));
            }
            if i < r {
                return Ok(qe.mul(&linv_e(case, one, &chi(i).div(&chi(i + 1)))));
            }
            if i < nm {
                let e = eta(i - r + 1);
                let num = le(h, &chi(i).div(&e)).mul(&le(h, &e.div(&chi(i + 1))));
                return Ok(qe.sub(&RatFunc::one()).mul(&num).mul(&linv_e(case, one, &chi(i).div(&chi(i + 1)))));
            }
            if case.kind == CaseKind::InertEven {
                Ok(qf.mul(&linv_f(one, &chi(nm))))
            } else {
                Ok(qe.mul(&qf).mul(&linv_e(case, one, &chi(nm))))
            }
        }
        Reflection::Beta(j) => {
            let count = if case.is_split() { case.m.saturating_sub(1) } else { case.m_minus };
            if j == 0 || j > count {
                return Err(Error::IndexOutOfRange(format!("beta {} of {}", j, count)));
            }
            let pi = pi_factor(case, &chars.chi, &chars.eta);
            if case.is_split() {
                let num = l_f(h, &eta(j).mul(&chi(rp - j))).mul(&l_f(h, &eta(j + 1).mul(&chi(rp - j + 1)).inv()));
                let den = l_f(one, &eta(j).div(&eta(j + 1))).mul(&l_f(one, &chi(rp - j).div(&chi(rp - j + 1))));
                return Ok(pi.mul(&qf).mul(&num).div(&den));
            }
            let (nm, mm) = (case.n_minus, case.m_minus);
            if j < mm {
                let num = le(h, &eta(j).div(&chi(r + j + 1))).mul(&le(h, &chi(r + j).div(&eta(j + 1))));
                let den = le(one, &eta(j).div(&eta(j + 1))).mul(&le(one, &chi(r + j).div(&chi(r + j + 1))));
                return Ok(pi.mul(&qe).mul(&num).div(&den));
            }
            let num = match variant {
                BetaVariant::Swapped => l_f(one, &chi(nm).mul(&eta(mm))),
                BetaVariant::Printed => {
                    if nm > mm {
                        return Err(Error::IndexOutOfRange(format!(
                            "eta_{} with m_- = {} in the printed beta entry",
                            nm, mm
                        )));
                    }
                    l_f(one, &chi(mm).mul(&eta(nm)))
                }
            };
            if case.kind == CaseKind::InertEven {
                let den = l_f(one, &eta(mm).neg()).mul(&l_f(one, &chi(nm)));
                Ok(pi.mul(&qf).mul(&num).div(&den))
            } else {
                let den = le(one, &eta(mm).neg()).mul(&le(one, &chi(nm)));
                Ok(pi.mul(&qe).mul(&qf).mul(&num).div(&den))
            }
        }
    }
}

/// All simple reflections of Delta_V then Delta_W.
pub fn simple_reflections(case: &CaseDescriptor) -> Vec<Reflection> {
    let na = if case.is_split() { case.n.saturating_sub(1) } else { case.n_minus };
    let nb = if case.is_split() { case.m.saturating_sub(1) } else { case.m_minus };
    (1..=na).map(Reflection::Alpha).chain((1..=nb).map(Reflection::Beta)).collect()
}

/// gamma(s.chars) Gamma(chars) - gamma(chars) Gamma(s.chars), which vanishes
/// exactly when the functional equation holds for `s`.
pub fn gamma_functional_equation_sides(
    case: &CaseDescriptor,
    chars: &CharacterTuple,
    s: Reflection,
    variant: BetaVariant,
) -> Result<(RatFunc, RatFunc)> {
    let sc = reflect(case, chars, s)?;
    let g = gamma_factors(case, chars, GammaWhich::Gamma)?;
    let gs = gamma_factors(case, &sc, GammaWhich::Gamma)?;
    let lhs = gamma_pairing_value(case, &sc, s, variant)?.mul(&g);
    let rhs = gamma_pairing_value(case, chars, s, variant)?.mul(&gs);
    Ok((lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_ratfunc, Q, V};
    use crate::rootdata::{build_case, weyl_elements, FieldKind};

    fn p(s: &str) -> RatFunc {
        parse_ratfunc(s).unwrap()
    }

    fn split(n: usize, m: usize) -> CaseDescriptor {
        build_case(FieldKind::Split, n, m).unwrap()
    }

    fn inert(n: usize, m: usize) -> CaseDescriptor {
        build_case(FieldKind::Inert, n, m).unwrap()
    }

    #[test]
    fn local_l_examples() {
        let c = split(1, 1);
        let z = local_l(&c, LWhich::ZetaF, HalfInteger::int(1), None).unwrap();
        assert_eq!(z.subs_root(V, 2, &Q::int(3)).unwrap().unwrap(), p("3/2"));
        let l = local_l(&c, LWhich::LF, HalfInteger::int(1), Some(&RatFunc::int(-1))).unwrap();
        assert_eq!(l, p("1/(1 + v^-2)"));
        let ci = inert(2, 0);
        for cc in [&c, &ci] {
            let l = local_l(cc, LWhich::LE, HalfInteger::new(3), Some(&RatFunc::zero())).unwrap();
            assert!(l.is_one());
        }
        assert_eq!(zeta_e(&c, HalfInteger::int(1)), p("1/(1 - v^-2)^2"));
        assert_eq!(zeta_e(&ci, HalfInteger::int(1)), p("1/(1 - v^-4)"));
        assert_eq!(l_e(&ci, HalfInteger::half(), &p("x1")), p("1/(1 - x1*v^-2)"));
        assert!(local_l(&c, LWhich::ZetaF, HalfInteger::int(1), Some(&RatFunc::one())).is_err());
        assert!(local_l(&c, LWhich::LF, HalfInteger::int(1), None).is_err());
    }

    #[test]
    fn delta_examples() {
        let ci = inert(4, 2);
        assert_eq!(delta_const(&ci, DeltaConst::Gk(1)), zeta_e(&ci, HalfInteger::int(1)));
        let c = split(2, 2);
        let one = HalfInteger::int(1);
        assert_eq!(delta_const(&c, DeltaConst::UW), zeta_f(one).mul(&zeta_f(HalfInteger::int(2))));
        for (n, m) in [(2, 2), (4, 2), (6, 4), (3, 1), (3, 3), (5, 3), (7, 5)] {
            let ci = inert(n, m);
            assert_eq!(delta_const(&ci, DeltaConst::TW), delta_const(&ci, DeltaConst::TWArtinTate));
        }
        let ci = inert(5, 3);
        assert_eq!(delta_const(&ci, DeltaConst::TWPrime), p("1/((1 - v^-2)*(1 + v^-2))"));
        assert_eq!(delta_const(&ci, DeltaConst::UW), p("1/((1 + v^-2)*(1 - v^-4)*(1 + v^-6))"));
        assert_eq!(
            delta_const(&ci, DeltaConst::UV),
            delta_const(&ci, DeltaConst::UW).mul(&p("1/((1 - v^-8)*(1 + v^-10))"))
        );
    }

    #[test]
    fn b_examples() {
        let c = split(1, 1);
        let ch = CharacterTuple::symbolic(&c);
        assert!(b_factor(&c, &ch.chi, &ch.eta, BVariant::Standard).unwrap().is_one());
        let c = split(3, 1);
        let ch = CharacterTuple::symbolic(&c);
        assert_eq!(
            b_factor(&c, &ch.chi, &ch.eta, BVariant::Standard).unwrap(),
            p("(1 - x1*y1*v^-1)*(1 - x3^-1*y1^-1*v^-1)")
        );
        assert_eq!(
            b_factor(&c, &ch.chi, &ch.eta, BVariant::Cross).unwrap(),
            p("(1 - x1*y1*v^-1)*(1 - x2*y1*v^-1)*(1 - x3^-1*y1^-1*v^-1)")
        );
        let c = inert(2, 2);
        let ch = CharacterTuple::symbolic(&c);
        assert_eq!(b_factor(&c, &ch.chi, &ch.eta, BVariant::Standard).unwrap(), p("1 - x1*y1*v^-2"));
        assert!(b_factor(&c, &ch.chi, &ch.eta, BVariant::Cross).is_err());
        let c = inert(3, 1);
        let ch = CharacterTuple::symbolic(&c);
        assert_eq!(b_factor(&c, &ch.chi, &ch.eta, BVariant::Standard).unwrap(), p("1 + x1*v^-2"));
    }

    #[test]
    fn d_examples() {
        let c = split(2, 0);
        let ch = CharacterTuple::symbolic(&c);
        assert_eq!(d_factor(&c, &ch, DWhich::V).unwrap(), p("1/(1 - x1*x2^-1)"));
        assert_eq!(d_factor(&c, &ch, DWhich::Combined).unwrap(), p("1/(1 - x2*x1^-1)"));
        let c = inert(2, 0);
        let ch = CharacterTuple::symbolic(&c);
        assert_eq!(d_factor(&c, &ch, DWhich::V).unwrap(), p("1/(1 - x1)"));
        let c = split(1, 1);
        let ch = CharacterTuple::symbolic(&c);
        assert!(d_factor(&c, &ch, DWhich::V).unwrap().is_one());
        let c = inert(3, 1);
        let ch = CharacterTuple::symbolic(&c);
        assert_eq!(d_factor(&c, &ch, DWhich::V).unwrap(), p("1/(1 - x1^2)"));
    }

    #[test]
    fn c_examples() {
        let c = split(2, 0);
        let ch = CharacterTuple::symbolic(&c);
        let a = crate::rootdata::Root::from_form(&c, Group::V, RootForm::Diff(1, 2)).unwrap();
        let ca = c_factor(&c, &ch.chi, &CWhat::Alpha(a)).unwrap();
        assert_eq!(ca, p("(1 - v^-2*x1*x2^-1)/(1 - x1*x2^-1)"));
        let id = weyl_elements(&c, Group::V).remove(0);
        assert!(c_factor(&c, &ch.chi, &CWhat::W(id)).unwrap().is_one());
        assert_eq!(c_factor(&c, &ch.chi, &CWhat::W0(Group::V)).unwrap(), ca);
        let c = inert(3, 1);
        let ch = CharacterTuple::symbolic(&c);
        assert_eq!(c_factor(&c, &ch.chi, &CWhat::W0(Group::V)).unwrap(), p("(1 - v^-4*x1)*(1 + v^-2*x1)/(1 - x1^2)"));
        // cocycle relation when lengths add
        let c = inert(4, 0);
        let ch = CharacterTuple::symbolic(&c);
        let ws = weyl_elements(&c, Group::V);
        for w1 in &ws {
            for w2 in &ws {
                let w = w1.compose(w2);
                if w.length(&c) == w1.length(&c) + w2.length(&c) {
                    let lhs = c_factor(&c, &ch.chi, &CWhat::W(w)).unwrap();
                    let w2c = weyl_act(w2, &ch.chi).unwrap();
                    let rhs = c_factor(&c, &w2c, &CWhat::W(w1.clone()))
                        .unwrap()
                        .mul(&c_factor(&c, &ch.chi, &CWhat::W(w2.clone())).unwrap());
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn gamma_examples() {
        let c = split(1, 1);
        let ch = CharacterTuple::symbolic(&c);
        assert_eq!(gamma_factors(&c, &ch, GammaWhich::Gamma2).unwrap(), p("1/(1 - x1*y1*v^-1)"));
        assert!(gamma_factors(&c, &ch, GammaWhich::Gamma1V).unwrap().is_one());
        assert!(gamma_factors(&c, &ch, GammaWhich::Gamma1W).unwrap().is_one());
        let c = split(3, 1);
        let ch = CharacterTuple::symbolic(&c);
        let pi = gamma_factors(&c, &ch, GammaWhich::Pi).unwrap();
        assert_eq!(pi, zeta_f(HalfInteger::int(1)).inv().mul(&l_f(HalfInteger::half(), &p("y1*x2"))));
    }

    #[test]
    fn pairing_value_examples() {
        let c = split(5, 1);
        let ch = CharacterTuple::symbolic(&c);
        let v = |i| gamma_pairing_value(&c, &ch, Reflection::Alpha(i), BetaVariant::Swapped).unwrap();
        assert_eq!(v(1), p("v^2*(1 - x1*x2^-1*v^-2)"));
        assert_eq!(v(2), p("v^2*(1 - x2*x3^-1*v^-2)"));
        assert_eq!(v(3), p("(v^2 - 1)*(1 - x3*x4^-1*v^-2)/((1 - x3*y1*v^-1)*(1 - x4^-1*y1^-1*v^-1))"));
        assert!(gamma_pairing_value(&c, &ch, Reflection::Alpha(5), BetaVariant::Swapped).is_err());
        let c = inert(4, 0);
        let ch = CharacterTuple::symbolic(&c);
        let v2 = gamma_pairing_value(&c, &ch, Reflection::Alpha(2), BetaVariant::Swapped).unwrap();
        assert_eq!(v2, p("v^2*(1 - x2*v^-2)"));
        assert!(gamma_pairing_value(&c, &ch, Reflection::Beta(1), BetaVariant::Swapped).is_err());
    }

    #[test]
    fn printed_beta_reading() {
        let c = inert(6, 2);
        let ch = CharacterTuple::symbolic(&c);
        assert!(gamma_pairing_value(&c, &ch, Reflection::Beta(1), BetaVariant::Printed).is_err());
        let c = inert(4, 4);
        let ch = CharacterTuple::symbolic(&c);
        assert_eq!(
            gamma_pairing_value(&c, &ch, Reflection::Beta(2), BetaVariant::Printed).unwrap(),
            gamma_pairing_value(&c, &ch, Reflection::Beta(2), BetaVariant::Swapped).unwrap()
        );
    }

    #[test]
    fn functional_equation_small() {
        for c in [split(3, 1), split(2, 2), inert(4, 2), inert(3, 1), inert(5, 3)] {
            let ch = CharacterTuple::symbolic(&c);
            for s in simple_reflections(&c) {
                let (l, r) = gamma_functional_equation_sides(&c, &ch, s, BetaVariant::Swapped).unwrap();
                assert_eq!(l, r, "{} {:?}", c, s);
            }
        }
    }
}
