use super::{case, compare, compare_all, default_grid, errored, predicate, CheckResult, Job, Side, SuiteConfig};
use crate::algebra::{det_one_minus, rf_det, vpow, x, y, z, Mode, RFMatrix, RatFunc, V, XS};
use crate::dualgroup::{
    ch_lambda, d_quotient, l_factor_from_rep, r_minus, r_mu, satake_unitary, satake_unitary_with, y_mu, Block,
    Completion, Parabolic, RepMatrix, SatakeParam, SATAKE_COMPLETION,
};
use crate::error::{Error, Result};
use crate::lfactors::{
    b_factor, d_group, gamma_functional_equation_sides, simple_reflections, BVariant, BetaVariant, CharacterTuple,
};
use crate::rootdata::{
    in_lambda_minus, longest_element, weyl_act, weyl_elements, CaseDescriptor, Cocharacter, FieldKind, Group,
    WeylElement,
};
use crate::wsformula::{
    final_l_identity_sides, l_unfold_sides, lemma_unfolding_sides, normalization_sum, normalization_target,
    partitions_upto, ws_cross, ws_cross_terms, ws_normalized, ws_terms, Route, WSQuery,
};
use serde::Serialize;
use FieldKind::{Inert, Split};

fn grid(config: &SuiteConfig, default: Vec<CaseDescriptor>) -> Vec<CaseDescriptor> {
    let base = config.cases.clone().unwrap_or(default);
    base.into_iter().filter(|c| config.max_rank.is_none_or(|k| c.n <= k)).collect()
}

fn sym(c: &CaseDescriptor) -> CharacterTuple {
    CharacterTuple::symbolic(c)
}

fn guard(name: &str, c: Option<&CaseDescriptor>, mode: Mode, f: impl FnOnce() -> Result<CheckResult>) -> CheckResult {
    f().unwrap_or_else(|e| errored(name, c, mode, &e))
}

pub(super) fn build<'a>(name: &str, config: &'a SuiteConfig) -> Result<(Vec<CaseDescriptor>, Vec<Job<'a>>)> {
    let cases = match name {
        "normalization" | "satake_reform" => grid(config, default_grid()),
        "gamma_ratio" => grid(config, gamma_grid()),
        "weyl_symmetry" | "regularity" => grid(config, small_grid()),
        "cross_split" => grid(
            config,
            vec![
                case(Split, 1, 1),
                case(Split, 2, 2),
                case(Split, 3, 1),
                case(Split, 3, 3),
                case(Split, 4, 2),
                case(Split, 4, 4),
            ],
        ),
        "rl_factorization" => grid(
            config,
            vec![
                case(Split, 1, 1),
                case(Split, 2, 2),
                case(Split, 3, 1),
                case(Split, 4, 2),
                case(Inert, 2, 2),
                case(Inert, 3, 1),
                case(Inert, 4, 2),
            ],
        ),
        "cauchy" => grid(config, (1..=3).map(|r| case(Split, 2 * r + 1, 1)).collect()),
        "l_unfold" => grid(config, vec![case(Split, 3, 1), case(Inert, 3, 1)]),
        "lemma_unfolding" | "final_identity" => {
            grid(config, vec![case(Split, 3, 1), case(Inert, 3, 1), case(Split, 4, 2), case(Inert, 4, 2)])
        }
        other => return Err(Error::Usage(format!("unknown suite '{}'", other))),
    };
    let mut jobs: Vec<Job<'a>> = Vec::new();
    for &c in &cases {
        let mode = config.mode_for(Some(&c));
        match name {
            "normalization" => jobs.push(Box::new(move || {
                guard("normalization_weyl_sum", Some(&c), mode, || {
                    let s = normalization_sum(&c, &sym(&c))?;
                    Ok(compare("normalization_weyl_sum", Some(&c), s, normalization_target(&c), mode))
                })
            })),
            "satake_reform" => jobs.push(Box::new(move || {
                guard("satake_reform", Some(&c), mode, || {
                    let pairs = satake_reform_pairs(&c, SATAKE_COMPLETION)?;
                    Ok(compare_all("satake_reform", Some(&c), pairs, mode))
                })
            })),
            "gamma_ratio" => {
                for s in simple_reflections(&c) {
                    let label = format!("gamma_functional_equation {:?}", s);
                    jobs.push(Box::new(move || {
                        guard(&label, Some(&c), mode, || {
                            let (l, r) = gamma_functional_equation_sides(&c, &sym(&c), s, BetaVariant::Swapped)?;
                            Ok(compare(&label, Some(&c), l, r, mode))
                        })
                    }));
                }
            }
            "weyl_symmetry" => {
                for lam in sample_lambdas(&c) {
                    let label = format!("ws_weyl_invariance {:?}/{:?}", lam.lambda_v, lam.lambda_w);
                    jobs.push(Box::new(move || {
                        guard(&label, Some(&c), mode, || weyl_invariance(&label, &c, &lam, mode))
                    }));
                }
            }
            "regularity" => {
                for lam in sample_lambdas(&c) {
                    let label = format!("ws_regular {:?}/{:?}", lam.lambda_v, lam.lambda_w);
                    jobs.push(Box::new(move || {
                        guard(&label, Some(&c), Mode::Symbolic, || {
                            let f = ws_normalized(&WSQuery::new(&c, sym(&c), lam.clone()))?;
                            let ok = f.is_laurent_polynomial_over(V);
                            let detail = (!ok).then(|| format!("denominator {}", f.denominator()));
                            Ok(predicate(&label, Some(&c), ok, Mode::Symbolic, detail))
                        })
                    }));
                }
            }
            "cross_split" => cross_jobs(&c, mode, &mut jobs),
            "rl_factorization" => jobs.push(Box::new(move || {
                guard("rl_factorization", Some(&c), mode, || {
                    let ch = sym(&c);
                    let sv = satake_unitary(&c, Block::V, &ch.chi)?;
                    let sw = satake_unitary(&c, Block::W, &ch.eta)?;
                    let rep = r_mu(&sv, &sw, &ch.mu_unit)?;
                    Ok(compare("rl_factorization", Some(&c), l_factor_from_rep(&rep)?, monomial_char_poly(&rep)?, mode))
                })
            })),
            "cauchy" => {
                jobs.push(Box::new(move || guard("cauchy_truncated", Some(&c), mode, || cauchy_check(&c, 4, mode))));
                jobs.push(Box::new(move || guard("ch_vs_bialternant", Some(&c), mode, || schur_check(&c, 4, mode))));
            }
            "l_unfold" => jobs.push(Box::new(move || {
                guard("l_unfold_series", Some(&c), mode, || {
                    let (l, r) = l_unfold_sides(&c, &sym(&c), &sr_symbolic(&c).diag, 4)?;
                    let pairs = l.into_iter().zip(r).map(|(a, b)| (Side::F(a), Side::F(b))).collect();
                    Ok(compare_all("l_unfold_series", Some(&c), pairs, mode))
                })
            })),
            "lemma_unfolding" => jobs.push(Box::new(move || {
                guard("lemma_unfolding", Some(&c), mode, || {
                    let (l, r) = lemma_unfolding_sides(&c, &sym(&c), &sr_symbolic(&c))?;
                    Ok(compare("lemma_unfolding", Some(&c), l, r, mode))
                })
            })),
            "final_identity" => jobs.push(Box::new(move || {
                guard("final_l_identity", Some(&c), mode, || {
                    let ch = sym(&c);
                    let sv = satake_unitary(&c, Block::V, &ch.chi)?;
                    let sw = satake_unitary(&c, Block::W, &ch.eta)?;
                    let (l, r) = final_l_identity_sides(&sv, &sw, &sr_symbolic(&c), &ch.mu_unit)?;
                    Ok(compare("final_l_identity", Some(&c), l, r, mode))
                })
            })),
            _ => unreachable!(),
        }
    }
    match name {
        "satake_reform" => {
            let cs = cases.clone();
            jobs.push(Box::new(move || {
                let a = select_satake_completion(&cs, config);
                let ok = a.selected.as_deref() == Some(completion_name(SATAKE_COMPLETION));
                predicate("satake_completion_self_test", None, ok, config.mode_for(None), Some(a.detail))
            }));
        }
        "gamma_ratio" => {
            let cs = cases.clone();
            jobs.push(Box::new(move || {
                let a = adjudicate_beta_variant(&cs, config);
                let ok = a.selected.as_deref() == Some("swapped");
                predicate("beta_variant_adjudication", None, ok, config.mode_for(None), Some(a.detail))
            }));
        }
        "regularity" => {
            for c in grid(config, default_grid()) {
                jobs.push(Box::new(move || {
                    let mode = Mode::Modular { trials: 50, seed: config.seed };
                    guard("ws_zero_is_one_modular", Some(&c), mode, || {
                        let lam = Cocharacter::zero(&c);
                        let s = ws_terms(&WSQuery::new(&c, sym(&c), lam), Route::LFactor)?;
                        Ok(compare("ws_zero_is_one_modular", Some(&c), s, RatFunc::one(), mode))
                    })
                }));
            }
        }
        _ => {}
    }
    Ok((cases, jobs))
}

fn gamma_grid() -> Vec<CaseDescriptor> {
    let mut out = vec![case(Split, 1, 1), case(Split, 2, 2), case(Split, 3, 1)];
    for (n, m) in
        [(2, 2), (4, 2), (4, 4), (6, 2), (6, 4), (3, 1), (3, 3), (5, 1), (5, 3), (5, 5), (7, 1), (7, 3), (7, 5)]
    {
        out.push(case(Inert, n, m));
    }
    out
}

fn small_grid() -> Vec<CaseDescriptor> {
    vec![
        case(Split, 1, 1),
        case(Split, 2, 2),
        case(Split, 3, 1),
        case(Split, 3, 3),
        case(Inert, 2, 2),
        case(Inert, 3, 1),
        case(Inert, 3, 3),
    ]
}

/// lambda = 0 and up to two small nonzero elements of Lambda^-.
pub fn sample_lambdas(c: &CaseDescriptor) -> Vec<Cocharacter> {
    let (a, b) = (c.n_minus, c.m_minus);
    let vecs = |k: usize| -> Vec<Vec<i64>> {
        let mut out = vec![vec![]];
        for _ in 0..k {
            out = out.into_iter().flat_map(|v| (-1..=2).map(move |e| [v.clone(), vec![e]].concat())).collect();
        }
        out
    };
    let mut out = vec![Cocharacter::zero(c)];
    let mut found: Vec<Cocharacter> = Vec::new();
    for lv in vecs(a) {
        for lw in vecs(b) {
            let lam = Cocharacter::new(lv.clone(), lw);
            if !lam.is_zero() && in_lambda_minus(c, &lam).is_ok() {
                found.push(lam);
            }
        }
    }
    found.sort_by_key(|l| {
        let nz = |s: &[i64]| s.iter().filter(|&&e| e != 0).count();
        (
            std::cmp::Reverse(nz(&l.lambda_v) + nz(&l.lambda_w)),
            l.lambda_v.iter().chain(&l.lambda_w).map(|e| e.abs()).sum::<i64>(),
        )
    });
    out.extend(found.into_iter().take(2));
    out
}

/// f with chi replaced by w_V chi and eta by w_W eta.
pub fn act_on_function(c: &CaseDescriptor, f: &RatFunc, wv: &WeylElement, ww: &WeylElement) -> Result<RatFunc> {
    let ch = sym(c);
    let tv = weyl_act(wv, &ch.chi)?;
    let tw = weyl_act(ww, &ch.eta)?;
    let (a, b) = (tv.len(), tw.len());
    if a + b > crate::algebra::mono::MAX_Z {
        return Err(Error::Unsupported("too many variables to permute".into()));
    }
    let mut g = f.clone();
    for i in 0..a {
        g = g.subs(x(i + 1), &RatFunc::var(z(i + 1)))?;
    }
    for j in 0..b {
        g = g.subs(y(j + 1), &RatFunc::var(z(a + j + 1)))?;
    }
    for (i, t) in tv.iter().enumerate() {
        g = g.subs(z(i + 1), t)?;
    }
    for (j, t) in tw.iter().enumerate() {
        g = g.subs(z(a + j + 1), t)?;
    }
    Ok(g)
}

fn weyl_invariance(label: &str, c: &CaseDescriptor, lam: &Cocharacter, mode: Mode) -> Result<CheckResult> {
    let base = ws_normalized(&WSQuery::new(c, sym(c), lam.clone()))?;
    let mut pairs = Vec::new();
    for wv in weyl_elements(c, Group::V) {
        for ww in weyl_elements(c, Group::W) {
            if wv.is_identity() && ww.is_identity() {
                continue;
            }
            pairs.push((Side::F(act_on_function(c, &base, &wv, &ww)?), Side::F(base.clone())));
        }
    }
    if pairs.is_empty() {
        return Ok(predicate(label, Some(c), true, mode, Some("|W_G| = 1".into())));
    }
    Ok(compare_all(label, Some(c), pairs, mode))
}

/// b(chi, mubar eta) = det(1 - v^{-1} R_-(w_0 S)) and d_V(chi) d_W(eta) = D(w_0 S)^{-1}.
pub fn satake_reform_pairs(c: &CaseDescriptor, completion: Completion) -> Result<Vec<(Side, Side)>> {
    let ch = sym(c);
    let w0v = longest_element(c, Group::V);
    let w0w = longest_element(c, Group::W);
    let sv = satake_unitary_with(c, Block::V, &weyl_act(&w0v, &ch.chi)?, completion)?;
    let sw = satake_unitary_with(c, Block::W, &weyl_act(&w0w, &ch.eta)?, completion)?;
    let b = b_factor(c, &ch.chi, &ch.mubar_eta(), BVariant::Standard)?;
    let det = det_one_minus(&vpow(-1), &r_minus(&sv, &sw, &ch.mu_unit)?.mat)?;
    let d = d_group(c, Group::V, &ch.chi)?.mul(&d_group(c, Group::W, &ch.eta)?);
    let dd = d_quotient(&sv, Parabolic::B)?.mul(&d_quotient(&sw, Parabolic::B)?).checked_inv()?;
    Ok(vec![(Side::F(b), Side::F(det)), (Side::F(d), Side::F(dd))])
}

#[derive(Clone, Debug, Serialize)]
pub struct Adjudication {
    pub selected: Option<String>,
    pub detail: String,
}

pub fn completion_name(c: Completion) -> &'static str {
    match c {
        Completion::Ones => "ones",
        Completion::Mirrored => "mirrored",
    }
}

fn adjudicate<T: Copy>(
    candidates: &[(T, &'static str)],
    cases: &[CaseDescriptor],
    config: &SuiteConfig,
    check: impl Fn(&CaseDescriptor, T, Mode) -> bool,
) -> Adjudication {
    let mut passing = Vec::new();
    let mut detail = Vec::new();
    for &(cand, label) in candidates {
        let failed: Vec<String> =
            cases.iter().filter(|c| !check(c, cand, config.mode_for(Some(c)))).map(|c| c.label()).collect();
        if failed.is_empty() {
            passing.push(label);
            detail.push(format!("{}: holds on all {} cases", label, cases.len()));
        } else {
            detail.push(format!("{}: fails on {}", label, failed.join(", ")));
        }
    }
    Adjudication {
        selected: if passing.len() == 1 { Some(passing[0].to_string()) } else { None },
        detail: detail.join("; "),
    }
}

/// The unique inert completion for which both reformulation identities hold on `cases`.
pub fn select_satake_completion(cases: &[CaseDescriptor], config: &SuiteConfig) -> Adjudication {
    let inert: Vec<CaseDescriptor> = cases.iter().copied().filter(|c| c.is_inert()).collect();
    let cands = [(Completion::Ones, "ones"), (Completion::Mirrored, "mirrored")];
    adjudicate(&cands, &inert, config, |c, comp, mode| {
        satake_reform_pairs(c, comp)
            .map(|p| compare_all("", Some(c), p, mode).status == super::Status::Pass)
            .unwrap_or(false)
    })
}

/// The reading of the last inert beta entry under which every functional equation holds.
pub fn adjudicate_beta_variant(cases: &[CaseDescriptor], config: &SuiteConfig) -> Adjudication {
    let inert: Vec<CaseDescriptor> = cases.iter().copied().filter(|c| c.is_inert() && c.m_minus > 0).collect();
    let cands = [(BetaVariant::Printed, "printed"), (BetaVariant::Swapped, "swapped")];
    adjudicate(&cands, &inert, config, |c, var, mode| {
        simple_reflections(c).into_iter().all(|s| match gamma_functional_equation_sides(c, &sym(c), s, var) {
            Ok((l, r)) => compare("", Some(c), l, r, mode).status == super::Status::Pass,
            Err(_) => false,
        })
    })
}

fn cross_jobs<'a>(c: &CaseDescriptor, mode: Mode, jobs: &mut Vec<Job<'a>>) {
    let c = *c;
    jobs.push(Box::new(move || {
        guard("b_cross_vs_det_Y", Some(&c), mode, || {
            let ch = sym(&c);
            let sv = satake_unitary(&c, Block::V, &ch.chi)?;
            let sw = satake_unitary(&c, Block::W, &ch.eta)?;
            let det = det_one_minus(&vpow(-1), &y_mu(&sv, &sw, &ch.mu_unit)?.mat)?;
            let w0eta = ch.with_eta(weyl_act(&longest_element(&c, Group::W), &ch.eta)?);
            let b = b_factor(&c, &ch.chi, &w0eta.mubar_eta(), BVariant::Cross)?;
            Ok(compare("b_cross_vs_det_Y", Some(&c), b, det, mode))
        })
    }));
    if c.n <= 3 {
        jobs.push(Box::new(move || {
            guard("ws_cross_routes_termwise", Some(&c), mode, || {
                let q = WSQuery::new(&c, sym(&c), Cocharacter::zero(&c));
                let a = ws_cross_terms(&q, Route::Determinant)?;
                let b = ws_cross_terms(&q, Route::LFactor)?;
                let pairs = a.terms.into_iter().zip(b.terms).map(|(s, t)| (Side::F(s), Side::F(t))).collect();
                Ok(compare_all("ws_cross_routes_termwise", Some(&c), pairs, mode))
            })
        }));
    }
    if c.n == 2 && c.m == 2 {
        jobs.push(Box::new(move || {
            guard("ws_cross_regular", Some(&c), Mode::Symbolic, || {
                let f = ws_cross(&WSQuery::new(&c, sym(&c), Cocharacter::zero(&c)))?;
                Ok(predicate("ws_cross_regular", Some(&c), f.is_laurent_polynomial_over(V), Mode::Symbolic, None))
            })
        }));
    }
}

/// det(1 - X M) for a monomial matrix M by cycle decomposition.
pub fn monomial_char_poly(rep: &RepMatrix) -> Result<RatFunc> {
    let m = &rep.mat;
    let k = m.rows;
    let mut succ = vec![None; k];
    for (i, s) in succ.iter_mut().enumerate() {
        let nz: Vec<usize> = (0..k).filter(|&j| !m.get(i, j).is_zero()).collect();
        match nz.len() {
            0 => {}
            1 => *s = Some(nz[0]),
            _ => return Err(Error::Unsupported("not a monomial matrix".into())),
        }
    }
    let xs = RatFunc::var(XS);
    let mut seen = vec![false; k];
    let mut factors = Vec::new();
    for start in 0..k {
        if seen[start] {
            continue;
        }
        let mut path = vec![start];
        let mut prod = RatFunc::one();
        let mut cur = start;
        seen[start] = true;
        let closed = loop {
            let Some(nx) = succ[cur] else { break false };
            prod = prod.mul(m.get(cur, nx));
            if nx == start {
                break true;
            }
            if seen[nx] {
                break false;
            }
            seen[nx] = true;
            path.push(nx);
            cur = nx;
        };
        if closed {
            factors.push(RatFunc::one().sub(&xs.pow(path.len() as i32).mul(&prod)));
        }
    }
    Ok(RatFunc::product(factors))
}

fn sr_symbolic(c: &CaseDescriptor) -> SatakeParam {
    SatakeParam::new(c, Block::Gr, (1..=2 * c.r).map(|i| RatFunc::var(z(i))).collect()).expect("G_r arity")
}

/// The split G_r parameter with first copy `d` and a generic second copy.
fn gr_first_copy(c: &CaseDescriptor, d: Vec<RatFunc>) -> Result<SatakeParam> {
    let mut diag = d;
    diag.extend((1..=c.r).map(|i| RatFunc::var(z(i))));
    SatakeParam::new(c, Block::Gr, diag)
}

fn padded(p: &[i64], r: usize) -> Vec<i64> {
    let mut out = p.to_vec();
    out.extend(std::iter::repeat_n(0, r));
    out
}

fn cauchy_check(c: &CaseDescriptor, degree: usize, mode: Mode) -> Result<CheckResult> {
    let r = c.r;
    let xa: Vec<RatFunc> = (1..=r).map(|i| RatFunc::var(x(i))).collect();
    let yb: Vec<RatFunc> = (1..=r).map(|i| RatFunc::var(y(i))).collect();
    let a = gr_first_copy(c, xa.clone())?;
    let b = gr_first_copy(c, yb.clone())?;
    let mut lhs = vec![RatFunc::zero(); degree + 1];
    for p in partitions_upto(r, degree) {
        let k: i64 = p.iter().sum();
        let lam = padded(&p, r);
        lhs[k as usize] = lhs[k as usize].add(&ch_lambda(&a, &lam)?.mul(&ch_lambda(&b, &lam)?));
    }
    let t = RFMatrix::diag(&xa).kron(&RFMatrix::diag(&yb));
    let rhs = det_one_minus(&RatFunc::var(XS), &t)?.inv().series(XS, degree)?;
    let pairs = lhs.into_iter().zip(rhs).map(|(p, q)| (Side::F(p), Side::F(q))).collect();
    Ok(compare_all("cauchy_truncated", Some(c), pairs, mode))
}

/// Bialternant s_p(x_1..x_r) = det(x_i^{p_j + r - j}) / det(x_i^{r - j}).
pub fn schur_bialternant(p: &[i64], xs: &[RatFunc]) -> Result<RatFunc> {
    let r = xs.len();
    let alt = |e: &dyn Fn(usize) -> i64| RFMatrix::from_fn(r, r, |i, j| xs[i].pow(e(j) as i32));
    let num = rf_det(&alt(&|j| p.get(j).copied().unwrap_or(0) + (r - 1 - j) as i64))?;
    let den = rf_det(&alt(&|j| (r - 1 - j) as i64))?;
    Ok(num.div(&den))
}

fn schur_check(c: &CaseDescriptor, degree: usize, mode: Mode) -> Result<CheckResult> {
    let r = c.r;
    let xa: Vec<RatFunc> = (1..=r).map(|i| RatFunc::var(x(i))).collect();
    let a = gr_first_copy(c, xa.clone())?;
    let mut pairs = Vec::new();
    for p in partitions_upto(r, degree) {
        pairs.push((Side::F(ch_lambda(&a, &padded(&p, r))?), Side::F(schur_bialternant(&p, &xa)?)));
    }
    Ok(compare_all("ch_vs_bialternant", Some(c), pairs, mode))
}
