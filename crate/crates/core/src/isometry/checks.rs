use num_complex::Complex64 as C64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::structured::Oracle;
use crate::algebra::{AlgebraModel, Element, JordanStar};
use crate::calculus::{commutator_residual, ensure_unitary, spectral_decompose};
use crate::error::{Error, Result};
use crate::isotope::{short_distance_log, IsotopeModel};
use crate::report::Verdict;

/// Acceptance window for membership in `L_{u,v}`.
pub const MEMBERSHIP_WINDOW: f64 = 1e-7;
/// Slack allowed in the condition-B inequality.
pub const CONDITION_B_SLACK: f64 = 1e-7;
/// `‖w − v‖` above which a member counts as nontrivial.
pub const NONTRIVIAL_GAP: f64 = 1e-6;

fn ensure_close(alg: &AlgebraModel, u: &Element, v: &Element) -> Result<f64> {
    ensure_unitary(alg, u)?;
    ensure_unitary(alg, v)?;
    let d = alg.distance(u, v);
    if d < 0.5 {
        Ok(d)
    } else {
        Err(Error::HypothesisNotMet(format!("‖u − v‖ = {d} is not < 1/2")))
    }
}

/// `‖Δ(U_v(u*)) − U_{Δ(v)}(Δ(u)*)‖` for `‖u − v‖ < 1/2`.
pub fn verify_inverted_triple_preservation(
    m: &AlgebraModel,
    n: &AlgebraModel,
    delta: &Oracle,
    u: &Element,
    v: &Element,
) -> Result<f64> {
    ensure_close(m, u, v)?;
    let lhs = delta(&m.u(v, &m.star(u)));
    let (du, dv) = (delta(u), delta(v));
    Ok(n.distance(&lhs, &n.u(&dv, &n.star(&du))))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConditionBReport {
    /// `‖u − v‖`.
    pub distance: f64,
    /// `K = 2 − 2‖u − v‖`.
    pub k: f64,
    pub candidates: usize,
    /// Members of `L_{u,v}`, counting `v`.
    pub members: usize,
    pub nontrivial: usize,
    /// `min (‖U_v(w*) − w‖ − K‖w − v‖)` over members.
    pub min_slack: f64,
    pub violations: usize,
    pub verdict: Verdict,
}

fn condition_b_core(alg: &AlgebraModel, u: &Element, v: &Element, d: f64, candidates: &[Element]) -> ConditionBReport {
    let k = 2.0 - 2.0 * d;
    let x = alg.u(v, &alg.star(u));
    let mut rep = ConditionBReport {
        distance: d,
        k,
        candidates: candidates.len(),
        members: 0,
        nontrivial: 0,
        min_slack: f64::INFINITY,
        violations: 0,
        verdict: Verdict::Pass,
    };
    let mut saw_v = false;
    for w in std::iter::once(v).chain(candidates) {
        if (alg.distance(u, w) - d).abs() > MEMBERSHIP_WINDOW || (alg.distance(&x, w) - d).abs() > MEMBERSHIP_WINDOW {
            continue;
        }
        let gap = alg.distance(w, v);
        if gap <= NONTRIVIAL_GAP {
            // `v` and its numerical copies count once
            if saw_v {
                continue;
            }
            saw_v = true;
        } else {
            rep.nontrivial += 1;
        }
        rep.members += 1;
        let slack = alg.distance(&alg.u(v, &alg.star(w)), w) - k * gap;
        rep.min_slack = rep.min_slack.min(slack);
        if slack < -CONDITION_B_SLACK {
            rep.violations += 1;
        }
    }
    rep.verdict = if rep.violations > 0 {
        Verdict::Fail
    } else if rep.nontrivial == 0 {
        Verdict::Warn
    } else {
        Verdict::Pass
    };
    rep
}

/// Filters `candidates` to `L_{u,v}` and checks
/// `‖U_v(w*) − w‖ ≥ (2 − 2‖u − v‖)‖w − v‖` on every member.
pub fn check_condition_b(alg: &AlgebraModel, u: &Element, v: &Element, candidates: &[Element]) -> Result<ConditionBReport> {
    let d = ensure_close(alg, u, v)?;
    Ok(condition_b_core(alg, u, v, d, candidates))
}

/// Perturbations of `v` in the commutative subalgebra of `M(u)` generated
/// by `v`, biased towards `L_{u,v}`.
///
/// With `v = Σ e^{iθ_j} p_j` in `M(u)` and `θ = max |θ_j|`, the members of
/// that subalgebra lying in `L_{u,v}` are `Σ e^{iψ_j} p_j` with `ψ_j = θ_j`
/// where `|θ_j| = θ` and otherwise
/// `ψ_j ∈ [max(−θ, 2θ_j − θ), min(θ, 2θ_j + θ)]`. Proposals overshoot these
/// intervals so that the filter has something to reject.
pub fn sample_condition_b_candidates<R: Rng + ?Sized>(
    alg: &AlgebraModel,
    u: &Element,
    v: &Element,
    count: usize,
    rng: &mut R,
) -> Result<Vec<Element>> {
    ensure_close(alg, u, v)?;
    let iso = IsotopeModel::new(alg, u)?;
    let h = short_distance_log(alg, u, v)?;
    let sd = spectral_decompose(&iso, &h)?;
    let thetas: Vec<f64> = sd.eigenvalues.iter().map(|z| z.re).collect();
    let top = thetas.iter().fold(0.0f64, |a, t| a.max(t.abs()));
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let wild = rng.random_bool(0.2);
        let mut w = Element::zeros(alg.dim());
        for (t, p) in thetas.iter().zip(&sd.projections) {
            let extremal = t.abs() >= top - 1e-9;
            let psi = if wild {
                t + rng.random_range(-1.0..1.0) * top.max(1e-3)
            } else if extremal {
                *t
            } else {
                let lo = (-top).max(2.0 * t - top);
                let hi = top.min(2.0 * t + top);
                let pad = 0.1 * (hi - lo);
                rng.random_range(lo - pad..=hi + pad)
            };
            w.axpy(C64::from_polar(1.0, psi), p);
        }
        out.push(w);
    }
    Ok(out)
}

/// Exhaustive grid version on the commutative model `ℂ^r`, with `u = 1`
/// and `v = (e^{iθ_1}, …, e^{iθ_r})`.
///
/// Each coordinate runs over a `grid`-point circle, `±θ_j`, and a `grid`-point
/// discretisation of its feasible interval.
pub fn scalar_condition_b_enumeration(thetas: &[f64], grid: usize) -> Result<ConditionBReport> {
    if thetas.is_empty() || grid < 2 {
        return Err(Error::InvalidParameter("need at least one angle and grid ≥ 2".into()));
    }
    let alg = if thetas.len() == 1 {
        AlgebraModel::matrix(1)?
    } else {
        AlgebraModel::direct_sum(vec![AlgebraModel::matrix(1)?; thetas.len()])?
    };
    let u = alg.one();
    let v = Element::new(thetas.iter().map(|&t| C64::from_polar(1.0, t)).collect());
    let d = ensure_close(&alg, &u, &v)?;
    let top = thetas.iter().fold(0.0f64, |a, t| a.max(t.abs()));
    let axes: Vec<Vec<f64>> = thetas
        .iter()
        .map(|&t| {
            let mut a: Vec<f64> = (0..grid).map(|k| -std::f64::consts::PI + 2.0 * std::f64::consts::PI * k as f64 / grid as f64).collect();
            a.push(t);
            a.push(-t);
            let lo = (-top).max(2.0 * t - top);
            let hi = top.min(2.0 * t + top);
            a.extend((0..grid).map(|k| lo + (hi - lo) * k as f64 / (grid - 1) as f64));
            a
        })
        .collect();
    let mut candidates = Vec::new();
    let mut idx = vec![0usize; thetas.len()];
    loop {
        candidates.push(Element::new(idx.iter().zip(&axes).map(|(&i, a)| C64::from_polar(1.0, a[i])).collect()));
        let mut k = 0;
        while k < idx.len() {
            idx[k] += 1;
            if idx[k] < axes[k].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
        if k == idx.len() {
            break;
        }
    }
    Ok(condition_b_core(&alg, &u, &v, d, &candidates))
}

/// `u_k = u∘e^{ik(s−t)h/2^m}` for `k = 0..=2^{m+1}`.
#[derive(Clone, Debug)]
pub struct Chain {
    pub points: Vec<Element>,
    pub m: u32,
}

impl Chain {
    /// Index `2^m` of the middle point.
    pub fn middle(&self) -> usize {
        1 << self.m
    }
}

/// Smallest `m` with `e^{x/2^m} − 1 < 1/2`.
pub fn minimal_chain_depth(x: f64) -> u32 {
    let mut m = 0;
    while (x / f64::powi(2.0, m as i32)).exp() - 1.0 >= 0.5 && m < 60 {
        m += 1;
    }
    m
}

/// Subdivides the path from `u` to `u∘e^{i(s−t)h}` into steps short enough
/// for the preservation theorem.
pub fn chain_subdivide(alg: &AlgebraModel, u: &Element, h: &Element, s: f64, t: f64) -> Result<Chain> {
    ensure_unitary(alg, u)?;
    if alg.distance(&alg.star(h), h) > 1e-9 * alg.norm(h).max(1.0) {
        return Err(Error::NotHermitian(alg.distance(&alg.star(h), h)));
    }
    let basis: Vec<Element> = (0..alg.dim()).map(|k| Element::basis(alg.dim(), k)).collect();
    let comm = commutator_residual(alg, u, h, &basis);
    if comm > 1e-8 * alg.norm(h).max(1.0) {
        return Err(Error::HypothesisNotMet(format!("u and h do not operator commute ({comm:e})")));
    }
    let x = ((s - t) * alg.norm(h)).abs();
    let m = minimal_chain_depth(x);
    let step = (s - t) / f64::powi(2.0, m as i32);
    let sd = spectral_decompose(alg, h)?;
    let points = (0..=(2usize << m))
        .map(|k| {
            let e = sd.apply(|l| C64::from_polar(1.0, k as f64 * step * l.re));
            alg.jordan(u, &e)
        })
        .collect();
    Ok(Chain { points, m })
}

/// `max_k ‖U_{u_{k+1}}(u_k*) − u_{k+2}‖`.
pub fn chain_hypothesis_residual(alg: &AlgebraModel, chain: &Chain) -> f64 {
    chain
        .points
        .windows(3)
        .map(|w| alg.distance(&alg.u(&w[1], &alg.star(&w[0])), &w[2]))
        .fold(0.0, f64::max)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DoublingReport {
    /// `‖Δ(U_{u_{2^m}}(u₀*)) − U_{Δ(u_{2^m})}(Δ(u₀)*)‖`.
    pub endpoint: f64,
    /// Largest preservation residual over consecutive links.
    pub links: f64,
    pub hypothesis: f64,
    pub m: u32,
}

/// Checks the chain hypotheses, then the doubling identity at the endpoints.
pub fn doubling_check(m: &AlgebraModel, n: &AlgebraModel, delta: &Oracle, chain: &Chain) -> Result<DoublingReport> {
    let hypothesis = chain_hypothesis_residual(m, chain);
    if hypothesis > 1e-8 {
        return Err(Error::HypothesisNotMet(format!("chain identity residual {hypothesis:e}")));
    }
    let mut links = 0.0f64;
    for w in chain.points.windows(2) {
        links = links.max(verify_inverted_triple_preservation(m, n, delta, &w[0], &w[1])?);
    }
    let (u0, uj) = (&chain.points[0], &chain.points[chain.middle()]);
    let lhs = delta(&m.u(uj, &m.star(u0)));
    let endpoint = n.distance(&lhs, &n.u(&delta(uj), &n.star(&delta(u0))));
    Ok(DoublingReport { endpoint, links, hypothesis, m: chain.m })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::isometry::random_structured_isometry;
    use crate::random::{random_self_adjoint, random_unitary, random_unitary_near, rng};
    use std::f64::consts::PI;

    #[test]
    fn depth_of_half_turn() {
        assert_eq!(minimal_chain_depth(PI), 3);
        assert_eq!(minimal_chain_depth(0.0), 0);
    }

    #[test]
    fn scalar_chain() {
        let m = AlgebraModel::matrix(1).unwrap();
        let c = chain_subdivide(&m, &m.one(), &m.one(), PI, 0.0).unwrap();
        assert_eq!(c.m, 3);
        assert_eq!(c.points.len(), 17);
        assert!((c.points[8].coords()[0] - C64::new(-1.0, 0.0)).norm() < 1e-14);
        assert!(chain_hypothesis_residual(&m, &c) < 1e-14);
    }

    #[test]
    fn constant_chain() {
        let m = AlgebraModel::matrix(2).unwrap();
        let h = random_self_adjoint(&m, 1, 1.0);
        let c = chain_subdivide(&m, &m.one(), &h, 0.4, 0.4).unwrap();
        assert_eq!(c.points.len(), 3);
        assert!(c.points.iter().all(|p| m.distance(p, &m.one()) < 1e-14));
    }

    #[test]
    fn identity_and_adjoint_preserve() {
        let m = AlgebraModel::matrix(3).unwrap();
        let u = random_unitary(&m, 3);
        let v = random_unitary_near(&m, &u, &mut rng(4), 0.4).unwrap();
        let id = |x: &Element| x.clone();
        let adj = |x: &Element| m.star(x);
        assert!(verify_inverted_triple_preservation(&m, &m, &id, &u, &v).unwrap() < 1e-14);
        assert!(verify_inverted_triple_preservation(&m, &m, &adj, &u, &v).unwrap() < 1e-13);
        assert!(matches!(
            verify_inverted_triple_preservation(&m, &m, &id, &u, &u.scale_re(-1.0)),
            Err(Error::HypothesisNotMet(_))
        ));
    }

    #[test]
    fn scalar_enumeration() {
        let one = scalar_condition_b_enumeration(&[0.3], 24).unwrap();
        assert_eq!(one.members, 1);
        assert_eq!(one.verdict, Verdict::Warn);
        let three = scalar_condition_b_enumeration(&[0.3, 0.1, -0.05], 6).unwrap();
        assert!(three.members >= 3, "{three:?}");
        assert_eq!(three.violations, 0);
    }

    #[test]
    fn sampled_members_on_matrix() {
        let m = AlgebraModel::matrix(3).unwrap();
        let u = random_unitary(&m, 8);
        let v = random_unitary_near(&m, &u, &mut rng(9), 0.4).unwrap();
        let cands = sample_condition_b_candidates(&m, &u, &v, 100, &mut rng(1)).unwrap();
        let rep = check_condition_b(&m, &u, &v, &cands).unwrap();
        assert!(rep.nontrivial > 0 && rep.violations == 0, "{rep:?}");
        assert!(rep.members < rep.candidates + 1);
    }

    #[test]
    fn doubling_for_structured_map() {
        let m = AlgebraModel::matrix(2).unwrap();
        let s = random_structured_isometry(&m, &m, 2).unwrap();
        let delta = s.oracle(&m, &m);
        let h = random_self_adjoint(&m, 5, 1.0);
        let t = 0.3;
        let u = crate::calculus::exp_element(&m, &h.scale(C64::new(0.0, t)));
        let c = chain_subdivide(&m, &u, &h, 7.0, t).unwrap();
        let r = doubling_check(&m, &m, &delta, &c).unwrap();
        assert!(r.endpoint < 1e-9 && r.links < 1e-9, "{r:?}");
    }
}
