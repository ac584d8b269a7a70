use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use super::ops::ensure_unitary;
use crate::algebra::{Element, JordanStar};
use crate::error::{Error, Result};
use crate::linalg::{eig_normal, CMatrix};

/// Eigenvalue clustering tolerance (relative to `max(1, ‖a‖₂)`).
pub const CLUSTER_TOL: f64 = 1e-8;
/// Eigenvalues closer than this are flagged as confluent.
pub const CONFLUENT_GAP: f64 = 1e-6;

/// Spectral resolution `a = Σ λᵢ pᵢ` inside the subalgebra generated by `a`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SpectralData {
    pub eigenvalues: Vec<C64>,
    pub projections: Vec<Element>,
    pub generator: Element,
    /// `‖a − Σ λᵢ pᵢ‖₂`.
    pub residual: f64,
    /// Smallest distance between distinct cluster centres (`∞` for one cluster).
    pub min_gap: f64,
    /// Set when two eigenvalues are closer than [`CONFLUENT_GAP`]; the
    /// projections are then less accurate.
    pub confluent: bool,
}

impl SpectralData {
    /// `f(a) = Σ f(λᵢ) pᵢ`.
    pub fn apply(&self, f: impl Fn(C64) -> C64) -> Element {
        let mut out = Element::zeros(self.generator.dim());
        for (l, p) in self.eigenvalues.iter().zip(&self.projections) {
            out.axpy(f(*l), p);
        }
        out
    }
}

/// Spectral decomposition of a normal element.
///
/// Builds an orthonormal basis of the unital subalgebra generated by `a` and
/// `a*`, diagonalizes multiplication by `a` there and clusters the
/// eigenvalues. Each spectral projection is the component of `1` in its
/// cluster's eigenspace, polished by Newton iteration. Round-off can pull
/// directions outside the subalgebra into the Krylov basis; `1` has no
/// component along them, so they drop out.
pub fn spectral_decompose<A: JordanStar + ?Sized>(alg: &A, a: &Element) -> Result<SpectralData> {
    alg.check(a)?;
    let scale = a.coord_norm().max(1.0);
    let astar = alg.star(a);

    // normality: a and a* operator commute
    let d = alg.dim();
    let probes = normality_probes(d);
    let mut defect: f64 = 0.0;
    for c in &probes {
        let lhs = alg.jordan(&alg.jordan(a, c), &astar);
        let rhs = alg.jordan(a, &alg.jordan(c, &astar));
        defect = defect.max((&lhs - &rhs).coord_norm() / c.coord_norm());
    }
    if defect > 1e-9 * scale * scale {
        return Err(Error::NotNormalElement(defect));
    }

    // Krylov on the shifted b = a − μ1 keeps clustered spectra resolvable:
    // the round-off of b∘w then scales with the spread, not with ‖a‖
    let one = alg.one();
    let mu = one.dot(a) / one.dot(&one);
    let mut shifted = a.clone();
    shifted.axpy(-mu, &one);
    let basis = generated_subalgebra(alg, &shifted, &alg.star(&shifted));
    let k = basis.len();
    let q = CMatrix::from_columns(d, &basis.iter().map(|b| b.coords().to_vec()).collect::<Vec<_>>());
    let images: Vec<Vec<C64>> = basis.iter().map(|b| alg.jordan(&shifted, b).into_coords()).collect();
    let bq = CMatrix::from_columns(d, &images);
    let mut eig = eig_normal(&q.adjoint().matmul(&bq))?;
    for l in eig.values.iter_mut() {
        *l += mu;
    }

    // single-linkage clustering in the complex plane
    let tol = CLUSTER_TOL * scale;
    let mut cluster_of: Vec<usize> = (0..k).collect();
    for i in 0..k {
        for j in 0..i {
            if (eig.values[i] - eig.values[j]).norm() <= tol {
                let (from, to) = (cluster_of[i], cluster_of[j]);
                for c in cluster_of.iter_mut() {
                    if *c == from {
                        *c = to;
                    }
                }
            }
        }
    }
    let mut ids: Vec<usize> = cluster_of.clone();
    ids.sort_unstable();
    ids.dedup();
    let groups: Vec<Vec<usize>> = ids.iter().map(|&id| (0..k).filter(|&i| cluster_of[i] == id).collect()).collect();

    // P_c is the component of 1 in the span of cluster c's eigenvectors;
    // clusters carried only by round-off directions get P_c ≈ 0
    let one_norm = one.coord_norm();
    let mut eigenvalues = Vec::new();
    let mut projections = Vec::new();
    for g in &groups {
        let mut p = Element::zeros(d);
        for &j in g {
            let e = Element::new(q.mul_vec(&eig.vectors.column(j)));
            let c = e.dot(&one);
            p.axpy(c, &e);
        }
        if p.coord_norm() < 1e-6 * one_norm {
            continue;
        }
        let p = refine_idempotent(alg, p);
        let pp = p.dot(&p);
        if pp.re <= 0.0 || p.coord_norm() < 1e-6 * one_norm {
            continue;
        }
        let lambda = p.dot(&alg.jordan(a, &p)) / pp;
        eigenvalues.push(lambda);
        projections.push(p);
    }

    let mut recon = Element::zeros(d);
    let mut total = Element::zeros(d);
    for (l, p) in eigenvalues.iter().zip(&projections) {
        recon.axpy(*l, p);
        total += p;
    }
    let residual = (&recon - a).coord_norm().max((&total - &one).coord_norm());
    if residual > 1e-7 * scale {
        return Err(Error::NoConvergence(residual));
    }
    let mut min_gap = f64::INFINITY;
    for i in 0..eigenvalues.len() {
        for j in 0..i {
            min_gap = min_gap.min((eigenvalues[i] - eigenvalues[j]).norm());
        }
    }
    let confluent = min_gap < CONFLUENT_GAP * scale;
    Ok(SpectralData { eigenvalues, projections, generator: a.clone(), residual, min_gap, confluent })
}

/// Newton iteration `p ← 3p² − 2p³` towards the nearest idempotent of the
/// subalgebra generated by `p`.
fn refine_idempotent<A: JordanStar + ?Sized>(alg: &A, mut p: Element) -> Element {
    for _ in 0..6 {
        let p2 = alg.square(&p);
        let defect = (&p2 - &p).coord_norm();
        if defect <= 1e-15 * p.coord_norm().max(1.0) {
            break;
        }
        let p3 = alg.jordan(&p, &p2);
        p = &p2.scale_re(3.0) - &p3.scale_re(2.0);
    }
    p
}

fn normality_probes(d: usize) -> Vec<Element> {
    // fixed, dense, non-symmetric probes
    (0..3)
        .map(|t| {
            Element::new(
                (0..d)
                    .map(|i| {
                        let x = (i * 7 + t * 13 + 1) as f64;
                        C64::new((x * 0.7548776662).fract() - 0.5, (x * 0.5698402910).fract() - 0.5)
                    })
                    .collect(),
            )
        })
        .collect()
}

/// Orthonormal basis of the unital subalgebra generated by `a` and `a*`.
fn generated_subalgebra<A: JordanStar + ?Sized>(alg: &A, a: &Element, astar: &Element) -> Vec<Element> {
    let mut basis: Vec<Element> = Vec::new();
    let mut queue = vec![alg.one()];
    let mut head = 0;
    while head < queue.len() {
        let v = queue[head].clone();
        head += 1;
        let n0 = v.coord_norm();
        if n0 == 0.0 {
            continue;
        }
        let mut w = v;
        for _ in 0..2 {
            for b in &basis {
                let c = b.dot(&w);
                w.axpy(-c, b);
            }
        }
        let n = w.coord_norm();
        if n <= 1e-10 * n0 || basis.len() == alg.dim() {
            continue;
        }
        let w = w.scale_re(1.0 / n);
        queue.push(alg.jordan(a, &w));
        queue.push(alg.jordan(astar, &w));
        basis.push(w);
    }
    basis
}




/// `f(a)` for normal `a`.
pub fn functional_calculus<A: JordanStar + ?Sized>(alg: &A, a: &Element, f: impl Fn(C64) -> C64) -> Result<Element> {
    Ok(spectral_decompose(alg, a)?.apply(f))
}

/// Argument of `z` in `(cut − 2π, cut]`.
fn arg_with_cut(z: C64, cut: f64) -> f64 {
    let two_pi = 2.0 * std::f64::consts::PI;
    cut - (cut - z.arg()).rem_euclid(two_pi)
}

fn unitary_spectrum<A: JordanStar + ?Sized>(alg: &A, u: &Element, cut: Option<f64>) -> Result<SpectralData> {
    ensure_unitary(alg, u)?;
    let sd = spectral_decompose(alg, u)?;
    if cut.is_none() {
        for l in &sd.eigenvalues {
            let dist = (l + 1.0).norm();
            if dist < 1e-8 {
                return Err(Error::BranchCut(dist));
            }
        }
    }
    Ok(sd)
}

/// Self-adjoint `h` with `e^{ih} = u`, principal branch.
///
/// Without a cut angle, eigenvalues within `1e-8` of `−1` are rejected with
/// `BranchCut`. With `Some(φ)` the arguments are taken in `(φ − 2π, φ]`.
pub fn log_unitary<A: JordanStar + ?Sized>(alg: &A, u: &Element, cut: Option<f64>) -> Result<Element> {
    let sd = unitary_spectrum(alg, u, cut)?;
    let phi = cut.unwrap_or(std::f64::consts::PI);
    let h = sd.apply(|z| C64::new(arg_with_cut(z, phi), 0.0));
    Ok(alg.real_part(&h))
}

/// Principal square root of a unitary.
pub fn sqrt_unitary<A: JordanStar + ?Sized>(alg: &A, u: &Element) -> Result<Element> {
    let sd = unitary_spectrum(alg, u, None)?;
    Ok(sd.apply(|z| C64::from_polar(1.0, 0.5 * z.arg())))
}
