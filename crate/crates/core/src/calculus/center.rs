use num_complex::Complex64 as C64;

use super::spectral::spectral_decompose;
use crate::algebra::{AlgebraModel, Element, JordanStar};
use crate::linalg::{eig_hermitian, CMatrix};

/// Basis of the center `{a : [M_a, M_x] = 0 for all x}`.
///
/// The center is the null space of the Gram matrix
/// `G_ik = Σ_j ⟨[M_i, M_j], [M_k, M_j]⟩` of the basis commutators.
pub fn center_basis(m: &AlgebraModel) -> Vec<Element> {
    let d = m.dim();
    let mults: Vec<CMatrix> = (0..d).map(|j| m.mult_matrix(&Element::basis(d, j))).collect();
    let mut g = CMatrix::zeros(d, d);
    for mj in &mults {
        let comms: Vec<CMatrix> = mults.iter().map(|mi| &mi.matmul(mj) - &mj.matmul(mi)).collect();
        for i in 0..d {
            for k in i..d {
                let s: C64 = comms[i].data().iter().zip(comms[k].data()).map(|(a, b)| a.conj() * b).sum();
                g[(i, k)] += s;
                if k != i {
                    g[(k, i)] += s.conj();
                }
            }
        }
    }
    let e = eig_hermitian(&g).expect("commutator Gram matrix is Hermitian");
    let top = e.values.last().copied().unwrap_or(0.0).max(1.0);
    (0..d)
        .filter(|&j| e.values[j] <= 1e-9 * top)
        .map(|j| Element::new(e.vectors.column(j)))
        .collect()
}

/// Minimal central projections of a model without summand structure.
pub fn minimal_central_projections(m: &AlgebraModel) -> Vec<Element> {
    let basis = center_basis(m);
    if basis.len() <= 1 {
        return vec![m.one()];
    }
    // a generic self-adjoint central element separates the minimal projections
    let mut c = Element::zeros(m.dim());
    for (t, z) in basis.iter().enumerate() {
        let w = 0.5 + ((t as f64 + 1.0) * 0.618_033_988_749_894_9).fract();
        c.axpy(C64::new(w, 0.0), &m.real_part(z));
        c.axpy(C64::new(0.5 * w * w, 0.0), &m.imag_part(z));
    }
    match spectral_decompose(m, &c) {
        Ok(sd) => sd.projections.iter().map(|p| m.real_part(p)).collect(),
        Err(_) => vec![m.one()],
    }
}

/// All central projections: sums of subsets of the minimal ones (direct sums
/// combine the central projections of their summands).
pub fn compute_central_projections(m: &AlgebraModel) -> Vec<Element> {
    if !m.summands().is_empty() {
        let mut acc = vec![Element::zeros(m.dim())];
        for (idx, s) in m.summands().iter().enumerate() {
            let parts = s.model.central_projections();
            let mut next = Vec::with_capacity(acc.len() * parts.len());
            for p in parts {
                let inj = m.inject(idx, p);
                for a in &acc {
                    next.push(a + &inj);
                }
            }
            acc = next;
        }
        acc.sort_by(|a, b| a.coord_norm().total_cmp(&b.coord_norm()));
        return acc;
    }
    let minimal = minimal_central_projections(m);
    let r = minimal.len().min(16);
    let mut out = Vec::with_capacity(1 << r);
    for mask in 0u32..(1 << r) {
        let mut p = Element::zeros(m.dim());
        for (t, q) in minimal.iter().enumerate().take(r) {
            if mask & (1 << t) != 0 {
                p += q;
            }
        }
        out.push(p);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factors_have_trivial_center() {
        for m in [AlgebraModel::matrix(3).unwrap(), AlgebraModel::spin(4).unwrap()] {
            assert_eq!(center_basis(&m).len(), 1);
            let cps = m.central_projections();
            assert_eq!(cps.len(), 2);
            assert!(cps[0].coord_norm() < 1e-14);
            assert!((&cps[1] - &m.one()).coord_norm() < 1e-12);
        }
    }

    #[test]
    fn direct_sum_blocks() {
        let a = AlgebraModel::matrix(2).unwrap();
        let m = AlgebraModel::direct_sum(vec![a.clone(), a]).unwrap();
        assert_eq!(center_basis(&m).len(), 2);
        let cps = m.central_projections();
        assert_eq!(cps.len(), 4);
        let block = m.inject(0, &AlgebraModel::matrix(2).unwrap().one());
        assert!(cps.iter().any(|p| (p - &block).coord_norm() < 1e-12));
    }

    #[test]
    fn generic_route_on_direct_sum() {
        // the Gram route must agree with the summand shortcut
        let m = AlgebraModel::direct_sum(vec![AlgebraModel::matrix(1).unwrap(), AlgebraModel::spin(2).unwrap()]).unwrap();
        let mins = minimal_central_projections(&m);
        assert_eq!(mins.len(), 2);
        for p in &mins {
            assert!((&m.square(p) - p).coord_norm() < 1e-10);
        }
    }
}
