use serde::Serialize;

use super::structured::StructuredIsometry;
use crate::algebra::{AlgebraModel, Element, JordanStar};
use crate::calculus::{l_op, peirce_projections, tripotent_residual, LinearOperator, Linearity};
use crate::error::Result;
use crate::random::{gaussian_element, rng};

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize)]
pub struct TripleResiduals {
    /// Largest `‖{e,e,e} − e‖` over the four tripotents.
    pub tripotent: f64,
    /// `‖L(ũ₁, ũ₂)‖`.
    pub orthogonality: f64,
    /// Complex-linearity defect of `Ψ₁`.
    pub psi1_linearity: f64,
    /// Conjugate-linearity defect of `Ψ₂`.
    pub psi2_linearity: f64,
    /// `‖Ψ₁ + Ψ₂ − Ψ‖`.
    pub sum: f64,
    /// `max |‖Ψx‖ − max(‖Ψ₁x‖, ‖Ψ₂x‖)|` on samples.
    pub norm_split: f64,
}

impl TripleResiduals {
    pub fn max(&self) -> f64 {
        [self.tripotent, self.orthogonality, self.psi1_linearity, self.psi2_linearity, self.sum, self.norm_split]
            .into_iter()
            .fold(0.0, f64::max)
    }
}

/// `Ψ = Ψ₁ + Ψ₂` with `Ψ₁ = P₂(ũ₁)ΨP₂(u₁)` complex-linear and
/// `Ψ₂ = P₂(ũ₂)ΨP₂(u₂)` conjugate-linear.
#[derive(Clone, Debug)]
pub struct TripleDecomposition {
    pub u1: Element,
    pub u2: Element,
    pub u1_tilde: Element,
    pub u2_tilde: Element,
    pub psi1: LinearOperator,
    pub psi2: LinearOperator,
    pub residuals: TripleResiduals,
}

/// Splits the extension of `Σ` along `ũ₁ = U_{ω*}(p)`, `ũ₂ = U_{ω*}(1 − p)`
/// and their preimages `u_i = Φ⁻¹(·)`.
pub fn triple_decomposition(m: &AlgebraModel, n: &AlgebraModel, sigma: &StructuredIsometry, seed: u64) -> Result<TripleDecomposition> {
    let psi = sigma.psi(m, n);
    let q = &n.one() - &sigma.p;
    let omega_star = n.star(&sigma.omega);
    let u1_tilde = n.u(&omega_star, &sigma.p);
    let u2_tilde = n.u(&omega_star, &q);
    let phi_inv = sigma.phi.inverse()?;
    let u1 = phi_inv.apply(&sigma.p);
    let u2 = phi_inv.apply(&q);

    let psi1 = peirce_projections(n, &u1_tilde)?.p2.compose(&psi).compose(&peirce_projections(m, &u1)?.p2);
    let psi2 = peirce_projections(n, &u2_tilde)?.p2.compose(&psi).compose(&peirce_projections(m, &u2)?.p2);
    let psi1 = psi1.relabel_if(Linearity::ComplexLinear, 1e-9);
    let psi2 = psi2.relabel_if(Linearity::ConjugateLinear, 1e-9);

    let mut residuals = TripleResiduals {
        tripotent: [
            tripotent_residual(m, &u1),
            tripotent_residual(m, &u2),
            tripotent_residual(n, &u1_tilde),
            tripotent_residual(n, &u2_tilde),
        ]
        .into_iter()
        .fold(0.0, f64::max),
        orthogonality: l_op(n, &u1_tilde, &u2_tilde).frobenius_norm(),
        psi1_linearity: psi1.linearity_defects().0,
        psi2_linearity: psi2.linearity_defects().1,
        sum: psi1.add(&psi2).distance(&psi),
        norm_split: 0.0,
    };
    let mut r = rng(seed);
    for _ in 0..20 {
        let x = gaussian_element(m.dim(), &mut r);
        let whole = n.norm(&psi.apply(&x));
        let split = n.norm(&psi1.apply(&x)).max(n.norm(&psi2.apply(&x)));
        residuals.norm_split = residuals.norm_split.max((whole - split).abs() / m.norm(&x));
    }
    Ok(TripleDecomposition { u1, u2, u1_tilde, u2_tilde, psi1, psi2, residuals })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::Linearity;
    use crate::isometry::random_structured_isometry;

    #[test]
    fn trivial_projections() {
        let m = AlgebraModel::matrix(2).unwrap();
        let id = triple_decomposition(&m, &m, &StructuredIsometry::identity(&m), 1).unwrap();
        assert_eq!(id.u2, m.zero());
        assert!(id.psi2.frobenius_norm() < 1e-14);
        assert!(id.residuals.max() < 1e-12, "{:?}", id.residuals);
        let adj = triple_decomposition(&m, &m, &StructuredIsometry::adjoint(&m), 1).unwrap();
        assert!(adj.psi1.frobenius_norm() < 1e-14);
        assert_eq!(adj.psi2.linearity(), Linearity::ConjugateLinear);
    }

    #[test]
    fn block_split_on_direct_sum() {
        let m = AlgebraModel::from_spec(&"matrix:2+matrix:3".parse().unwrap()).unwrap();
        let mut s = random_structured_isometry(&m, &m, 4).unwrap();
        s.p = m.inject(0, &m.summands()[0].model.one());
        let d = triple_decomposition(&m, &m, &s, 2).unwrap();
        assert!(d.residuals.max() < 1e-9, "{:?}", d.residuals);
        assert!(d.psi1.frobenius_norm() > 1.0 && d.psi2.frobenius_norm() > 1.0);
    }
}
