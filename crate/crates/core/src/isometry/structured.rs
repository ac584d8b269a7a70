use rand::Rng;

use super::jstar::{random_jordan_star_isomorphism, JordanStarIsomorphism};
use crate::algebra::{AlgebraModel, Element, JordanStar};
use crate::calculus::{ensure_unitary, LinearOperator, Linearity};
use crate::error::Result;
use crate::random::{random_unitary_with, rng};

/// A map on unitaries, consumed as a black box.
pub type Oracle<'a> = dyn Fn(&Element) -> Element + Sync + 'a;

/// `Δ(u) = U_{ω*}(p∘Φ(u) + (1 − p)∘Φ(u*))`.
#[derive(Clone, Debug)]
pub struct StructuredIsometry {
    pub omega: Element,
    pub p: Element,
    pub phi: JordanStarIsomorphism,
}

impl StructuredIsometry {
    /// `Δ = id`.
    pub fn identity(m: &AlgebraModel) -> Self {
        StructuredIsometry { omega: m.one(), p: m.one(), phi: JordanStarIsomorphism::identity(m) }
    }

    /// `Δ(u) = u*`.
    pub fn adjoint(m: &AlgebraModel) -> Self {
        StructuredIsometry { omega: m.one(), p: m.zero(), phi: JordanStarIsomorphism::identity(m) }
    }

    /// The real-linear formula, valid on all of `M`.
    pub fn extension(&self, m: &AlgebraModel, n: &AlgebraModel, x: &Element) -> Element {
        let y = self.phi.apply(x);
        let z = self.phi.apply(&m.star(x));
        let mut w = n.jordan(&self.p, &y);
        let q = &n.one() - &self.p;
        w += &n.jordan(&q, &z);
        n.u(&n.star(&self.omega), &w)
    }

    /// `Δ(u)`; `u` must be unitary.
    pub fn apply(&self, m: &AlgebraModel, n: &AlgebraModel, u: &Element) -> Result<Element> {
        ensure_unitary(m, u)?;
        Ok(self.extension(m, n, u))
    }

    /// `Ψ` as a real-linear operator.
    pub fn psi(&self, m: &AlgebraModel, n: &AlgebraModel) -> LinearOperator {
        LinearOperator::real_from_fn(m.dim(), n.dim(), Linearity::RealLinear, |x| self.extension(m, n, x))
    }

    /// Black-box view of `Δ`.
    pub fn oracle<'a>(&'a self, m: &'a AlgebraModel, n: &'a AlgebraModel) -> impl Fn(&Element) -> Element + Sync + 'a {
        move |u: &Element| self.extension(m, n, u)
    }
}

/// `apply_structured(Σ, u)`.
pub fn apply_structured(s: &StructuredIsometry, m: &AlgebraModel, n: &AlgebraModel, u: &Element) -> Result<Element> {
    s.apply(m, n, u)
}

/// Random `(ω, p, Φ)` with `p` drawn from the central projections of `N`.
pub fn random_structured_isometry(m: &AlgebraModel, n: &AlgebraModel, seed: u64) -> Result<StructuredIsometry> {
    let phi = random_jordan_star_isomorphism(m, n, seed)?;
    let mut r = rng(seed ^ 0x00ff_00ff_00ff_00ff);
    let omega = random_unitary_with(n, &mut r);
    let cps = n.central_projections();
    let p = cps[r.random_range(0..cps.len())].clone();
    Ok(StructuredIsometry { omega, p, phi })
}
