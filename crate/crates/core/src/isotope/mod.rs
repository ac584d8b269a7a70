//! Isotopes `M(u)`, unitary logarithms and the short-distance constructions.

use std::f64::consts::PI;

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::algebra::{Element, JordanStar};
use crate::calculus::{ensure_unitary, exp_element, log_unitary};
use crate::error::{Error, Result};

/// Safety margin on `‖u − v‖ < 2`.
pub const TOO_FAR_MARGIN: f64 = 1e-9;

/// The `u`-isotope: same space and norm, product `x∘_u y = {x, u, y}`,
/// involution `x^{*u} = {u, x, u}`, unit `u`.
#[derive(Clone, Debug)]
pub struct IsotopeModel<'a, A: JordanStar + ?Sized> {
    base: &'a A,
    u: Element,
    u_star: Element,
}

impl<'a, A: JordanStar + ?Sized> IsotopeModel<'a, A> {
    pub fn new(base: &'a A, u: &Element) -> Result<Self> {
        ensure_unitary(base, u)?;
        Ok(IsotopeModel { base, u: u.clone(), u_star: base.star(u) })
    }

    pub fn base(&self) -> &A {
        self.base
    }

    pub fn unit(&self) -> &Element {
        &self.u
    }
}

impl<A: JordanStar + ?Sized> JordanStar for IsotopeModel<'_, A> {
    fn dim(&self) -> usize {
        self.base.dim()
    }

    fn jordan(&self, x: &Element, y: &Element) -> Element {
        // {x, u, y} with u* precomputed
        let us = &self.u_star;
        let b = self.base;
        let mut out = b.jordan(&b.jordan(x, us), y);
        out += &b.jordan(&b.jordan(y, us), x);
        out -= &b.jordan(&b.jordan(x, y), us);
        out
    }

    fn star(&self, x: &Element) -> Element {
        self.base.u(&self.u, &self.base.star(x))
    }

    fn one(&self) -> Element {
        self.u.clone()
    }

    fn norm(&self, a: &Element) -> f64 {
        self.base.norm(a)
    }
}

/// `isotope(M, u)`.
pub fn isotope<'a, A: JordanStar + ?Sized>(base: &'a A, u: &Element) -> Result<IsotopeModel<'a, A>> {
    IsotopeModel::new(base, u)
}

/// Self-adjoint `h` with `e^{ih} = u`; eigenvalues of `h` lie in `(−π, π]`.
pub fn unitary_log<A: JordanStar + ?Sized>(alg: &A, u: &Element) -> Result<Element> {
    log_unitary(alg, u, Some(PI))
}

/// `e^{ih}` computed in the isotope `M(u)`.
pub fn exp_in_isotope<A: JordanStar + ?Sized>(alg: &A, u: &Element, h: &Element) -> Result<Element> {
    let iso = IsotopeModel::new(alg, u)?;
    Ok(exp_element(&iso, &h.scale(C64::new(0.0, 1.0))))
}

/// Self-adjoint `h` of `M(u)` with `v = e^{ih}` in `M(u)`.
pub fn short_distance_log<A: JordanStar + ?Sized>(alg: &A, u: &Element, v: &Element) -> Result<Element> {
    ensure_unitary(alg, u)?;
    ensure_unitary(alg, v)?;
    let d = alg.distance(u, v);
    if d >= 2.0 - TOO_FAR_MARGIN {
        return Err(Error::TooFar(d));
    }
    let iso = IsotopeModel::new(alg, u)?;
    let h = log_unitary(&iso, v, None).map_err(|e| match e {
        Error::BranchCut(_) => Error::TooFar(d),
        other => other,
    })?;
    Ok(iso.real_part(&h))
}

/// Unitary `w` with `U_w(u*) = v`: the exponential of `ih/2` in `M(u)`.
pub fn midpoint_witness<A: JordanStar + ?Sized>(alg: &A, u: &Element, v: &Element) -> Result<Element> {
    let h = short_distance_log(alg, u, v)?;
    let iso = IsotopeModel::new(alg, u)?;
    Ok(exp_element(&iso, &h.scale(C64::new(0.0, 0.5))))
}

/// `√2·√(1 − cos(t₀/2))`, the distance bound for the midpoint when
/// `‖u − v‖ = √2·√(1 − cos t₀)`.
pub fn midpoint_bound(t0: f64) -> f64 {
    std::f64::consts::SQRT_2 * (1.0 - (t0 / 2.0).cos()).sqrt()
}

/// `t₀ ∈ [0, π]` with `‖u − v‖ = √2·√(1 − cos t₀)`.
pub fn angle_from_distance(d: f64) -> f64 {
    (1.0 - d * d / 2.0).clamp(-1.0, 1.0).acos()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "kebab-case")]
pub enum RigidityOutcome {
    /// Hypotheses hold; `distance = ‖w − u‖`, which the lemma forces to 0.
    Holds { distance: f64, fixed_point_residual: f64 },
    HypothesisNotMet { fixed_point_residual: f64, distance: f64 },
}

impl RigidityOutcome {
    pub fn distance(&self) -> f64 {
        match self {
            RigidityOutcome::Holds { distance, .. } | RigidityOutcome::HypothesisNotMet { distance, .. } => *distance,
        }
    }
}

/// Checks `U_w(u*) = u` and `‖u − w‖ < 2`, then reports `‖w − u‖`.
pub fn rigidity_residual<A: JordanStar + ?Sized>(alg: &A, u: &Element, w: &Element) -> Result<RigidityOutcome> {
    ensure_unitary(alg, u)?;
    ensure_unitary(alg, w)?;
    let fixed = alg.distance(&alg.u(w, &alg.star(u)), u);
    let distance = alg.distance(u, w);
    if fixed > 1e-8 || distance >= 2.0 - TOO_FAR_MARGIN {
        Ok(RigidityOutcome::HypothesisNotMet { fixed_point_residual: fixed, distance })
    } else {
        Ok(RigidityOutcome::Holds { distance, fixed_point_residual: fixed })
    }
}
