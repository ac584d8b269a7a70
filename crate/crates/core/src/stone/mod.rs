//! One-parameter unitary groups: the group law `U_{u(t)}(u(s)) = u(2t + s)`,
//! recovery of the generator `h` with `u(t) = e^{ith}`, and the derivation
//! `δ` with `U_{u(t)} = e^{tδ}`.

use num_complex::Complex64 as C64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{Element, JordanStar};
use crate::calculus::{exp_element, log_unitary, triple_derivation_check, u_op, unitary_residual, LinearOperator};
use crate::error::{Error, Result};
use crate::linalg::normal_matrix_function;
use crate::random::rng;

/// Largest group-law residual accepted before generator recovery.
pub const GROUP_LAW_TOL: f64 = 1e-7;
/// Tolerance of the validation `sup_t ‖u(t) − e^{ith}‖`.
pub const VALIDATION_TOL: f64 = 1e-7;
/// Initial step for the logarithm.
pub const INITIAL_STEP: f64 = 0.1;
/// Halvings of the step before giving up.
pub const MAX_STEP_HALVINGS: usize = 10;

/// `t ↦ u(t)` on `[−T, T]`.
pub struct UnitaryPath<'a> {
    f: Box<dyn Fn(f64) -> Element + Send + Sync + 'a>,
    half_width: f64,
}

impl std::fmt::Debug for UnitaryPath<'_> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("UnitaryPath").field("half_width", &self.half_width).finish_non_exhaustive()
    }
}

/// Deliberate group-law violations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Fault {
    /// `e^{ith}` for `t ≥ 0`, `1` otherwise.
    HalfLine,
    /// `e^{it|t|h}`.
    TimeWarp,
}

impl<'a> UnitaryPath<'a> {
    pub fn new(half_width: f64, f: impl Fn(f64) -> Element + Send + Sync + 'a) -> Self {
        UnitaryPath { f: Box::new(f), half_width }
    }

    /// `u(t) = e^{ith}`. The exponential series is used rather than the
    /// spectral resolution, whose projections lose accuracy when two
    /// eigenvalues of `h` nearly coincide.
    pub fn planted<A: JordanStar + Sync + ?Sized>(alg: &'a A, h: &Element, half_width: f64) -> Result<Self> {
        alg.check(h)?;
        let ih = h.scale(C64::new(0.0, 1.0));
        Ok(Self::new(half_width, move |t| exp_element(alg, &ih.scale_re(t))))
    }

    /// `u ≡ 1`.
    pub fn constant(one: Element, half_width: f64) -> Self {
        Self::new(half_width, move |_| one.clone())
    }

    /// A planted path corrupted by `fault`.
    pub fn faulty<A: JordanStar + Sync + ?Sized>(alg: &'a A, h: &Element, half_width: f64, fault: Fault) -> Result<Self> {
        alg.check(h)?;
        let ih = h.scale(C64::new(0.0, 1.0));
        Ok(Self::new(half_width, move |t| match fault {
            Fault::HalfLine if t < 0.0 => alg.one(),
            Fault::HalfLine => exp_element(alg, &ih.scale_re(t)),
            Fault::TimeWarp => exp_element(alg, &ih.scale_re(t * t.abs())),
        }))
    }

    /// `t ↦ g(u(t))`.
    pub fn mapped(self, g: impl Fn(&Element) -> Element + Send + Sync + 'a) -> Self {
        let UnitaryPath { f, half_width } = self;
        Self::new(half_width, move |t| g(&f(t)))
    }

    pub fn half_width(&self) -> f64 {
        self.half_width
    }

    pub fn eval(&self, t: f64) -> Result<Element> {
        if t.abs() > self.half_width * (1.0 + 1e-12) {
            return Err(Error::DomainExceeded { t, half_width: self.half_width });
        }
        Ok((self.f)(t))
    }
}

/// `‖U_{u(t)}(u(s)) − u(2t + s)‖`.
pub fn group_law_residual<A: JordanStar + ?Sized>(alg: &A, path: &UnitaryPath, t: f64, s: f64) -> Result<f64> {
    let lhs = alg.u(&path.eval(t)?, &path.eval(s)?);
    Ok(alg.distance(&lhs, &path.eval(2.0 * t + s)?))
}

/// Largest group-law residual over a fixed grid and `samples` random pairs,
/// together with `‖u(0) − 1‖` and the unitarity of the sampled points.
pub fn verify_group_law<A: JordanStar + ?Sized>(alg: &A, path: &UnitaryPath, samples: usize, seed: u64) -> Result<f64> {
    let w = path.half_width() / 3.0;
    let mut pairs = vec![(w, -w), (-w, w), (w, w), (-w, -w), (w / 2.0, 0.0), (0.0, w)];
    let mut r = rng(seed);
    pairs.extend((0..samples).map(|_| (r.random_range(-w..=w), r.random_range(-w..=w))));
    let mut worst = alg.distance(&path.eval(0.0)?, &alg.one());
    for (t, s) in pairs {
        worst = worst.max(group_law_residual(alg, path, t, s)?);
        worst = worst.max(unitary_residual(alg, &path.eval(t)?));
    }
    Ok(worst)
}

/// `max_{n ≤ n_max} ‖u(t)ⁿ − u(nt)‖`.
pub fn power_law_residual<A: JordanStar + ?Sized>(alg: &A, path: &UnitaryPath, t: f64, n_max: u32) -> Result<f64> {
    let u = path.eval(t)?;
    let mut worst = 0.0f64;
    for n in 1..=n_max {
        worst = worst.max(alg.distance(&alg.power(&u, n), &path.eval(n as f64 * t)?));
    }
    Ok(worst)
}

#[derive(Clone, Debug, Serialize)]
pub struct GeneratorRecovery {
    pub h: Element,
    /// Step at which the logarithm was taken.
    pub t0: f64,
    pub halvings: usize,
    pub group_law: f64,
    /// `sup_t ‖u(t) − e^{ith}‖` over the validation points.
    pub validation: f64,
    /// `‖h* − h‖`.
    pub hermitian_defect: f64,
    /// `‖(u(τ) − u(−τ))/(2iτ) − h‖`, a cross-check only.
    pub finite_difference: f64,
}

fn validation_sup<A: JordanStar + ?Sized>(alg: &A, path: &UnitaryPath, h: &Element) -> Result<f64> {
    let t_max = path.half_width();
    let mut worst = 0.0f64;
    for k in 0..20 {
        let t = -t_max + 2.0 * t_max * (k as f64 + 0.5) / 20.0;
        let e = exp_element(alg, &h.scale(C64::new(0.0, t)));
        worst = worst.max(alg.distance(&path.eval(t)?, &e));
    }
    Ok(worst)
}

/// Recovers `h` with `u(t) = e^{ith}` from `h = log(u(t₀))/t₀`, halving `t₀`
/// while the spectrum of `u(t₀)` touches `−1` or the result fails validation.
pub fn recover_generator<A: JordanStar + ?Sized>(alg: &A, path: &UnitaryPath) -> Result<GeneratorRecovery> {
    let group_law = verify_group_law(alg, path, 20, 0x5eed)?;
    if group_law > GROUP_LAW_TOL {
        return Err(Error::GroupLawViolated(group_law));
    }
    let mut t0 = INITIAL_STEP.min(path.half_width());
    for halvings in 0..=MAX_STEP_HALVINGS {
        match log_unitary(alg, &path.eval(t0)?, None) {
            Ok(l) => {
                let h = alg.real_part(&l.scale_re(1.0 / t0));
                let validation = validation_sup(alg, path, &h)?;
                if validation <= VALIDATION_TOL {
                    let tau = 1e-5 * path.half_width().min(1.0);
                    let fd = (&path.eval(tau)? - &path.eval(-tau)?).scale(C64::new(0.0, -0.5 / tau));
                    return Ok(GeneratorRecovery {
                        hermitian_defect: alg.distance(&alg.star(&h), &h),
                        finite_difference: alg.distance(&fd, &h),
                        h,
                        t0,
                        halvings,
                        group_law,
                        validation,
                    });
                }
            }
            Err(Error::BranchCut(_)) => {}
            Err(e) => return Err(e),
        }
        t0 /= 2.0;
    }
    Err(Error::BranchCutExhausted(MAX_STEP_HALVINGS))
}

#[derive(Clone, Debug, Serialize)]
pub struct DerivationRecovery {
    pub delta: LinearOperator,
    pub generator: GeneratorRecovery,
    /// Step used for the operator logarithm.
    pub t: f64,
    pub leibniz: f64,
    /// `‖δ(1) − 2ih‖`.
    pub unit_residual: f64,
    /// `‖δ(1)* + δ(1)‖`.
    pub unit_skew: f64,
}

/// `δ = log(U_{u(t)})/t`, computed on operator matrices, with `t ≤ 1/‖h‖`
/// so that the spectrum of `U_{u(t)}` stays off `−1`.
pub fn derivation_from_path<A: JordanStar + ?Sized>(alg: &A, path: &UnitaryPath) -> Result<DerivationRecovery> {
    let generator = recover_generator(alg, path)?;
    let hn = alg.norm(&generator.h);
    let t = if hn > 0.0 { generator.t0.min(1.0 / hn) } else { generator.t0 };
    let op = u_op(alg, &path.eval(t)?);
    let m = op.complex_matrix().expect("U-operators are complex-linear");
    let log = normal_matrix_function(m, |z| C64::new(0.0, z.arg() / t))?;
    let delta = LinearOperator::from_complex_matrix(log);
    let check = triple_derivation_check(alg, &delta)?;
    let d1 = delta.apply(&alg.one());
    let unit_residual = alg.distance(&d1, &generator.h.scale(C64::new(0.0, 2.0)));
    Ok(DerivationRecovery { delta, t, leibniz: check.leibniz, unit_residual, unit_skew: check.unit_skew, generator })
}
