use num_complex::Complex64 as C64;
use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraModel, Element, JordanStar, ModelSpec};
use crate::calculus::{spectral_decompose, u_op, LinearOperator};
use crate::error::{Error, Result};
use crate::linalg::{eig_hermitian, CMatrix};
use crate::random::{gaussian_element, random_self_adjoint_with, rng};

/// How an isomorphism was generated.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Recipe {
    Identity,
    /// `x ↦ u x u*`.
    UnitaryConjugation,
    /// `x ↦ u xᵗ u*`.
    TransposeTwistedConjugation,
    /// `U_{s₁} ∘ … ∘ U_{s_k}` for symmetries `s_i`.
    SymmetryProduct { count: usize },
    /// Summand `i` is sent to summand `permutation[i]` by `factors[i]`.
    FactorPermutation { permutation: Vec<usize>, factors: Vec<Recipe> },
    /// Obtained from a reconstruction.
    Recovered,
}

/// Complex-linear bijection preserving `∘` and `*`, in model coordinates.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct JordanStarIsomorphism {
    pub source: ModelSpec,
    pub target: ModelSpec,
    pub map: LinearOperator,
    pub recipe: Recipe,
}

impl JordanStarIsomorphism {
    pub fn identity(m: &AlgebraModel) -> Self {
        JordanStarIsomorphism {
            source: m.spec().clone(),
            target: m.spec().clone(),
            map: LinearOperator::identity(m.dim()),
            recipe: Recipe::Identity,
        }
    }

    pub fn apply(&self, x: &Element) -> Element {
        self.map.apply(x)
    }

    pub fn inverse(&self) -> Result<JordanStarIsomorphism> {
        Ok(JordanStarIsomorphism {
            source: self.target.clone(),
            target: self.source.clone(),
            map: self.map.inverse()?,
            recipe: self.recipe.clone(),
        })
    }
}

/// Deviations of a complex-linear map from being a Jordan *-isomorphism.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct IsomorphismResiduals {
    pub product: f64,
    pub involution: f64,
    pub unit: f64,
    pub norm: f64,
    /// `‖T∘J − J∘T‖` with `J` multiplication by `i`.
    pub complex_linearity: f64,
}

impl IsomorphismResiduals {
    pub fn max(&self) -> f64 {
        self.product.max(self.involution).max(self.unit).max(self.norm).max(self.complex_linearity)
    }
}

/// Checks `Φ(x∘y) = Φx∘Φy`, `Φ(x*) = Φ(x)*`, `Φ(1) = 1`, `‖Φx‖ = ‖x‖` on
/// `samples` random pairs of unit-norm elements.
pub fn isomorphism_residuals(
    m: &AlgebraModel,
    n: &AlgebraModel,
    phi: &LinearOperator,
    samples: usize,
    seed: u64,
) -> IsomorphismResiduals {
    let mut r = rng(seed);
    let mut out = IsomorphismResiduals {
        unit: n.distance(&phi.apply(&m.one()), &n.one()),
        complex_linearity: phi.linearity_defects().0,
        ..Default::default()
    };
    for _ in 0..samples {
        let x = gaussian_element(m.dim(), &mut r);
        let x = x.scale_re(1.0 / m.norm(&x));
        let y = gaussian_element(m.dim(), &mut r);
        let y = y.scale_re(1.0 / m.norm(&y));
        let (px, py) = (phi.apply(&x), phi.apply(&y));
        out.product = out.product.max(n.distance(&phi.apply(&m.jordan(&x, &y)), &n.jordan(&px, &py)));
        out.involution = out.involution.max(n.distance(&phi.apply(&m.star(&x)), &n.star(&px)));
        out.norm = out.norm.max((n.norm(&px) - 1.0).abs());
    }
    out
}

fn random_unitary_matrix<R: Rng + ?Sized>(size: usize, rng: &mut R) -> CMatrix {
    let g = CMatrix::from_vec(size, size, gaussian_element(size * size, rng).into_coords()).expect("square");
    let h = CMatrix::from_fn(size, size, |i, j| 0.5 * (g[(i, j)] + g[(j, i)].conj()));
    let e = eig_hermitian(&h).expect("hermitian by construction");
    let phases: Vec<C64> = e.values.iter().map(|&l| C64::from_polar(1.0, 2.0 * l)).collect();
    let vd = CMatrix::from_fn(size, size, |i, j| e.vectors[(i, j)] * phases[j]);
    vd.matmul(&e.vectors.adjoint())
}

/// Symmetry `sign(h)` for a random self-adjoint `h`.
fn random_symmetry<R: Rng + ?Sized>(m: &AlgebraModel, rng: &mut R) -> Element {
    let h = random_self_adjoint_with(m, rng, 1.0);
    match spectral_decompose(m, &h) {
        Ok(sd) => m.real_part(&sd.apply(|l| C64::new(if l.re >= 0.0 { 1.0 } else { -1.0 }, 0.0))),
        Err(_) => m.one(),
    }
}

fn random_automorphism<R: Rng + ?Sized>(m: &AlgebraModel, rng: &mut R) -> (LinearOperator, Recipe) {
    let d = m.dim();
    match m.spec() {
        ModelSpec::Matrix { n } => {
            let u = random_unitary_matrix(*n, rng);
            let ua = u.adjoint();
            let twist = *n > 1 && rng.random_bool(0.5);
            let op = LinearOperator::complex_from_fn(d, d, |x| {
                let mut xm = m.embed(x).expect("matrix model");
                if twist {
                    xm = xm.transpose();
                }
                m.from_embedded(&u.matmul(&xm).matmul(&ua)).expect("same size")
            });
            let recipe = if twist { Recipe::TransposeTwistedConjugation } else { Recipe::UnitaryConjugation };
            (op, recipe)
        }
        ModelSpec::Spin { .. } | ModelSpec::Albert => {
            let count = 3;
            let mut op = LinearOperator::identity(d);
            for _ in 0..count {
                let s = random_symmetry(m, rng);
                op = u_op(m, &s).compose(&op);
            }
            (op, Recipe::SymmetryProduct { count })
        }
        ModelSpec::DirectSum { summands } => {
            let parts: Vec<(LinearOperator, Recipe)> =
                m.summands().iter().map(|s| random_automorphism(&s.model, rng)).collect();
            // shuffle within classes of identical summands
            let mut permutation: Vec<usize> = (0..summands.len()).collect();
            let mut seen = vec![false; summands.len()];
            for i in 0..summands.len() {
                if seen[i] {
                    continue;
                }
                let class: Vec<usize> = (i..summands.len()).filter(|&j| summands[j] == summands[i]).collect();
                let mut targets = class.clone();
                targets.shuffle(rng);
                for (&from, &to) in class.iter().zip(&targets) {
                    permutation[from] = to;
                    seen[from] = true;
                }
            }
            let op = LinearOperator::complex_from_fn(d, d, |x| {
                let mut out = Element::zeros(d);
                for (i, (phi, _)) in parts.iter().enumerate() {
                    out += &m.inject(permutation[i], &phi.apply(&m.summand_part(x, i)));
                }
                out
            });
            let factors = parts.into_iter().map(|(_, r)| r).collect();
            (op, Recipe::FactorPermutation { permutation, factors })
        }
    }
}

/// Random Jordan *-isomorphism between structurally identical models.
pub fn random_jordan_star_isomorphism(m: &AlgebraModel, n: &AlgebraModel, seed: u64) -> Result<JordanStarIsomorphism> {
    if m.spec() != n.spec() {
        return Err(Error::StructureMismatch(m.spec().to_string(), n.spec().to_string()));
    }
    let (map, recipe) = random_automorphism(m, &mut rng(seed));
    Ok(JordanStarIsomorphism { source: m.spec().clone(), target: n.spec().clone(), map, recipe })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_passes() {
        let m = AlgebraModel::matrix(2).unwrap();
        let r = isomorphism_residuals(&m, &m, &JordanStarIsomorphism::identity(&m).map, 10, 1);
        assert!(r.max() < 1e-14);
    }

    #[test]
    fn random_isomorphisms_pass_invariants() {
        for spec in ["matrix:3", "spin:3", "albert", "matrix:2+matrix:2+spin:2"] {
            let m = AlgebraModel::from_spec(&spec.parse().unwrap()).unwrap();
            for seed in 0..3 {
                let phi = random_jordan_star_isomorphism(&m, &m, seed).unwrap();
                let r = isomorphism_residuals(&m, &m, &phi.map, 10, seed + 100);
                assert!(r.max() < 1e-9, "{spec} {seed}: {r:?}");
            }
        }
    }

    #[test]
    fn mismatch_rejected() {
        let a = AlgebraModel::matrix(2).unwrap();
        let b = AlgebraModel::spin(3).unwrap();
        assert!(matches!(random_jordan_star_isomorphism(&a, &b, 0), Err(Error::StructureMismatch(..))));
    }
}
