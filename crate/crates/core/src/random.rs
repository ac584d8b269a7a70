//! Seeded random elements, self-adjoints and unitaries.

use num_complex::Complex64 as C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::algebra::{Element, JordanStar};
use crate::calculus::exp_element;

/// Default bound on `‖h‖` for [`random_unitary`].
pub const DEFAULT_UNITARY_SCALE: f64 = std::f64::consts::PI * 0.9;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// SplitMix64 finalizer.
pub fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Independent stream seed for `(base, labels…, index)`.
pub fn derive_seed(base: u64, labels: &[&str], index: u64) -> u64 {
    // FNV-1a over the labels, then mixed with the base seed and index
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for l in labels {
        for b in l.bytes().chain(std::iter::once(0xff)) {
            h ^= u64::from(b);
            h = h.wrapping_mul(0x0100_0000_01b3);
        }
    }
    splitmix(splitmix(base ^ h).wrapping_add(index))
}

/// Standard complex Gaussian coordinates.
pub fn gaussian_element<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Element {
    Element::new(
        (0..dim)
            .map(|_| C64::new(rng.sample::<f64, _>(StandardNormal), rng.sample::<f64, _>(StandardNormal)))
            .collect(),
    )
}

/// Gaussian element rescaled to norm `norm`.
pub fn random_element_with_norm<A: JordanStar + ?Sized, R: Rng + ?Sized>(alg: &A, rng: &mut R, norm: f64) -> Element {
    let x = gaussian_element(alg.dim(), rng);
    let n = alg.norm(&x);
    x.scale_re(norm / n)
}

/// Self-adjoint element with norm uniform in `[0.3·scale, scale]`.
pub fn random_self_adjoint_with<A: JordanStar + ?Sized, R: Rng + ?Sized>(alg: &A, rng: &mut R, scale: f64) -> Element {
    let h = alg.real_part(&gaussian_element(alg.dim(), rng));
    let n = alg.norm(&h);
    let target = scale * rng.random_range(0.3..=1.0);
    if n == 0.0 {
        return h;
    }
    h.scale_re(target / n)
}

pub fn random_self_adjoint<A: JordanStar + ?Sized>(alg: &A, seed: u64, scale: f64) -> Element {
    random_self_adjoint_with(alg, &mut rng(seed), scale)
}

/// `e^{ih}` with `h` from [`random_self_adjoint_with`].
pub fn random_unitary_scaled<A: JordanStar + ?Sized, R: Rng + ?Sized>(alg: &A, rng: &mut R, scale: f64) -> Element {
    let h = random_self_adjoint_with(alg, rng, scale);
    exp_element(alg, &h.scale(C64::new(0.0, 1.0)))
}

pub fn random_unitary_with<A: JordanStar + ?Sized, R: Rng + ?Sized>(alg: &A, rng: &mut R) -> Element {
    random_unitary_scaled(alg, rng, DEFAULT_UNITARY_SCALE)
}

pub fn random_unitary<A: JordanStar + ?Sized>(alg: &A, seed: u64) -> Element {
    random_unitary_with(alg, &mut rng(seed))
}

/// `e^{ih}` computed in the isotope `M(u)`, with `h` self-adjoint there;
/// `‖u − v‖ ≤ ‖h‖ ≤ scale`.
pub fn random_unitary_near<A: JordanStar + ?Sized, R: Rng + ?Sized>(
    alg: &A,
    u: &Element,
    rng: &mut R,
    scale: f64,
) -> crate::Result<Element> {
    let iso = crate::isotope::IsotopeModel::new(alg, u)?;
    Ok(random_unitary_scaled(&iso, rng, scale))
}
