use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::operator::{LinearOperator, Linearity};
use crate::algebra::{Element, JordanStar};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DerivationCheck {
    /// Largest `‖δ{a,b,c} − {δa,b,c} − {a,δb,c} − {a,b,δc}‖` over the samples.
    pub leibniz: f64,
    /// `‖δ(1)* + δ(1)‖`.
    pub unit_skew: f64,
    pub samples: usize,
}

/// Leibniz defect of `δ` on one triple.
pub fn leibniz_defect<A: JordanStar + ?Sized>(alg: &A, delta: &LinearOperator, a: &Element, b: &Element, c: &Element) -> f64 {
    let mut r = delta.apply(&alg.triple(a, b, c));
    r -= &alg.triple(&delta.apply(a), b, c);
    r -= &alg.triple(a, &delta.apply(b), c);
    r -= &alg.triple(a, b, &delta.apply(c));
    r.coord_norm()
}

/// Checks the ternary Leibniz rule on basis triples (all of them for small
/// models, a seeded sample otherwise) plus a few dense triples.
pub fn triple_derivation_check<A: JordanStar + ?Sized>(alg: &A, delta: &LinearOperator) -> Result<DerivationCheck> {
    if delta.linearity() != Linearity::ComplexLinear {
        return Err(Error::NotComplexLinear);
    }
    let d = alg.dim();
    if delta.dim_in() != d || delta.dim_out() != d {
        return Err(Error::ModelMismatch { expected: d, found: delta.dim_in() });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_de71);
    let basis = |k: usize| Element::basis(d, k);
    let mut triples: Vec<(Element, Element, Element)> = Vec::new();
    if d <= 16 {
        for i in 0..d {
            for j in 0..d {
                for k in i..d {
                    triples.push((basis(i), basis(j), basis(k)));
                }
            }
        }
    } else {
        for _ in 0..300 {
            triples.push((basis(rng.random_range(0..d)), basis(rng.random_range(0..d)), basis(rng.random_range(0..d))));
        }
    }
    for _ in 0..5 {
        let mut dense = || crate::random::gaussian_element(d, &mut rng);
        triples.push((dense(), dense(), dense()));
    }
    let leibniz = triples.iter().map(|(a, b, c)| leibniz_defect(alg, delta, a, b, c)).fold(0.0, f64::max);
    let d1 = delta.apply(&alg.one());
    let unit_skew = (&alg.star(&d1) + &d1).coord_norm();
    Ok(DerivationCheck { leibniz, unit_skew, samples: triples.len() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::AlgebraModel;
    use crate::calculus::ops::mult_op;
    use num_complex::Complex64 as C64;

    #[test]
    fn zero_is_a_derivation() {
        let m = AlgebraModel::matrix(2).unwrap();
        let r = triple_derivation_check(&m, &LinearOperator::zero(4, 4)).unwrap();
        assert_eq!(r.leibniz, 0.0);
        assert_eq!(r.unit_skew, 0.0);
    }

    #[test]
    fn i_times_central_is_a_derivation() {
        let m = AlgebraModel::direct_sum(vec![AlgebraModel::matrix(2).unwrap(), AlgebraModel::matrix(1).unwrap()]).unwrap();
        let h = &m.inject(0, &AlgebraModel::matrix(2).unwrap().one()).scale_re(0.7) + &m.inject(1, &Element::from_real(&[-1.3]));
        let d = mult_op(&m, &h).compose(&LinearOperator::from_complex_matrix(crate::linalg::CMatrix::identity(5).scale(C64::new(0.0, 1.0))));
        let r = triple_derivation_check(&m, &d).unwrap();
        assert!(r.leibniz <= 1e-10);
        assert!(r.unit_skew <= 1e-12);
    }

    #[test]
    fn involution_is_rejected() {
        let m = AlgebraModel::matrix(2).unwrap();
        let star = LinearOperator::real_from_fn(4, 4, Linearity::ConjugateLinear, |x| m.star(x));
        assert_eq!(triple_derivation_check(&m, &star), Err(Error::NotComplexLinear));
    }
}
