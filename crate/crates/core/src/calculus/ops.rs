use num_complex::Complex64 as C64;

use super::operator::{LinearOperator, Linearity};
use crate::algebra::{Element, JordanStar};
use crate::error::{Error, Result};
use crate::linalg::{singular_values, solve};

/// `U_{a,b}` as a complex-linear operator.
pub fn u_op_ab<A: JordanStar + ?Sized>(alg: &A, a: &Element, b: &Element) -> LinearOperator {
    let d = alg.dim();
    LinearOperator::complex_from_fn(d, d, |x| alg.u_ab(a, b, x))
}

/// `U_a = U_{a,a}`.
pub fn u_op<A: JordanStar + ?Sized>(alg: &A, a: &Element) -> LinearOperator {
    let d = alg.dim();
    LinearOperator::complex_from_fn(d, d, |x| alg.u(a, x))
}

/// `M_a: x ↦ a∘x`.
pub fn mult_op<A: JordanStar + ?Sized>(alg: &A, a: &Element) -> LinearOperator {
    let d = alg.dim();
    LinearOperator::complex_from_fn(d, d, |x| alg.jordan(a, x))
}

/// `L(a, b): x ↦ {a, b, x}`.
pub fn l_op<A: JordanStar + ?Sized>(alg: &A, a: &Element, b: &Element) -> LinearOperator {
    let d = alg.dim();
    LinearOperator::complex_from_fn(d, d, |x| alg.triple(a, b, x))
}

/// `Q(e): x ↦ {e, x, e}` (conjugate-linear).
pub fn q_op<A: JordanStar + ?Sized>(alg: &A, e: &Element) -> LinearOperator {
    let d = alg.dim();
    LinearOperator::real_from_fn(d, d, Linearity::ConjugateLinear, |x| alg.triple(e, x, e))
}

/// `‖{e,e,e} − e‖` in coordinates.
pub fn tripotent_residual<A: JordanStar + ?Sized>(alg: &A, e: &Element) -> f64 {
    (&alg.triple(e, e, e) - e).coord_norm()
}

pub fn is_tripotent<A: JordanStar + ?Sized>(alg: &A, e: &Element) -> bool {
    tripotent_residual(alg, e) <= 1e-9 * e.coord_norm().max(1.0)
}

#[derive(Clone, Debug)]
pub struct PeirceProjections {
    pub p2: LinearOperator,
    pub p1: LinearOperator,
    pub p0: LinearOperator,
}

/// `P₂ = Q(e)²`, `P₁ = 2(L(e,e) − Q(e)²)`, `P₀ = Id − 2L(e,e) + Q(e)²`.
pub fn peirce_projections<A: JordanStar + ?Sized>(alg: &A, e: &Element) -> Result<PeirceProjections> {
    alg.check(e)?;
    let res = tripotent_residual(alg, e);
    if res > 1e-9 * e.coord_norm().max(1.0) {
        return Err(Error::NotTripotent(res));
    }
    let q = q_op(alg, e);
    let q2 = q.compose(&q);
    let l = l_op(alg, e, e);
    let id = LinearOperator::identity(alg.dim());
    let p1 = l.sub(&q2).scale_re(2.0);
    let p0 = id.sub(&l.scale_re(2.0)).add(&q2);
    Ok(PeirceProjections { p2: q2, p1, p0 })
}

/// Smallest singular value of `U_a` divided by the largest.
pub fn invertibility_ratio<A: JordanStar + ?Sized>(alg: &A, a: &Element) -> f64 {
    let u = u_op(alg, a);
    match singular_values(u.complex_matrix().expect("U_a is complex-linear")) {
        Ok(s) if s[0] > 0.0 => s[s.len() - 1] / s[0],
        _ => 0.0,
    }
}

pub fn is_invertible<A: JordanStar + ?Sized>(alg: &A, a: &Element) -> bool {
    invertibility_ratio(alg, a) > 1e-8
}

/// Jordan inverse: the `b` with `a∘b = 1` and `a²∘b = a`, i.e. `U_a⁻¹(a)`.
pub fn inverse<A: JordanStar + ?Sized>(alg: &A, a: &Element) -> Result<Element> {
    alg.check(a)?;
    let ratio = invertibility_ratio(alg, a);
    if ratio <= 1e-8 {
        return Err(Error::NotInvertible(ratio));
    }
    let u = u_op(alg, a);
    let b = Element::new(solve(u.complex_matrix().unwrap(), a.coords())?);
    let one = alg.one();
    let scale = a.coord_norm().max(1.0) * b.coord_norm().max(1.0);
    let r1 = (&alg.jordan(a, &b) - &one).coord_norm();
    let r2 = (&alg.jordan(&alg.square(a), &b) - a).coord_norm();
    if r1.max(r2) > 1e-8 * scale {
        return Err(Error::NotInvertible(ratio));
    }
    Ok(b)
}

/// `max(‖u∘u* − 1‖, ‖u²∘u* − u‖)`: zero iff `u*` is the inverse of `u`.
pub fn unitary_residual<A: JordanStar + ?Sized>(alg: &A, u: &Element) -> f64 {
    let us = alg.star(u);
    let r1 = (&alg.jordan(u, &us) - &alg.one()).coord_norm();
    let r2 = (&alg.jordan(&alg.square(u), &us) - u).coord_norm();
    r1.max(r2)
}

pub fn is_unitary<A: JordanStar + ?Sized>(alg: &A, u: &Element) -> bool {
    u.dim() == alg.dim() && u.is_finite() && unitary_residual(alg, u) <= 1e-8
}

/// Returns `NotUnitary` unless `u` is unitary.
pub fn ensure_unitary<A: JordanStar + ?Sized>(alg: &A, u: &Element) -> Result<()> {
    alg.check(u)?;
    let r = unitary_residual(alg, u);
    if r <= 1e-8 {
        Ok(())
    } else {
        Err(Error::NotUnitary(r))
    }
}

/// `max_c ‖(a∘c)∘b − a∘(c∘b)‖` over the given probes.
pub fn commutator_residual<A: JordanStar + ?Sized>(alg: &A, a: &Element, b: &Element, probes: &[Element]) -> f64 {
    probes
        .iter()
        .map(|c| (&alg.jordan(&alg.jordan(a, c), b) - &alg.jordan(a, &alg.jordan(c, b))).coord_norm())
        .fold(0.0, f64::max)
}

/// Operator commutation tested on every basis vector.
pub fn operator_commute<A: JordanStar + ?Sized>(alg: &A, a: &Element, b: &Element) -> bool {
    let basis: Vec<Element> = (0..alg.dim()).map(|k| Element::basis(alg.dim(), k)).collect();
    commutator_residual(alg, a, b, &basis) <= 1e-9 * a.coord_norm().max(1.0) * b.coord_norm().max(1.0)
}

/// `max_x ‖[M_a, M_x]‖` over basis `x`; zero iff `a` is central.
pub fn centrality_residual<A: JordanStar + ?Sized>(alg: &A, a: &Element) -> f64 {
    let d = alg.dim();
    let ma = mult_op(alg, a);
    let ma = ma.complex_matrix().unwrap();
    (0..d)
        .map(|k| {
            let mx = mult_op(alg, &Element::basis(d, k));
            let mx = mx.complex_matrix().unwrap();
            (&ma.matmul(mx) - &mx.matmul(ma)).frobenius_norm()
        })
        .fold(0.0, f64::max)
}

pub fn is_central<A: JordanStar + ?Sized>(alg: &A, a: &Element) -> bool {
    centrality_residual(alg, a) <= 1e-9 * a.coord_norm().max(1.0)
}

/// Residual of `p∘p = p`, `p* = p`.
pub fn projection_residual<A: JordanStar + ?Sized>(alg: &A, p: &Element) -> f64 {
    let r1 = (&alg.square(p) - p).coord_norm();
    let r2 = (&alg.star(p) - p).coord_norm();
    r1.max(r2)
}

/// `i·a`.
pub fn times_i(a: &Element) -> Element {
    a.scale(C64::new(0.0, 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::AlgebraModel;
    use crate::linalg::CMatrix;

    fn mat(m: &AlgebraModel, rows: &[&[f64]]) -> Element {
        m.from_embedded(&CMatrix::from_real_rows(rows).unwrap()).unwrap()
    }

    #[test]
    fn unit_u_operator_is_identity() {
        let m = AlgebraModel::spin(3).unwrap();
        assert!(u_op(&m, &m.one()).distance(&LinearOperator::identity(4)) < 1e-14);
    }

    #[test]
    fn symmetry_u_operator_swaps_diagonal() {
        let m = AlgebraModel::matrix(2).unwrap();
        let s = mat(&m, &[&[0.0, 1.0], &[1.0, 0.0]]);
        let b = mat(&m, &[&[1.0, 0.0], &[0.0, -1.0]]);
        let out = u_op(&m, &s).apply(&b);
        assert!((&out - &mat(&m, &[&[-1.0, 0.0], &[0.0, 1.0]])).coord_norm() < 1e-14);
    }

    #[test]
    fn inverses() {
        let m = AlgebraModel::matrix(2).unwrap();
        assert!((&inverse(&m, &m.one()).unwrap() - &m.one()).coord_norm() < 1e-14);
        let a = mat(&m, &[&[2.0, 0.0], &[0.0, 4.0]]);
        let inv = inverse(&m, &a).unwrap();
        assert!((&inv - &mat(&m, &[&[0.5, 0.0], &[0.0, 0.25]])).coord_norm() < 1e-14);
        let e11 = mat(&m, &[&[1.0, 0.0], &[0.0, 0.0]]);
        assert!(!is_invertible(&m, &e11));
        assert!(matches!(inverse(&m, &e11), Err(Error::NotInvertible(_))));
    }

    #[test]
    fn unitary_predicate() {
        let m = AlgebraModel::matrix(2).unwrap();
        assert!(is_unitary(&m, &m.one()));
        assert!(!is_unitary(&m, &mat(&m, &[&[1.0, 0.0], &[0.0, 0.5]])));
    }

    #[test]
    fn peirce_of_rank_one_projection() {
        let m = AlgebraModel::matrix(2).unwrap();
        let e11 = mat(&m, &[&[1.0, 0.0], &[0.0, 0.0]]);
        let p = peirce_projections(&m, &e11).unwrap();
        // ranks over C are the traces of the idempotents
        let rank = |op: &LinearOperator| op.complex_matrix().unwrap().trace().re.round() as i64;
        assert_eq!((rank(&p.p2), rank(&p.p1), rank(&p.p0)), (1, 2, 1));
        let zero = peirce_projections(&m, &m.zero()).unwrap();
        assert!(zero.p0.distance(&LinearOperator::identity(4)) < 1e-14);
        let unit = peirce_projections(&m, &m.one()).unwrap();
        assert!(unit.p2.distance(&LinearOperator::identity(4)) < 1e-14);
        assert!(unit.p1.frobenius_norm() < 1e-14);
        assert!(matches!(peirce_projections(&m, &e11.scale_re(2.0)), Err(Error::NotTripotent(_))));
    }

    #[test]
    fn commutation() {
        let m = AlgebraModel::matrix(2).unwrap();
        let a = mat(&m, &[&[0.0, 1.0], &[1.0, 0.0]]);
        let b = mat(&m, &[&[1.0, 0.0], &[0.0, -1.0]]);
        assert!(!operator_commute(&m, &a, &b));
        assert!(operator_commute(&m, &a, &m.square(&a)));
        assert!(operator_commute(&m, &m.one(), &b));
        assert!(is_central(&m, &m.one()));
        assert!(!is_central(&m, &b));
    }
}
