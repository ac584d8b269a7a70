//! Checks against values computed here by hand-written formulas, independent
//! of the structure-constant tables.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use jbstar::algebra::{albert_cubic_invariants, AlbertMatrix};
use jbstar::calculus::{exp_element, peirce_projections, spectral_decompose};
use jbstar::io::ElementDoc;
use jbstar::isometry::{equivalence_witness, reconstruct, scalar_condition_b_enumeration, EquivalenceMode, ReconstructConfig, StructuredIsometry};
use jbstar::isotope::{midpoint_bound, midpoint_witness, rigidity_residual, unitary_log, RigidityOutcome};
use jbstar::stone::{derivation_from_path, recover_generator, UnitaryPath};
use jbstar::{AlgebraModel, Element, Error, JordanStar, ModelSpec, Octonion, C64};

type M2 = [[C64; 2]; 2];

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn mm(a: &M2, b: &M2) -> M2 {
    let mut out = [[c(0.0, 0.0); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

fn madd(a: &M2, b: &M2, s: f64) -> M2 {
    let mut out = *a;
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] += b[i][j] * s;
        }
    }
    out
}

fn adj(a: &M2) -> M2 {
    [[a[0][0].conj(), a[1][0].conj()], [a[0][1].conj(), a[1][1].conj()]]
}

/// Largest singular value from `σ² = (s ± √(s² − 4|det|²))/2`, `s = ‖A‖_F²`.
fn opnorm(a: &M2) -> f64 {
    let s: f64 = a.iter().flatten().map(|z| z.norm_sqr()).sum();
    let det = (a[0][0] * a[1][1] - a[0][1] * a[1][0]).norm_sqr();
    ((s + (s * s - 4.0 * det).max(0.0).sqrt()) / 2.0).sqrt()
}

fn to_el(a: &M2) -> Element {
    Element::new(vec![a[0][0], a[0][1], a[1][0], a[1][1]])
}

fn close(a: &Element, b: &Element, tol: f64) {
    let d = (a - b).coord_norm();
    assert!(d <= tol, "distance {d:e} > {tol:e}\n{a:?}\n{b:?}");
}

fn samples() -> (M2, M2, M2) {
    let a = [[c(0.3, -1.2), c(0.7, 0.1)], [c(-0.4, 0.5), c(1.1, 0.2)]];
    let b = [[c(-0.8, 0.0), c(0.2, 0.9)], [c(0.6, -0.3), c(0.05, 0.4)]];
    let z = [[c(0.5, 0.5), c(-1.0, 0.3)], [c(0.0, 0.2), c(0.9, -0.7)]];
    (a, b, z)
}

#[test]
fn matrix_2_products_match_hand_arithmetic() {
    let m = AlgebraModel::matrix(2).unwrap();
    let (a, b, z) = samples();
    let (ea, eb, ez) = (to_el(&a), to_el(&b), to_el(&z));

    let jordan = madd(&mm(&a, &b), &mm(&b, &a), 1.0);
    close(&m.jordan(&ea, &eb), &to_el(&jordan).scale_re(0.5), 1e-14);

    close(&m.u(&ea, &eb), &to_el(&mm(&mm(&a, &b), &a)), 1e-13);

    let t = madd(&mm(&mm(&a, &adj(&b)), &z), &mm(&mm(&z, &adj(&b)), &a), 1.0);
    close(&m.triple(&ea, &eb, &ez), &to_el(&t).scale_re(0.5), 1e-13);

    close(&m.star(&ea), &to_el(&adj(&a)), 0.0);
    for x in [&a, &b, &z] {
        assert!((m.norm(&to_el(x)) - opnorm(x)).abs() < 1e-12);
    }
}

#[test]
fn spin_3_norm_matches_pauli_matrices() {
    let s = AlgebraModel::spin(3).unwrap();
    let pauli: [M2; 3] = [
        [[c(0.0, 0.0), c(1.0, 0.0)], [c(1.0, 0.0), c(0.0, 0.0)]],
        [[c(0.0, 0.0), c(0.0, -1.0)], [c(0.0, 1.0), c(0.0, 0.0)]],
        [[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(-1.0, 0.0)]],
    ];
    let coords = [
        [c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)],
        [c(0.2, 0.1), c(0.5, -0.3), c(0.0, 0.8), c(-0.4, 0.2)],
        [c(0.0, 1.0), c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)],
        [c(0.0, 0.0), c(1.0, 0.0), c(0.0, 1.0), c(0.0, 0.0)],
    ];
    for x in coords {
        let mut m = [[x[0], c(0.0, 0.0)], [c(0.0, 0.0), x[0]]];
        for (j, p) in pauli.iter().enumerate() {
            m = madd(&m, &p.map(|r| r.map(|z| z * x[j + 1])), 1.0);
        }
        let got = s.norm(&Element::new(x.to_vec()));
        assert!((got - opnorm(&m)).abs() < 1e-12, "{x:?}: {got} vs {}", opnorm(&m));
    }
    // e1 + i e2 is nilpotent of norm 2.
    let n = Element::new(coords[3].to_vec());
    assert!(s.square(&n).coord_norm() < 1e-15);
    assert!((s.norm(&n) - 2.0).abs() < 1e-12);
}

#[test]
fn spin_self_adjoint_norm_is_alpha_plus_beta() {
    let s = AlgebraModel::spin(4).unwrap();
    for (alpha, beta) in [(0.3, [0.4, -1.2, 0.0, 0.5]), (-2.0, [0.1, 0.1, 0.1, 0.1]), (0.0, [1.0, 0.0, 0.0, 0.0])] {
        let mut v = vec![alpha];
        v.extend(beta);
        let expected = f64::abs(alpha) + beta.iter().map(|b| b * b).sum::<f64>().sqrt();
        assert!((s.norm(&Element::from_real(&v)) - expected).abs() < 1e-12);
    }
}

#[test]
fn albert_diagonal_and_single_octonion() {
    let alb = AlgebraModel::albert();
    let zero = Octonion::ZERO;
    for (a, b, d) in [(1.5, -0.25, 0.75), (-3.0, 2.0, 0.5), (1.0, 1.0, 1.0)] {
        let x = AlbertMatrix { alpha: [c(a, 0.0), c(b, 0.0), c(d, 0.0)], x: [zero; 3] };
        let e = Element::new(x.to_coords());
        let inv = albert_cubic_invariants(&e);
        assert!((inv.trace - c(a + b + d, 0.0)).norm() < 1e-14);
        assert!((inv.quadratic - c(a * b + b * d + d * a, 0.0)).norm() < 1e-14);
        assert!((inv.norm - c(a * b * d, 0.0)).norm() < 1e-14);
        let top = [a, b, d].iter().fold(0.0f64, |m, v| m.max(v.abs()));
        assert!((alb.norm(&e) - top).abs() < 1e-10);
    }
    // A single real-coefficient octonion in the (2,3) slot has eigenvalues ±|x|, 0.
    let mut o = Octonion::ZERO;
    o.0 = [0.3, -0.2, 0.0, 0.9, 0.1, 0.0, -0.4, 0.25].map(|v| c(v, 0.0));
    let len = o.0.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let x = AlbertMatrix { alpha: [c(0.0, 0.0); 3], x: [o, zero, zero] };
    assert!((alb.norm(&Element::new(x.to_coords())) - len).abs() < 1e-10);
}

#[test]
fn octonions_compose_and_alternate() {
    let mut x = Octonion::ZERO;
    let mut y = Octonion::ZERO;
    x.0 = [0.5, -1.0, 0.2, 0.0, 0.7, 0.3, -0.6, 1.1].map(|v| c(v, 0.0));
    y.0 = [-0.2, 0.4, 0.9, -1.3, 0.0, 0.5, 0.8, -0.1].map(|v| c(v, 0.0));
    let n = |o: &Octonion| o.0.iter().map(|z| z.norm_sqr()).sum::<f64>();
    assert!((n(&(x * y)) - n(&x) * n(&y)).abs() < 1e-12);
    let d = (x * x) * y - x * (x * y);
    assert!(n(&d) < 1e-24);
    let d = (y * x) * x - y * (x * x);
    assert!(n(&d) < 1e-24);
    // Non-associative: (e1 e2) e4 ≠ e1 (e2 e4).
    let (e1, e2, e4) = (Octonion::unit(1), Octonion::unit(2), Octonion::unit(4));
    assert!(n(&((e1 * e2) * e4 - e1 * (e2 * e4))) > 1.0);
}

#[test]
fn peirce_ranks_of_a_matrix_unit() {
    let m = AlgebraModel::matrix(3).unwrap();
    let e = Element::basis(9, 0);
    let p = peirce_projections(&m, &e).unwrap();
    // E2 = C e11, E1 = span{e1j, ej1 : j > 1}, E0 = M_2.
    let rank = |op: &jbstar::LinearOperator| op.complex_matrix().unwrap().trace().re;
    assert!((rank(&p.p2) - 1.0).abs() < 1e-12);
    assert!((rank(&p.p1) - 4.0).abs() < 1e-12);
    assert!((rank(&p.p0) - 4.0).abs() < 1e-12);
}

#[test]
fn spectral_data_of_a_diagonal_matrix() {
    let m = AlgebraModel::matrix(3).unwrap();
    let mut a = Element::zeros(9);
    a.coords_mut()[0] = c(2.0, 0.0);
    a.coords_mut()[4] = c(-1.0, 0.5);
    a.coords_mut()[8] = c(2.0, 0.0);
    let s = spectral_decompose(&m, &a).unwrap();
    assert_eq!(s.eigenvalues.len(), 2);
    for (l, p) in s.eigenvalues.iter().zip(&s.projections) {
        let mut expected = Element::zeros(9);
        if (l - c(2.0, 0.0)).norm() < 1e-12 {
            expected.coords_mut()[0] = c(1.0, 0.0);
            expected.coords_mut()[8] = c(1.0, 0.0);
        } else {
            assert!((l - c(-1.0, 0.5)).norm() < 1e-12);
            expected.coords_mut()[4] = c(1.0, 0.0);
        }
        close(p, &expected, 1e-12);
    }
}

#[test]
fn log_of_a_diagonal_unitary() {
    let m = AlgebraModel::matrix(2).unwrap();
    let u = Element::new(vec![C64::from_polar(1.0, 0.3), c(0.0, 0.0), c(0.0, 0.0), C64::from_polar(1.0, -2.9)]);
    let h = unitary_log(&m, &u).unwrap();
    close(&h, &Element::from_real(&[0.3, 0.0, 0.0, -2.9]), 1e-12);
    let back = exp_element(&m, &h.scale(c(0.0, 1.0)));
    close(&back, &u, 1e-12);
}

#[test]
fn midpoint_constants() {
    // √2·√(1 − cos(π/4)) = 2 sin(π/8).
    assert!((midpoint_bound(FRAC_PI_2) - 0.76536686473018).abs() < 1e-13);
    assert!((midpoint_bound(FRAC_PI_2) - 2.0 * (PI / 8.0).sin()).abs() < 1e-15);
    let c1 = AlgebraModel::matrix(1).unwrap();
    let w = midpoint_witness(&c1, &Element::new(vec![c(1.0, 0.0)]), &Element::new(vec![c(0.0, 1.0)])).unwrap();
    close(&w, &Element::new(vec![C64::from_polar(1.0, FRAC_PI_4)]), 1e-14);
}

#[test]
fn rigidity_rejects_the_antipode() {
    let m = AlgebraModel::matrix(2).unwrap();
    let u = Element::new(vec![c(0.0, 1.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]);
    let out = rigidity_residual(&m, &u, &-&u).unwrap();
    assert!(matches!(out, RigidityOutcome::HypothesisNotMet { .. }), "{out:?}");
    let out = rigidity_residual(&m, &u, &u).unwrap();
    assert!(matches!(out, RigidityOutcome::Holds { distance, .. } if distance == 0.0));
}

#[test]
fn condition_b_scalar_enumerations() {
    // In C only v itself survives; in C^3 the other coordinates give room.
    let one = scalar_condition_b_enumeration(&[0.3], 24).unwrap();
    assert_eq!(one.members, 1);
    assert_eq!(one.violations, 0);
    let three = scalar_condition_b_enumeration(&[0.3, 0.1, -0.05], 24).unwrap();
    assert!(three.members >= 3, "{three:?}");
    assert_eq!(three.violations, 0);
    assert!(three.min_slack >= -1e-12);
}

#[test]
fn identity_and_adjoint_are_recovered() {
    let m = AlgebraModel::matrix(2).unwrap();
    for (plant, p_expected) in [(StructuredIsometry::identity(&m), m.one()), (StructuredIsometry::adjoint(&m), m.zero())] {
        let oracle = plant.oracle(&m, &m);
        let rep = reconstruct(&m, &m, &oracle, &ReconstructConfig::with_seed(5)).unwrap();
        assert!(!rep.verdict.is_fail(), "{:?}", rep.failed_stages);
        close(&rep.p, &p_expected, 1e-9);
        close(&rep.omega, &m.one(), 1e-8);
        let x = Element::new(vec![c(0.4, 1.0), c(-0.2, 0.3), c(0.0, -0.7), c(1.5, 0.1)]);
        let want = if p_expected == m.one() { x.clone() } else { m.star(&x) };
        close(&rep.psi.apply(&x), &want, 1e-7);
    }
}

#[test]
fn stone_on_the_complex_line() {
    let c1 = AlgebraModel::matrix(1).unwrap();
    let h = Element::from_real(&[0.7]);
    let path = UnitaryPath::new(1.0, |t| Element::new(vec![C64::from_polar(1.0, 0.7 * t)]));
    let g = recover_generator(&c1, &path).unwrap();
    assert!((g.h.coords()[0] - c(0.7, 0.0)).norm() < 1e-10);
    // U_{u(t)} x = e^{1.4 i t} x, so δ(x) = 1.4 i x.
    let d = derivation_from_path(&c1, &path).unwrap();
    close(&d.delta.apply(&c1.one()), &h.scale(c(0.0, 2.0)), 1e-9);
}

#[test]
fn matrix_2_and_spin_3_are_distinct_structures() {
    let m = AlgebraModel::matrix(2).unwrap();
    let s = AlgebraModel::spin(3).unwrap();
    assert_eq!(m.dim(), s.dim());
    for mode in [EquivalenceMode::AToC, EquivalenceMode::CToA] {
        assert!(matches!(equivalence_witness(&m, &s, mode, 1), Err(Error::StructureMismatch(..))));
    }
}

#[test]
fn element_documents_round_trip() {
    let spec: ModelSpec = "matrix:2".parse().unwrap();
    let doc = ElementDoc::new(spec.clone(), Element::new(vec![c(1.0, -0.5), c(0.0, 0.0), c(0.25, 3.0), c(-1.0, 1e-17)])).unwrap();
    let back = ElementDoc::from_json(&doc.to_json()).unwrap();
    assert_eq!(back, doc);
    assert!(matches!(ElementDoc::new(spec, Element::zeros(3)), Err(Error::ModelMismatch { expected: 4, found: 3 })));
}
