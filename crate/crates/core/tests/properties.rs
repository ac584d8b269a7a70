use std::sync::OnceLock;

use proptest::prelude::*;

use jbstar::calculus::{exp_element, is_unitary, spectral_decompose};
use jbstar::isometry::{random_structured_isometry, reconstruct, ReconstructConfig};
use jbstar::isotope::unitary_log;
use jbstar::random::{derive_seed, gaussian_element, random_self_adjoint, random_unitary, rng};
use jbstar::{AlgebraModel, Element, IsotopeModel, JordanStar, ModelSpec, C64};

const SPECS: [&str; 8] = ["matrix:1", "matrix:2", "matrix:3", "spin:2", "spin:3", "spin:5", "albert", "matrix:1⊕spin:2"];

fn models() -> &'static Vec<AlgebraModel> {
    static M: OnceLock<Vec<AlgebraModel>> = OnceLock::new();
    M.get_or_init(|| SPECS.iter().map(|s| AlgebraModel::from_spec(&s.parse().unwrap()).unwrap()).collect())
}

fn el(m: &AlgebraModel, seed: u64) -> Element {
    let x = gaussian_element(m.dim(), &mut rng(seed));
    let n = m.norm(&x);
    x.scale_re(1.0 / n)
}

fn dist(m: &AlgebraModel, a: &Element, b: &Element) -> f64 {
    m.norm(&(a - b))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn jordan_product_is_commutative_and_satisfies_the_jordan_identity(i in 0..SPECS.len(), s in any::<u64>()) {
        let m = &models()[i];
        let (a, b) = (el(m, s), el(m, s ^ 1));
        prop_assert!(dist(m, &m.jordan(&a, &b), &m.jordan(&b, &a)) < 1e-13);
        let a2 = m.square(&a);
        let lhs = m.jordan(&m.jordan(&a, &b), &a2);
        let rhs = m.jordan(&a, &m.jordan(&b, &a2));
        prop_assert!(dist(m, &lhs, &rhs) < 1e-10);
    }

    #[test]
    fn involution_is_a_conjugate_linear_isometric_automorphism(i in 0..SPECS.len(), s in any::<u64>(), re in -2.0f64..2.0, im in -2.0f64..2.0) {
        let m = &models()[i];
        let (a, b) = (el(m, s), el(m, s ^ 1));
        let z = C64::new(re, im);
        prop_assert!(dist(m, &m.star(&a.scale(z)), &m.star(&a).scale(z.conj())) < 1e-13);
        prop_assert!(dist(m, &m.star(&m.jordan(&a, &b)), &m.jordan(&m.star(&a), &m.star(&b))) < 1e-13);
        prop_assert!(dist(m, &m.star(&m.star(&a)), &a) == 0.0);
        prop_assert!((m.norm(&m.star(&a)) - m.norm(&a)).abs() < 1e-10);
    }

    #[test]
    fn fundamental_identity_on_vectors(i in 0..SPECS.len(), s in any::<u64>()) {
        let m = &models()[i];
        let (a, b, x) = (el(m, s), el(m, s ^ 1), el(m, s ^ 2));
        let lhs = m.u(&a, &m.u(&b, &m.u(&a, &x)));
        let rhs = m.u(&m.u(&a, &b), &x);
        prop_assert!(dist(m, &lhs, &rhs) < 1e-9);
    }

    #[test]
    fn jb_star_axiom(i in 0..SPECS.len(), s in any::<u64>(), r in 0.3f64..3.0) {
        let m = &models()[i];
        let a = el(m, s).scale_re(r);
        let cube = m.norm(&m.triple(&a, &a, &a));
        prop_assert!((cube - r.powi(3)).abs() <= 1e-8 * r.powi(3).max(1.0));
    }

    #[test]
    fn exp_and_log_invert_each_other(i in 0..SPECS.len(), s in any::<u64>(), scale in 0.1f64..2.8) {
        let m = &models()[i];
        let h = random_self_adjoint(m, s, scale);
        let u = exp_element(m, &h.scale(C64::new(0.0, 1.0)));
        prop_assert!(is_unitary(m, &u));
        if m.norm(&h) < 3.0 {
            let back = unitary_log(m, &u).unwrap();
            prop_assert!(dist(m, &back, &h) < 1e-7, "{}", dist(m, &back, &h));
        }
    }

    #[test]
    fn spectral_resolution_rebuilds_normal_elements(i in 0..SPECS.len(), s in any::<u64>()) {
        let m = &models()[i];
        let u = random_unitary(m, s);
        let sd = spectral_decompose(m, &u).unwrap();
        prop_assume!(!sd.confluent);
        prop_assert!(dist(m, &sd.apply(|z| z), &u) < 1e-8);
        let mut total = m.zero();
        for (k, p) in sd.projections.iter().enumerate() {
            prop_assert!(dist(m, &m.square(p), p) < 1e-8);
            prop_assert!(dist(m, &m.star(p), p) < 1e-8);
            for q in &sd.projections[k + 1..] {
                prop_assert!(m.norm(&m.jordan(p, q)) < 1e-8);
            }
            total += p;
        }
        prop_assert!(dist(m, &total, &m.one()) < 1e-8);
    }

    #[test]
    fn isotopes_share_the_triple_product(i in 0..SPECS.len(), s in any::<u64>()) {
        let m = &models()[i];
        let u = random_unitary(m, s);
        let iso = IsotopeModel::new(m, &u).unwrap();
        let (a, b, c) = (el(m, s ^ 3), el(m, s ^ 4), el(m, s ^ 5));
        prop_assert!(dist(m, &iso.one(), &u) == 0.0);
        prop_assert!(dist(m, &iso.jordan(&iso.one(), &a), &a) < 1e-10);
        prop_assert!(dist(m, &iso.triple(&a, &b, &c), &m.triple(&a, &b, &c)) < 1e-10);
        prop_assert!(dist(m, &iso.star(&iso.star(&a)), &a) < 1e-10);
        prop_assert!((iso.norm(&a) - m.norm(&a)).abs() < 1e-10);
    }

    #[test]
    fn spec_strings_round_trip(i in 0..SPECS.len()) {
        let spec: ModelSpec = SPECS[i].parse().unwrap();
        let again: ModelSpec = spec.to_string().parse().unwrap();
        prop_assert_eq!(&again, &spec);
        prop_assert_eq!(spec.dim(), models()[i].dim());
    }

    #[test]
    fn derived_seeds_separate_indices(base in any::<u64>(), a in 0u64..1000, b in 0u64..1000) {
        prop_assume!(a != b);
        prop_assert_ne!(derive_seed(base, &["x"], a), derive_seed(base, &["x"], b));
        prop_assert_eq!(derive_seed(base, &["x"], a), derive_seed(base, &["x"], a));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn structured_isometries_preserve_distance(i in 0..SPECS.len(), s in any::<u64>()) {
        let m = &models()[i];
        let plant = random_structured_isometry(m, m, s).unwrap();
        let (u, v) = (random_unitary(m, s ^ 7), random_unitary(m, s ^ 8));
        let (du, dv) = (plant.apply(m, m, &u).unwrap(), plant.apply(m, m, &v).unwrap());
        prop_assert!(is_unitary(m, &du));
        prop_assert!((dist(m, &du, &dv) - dist(m, &u, &v)).abs() < 1e-8);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn plant_and_recover(i in 0..SPECS.len() - 2, s in any::<u64>()) {
        // Albert and the mixed sum are exercised by the harness suites.
        let m = &models()[i];
        let plant = random_structured_isometry(m, m, s).unwrap();
        let oracle = plant.oracle(m, m);
        let rep = reconstruct(m, m, &oracle, &ReconstructConfig::with_seed(s)).unwrap();
        prop_assert!(!rep.verdict.is_fail(), "{:?}", rep.failed_stages);
        prop_assert!((&rep.p - &plant.p).coord_norm() < 1e-9);
        let x = el(m, s ^ 9);
        prop_assert!(dist(m, &rep.psi.apply(&x), &plant.extension(m, m, &x)) < 1e-6);
    }
}
