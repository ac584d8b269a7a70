//! One function per suite tag. Each returns the records for one model.

use std::f64::consts::PI;

use num_complex::Complex64 as C64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::{aggregate, Bound, Ctx, JobConfig, Record, Tag, Trial};
use crate::algebra::albert::cayley_hamilton_defect;
use crate::algebra::{albert_cubic_invariants, AlgebraModel, Element, JordanStar, ModelSpec};
use crate::calculus::{
    exp_element, peirce_projections, spectral_decompose, sqrt_unitary, tripotent_residual, u_op, unitary_residual,
};
use crate::error::{Error, Result};
use crate::isometry::{
    apply_structured, chain_subdivide, check_condition_b, doubling_check, equivalence_witness, random_structured_isometry,
    reconstruct, sample_condition_b_candidates, scalar_condition_b_enumeration, verify_inverted_triple_preservation,
    EquivalenceMode, ReconstructConfig, StructuredIsometry,
};
use crate::isotope::{angle_from_distance, midpoint_bound, midpoint_witness, rigidity_residual, unitary_log, IsotopeModel, RigidityOutcome};
use crate::random::{random_element_with_norm, random_self_adjoint_with, random_unitary_near, random_unitary_with, rng};
use crate::report::Verdict;
use crate::stone::{derivation_from_path, power_law_residual, recover_generator, Fault, UnitaryPath};

pub(super) fn run_suite(tag: Tag, ctx: &Ctx) -> Vec<Record> {
    match tag {
        Tag::JordanIdentity => vec![jordan_identity(ctx)],
        Tag::PowerAssociativity => vec![power_associativity(ctx)],
        Tag::FundamentalIdentity => vec![fundamental_identity(ctx)],
        Tag::JbAxiom => vec![jb_axiom(ctx)],
        Tag::TripleNonexpansive => vec![triple_nonexpansive(ctx)],
        Tag::Involution => vec![involution(ctx)],
        Tag::Peirce => vec![peirce(ctx)],
        Tag::Isotope => vec![isotope(ctx)],
        Tag::UnitaryLog => vec![unitary_log_suite(ctx)],
        Tag::LemmaShortDistance => vec![short_distance(ctx)],
        Tag::LemmaRigidity => rigidity(ctx),
        Tag::LemmaConditionB => vec![condition_b(ctx)],
        Tag::ThmPreservation => vec![preservation(ctx)],
        Tag::IsometryDistance => vec![isometry_distance(ctx)],
        Tag::LemmaDoubling => vec![doubling(ctx)],
        Tag::ThmStone => stone(ctx),
        Tag::ThmMain => main_theorem(ctx),
        Tag::CorEquivalence => equivalence(ctx),
        Tag::AlbertCubic => albert_cubic(ctx),
    }
}

/// Records that do not depend on the selected models.
pub(super) fn model_free_records(tag: Tag, config: &JobConfig) -> Vec<Record> {
    match tag {
        Tag::LemmaConditionB => vec![scalar_enumeration(config)],
        _ => Vec::new(),
    }
}

fn unit<A: JordanStar + ?Sized>(alg: &A, r: &mut ChaCha8Rng) -> Element {
    random_element_with_norm(alg, r, 1.0)
}

fn max_of(values: impl IntoIterator<Item = f64>) -> f64 {
    values.into_iter().fold(0.0, |a, b| if b.is_nan() { f64::NAN } else { a.max(b) })
}

fn jordan_identity(ctx: &Ctx) -> Record {
    let m = ctx.source;
    let trials = ctx.run(|i| {
        let mut r = rng(ctx.seed_for("jordan-identity", i));
        let (a, b) = (unit(m, &mut r), unit(m, &mut r));
        let a2 = m.square(&a);
        let lhs = m.jordan(&m.jordan(&a, &b), &a2);
        let rhs = m.jordan(&a, &m.jordan(&b, &a2));
        Trial::ok(m.norm(&(&lhs - &rhs)))
    });
    ctx.record(Tag::JordanIdentity, "identity", "jordan-identity", &trials, 1.0)
}

fn power_associativity(ctx: &Ctx) -> Record {
    let m = ctx.source;
    let trials = ctx.run(|i| {
        let mut r = rng(ctx.seed_for("power-associativity", i));
        let a = unit(m, &mut r);
        let powers: Vec<Element> = (0..=8).map(|k| m.power(&a, k)).collect();
        let mut worst = 0.0f64;
        for p in 1..=4 {
            for q in p..=(8 - p) {
                worst = worst.max(m.norm(&(&m.jordan(&powers[p], &powers[q]) - &powers[p + q])));
            }
        }
        Trial::ok(worst)
    });
    ctx.record(Tag::PowerAssociativity, "powers", "power-associativity", &trials, 1.0)
}

fn fundamental_identity(ctx: &Ctx) -> Record {
    let m = ctx.source;
    let trials = ctx.run(|i| {
        let mut r = rng(ctx.seed_for("fundamental-identity", i));
        let (a, b) = (unit(m, &mut r), unit(m, &mut r));
        let ua = u_op(m, &a);
        let lhs = ua.compose(&u_op(m, &b)).compose(&ua);
        let rhs = u_op(m, &m.u(&a, &b));
        let scale = lhs.frobenius_norm().max(rhs.frobenius_norm()).max(f64::MIN_POSITIVE);
        Trial::ok(lhs.distance(&rhs) / scale)
    });
    ctx.record(Tag::FundamentalIdentity, "operator", "fundamental-identity", &trials, 1.0)
}

fn jb_axiom(ctx: &Ctx) -> Record {
    let m = ctx.source;
    let trials = ctx.run(|i| {
        let mut r = rng(ctx.seed_for("jb-axiom", i));
        let s = r.random_range(0.5..2.0);
        let a = random_element_with_norm(m, &mut r, s);
        let cube = s * s * s;
        Trial::ok((m.norm(&m.triple(&a, &a, &a)) - cube).abs() / cube)
    });
    ctx.record(Tag::JbAxiom, "cube-norm", "jb-axiom", &trials, 1.0)
}

fn triple_nonexpansive(ctx: &Ctx) -> Record {
    let m = ctx.source;
    let trials = ctx.run(|i| {
        let mut r = rng(ctx.seed_for("triple-nonexpansive", i));
        let norms: [f64; 3] = std::array::from_fn(|_| r.random_range(0.5..1.5));
        let [x, y, z] = norms.map(|s| random_element_with_norm(m, &mut r, s));
        let excess = m.norm(&m.triple(&x, &y, &z)) - norms.iter().product::<f64>();
        Trial::ok(excess.max(0.0))
    });
    ctx.record(Tag::TripleNonexpansive, "bound", "triple-nonexpansive", &trials, 1.0)
}

fn involution(ctx: &Ctx) -> Record {
    let m = ctx.source;
    let i_unit = C64::new(0.0, 1.0);
    let trials = ctx.run(|i| {
        let mut r = rng(ctx.seed_for("involution", i));
        let (a, b) = (unit(m, &mut r), unit(m, &mut r));
        let a_star = m.star(&a);
        Trial::ok(max_of([
            m.norm(&(&m.star(&a_star) - &a)),
            m.norm(&(&m.star(&m.jordan(&a, &b)) - &m.jordan(&a_star, &m.star(&b)))),
            (m.norm(&a_star) - 1.0).abs(),
            m.norm(&(&m.star(&a.scale(i_unit)) + &a_star.scale(i_unit))),
            m.norm(&(&m.star(&m.one()) - &m.one())),
        ]))
    });
    ctx.record(Tag::Involution, "axioms", "involution", &trials, 1.0)
}

fn peirce_trial(m: &AlgebraModel, r: &mut ChaCha8Rng) -> Result<f64> {
    let v = random_unitary_with(m, r);
    let h = random_self_adjoint_with(m, r, 1.0);
    let p = spectral_decompose(m, &h)?.apply(|l| C64::from(if l.re > 0.0 { 1.0 } else { 0.0 }));
    let e = m.u(&v, &p);
    let pp = peirce_projections(m, &e)?;
    let ops = [&pp.p2, &pp.p1, &pp.p0];
    let mut worst = tripotent_residual(m, &e);
    for _ in 0..3 {
        let (x, y, z) = (unit(m, r), unit(m, r), unit(m, r));
        let parts: Vec<Element> = ops.iter().map(|p| p.apply(&x)).collect();
        let sum = parts.iter().fold(Element::zeros(m.dim()), |acc, p| &acc + p);
        worst = worst.max((&sum - &x).coord_norm());
        for (j, pj) in ops.iter().enumerate() {
            for (k, part) in parts.iter().enumerate() {
                let image = pj.apply(part);
                let expected = if j == k { part.clone() } else { Element::zeros(m.dim()) };
                worst = worst.max((&image - &expected).coord_norm());
            }
            worst = worst.max(m.norm(&parts[j]) - 1.0);
        }
        // {E₂, E₀, E} = {E₀, E₂, E} = 0
        worst = worst.max(m.triple(&parts[0], &pp.p0.apply(&y), &z).coord_norm());
        worst = worst.max(m.triple(&parts[2], &pp.p2.apply(&y), &z).coord_norm());
    }
    Ok(worst)
}

fn peirce(ctx: &Ctx) -> Record {
    let m = ctx.source;
    let trials = ctx.run(|i| Trial::from(peirce_trial(m, &mut rng(ctx.seed_for("peirce", i)))));
    ctx.record(Tag::Peirce, "projections", "peirce", &trials, 1.0)
}

fn isotope_trial(m: &AlgebraModel, r: &mut ChaCha8Rng) -> Result<f64> {
    let u = random_unitary_with(m, r);
    let iso = IsotopeModel::new(m, &u)?;
    let (x, y, z) = (unit(m, r), unit(m, r), unit(m, r));
    let w = random_unitary_with(m, r);
    let w_iso = random_unitary_with(&iso, r);
    Ok(max_of([
        (&iso.jordan(&u, &x) - &x).coord_norm(),
        (&iso.triple(&x, &y, &z) - &m.triple(&x, &y, &z)).coord_norm(),
        (&iso.star(&iso.star(&x)) - &x).coord_norm(),
        unitary_residual(&iso, &w),
        unitary_residual(m, &w_iso),
    ]))
}

fn isotope(ctx: &Ctx) -> Record {
    let m = ctx.source;
    let trials = ctx.run(|i| Trial::from(isotope_trial(m, &mut rng(ctx.seed_for("isotope", i)))));
    ctx.record(Tag::Isotope, "isotope-laws", "isotope", &trials, 1.0)
}

fn log_trial(m: &AlgebraModel, r: &mut ChaCha8Rng) -> Result<f64> {
    let u = random_unitary_with(m, r);
    let h = unitary_log(m, &u)?;
    let e = exp_element(m, &h.scale(C64::new(0.0, 1.0)));
    let root = sqrt_unitary(m, &u)?;
    Ok(max_of([
        m.distance(&e, &u),
        m.distance(&m.star(&h), &h),
        m.norm(&h) - PI,
        m.distance(&m.square(&root), &u),
        unitary_residual(m, &root),
    ]))
}

fn unitary_log_suite(ctx: &Ctx) -> Record {
    let m = ctx.source;
    let trials = ctx.run(|i| Trial::from(log_trial(m, &mut rng(ctx.seed_for("unitary-log", i)))));
    ctx.record(Tag::UnitaryLog, "exp-log", "unitary-log", &trials, 1.0)
}

fn short_distance_trial(m: &AlgebraModel, r: &mut ChaCha8Rng, i: u64) -> Result<f64> {
    let u = random_unitary_with(m, r);
    let scale = if i.is_multiple_of(5) { 1e-3 } else { 0.9 * PI };
    let v = random_unitary_near(m, &u, r, scale)?;
    let t0 = angle_from_distance(m.distance(&u, &v));
    let w = midpoint_witness(m, &u, &v)?;
    let bound = midpoint_bound(t0);
    Ok(max_of([
        m.distance(&m.u(&w, &m.star(&u)), &v),
        m.distance(&w, &u) - bound,
        m.distance(&w, &v) - bound,
        unitary_residual(m, &w),
    ]))
}

fn short_distance(ctx: &Ctx) -> Record {
    let m = ctx.source;
    let trials = ctx.run(|i| Trial::from(short_distance_trial(m, &mut rng(ctx.seed_for("lemma-short-distance", i)), i)));
    ctx.record(Tag::LemmaShortDistance, "midpoint", "lemma-short-distance", &trials, 1.0)
}

/// Positive spectral projection of a random self-adjoint element of `alg`,
/// or the unit when that projection vanishes.
fn random_projection<A: JordanStar + ?Sized>(alg: &A, r: &mut ChaCha8Rng) -> Result<Element> {
    let k = random_self_adjoint_with(alg, r, 1.0);
    let p = spectral_decompose(alg, &k)?.apply(|l| C64::from(if l.re > 0.0 { 1.0 } else { 0.0 }));
    Ok(if p.coord_norm() < 1e-12 { alg.one() } else { p })
}

struct RigidityTrial {
    holds: Result<f64>,
    boundary: Result<f64>,
    generic_held: bool,
}

fn rigidity_trial(m: &AlgebraModel, r: &mut ChaCha8Rng, i: u64) -> Result<RigidityTrial> {
    let u = random_unitary_with(m, r);
    let iso = IsotopeModel::new(m, &u)?;
    let k = random_self_adjoint_with(&iso, r, 1.0);
    let eta = 10f64.powf(-r.random_range(10.0..12.0));
    let mut planted = vec![exp_element(&iso, &k.scale(C64::new(0.0, eta)))];
    if i.is_multiple_of(10) {
        planted.push(u.clone());
        planted.push(midpoint_witness(m, &u, &u)?);
    }
    let generic_k = random_self_adjoint_with(&iso, r, 0.99 * PI);
    let generic = exp_element(&iso, &generic_k.scale(C64::new(0.0, 1.0)));
    let mut generic_held = false;
    let holds = (|| {
        let mut worst = 0.0f64;
        for w in &planted {
            match rigidity_residual(m, &u, w)? {
                RigidityOutcome::Holds { distance, .. } => worst = worst.max(distance),
                other => return Err(Error::HypothesisNotMet(format!("planted instance rejected: {other:?}"))),
            }
        }
        if let RigidityOutcome::Holds { distance, .. } = rigidity_residual(m, &u, &generic)? {
            generic_held = true;
            worst = worst.max(distance);
        }
        Ok(worst)
    })();
    let boundary = (|| {
        let p = random_projection(&iso, r)?;
        let flip = exp_element(&iso, &p.scale(C64::new(0.0, PI)));
        let mut worst = 0.0f64;
        for w in [u.scale_re(-1.0), flip] {
            if let RigidityOutcome::Holds { distance, .. } = rigidity_residual(m, &u, &w)? {
                // accepted although the lemma's hypothesis fails: record the gap
                worst = worst.max(distance.max(1.0));
            }
        }
        Ok(worst)
    })();
    Ok(RigidityTrial { holds, boundary, generic_held })
}

fn rigidity(ctx: &Ctx) -> Vec<Record> {
    let m = ctx.source;
    let outcomes = ctx.run(|i| rigidity_trial(m, &mut rng(ctx.seed_for("lemma-rigidity", i)), i));
    let mut holds = Vec::new();
    let mut boundary = Vec::new();
    let mut generic_held = 0usize;
    for o in outcomes {
        match o {
            Ok(t) => {
                holds.push(Trial::from(t.holds));
                boundary.push(Trial::from(t.boundary));
                generic_held += usize::from(t.generic_held);
            }
            Err(e) => {
                holds.push(Trial::Error(e.to_string()));
                boundary.push(Trial::Error(e.to_string()));
            }
        }
    }
    let mut boundary = ctx.record(Tag::LemmaRigidity, "boundary-rejected", "lemma-rigidity", &boundary, 1.0);
    boundary.notes.insert("generic_hypothesis_held".into(), generic_held as f64);
    vec![ctx.record(Tag::LemmaRigidity, "hypothesis-holds", "lemma-rigidity", &holds, 1.0), boundary]
}

fn condition_b_trial(m: &AlgebraModel, r: &mut ChaCha8Rng) -> Result<(f64, usize, usize)> {
    let u = random_unitary_with(m, r);
    let v = random_unitary_near(m, &u, r, 0.45)?;
    let candidates = sample_condition_b_candidates(m, &u, &v, 60, r)?;
    let rep = check_condition_b(m, &u, &v, &candidates)?;
    Ok(((-rep.min_slack).max(0.0), rep.members, rep.nontrivial))
}

fn condition_b(ctx: &Ctx) -> Record {
    let m = ctx.source;
    let outcomes = ctx.run(|i| condition_b_trial(m, &mut rng(ctx.seed_for("lemma-condition-b", i))));
    let mut trials = Vec::new();
    let (mut with_nontrivial, mut members) = (0usize, 0usize);
    for o in outcomes {
        trials.push(match o {
            Ok((residual, mem, nontrivial)) => {
                members += mem;
                with_nontrivial += usize::from(nontrivial > 0);
                Trial::Value { residual, warn: nontrivial == 0 }
            }
            Err(e) => Trial::Error(e.to_string()),
        });
    }
    let mut rec = ctx.record(Tag::LemmaConditionB, "inequality", "lemma-condition-b", &trials, 1.0);
    let fraction = with_nontrivial as f64 / trials.len().max(1) as f64;
    if rec.verdict != Verdict::Fail {
        rec.verdict = if fraction >= 0.5 { Verdict::Pass } else { Verdict::Warn };
    }
    rec.notes.insert("nontrivial_fraction".into(), fraction);
    rec.notes.insert("mean_members".into(), members as f64 / trials.len().max(1) as f64);
    rec
}

/// Exhaustive search on `ℂ³`, the fallback when sampled trials find no
/// nontrivial member.
fn scalar_enumeration(config: &JobConfig) -> Record {
    let tol = config.tolerances.get("lemma-condition-b");
    let (trial, members) = match scalar_condition_b_enumeration(&[0.3, 0.1, -0.05], 24) {
        Ok(rep) if rep.members >= 3 => (Trial::ok((-rep.min_slack).max(0.0)), rep.members),
        Ok(rep) => (Trial::Error(format!("only {} members found", rep.members)), rep.members),
        Err(e) => (Trial::Error(e.to_string()), 0),
    };
    let mut rec = aggregate(Tag::LemmaConditionB, "scalar-enumeration", "matrix:1⊕matrix:1⊕matrix:1", &[trial], tol, Bound::Upper, 1.0);
    rec.notes.insert("members".into(), members as f64);
    rec
}

fn plant(ctx: &Ctx, tag: &str, i: u64) -> Result<StructuredIsometry> {
    random_structured_isometry(ctx.source, ctx.target, ctx.seed_for(&format!("{tag}/plant"), i))
}

fn preservation_trial(ctx: &Ctx, i: u64) -> Result<f64> {
    let (m, n) = (ctx.source, ctx.target);
    let s = plant(ctx, "thm-preservation", i)?;
    let delta = s.oracle(m, n);
    let mut r = rng(ctx.seed_for("thm-preservation", i));
    let u = random_unitary_with(m, &mut r);
    let v = random_unitary_near(m, &u, &mut r, 0.45)?;
    verify_inverted_triple_preservation(m, n, &delta, &u, &v)
}

fn preservation(ctx: &Ctx) -> Record {
    let trials = ctx.run(|i| Trial::from(preservation_trial(ctx, i)));
    ctx.record(Tag::ThmPreservation, "structured", "thm-preservation", &trials, 1.0)
}

fn isometry_distance_trial(ctx: &Ctx, i: u64) -> Result<f64> {
    let (m, n) = (ctx.source, ctx.target);
    let s = plant(ctx, "isometry-distance", i)?;
    let mut r = rng(ctx.seed_for("isometry-distance", i));
    let (u, v) = (random_unitary_with(m, &mut r), random_unitary_with(m, &mut r));
    let (du, dv) = (apply_structured(&s, m, n, &u)?, apply_structured(&s, m, n, &v)?);
    let d = m.distance(&u, &v);
    Ok(max_of([(n.distance(&du, &dv) - d).abs() / d.max(1.0), unitary_residual(n, &du)]))
}

fn isometry_distance(ctx: &Ctx) -> Record {
    let trials = ctx.run(|i| Trial::from(isometry_distance_trial(ctx, i)));
    ctx.record(Tag::IsometryDistance, "structured", "isometry-distance", &trials, 1.0)
}

/// Depth `i mod 7`: `(s − t)‖h‖` is placed strictly between the thresholds
/// `2^{m−1} ln 1.5` and `2^m ln 1.5`.
fn doubling_trial(ctx: &Ctx, i: u64) -> Result<(f64, u32)> {
    let (m, n) = (ctx.source, ctx.target);
    let s = plant(ctx, "lemma-doubling", i)?;
    let delta = s.oracle(m, n);
    let mut r = rng(ctx.seed_for("lemma-doubling", i));
    let depth = (i % 7) as i32;
    let k = random_self_adjoint_with(m, &mut r, 2.0);
    let u = exp_element(m, &k.scale(C64::new(0.0, 1.0)));
    let h0 = &k + &m.square(&k).scale_re(0.3);
    let h = h0.scale_re(1.0 / m.norm(&h0));
    let frac = if depth == 0 { r.random_range(0.1..0.95) } else { r.random_range(0.55..0.95) };
    let x = f64::powi(2.0, depth) * 1.5f64.ln() * frac / m.norm(&h);
    let t = r.random_range(-1.0..1.0);
    let chain = chain_subdivide(m, &u, &h, t + x, t)?;
    let rep = doubling_check(m, n, &delta, &chain)?;
    Ok((rep.endpoint.max(rep.links), rep.m))
}

fn doubling(ctx: &Ctx) -> Record {
    let outcomes = ctx.run(|i| doubling_trial(ctx, i));
    let max_m = outcomes.iter().filter_map(|o| o.as_ref().ok().map(|(_, m)| *m)).max().unwrap_or(0);
    let trials: Vec<Trial> = outcomes.into_iter().map(|o| Trial::from(o.map(|(r, _)| r))).collect();
    let mut rec = ctx.record(Tag::LemmaDoubling, "endpoint", "lemma-doubling", &trials, 1.0);
    rec.notes.insert("max_depth".into(), f64::from(max_m));
    rec
}

struct StoneTrial {
    generator: Result<f64>,
    derivation: Result<f64>,
    power: Result<f64>,
    structured: Result<f64>,
    fault: Result<f64>,
}

fn stone_trial(ctx: &Ctx, i: u64) -> StoneTrial {
    let (m, n) = (ctx.source, ctx.target);
    let mut r = rng(ctx.seed_for("thm-stone", i));
    let h = random_self_adjoint_with(m, &mut r, 3.0);
    let scale = m.norm(&h).max(1.0);
    let path = UnitaryPath::planted(m, &h, 1.0);
    let generator = path
        .as_ref()
        .map_err(Clone::clone)
        .and_then(|p| recover_generator(m, p))
        .map(|g| m.distance(&g.h, &h) / scale);
    let derivation = path
        .as_ref()
        .map_err(Clone::clone)
        .and_then(|p| derivation_from_path(m, p))
        .map(|d| d.leibniz.max(d.unit_residual / scale));
    let power = path.as_ref().map_err(Clone::clone).and_then(|p| power_law_residual(m, p, 0.2, 5));
    let structured = (|| {
        let s = plant(ctx, "thm-stone", i)?;
        let sign = &s.p.scale_re(2.0) - &n.one();
        let expected = n.jordan(&sign, &s.phi.apply(&h));
        let at_one = StructuredIsometry { omega: n.one(), ..s };
        let mapped = UnitaryPath::planted(m, &h, 1.0)?.mapped(move |u| at_one.extension(m, n, u));
        let g = recover_generator(n, &mapped)?;
        Ok(n.distance(&g.h, &expected) / scale)
    })();
    let fault = (|| {
        let mut weakest = f64::INFINITY;
        for f in [Fault::HalfLine, Fault::TimeWarp] {
            let p = UnitaryPath::faulty(m, &h, 1.0, f)?;
            match recover_generator(m, &p) {
                Err(Error::GroupLawViolated(g)) => weakest = weakest.min(g),
                Ok(_) => weakest = 0.0,
                Err(e) => return Err(e),
            }
        }
        Ok(weakest)
    })();
    StoneTrial { generator, derivation, power, structured, fault }
}

fn stone(ctx: &Ctx) -> Vec<Record> {
    let outcomes = ctx.run(|i| stone_trial(ctx, i));
    let collect = |f: fn(&StoneTrial) -> &Result<f64>| -> Vec<Trial> {
        outcomes.iter().map(|o| Trial::from(f(o).clone())).collect()
    };
    vec![
        ctx.record(Tag::ThmStone, "derivation", "thm-stone", &collect(|o| &o.derivation), 1.0),
        ctx.record(Tag::ThmStone, "fault-injection", "thm-stone-fault", &collect(|o| &o.fault), 1.0),
        ctx.record(Tag::ThmStone, "generator", "thm-stone", &collect(|o| &o.generator), 1.0),
        ctx.record(Tag::ThmStone, "power-law", "thm-stone-power", &collect(|o| &o.power), 1.0),
        ctx.record(Tag::ThmStone, "structured-path", "thm-stone", &collect(|o| &o.structured), 1.0),
    ]
}

struct MainTrial {
    extension: Trial,
    uniqueness: Trial,
    p_matched: bool,
}

fn main_trial(ctx: &Ctx, i: u64, probes: &[Element]) -> Result<MainTrial> {
    let (m, n) = (ctx.source, ctx.target);
    let s = plant(ctx, "thm-main", i)?;
    let delta = s.oracle(m, n);
    let mut cfg = ReconstructConfig::with_seed(ctx.seed_for("thm-main/a", i));
    cfg.tolerances = ctx.tolerances.clone();
    let a = reconstruct(m, n, &delta, &cfg)?;
    let p_matched = (&a.p - &s.p).coord_norm() <= 1e-9;
    let extension = if a.verdict == Verdict::Fail {
        Trial::Error(format!("stages failed: {}", a.failed_stages.join(", ")))
    } else if !p_matched {
        Trial::Error("recovered p differs from the planted p".into())
    } else {
        Trial::ok(a.stages["extension_sup"])
    };
    let mut cfg_b = ReconstructConfig::with_seed(ctx.seed_for("thm-main/b", i));
    cfg_b.tolerances = ctx.tolerances.clone();
    cfg_b.t_max = 0.05;
    cfg_b.spot_pairs = 10;
    cfg_b.probes = 20;
    let uniqueness = match reconstruct(m, n, &delta, &cfg_b) {
        Ok(b) => Trial::ok(max_of(probes.iter().flat_map(|x| {
            let ya = a.psi.apply(x);
            [n.distance(&ya, &b.psi.apply(x)), n.distance(&ya, &s.extension(m, n, x))]
        }))),
        Err(e) => Trial::Error(e.to_string()),
    };
    Ok(MainTrial { extension, uniqueness, p_matched })
}

fn main_theorem(ctx: &Ctx) -> Vec<Record> {
    let m = ctx.source;
    let mut r = rng(ctx.seed_for("thm-main/probes", 0));
    let probes: Vec<Element> = (0..8).map(|_| unit(m, &mut r)).collect();
    let outcomes = ctx.run(|i| main_trial(ctx, i, &probes));
    let (mut ext, mut uniq) = (Vec::new(), Vec::new());
    let mut matched = 0usize;
    for o in outcomes {
        match o {
            Ok(t) => {
                matched += usize::from(t.p_matched);
                ext.push(t.extension);
                uniq.push(t.uniqueness);
            }
            Err(e) => {
                ext.push(Trial::Error(e.to_string()));
                uniq.push(Trial::Error(e.to_string()));
            }
        }
    }
    let total = ext.len().max(1) as f64;
    let mut extension = ctx.record(Tag::ThmMain, "extension", "thm-main", &ext, 0.99);
    extension.notes.insert("p_match_fraction".into(), matched as f64 / total);
    let uniqueness = ctx.record(Tag::ThmMain, "uniqueness", "thm-main-uniqueness", &uniq, 0.99);
    vec![extension, uniqueness]
}

fn equivalence(ctx: &Ctx) -> Vec<Record> {
    let (m, n) = (ctx.source, ctx.target);
    [EquivalenceMode::AToC, EquivalenceMode::CToA]
        .into_iter()
        .map(|mode| {
            let tag = format!("cor-equivalence/{mode}");
            let trials = ctx.run(|i| {
                Trial::from(equivalence_witness(m, n, mode, ctx.seed_for(&tag, i)).map(|w| max_of(w.residuals.values().copied())))
            });
            ctx.record(Tag::CorEquivalence, &mode.to_string(), "cor-equivalence", &trials, 1.0)
        })
        .collect()
}

fn albert_cubic(ctx: &Ctx) -> Vec<Record> {
    let m = ctx.source;
    let parts: Vec<&AlgebraModel> = if *m.spec() == ModelSpec::Albert {
        vec![m]
    } else {
        m.summands().iter().map(|s| &s.model).filter(|s| *s.spec() == ModelSpec::Albert).collect()
    };
    if parts.is_empty() {
        return Vec::new();
    }
    let trials = ctx.run(|i| {
        let mut r = rng(ctx.seed_for("albert-cubic", i));
        let mut worst = 0.0f64;
        for alg in &parts {
            let s = r.random_range(0.5..2.0);
            let a = random_element_with_norm(*alg, &mut r, s);
            worst = worst.max(cayley_hamilton_defect(*alg, &a).coord_norm() / (s * s * s).max(1.0));
            if i == 0 {
                // T(1) = S(1) = 3, N(1) = 1
                let inv = albert_cubic_invariants(&alg.one());
                let expected = [3.0, 3.0, 1.0];
                for (got, want) in [inv.trace, inv.quadratic, inv.norm].iter().zip(expected) {
                    worst = worst.max((got - want).norm());
                }
            }
        }
        Trial::ok(worst)
    });
    vec![ctx.record(Tag::AlbertCubic, "cayley-hamilton", "albert-cubic", &trials, 1.0)]
}
