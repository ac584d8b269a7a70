use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::jstar::{isomorphism_residuals, random_jordan_star_isomorphism, JordanStarIsomorphism};
use super::reconstruct::{reconstruct, ReconstructConfig};
use super::structured::random_structured_isometry;
use crate::algebra::{AlgebraModel, JordanStar};
use crate::calculus::{u_op, unitary_residual, LinearOperator};
use crate::error::{Error, Result};
use crate::random::{derive_seed, random_unitary_with, rng};
use crate::report::Verdict;

/// Tolerance on the residuals of an equivalence witness.
pub const WITNESS_TOLERANCE: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum EquivalenceMode {
    /// A complex-linear isometric isomorphism restricts to a surjective
    /// isometry of unitary sets.
    #[serde(rename = "a->c")]
    AToC,
    /// A surjective isometry of unitary sets yields a Jordan *-isomorphism.
    #[serde(rename = "c->a")]
    CToA,
}

impl fmt::Display for EquivalenceMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EquivalenceMode::AToC => "a->c",
            EquivalenceMode::CToA => "c->a",
        })
    }
}

impl FromStr for EquivalenceMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "a->c" | "a→c" => Ok(EquivalenceMode::AToC),
            "c->a" | "c→a" => Ok(EquivalenceMode::CToA),
            other => Err(Error::Parse(format!("unknown equivalence mode {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct EquivalenceWitness {
    pub mode: EquivalenceMode,
    pub residuals: BTreeMap<String, f64>,
    pub verdict: Verdict,
    /// The complex-linear map: given (a→c) or recovered (c→a).
    pub map: LinearOperator,
    /// For c→a, the recovered Jordan *-isomorphism.
    pub phi: Option<JordanStarIsomorphism>,
}

fn finish(mode: EquivalenceMode, residuals: BTreeMap<String, f64>, map: LinearOperator, phi: Option<JordanStarIsomorphism>) -> EquivalenceWitness {
    let worst = residuals.values().fold(0.0f64, |a, &b| a.max(b));
    EquivalenceWitness { mode, verdict: Verdict::from_residual(worst, WITNESS_TOLERANCE), residuals, map, phi }
}

/// Witness for one direction of the equivalence between complex isometric
/// isomorphism of `M`, `N` and existence of a surjective isometry of their
/// unitary sets.
pub fn equivalence_witness(m: &AlgebraModel, n: &AlgebraModel, mode: EquivalenceMode, seed: u64) -> Result<EquivalenceWitness> {
    if m.spec() != n.spec() {
        return Err(Error::StructureMismatch(m.spec().to_string(), n.spec().to_string()));
    }
    match mode {
        EquivalenceMode::AToC => {
            // T = U_{ω*}∘Φ is a complex-linear surjective isometry
            let phi = random_jordan_star_isomorphism(m, n, derive_seed(seed, &["a->c", "phi"], 0))?;
            let mut r = rng(derive_seed(seed, &["a->c", "samples"], 0));
            let omega = random_unitary_with(n, &mut r);
            let t = u_op(n, &n.star(&omega)).compose(&phi.map);
            let t_inv = t.inverse()?;
            let mut res = BTreeMap::from([
                ("unitary_image".to_string(), 0.0f64),
                ("distance".to_string(), 0.0),
                ("surjectivity".to_string(), 0.0),
                ("norm".to_string(), 0.0),
            ]);
            for _ in 0..50 {
                let u = random_unitary_with(m, &mut r);
                let v = random_unitary_with(m, &mut r);
                let (tu, tv) = (t.apply(&u), t.apply(&v));
                let e = res.get_mut("unitary_image").unwrap();
                *e = e.max(unitary_residual(n, &tu));
                let e = res.get_mut("distance").unwrap();
                *e = e.max((n.distance(&tu, &tv) - m.distance(&u, &v)).abs());
                // every unitary of N is hit by a unitary of M
                let w = random_unitary_with(n, &mut r);
                let pre = t_inv.apply(&w);
                let e = res.get_mut("surjectivity").unwrap();
                *e = e.max(unitary_residual(m, &pre)).max(n.distance(&t.apply(&pre), &w));
                let x = crate::random::gaussian_element(m.dim(), &mut r);
                let e = res.get_mut("norm").unwrap();
                *e = e.max((n.norm(&t.apply(&x)) - m.norm(&x)).abs() / m.norm(&x));
            }
            Ok(finish(mode, res, t, None))
        }
        EquivalenceMode::CToA => {
            let sigma = random_structured_isometry(m, n, derive_seed(seed, &["c->a", "plant"], 0))?;
            let delta = sigma.oracle(m, n);
            let rep = reconstruct(m, n, &delta, &ReconstructConfig::with_seed(derive_seed(seed, &["c->a", "reconstruct"], 0)))?;
            rep.ensure_pass()?;
            let inv = isomorphism_residuals(m, n, &rep.phi.map, 20, derive_seed(seed, &["c->a", "invariants"], 0));
            let res = BTreeMap::from([
                ("product".to_string(), inv.product),
                ("involution".to_string(), inv.involution),
                ("unit".to_string(), inv.unit),
                ("norm".to_string(), inv.norm),
                ("complex_linearity".to_string(), inv.complex_linearity),
            ]);
            Ok(finish(mode, res, rep.phi.map.clone(), Some(rep.phi)))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn both_directions_on_small_models() {
        for spec in ["matrix:1", "matrix:2", "spin:3", "matrix:1+matrix:1"] {
            let m = AlgebraModel::from_spec(&spec.parse().unwrap()).unwrap();
            for mode in [EquivalenceMode::AToC, EquivalenceMode::CToA] {
                let w = equivalence_witness(&m, &m, mode, 9).unwrap();
                assert_eq!(w.verdict, Verdict::Pass, "{spec} {mode}: {:?}", w.residuals);
            }
        }
    }

    #[test]
    fn mismatch_is_reported() {
        let a = AlgebraModel::matrix(2).unwrap();
        let b = AlgebraModel::spin(3).unwrap();
        assert!(matches!(equivalence_witness(&a, &b, EquivalenceMode::CToA, 0), Err(Error::StructureMismatch(..))));
    }

    #[test]
    fn mode_parsing() {
        assert_eq!("a->c".parse::<EquivalenceMode>().unwrap(), EquivalenceMode::AToC);
        assert_eq!("c→a".parse::<EquivalenceMode>().unwrap(), EquivalenceMode::CToA);
        assert!("b->a".parse::<EquivalenceMode>().is_err());
    }
}
