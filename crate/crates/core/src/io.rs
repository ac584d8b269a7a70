//! JSON documents for elements and operators.
//!
//! ```text
//! element:  {"model": <model>, "coords": [[re, im], ...]}
//! operator: {"model": <model>, "target": <model>?, "linearity": "complex-linear",
//!            "matrix": {"field": "complex", "rows": r, "cols": c, "entries": [[re, im], ...]}}
//! ```
//!
//! `<model>` is `{"kind": "matrix", "n": 3}`, `{"kind": "spin", "k": 4}`,
//! `{"kind": "albert"}` or `{"kind": "direct-sum", "summands": [<model>, ...]}`.
//! Conjugate- and real-linear operators use `"field": "real"` with a
//! `2·dim_out × 2·dim_in` matrix on interleaved `[re, im]` coordinates.
//! Entries are row-major. Finite doubles survive a round trip bit for bit.

use serde::{Deserialize, Serialize};

use crate::algebra::{Element, ModelSpec};
use crate::calculus::LinearOperator;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ElementDoc {
    pub model: ModelSpec,
    pub coords: Element,
}

impl ElementDoc {
    pub fn new(model: ModelSpec, coords: Element) -> Result<Self> {
        let doc = ElementDoc { model, coords };
        doc.validate()?;
        Ok(doc)
    }

    fn validate(&self) -> Result<()> {
        if self.coords.dim() != self.model.dim() {
            return Err(Error::ModelMismatch { expected: self.model.dim(), found: self.coords.dim() });
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("element documents always serialize")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let doc: ElementDoc = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        doc.validate()?;
        Ok(doc)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OperatorDoc {
    pub model: ModelSpec,
    /// Target model when it differs from `model`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<ModelSpec>,
    #[serde(flatten)]
    pub operator: LinearOperator,
}

impl OperatorDoc {
    pub fn new(model: ModelSpec, target: Option<ModelSpec>, operator: LinearOperator) -> Result<Self> {
        let target = target.filter(|t| *t != model);
        let doc = OperatorDoc { model, target, operator };
        doc.validate()?;
        Ok(doc)
    }

    fn validate(&self) -> Result<()> {
        let din = self.model.dim();
        let dout = self.target.as_ref().unwrap_or(&self.model).dim();
        if self.operator.dim_in() != din {
            return Err(Error::ModelMismatch { expected: din, found: self.operator.dim_in() });
        }
        if self.operator.dim_out() != dout {
            return Err(Error::ModelMismatch { expected: dout, found: self.operator.dim_out() });
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("operator documents always serialize")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let doc: OperatorDoc = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        doc.validate()?;
        Ok(doc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::AlgebraModel;
    use crate::calculus::{u_op, Linearity};
    use crate::random::random_unitary;

    #[test]
    fn element_round_trip_is_exact() {
        let m = AlgebraModel::from_spec(&"matrix:2+spin:3".parse().unwrap()).unwrap();
        let u = random_unitary(&m, 1);
        let doc = ElementDoc::new(m.spec().clone(), u.clone()).unwrap();
        let back = ElementDoc::from_json(&doc.to_json()).unwrap();
        for (a, b) in u.coords().iter().zip(back.coords.coords()) {
            assert_eq!(a.re.to_bits(), b.re.to_bits());
            assert_eq!(a.im.to_bits(), b.im.to_bits());
        }
        assert!(doc.to_json().starts_with(r#"{"model":{"kind":"direct-sum","summands":[{"kind":"matrix","n":2}"#));
    }

    #[test]
    fn operator_round_trip_is_exact() {
        let m = AlgebraModel::matrix(2).unwrap();
        let ops = [u_op(&m, &random_unitary(&m, 2)), LinearOperator::conjugation(4)];
        for op in ops {
            let doc = OperatorDoc::new(m.spec().clone(), None, op.clone()).unwrap();
            let json = doc.to_json();
            assert!(json.contains("\"linearity\""));
            let back = OperatorDoc::from_json(&json).unwrap();
            assert_eq!(back.operator, op);
        }
        let json = OperatorDoc::new(m.spec().clone(), None, LinearOperator::conjugation(4)).unwrap().to_json();
        assert_eq!(OperatorDoc::from_json(&json).unwrap().operator.linearity(), Linearity::ConjugateLinear);
    }

    #[test]
    fn mismatches_are_rejected() {
        let bad = r#"{"model":{"kind":"matrix","n":2},"coords":[[1.0,0.0]]}"#;
        assert!(matches!(ElementDoc::from_json(bad), Err(Error::ModelMismatch { .. })));
        assert!(matches!(ElementDoc::from_json("{"), Err(Error::Parse(_))));
        let m = AlgebraModel::matrix(1).unwrap();
        assert!(OperatorDoc::new(m.spec().clone(), None, LinearOperator::identity(2)).is_err());
    }
}
