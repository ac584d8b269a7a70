//! Verdicts and named tolerance tables shared by reports.

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    /// Passed, but vacuously or with a recorded caveat.
    Warn,
    Fail,
}

impl Verdict {
    /// `Pass` iff `residual ≤ tol`; NaN fails.
    pub fn from_residual(residual: f64, tol: f64) -> Self {
        if residual <= tol {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    /// The worse of the two.
    pub fn and(self, other: Verdict) -> Verdict {
        self.max(other)
    }

    pub fn is_fail(self) -> bool {
        self == Verdict::Fail
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Warn => "warn",
            Verdict::Fail => "fail",
        })
    }
}

/// Named positive tolerances over a fixed set of names.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Tolerances(std::collections::BTreeMap<String, f64>);

impl Tolerances {
    pub fn new(defaults: &[(&str, f64)]) -> Self {
        Tolerances(defaults.iter().map(|(k, v)| (k.to_string(), *v)).collect())
    }

    /// # Panics
    /// If `name` is not a known tolerance.
    pub fn get(&self, name: &str) -> f64 {
        match self.0.get(name) {
            Some(v) => *v,
            None => panic!("unknown tolerance {name}"),
        }
    }

    /// Overrides a known tolerance.
    pub fn set(&mut self, name: &str, value: f64) -> crate::Result<()> {
        if !(value > 0.0 && value.is_finite()) {
            return Err(crate::Error::InvalidParameter(format!("tolerance {name} must be positive, got {value}")));
        }
        match self.0.get_mut(name) {
            Some(v) => {
                *v = value;
                Ok(())
            }
            None => Err(crate::Error::InvalidParameter(format!("unknown tolerance {name}"))),
        }
    }

    pub fn contains(&self, name: &str) -> bool {
        self.0.contains_key(name)
    }

    /// Every tolerance multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> Self {
        Tolerances(self.0.iter().map(|(k, v)| (k.clone(), v * factor)).collect())
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, f64)> {
        self.0.iter().map(|(k, v)| (k.as_str(), *v))
    }
}
