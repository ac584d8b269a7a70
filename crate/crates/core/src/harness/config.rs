//! Plain-text `key = value` job files.
//!
//! ```text
//! # comments and blank lines are ignored
//! suite = fundamental-identity, jb-axiom
//! model = matrix:3
//! model = matrix:2 ⊕ matrix:2
//! trials = 200
//! seed = 7
//! tol = jb-axiom=1e-6
//! tol.extension_sup = 2e-6
//! out = report.json
//! format = json
//! ```
//!
//! `model` may repeat; several models on one line are separated by `;`.

use super::{Format, JobConfig};
use crate::error::{Error, Result};

pub fn parse_config_text(text: &str) -> Result<JobConfig> {
    let mut c = JobConfig::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |msg: String| Error::Config(format!("line {}: {msg}", lineno + 1));
        let (key, value) = line.split_once('=').ok_or_else(|| err(format!("expected key = value, got '{line}'")))?;
        let (key, value) = (key.trim(), value.trim());
        let res = match key {
            "suite" | "suites" => c.set_suites(value),
            "model" | "models" => value
                .split(';')
                .map(str::trim)
                .filter(|m| !m.is_empty())
                .try_for_each(|m| c.add_model(m)),
            "trials" => value
                .parse::<usize>()
                .map_err(|_| Error::Config(format!("bad trials '{value}'")))
                .and_then(|t| c.set_trials(t)),
            "seed" => value
                .parse::<u64>()
                .map(|s| c.seed = s)
                .map_err(|_| Error::Config(format!("bad seed '{value}'"))),
            "tol" => c.set_tolerance(value),
            "out" => {
                c.out = Some(value.into());
                Ok(())
            }
            "format" => value.parse::<Format>().map(|f| c.format = f),
            _ => match key.strip_prefix("tol.") {
                Some(name) => c.set_tolerance(&format!("{name}={value}")),
                None => Err(Error::Config(format!("unknown key '{key}'"))),
            },
        };
        res.map_err(|e| err(e.to_string()))?;
    }
    Ok(c)
}
