//! Resolved laboratory configuration: evaluator and quadrature settings,
//! explicit-formula parameters, and every check bound used by the
//! verification suites.
//!
//! The on-disk format is flat `key = value` text with dotted keys
//! (`eval.fd_step = 0.03`, `check.thm1_factor = 10`). Lines starting with `#`
//! are comments. Unknown keys are rejected so a typo cannot silently leave a
//! default in place.

use crate::error::{LabError, Result};
use crate::quad::QuadConfig;
use crate::special::EvalConfig;
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};
use std::collections::BTreeMap;
use std::path::Path;

/// Which logarithm multiplies the Gonek main term.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum GonekLog {
    /// `log² T`, as displayed.
    #[default]
    Literal,
    /// `log²(T/2π)`, for sensitivity runs.
    Shifted,
}

/// Desk-scale instantiations of the implicit constants in the O(·) and ≪
/// claims, plus numerical tolerances for identity checks.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CheckBounds {
    pub re_j: f64,
    pub z_squared: f64,
    pub n_residue: f64,
    /// |E(T)| ≤ factor·T^{1/3}
    pub second_moment_factor: f64,
    pub thm1_factor: f64,
    pub thm2_factor: f64,
    /// Relative size of the integration-by-parts boundary term.
    pub thm2_bridge: f64,
    pub thm4_ratio: f64,
    pub identity31: f64,
    pub gonek_lo: f64,
    pub gonek_hi: f64,
    pub gonek_symmetry: f64,
    pub gonek_zero_sum: f64,
    pub explicit_tol: f64,
    pub logderiv_tol_sigma2: f64,
    pub logderiv_tol_half: f64,
    pub window_bound: f64,
    pub r_moment_t_spread: f64,
    pub r_moment_k_spread: f64,
    pub omega_factor: f64,
    pub s_log_factor: f64,
}

impl Default for CheckBounds {
    fn default() -> Self {
        Self {
            re_j: 1e-7,
            z_squared: 1e-9,
            n_residue: 0.05,
            second_moment_factor: 5.0,
            thm1_factor: 10.0,
            thm2_factor: 10.0,
            thm2_bridge: 0.02,
            thm4_ratio: 1.0,
            identity31: 5.0,
            gonek_lo: 0.75,
            gonek_hi: 1.25,
            gonek_symmetry: 0.03,
            gonek_zero_sum: 1e-10,
            explicit_tol: 0.05,
            logderiv_tol_sigma2: 0.01,
            logderiv_tol_half: 0.05,
            window_bound: 5.0,
            r_moment_t_spread: 2.0,
            r_moment_k_spread: 3.0,
            omega_factor: 3.0,
            s_log_factor: 1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExplicitConfig {
    pub x: f64,
    /// Zero window half-width is `window_c / log X`.
    pub window_c: f64,
    pub trivial_zeros: usize,
    /// Prime cutoff `P = max(3, T^prime_exponent)` for R(t).
    pub prime_exponent: f64,
}

impl Default for ExplicitConfig {
    fn default() -> Self {
        Self { x: crate::DEFAULT_X, window_c: 30.0, trivial_zeros: 50, prime_exponent: 0.25 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LabConfig {
    pub t0: f64,
    pub eval: EvalConfig,
    pub quad: QuadConfig,
    pub explicit: ExplicitConfig,
    pub gonek_log: GonekLog,
    pub check: CheckBounds,
}

impl Default for LabConfig {
    fn default() -> Self {
        Self {
            t0: crate::DEFAULT_T0,
            eval: EvalConfig::default(),
            quad: QuadConfig::default(),
            explicit: ExplicitConfig::default(),
            gonek_log: GonekLog::default(),
            check: CheckBounds::default(),
        }
    }
}

impl LabConfig {
    pub fn validate(&self) -> Result<()> {
        self.eval.validate()?;
        self.quad.validate()?;
        if !(self.t0 >= 2.0) {
            return Err(LabError::Domain("t0 must be at least 2".into()));
        }
        if !(self.explicit.x >= 2.0) || !(self.explicit.window_c > 0.0) {
            return Err(LabError::Domain("explicit.x must be ≥ 2 and explicit.window_c positive".into()));
        }
        Ok(())
    }

    /// Parses flat `key = value` text on top of the defaults.
    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = Self::default();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| LabError::Format(format!("line {}: expected key = value", lineno + 1)))?;
            cfg.set(key.trim(), value.trim())
                .map_err(|e| LabError::Format(format!("line {}: {e}", lineno + 1)))?;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    /// Overrides one dotted key, keeping the type of the existing value.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let mut tree = serde_json::to_value(*self).expect("config serializes");
        let mut slot = &mut tree;
        for part in key.split('.') {
            slot = slot
                .get_mut(part)
                .ok_or_else(|| LabError::Format(format!("unknown config key `{key}`")))?;
        }
        let parsed = match slot {
            Value::Number(n) if n.is_u64() => value.parse::<u64>().ok().map(Value::from),
            Value::Number(_) => value.parse::<f64>().ok().map(Value::from),
            Value::String(_) => Some(Value::String(value.to_string())),
            Value::Bool(_) => value.parse::<bool>().ok().map(Value::from),
            _ => None,
        }
        .ok_or_else(|| LabError::Format(format!("bad value `{value}` for `{key}`")))?;
        *slot = parsed;
        *self = serde_json::from_value(tree).map_err(|e| LabError::Format(format!("`{key}`: {e}")))?;
        Ok(())
    }

    /// Every resolved setting as dotted key → value text.
    pub fn echo(&self) -> BTreeMap<String, String> {
        fn walk(prefix: &str, v: &Value, out: &mut BTreeMap<String, String>) {
            match v {
                Value::Object(map) => {
                    for (k, v) in map {
                        let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                        walk(&key, v, out);
                    }
                }
                Value::String(s) => {
                    out.insert(prefix.to_string(), s.clone());
                }
                other => {
                    out.insert(prefix.to_string(), other.to_string());
                }
            }
        }
        let mut out = BTreeMap::new();
        walk("", &serde_json::to_value(*self).expect("config serializes"), &mut out);
        out
    }

    /// Renders the configuration in the flat text format.
    pub fn to_text(&self) -> String {
        self.echo().iter().map(|(k, v)| format!("{k} = {v}\n")).collect()
    }

    pub fn echo_json(&self) -> Value {
        Value::Object(self.echo().into_iter().map(|(k, v)| (k, Value::String(v))).collect::<Map<_, _>>())
    }
}

/// Directory for zero caches and arithmetic tables: `$CRITLINE_CACHE_DIR`,
/// or the current directory when unset.
pub fn cache_dir() -> std::path::PathBuf {
    std::env::var_os("CRITLINE_CACHE_DIR").map(Into::into).unwrap_or_else(|| ".".into())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_round_trip() {
        let mut cfg = LabConfig::default();
        cfg.set("check.thm1_factor", "12.5").unwrap();
        cfg.set("eval.em_terms", "12").unwrap();
        cfg.set("gonek_log", "shifted").unwrap();
        let back = LabConfig::parse(&cfg.to_text()).unwrap();
        assert_eq!(back, cfg);
        assert_eq!(back.check.thm1_factor, 12.5);
        assert_eq!(back.gonek_log, GonekLog::Shifted);
    }

    #[test]
    fn comments_and_blank_lines() {
        let cfg = LabConfig::parse("# bounds\n\nquad.panel_max = 0.125\n").unwrap();
        assert_eq!(cfg.quad.panel_max, 0.125);
    }

    #[test]
    fn rejects_unknown_keys_and_bad_values() {
        assert!(matches!(LabConfig::parse("check.nope = 1"), Err(LabError::Format(_))));
        assert!(matches!(LabConfig::parse("t0 = abc"), Err(LabError::Format(_))));
        assert!(matches!(LabConfig::parse("gonek_log = sideways"), Err(LabError::Format(_))));
        assert!(matches!(LabConfig::parse("t0"), Err(LabError::Format(_))));
    }

    #[test]
    fn validation_runs_after_parse() {
        assert!(LabConfig::parse("eval.max_t = 10").is_err());
    }

    #[test]
    fn echo_lists_every_leaf() {
        let echo = LabConfig::default().echo();
        assert_eq!(echo["t0"], "20.0");
        assert_eq!(echo["gonek_log"], "literal");
        assert!(echo.contains_key("check.omega_factor"));
        assert!(echo.contains_key("quad.max_evals"));
    }
}
