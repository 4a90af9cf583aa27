//! Engine configuration.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tunable parameters for the evaluation engine.
///
/// `precision_digits` controls printing and the requested error targets; the
/// working arithmetic is double-double, so usable precision tops out near 31
/// digits regardless of the setting.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EngineConfig {
    /// Significant digits for printing and precision targets (>= 15).
    pub precision_digits: u32,
    /// Hard cap on oracle summation length.
    pub oracle_max_terms: u64,
    /// Terms summed exactly (rationals) before the oracle switches to
    /// extended-precision recurrences.
    pub oracle_exact_terms: u64,
    /// Truncation depth for non-alternating Euler sums.
    pub euler_truncation: u64,
    /// Euler-Maclaurin correction count in series tails.
    pub tail_corrections: u32,
    /// Acceleration depth for alternating series.
    pub accel_depth: usize,
    /// Plain-summation offset before acceleration kicks in.
    pub accel_offset: usize,
    /// Default verification tolerance.
    pub default_tolerance: f64,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig {
            precision_digits: 30,
            oracle_max_terms: 1_000_000,
            oracle_exact_terms: 2_048,
            euler_truncation: 100_000,
            tail_corrections: 4,
            accel_depth: 48,
            accel_offset: 128,
            default_tolerance: 1e-8,
        }
    }
}

impl EngineConfig {
    pub fn validate(&self) -> Result<()> {
        if self.precision_digits < 15 {
            return Err(Error::Config(format!(
                "precision_digits must be >= 15, got {}",
                self.precision_digits
            )));
        }
        if self.default_tolerance.is_nan() || self.default_tolerance <= 0.0 {
            return Err(Error::Config(format!(
                "default_tolerance must be positive, got {}",
                self.default_tolerance
            )));
        }
        if self.euler_truncation < 100 || self.oracle_max_terms < 100 {
            return Err(Error::Config(
                "truncation limits must be at least 100".into(),
            ));
        }
        if self.accel_depth < 4 {
            return Err(Error::Config("accel_depth must be at least 4".into()));
        }
        Ok(())
    }

    /// Parse a config file in either JSON or `key=value` line format.
    pub fn from_file_contents(text: &str) -> Result<EngineConfig> {
        let trimmed = text.trim_start();
        if trimmed.starts_with('{') {
            let cfg: EngineConfig = serde_json::from_str(text)
                .map_err(|e| Error::Config(format!("bad JSON config: {e}")))?;
            cfg.validate()?;
            return Ok(cfg);
        }
        let mut cfg = EngineConfig::default();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("line {}: expected key=value", lineno + 1)))?;
            let key = key.trim();
            let value = value.trim();
            let bad = |e: String| Error::Config(format!("line {}: {e}", lineno + 1));
            match key {
                "precision_digits" => {
                    cfg.precision_digits = value.parse().map_err(|e| bad(format!("{e}")))?
                }
                "oracle_max_terms" => {
                    cfg.oracle_max_terms = value.parse().map_err(|e| bad(format!("{e}")))?
                }
                "oracle_exact_terms" => {
                    cfg.oracle_exact_terms = value.parse().map_err(|e| bad(format!("{e}")))?
                }
                "euler_truncation" => {
                    cfg.euler_truncation = value.parse().map_err(|e| bad(format!("{e}")))?
                }
                "tail_corrections" => {
                    cfg.tail_corrections = value.parse().map_err(|e| bad(format!("{e}")))?
                }
                "accel_depth" => {
                    cfg.accel_depth = value.parse().map_err(|e| bad(format!("{e}")))?
                }
                "accel_offset" => {
                    cfg.accel_offset = value.parse().map_err(|e| bad(format!("{e}")))?
                }
                "default_tolerance" => {
                    cfg.default_tolerance = value.parse().map_err(|e| bad(format!("{e}")))?
                }
                other => return Err(bad(format!("unknown key `{other}`"))),
            }
        }
        cfg.validate()?;
        Ok(cfg)
    }
}
