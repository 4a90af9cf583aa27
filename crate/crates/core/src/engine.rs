//! Central evaluation engine: configuration plus shared value caches.

use std::collections::HashMap;
use std::sync::RwLock;

use crate::accel::AltOptions;
use crate::approx::Approx;
use crate::config::EngineConfig;
use crate::error::Result;
use crate::euler::{EulerCtx, EulerParams};

/// Key of a shifted linear sum: (p, m, r, alternating).
type LinearKey = (i64, u32, u32, bool);
/// Key of a shifted quadratic sum: (p1, p2, m, r, alternating), p1 <= p2.
type QuadraticKey = (i64, i64, u32, u32, bool);

/// Evaluation engine. Construction fixes the configuration; all caches fill
/// idempotently, so shared use across threads is safe.
pub struct Engine {
    pub config: EngineConfig,
    pub(crate) euler: EulerCtx,
    pub(crate) s_cache: RwLock<HashMap<LinearKey, Approx>>,
    pub(crate) t_cache: RwLock<HashMap<QuadraticKey, Approx>>,
}

impl Engine {
    pub fn new(config: EngineConfig) -> Result<Engine> {
        config.validate()?;
        let params = EulerParams {
            truncation: config.euler_truncation,
            corrections: config.tail_corrections,
            expansion_order: 12,
            alt: AltOptions {
                offset: config.accel_offset,
                depth: config.accel_depth,
            },
        };
        Ok(Engine {
            config,
            euler: EulerCtx::new(params),
            s_cache: RwLock::new(HashMap::new()),
            t_cache: RwLock::new(HashMap::new()),
        })
    }

    pub fn with_defaults() -> Engine {
        Engine::new(EngineConfig::default()).expect("default config is valid")
    }

    /// Euler-sum evaluator bound to this engine's parameters.
    pub fn euler(&self) -> &EulerCtx {
        &self.euler
    }
}
