//! First-order sigma-delta modulator used as a test stimulus.
//!
//! Emits `±1` samples (two-bit signed) whose running mean tracks a constant
//! input level in `[-1, 1]`.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModulatorState {
    accumulator: f64,
    last: i64,
}

impl Default for ModulatorState {
    fn default() -> Self {
        Self {
            accumulator: 0.0,
            last: 1,
        }
    }
}

impl ModulatorState {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn accumulator(&self) -> f64 {
        self.accumulator
    }

    /// One modulator step for input `x ∈ [-1, 1]`.
    pub fn step(&mut self, x: f64) -> i64 {
        self.accumulator += x - self.last as f64;
        self.last = if self.accumulator >= 0.0 { 1 } else { -1 };
        self.last
    }
}

/// `count` modulator output samples for a constant level `dc`.
pub fn modulate_dc(dc: f64, count: usize) -> Result<Vec<i64>> {
    if !(-1.0..=1.0).contains(&dc) {
        return Err(Error::Parameter(format!("dc level {dc} outside [-1, 1]")));
    }
    let mut m = ModulatorState::new();
    Ok((0..count).map(|_| m.step(dc)).collect())
}
