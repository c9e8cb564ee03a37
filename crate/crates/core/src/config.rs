//! Filter parameters and the quantities derived from them alone.

use std::fmt;

use num_bigint::BigUint;

use crate::error::{Error, Result};

/// Largest supported input sample width; samples travel as `i64`.
pub const MAX_INPUT_BITS: u32 = 64;

/// The `(N, R, M, B)` tuple: stage count, decimation factor, differential
/// delay and signed input width.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CicConfig {
    stages: u32,
    rate: u32,
    diff_delay: u32,
    input_bits: u32,
}

/// Non-fatal findings from [`CicConfig::new`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConfigWarning {
    /// Differential delay outside the customary `{1, 2}`.
    DelayOutsideCustomary(u32),
}

impl fmt::Display for ConfigWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConfigWarning::DelayOutsideCustomary(m) => {
                write!(f, "M outside {{1,2}} (M = {m})")
            }
        }
    }
}

impl CicConfig {
    /// Validate and build a configuration.
    pub fn new(stages: u32, rate: u32, diff_delay: u32, input_bits: u32) -> Result<Self> {
        let positive = [
            ("stages (N)", stages),
            ("rate (R)", rate),
            ("differential delay (M)", diff_delay),
            ("input bits (B)", input_bits),
        ];
        for (field, value) in positive {
            if value == 0 {
                return Err(Error::Config {
                    field,
                    reason: "must be at least 1",
                });
            }
        }
        if input_bits > MAX_INPUT_BITS {
            return Err(Error::Config {
                field: "input bits (B)",
                reason: "must be at most 64",
            });
        }
        if (rate as u64) * (diff_delay as u64) > u32::MAX as u64 {
            return Err(Error::Config {
                field: "rate (R)",
                reason: "times differential delay must fit in 32 bits",
            });
        }
        Ok(Self {
            stages,
            rate,
            diff_delay,
            input_bits,
        })
    }

    pub fn stages(&self) -> u32 {
        self.stages
    }

    pub fn rate(&self) -> u32 {
        self.rate
    }

    pub fn diff_delay(&self) -> u32 {
        self.diff_delay
    }

    pub fn input_bits(&self) -> u32 {
        self.input_bits
    }

    /// Effective kernel length `D = R·M`.
    pub fn kernel_len(&self) -> u32 {
        self.rate * self.diff_delay
    }

    pub fn warning(&self) -> Option<ConfigWarning> {
        (self.diff_delay > 2).then_some(ConfigWarning::DelayOutsideCustomary(self.diff_delay))
    }

    /// Same filter with a different decimation factor.
    pub fn with_rate(&self, rate: u32) -> Result<Self> {
        Self::new(self.stages, rate, self.diff_delay, self.input_bits)
    }

    /// DC gain `(R·M)^N`, exact.
    pub fn gain(&self) -> BigUint {
        BigUint::from(self.kernel_len()).pow(self.stages)
    }

    /// Register width `W = B + ceil(N·log2(R·M))`.
    ///
    /// Computed without floating point: `ceil(log2 G)` is the bit length of
    /// `G − 1`.
    pub fn required_width(&self) -> u64 {
        let growth = (self.gain() - 1u32).bits();
        self.input_bits as u64 + growth
    }

    /// Inclusive signed range of a `B`-bit input sample.
    pub fn input_range(&self) -> (i64, i64) {
        signed_range(self.input_bits)
    }

    pub fn check_input(&self, x: i64) -> Result<()> {
        let (lo, hi) = self.input_range();
        if x < lo || x > hi {
            return Err(Error::InputRange {
                value: x,
                bits: self.input_bits,
            });
        }
        Ok(())
    }
}

impl fmt::Display for CicConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "N={} R={} M={} B={}",
            self.stages, self.rate, self.diff_delay, self.input_bits
        )
    }
}

pub(crate) fn signed_range(bits: u32) -> (i64, i64) {
    debug_assert!((1..=64).contains(&bits));
    if bits == 64 {
        (i64::MIN, i64::MAX)
    } else {
        (-(1i64 << (bits - 1)), (1i64 << (bits - 1)) - 1)
    }
}
