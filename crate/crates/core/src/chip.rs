//! Cycle-level model of the decimator as a chip.
//!
//! One call to [`ChipModel::tick`] is one rising clock edge. Input samples
//! transfer on edges where `ND` and `RFD` are both high. Each completed
//! output enters an `L`-deep pipeline and appears on `Dout` with a one-cycle
//! `RDY` pulse `L` edges later. On a programmable part, `WE` loads `LDin` as
//! the new decimation factor: the arithmetic core is cleared, `RFD` drops for
//! the next cycle, and outputs already in the pipeline still drain.

use std::collections::VecDeque;

use crate::config::CicConfig;
use crate::decimator::DecimatorState;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct PinInputs {
    pub din: i64,
    pub nd: bool,
    pub ldin: u32,
    pub we: bool,
}

impl PinInputs {
    pub fn idle() -> Self {
        Self::default()
    }

    pub fn sample(din: i64) -> Self {
        Self {
            din,
            nd: true,
            ..Self::default()
        }
    }

    pub fn load_rate(ldin: u32) -> Self {
        Self {
            ldin,
            we: true,
            ..Self::default()
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct PinOutputs {
    pub dout: i128,
    pub rdy: bool,
    /// Whether the next edge will accept a sample.
    pub rfd: bool,
}

#[derive(Debug, Clone)]
pub struct ChipModel {
    core: DecimatorState,
    latency: usize,
    pipeline: VecDeque<Option<i128>>,
    rate_range: Option<(u32, u32)>,
    rfd: bool,
    dout: i128,
    accepted: u64,
    ready_pulses: u64,
}

impl ChipModel {
    /// One register per comb stage plus the output register.
    pub fn default_latency(config: &CicConfig) -> usize {
        config.stages() as usize + 1
    }

    /// Fixed-rate chip.
    pub fn new(config: CicConfig, latency: usize) -> Result<Self> {
        Self::build(config, latency, None)
    }

    /// Chip whose rate can be reloaded within `[r_min, r_max]`. Registers are
    /// sized for `r_max`.
    pub fn programmable(config: CicConfig, latency: usize, r_min: u32, r_max: u32) -> Result<Self> {
        if r_min == 0 || r_min > r_max {
            return Err(Error::Parameter(format!(
                "rate range [{r_min}, {r_max}] is empty or includes zero"
            )));
        }
        if !(r_min..=r_max).contains(&config.rate()) {
            return Err(Error::Parameter(format!(
                "initial rate {} outside [{r_min}, {r_max}]",
                config.rate()
            )));
        }
        Self::build(config, latency, Some((r_min, r_max)))
    }

    fn build(config: CicConfig, latency: usize, rate_range: Option<(u32, u32)>) -> Result<Self> {
        if latency == 0 {
            return Err(Error::Parameter("latency must be at least 1 cycle".into()));
        }
        let width = match rate_range {
            Some((_, r_max)) => {
                let w = config.with_rate(r_max)?.required_width();
                Some(u32::try_from(w).map_err(|_| Error::WidthUnsupported(u32::MAX))?)
            }
            None => None,
        };
        let core = DecimatorState::new(config, width)?;
        Ok(Self {
            core,
            latency,
            pipeline: VecDeque::from(vec![None; latency]),
            rate_range,
            rfd: true,
            dout: 0,
            accepted: 0,
            ready_pulses: 0,
        })
    }

    pub fn config(&self) -> &CicConfig {
        self.core.config()
    }

    pub fn rate(&self) -> u32 {
        self.core.config().rate()
    }

    pub fn width(&self) -> u32 {
        self.core.width()
    }

    pub fn latency(&self) -> usize {
        self.latency
    }

    pub fn is_programmable(&self) -> bool {
        self.rate_range.is_some()
    }

    pub fn rfd(&self) -> bool {
        self.rfd
    }

    /// Samples consumed since construction.
    pub fn accepted(&self) -> u64 {
        self.accepted
    }

    pub fn ready_pulses(&self) -> u64 {
        self.ready_pulses
    }

    /// Advance one clock edge. On error the chip state is left untouched.
    pub fn tick(&mut self, pins: PinInputs) -> Result<PinOutputs> {
        let mut produced = None;
        if pins.we {
            let (r_min, r_max) = self.rate_range.ok_or_else(|| {
                Error::Protocol("WE asserted on a chip without programmable rate".into())
            })?;
            if !(r_min..=r_max).contains(&pins.ldin) {
                return Err(Error::Protocol(format!(
                    "LDin {} outside programmable range [{r_min}, {r_max}]",
                    pins.ldin
                )));
            }
            let config = self.core.config().with_rate(pins.ldin)?;
            self.core = DecimatorState::new(config, Some(self.core.width()))?;
            self.rfd = false;
        } else {
            if pins.nd && self.rfd {
                produced = self.core.push_sample(pins.din)?;
                self.accepted += 1;
            }
            self.rfd = true;
        }

        self.pipeline.push_back(produced);
        let rdy = match self.pipeline.pop_front().flatten() {
            Some(v) => {
                self.dout = v;
                self.ready_pulses += 1;
                true
            }
            None => false,
        };
        Ok(PinOutputs {
            dout: self.dout,
            rdy,
            rfd: self.rfd,
        })
    }
}

impl ChipModel {
    /// Idle for `L` cycles so every output already computed reaches `Dout`.
    pub fn drain(&mut self) -> Vec<PinOutputs> {
        (0..self.latency)
            .map(|_| {
                self.tick(PinInputs::idle())
                    .expect("idle cycles cannot fail")
            })
            .collect()
    }
}

/// Fold [`ChipModel::tick`] over a trace; errors carry the 0-based cycle.
pub fn run_trace(chip: &mut ChipModel, trace: &[PinInputs]) -> Result<Vec<PinOutputs>> {
    trace
        .iter()
        .enumerate()
        .map(|(cycle, &pins)| {
            chip.tick(pins).map_err(|e| Error::Cycle {
                cycle,
                source: Box::new(e),
            })
        })
        .collect()
}
