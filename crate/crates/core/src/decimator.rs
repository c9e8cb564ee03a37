//! Streaming Hogenauer decimator.
//!
//! `N` integrators run at the input rate, the stream is sampled every `R`
//! inputs, then `N` combs with delay `M` run at the output rate. All
//! registers share one width `W` and wrap; the result is still exact as long
//! as `W` covers the final output range.

use crate::config::CicConfig;
use crate::error::{Error, Result};
use crate::register::{wrap, RegisterWord, MAX_WIDTH};

#[derive(Debug, Clone)]
pub struct DecimatorState {
    config: CicConfig,
    width: u32,
    integrators: Vec<RegisterWord>,
    /// One ring of `M` past low-rate inputs per comb stage.
    combs: Vec<Vec<RegisterWord>>,
    comb_pos: usize,
    phase: u32,
    samples_in: u64,
    samples_out: u64,
}

impl DecimatorState {
    /// Fresh state at [`CicConfig::required_width`], or at `width_override`
    /// when it is at least that wide.
    pub fn new(config: CicConfig, width_override: Option<u32>) -> Result<Self> {
        let required = config.required_width();
        let width = match width_override {
            Some(w) if (w as u64) < required => {
                return Err(Error::WidthTooSmall {
                    requested: w,
                    required: required.min(u32::MAX as u64) as u32,
                })
            }
            Some(w) => w,
            None if required > MAX_WIDTH as u64 => {
                return Err(Error::WidthUnsupported(required.min(u32::MAX as u64) as u32))
            }
            None => required as u32,
        };
        let zero = RegisterWord::zero(width)?;
        let n = config.stages() as usize;
        let m = config.diff_delay() as usize;
        Ok(Self {
            config,
            width,
            integrators: vec![zero; n],
            combs: vec![vec![zero; m]; n],
            comb_pos: 0,
            phase: 0,
            samples_in: 0,
            samples_out: 0,
        })
    }

    pub fn config(&self) -> &CicConfig {
        &self.config
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    /// Position within the current decimation period, `samples_in mod R`.
    pub fn phase(&self) -> u32 {
        self.phase
    }

    pub fn samples_in(&self) -> u64 {
        self.samples_in
    }

    pub fn samples_out(&self) -> u64 {
        self.samples_out
    }

    /// Feed one input sample; every `R`th call yields an output.
    pub fn push_sample(&mut self, x: i64) -> Result<Option<i128>> {
        self.config.check_input(x)?;
        Ok(self.push_unchecked(x))
    }

    #[inline]
    fn push_unchecked(&mut self, x: i64) -> Option<i128> {
        let mut acc = x as i128;
        for integ in &mut self.integrators {
            *integ = integ.wrapping_add(acc);
            acc = integ.value();
        }
        self.samples_in += 1;
        self.phase += 1;
        if self.phase < self.config.rate() {
            return None;
        }
        self.phase = 0;

        let pos = self.comb_pos;
        for delay in &mut self.combs {
            let delayed = delay[pos];
            delay[pos] = RegisterWord::from_wrapped(self.width, acc)
                .expect("width validated at construction");
            acc = wrap(self.width, acc.wrapping_sub(delayed.value()));
        }
        self.comb_pos = (pos + 1) % self.config.diff_delay() as usize;
        self.samples_out += 1;
        Some(acc)
    }

    /// Fold [`push_sample`](Self::push_sample) over a block.
    ///
    /// The whole block is range-checked first, so a bad sample leaves the
    /// state untouched.
    pub fn decimate_block(&mut self, samples: &[i64]) -> Result<Vec<i128>> {
        for &x in samples {
            self.config.check_input(x)?;
        }
        let r = self.config.rate() as usize;
        let mut out = Vec::with_capacity((self.phase as usize + samples.len()) / r);
        out.extend(samples.iter().filter_map(|&x| self.push_unchecked(x)));
        Ok(out)
    }

    /// Zero every register and counter; configuration and width are kept.
    pub fn reset(&mut self) {
        let zero = RegisterWord::zero(self.width).expect("width validated at construction");
        self.integrators.fill(zero);
        for delay in &mut self.combs {
            delay.fill(zero);
        }
        self.comb_pos = 0;
        self.phase = 0;
        self.samples_in = 0;
        self.samples_out = 0;
    }
}
