//! Cascaded integrator-comb decimation.
//!
//! * [`DecimatorState`]: bit-exact streaming Hogenauer decimator with
//!   wrapping fixed-width registers, checked against the unbounded-integer
//!   [`reference_decimate`].
//! * [`analysis`]: closed-form magnitude/phase, nulls, droop and alias
//!   attenuation.
//! * [`compensator`]: least-squares droop-compensation FIR at the output rate.
//! * [`chip`]: cycle-level pin model (`ND`/`RFD`/`RDY`/`WE`/`LDin`).
//! * [`sdm`] and [`format`]: stimulus generator and the text file formats
//!   used by the `cic` command-line tool.

pub mod analysis;
pub mod chip;
pub mod compensator;
pub mod config;
pub mod decimator;
pub mod error;
pub mod format;
pub mod reference;
pub mod register;
pub mod sdm;

pub use config::{CicConfig, ConfigWarning};
pub use decimator::DecimatorState;
pub use error::{Error, Result};
pub use reference::{kernel_taps, reference_decimate};
pub use register::RegisterWord;
