//! Closed-form response of the cascade.
//!
//! Frequencies are cycles per sample at the input rate, `f ∈ [0, 0.5]`.
//! Magnitudes are normalized by the DC gain, so the passband peaks at 1.

use std::f64::consts::PI;

use num_bigint::BigUint;
use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};

use crate::config::CicConfig;
use crate::error::{Error, Result};
use crate::reference::kernel_taps;

/// Level reported for exact zeros in dB curves.
pub const DB_FLOOR: f64 = -300.0;

/// Exact coefficients of the cascaded transfer polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImpulseResponse {
    taps: Vec<BigUint>,
}

impl ImpulseResponse {
    pub fn taps(&self) -> &[BigUint] {
        &self.taps
    }

    pub fn len(&self) -> usize {
        self.taps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.taps.is_empty()
    }

    pub fn sum(&self) -> BigUint {
        self.taps.iter().fold(BigUint::zero(), |acc, t| acc + t)
    }

    pub fn is_palindromic(&self) -> bool {
        self.taps.iter().eq(self.taps.iter().rev())
    }

    /// `Σ h[k]·e^{−j2πfk}`, unnormalized.
    pub fn evaluate(&self, f: f64) -> Complex64 {
        self.taps
            .iter()
            .enumerate()
            .map(|(k, h)| {
                let h = h.to_f64().unwrap_or(f64::INFINITY);
                Complex64::from_polar(h, -2.0 * PI * f * k as f64)
            })
            .sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResponsePoint {
    pub freq: f64,
    pub mag_db: f64,
    pub phase_rad: f64,
}

/// Sampled response on an increasing frequency grid.
#[derive(Debug, Clone, PartialEq)]
pub struct ResponseCurve {
    pub points: Vec<ResponsePoint>,
}

impl ResponseCurve {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Point whose frequency is closest to `f`.
    pub fn nearest(&self, f: f64) -> Option<&ResponsePoint> {
        self.points
            .iter()
            .min_by(|a, b| (a.freq - f).abs().total_cmp(&(b.freq - f).abs()))
    }
}

pub fn impulse_response(config: &CicConfig) -> ImpulseResponse {
    ImpulseResponse {
        taps: kernel_taps(config),
    }
}

fn check_freq(f: f64) -> Result<()> {
    if !(0.0..=0.5).contains(&f) {
        return Err(Error::Domain {
            value: f,
            range: "[0, 0.5]",
        });
    }
    Ok(())
}

/// `|sin(π·a·b)|` with the product reduced to its distance from the nearest
/// integer before scaling by π. The rounding error of `a·b` is recovered with
/// an FMA, so the result keeps full relative accuracy next to zeros and an
/// exact integer product gives exactly zero.
fn abs_sin_pi_product(a: f64, b: f64) -> f64 {
    let p = a * b;
    let err = a.mul_add(b, -p);
    let r = (p - p.round()) + err;
    (PI * r).sin().abs()
}

pub(crate) fn magnitude_unchecked(config: &CicConfig, f: f64) -> f64 {
    if f == 0.0 {
        return 1.0;
    }
    let d = config.kernel_len() as f64;
    let ratio = abs_sin_pi_product(d, f) / (d * (PI * f).sin());
    ratio.powi(config.stages() as i32)
}

/// DC-normalized linear magnitude `|sin(πDf) / (D·sin(πf))|^N`.
pub fn magnitude(config: &CicConfig, f: f64) -> Result<f64> {
    check_freq(f)?;
    Ok(magnitude_unchecked(config, f))
}

/// Linear-phase term `−2πf·N(D−1)/2`, not wrapped.
pub fn phase(config: &CicConfig, f: f64) -> Result<f64> {
    check_freq(f)?;
    Ok(phase_unchecked(config, f))
}

fn phase_unchecked(config: &CicConfig, f: f64) -> f64 {
    let delay = config.stages() as f64 * (config.kernel_len() as f64 - 1.0) / 2.0;
    0.0 - 2.0 * PI * f * delay
}

/// Zeros of the response in `(0, 0.5]`: `k/D` for `k = 1..=⌊D/2⌋`.
pub fn null_frequencies(config: &CicConfig) -> Vec<f64> {
    let d = config.kernel_len();
    (1..=d / 2).map(|k| k as f64 / d as f64).collect()
}

pub fn to_db(mag: f64) -> f64 {
    if mag > 0.0 {
        (20.0 * mag.log10()).max(DB_FLOOR)
    } else {
        DB_FLOOR
    }
}

/// Uniform grid over `[0, 0.5]` with both endpoints.
pub fn response_curve(config: &CicConfig, grid_size: usize) -> Result<ResponseCurve> {
    if grid_size < 2 {
        return Err(Error::Parameter(format!(
            "grid size must be at least 2 (got {grid_size})"
        )));
    }
    let step = 0.5 / (grid_size - 1) as f64;
    let points = (0..grid_size)
        .map(|i| {
            let f = if i == grid_size - 1 {
                0.5
            } else {
                i as f64 * step
            };
            ResponsePoint {
                freq: f,
                mag_db: to_db(magnitude_unchecked(config, f)),
                phase_rad: phase_unchecked(config, f),
            }
        })
        .collect();
    Ok(ResponseCurve { points })
}

fn check_band_edge(config: &CicConfig, fp: f64) -> Result<()> {
    let limit = 0.5 / config.rate() as f64;
    if !(fp > 0.0 && fp < limit) {
        return Err(Error::Domain {
            value: fp,
            range: "(0, 1/(2R))",
        });
    }
    Ok(())
}

/// Attenuation in dB at the passband edge `fp`.
pub fn passband_droop(config: &CicConfig, fp: f64) -> Result<f64> {
    check_band_edge(config, fp)?;
    Ok(-to_db(magnitude_unchecked(config, fp)))
}

/// Smallest attenuation in dB over the alias-band edges `k/R ± fp`,
/// `k = 1..=⌊R/2⌋`, clipped to `[0, 0.5]`.
///
/// These bands fold onto `[0, fp]` after decimation. With `R = 1` there is
/// nothing to fold and the result is the floor, `-DB_FLOOR`.
pub fn alias_attenuation(config: &CicConfig, fp: f64) -> Result<f64> {
    check_band_edge(config, fp)?;
    let r = config.rate() as f64;
    let worst = (1..=config.rate() / 2)
        .flat_map(|k| {
            let centre = k as f64 / r;
            [centre - fp, centre + fp]
        })
        .map(|f| magnitude_unchecked(config, f.clamp(0.0, 0.5)))
        .fold(0.0, f64::max);
    Ok(-to_db(worst))
}
