//! Droop-compensation FIR running after the decimator, at the output rate.
//!
//! Output-rate frequency `g` sees the cascade at input-rate frequency `g/R`.
//! The compensator is a symmetric odd-length (Type I) FIR fitted by least
//! squares so that `|FIR(g)|·cic(g/R) ≈ 1` over `[0, fp_out]`. The stopband
//! is left unconstrained.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::analysis::{magnitude_unchecked, to_db, ResponseCurve, ResponsePoint};
use crate::config::CicConfig;
use crate::error::{Error, Result};

const SYMMETRY_TOL: f64 = 1e-12;
/// Diagonal loading relative to the largest normal-matrix diagonal entry.
const REGULARIZER: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct FirFilter {
    taps: Vec<f64>,
}

impl FirFilter {
    /// Wrap a symmetric, non-empty coefficient vector.
    pub fn new(taps: Vec<f64>) -> Result<Self> {
        if taps.is_empty() {
            return Err(Error::Parameter("FIR needs at least one tap".into()));
        }
        let asymmetric = taps
            .iter()
            .zip(taps.iter().rev())
            .any(|(a, b)| (a - b).abs() > SYMMETRY_TOL);
        if asymmetric {
            return Err(Error::Parameter("FIR taps must be symmetric".into()));
        }
        Ok(Self { taps })
    }

    pub fn identity() -> Self {
        Self { taps: vec![1.0] }
    }

    pub fn taps(&self) -> &[f64] {
        &self.taps
    }

    pub fn dc_gain(&self) -> f64 {
        self.taps.iter().sum()
    }

    /// `Σ taps[k]·e^{−j2πgk}`.
    pub fn response(&self, g: f64) -> Complex64 {
        self.taps
            .iter()
            .enumerate()
            .map(|(k, &t)| Complex64::from_polar(t, -2.0 * PI * g * k as f64))
            .sum()
    }

    /// Direct-form convolution with zero initial state; output length
    /// equals input length.
    pub fn filter(&self, input: &[f64]) -> Vec<f64> {
        (0..input.len())
            .map(|n| {
                self.taps
                    .iter()
                    .take(n + 1)
                    .enumerate()
                    .map(|(k, t)| t * input[n - k])
                    .sum()
            })
            .collect()
    }
}

fn uniform_grid(hi: f64, points: usize) -> impl Iterator<Item = f64> {
    let step = if points > 1 {
        hi / (points - 1) as f64
    } else {
        0.0
    };
    (0..points).map(move |i| if i + 1 == points { hi } else { i as f64 * step })
}

/// Least-squares droop compensator with `tap_count` (odd) taps.
///
/// The DC gain is held at exactly `1/cic(0) = 1` by expressing the centre tap
/// through the others (`a0 = 1 − 2·Σ a_k`); the remaining half-taps solve the
/// regularized normal equations over `grid_size` points of `[0, fp_out]`.
pub fn design_compensator(
    config: &CicConfig,
    tap_count: usize,
    fp_out: f64,
    grid_size: usize,
) -> Result<FirFilter> {
    if tap_count == 0 || tap_count.is_multiple_of(2) {
        return Err(Error::Parameter(format!(
            "tap count must be odd and positive (got {tap_count})"
        )));
    }
    if !(fp_out > 0.0 && fp_out < 0.5) {
        return Err(Error::Domain {
            value: fp_out,
            range: "(0, 0.5)",
        });
    }
    if grid_size < 2 {
        return Err(Error::Parameter(format!(
            "grid size must be at least 2 (got {grid_size})"
        )));
    }

    let half = tap_count / 2;
    if half == 0 {
        return Ok(FirFilter::identity());
    }

    // amplitude A(g) = 1 + Σ_k a_k · 2(cos 2πgk − 1); residual c·A − 1
    let r = config.rate() as f64;
    let grid: Vec<f64> = uniform_grid(fp_out, grid_size).collect();
    let cic: Vec<f64> = grid
        .iter()
        .map(|&g| magnitude_unchecked(config, g / r))
        .collect();
    let basis = DMatrix::from_fn(grid_size, half, |i, k| {
        let k = (k + 1) as f64;
        2.0 * cic[i] * ((2.0 * PI * grid[i] * k).cos() - 1.0)
    });
    let target = DVector::from_iterator(grid_size, cic.iter().map(|c| 1.0 - c));

    let mut normal = basis.transpose() * &basis;
    let rhs = basis.transpose() * target;
    let load = REGULARIZER * normal.diagonal().max();
    for i in 0..half {
        normal[(i, i)] += load;
    }
    let half_taps = normal
        .clone()
        .cholesky()
        .map(|ch| ch.solve(&rhs))
        .or_else(|| normal.lu().solve(&rhs))
        .ok_or_else(|| Error::Parameter("compensator normal equations are singular".into()))?;

    let centre = 1.0 - 2.0 * half_taps.sum();
    let mut taps = Vec::with_capacity(tap_count);
    taps.extend(half_taps.iter().rev().copied());
    taps.push(centre);
    taps.extend(half_taps.iter().copied());
    Ok(FirFilter { taps })
}

/// Cascade followed by `fir`, on output-rate frequencies `g ∈ [0, 0.5]`.
pub fn composite_response(
    config: &CicConfig,
    fir: &FirFilter,
    grid_size: usize,
) -> Result<ResponseCurve> {
    if grid_size < 2 {
        return Err(Error::Parameter(format!(
            "grid size must be at least 2 (got {grid_size})"
        )));
    }
    let r = config.rate() as f64;
    let cic_delay = config.stages() as f64 * (config.kernel_len() as f64 - 1.0) / 2.0;
    let fir_delay = (fir.taps.len() as f64 - 1.0) / 2.0;
    let points = uniform_grid(0.5, grid_size)
        .map(|g| {
            let mag = magnitude_unchecked(config, g / r) * fir.response(g).norm();
            ResponsePoint {
                freq: g,
                mag_db: to_db(mag),
                phase_rad: 0.0 - 2.0 * PI * (g / r * cic_delay + g * fir_delay),
            }
        })
        .collect();
    Ok(ResponseCurve { points })
}

/// Largest `|dB|` of the composite over `points` samples of `[0, fp_out]`.
pub fn passband_deviation_db(
    config: &CicConfig,
    fir: &FirFilter,
    fp_out: f64,
    points: usize,
) -> f64 {
    let r = config.rate() as f64;
    uniform_grid(fp_out, points.max(2))
        .map(|g| to_db(magnitude_unchecked(config, g / r) * fir.response(g).norm()).abs())
        .fold(0.0, f64::max)
}
