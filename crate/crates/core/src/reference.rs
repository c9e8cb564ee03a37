//! Full-rate reference path in unbounded integers.
//!
//! Evaluates the cascade as its moving-sum polynomial
//! `(1 + z^-1 + … + z^-(D-1))^N`, convolves directly, then samples the
//! full-rate output at `mR + R − 1`. Nothing here wraps.

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;

use crate::config::CicConfig;

/// Coefficients of the cascaded transfer polynomial, `N(D−1)+1` taps.
pub fn kernel_taps(config: &CicConfig) -> Vec<BigUint> {
    let d = config.kernel_len() as usize;
    let mut taps = vec![BigUint::from(1u32)];
    for _ in 0..config.stages() {
        // convolve with a length-d boxcar via a running window sum
        let out_len = taps.len() + d - 1;
        let mut next = Vec::with_capacity(out_len);
        let mut window = BigUint::zero();
        for i in 0..out_len {
            if i < taps.len() {
                window += &taps[i];
            }
            if i >= d {
                window -= &taps[i - d];
            }
            next.push(window.clone());
        }
        taps = next;
    }
    taps
}

/// Decimated output of the full-rate cascade, one value per `R` inputs.
pub fn reference_decimate(config: &CicConfig, samples: &[i64]) -> Vec<BigInt> {
    let taps: Vec<BigInt> = kernel_taps(config).into_iter().map(BigInt::from).collect();
    let r = config.rate() as usize;
    (0..samples.len() / r)
        .map(|m| {
            let n = m * r + r - 1;
            taps.iter()
                .take(n + 1)
                .enumerate()
                .fold(BigInt::zero(), |acc, (k, h)| acc + h * samples[n - k])
        })
        .collect()
}
