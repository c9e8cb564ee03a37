//! Oracles shared by the integration suites. Nothing here calls the
//! closed-form response code.

#![allow(dead_code)]

use astro_float::{BigFloat, Consts, RoundingMode};
use num_bigint::BigUint;

const PREC: usize = 320;
const RM: RoundingMode = RoundingMode::ToEven;

fn big(x: &BigUint) -> BigFloat {
    let mut acc = BigFloat::from_u64(0, PREC);
    let base = BigFloat::from_u64(1 << 32, PREC);
    for digit in x.to_u32_digits().iter().rev() {
        acc = acc
            .mul(&base, PREC, RM)
            .add(&BigFloat::from_u64(*digit as u64, PREC), PREC, RM);
    }
    acc
}

fn to_f64(x: &BigFloat) -> f64 {
    x.to_string()
        .parse()
        .expect("astro-float prints parseable decimals")
}

/// `|Σ h[k]·e^{−j2πfk}| / Σ h[k]` for a palindromic `h`, in 320-bit
/// arithmetic.
///
/// Symmetry turns the sum into a real cosine series about the centre tap:
/// tap `k` sits at offset `(2k − L)/2` with `L = len − 1`, so its phasor is
/// `cos(jφ)` with `j = |2k − L|` and `φ = πf`. The `cos(jφ)` come from the
/// Chebyshev recurrence `cos(jφ) = 2cos φ·cos((j−1)φ) − cos((j−2)φ)`.
pub fn polynomial_magnitude(taps: &[BigUint], f: f64) -> f64 {
    let mut consts = Consts::new().expect("astro-float constants");
    let phi = consts
        .pi(PREC, RM)
        .mul(&BigFloat::from_f64(f, PREC), PREC, RM);
    let last = taps.len() - 1;

    let two = BigFloat::from_u64(2, PREC);
    let mut cos_j = vec![BigFloat::from_u64(1, PREC), phi.cos(PREC, RM, &mut consts)];
    let two_cos = cos_j[1].mul(&two, PREC, RM);
    for j in 2..=last {
        let next = two_cos
            .mul(&cos_j[j - 1], PREC, RM)
            .sub(&cos_j[j - 2], PREC, RM);
        cos_j.push(next);
    }

    let mut amp = BigFloat::from_u64(0, PREC);
    let mut total = BigFloat::from_u64(0, PREC);
    for (k, h) in taps.iter().enumerate() {
        let h = big(h);
        let j = (2 * k).abs_diff(last);
        amp = amp.add(&h.mul(&cos_j[j], PREC, RM), PREC, RM);
        total = total.add(&h, PREC, RM);
    }
    to_f64(&amp.div(&total, PREC, RM)).abs()
}
