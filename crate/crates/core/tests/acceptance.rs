//! Exit criteria. Runs every criterion, prints one PASS/FAIL line each and
//! exits non-zero if any fail.

mod common;

use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use cic::analysis::{
    alias_attenuation, impulse_response, magnitude, null_frequencies, passband_droop,
};
use cic::chip::{run_trace, ChipModel, PinInputs};
use cic::compensator::{design_compensator, passband_deviation_db};
use cic::sdm::modulate_dc;
use cic::{reference_decimate, CicConfig, DecimatorState};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn cfg(n: u32, r: u32, m: u32, b: u32) -> CicConfig {
    CicConfig::new(n, r, m, b).unwrap()
}

fn droop_alias_regression() -> Outcome {
    let c = cfg(2, 50, 1, 1);
    let droop = passband_droop(&c, 0.005).map_err(|e| e.to_string())?;
    let alias = alias_attenuation(&c, 0.005).map_err(|e| e.to_string())?;
    ensure((droop - 1.82).abs() <= 0.01, || {
        format!("droop {droop:.4} dB")
    })?;
    ensure((alias - 20.9).abs() <= 0.05, || {
        format!("alias {alias:.4} dB")
    })?;
    Ok(format!("droop={droop:.4} dB alias={alias:.4} dB"))
}

fn gain() -> Outcome {
    let c = cfg(2, 50, 1, 16);
    ensure(c.gain() == 2500u32.into(), || format!("gain {}", c.gain()))?;
    for x in [-32768i64, 32767, 1, -1] {
        let mut s = DecimatorState::new(c, None).unwrap();
        let out = s.decimate_block(&vec![x; 1000]).unwrap();
        // outputs from index 2 on (n = 149, …) see the full 99-tap kernel
        ensure(out[2..].iter().all(|&y| y == 2500 * x as i128), || {
            format!("steady state for input {x}: {:?}", &out[..4])
        })?;
    }
    Ok("gain=2500, steady state 2500·x for x ∈ {±1, -32768, 32767}".into())
}

fn impulse_shape() -> Outcome {
    let mut s = DecimatorState::new(cfg(4, 8, 4, 16), None).unwrap();
    let mut x = vec![0i64; 160];
    x[0] = 1;
    let out = s.decimate_block(&x).unwrap();
    ensure(out.len() == 20, || format!("{} outputs", out.len()))?;
    Ok("160 in → 20 out".into())
}

fn oracle_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x0c1c_0004);
    let cases = 250;
    for case in 0..cases {
        let c = cfg(
            rng.gen_range(1..=3),
            rng.gen_range(1..=8),
            rng.gen_range(1..=2),
            rng.gen_range(1..=8),
        );
        let (lo, hi) = c.input_range();
        let len = rng.gen_range(0..=1000);
        // mix uniform noise with full-scale runs to exercise wraparound
        let x: Vec<i64> = (0..len)
            .map(|i| match (i / 64) % 3 {
                0 => rng.gen_range(lo..=hi),
                1 => lo,
                _ => hi,
            })
            .collect();
        let mut s = DecimatorState::new(c, None).unwrap();
        let got: Vec<BigInt> = s
            .decimate_block(&x)
            .unwrap()
            .into_iter()
            .map(BigInt::from)
            .collect();
        ensure(got == reference_decimate(&c, &x), || {
            format!("case {case}: {c}, {len} samples")
        })?;
    }
    Ok(format!("{cases} random cases equal"))
}

fn closed_vs_polynomial() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x0c1c_0005);
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let m = rng.gen_range(1..=2);
        let r = rng.gen_range(1..=64 / m);
        let c = cfg(rng.gen_range(1..=6), r, m, 1);
        let taps = impulse_response(&c);
        for _ in 0..100 {
            let f = rng.gen_range(0.0..=0.5);
            let want = common::polynomial_magnitude(taps.taps(), f);
            let got = magnitude(&c, f).unwrap();
            let rel = if want == 0.0 {
                got.abs()
            } else {
                ((got - want) / want).abs()
            };
            worst = worst.max(rel);
            ensure(rel <= 1e-9, || format!("{c} f={f}: {got} vs {want}"))?;
        }
    }
    Ok(format!("2000 points, worst relative error {worst:.2e}"))
}

fn nulls() -> Outcome {
    let mut worst = 0.0f64;
    let mut count = 0;
    for d in 2..=64u32 {
        for n in 1..=4 {
            let mut configs = vec![cfg(n, d, 1, 1)];
            if d % 2 == 0 {
                configs.push(cfg(n, d / 2, 2, 1));
            }
            for c in configs {
                for f in null_frequencies(&c) {
                    let m = magnitude(&c, f).unwrap();
                    worst = worst.max(m);
                    count += 1;
                    ensure(m <= f64::EPSILON, || format!("{c} null {f}: {m:e}"))?;
                }
            }
        }
    }
    Ok(format!("{count} nulls, largest magnitude {worst:.2e}"))
}

fn width_sufficiency() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x0c1c_0007);
    for _ in 0..50 {
        let c = cfg(
            rng.gen_range(1..=4),
            rng.gen_range(1..=16),
            rng.gen_range(1..=2),
            rng.gen_range(1..=12),
        );
        let w = c.required_width() as u32;
        let (lo, hi) = c.input_range();
        let settle = c.stages() as usize * (c.kernel_len() as usize - 1) + 2 * c.rate() as usize;
        let mut stimuli = vec![vec![lo; settle], vec![hi; settle]];
        stimuli.push((0..settle).map(|_| rng.gen_range(lo..=hi)).collect());
        let fits = |y: &BigInt, bits: u32| {
            let half = BigInt::from(1) << (bits - 1);
            *y >= -half.clone() && *y < half
        };
        let mut peak = BigInt::from(0);
        for x in &stimuli {
            for y in reference_decimate(&c, x) {
                ensure(fits(&y, w), || format!("{c}: {y} exceeds {w} bits"))?;
                if y.abs() > peak.abs() {
                    peak = y;
                }
            }
        }
        let floor = BigInt::from(lo) * BigInt::from(c.gain());
        ensure(peak == floor, || {
            format!("{c}: peak {peak}, expected {floor}")
        })?;
        ensure(w == 1 || !fits(&floor, w - 1), || {
            format!("{c}: {} bits would suffice", w - 1)
        })?;
    }
    Ok("50 configs: W suffices, W−1 does not".into())
}

fn chip_golden() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x0c1c_0008);
    for case in 0..50 {
        let (r_min, r_max) = (1u32, 16u32);
        let c = cfg(
            rng.gen_range(1..=3),
            rng.gen_range(2..=r_max),
            rng.gen_range(1..=2),
            rng.gen_range(2..=8),
        );
        let latency = rng.gen_range(1..=6);
        let mut chip = ChipModel::programmable(c, latency, r_min, r_max).unwrap();
        let (lo, hi) = c.input_range();
        let cycles = rng.gen_range(100..600);
        let load_at = rng.gen_range(10..cycles - 10);
        let new_rate = rng.gen_range(r_min..=r_max);
        let density = rng.gen_range(0.2..=1.0);

        let mut trace = Vec::new();
        for i in 0..cycles {
            trace.push(if i == load_at {
                PinInputs::load_rate(new_rate)
            } else if rng.gen_bool(density) {
                PinInputs::sample(rng.gen_range(lo..=hi))
            } else {
                PinInputs {
                    din: rng.gen_range(lo..=hi),
                    ..PinInputs::idle()
                }
            });
        }
        trace.extend(vec![PinInputs::idle(); latency + 1]);
        let out = run_trace(&mut chip, &trace).map_err(|e| e.to_string())?;

        // accepted samples: nd high, not the load cycle, not the cycle after it
        let mut before = Vec::new();
        let mut after = Vec::new();
        for (i, p) in trace.iter().enumerate() {
            if p.nd && i != load_at + 1 {
                if i < load_at {
                    before.push(p.din)
                } else {
                    after.push(p.din)
                }
            }
        }
        let mut want = DecimatorState::new(c, None)
            .unwrap()
            .decimate_block(&before)
            .unwrap();
        want.extend(
            DecimatorState::new(c.with_rate(new_rate).unwrap(), None)
                .unwrap()
                .decimate_block(&after)
                .unwrap(),
        );
        let got: Vec<i128> = out.iter().filter(|o| o.rdy).map(|o| o.dout).collect();
        ensure(got == want, || {
            format!("case {case}: {c} L={latency} load {new_rate}@{load_at}")
        })?;

        // dense stream: first pulse after R samples + L, then every R cycles
        let mut dense = ChipModel::new(c, latency).unwrap();
        let trace = vec![PinInputs::sample(hi); 20 * c.rate() as usize];
        let out = run_trace(&mut dense, &trace).unwrap();
        let pulses: Vec<usize> = (0..out.len())
            .filter(|&i| out[i].rdy)
            .map(|i| i + 1)
            .collect();
        ensure(pulses[0] == c.rate() as usize + latency, || {
            format!("case {case}: first pulse {}", pulses[0])
        })?;
        ensure(
            pulses.windows(2).all(|w| w[1] - w[0] == c.rate() as usize),
            || format!("case {case}: irregular period {pulses:?}"),
        )?;
    }
    Ok("50 traces match; dense period = R".into())
}

fn compensation() -> Outcome {
    let c = cfg(2, 50, 1, 1);
    let raw = passband_droop(&c, 0.005).unwrap();
    let fir = design_compensator(&c, 15, 0.25, 512).map_err(|e| e.to_string())?;
    let dev = passband_deviation_db(&c, &fir, 0.25, 4001);
    ensure(dev <= 0.1, || format!("deviation {dev} dB"))?;
    Ok(format!("{raw:.2} dB → {dev:.2e} dB"))
}

fn sigma_delta_end_to_end() -> Outcome {
    let c = cfg(2, 50, 1, 2);
    let bits = modulate_dc(0.5, 20_000).unwrap();
    let out = DecimatorState::new(c, None)
        .unwrap()
        .decimate_block(&bits)
        .unwrap();
    let settled = &out[2..];
    let mean = settled.iter().map(|&y| y.to_f64().unwrap()).sum::<f64>() / settled.len() as f64;
    ensure((mean - 1250.0).abs() <= 12.5, || format!("mean {mean}"))?;
    Ok(format!("steady-state mean {mean:.3}"))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("1 REFERENCE CONFIG DROOP/ALIAS", droop_alias_regression),
        ("2 GAIN", gain),
        ("3 IMPULSE 160 → 20", impulse_shape),
        ("4 ORACLE EQUIVALENCE", oracle_equivalence),
        ("5 CLOSED-FORM vs POLYNOMIAL", closed_vs_polynomial),
        ("6 NULLS", nulls),
        ("7 WIDTH SUFFICIENCY", width_sufficiency),
        ("8 CHIP GOLDEN MODEL", chip_golden),
        ("9 COMPENSATION", compensation),
        ("10 END-TO-END SIGMA-DELTA", sigma_delta_end_to_end),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        let ms = start.elapsed().as_secs_f64() * 1e3;
        match outcome {
            Ok(detail) => println!("[PASS] {name}: {detail} ({ms:.0} ms)"),
            Err(detail) => {
                failed += 1;
                println!("[FAIL] {name}: {detail} ({ms:.0} ms)");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 10 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
