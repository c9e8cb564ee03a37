//! Line-oriented text formats read and written by the command-line tool.
//!
//! * Samples: one signed decimal integer per line. Blank lines and lines
//!   starting with `#` are skipped.
//! * Response tables: `f,mag_db,phase_rad` header, then one row per point.
//! * Pin traces in: `nd din we ldin` per cycle, `-` for don't-care (read as
//!   0). Out: `cycle rdy dout rfd` per cycle, cycles counted from 0.

use std::fmt::Write;

use crate::analysis::ResponseCurve;
use crate::chip::{PinInputs, PinOutputs};
use crate::config::CicConfig;
use crate::error::{Error, Result};

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.trim();
        (!l.is_empty() && !l.starts_with('#')).then_some((i + 1, l))
    })
}

/// Parse a sample file, checking every value against the input width.
pub fn parse_samples(text: &str, config: &CicConfig) -> Result<Vec<i64>> {
    content_lines(text)
        .map(|(line, l)| {
            let x: i64 = l.parse().map_err(|_| Error::Parse {
                line,
                message: format!("not an integer: {l:?}"),
            })?;
            config.check_input(x).map_err(|e| Error::Parse {
                line,
                message: e.to_string(),
            })?;
            Ok(x)
        })
        .collect()
}

pub fn write_samples<T: std::fmt::Display>(samples: &[T]) -> String {
    let mut s = String::new();
    for x in samples {
        writeln!(s, "{x}").unwrap();
    }
    s
}

pub fn write_response_csv(curve: &ResponseCurve) -> String {
    let mut s = String::from("f,mag_db,phase_rad\n");
    for p in &curve.points {
        writeln!(s, "{:.12e},{:.12e},{:.12e}", p.freq, p.mag_db, p.phase_rad).unwrap();
    }
    s
}

/// FIR coefficients, one per line, round-trippable.
pub fn write_taps(taps: &[f64]) -> String {
    let mut s = String::new();
    for t in taps {
        writeln!(s, "{t:e}").unwrap();
    }
    s
}

fn parse_flag(field: &str) -> std::result::Result<bool, String> {
    match field {
        "1" => Ok(true),
        "0" | "-" => Ok(false),
        other => Err(format!("expected 0, 1 or -, got {other:?}")),
    }
}

fn parse_num<T: std::str::FromStr + Default>(
    field: &str,
    name: &str,
) -> std::result::Result<T, String> {
    if field == "-" {
        return Ok(T::default());
    }
    field
        .parse()
        .map_err(|_| format!("{name}: not a valid number: {field:?}"))
}

/// Parse an input pin trace. Errors name both the cycle and the file line.
pub fn parse_trace(text: &str) -> Result<Vec<PinInputs>> {
    content_lines(text)
        .enumerate()
        .map(|(cycle, (line, l))| {
            let wrap = |message: String| Error::Cycle {
                cycle,
                source: Box::new(Error::Parse { line, message }),
            };
            let fields: Vec<&str> = l.split_whitespace().collect();
            let [nd, din, we, ldin] = fields[..] else {
                return Err(wrap(format!(
                    "expected 4 fields `nd din we ldin`, got {}",
                    fields.len()
                )));
            };
            Ok(PinInputs {
                nd: parse_flag(nd).map_err(wrap)?,
                din: parse_num(din, "din").map_err(wrap)?,
                we: parse_flag(we).map_err(wrap)?,
                ldin: parse_num(ldin, "ldin").map_err(wrap)?,
            })
        })
        .collect()
}

pub fn write_trace(trace: &[PinInputs]) -> String {
    let mut s = String::new();
    for p in trace {
        writeln!(s, "{} {} {} {}", p.nd as u8, p.din, p.we as u8, p.ldin).unwrap();
    }
    s
}

pub fn write_trace_output(outputs: &[PinOutputs]) -> String {
    let mut s = String::new();
    for (cycle, o) in outputs.iter().enumerate() {
        writeln!(s, "{cycle} {} {} {}", o.rdy as u8, o.dout, o.rfd as u8).unwrap();
    }
    s
}

/// Two decimals, halves rounded away from zero.
pub fn round2(x: f64) -> String {
    format!("{:.2}", (x * 100.0).round() / 100.0)
}
