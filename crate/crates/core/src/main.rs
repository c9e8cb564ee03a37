use std::fs;
use std::io::{self, Read, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use cic::analysis::{alias_attenuation, null_frequencies, passband_droop, response_curve};
use cic::chip::{run_trace, ChipModel};
use cic::compensator::{design_compensator, passband_deviation_db};
use cic::format;
use cic::{sdm, CicConfig, DecimatorState};

/// Points used to measure the achieved compensator deviation.
const DEVIATION_SCAN_POINTS: usize = 4001;

#[derive(Parser)]
#[command(name = "cic", version, about = "CIC decimation filter toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct ConfigArgs {
    /// Number of integrator/comb stages
    #[arg(short = 'N', long = "stages")]
    stages: u32,
    /// Decimation factor
    #[arg(short = 'R', long = "rate")]
    rate: u32,
    /// Differential delay
    #[arg(short = 'M', long = "delay", default_value_t = 1)]
    delay: u32,
    /// Signed input sample width in bits
    #[arg(short = 'B', long = "bits", default_value_t = 16)]
    bits: u32,
}

#[derive(Subcommand)]
enum Command {
    /// Decimate a sample file through the bit-exact filter
    Decimate {
        #[command(flatten)]
        config: ConfigArgs,
        #[arg(long = "in", default_value = "-")]
        input: String,
        #[arg(long = "out", default_value = "-")]
        output: String,
    },
    /// Tabulate the normalized frequency response
    Response {
        #[command(flatten)]
        config: ConfigArgs,
        #[arg(long, default_value_t = 1001)]
        grid: usize,
        /// Passband edge, cycles per input sample
        #[arg(long)]
        fp: Option<f64>,
        #[arg(long = "out", default_value = "-")]
        output: String,
    },
    /// Design a droop-compensation FIR
    Compensate {
        #[command(flatten)]
        config: ConfigArgs,
        #[arg(long, default_value_t = 15)]
        taps: usize,
        /// Passband edge, cycles per output sample
        #[arg(long, default_value_t = 0.25)]
        fp: f64,
        /// Least-squares grid points over the passband
        #[arg(long, default_value_t = 512)]
        grid: usize,
        #[arg(long = "out", default_value = "-")]
        output: String,
    },
    /// Run a pin trace through the cycle-level chip model
    Chipsim {
        #[command(flatten)]
        config: ConfigArgs,
        /// Output pipeline depth in cycles [default: N + 1]
        #[arg(long)]
        latency: Option<usize>,
        /// Lowest loadable rate; together with --rate-max makes the chip programmable
        #[arg(long, requires = "rate_max")]
        rate_min: Option<u32>,
        #[arg(long, requires = "rate_min")]
        rate_max: Option<u32>,
        #[arg(long = "in", default_value = "-")]
        input: String,
        #[arg(long = "out", default_value = "-")]
        output: String,
    },
    /// Emit a first-order sigma-delta stream for a constant level
    Sdm {
        #[arg(long, allow_negative_numbers = true)]
        dc: f64,
        #[arg(long)]
        count: usize,
        #[arg(long = "out", default_value = "-")]
        output: String,
    },
    /// Print gain, register width and null frequencies
    Info {
        #[command(flatten)]
        config: ConfigArgs,
    },
}

enum Failure {
    Usage(String),
    Data(String),
}

impl Failure {
    fn usage(e: impl ToString) -> Self {
        Failure::Usage(e.to_string())
    }

    fn data(e: impl ToString) -> Self {
        Failure::Data(e.to_string())
    }
}

type CmdResult = Result<(), Failure>;

impl ConfigArgs {
    fn build(self) -> Result<CicConfig, Failure> {
        let c = CicConfig::new(self.stages, self.rate, self.delay, self.bits)
            .map_err(Failure::usage)?;
        if let Some(w) = c.warning() {
            eprintln!("warning: {w}");
        }
        Ok(c)
    }
}

fn read_input(path: &str) -> Result<String, Failure> {
    if path == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::data(format!("stdin: {e}")))?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| Failure::data(format!("{path}: {e}")))
    }
}

fn write_output(path: &str, text: &str) -> CmdResult {
    let res = if path == "-" {
        io::stdout().lock().write_all(text.as_bytes())
    } else {
        fs::write(path, text)
    };
    res.map_err(|e| Failure::data(format!("{path}: {e}")))
}

fn decimate(config: ConfigArgs, input: &str, output: &str) -> CmdResult {
    let config = config.build()?;
    let mut state = DecimatorState::new(config, None).map_err(Failure::usage)?;
    let samples = format::parse_samples(&read_input(input)?, &config)
        .map_err(|e| Failure::data(format!("{input}: {e}")))?;
    let out = state.decimate_block(&samples).map_err(Failure::data)?;
    write_output(output, &format::write_samples(&out))?;
    eprintln!(
        "samples_in={} samples_out={} width={} gain={}",
        samples.len(),
        out.len(),
        state.width(),
        config.gain()
    );
    Ok(())
}

fn response(config: ConfigArgs, grid: usize, fp: Option<f64>, output: &str) -> CmdResult {
    let config = config.build()?;
    let curve = response_curve(&config, grid).map_err(Failure::usage)?;
    let figures = fp
        .map(|fp| -> Result<_, Failure> {
            let droop = passband_droop(&config, fp).map_err(Failure::usage)?;
            let alias = alias_attenuation(&config, fp).map_err(Failure::usage)?;
            Ok((droop, alias))
        })
        .transpose()?;
    write_output(output, &format::write_response_csv(&curve))?;
    if let Some((droop, alias)) = figures {
        eprintln!(
            "droop_db={} alias_db={}",
            format::round2(droop),
            format::round2(alias)
        );
    }
    Ok(())
}

fn compensate(config: ConfigArgs, taps: usize, fp: f64, grid: usize, output: &str) -> CmdResult {
    let config = config.build()?;
    let fir = design_compensator(&config, taps, fp, grid).map_err(Failure::usage)?;
    let dev = passband_deviation_db(&config, &fir, fp, DEVIATION_SCAN_POINTS);
    write_output(output, &format::write_taps(fir.taps()))?;
    eprintln!("taps={} deviation_db={dev:e}", fir.taps().len());
    Ok(())
}

fn chipsim(
    config: ConfigArgs,
    latency: Option<usize>,
    rate_range: Option<(u32, u32)>,
    input: &str,
    output: &str,
) -> CmdResult {
    let config = config.build()?;
    let latency = latency.unwrap_or_else(|| ChipModel::default_latency(&config));
    let mut chip = match rate_range {
        Some((lo, hi)) => ChipModel::programmable(config, latency, lo, hi),
        None => ChipModel::new(config, latency),
    }
    .map_err(Failure::usage)?;
    let trace = format::parse_trace(&read_input(input)?)
        .map_err(|e| Failure::data(format!("{input}: {e}")))?;
    let mut out = run_trace(&mut chip, &trace).map_err(Failure::data)?;
    if !out.is_empty() {
        out.extend(chip.drain());
    }
    write_output(output, &format::write_trace_output(&out))?;
    eprintln!(
        "cycles={} accepted={} rdy_count={}",
        out.len(),
        chip.accepted(),
        chip.ready_pulses()
    );
    Ok(())
}

fn info(config: ConfigArgs) -> CmdResult {
    let config = config.build()?;
    let nulls: Vec<String> = null_frequencies(&config)
        .iter()
        .map(|f| format!("{f}"))
        .collect();
    let text = format!(
        "config: {config}\ngain: {}\nwidth: {}\nnulls: {}\n",
        config.gain(),
        config.required_width(),
        nulls.join(" ")
    );
    write_output("-", &text)
}

fn run(cli: Cli) -> CmdResult {
    match cli.command {
        Command::Decimate {
            config,
            input,
            output,
        } => decimate(config, &input, &output),
        Command::Response {
            config,
            grid,
            fp,
            output,
        } => response(config, grid, fp, &output),
        Command::Compensate {
            config,
            taps,
            fp,
            grid,
            output,
        } => compensate(config, taps, fp, grid, &output),
        Command::Chipsim {
            config,
            latency,
            rate_min,
            rate_max,
            input,
            output,
        } => chipsim(config, latency, rate_min.zip(rate_max), &input, &output),
        Command::Sdm { dc, count, output } => {
            let bits = sdm::modulate_dc(dc, count).map_err(Failure::usage)?;
            write_output(&output, &format::write_samples(&bits))
        }
        Command::Info { config } => info(config),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(1);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Data(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
