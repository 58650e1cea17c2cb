//! Command-line definitions.
//!
//! Exit codes: 0 success, 2 invalid flags/config, 3 numeric failure
//! (e.g. a region boundary past the bracket cap).

use std::path::PathBuf;

use clap::{Parser, Subcommand};

/// Analytic low-power wireless link model: PRR vs SNR and distance for
/// NCFSK/CFSK/BPSK/DPSK under log-normal shadowing, plus seeded Monte Carlo.
///
/// All SNR flags are decibel ratios (dimensionless dB, not dBm); transmit
/// and noise powers inside radio profiles are dBm.
#[derive(Debug, Parser)]
#[command(name = "linkprr", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Receiver response curves: PRR vs SNR per (modulation, frame) pair.
    Response {
        /// Modulations to sweep, comma-separated (ncfsk,cfsk,bpsk,dpsk).
        #[arg(long = "mod", value_delimiter = ',', required = true)]
        mods: Vec<String>,
        /// Frame sizes in bytes, comma-separated.
        #[arg(long, value_delimiter = ',', default_value = "50")]
        frame: Vec<u32>,
        /// Sweep start, dB.
        #[arg(long, default_value_t = 0.0)]
        snr_min: f64,
        /// Sweep end, dB.
        #[arg(long, default_value_t = 30.0)]
        snr_max: f64,
        /// Sweep step, dB.
        #[arg(long, default_value_t = 0.1)]
        step: f64,
        /// Output directory; all files land here.
        #[arg(long, default_value = "./out")]
        out_dir: PathBuf,
        /// Also write one SVG overlaying every curve.
        #[arg(long)]
        svg: bool,
    },

    /// Mean-channel PRR vs distance for one radio.
    Curve {
        /// Built-in radio name (mica2, tinynode) or a radio JSON file.
        #[arg(long)]
        radio: String,
        /// Channel JSON file; omitted means the built-in default channel.
        #[arg(long)]
        channel: Option<PathBuf>,
        /// Closest probed distance, meters.
        #[arg(long, default_value_t = 1.0)]
        d_min: f64,
        /// Farthest probed distance, meters.
        #[arg(long, default_value_t = 100.0)]
        d_max: f64,
        /// Probe spacing, meters.
        #[arg(long, default_value_t = 0.1)]
        d_step: f64,
        #[arg(long, default_value = "./out")]
        out_dir: PathBuf,
        #[arg(long)]
        svg: bool,
    },

    /// Connected/transitional boundaries, deterministic and probabilistic.
    Regions {
        /// Built-in radio name (mica2, tinynode) or a radio JSON file.
        #[arg(long)]
        radio: String,
        /// Channel JSON file; omitted means the built-in default channel.
        #[arg(long)]
        channel: Option<PathBuf>,
        /// Confidence level of the probabilistic boundaries.
        #[arg(long, default_value_t = 0.95)]
        confidence: f64,
        /// Shadowing draws behind the probabilistic boundaries.
        #[arg(long, default_value_t = 10_000)]
        draws: u64,
        /// Root seed of the shadowing draws.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "./out")]
        out_dir: PathBuf,
    },

    /// Side-by-side curves and region tables for several radios or
    /// modulations.
    Compare {
        /// Radios to compare, comma-separated (names or JSON files).
        #[arg(long, value_delimiter = ',')]
        radios: Option<Vec<String>>,
        /// Modulations to compare on one base radio, comma-separated.
        #[arg(long, value_delimiter = ',')]
        mods: Option<Vec<String>>,
        /// Base radio for --mods comparisons.
        #[arg(long, default_value = "mica2")]
        radio: String,
        /// Frame size override in bytes (--mods comparisons).
        #[arg(long)]
        frame: Option<u32>,
        /// Channel JSON file; omitted means the built-in default channel.
        #[arg(long)]
        channel: Option<PathBuf>,
        #[arg(long, default_value_t = 1.0)]
        d_min: f64,
        #[arg(long, default_value_t = 100.0)]
        d_max: f64,
        #[arg(long, default_value_t = 0.1)]
        d_step: f64,
        #[arg(long, default_value = "./out")]
        out_dir: PathBuf,
        #[arg(long)]
        svg: bool,
    },

    /// Bernoulli packet experiment at a fixed SNR.
    Simulate {
        /// Modulation scheme (ncfsk, cfsk, bpsk, dpsk).
        #[arg(long = "mod")]
        modulation: String,
        /// SNR in dB at which packets are drawn.
        #[arg(long)]
        snr_db: f64,
        /// Frame size in bytes.
        #[arg(long, default_value_t = 50)]
        frame: u32,
        /// Packet transmissions to draw.
        #[arg(long)]
        trials: u64,
        /// Root seed; required, there is no silent nondeterminism.
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value = "./out")]
        out_dir: PathBuf,
    },

    /// Shadowing-induced PRR distribution at one distance.
    Ensemble {
        /// Built-in radio name (mica2, tinynode) or a radio JSON file.
        #[arg(long)]
        radio: String,
        /// Channel JSON file; omitted means the built-in default channel.
        #[arg(long)]
        channel: Option<PathBuf>,
        /// Distance at which the ensemble is drawn, meters.
        #[arg(long)]
        distance: f64,
        /// Shadowing draws.
        #[arg(long)]
        draws: u64,
        /// Root seed; required, there is no silent nondeterminism.
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value = "./out")]
        out_dir: PathBuf,
    },
}
