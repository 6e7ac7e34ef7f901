//! `poseclone`: batch command-line front end.
//!
//! Exit status: 0 on success, 2 for invalid input, 3 for I/O failures.

mod commands;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

pub const EXIT_INVALID: u8 = 2;
pub const EXIT_IO: u8 = 3;

#[derive(Debug, Parser)]
#[command(name = "poseclone", version, about = "Pose confidence maps, coverage metrics and temporal-coherence evaluation")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Render a skeleton JSON file into a PSQ1 confidence-volume sequence.
    Render {
        skeletons: std::path::PathBuf,
        #[arg(long)]
        out: std::path::PathBuf,
        /// Gaussian sigma in pixels (default: 6 px scaled from a 256 px frame height).
        #[arg(long)]
        sigma: Option<f64>,
    },
    /// Recover skeletons from a PSQ1 file by per-channel argmax.
    Extract {
        poses: std::path::PathBuf,
        #[arg(long)]
        out: std::path::PathBuf,
        #[arg(long, default_value_t = poseclone_core::pose::DEFAULT_MIN_CONFIDENCE)]
        min_confidence: f64,
    },
    /// Align a skeleton sequence to a common hip width and center.
    Normalize {
        skeletons: std::path::PathBuf,
        #[arg(long)]
        target_hip_width: f64,
        /// Target center as `X,Y` (default: frame center).
        #[arg(long, value_parser = parse_point)]
        center: Option<(f64, f64)>,
        #[arg(long)]
        out: std::path::PathBuf,
    },
    /// Coverage of a driving sequence by a reference sequence.
    Coverage {
        driving: std::path::PathBuf,
        reference: std::path::PathBuf,
        /// Per-limb flag threshold in descriptor units (`inf` disables flags).
        #[arg(long, default_value_t = poseclone_core::metrics::DEFAULT_GAMMA)]
        gamma: f64,
        /// Per frame and limb rows: frame,limb,distance,nn_frame,flagged.
        #[arg(long)]
        csv: Option<std::path::PathBuf>,
        /// Summary JSON (also printed on stdout).
        #[arg(long)]
        json: Option<std::path::PathBuf>,
        /// Twelve limbs as `a-b` joint pairs separated by commas.
        #[arg(long)]
        limbs: Option<String>,
    },
    /// Temporal-coherence loss for each consecutive pair of frames.
    ///
    /// Flows are backward by default: flow i maps pixels of frame i+1 into
    /// frame i, so frame i is sampled at p + flow(p).
    TcLoss {
        frames: std::path::PathBuf,
        flows: std::path::PathBuf,
        /// Skeletons of the frames; the weight map of pair i uses frame i+1.
        skeletons: std::path::PathBuf,
        /// Falloff width in pixels (default: 10 px scaled from a 256 px frame height).
        #[arg(long)]
        sigma_alpha: Option<f64>,
        /// Treat the flows as forward flows and negate them (exact only for
        /// locally constant motion).
        #[arg(long)]
        forward_flow: bool,
        #[arg(long, value_enum, default_value_t = Normalization::Mean)]
        normalization: Normalization,
    },
    /// Mean squared RGB error between two PPM frame directories.
    Mse {
        frames_a: std::path::PathBuf,
        frames_b: std::path::PathBuf,
    },
    /// Self-reenactment train/test split.
    Split {
        #[arg(long, conflicts_with = "frames_dir", required_unless_present = "frames_dir")]
        length: Option<usize>,
        #[arg(long)]
        frames_dir: Option<std::path::PathBuf>,
        #[arg(long, default_value_t = poseclone_core::temporal::DEFAULT_TRAIN_FRACTION)]
        fraction: f64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Normalization {
    /// Mean over pixels and channels.
    Mean,
    /// Divide by the weight sum.
    WeightSum,
    /// Unnormalized sum.
    Sum,
}

fn parse_point(s: &str) -> Result<(f64, f64), String> {
    let (x, y) = s.split_once(',').ok_or("expected X,Y")?;
    let p = |v: &str| v.trim().parse::<f64>().map_err(|e| e.to_string());
    Ok((p(x)?, p(y)?))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    poseclone_core::configure_threads_from_env();
    match commands::run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(commands::exit_code(&err))
        }
    }
}
