use std::io::Write;
use std::path::Path;

use anyhow::{bail, ensure, Context, Result};
use poseclone_core::io::{self, flo, ppm, psq, skeleton_json};
use poseclone_core::metrics::{coverage_report, DescriptorSequence};
use poseclone_core::normalize::{align_sequence, SkeletonSequence};
use poseclone_core::pose::{
    descriptor, extract_skeleton, render_pose, scale_to_resolution, DEFAULT_RENDER_SIGMA,
};
use poseclone_core::temporal::{
    limb_weight_map, reenact_split, tc_loss_with, TcNormalization, DEFAULT_SIGMA_ALPHA,
};
use poseclone_core::{Execution, LimbSet};
use serde_json::json;

use crate::{Command, Normalization, EXIT_INVALID, EXIT_IO};

pub fn exit_code(err: &anyhow::Error) -> u8 {
    for cause in err.chain() {
        if let Some(e) = cause.downcast_ref::<poseclone_core::Error>() {
            return if e.is_io() { EXIT_IO } else { EXIT_INVALID };
        }
        if cause.downcast_ref::<std::io::Error>().is_some() {
            return EXIT_IO;
        }
    }
    EXIT_INVALID
}

fn print_json(value: &serde_json::Value) -> Result<()> {
    let mut out = std::io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, value)?;
    writeln!(out)?;
    Ok(())
}

fn load_skeletons(path: &Path) -> Result<SkeletonSequence> {
    skeleton_json::load_skeletons(path).with_context(|| format!("reading {}", path.display()))
}

fn parse_limbs(spec: &str) -> Result<LimbSet> {
    let pairs = spec
        .split(',')
        .map(|p| {
            let (a, b) = p.trim().split_once('-').context("limb must be `a-b`")?;
            Ok((a.trim().parse()?, b.trim().parse()?))
        })
        .collect::<Result<Vec<(usize, usize)>>>()
        .context("parsing --limbs")?;
    Ok(LimbSet::from_slice(&pairs)?)
}

pub fn run(command: Command) -> Result<()> {
    match command {
        Command::Render {
            skeletons,
            out,
            sigma,
        } => {
            let seq = load_skeletons(&skeletons)?;
            let sigma =
                sigma.unwrap_or_else(|| scale_to_resolution(DEFAULT_RENDER_SIGMA, seq.frame_height));
            let vols = seq
                .frames
                .iter()
                .map(|s| render_pose(s, seq.frame_height, seq.frame_width, sigma))
                .collect::<poseclone_core::Result<Vec<_>>>()?;
            psq::save_pose_sequence(&out, &vols)
                .with_context(|| format!("writing {}", out.display()))?;
            print_json(&json!({ "frames": vols.len(), "sigma": sigma }))
        }
        Command::Extract {
            poses,
            out,
            min_confidence,
        } => {
            let vols = psq::load_pose_sequence(&poses)
                .with_context(|| format!("reading {}", poses.display()))?;
            ensure!(!vols.is_empty(), "pose sequence is empty");
            let frames = vols
                .iter()
                .map(|v| extract_skeleton(v, min_confidence))
                .collect::<poseclone_core::Result<Vec<_>>>()?;
            let seq = SkeletonSequence::new(frames, vols[0].height(), vols[0].width())?;
            skeleton_json::save_skeletons(&out, &seq)
                .with_context(|| format!("writing {}", out.display()))?;
            print_json(&json!({ "frames": seq.len() }))
        }
        Command::Normalize {
            skeletons,
            target_hip_width,
            center,
            out,
        } => {
            let seq = load_skeletons(&skeletons)?;
            let center = center.unwrap_or_else(|| seq.frame_center());
            let (aligned, transform) = align_sequence(&seq, center, target_hip_width)?;
            skeleton_json::save_skeletons(&out, &aligned)
                .with_context(|| format!("writing {}", out.display()))?;
            print_json(&serde_json::to_value(transform)?)
        }
        Command::Coverage {
            driving,
            reference,
            gamma,
            csv,
            json: json_out,
            limbs,
        } => {
            ensure!(!gamma.is_nan(), "gamma must be a number");
            let limbs = match limbs {
                Some(spec) => parse_limbs(&spec)?,
                None => LimbSet::default(),
            };
            let describe = |path: &Path| -> Result<DescriptorSequence> {
                let seq = load_skeletons(path)?;
                Ok(DescriptorSequence::new(
                    seq.frames.iter().map(|s| descriptor(s, &limbs)).collect(),
                )?)
            };
            let report = coverage_report(&describe(&driving)?, &describe(&reference)?, gamma);
            if let Some(path) = csv {
                io::write_atomic(&path, |w| report.write_csv(w))
                    .with_context(|| format!("writing {}", path.display()))?;
            }
            let summary = serde_json::to_value(&report.summary)?;
            if let Some(path) = json_out {
                io::write_atomic(&path, |w| {
                    serde_json::to_writer_pretty(&mut *w, &summary)?;
                    Ok(writeln!(w)?)
                })
                .with_context(|| format!("writing {}", path.display()))?;
            }
            print_json(&summary)
        }
        Command::TcLoss {
            frames,
            flows,
            skeletons,
            sigma_alpha,
            forward_flow,
            normalization,
        } => {
            let frame_seq = ppm::load_frame_dir(&frames)
                .with_context(|| format!("reading frames from {}", frames.display()))?;
            let flow_paths = io::list_files(&flows, "flo")
                .with_context(|| format!("listing flows in {}", flows.display()))?;
            let skel = load_skeletons(&skeletons)?;
            ensure!(frame_seq.len() >= 2, "need at least two frames, found {}", frame_seq.len());
            ensure!(
                flow_paths.len() + 1 == frame_seq.len(),
                "expected {} flow fields for {} frames, found {}",
                frame_seq.len() - 1,
                frame_seq.len(),
                flow_paths.len()
            );
            ensure!(
                skel.len() == frame_seq.len(),
                "skeleton file has {} frames but {} images were found",
                skel.len(),
                frame_seq.len()
            );
            let (h, w) = (frame_seq[0].height(), frame_seq[0].width());
            let sigma = sigma_alpha.unwrap_or_else(|| scale_to_resolution(DEFAULT_SIGMA_ALPHA, h));
            let norm = match normalization {
                Normalization::Mean => TcNormalization::PixelMean,
                Normalization::WeightSum => TcNormalization::WeightSum,
                Normalization::Sum => TcNormalization::Sum,
            };
            let limbs = LimbSet::default();
            let mut pairs = Vec::with_capacity(flow_paths.len());
            for (i, path) in flow_paths.iter().enumerate() {
                let mut flow =
                    flo::load_flo(path).with_context(|| format!("reading {}", path.display()))?;
                if forward_flow {
                    flow = flow.negated();
                }
                let alpha = limb_weight_map(&skel.frames[i + 1], &limbs, h, w, sigma)?;
                let loss = tc_loss_with(
                    &frame_seq[i],
                    &frame_seq[i + 1],
                    &flow,
                    &alpha,
                    norm,
                    Execution::default(),
                )
                .with_context(|| format!("pair {i}"))?;
                pairs.push(loss);
            }
            let mean = pairs.iter().sum::<f64>() / pairs.len() as f64;
            print_json(&json!({ "pairs": pairs, "mean": mean, "sigma_alpha": sigma }))
        }
        Command::Mse { frames_a, frames_b } => {
            let a = ppm::load_frame_dir(&frames_a)
                .with_context(|| format!("reading {}", frames_a.display()))?;
            let b = ppm::load_frame_dir(&frames_b)
                .with_context(|| format!("reading {}", frames_b.display()))?;
            if a.is_empty() {
                bail!("no .ppm frames in {}", frames_a.display());
            }
            let value = poseclone_core::mse(&a, &b)?;
            print_json(&json!({ "mse": value, "frames": a.len() }))
        }
        Command::Split {
            length,
            frames_dir,
            fraction,
        } => {
            let length = match (length, frames_dir) {
                (Some(n), _) => n,
                (None, Some(dir)) => io::list_files(&dir, "ppm")
                    .with_context(|| format!("listing {}", dir.display()))?
                    .len(),
                (None, None) => bail!("either --length or --frames-dir is required"),
            };
            let split = reenact_split(length, fraction)?;
            print_json(&serde_json::to_value(split)?)
        }
    }
}
