use std::io::Write;

use serde::Serialize;

use super::{DescriptorSequence, LimbTable};
use crate::error::Result;
use crate::exec::{ordered_sum, Execution};
use crate::pose::LIMB_COUNT;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LimbCoverage {
    /// Nearest-neighbour distance; `None` if the limb is invalid or unmatched.
    pub distance: Option<f64>,
    pub nn_frame: Option<usize>,
    pub flagged: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FrameCoverage {
    pub frame_index: usize,
    /// Pose-to-sequence distance; `None` when the frame is incomparable.
    pub distance: Option<f64>,
    pub per_limb: [LimbCoverage; LIMB_COUNT],
}

impl FrameCoverage {
    pub fn any_flagged(&self) -> bool {
        self.per_limb.iter().any(|l| l.flagged)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoverageSummary {
    pub frames: usize,
    pub incomparable_frames: usize,
    /// Over comparable frames; `None` if there are none.
    pub mean_distance: Option<f64>,
    pub max_distance: Option<f64>,
    pub fraction_frames_with_any_flag: f64,
    pub gamma: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoverageReport {
    pub per_frame: Vec<FrameCoverage>,
    pub summary: CoverageSummary,
}

/// Pose-to-sequence distance of every driving frame against the reference,
/// with per-limb flags at threshold `gamma`.
pub fn coverage_report(
    driving: &DescriptorSequence,
    reference: &DescriptorSequence,
    gamma: f64,
) -> CoverageReport {
    coverage_report_with(driving, reference, gamma, Execution::default())
}

pub fn coverage_report_with(
    driving: &DescriptorSequence,
    reference: &DescriptorSequence,
    gamma: f64,
    exec: Execution,
) -> CoverageReport {
    let table = LimbTable::build(reference);
    let frames = driving.frames();
    let per_frame = exec.map_range(frames.len(), |i| {
        let empty = LimbCoverage {
            distance: None,
            nn_frame: None,
            flagged: false,
        };
        match table.match_pose(&frames[i]) {
            Ok(m) => FrameCoverage {
                frame_index: i,
                distance: Some(m.distance),
                per_limb: std::array::from_fn(|l| match m.per_limb[l] {
                    Some(lm) => LimbCoverage {
                        distance: Some(lm.distance),
                        nn_frame: Some(lm.nn_frame),
                        flagged: lm.distance > gamma,
                    },
                    None => empty,
                }),
            },
            Err(_) => FrameCoverage {
                frame_index: i,
                distance: None,
                per_limb: [empty; LIMB_COUNT],
            },
        }
    });

    let distances: Vec<f64> = per_frame.iter().filter_map(|f| f.distance).collect();
    let flagged = per_frame.iter().filter(|f| f.any_flagged()).count();
    let summary = CoverageSummary {
        frames: per_frame.len(),
        incomparable_frames: per_frame.len() - distances.len(),
        mean_distance: (!distances.is_empty())
            .then(|| ordered_sum(&distances) / distances.len() as f64),
        max_distance: distances.iter().copied().reduce(f64::max),
        fraction_frames_with_any_flag: flagged as f64 / per_frame.len() as f64,
        gamma,
    };
    CoverageReport { per_frame, summary }
}

impl CoverageReport {
    /// One row per driving frame and limb: `frame,limb,distance,nn_frame,flagged`.
    /// Invalid limbs leave `distance` and `nn_frame` empty.
    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "frame,limb,distance,nn_frame,flagged")?;
        for f in &self.per_frame {
            for (l, lc) in f.per_limb.iter().enumerate() {
                let d = lc.distance.map(|d| d.to_string()).unwrap_or_default();
                let nn = lc.nn_frame.map(|n| n.to_string()).unwrap_or_default();
                writeln!(out, "{},{},{},{},{}", f.frame_index, l, d, nn, lc.flagged)?;
            }
        }
        Ok(())
    }

    pub fn summary_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&self.summary)?)
    }
}
