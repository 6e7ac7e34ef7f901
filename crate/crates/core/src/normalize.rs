//! Per-video alignment (one scale, one translation) and per-channel
//! standardization of confidence volumes.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::{ordered_sum, Execution};
use crate::pose::{joint, ConfidenceVolume, Skeleton};

/// Channels whose standard deviation falls below this are zeroed.
pub const STD_EPSILON: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq)]
pub struct SkeletonSequence {
    pub frames: Vec<Skeleton>,
    pub frame_height: usize,
    pub frame_width: usize,
}

impl SkeletonSequence {
    pub fn new(frames: Vec<Skeleton>, frame_height: usize, frame_width: usize) -> Result<Self> {
        if frames.is_empty() {
            return Err(Error::structural("skeleton sequence is empty"));
        }
        Ok(SkeletonSequence {
            frames,
            frame_height,
            frame_width,
        })
    }

    pub fn len(&self) -> usize {
        self.frames.len()
    }

    pub fn is_empty(&self) -> bool {
        self.frames.is_empty()
    }

    /// Pixel-center coordinates of the frame middle.
    pub fn frame_center(&self) -> (f64, f64) {
        (
            (self.frame_width as f64 - 1.0) / 2.0,
            (self.frame_height as f64 - 1.0) / 2.0,
        )
    }
}

/// `p' = scale * p + translate`, shared by every frame of one video.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimilarityTransform {
    pub scale: f64,
    pub translate: [f64; 2],
}

impl SimilarityTransform {
    pub fn identity() -> Self {
        SimilarityTransform {
            scale: 1.0,
            translate: [0.0, 0.0],
        }
    }

    pub fn apply(&self, s: &Skeleton) -> Skeleton {
        s.transformed(self.scale, self.translate[0], self.translate[1])
    }
}

/// Mean distance between the right and left hip over frames that have both.
pub fn mean_hip_width(frames: &[Skeleton]) -> Option<f64> {
    let widths: Vec<f64> = frames
        .iter()
        .filter_map(|s| {
            let (r, l) = (s.joint(joint::R_HIP)?, s.joint(joint::L_HIP)?);
            Some((r.x - l.x).hypot(r.y - l.y))
        })
        .collect();
    (!widths.is_empty()).then(|| ordered_sum(&widths) / widths.len() as f64)
}

/// Time average of per-frame joint centroids (frames with no joints skipped).
pub fn mean_centroid(frames: &[Skeleton]) -> Option<(f64, f64)> {
    let cs: Vec<(f64, f64)> = frames.iter().filter_map(Skeleton::centroid).collect();
    if cs.is_empty() {
        return None;
    }
    let n = cs.len() as f64;
    let xs: Vec<f64> = cs.iter().map(|c| c.0).collect();
    let ys: Vec<f64> = cs.iter().map(|c| c.1).collect();
    Some((ordered_sum(&xs) / n, ordered_sum(&ys) / n))
}

/// Scales the sequence so its mean hip width equals `target_hip_width`, then
/// translates it so the time-averaged joint centroid lands on `target_center`.
pub fn align_sequence(
    seq: &SkeletonSequence,
    target_center: (f64, f64),
    target_hip_width: f64,
) -> Result<(SkeletonSequence, SimilarityTransform)> {
    if !(target_hip_width > 0.0 && target_hip_width.is_finite()) {
        return Err(Error::structural(format!(
            "target hip width must be positive, got {target_hip_width}"
        )));
    }
    if seq.is_empty() {
        return Err(Error::structural("skeleton sequence is empty"));
    }
    let hip = mean_hip_width(&seq.frames).ok_or(Error::UnalignableSequence)?;
    if !(hip > 0.0) {
        return Err(Error::UnalignableSequence);
    }
    // both hips present implies at least one joint, so a centroid exists
    let (cx, cy) = mean_centroid(&seq.frames).ok_or(Error::UnalignableSequence)?;
    let scale = target_hip_width / hip;
    let transform = SimilarityTransform {
        scale,
        translate: [target_center.0 - scale * cx, target_center.1 - scale * cy],
    };
    let frames = seq.frames.iter().map(|s| transform.apply(s)).collect();
    Ok((
        SkeletonSequence {
            frames,
            frame_height: seq.frame_height,
            frame_width: seq.frame_width,
        },
        transform,
    ))
}

/// Per-channel statistics over all pixels of all frames.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChannelStats {
    pub mean: Vec<f64>,
    /// Population standard deviation; 0 for degenerate channels.
    pub std: Vec<f64>,
}

pub fn standardize_channels(
    volumes: &[ConfidenceVolume],
) -> Result<(Vec<ConfidenceVolume>, ChannelStats)> {
    standardize_channels_with(volumes, Execution::default())
}

/// Two-pass mean/variance per channel, then `(x - mean) / std`.
pub fn standardize_channels_with(
    volumes: &[ConfidenceVolume],
    exec: Execution,
) -> Result<(Vec<ConfidenceVolume>, ChannelStats)> {
    let first = volumes
        .first()
        .ok_or_else(|| Error::structural("cannot standardize an empty sequence"))?;
    let dims = first.dims();
    if let Some(v) = volumes.iter().find(|v| v.dims() != dims) {
        return Err(Error::structural(format!(
            "volume shape {:?} differs from {:?}",
            v.dims(),
            dims
        )));
    }
    let (joints, h, w) = dims;
    let count = (volumes.len() * h * w) as f64;

    let stats: Vec<(f64, f64)> = exec.map_range(joints, |j| {
        let sums: Vec<f64> = volumes
            .iter()
            .map(|v| v.channel(j).iter().map(|&x| x as f64).sum())
            .collect();
        let mean = ordered_sum(&sums) / count;
        let sq: Vec<f64> = volumes
            .iter()
            .map(|v| {
                v.channel(j)
                    .iter()
                    .map(|&x| {
                        let d = x as f64 - mean;
                        d * d
                    })
                    .sum()
            })
            .collect();
        let std = (ordered_sum(&sq) / count).sqrt();
        (mean, if std < STD_EPSILON { 0.0 } else { std })
    });
    let stats = ChannelStats {
        mean: stats.iter().map(|s| s.0).collect(),
        std: stats.iter().map(|s| s.1).collect(),
    };

    let out = exec.map_range(volumes.len(), |t| {
        let mut data = volumes[t].data().to_vec();
        for (j, map) in data.chunks_exact_mut(h * w).enumerate() {
            let (mean, std) = (stats.mean[j], stats.std[j]);
            for x in map {
                *x = if std == 0.0 {
                    0.0
                } else {
                    ((*x as f64 - mean) / std) as f32
                };
            }
        }
        data
    });
    let out = out
        .into_iter()
        .map(|d| ConfidenceVolume::new(joints, h, w, d))
        .collect::<Result<Vec<_>>>()?;
    Ok((out, stats))
}
