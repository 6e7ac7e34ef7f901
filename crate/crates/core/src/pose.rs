//! Pose data structures: confidence volumes, 18-joint skeletons, limb sets and
//! the translation-invariant limb descriptor.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::Execution;

pub const JOINT_COUNT: usize = 18;
pub const LIMB_COUNT: usize = 12;

/// Default rendering sigma at a 256-pixel frame height.
pub const DEFAULT_RENDER_SIGMA: f64 = 6.0;
pub const DEFAULT_MIN_CONFIDENCE: f64 = 0.05;
pub const REFERENCE_RESOLUTION: f64 = 256.0;

/// Joint names in channel order.
pub const JOINT_NAMES: [&str; JOINT_COUNT] = [
    "nose",
    "neck",
    "right_shoulder",
    "right_elbow",
    "right_wrist",
    "left_shoulder",
    "left_elbow",
    "left_wrist",
    "right_hip",
    "right_knee",
    "right_ankle",
    "left_hip",
    "left_knee",
    "left_ankle",
    "right_eye",
    "left_eye",
    "right_ear",
    "left_ear",
];

pub mod joint {
    pub const NOSE: usize = 0;
    pub const NECK: usize = 1;
    pub const R_SHOULDER: usize = 2;
    pub const R_ELBOW: usize = 3;
    pub const R_WRIST: usize = 4;
    pub const L_SHOULDER: usize = 5;
    pub const L_ELBOW: usize = 6;
    pub const L_WRIST: usize = 7;
    pub const R_HIP: usize = 8;
    pub const R_KNEE: usize = 9;
    pub const R_ANKLE: usize = 10;
    pub const L_HIP: usize = 11;
    pub const L_KNEE: usize = 12;
    pub const L_ANKLE: usize = 13;
    pub const R_EYE: usize = 14;
    pub const L_EYE: usize = 15;
    pub const R_EAR: usize = 16;
    pub const L_EAR: usize = 17;
}

/// Scales a parameter given at 256 px to a frame of `height` px.
pub fn scale_to_resolution(value_at_256: f64, height: usize) -> f64 {
    value_at_256 * height as f64 / REFERENCE_RESOLUTION
}

/// Image-plane joint estimate. `x` is the column, `y` the row; pixel centers
/// sit at integer coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Joint {
    pub x: f64,
    pub y: f64,
    pub confidence: f64,
}

impl Joint {
    pub fn new(x: f64, y: f64, confidence: f64) -> Self {
        Joint { x, y, confidence }
    }
}

/// One person's 2D pose; `None` marks an absent joint.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Skeleton {
    joints: [Option<Joint>; JOINT_COUNT],
}

impl Skeleton {
    pub fn new(joints: [Option<Joint>; JOINT_COUNT]) -> Result<Self> {
        for (i, j) in joints.iter().enumerate() {
            if let Some(j) = j {
                if !(j.x.is_finite() && j.y.is_finite()) {
                    return Err(Error::structural(format!(
                        "joint {i} has non-finite coordinates"
                    )));
                }
            }
        }
        Ok(Skeleton { joints })
    }

    /// A skeleton with every joint absent.
    pub fn empty() -> Self {
        Skeleton::default()
    }

    pub fn joints(&self) -> &[Option<Joint>; JOINT_COUNT] {
        &self.joints
    }

    pub fn joint(&self, index: usize) -> Option<Joint> {
        self.joints.get(index).copied().flatten()
    }

    /// Replaces one joint. Panics on an out-of-range index or non-finite coordinates.
    pub fn set_joint(&mut self, index: usize, joint: Option<Joint>) {
        if let Some(j) = joint {
            assert!(j.x.is_finite() && j.y.is_finite(), "non-finite joint");
        }
        self.joints[index] = joint;
    }

    pub fn present(&self) -> impl Iterator<Item = (usize, Joint)> + '_ {
        self.joints
            .iter()
            .enumerate()
            .filter_map(|(i, j)| j.map(|j| (i, j)))
    }

    /// Applies `p' = scale * p + (tx, ty)` to every present joint.
    pub fn transformed(&self, scale: f64, tx: f64, ty: f64) -> Skeleton {
        let mut out = *self;
        for j in out.joints.iter_mut().flatten() {
            j.x = scale * j.x + tx;
            j.y = scale * j.y + ty;
        }
        out
    }

    pub fn translated(&self, tx: f64, ty: f64) -> Skeleton {
        let mut out = *self;
        for j in out.joints.iter_mut().flatten() {
            j.x += tx;
            j.y += ty;
        }
        out
    }

    /// Mean position of the present joints.
    pub fn centroid(&self) -> Option<(f64, f64)> {
        let (mut sx, mut sy, mut n) = (0.0, 0.0, 0usize);
        for (_, j) in self.present() {
            sx += j.x;
            sy += j.y;
            n += 1;
        }
        (n > 0).then(|| (sx / n as f64, sy / n as f64))
    }
}

/// Ordered set of 12 joint pairs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LimbSet {
    limbs: [(usize, usize); LIMB_COUNT],
}

impl LimbSet {
    pub fn new(limbs: [(usize, usize); LIMB_COUNT]) -> Result<Self> {
        for (i, &(a, b)) in limbs.iter().enumerate() {
            if a >= JOINT_COUNT || b >= JOINT_COUNT {
                return Err(Error::structural(format!(
                    "limb {i} references joint outside [0, {JOINT_COUNT})"
                )));
            }
            if limbs[..i].contains(&(a, b)) {
                return Err(Error::structural(format!("limb {i} duplicates ({a}, {b})")));
            }
        }
        Ok(LimbSet { limbs })
    }

    /// Builds a set from a slice, which must hold exactly 12 pairs.
    pub fn from_slice(limbs: &[(usize, usize)]) -> Result<Self> {
        let arr: [(usize, usize); LIMB_COUNT] = limbs.try_into().map_err(|_| {
            Error::structural(format!("expected {LIMB_COUNT} limbs, got {}", limbs.len()))
        })?;
        LimbSet::new(arr)
    }

    pub fn limbs(&self) -> &[(usize, usize); LIMB_COUNT] {
        &self.limbs
    }
}

impl Default for LimbSet {
    /// Three limbs per arm-and-shoulder and per leg, all rooted at the neck.
    fn default() -> Self {
        use joint::*;
        LimbSet {
            limbs: [
                (NECK, R_SHOULDER),
                (R_SHOULDER, R_ELBOW),
                (R_ELBOW, R_WRIST),
                (NECK, L_SHOULDER),
                (L_SHOULDER, L_ELBOW),
                (L_ELBOW, L_WRIST),
                (NECK, R_HIP),
                (R_HIP, R_KNEE),
                (R_KNEE, R_ANKLE),
                (NECK, L_HIP),
                (L_HIP, L_KNEE),
                (L_KNEE, L_ANKLE),
            ],
        }
    }
}

/// Per-limb displacement `(x1 - x2, y1 - y2)`; `None` where an endpoint is absent.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct PoseDescriptor {
    pub displacements: [Option<[f64; 2]>; LIMB_COUNT],
}

impl PoseDescriptor {
    pub fn new(displacements: [Option<[f64; 2]>; LIMB_COUNT]) -> Self {
        PoseDescriptor { displacements }
    }

    pub fn limb(&self, l: usize) -> Option<[f64; 2]> {
        self.displacements[l]
    }

    pub fn valid_count(&self) -> usize {
        self.displacements.iter().filter(|d| d.is_some()).count()
    }
}

/// Limb descriptor of a skeleton, in `limbs` order.
pub fn descriptor(skeleton: &Skeleton, limbs: &LimbSet) -> PoseDescriptor {
    let mut out = PoseDescriptor::default();
    for (slot, &(a, b)) in out.displacements.iter_mut().zip(limbs.limbs()) {
        *slot = match (skeleton.joint(a), skeleton.joint(b)) {
            (Some(p), Some(q)) => Some([p.x - q.x, p.y - q.y]),
            _ => None,
        };
    }
    out
}

/// Stack of per-joint confidence maps, stored channel-major then row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ConfidenceVolume {
    joints: usize,
    height: usize,
    width: usize,
    data: Vec<f32>,
}

impl ConfidenceVolume {
    pub fn new(joints: usize, height: usize, width: usize, data: Vec<f32>) -> Result<Self> {
        if joints == 0 || height == 0 || width == 0 {
            return Err(Error::structural(format!(
                "volume dimensions must be positive, got J={joints} H={height} W={width}"
            )));
        }
        let expected = joints
            .checked_mul(height)
            .and_then(|v| v.checked_mul(width))
            .ok_or_else(|| Error::structural("volume dimensions overflow"))?;
        if data.len() != expected {
            return Err(Error::structural(format!(
                "volume data length {} does not match J*H*W = {expected}",
                data.len()
            )));
        }
        Ok(ConfidenceVolume {
            joints,
            height,
            width,
            data,
        })
    }

    pub fn zeros(joints: usize, height: usize, width: usize) -> Result<Self> {
        ConfidenceVolume::new(joints, height, width, vec![0.0; joints * height * width])
    }

    pub fn joints(&self) -> usize {
        self.joints
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn dims(&self) -> (usize, usize, usize) {
        (self.joints, self.height, self.width)
    }

    pub fn data(&self) -> &[f32] {
        &self.data
    }

    pub fn into_data(self) -> Vec<f32> {
        self.data
    }

    pub fn channel(&self, j: usize) -> &[f32] {
        let n = self.height * self.width;
        &self.data[j * n..(j + 1) * n]
    }

    pub fn channel_mut(&mut self, j: usize) -> &mut [f32] {
        let n = self.height * self.width;
        &mut self.data[j * n..(j + 1) * n]
    }

    pub fn get(&self, j: usize, row: usize, col: usize) -> f32 {
        self.data[(j * self.height + row) * self.width + col]
    }
}

/// Renders one Gaussian confidence map per joint; absent joints give all-zero channels.
pub fn render_pose(
    skeleton: &Skeleton,
    height: usize,
    width: usize,
    sigma: f64,
) -> Result<ConfidenceVolume> {
    if !(sigma > 0.0 && sigma.is_finite()) {
        return Err(Error::structural(format!("sigma must be positive, got {sigma}")));
    }
    let mut volume = ConfidenceVolume::zeros(JOINT_COUNT, height, width)?;
    let inv = 1.0 / (2.0 * sigma * sigma);
    let joints = skeleton.joints;
    Execution::default().for_each_chunk_mut(&mut volume.data, height * width, |j, map| {
        let Some(joint) = joints[j] else { return };
        for (row, line) in map.chunks_exact_mut(width).enumerate() {
            let dy = row as f64 - joint.y;
            for (col, v) in line.iter_mut().enumerate() {
                let dx = col as f64 - joint.x;
                *v = (-(dx * dx + dy * dy) * inv).exp() as f32;
            }
        }
    });
    Ok(volume)
}

/// Recovers a skeleton from the per-channel argmax of an 18-channel volume.
///
/// Ties resolve to the smallest row, then the smallest column. A joint whose
/// peak is below `min_confidence` is absent.
pub fn extract_skeleton(volume: &ConfidenceVolume, min_confidence: f64) -> Result<Skeleton> {
    if volume.joints != JOINT_COUNT {
        return Err(Error::structural(format!(
            "expected {JOINT_COUNT} joint channels, got {}",
            volume.joints
        )));
    }
    let mut joints = [None; JOINT_COUNT];
    for (j, slot) in joints.iter_mut().enumerate() {
        let map = volume.channel(j);
        let mut best = 0usize;
        let mut best_val = f32::NEG_INFINITY;
        for (i, &v) in map.iter().enumerate() {
            if v > best_val {
                best_val = v;
                best = i;
            }
        }
        let conf = best_val as f64;
        if conf >= min_confidence {
            *slot = Some(Joint {
                x: (best % volume.width) as f64,
                y: (best / volume.width) as f64,
                confidence: conf,
            });
        }
    }
    Ok(Skeleton { joints })
}
