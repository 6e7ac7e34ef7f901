use crate::error::{Error, Result};
use crate::pose::ConfidenceVolume;

/// Number of consecutive poses fed to the generator.
pub const DEFAULT_WINDOW: usize = 2;

/// `N` consecutive volumes packed frame-major into `J·N` channels.
#[derive(Debug, Clone, PartialEq)]
pub struct PoseWindow {
    joints: usize,
    poses: usize,
    height: usize,
    width: usize,
    packed: Vec<f32>,
}

impl PoseWindow {
    pub fn channels(&self) -> usize {
        self.joints * self.poses
    }

    pub fn poses(&self) -> usize {
        self.poses
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn packed(&self) -> &[f32] {
        &self.packed
    }

    /// Channel `c` of the packed tensor.
    pub fn channel(&self, c: usize) -> &[f32] {
        let n = self.height * self.width;
        &self.packed[c * n..(c + 1) * n]
    }

    pub fn unpack(&self) -> Vec<ConfidenceVolume> {
        self.packed
            .chunks_exact(self.joints * self.height * self.width)
            .map(|d| {
                ConfidenceVolume::new(self.joints, self.height, self.width, d.to_vec())
                    .expect("window dimensions are validated at packing")
            })
            .collect()
    }
}

pub fn pack_pose_window(poses: &[ConfidenceVolume]) -> Result<PoseWindow> {
    let first = poses
        .first()
        .ok_or_else(|| Error::structural("pose window needs at least one volume"))?;
    let (joints, height, width) = first.dims();
    let mut packed = Vec::with_capacity(poses.len() * first.data().len());
    for p in poses {
        if p.dims() != first.dims() {
            return Err(Error::structural(format!(
                "volume shape {:?} differs from {:?}",
                p.dims(),
                first.dims()
            )));
        }
        packed.extend_from_slice(p.data());
    }
    Ok(PoseWindow {
        joints,
        poses: poses.len(),
        height,
        width,
        packed,
    })
}
