//! Frame-level machinery: backward warping, limb weight maps, the weighted L1
//! temporal-coherence loss, RGB MSE, the self-reenactment split and pose
//! window packing.

mod loss;
mod split;
mod warp;
mod weight;
mod window;

pub use loss::{mse, mse_with, tc_loss, tc_loss_with, TcNormalization};
pub use split::{reenact_split, ReenactSplit, DEFAULT_TRAIN_FRACTION};
pub use warp::{sample_bilinear, warp, warp_with};
pub use weight::{
    limb_weight_map, limb_weight_map_with, point_segment_distance, WeightMap,
    DEFAULT_SIGMA_ALPHA,
};
pub use window::{pack_pose_window, PoseWindow, DEFAULT_WINDOW};

use crate::error::{Error, Result};

/// RGB frame with channel-interleaved rows (`data[(y * width + x) * 3 + c]`).
///
/// Values are nominally 8-bit intensities in `[0, 255]`; arithmetic on frames
/// (differences, linear combinations) may leave that range.
#[derive(Debug, Clone, PartialEq)]
pub struct Frame {
    height: usize,
    width: usize,
    data: Vec<f64>,
}

impl Frame {
    pub const CHANNELS: usize = 3;

    pub fn new(height: usize, width: usize, data: Vec<f64>) -> Result<Self> {
        if height == 0 || width == 0 {
            return Err(Error::structural("frame dimensions must be positive"));
        }
        if data.len() != Self::CHANNELS * height * width {
            return Err(Error::structural(format!(
                "frame data length {} does not match 3*H*W = {}",
                data.len(),
                Self::CHANNELS * height * width
            )));
        }
        if data.iter().any(|v| !v.is_finite()) {
            return Err(Error::structural("frame values must be finite"));
        }
        Ok(Frame {
            height,
            width,
            data,
        })
    }

    pub fn filled(height: usize, width: usize, value: f64) -> Result<Self> {
        Frame::new(height, width, vec![value; Self::CHANNELS * height * width])
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn get(&self, x: usize, y: usize, c: usize) -> f64 {
        self.data[(y * self.width + x) * Self::CHANNELS + c]
    }

    pub(crate) fn row(&self, y: usize) -> &[f64] {
        let n = self.width * Self::CHANNELS;
        &self.data[y * n..(y + 1) * n]
    }
}

/// Dense per-pixel displacement `(du, dv)`, interleaved per pixel.
#[derive(Debug, Clone, PartialEq)]
pub struct FlowField {
    height: usize,
    width: usize,
    data: Vec<f32>,
}

impl FlowField {
    pub fn new(height: usize, width: usize, data: Vec<f32>) -> Result<Self> {
        if height == 0 || width == 0 {
            return Err(Error::structural("flow dimensions must be positive"));
        }
        if data.len() != 2 * height * width {
            return Err(Error::structural(format!(
                "flow data length {} does not match 2*H*W = {}",
                data.len(),
                2 * height * width
            )));
        }
        if data.iter().any(|v| !v.is_finite()) {
            return Err(Error::structural("flow displacements must be finite"));
        }
        Ok(FlowField {
            height,
            width,
            data,
        })
    }

    pub fn constant(height: usize, width: usize, du: f32, dv: f32) -> Result<Self> {
        let data = std::iter::repeat_n([du, dv], height * width)
            .flatten()
            .collect();
        FlowField::new(height, width, data)
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn data(&self) -> &[f32] {
        &self.data
    }

    pub fn at(&self, x: usize, y: usize) -> (f32, f32) {
        let i = 2 * (y * self.width + x);
        (self.data[i], self.data[i + 1])
    }

    /// Flips the sign of every displacement (forward ↔ backward convention).
    pub fn negated(&self) -> FlowField {
        FlowField {
            height: self.height,
            width: self.width,
            data: self.data.iter().map(|v| -v).collect(),
        }
    }
}

pub(crate) fn check_same_size(
    what: &str,
    (h1, w1): (usize, usize),
    (h2, w2): (usize, usize),
) -> Result<()> {
    if (h1, w1) != (h2, w2) {
        return Err(Error::structural(format!(
            "{what}: size {h1}x{w1} does not match {h2}x{w2}"
        )));
    }
    Ok(())
}
