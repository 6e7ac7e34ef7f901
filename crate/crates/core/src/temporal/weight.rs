use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::pose::{LimbSet, Skeleton};

/// Default falloff width at a 256-pixel frame height.
pub const DEFAULT_SIGMA_ALPHA: f64 = 10.0;

/// Per-pixel weights in `[0, 1]`, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightMap {
    height: usize,
    width: usize,
    data: Vec<f64>,
}

impl WeightMap {
    pub fn new(height: usize, width: usize, data: Vec<f64>) -> Result<Self> {
        if height == 0 || width == 0 || data.len() != height * width {
            return Err(Error::structural(format!(
                "weight map of {} values cannot be {height}x{width}",
                data.len()
            )));
        }
        if data.iter().any(|v| !(0.0..=1.0).contains(v)) {
            return Err(Error::structural("weights must lie in [0, 1]"));
        }
        Ok(WeightMap {
            height,
            width,
            data,
        })
    }

    pub fn uniform(height: usize, width: usize, value: f64) -> Result<Self> {
        WeightMap::new(height, width, vec![value; height * width])
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

    pub fn get(&self, x: usize, y: usize) -> f64 {
        self.data[y * self.width + x]
    }

    pub fn mean(&self) -> f64 {
        self.data.iter().sum::<f64>() / self.data.len() as f64
    }
}

/// Euclidean distance from `p` to the segment `a`–`b` (a point if `a == b`).
pub fn point_segment_distance(p: [f64; 2], a: [f64; 2], b: [f64; 2]) -> f64 {
    let (ex, ey) = (b[0] - a[0], b[1] - a[1]);
    let (px, py) = (p[0] - a[0], p[1] - a[1]);
    let len2 = ex * ex + ey * ey;
    let t = if len2 > 0.0 {
        ((px * ex + py * ey) / len2).clamp(0.0, 1.0)
    } else {
        0.0
    };
    (px - t * ex).hypot(py - t * ey)
}

/// Gaussian falloff `exp(-d² / 2σ²)` of the distance from each pixel center to
/// the nearest valid limb segment. No valid limb gives an all-zero map.
pub fn limb_weight_map(
    skeleton: &Skeleton,
    limbs: &LimbSet,
    height: usize,
    width: usize,
    sigma_alpha: f64,
) -> Result<WeightMap> {
    limb_weight_map_with(skeleton, limbs, height, width, sigma_alpha, Execution::default())
}

pub fn limb_weight_map_with(
    skeleton: &Skeleton,
    limbs: &LimbSet,
    height: usize,
    width: usize,
    sigma_alpha: f64,
    exec: Execution,
) -> Result<WeightMap> {
    if !(sigma_alpha > 0.0 && sigma_alpha.is_finite()) {
        return Err(Error::structural(format!(
            "sigma_alpha must be positive, got {sigma_alpha}"
        )));
    }
    if height == 0 || width == 0 {
        return Err(Error::structural("weight map dimensions must be positive"));
    }
    let segments: Vec<([f64; 2], [f64; 2])> = limbs
        .limbs()
        .iter()
        .filter_map(|&(a, b)| {
            let (a, b) = (skeleton.joint(a)?, skeleton.joint(b)?);
            Some(([a.x, a.y], [b.x, b.y]))
        })
        .collect();
    let mut data = vec![0.0; height * width];
    if segments.is_empty() {
        return Ok(WeightMap { height, width, data });
    }
    let inv = 1.0 / (2.0 * sigma_alpha * sigma_alpha);
    exec.for_each_chunk_mut(&mut data, width, |y, row| {
        for (x, v) in row.iter_mut().enumerate() {
            let p = [x as f64, y as f64];
            let d = segments
                .iter()
                .map(|&(a, b)| point_segment_distance(p, a, b))
                .fold(f64::INFINITY, f64::min);
            *v = (-d * d * inv).exp();
        }
    });
    Ok(WeightMap { height, width, data })
}
