use super::warp::warp_with;
use super::{check_same_size, FlowField, Frame, WeightMap};
use crate::error::{Error, Result};
use crate::exec::{ordered_sum, Execution};

/// How the weighted L1 sum of the temporal-coherence loss is normalized.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TcNormalization {
    /// Divide by pixel count times channel count.
    #[default]
    PixelMean,
    /// Divide by channel count times the sum of the weights (0 if the weights vanish).
    WeightSum,
    /// Raw sum.
    Sum,
}

/// Weighted L1 difference between `gen_i` warped by `flow` and `gen_next`,
/// averaged over pixels and channels.
pub fn tc_loss(gen_i: &Frame, gen_next: &Frame, flow: &FlowField, alpha: &WeightMap) -> Result<f64> {
    tc_loss_with(
        gen_i,
        gen_next,
        flow,
        alpha,
        TcNormalization::default(),
        Execution::default(),
    )
}

pub fn tc_loss_with(
    gen_i: &Frame,
    gen_next: &Frame,
    flow: &FlowField,
    alpha: &WeightMap,
    norm: TcNormalization,
    exec: Execution,
) -> Result<f64> {
    let size = (gen_i.height(), gen_i.width());
    check_same_size("tc_loss next frame", size, (gen_next.height(), gen_next.width()))?;
    check_same_size("tc_loss weight map", size, (alpha.height(), alpha.width()))?;
    let warped = warp_with(gen_i, flow, exec)?;
    let (h, w) = size;
    let rows = exec.map_range(h, |y| {
        let a = warped.row(y);
        let b = gen_next.row(y);
        let wrow = &alpha.data()[y * w..(y + 1) * w];
        let mut s = 0.0;
        for x in 0..w {
            let d = (a[3 * x] - b[3 * x]).abs()
                + (a[3 * x + 1] - b[3 * x + 1]).abs()
                + (a[3 * x + 2] - b[3 * x + 2]).abs();
            s += wrow[x] * d;
        }
        s
    });
    let sum = ordered_sum(&rows);
    Ok(match norm {
        TcNormalization::Sum => sum,
        TcNormalization::PixelMean => sum / (Frame::CHANNELS * h * w) as f64,
        TcNormalization::WeightSum => {
            let wsum: f64 = alpha.data().iter().sum();
            if wsum > 0.0 {
                sum / (Frame::CHANNELS as f64 * wsum)
            } else {
                0.0
            }
        }
    })
}

/// Mean squared RGB difference over all frames, pixels and channels.
pub fn mse(a: &[Frame], b: &[Frame]) -> Result<f64> {
    mse_with(a, b, Execution::default())
}

pub fn mse_with(a: &[Frame], b: &[Frame], exec: Execution) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::structural(format!(
            "sequence lengths differ: {} vs {}",
            a.len(),
            b.len()
        )));
    }
    if a.is_empty() {
        return Err(Error::structural("cannot compute MSE of empty sequences"));
    }
    for (fa, fb) in a.iter().zip(b) {
        check_same_size("mse", (fa.height(), fa.width()), (fb.height(), fb.width()))?;
    }
    let sums = exec.map_range(a.len(), |t| {
        a[t].data()
            .iter()
            .zip(b[t].data())
            .map(|(x, y)| (x - y) * (x - y))
            .sum::<f64>()
    });
    let count: usize = a.iter().map(|f| f.data().len()).sum();
    Ok(ordered_sum(&sums) / count as f64)
}
