use super::{check_same_size, FlowField, Frame};
use crate::error::Result;
use crate::exec::Execution;

/// Bilinear sample of `image` at `(x, y)`, with coordinates clamped to the
/// border. Writes the three channel values into `out`.
#[inline]
pub fn sample_bilinear(image: &Frame, x: f64, y: f64, out: &mut [f64; 3]) {
    let (w, h) = (image.width, image.height);
    let x = x.clamp(0.0, (w - 1) as f64);
    let y = y.clamp(0.0, (h - 1) as f64);
    let x0 = x.floor() as usize;
    let y0 = y.floor() as usize;
    let x1 = (x0 + 1).min(w - 1);
    let y1 = (y0 + 1).min(h - 1);
    let fx = x - x0 as f64;
    let fy = y - y0 as f64;
    let d = &image.data;
    let at = |xx: usize, yy: usize, c: usize| d[(yy * w + xx) * 3 + c];
    for (c, o) in out.iter_mut().enumerate() {
        let top = at(x0, y0, c) + fx * (at(x1, y0, c) - at(x0, y0, c));
        let bottom = at(x0, y1, c) + fx * (at(x1, y1, c) - at(x0, y1, c));
        *o = top + fy * (bottom - top);
    }
}

/// Backward warp: `output(p) = image(p + flow(p))`, bilinearly interpolated.
pub fn warp(image: &Frame, flow: &FlowField) -> Result<Frame> {
    warp_with(image, flow, Execution::default())
}

pub fn warp_with(image: &Frame, flow: &FlowField, exec: Execution) -> Result<Frame> {
    check_same_size(
        "warp",
        (image.height, image.width),
        (flow.height(), flow.width()),
    )?;
    let w = image.width;
    let mut data = vec![0.0; image.data.len()];
    exec.for_each_chunk_mut(&mut data, w * 3, |y, row| {
        let mut px = [0.0; 3];
        for x in 0..w {
            let (du, dv) = flow.at(x, y);
            sample_bilinear(image, x as f64 + du as f64, y as f64 + dv as f64, &mut px);
            row[x * 3..x * 3 + 3].copy_from_slice(&px);
        }
    });
    Ok(Frame {
        height: image.height,
        width: w,
        data,
    })
}
