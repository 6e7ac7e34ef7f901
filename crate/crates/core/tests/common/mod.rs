//! Independent reference implementations and synthetic pose builders shared by
//! the integration tests. Nothing here calls the library's numeric routines.

#![allow(dead_code)]

use poseclone_core::pose::joint;
use poseclone_core::temporal::{FlowField, Frame};
use poseclone_core::{Joint, PoseDescriptor, Skeleton, LIMB_COUNT};
use rand::Rng;

/// Mean of per-limb Euclidean distances over limbs valid on both sides.
pub fn oracle_pose_distance(a: &PoseDescriptor, b: &PoseDescriptor) -> Option<f64> {
    let mut terms = Vec::new();
    for l in 0..LIMB_COUNT {
        if let (Some(p), Some(q)) = (a.displacements[l], b.displacements[l]) {
            terms.push((p[0] - q[0]).hypot(p[1] - q[1]));
        }
    }
    if terms.is_empty() {
        None
    } else {
        Some(terms.iter().sum::<f64>() / terms.len() as f64)
    }
}

/// Exhaustive per-limb minimum over every frame; returns the mean distance
/// and each limb's (distance, frame) with the first minimal frame winning.
pub fn oracle_pose_to_sequence(
    p: &PoseDescriptor,
    v: &[PoseDescriptor],
) -> (Option<f64>, [Option<(f64, usize)>; LIMB_COUNT]) {
    let mut best: [Option<(f64, usize)>; LIMB_COUNT] = [None; LIMB_COUNT];
    for l in 0..LIMB_COUNT {
        let Some(q) = p.displacements[l] else { continue };
        for (j, frame) in v.iter().enumerate() {
            let Some(r) = frame.displacements[l] else { continue };
            let d = (q[0] - r[0]).hypot(q[1] - r[1]);
            match best[l] {
                Some((bd, _)) if bd <= d => {}
                _ => best[l] = Some((d, j)),
            }
        }
    }
    let found: Vec<f64> = best.iter().flatten().map(|b| b.0).collect();
    let mean = (!found.is_empty()).then(|| found.iter().sum::<f64>() / found.len() as f64);
    (mean, best)
}

/// Per-pixel bilinear backward warp written out with explicit corner weights.
pub fn oracle_warp(img: &Frame, flow: &FlowField) -> Vec<f64> {
    let (h, w) = (img.height(), img.width());
    let mut out = vec![0.0; h * w * 3];
    for y in 0..h {
        for x in 0..w {
            let (du, dv) = flow.at(x, y);
            let sx = (x as f64 + du as f64).max(0.0).min((w - 1) as f64);
            let sy = (y as f64 + dv as f64).max(0.0).min((h - 1) as f64);
            let xl = sx.floor();
            let yt = sy.floor();
            let ax = sx - xl;
            let ay = sy - yt;
            let (xl, yt) = (xl as usize, yt as usize);
            let xr = if xl + 1 < w { xl + 1 } else { xl };
            let yb = if yt + 1 < h { yt + 1 } else { yt };
            for c in 0..3 {
                let v = (1.0 - ax) * (1.0 - ay) * img.get(xl, yt, c)
                    + ax * (1.0 - ay) * img.get(xr, yt, c)
                    + (1.0 - ax) * ay * img.get(xl, yb, c)
                    + ax * ay * img.get(xr, yb, c);
                out[(y * w + x) * 3 + c] = v;
            }
        }
    }
    out
}

/// Point-to-segment distance by case analysis on the projection.
pub fn oracle_segment_distance(p: [f64; 2], a: [f64; 2], b: [f64; 2]) -> f64 {
    let dist = |u: [f64; 2], v: [f64; 2]| ((u[0] - v[0]).powi(2) + (u[1] - v[1]).powi(2)).sqrt();
    let ab = [b[0] - a[0], b[1] - a[1]];
    let ap = [p[0] - a[0], p[1] - a[1]];
    let bp = [p[0] - b[0], p[1] - b[1]];
    if ab == [0.0, 0.0] || ab[0] * ap[0] + ab[1] * ap[1] <= 0.0 {
        return dist(p, a);
    }
    if ab[0] * bp[0] + ab[1] * bp[1] >= 0.0 {
        return dist(p, b);
    }
    (ab[0] * ap[1] - ab[1] * ap[0]).abs() / dist(a, b)
}

/// Naive triple-loop mean squared error.
pub fn oracle_mse(a: &[Frame], b: &[Frame]) -> f64 {
    let mut total = 0.0;
    let mut n = 0usize;
    for (fa, fb) in a.iter().zip(b) {
        for y in 0..fa.height() {
            for x in 0..fa.width() {
                for c in 0..3 {
                    let d = fa.get(x, y, c) - fb.get(x, y, c);
                    total += d * d;
                    n += 1;
                }
            }
        }
    }
    total / n as f64
}

pub fn random_descriptor<R: Rng>(rng: &mut R, range: f64) -> PoseDescriptor {
    PoseDescriptor::new(std::array::from_fn(|_| {
        Some([rng.gen_range(-range..range), rng.gen_range(-range..range)])
    }))
}

/// Random descriptor where each limb is invalid with probability `p_invalid`.
pub fn random_sparse_descriptor<R: Rng>(rng: &mut R, range: f64, p_invalid: f64) -> PoseDescriptor {
    PoseDescriptor::new(std::array::from_fn(|_| {
        if rng.gen_bool(p_invalid) {
            None
        } else {
            Some([rng.gen_range(-range..range), rng.gen_range(-range..range)])
        }
    }))
}

pub fn random_frame<R: Rng>(rng: &mut R, h: usize, w: usize) -> Frame {
    Frame::new(h, w, (0..h * w * 3).map(|_| rng.gen_range(0.0..255.0)).collect()).unwrap()
}

pub fn random_flow<R: Rng>(rng: &mut R, h: usize, w: usize, max: f32) -> FlowField {
    FlowField::new(h, w, (0..h * w * 2).map(|_| rng.gen_range(-max..max)).collect()).unwrap()
}

fn at(x: f64, y: f64) -> Option<Joint> {
    Some(Joint::new(x, y, 1.0))
}

/// Upright body with `limb` px limbs centred on `(cx, cy)`. Arms hang at
/// `arm_angle_deg` from straight down (90 = horizontal, pointing outwards).
pub fn synthetic_body(cx: f64, cy: f64, limb: f64, arm_angle_deg: f64) -> Skeleton {
    let mut s = Skeleton::empty();
    let neck = (cx, cy - limb);
    s.set_joint(joint::NOSE, at(neck.0, neck.1 - 0.5 * limb));
    s.set_joint(joint::NECK, at(neck.0, neck.1));
    let a = arm_angle_deg.to_radians();
    for (side, sh, el, wr) in [
        (-1.0, joint::R_SHOULDER, joint::R_ELBOW, joint::R_WRIST),
        (1.0, joint::L_SHOULDER, joint::L_ELBOW, joint::L_WRIST),
    ] {
        let shoulder = (neck.0 + side * 0.5 * limb, neck.1);
        let step = (side * limb * a.sin(), limb * a.cos());
        s.set_joint(sh, at(shoulder.0, shoulder.1));
        s.set_joint(el, at(shoulder.0 + step.0, shoulder.1 + step.1));
        s.set_joint(wr, at(shoulder.0 + 2.0 * step.0, shoulder.1 + 2.0 * step.1));
    }
    for (side, hip, knee, ankle) in [
        (-1.0, joint::R_HIP, joint::R_KNEE, joint::R_ANKLE),
        (1.0, joint::L_HIP, joint::L_KNEE, joint::L_ANKLE),
    ] {
        let hx = cx + side * 0.25 * limb;
        s.set_joint(hip, at(hx, cy));
        s.set_joint(knee, at(hx, cy + limb));
        s.set_joint(ankle, at(hx, cy + 2.0 * limb));
    }
    s
}

/// Rotates joint `tip` about joint `pivot` by `deg` degrees.
pub fn rotate_joint(s: &Skeleton, pivot: usize, tip: usize, deg: f64) -> Skeleton {
    let (p, t) = (s.joint(pivot).unwrap(), s.joint(tip).unwrap());
    let (c, sn) = (deg.to_radians().cos(), deg.to_radians().sin());
    let (dx, dy) = (t.x - p.x, t.y - p.y);
    let mut out = *s;
    out.set_joint(
        tip,
        Some(Joint::new(p.x + c * dx - sn * dy, p.y + sn * dx + c * dy, t.confidence)),
    );
    out
}
