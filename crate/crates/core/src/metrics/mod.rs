//! Limb-descriptor distances: pose to pose, per limb with a threshold, and
//! pose to sequence (per-limb nearest neighbour over a reference sequence).

mod coverage;
mod loss;

pub use coverage::{coverage_report, coverage_report_with, CoverageReport, CoverageSummary,
    FrameCoverage, LimbCoverage};
pub use loss::{aggregate_losses, LossComponents, LossTotals, LossWeights};

use crate::error::{Error, Result};
use crate::pose::{PoseDescriptor, LIMB_COUNT};

/// Per-limb distance above which a limb is flagged, in descriptor units.
pub const DEFAULT_GAMMA: f64 = 8.0;

#[inline]
pub(crate) fn limb_distance(a: [f64; 2], b: [f64; 2]) -> f64 {
    let dx = a[0] - b[0];
    let dy = a[1] - b[1];
    (dx * dx + dy * dy).sqrt()
}

/// Non-empty ordered list of descriptors.
#[derive(Debug, Clone, PartialEq)]
pub struct DescriptorSequence {
    frames: Vec<PoseDescriptor>,
}

impl DescriptorSequence {
    pub fn new(frames: Vec<PoseDescriptor>) -> Result<Self> {
        if frames.is_empty() {
            return Err(Error::structural("descriptor sequence is empty"));
        }
        Ok(DescriptorSequence { frames })
    }

    pub fn frames(&self) -> &[PoseDescriptor] {
        &self.frames
    }

    pub fn len(&self) -> usize {
        self.frames.len()
    }

    pub fn is_empty(&self) -> bool {
        self.frames.is_empty()
    }

    /// Appends frames; never increases any pose-to-sequence distance.
    pub fn extend(&mut self, more: impl IntoIterator<Item = PoseDescriptor>) {
        self.frames.extend(more);
    }
}

/// Mean limb distance over limbs valid in both descriptors.
pub fn pose_distance(a: &PoseDescriptor, b: &PoseDescriptor) -> Result<f64> {
    let mut sum = 0.0;
    let mut n = 0usize;
    for (pa, pb) in a.displacements.iter().zip(&b.displacements) {
        if let (Some(pa), Some(pb)) = (pa, pb) {
            sum += limb_distance(*pa, *pb);
            n += 1;
        }
    }
    if n == 0 {
        return Err(Error::IncomparablePoses);
    }
    Ok(sum / n as f64)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LimbDistance {
    /// `None` when the limb is invalid on either side.
    pub distance: Option<f64>,
    pub flagged: bool,
}

/// Distance of every limb, flagged when strictly above `gamma`.
pub fn per_limb_distances(
    a: &PoseDescriptor,
    b: &PoseDescriptor,
    gamma: f64,
) -> [LimbDistance; LIMB_COUNT] {
    std::array::from_fn(|l| match (a.displacements[l], b.displacements[l]) {
        (Some(pa), Some(pb)) => {
            let d = limb_distance(pa, pb);
            LimbDistance {
                distance: Some(d),
                flagged: d > gamma,
            }
        }
        _ => LimbDistance {
            distance: None,
            flagged: false,
        },
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LimbMatch {
    pub distance: f64,
    pub nn_frame: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SequenceMatch {
    /// Mean of the matched limbs' nearest-neighbour distances.
    pub distance: f64,
    pub per_limb: [Option<LimbMatch>; LIMB_COUNT],
    /// Limbs valid in the query but in no reference frame; excluded from the mean.
    pub unmatched_limbs: Vec<usize>,
}

/// Reference limbs laid out per limb for a flat nearest-neighbour scan.
#[derive(Debug, Clone)]
pub(crate) struct LimbTable {
    limbs: Vec<LimbColumn>,
}

#[derive(Debug, Clone, Default)]
struct LimbColumn {
    frame: Vec<usize>,
    dx: Vec<f64>,
    dy: Vec<f64>,
}

impl LimbTable {
    pub(crate) fn build(v: &DescriptorSequence) -> Self {
        let mut limbs = vec![LimbColumn::default(); LIMB_COUNT];
        for (i, p) in v.frames.iter().enumerate() {
            for (col, d) in limbs.iter_mut().zip(&p.displacements) {
                if let Some([dx, dy]) = *d {
                    col.frame.push(i);
                    col.dx.push(dx);
                    col.dy.push(dy);
                }
            }
        }
        LimbTable { limbs }
    }

    /// Nearest reference entry for limb `l`; the earliest frame wins ties.
    #[inline]
    fn nearest(&self, l: usize, q: [f64; 2]) -> Option<LimbMatch> {
        let col = &self.limbs[l];
        let mut best = f64::INFINITY;
        let mut best_k = usize::MAX;
        for (k, (&dx, &dy)) in col.dx.iter().zip(&col.dy).enumerate() {
            let d = limb_distance(q, [dx, dy]);
            if d < best {
                best = d;
                best_k = k;
            }
        }
        (best_k != usize::MAX).then(|| LimbMatch {
            distance: best,
            nn_frame: col.frame[best_k],
        })
    }

    pub(crate) fn match_pose(&self, p: &PoseDescriptor) -> Result<SequenceMatch> {
        let mut per_limb = [None; LIMB_COUNT];
        let mut unmatched_limbs = Vec::new();
        let mut sum = 0.0;
        let mut n = 0usize;
        for (l, d) in p.displacements.iter().enumerate() {
            let Some(q) = *d else { continue };
            match self.nearest(l, q) {
                Some(m) => {
                    sum += m.distance;
                    n += 1;
                    per_limb[l] = Some(m);
                }
                None => unmatched_limbs.push(l),
            }
        }
        if n == 0 {
            return Err(Error::IncomparablePoses);
        }
        Ok(SequenceMatch {
            distance: sum / n as f64,
            per_limb,
            unmatched_limbs,
        })
    }
}

/// For each valid limb of `p`, the closest same-limb displacement anywhere in
/// `v`; the result is the mean of those minima.
pub fn pose_to_sequence(p: &PoseDescriptor, v: &DescriptorSequence) -> Result<SequenceMatch> {
    LimbTable::build(v).match_pose(p)
}
