//! Scalar aggregation of the generator's loss terms.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LossWeights {
    pub lambda_vgg: f64,
    pub lambda_s: f64,
    pub lambda_tc: f64,
}

impl Default for LossWeights {
    fn default() -> Self {
        LossWeights {
            lambda_vgg: 10.0,
            lambda_s: 0.1,
            lambda_tc: 10.0,
        }
    }
}

/// Externally computed values of the individual loss terms.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct LossComponents {
    pub gan_p: f64,
    pub vgg: f64,
    pub gan_s: f64,
    pub tc: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LossTotals {
    /// Paired-branch reconstruction loss.
    pub rec: f64,
    pub total: f64,
}

/// `rec = gan_p + λ_vgg·vgg`, `total = rec + λ_s·(gan_s + λ_tc·tc)`.
pub fn aggregate_losses(c: &LossComponents, w: &LossWeights) -> Result<LossTotals> {
    let comps = [c.gan_p, c.vgg, c.gan_s, c.tc];
    if comps.iter().any(|v| !v.is_finite()) {
        return Err(Error::structural("loss components must be finite"));
    }
    let weights = [w.lambda_vgg, w.lambda_s, w.lambda_tc];
    if weights.iter().any(|v| !(v.is_finite() && *v >= 0.0)) {
        return Err(Error::structural("loss weights must be finite and non-negative"));
    }
    let rec = c.gan_p + w.lambda_vgg * c.vgg;
    let total = rec + w.lambda_s * (c.gan_s + w.lambda_tc * c.tc);
    Ok(LossTotals { rec, total })
}
