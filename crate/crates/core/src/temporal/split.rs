use std::ops::Range;

use serde::ser::{Serialize, SerializeStruct, Serializer};

use crate::error::{Error, Result};

pub const DEFAULT_TRAIN_FRACTION: f64 = 2.0 / 3.0;

/// Contiguous train/test partition of frame indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReenactSplit {
    pub train: Range<usize>,
    pub test: Range<usize>,
}

impl Serialize for ReenactSplit {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("ReenactSplit", 2)?;
        st.serialize_field("train", &[self.train.start, self.train.end])?;
        st.serialize_field("test", &[self.test.start, self.test.end])?;
        st.end()
    }
}

/// First `floor(length * train_fraction)` frames train, the rest drive and
/// serve as ground truth.
pub fn reenact_split(length: usize, train_fraction: f64) -> Result<ReenactSplit> {
    if length < 3 {
        return Err(Error::structural(format!(
            "sequence of {length} frames is too short to split"
        )));
    }
    if !(train_fraction > 0.0 && train_fraction < 1.0) {
        return Err(Error::structural(format!(
            "train fraction must lie in (0, 1), got {train_fraction}"
        )));
    }
    let exact = length as f64 * train_fraction;
    // absorb representation error, e.g. 3000 * (2/3) landing just below 2000
    let k = ((exact + exact.abs() * 1e-12).floor() as usize).min(length);
    Ok(ReenactSplit {
        train: 0..k,
        test: k..length,
    })
}
