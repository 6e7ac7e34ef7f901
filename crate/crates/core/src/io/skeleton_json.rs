//! Skeleton sequences as JSON:
//! `{"width": W, "height": H, "frames": [[[x, y, confidence] | null; 18], ...]}`.

use std::io::{Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::write_atomic;
use crate::error::{Error, Result};
use crate::normalize::SkeletonSequence;
use crate::pose::{Joint, Skeleton, JOINT_COUNT};

const FORMAT: &str = "skeleton JSON";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SkeletonFile {
    pub width: usize,
    pub height: usize,
    pub frames: Vec<Vec<Option<[f64; 3]>>>,
}

impl SkeletonFile {
    pub fn from_sequence(seq: &SkeletonSequence) -> Self {
        SkeletonFile {
            width: seq.frame_width,
            height: seq.frame_height,
            frames: seq
                .frames
                .iter()
                .map(|s| {
                    s.joints()
                        .iter()
                        .map(|j| j.map(|j| [j.x, j.y, j.confidence]))
                        .collect()
                })
                .collect(),
        }
    }

    pub fn to_skeletons(&self) -> Result<Vec<Skeleton>> {
        self.frames
            .iter()
            .enumerate()
            .map(|(i, f)| {
                if f.len() != JOINT_COUNT {
                    return Err(Error::format(
                        FORMAT,
                        format!("frame {i} has {} joints, expected {JOINT_COUNT}", f.len()),
                    ));
                }
                let mut joints = [None; JOINT_COUNT];
                for (slot, j) in joints.iter_mut().zip(f) {
                    *slot = j.map(|[x, y, c]| Joint::new(x, y, c));
                }
                Skeleton::new(joints)
            })
            .collect()
    }

    /// Fails on an empty frame list.
    pub fn to_sequence(&self) -> Result<SkeletonSequence> {
        SkeletonSequence::new(self.to_skeletons()?, self.height, self.width)
    }
}

pub fn read_skeleton_file<R: Read>(r: R) -> Result<SkeletonFile> {
    let file: SkeletonFile = serde_json::from_reader(r)?;
    file.to_skeletons()?;
    Ok(file)
}

pub fn write_skeleton_file<W: Write>(mut w: W, file: &SkeletonFile) -> Result<()> {
    serde_json::to_writer(&mut w, file)?;
    w.write_all(b"\n")?;
    Ok(())
}

pub fn load_skeletons(path: &Path) -> Result<SkeletonSequence> {
    read_skeleton_file(super::open(path)?)?.to_sequence()
}

pub fn save_skeletons(path: &Path, seq: &SkeletonSequence) -> Result<()> {
    let file = SkeletonFile::from_sequence(seq);
    write_atomic(path, |w| write_skeleton_file(w, &file))
}
