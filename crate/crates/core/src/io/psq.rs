//! PSQ1: a minimal container for sequences of confidence volumes.
//!
//! Layout (little-endian): `b"PSQ1"`, then `u32` version (1), frame count,
//! joints, height, width, then `f32` values frame-major, channel-major,
//! row-major.

use std::io::{Read, Write};
use std::path::Path;

use super::{expect_eof, read_exact_or, write_atomic};
use crate::error::{Error, Result};
use crate::pose::ConfidenceVolume;

pub const MAGIC: &[u8; 4] = b"PSQ1";
pub const VERSION: u32 = 1;
const FORMAT: &str = "PSQ1";

pub fn write_pose_sequence<W: Write>(mut w: W, volumes: &[ConfidenceVolume]) -> Result<()> {
    let first = volumes
        .first()
        .ok_or_else(|| Error::structural("cannot write an empty pose sequence"))?;
    let (j, h, wd) = first.dims();
    if volumes.iter().any(|v| v.dims() != (j, h, wd)) {
        return Err(Error::structural("pose sequence volumes differ in shape"));
    }
    let as_u32 = |v: usize| {
        u32::try_from(v).map_err(|_| Error::structural(format!("{v} does not fit in u32")))
    };
    w.write_all(MAGIC)?;
    for v in [VERSION, as_u32(volumes.len())?, as_u32(j)?, as_u32(h)?, as_u32(wd)?] {
        w.write_all(&v.to_le_bytes())?;
    }
    let mut buf = Vec::with_capacity(first.data().len() * 4);
    for vol in volumes {
        buf.clear();
        buf.extend(vol.data().iter().flat_map(|x| x.to_le_bytes()));
        w.write_all(&buf)?;
    }
    Ok(())
}

pub fn read_pose_sequence<R: Read>(mut r: R) -> Result<Vec<ConfidenceVolume>> {
    let mut header = [0u8; 24];
    read_exact_or(&mut r, &mut header, FORMAT, "header")?;
    if &header[..4] != MAGIC {
        return Err(Error::format(FORMAT, "bad magic"));
    }
    let field = |i: usize| u32::from_le_bytes(header[4 + 4 * i..8 + 4 * i].try_into().unwrap());
    if field(0) != VERSION {
        return Err(Error::format(FORMAT, format!("unsupported version {}", field(0))));
    }
    let (t, j, h, w) = (
        field(1) as usize,
        field(2) as usize,
        field(3) as usize,
        field(4) as usize,
    );
    if j == 0 || h == 0 || w == 0 {
        return Err(Error::format(FORMAT, "zero-sized dimension"));
    }
    let per = j
        .checked_mul(h)
        .and_then(|v| v.checked_mul(w))
        .and_then(|v| v.checked_mul(4))
        .ok_or_else(|| Error::format(FORMAT, "dimensions overflow"))?;
    let mut out = Vec::with_capacity(t.min(1 << 16));
    let mut buf = vec![0u8; per];
    for i in 0..t {
        read_exact_or(&mut r, &mut buf, FORMAT, &format!("payload at frame {i}"))?;
        let data = buf
            .chunks_exact(4)
            .map(|c| f32::from_le_bytes(c.try_into().unwrap()))
            .collect();
        out.push(ConfidenceVolume::new(j, h, w, data)?);
    }
    expect_eof(&mut r, FORMAT)?;
    Ok(out)
}

pub fn save_pose_sequence(path: &Path, volumes: &[ConfidenceVolume]) -> Result<()> {
    write_atomic(path, |w| write_pose_sequence(w, volumes))
}

pub fn load_pose_sequence(path: &Path) -> Result<Vec<ConfidenceVolume>> {
    read_pose_sequence(super::open(path)?)
}
