//! Middlebury `.flo` optical flow files: `f32` magic 202021.25, `i32` width,
//! `i32` height, then interleaved `(u, v)` `f32` pairs, all little-endian.

use std::io::{Read, Write};
use std::path::Path;

use super::{expect_eof, read_exact_or, write_atomic};
use crate::error::{Error, Result};
use crate::temporal::FlowField;

pub const MAGIC: f32 = 202021.25;
const FORMAT: &str = "Middlebury flow";

pub fn write_flo<W: Write>(mut w: W, flow: &FlowField) -> Result<()> {
    let dim = |v: usize| {
        i32::try_from(v).map_err(|_| Error::structural(format!("{v} does not fit in i32")))
    };
    w.write_all(&MAGIC.to_le_bytes())?;
    w.write_all(&dim(flow.width())?.to_le_bytes())?;
    w.write_all(&dim(flow.height())?.to_le_bytes())?;
    let bytes: Vec<u8> = flow.data().iter().flat_map(|v| v.to_le_bytes()).collect();
    w.write_all(&bytes)?;
    Ok(())
}

pub fn read_flo<R: Read>(mut r: R) -> Result<FlowField> {
    let mut header = [0u8; 12];
    read_exact_or(&mut r, &mut header, FORMAT, "header")?;
    let magic = f32::from_le_bytes(header[0..4].try_into().unwrap());
    if magic.to_bits() != MAGIC.to_bits() {
        return Err(Error::format(FORMAT, format!("bad magic {magic}")));
    }
    let width = i32::from_le_bytes(header[4..8].try_into().unwrap());
    let height = i32::from_le_bytes(header[8..12].try_into().unwrap());
    if width <= 0 || height <= 0 {
        return Err(Error::format(FORMAT, format!("invalid size {width}x{height}")));
    }
    let (width, height) = (width as usize, height as usize);
    let n = width
        .checked_mul(height)
        .and_then(|v| v.checked_mul(8))
        .ok_or_else(|| Error::format(FORMAT, "dimensions overflow"))?;
    let mut buf = vec![0u8; n];
    read_exact_or(&mut r, &mut buf, FORMAT, "payload")?;
    expect_eof(&mut r, FORMAT)?;
    let data: Vec<f32> = buf
        .chunks_exact(4)
        .map(|c| f32::from_le_bytes(c.try_into().unwrap()))
        .collect();
    if data.iter().any(|v| !v.is_finite()) {
        return Err(Error::format(FORMAT, "non-finite displacement"));
    }
    FlowField::new(height, width, data)
}

pub fn save_flo(path: &Path, flow: &FlowField) -> Result<()> {
    write_atomic(path, |w| write_flo(w, flow))
}

pub fn load_flo(path: &Path) -> Result<FlowField> {
    read_flo(super::open(path)?)
}
