//! Binary PPM (P6, maxval 255) frames and numbered frame directories.

use std::io::{BufRead, Write};
use std::path::{Path, PathBuf};

use super::{expect_eof, list_files, read_exact_or, write_atomic};
use crate::error::{Error, Result};
use crate::temporal::Frame;

const FORMAT: &str = "PPM";

/// Writes a P6 image; values are rounded and clamped to `[0, 255]`.
pub fn write_ppm<W: Write>(mut w: W, frame: &Frame) -> Result<()> {
    write!(w, "P6\n{} {}\n255\n", frame.width(), frame.height())?;
    let bytes: Vec<u8> = frame
        .data()
        .iter()
        .map(|v| v.round().clamp(0.0, 255.0) as u8)
        .collect();
    w.write_all(&bytes)?;
    Ok(())
}

fn header_token<R: BufRead>(r: &mut R) -> Result<String> {
    let mut tok = Vec::new();
    loop {
        let mut b = [0u8; 1];
        if r.read(&mut b)? == 0 {
            return Err(Error::format(FORMAT, "truncated header"));
        }
        match b[0] {
            b'#' if tok.is_empty() => {
                let mut skip = Vec::new();
                r.read_until(b'\n', &mut skip)?;
            }
            c if c.is_ascii_whitespace() => {
                if !tok.is_empty() {
                    // the single whitespace after the last token is consumed here
                    return String::from_utf8(tok)
                        .map_err(|_| Error::format(FORMAT, "non-ASCII header"));
                }
            }
            c => tok.push(c),
        }
        if tok.len() > 16 {
            return Err(Error::format(FORMAT, "header token too long"));
        }
    }
}

pub fn read_ppm<R: BufRead>(mut r: R) -> Result<Frame> {
    if header_token(&mut r)? != "P6" {
        return Err(Error::format(FORMAT, "only binary P6 is supported"));
    }
    let mut num = |what: &str| -> Result<usize> {
        header_token(&mut r)?
            .parse()
            .map_err(|_| Error::format(FORMAT, format!("bad {what}")))
    };
    let width = num("width")?;
    let height = num("height")?;
    let maxval = num("maxval")?;
    if maxval != 255 {
        return Err(Error::format(FORMAT, format!("maxval {maxval} is not 255")));
    }
    if width == 0 || height == 0 {
        return Err(Error::format(FORMAT, "zero-sized image"));
    }
    let n = width
        .checked_mul(height)
        .and_then(|v| v.checked_mul(3))
        .ok_or_else(|| Error::format(FORMAT, "dimensions overflow"))?;
    let mut buf = vec![0u8; n];
    read_exact_or(&mut r, &mut buf, FORMAT, "pixel data")?;
    expect_eof(&mut r, FORMAT)?;
    Frame::new(height, width, buf.into_iter().map(f64::from).collect())
}

pub fn save_ppm(path: &Path, frame: &Frame) -> Result<()> {
    write_atomic(path, |w| write_ppm(w, frame))
}

pub fn load_ppm(path: &Path) -> Result<Frame> {
    read_ppm(super::open(path)?)
}

/// Reads every `*.ppm` in `dir`, ordered by file name.
pub fn load_frame_dir(dir: &Path) -> Result<Vec<Frame>> {
    list_files(dir, "ppm")?.iter().map(|p| load_ppm(p)).collect()
}

/// Writes `frame_000000.ppm`, `frame_000001.ppm`, ... into `dir`.
pub fn save_frame_dir(dir: &Path, frames: &[Frame]) -> Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir)?;
    frames
        .iter()
        .enumerate()
        .map(|(i, f)| {
            let p = dir.join(format!("frame_{i:06}.ppm"));
            save_ppm(&p, f)?;
            Ok(p)
        })
        .collect()
}
