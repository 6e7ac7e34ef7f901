//! File formats: PSQ1 pose sequences, skeleton JSON, Middlebury `.flo` flow
//! and binary PPM frames.

pub mod flo;
pub mod ppm;
pub mod psq;
pub mod skeleton_json;

use std::fs::{self, File};
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::{Path, PathBuf};

use crate::error::Result;

/// Writes `path` through a temporary file in the same directory, then renames
/// it into place.
pub fn write_atomic<F>(path: &Path, write: F) -> Result<()>
where
    F: FnOnce(&mut BufWriter<&mut File>) -> Result<()>,
{
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    {
        let mut w = BufWriter::new(tmp.as_file_mut());
        write(&mut w)?;
        w.flush()?;
    }
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

pub(crate) fn open(path: &Path) -> Result<BufReader<File>> {
    Ok(BufReader::new(File::open(path)?))
}

/// Regular files in `dir` with the given extension, sorted by file name.
pub fn list_files(dir: &Path, extension: &str) -> Result<Vec<PathBuf>> {
    let mut out = Vec::new();
    for entry in fs::read_dir(dir)? {
        let path = entry?.path();
        if path.is_file()
            && path
                .extension()
                .is_some_and(|e| e.eq_ignore_ascii_case(extension))
        {
            out.push(path);
        }
    }
    out.sort();
    Ok(out)
}

pub(crate) fn read_exact_or<R: Read>(
    r: &mut R,
    buf: &mut [u8],
    format: &'static str,
    what: &str,
) -> Result<()> {
    r.read_exact(buf).map_err(|e| {
        if e.kind() == std::io::ErrorKind::UnexpectedEof {
            crate::Error::format(format, format!("truncated {what}"))
        } else {
            e.into()
        }
    })
}

pub(crate) fn expect_eof<R: Read>(r: &mut R, format: &'static str) -> Result<()> {
    let mut extra = [0u8; 1];
    if r.read(&mut extra)? != 0 {
        return Err(crate::Error::format(format, "trailing bytes after payload"));
    }
    Ok(())
}
