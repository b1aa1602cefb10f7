//! Binary PGM frames: header `P5\n<w> <h>\n255\n` then one byte per cell,
//! row-major.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use super::{Frame, FrameSink, OutputError};

pub fn encode_pgm(frame: &Frame) -> Vec<u8> {
    let mut bytes = format!("P5\n{} {}\n255\n", frame.width, frame.height).into_bytes();
    bytes.extend(frame.grey_levels());
    bytes
}

/// `frame_000042.pgm` for a frame captured at time 42.
pub fn frame_file_name(time: f64) -> String {
    format!("frame_{:06}.pgm", time.floor().max(0.0) as u64)
}

pub fn write_frame(frame: &Frame, dir: &Path) -> Result<PathBuf, OutputError> {
    let path = dir.join(frame_file_name(frame.time));
    let mut file = fs::File::create(&path).map_err(|e| OutputError::io(&path, e))?;
    file.write_all(&encode_pgm(frame)).map_err(|e| OutputError::io(&path, e))?;
    Ok(path)
}

/// Writes every frame it receives into one directory.
#[derive(Debug)]
pub struct PgmSequenceSink {
    dir: PathBuf,
    written: Vec<PathBuf>,
}

impl PgmSequenceSink {
    pub fn create(dir: impl Into<PathBuf>) -> Result<Self, OutputError> {
        let dir = dir.into();
        fs::create_dir_all(&dir).map_err(|e| OutputError::io(&dir, e))?;
        Ok(PgmSequenceSink {
            dir,
            written: Vec::new(),
        })
    }

    pub fn written(&self) -> &[PathBuf] {
        &self.written
    }
}

impl FrameSink for PgmSequenceSink {
    fn accept(&mut self, frame: &Frame) -> Result<(), OutputError> {
        let path = write_frame(frame, &self.dir)?;
        self.written.push(path);
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn frame(width: usize, height: usize, cells: Vec<u8>) -> Frame {
        Frame {
            time: 3.0,
            width,
            height,
            cells,
            classes: 1,
        }
    }

    #[test]
    fn two_by_two_golden_bytes() {
        let bytes = encode_pgm(&frame(2, 2, vec![1, 0, 0, 0]));
        assert_eq!(bytes, b"P5\n2 2\n255\n\xff\x00\x00\x00".to_vec());
    }

    #[test]
    fn empty_grid_is_all_zero() {
        let bytes = encode_pgm(&frame(32, 32, vec![0; 1024]));
        let header = b"P5\n32 32\n255\n";
        assert_eq!(&bytes[..header.len()], header);
        assert_eq!(bytes.len(), header.len() + 1024);
        assert!(bytes[header.len()..].iter().all(|&b| b == 0));
    }

    #[test]
    fn file_names_are_zero_padded() {
        assert_eq!(frame_file_name(0.0), "frame_000000.pgm");
        assert_eq!(frame_file_name(100.0), "frame_000100.pgm");
    }

    #[test]
    fn rewriting_is_byte_identical() {
        let dir = tempfile::tempdir().unwrap();
        let f = frame(2, 2, vec![0, 1, 1, 0]);
        let path = write_frame(&f, dir.path()).unwrap();
        let first = fs::read(&path).unwrap();
        write_frame(&f, dir.path()).unwrap();
        assert_eq!(first, fs::read(&path).unwrap());
        assert!(path.ends_with("frame_000003.pgm"));
    }

    #[test]
    fn unwritable_directory_names_the_path() {
        let dir = tempfile::tempdir().unwrap();
        let missing = dir.path().join("nope");
        let err = write_frame(&frame(1, 1, vec![0]), &missing).unwrap_err();
        assert!(err.to_string().contains("nope"));
    }
}
