//! Image sequences and run summaries.

mod frame;
mod pgm;
mod summary;

use std::path::PathBuf;

use thiserror::Error;

pub use frame::{capture_frame, Frame, FrameSink, MemorySink, NullSink};
pub use pgm::{encode_pgm, frame_file_name, write_frame, PgmSequenceSink};
pub use summary::{write_summary, write_summary_json, RunSummary, SUMMARY_FILE};

#[derive(Debug, Error)]
pub enum OutputError {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl OutputError {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        OutputError::Io {
            path: path.into(),
            source,
        }
    }
}
