use std::io;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed map: {0}")]
    Structural(String),

    #[error("shift {shift} at level {level} is out of range for width {width}")]
    ShiftOutOfRange {
        level: usize,
        shift: usize,
        width: usize,
    },

    #[error("level {level}: width {width} cannot host a pattern needing {needed} strands")]
    WidthUnderflow {
        level: usize,
        width: usize,
        needed: usize,
    },

    #[error("first shift must be 0, got {0}")]
    NonzeroFirstShift(usize),

    #[error("cannot parse code: {0}")]
    Parse(String),

    #[error("map is not connected")]
    Disconnected,

    #[error("map is composite")]
    Composite,

    #[error("root face is not a boundary face")]
    NotBoundaryFace,

    #[error("internal defect: {0}")]
    Defect(String),

    #[error("a code with {0} crossing(s) has no parent")]
    NoParent(usize),

    #[error("code is not canonical: prefix of length {prefix_len} re-canonicalizes differently")]
    NotCanonical { prefix_len: usize },

    #[error("invalid flype site: {0}")]
    InvalidSite(String),

    #[error(transparent)]
    Io(#[from] io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
