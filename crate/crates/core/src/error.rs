use thiserror::Error;

use crate::alphabet::Column;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StylicError {
    #[error("alphabet size {0} is outside the supported range 1..=16")]
    AlphabetSize(usize),
    #[error("letter {index} is outside an alphabet of size {n}")]
    LetterOutOfRange { index: usize, n: usize },
    #[error("word {word} does not label a path of the extended quiver from {start}")]
    NotAnExtendedPath { start: Column, word: String },
    #[error("word {word} does not label a path of the quiver from {start}")]
    NotAPath { start: Column, word: String },
    #[error("column {0} is not a column of the alphabet")]
    ColumnOutOfRange(Column),
    #[error("{0}")]
    Verification(String),
}
