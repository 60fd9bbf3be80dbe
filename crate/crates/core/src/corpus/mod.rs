//! Password records, lexicons and song libraries.

mod import;
mod lexicon;
mod records;

pub use import::{export_csv, import_survey_csv, ColumnMapping, ImportOutcome, RowDiagnostic};
pub use lexicon::{Lexicon, SongLibrary};
pub use records::{parse_lines, LoadOutcome, PasswordRecord, RecallAttempt, RecordStore, SourceKind};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("{corpus} line {line}: {message}")]
    InvalidEntry { corpus: String, line: usize, message: String },
    #[error("invalid record: {message}")]
    Invalid { message: String },
    #[error("schema error: {0}")]
    Schema(String),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}
