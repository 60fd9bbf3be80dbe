//! Measurements over generated and collected passwords.

mod composition;
mod entropy;
mod similarity;
mod survey;

pub use composition::{
    capitalization_matrix, is_symbol, policy_check, sha3_latin1, sha3_symbol_baseline, symbol_ranking,
    CapitalizationMatrix, PolicyReport, MAX_INDEXED_LENGTH,
};
pub use entropy::{naive_entropy, CharClasses, EntropyEstimate, DIGITS, LOWER, SPACE, SPECIALS, UPPER};
pub use similarity::{
    matching_characters, recall_score, recall_score_with, similarity_ratio, RecallOutcome, DEFAULT_RECALL_THRESHOLD,
};
pub use survey::{
    by_scheme, capitalization_by_scheme, graceful_degradation, graceful_degradation_by_scheme, summarize,
    symbol_rank_frequency, write_matrix_csv, write_ranking_csv, write_summary_csv, SummaryRow,
};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum MetricsError {
    #[error("password is empty")]
    EmptyPassword,
    #[error("{0:?} is not a printable ASCII character")]
    UnsupportedCharacter(char),
    #[error("metric is undefined: {0}")]
    UndefinedMetric(String),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl PartialEq for MetricsError {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Self::EmptyPassword, Self::EmptyPassword) => true,
            (Self::UnsupportedCharacter(a), Self::UnsupportedCharacter(b)) => a == b,
            (Self::UndefinedMetric(a), Self::UndefinedMetric(b)) => a == b,
            _ => false,
        }
    }
}
