//! Next-character predictability: how well a character model trained on a
//! scheme's passwords guesses each password's last character.

mod lstm;
mod ngram;

pub use lstm::{
    gradient_check, gradient_check_with, train, write_curve_csv, Checkpoint, GradientCheck, LstmModel, TrainConfig,
    TrainOutcome,
};
pub use ngram::{ngram_baseline, NgramModel};

use thiserror::Error;

use crate::corpus::CorpusError;

/// The 95 printable ASCII characters, space first.
pub struct Alphabet;

impl Alphabet {
    pub const SIZE: usize = 95;

    pub fn index(c: char) -> Option<usize> {
        (' '..='~').contains(&c).then(|| c as usize - ' ' as usize)
    }

    pub fn char(i: usize) -> char {
        (b' ' + i as u8) as char
    }

    pub fn chars() -> String {
        (0..Self::SIZE).map(Self::char).collect()
    }

    pub fn encode(text: &str) -> Result<Vec<usize>, PredictorError> {
        text.chars()
            .map(|c| Self::index(c).ok_or(PredictorError::UnsupportedCharacter(c)))
            .collect()
    }
}

#[derive(Debug, Error)]
pub enum PredictorError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error(transparent)]
    Corpus(#[from] CorpusError),
    #[error("{0:?} is outside the printable ASCII alphabet")]
    UnsupportedCharacter(char),
    #[error("checkpoint: {0}")]
    Checkpoint(String),
}

fn degenerate(message: &str) -> PredictorError {
    PredictorError::Corpus(CorpusError::Invalid {
        message: message.to_string(),
    })
}

/// Anything that can guess the next character from a prefix.
pub trait NextChar {
    /// Alphabet index of the most likely next character; ties go to the lowest index.
    fn predict(&self, prefix: &[usize]) -> usize;
}

/// Fraction of passwords whose final character is the top prediction given
/// everything before it. Passwords shorter than two characters are skipped.
pub fn last_char_accuracy<P: NextChar + ?Sized, S: AsRef<str>>(model: &P, passwords: &[S]) -> Result<f64, PredictorError> {
    let (mut hits, mut total) = (0usize, 0usize);
    for p in passwords {
        let seq = Alphabet::encode(p.as_ref())?;
        let Some((&last, prefix)) = seq.split_last() else { continue };
        if prefix.is_empty() {
            continue;
        }
        total += 1;
        if model.predict(prefix) == last {
            hits += 1;
        }
    }
    if total == 0 {
        return Err(degenerate("no password has two or more characters"));
    }
    Ok(hits as f64 / total as f64)
}

fn argmax<T: PartialOrd + Copy>(xs: &[T]) -> usize {
    let mut best = 0;
    for (i, &x) in xs.iter().enumerate() {
        if x > xs[best] {
            best = i;
        }
    }
    best
}
