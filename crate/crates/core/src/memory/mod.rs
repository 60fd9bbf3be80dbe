//! Stand-ins for a person's memory.
//!
//! Every scheme asks its questions through [`MemorySource`]. A seeded
//! [`MemoryModel`] answers them for simulations; a [`ScriptedSource`] answers
//! them from a recorded set of human choices, which is how the wizard service
//! and trace replay share one code path with the simulations.

mod model;
mod rng;
mod scripted;
mod walk;

pub use model::{Corpora, MemoryModel, ModelConfig, ModelSpec};
pub use rng::derive_rng;
pub use scripted::{ScriptedAnswers, ScriptedSource};
pub use walk::{turn_trace, walk_grid, Cell, Heading, Turn, Walk};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::keyboard::DiagonalPolicy;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MemoryError {
    #[error("website name is empty after normalization")]
    EmptyWebsite,
    #[error("configuration error: {0}")]
    Config(String),
    #[error("song {song:?} has {words} words; at least {needed} are required")]
    SongTooShort { song: String, words: usize, needed: usize },
    #[error("unknown song {0:?}")]
    UnknownSong(String),
    #[error("no recorded answer for {0}")]
    Unanswered(&'static str),
    #[error("invalid answer: {0}")]
    InvalidAnswer(String),
}

/// Elements of a story's plot, each tied to a movement on the box.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ElementKind {
    /// Move up.
    Sad,
    /// Move diagonally right and down.
    MemorableCharacter,
    /// Move right.
    ForwardEvent,
    /// Jump to the opposite corner.
    Happy,
}

impl ElementKind {
    pub const ALL: [ElementKind; 4] = [
        ElementKind::Sad,
        ElementKind::MemorableCharacter,
        ElementKind::ForwardEvent,
        ElementKind::Happy,
    ];
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct StoryElement {
    pub kind: ElementKind,
    /// 1-based position in the story; also the block size and move distance.
    pub ordinal: u8,
}

/// The questions a scheme may ask of a person's memory.
///
/// Implementations must be repeatable: the same question with the same
/// arguments always gets the same answer.
pub trait MemorySource {
    /// Mentally walks the familiar location. The default only records the
    /// left/right sequence; simulated memories also report where the walk ends.
    fn walk(&self, website: &str) -> Result<Walk, MemoryError> {
        Ok(Walk {
            trace: turn_trace(website)?,
            end: None,
        })
    }
    /// Word(s) describing what one faces at the end of the walk.
    fn describe_location(&self, walk: &Walk) -> Result<String, MemoryError>;
    fn favorite_letter(&self) -> Result<char, MemoryError>;
    fn diagonal_policy(&self) -> Result<DiagonalPolicy, MemoryError>;
    fn pin(&self) -> Result<[u8; 4], MemoryError>;
    /// One song per mnemonic letter, starting with that letter.
    fn songs_for(&self, mnemonic: &str) -> Result<Vec<String>, MemoryError>;
    /// The `k`-th (1-based) word of `song`.
    fn song_word(&self, song: &str, k: usize) -> Result<String, MemoryError>;
    fn special_tiebreak(&self, vowel: char, candidates: &[char]) -> Result<char, MemoryError>;
    /// Three positions of a `length`-character string to move to its end.
    fn shift_group(&self, length: usize, round: usize) -> Result<[usize; 3], MemoryError>;
    fn story(&self) -> Result<String, MemoryError>;
    fn story_elements(&self, story: &str) -> Result<[StoryElement; 4], MemoryError>;
    /// Top-left `(row, col)` of the `size`×`size` block to move.
    fn block_choice(&self, size: usize) -> Result<(usize, usize), MemoryError>;
    fn connection_word(&self, story: &str, website: &str) -> Result<String, MemoryError>;
    fn rare_word(&self) -> Result<String, MemoryError>;
    fn sentence(&self, rare_word: &str, website: &str) -> Result<String, MemoryError>;
    /// Whether letters are counted from 0 or from 1.
    fn indexing_base(&self) -> Result<u8, MemoryError>;
}

impl<S: MemorySource + ?Sized> MemorySource for &S {
    fn walk(&self, website: &str) -> Result<Walk, MemoryError> {
        (**self).walk(website)
    }
    fn describe_location(&self, walk: &Walk) -> Result<String, MemoryError> {
        (**self).describe_location(walk)
    }
    fn favorite_letter(&self) -> Result<char, MemoryError> {
        (**self).favorite_letter()
    }
    fn diagonal_policy(&self) -> Result<DiagonalPolicy, MemoryError> {
        (**self).diagonal_policy()
    }
    fn pin(&self) -> Result<[u8; 4], MemoryError> {
        (**self).pin()
    }
    fn songs_for(&self, mnemonic: &str) -> Result<Vec<String>, MemoryError> {
        (**self).songs_for(mnemonic)
    }
    fn song_word(&self, song: &str, k: usize) -> Result<String, MemoryError> {
        (**self).song_word(song, k)
    }
    fn special_tiebreak(&self, vowel: char, candidates: &[char]) -> Result<char, MemoryError> {
        (**self).special_tiebreak(vowel, candidates)
    }
    fn shift_group(&self, length: usize, round: usize) -> Result<[usize; 3], MemoryError> {
        (**self).shift_group(length, round)
    }
    fn story(&self) -> Result<String, MemoryError> {
        (**self).story()
    }
    fn story_elements(&self, story: &str) -> Result<[StoryElement; 4], MemoryError> {
        (**self).story_elements(story)
    }
    fn block_choice(&self, size: usize) -> Result<(usize, usize), MemoryError> {
        (**self).block_choice(size)
    }
    fn connection_word(&self, story: &str, website: &str) -> Result<String, MemoryError> {
        (**self).connection_word(story, website)
    }
    fn rare_word(&self) -> Result<String, MemoryError> {
        (**self).rare_word()
    }
    fn sentence(&self, rare_word: &str, website: &str) -> Result<String, MemoryError> {
        (**self).sentence(rare_word, website)
    }
    fn indexing_base(&self) -> Result<u8, MemoryError> {
        (**self).indexing_base()
    }
}

/// Lowercases and drops everything that is not an ASCII letter.
pub fn normalize_website(raw: &str) -> Result<String, MemoryError> {
    let name: String = raw
        .chars()
        .filter(|c| c.is_ascii_alphabetic())
        .map(|c| c.to_ascii_lowercase())
        .collect();
    if name.is_empty() {
        Err(MemoryError::EmptyWebsite)
    } else {
        Ok(name)
    }
}

pub fn is_vowel(c: char) -> bool {
    matches!(c.to_ascii_lowercase(), 'a' | 'e' | 'i' | 'o' | 'u')
}
