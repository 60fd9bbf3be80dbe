//! The four human-computable hash functions.
//!
//! Each scheme is a function of a [`MemorySource`] and a website name and
//! returns the password together with every intermediate value it produced.
//! Feeding those intermediates back through a [`ScriptedSource`] reproduces
//! the password, which is what [`PasswordOutput::replay`] does.

mod letters;
mod memory_palace;
mod scrambled_box;
mod sentence;
mod song;

pub use letters::{group_sum, group_sum_with, letter_pairs, subkey_letters, LetterValueMap};
pub use memory_palace::{memory_palace_hash, MemoryPalaceTrace};
pub use scrambled_box::{
    apply_moves, build_box, build_box_weighted, coordinate_tokens, scramble, scrambled_box_hash, token_coordinates, unscramble,
    word_coordinates, BlockSwap, BoxWeights,
    CharBox, ScrambledBoxTrace, BOX_SIZE,
};
pub use sentence::{internal_sentence_hash, SentenceTrace};
pub use song::{decimate, insert_specials, mnemonic, move_to_end, song_hash, SongTrace};

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::keyboard::{KeyboardError, KeyboardLayout};
use crate::memory::{MemoryError, MemorySource, ScriptedAnswers, ScriptedSource};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SchemeError {
    #[error("website name is empty after normalization")]
    EmptyWebsite,
    #[error("subkey is empty")]
    EmptySubkey,
    #[error("{0:?} is not a letter")]
    NonLetter(char),
    #[error("block of size {size} at ({row}, {col}) does not fit inside the box")]
    BlockRange { size: usize, row: usize, col: usize },
    #[error("invalid characters to move: {0}")]
    InvalidShift(String),
    #[error("sentence must contain {0:?}")]
    SentenceMissing(String),
    #[error("configuration error: {0}")]
    Config(String),
    #[error(transparent)]
    Keyboard(#[from] KeyboardError),
    #[error(transparent)]
    Memory(MemoryError),
}

impl From<MemoryError> for SchemeError {
    fn from(e: MemoryError) -> Self {
        match e {
            MemoryError::EmptyWebsite => SchemeError::EmptyWebsite,
            other => SchemeError::Memory(other),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SchemeId {
    MemoryPalace,
    ScrambledBox,
    SongPassword,
    InternalSentence,
}

impl SchemeId {
    pub const ALL: [SchemeId; 4] = [
        SchemeId::MemoryPalace,
        SchemeId::ScrambledBox,
        SchemeId::SongPassword,
        SchemeId::InternalSentence,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            SchemeId::MemoryPalace => "memory-palace",
            SchemeId::ScrambledBox => "scrambled-box",
            SchemeId::SongPassword => "song-password",
            SchemeId::InternalSentence => "internal-sentence",
        }
    }
}

impl fmt::Display for SchemeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SchemeId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().replace('_', "-").as_str() {
            "memory-palace" => Ok(SchemeId::MemoryPalace),
            "scrambled-box" => Ok(SchemeId::ScrambledBox),
            "song-password" | "song" => Ok(SchemeId::SongPassword),
            "internal-sentence" | "sentence" => Ok(SchemeId::InternalSentence),
            other => Err(format!(
                "unknown scheme {other:?} (expected memory-palace, scrambled-box, song-password or internal-sentence)"
            )),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "scheme", rename_all = "kebab-case")]
pub enum Trace {
    MemoryPalace(MemoryPalaceTrace),
    ScrambledBox(ScrambledBoxTrace),
    SongPassword(SongTrace),
    InternalSentence(SentenceTrace),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PasswordOutput {
    pub scheme: SchemeId,
    /// As given by the caller.
    pub website: String,
    pub normalized_website: String,
    pub password: String,
    pub trace: Trace,
}

impl PasswordOutput {
    /// The answers recorded in the trace, in the form a [`ScriptedSource`] replays.
    pub fn answers(&self) -> ScriptedAnswers {
        let mut a = ScriptedAnswers::default();
        match &self.trace {
            Trace::MemoryPalace(t) => {
                a.location = Some(t.subkey.clone());
                a.favorite_letter = Some(t.favorite);
                a.diagonal_policy = Some(t.policy);
            }
            Trace::ScrambledBox(t) => {
                a.story = Some(t.story.clone());
                a.story_elements = Some(t.elements);
                a.blocks = t.blocks.clone();
                a.connection = Some(t.connection.clone());
                a.indexing_base = Some(t.indexing_base);
            }
            Trace::SongPassword(t) => {
                a.pin = Some(t.pin);
                a.songs = t.songs.clone();
                a.song_words = t.words.clone();
                a.tiebreaks = t.tiebreaks.clone();
                a.shift_groups = t.shift_groups.clone();
            }
            Trace::InternalSentence(t) => {
                a.rare_word = Some(t.rare_word.clone());
                a.sentence = Some(t.sentence.clone());
            }
        }
        a
    }

    /// Recomputes the password from the trace's recorded inputs alone.
    pub fn replay(&self, layout: &KeyboardLayout) -> Result<PasswordOutput, SchemeError> {
        let source = ScriptedSource::new(self.answers());
        let base_box = match &self.trace {
            Trace::ScrambledBox(t) => Some(CharBox::from_rows(&t.base_box)?),
            _ => None,
        };
        let ctx = SchemeContext {
            layout: layout.clone(),
            base_box,
        };
        hash(self.scheme, &source, &self.website, &ctx)
    }
}

/// Fixed inputs shared by every person: the keyboard and, for the scrambled
/// box, the printed table before scrambling.
#[derive(Debug, Clone, Default)]
pub struct SchemeContext {
    pub layout: KeyboardLayout,
    pub base_box: Option<CharBox>,
}

impl SchemeContext {
    pub fn with_box(base_box: CharBox) -> Self {
        Self {
            layout: KeyboardLayout::qwerty(),
            base_box: Some(base_box),
        }
    }
}

pub fn hash<S: MemorySource + ?Sized>(
    scheme: SchemeId,
    source: &S,
    website: &str,
    ctx: &SchemeContext,
) -> Result<PasswordOutput, SchemeError> {
    match scheme {
        SchemeId::MemoryPalace => memory_palace_hash(source, website, &ctx.layout),
        SchemeId::ScrambledBox => {
            let base = ctx
                .base_box
                .as_ref()
                .ok_or_else(|| SchemeError::Config("scrambled box needs a base box".into()))?;
            scrambled_box_hash(source, website, base)
        }
        SchemeId::SongPassword => song_hash(source, website, &ctx.layout),
        SchemeId::InternalSentence => internal_sentence_hash(source, website),
    }
}
