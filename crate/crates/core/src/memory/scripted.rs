use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{MemoryError, MemorySource, StoryElement, Walk};
use crate::keyboard::DiagonalPolicy;

/// Answers a person gave, one field per question kind.
///
/// `song_words[i]` is the word taken from `songs[i]`, and `blocks[x - 1]` is
/// the block chosen for the `x`-th story element.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct ScriptedAnswers {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub location: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub favorite_letter: Option<char>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diagonal_policy: Option<DiagonalPolicy>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pin: Option<[u8; 4]>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub songs: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub song_words: Vec<String>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub tiebreaks: BTreeMap<char, char>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub shift_groups: Vec<[usize; 3]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub story: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub story_elements: Option<[StoryElement; 4]>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub blocks: Vec<(usize, usize)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub connection: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rare_word: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sentence: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub indexing_base: Option<u8>,
}

/// A [`MemorySource`] that replays recorded answers. A question without a
/// recorded answer fails with [`MemoryError::Unanswered`].
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ScriptedSource {
    pub answers: ScriptedAnswers,
}

impl ScriptedSource {
    pub fn new(answers: ScriptedAnswers) -> Self {
        Self { answers }
    }
}

fn need<T: Clone>(value: &Option<T>, what: &'static str) -> Result<T, MemoryError> {
    value.clone().ok_or(MemoryError::Unanswered(what))
}

impl MemorySource for ScriptedSource {
    fn describe_location(&self, _walk: &Walk) -> Result<String, MemoryError> {
        need(&self.answers.location, "location description")
    }

    fn favorite_letter(&self) -> Result<char, MemoryError> {
        need(&self.answers.favorite_letter, "favorite letter")
    }

    fn diagonal_policy(&self) -> Result<DiagonalPolicy, MemoryError> {
        need(&self.answers.diagonal_policy, "diagonal policy")
    }

    fn pin(&self) -> Result<[u8; 4], MemoryError> {
        need(&self.answers.pin, "pin")
    }

    fn songs_for(&self, _mnemonic: &str) -> Result<Vec<String>, MemoryError> {
        if self.answers.songs.is_empty() {
            return Err(MemoryError::Unanswered("songs"));
        }
        Ok(self.answers.songs.clone())
    }

    fn song_word(&self, song: &str, _k: usize) -> Result<String, MemoryError> {
        let i = self
            .answers
            .songs
            .iter()
            .position(|s| s == song)
            .ok_or_else(|| MemoryError::UnknownSong(song.to_string()))?;
        self.answers
            .song_words
            .get(i)
            .cloned()
            .ok_or(MemoryError::Unanswered("song word"))
    }

    fn special_tiebreak(&self, vowel: char, candidates: &[char]) -> Result<char, MemoryError> {
        let choice = *self
            .answers
            .tiebreaks
            .get(&vowel.to_ascii_lowercase())
            .ok_or(MemoryError::Unanswered("special character tiebreak"))?;
        if candidates.contains(&choice) {
            Ok(choice)
        } else {
            Err(MemoryError::InvalidAnswer(format!("{choice:?} is not one of {candidates:?}")))
        }
    }

    fn shift_group(&self, _length: usize, round: usize) -> Result<[usize; 3], MemoryError> {
        self.answers
            .shift_groups
            .get(round)
            .copied()
            .ok_or(MemoryError::Unanswered("characters to move"))
    }

    fn story(&self) -> Result<String, MemoryError> {
        need(&self.answers.story, "story")
    }

    fn story_elements(&self, _story: &str) -> Result<[StoryElement; 4], MemoryError> {
        need(&self.answers.story_elements, "story elements")
    }

    fn block_choice(&self, size: usize) -> Result<(usize, usize), MemoryError> {
        size.checked_sub(1)
            .and_then(|i| self.answers.blocks.get(i))
            .copied()
            .ok_or(MemoryError::Unanswered("block choice"))
    }

    fn connection_word(&self, _story: &str, _website: &str) -> Result<String, MemoryError> {
        need(&self.answers.connection, "connection word")
    }

    fn rare_word(&self) -> Result<String, MemoryError> {
        need(&self.answers.rare_word, "rare word")
    }

    fn sentence(&self, _rare_word: &str, _website: &str) -> Result<String, MemoryError> {
        need(&self.answers.sentence, "sentence")
    }

    fn indexing_base(&self) -> Result<u8, MemoryError> {
        need(&self.answers.indexing_base, "letter indexing base")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn missing_answers_are_reported() {
        let s = ScriptedSource::default();
        assert_eq!(s.pin(), Err(MemoryError::Unanswered("pin")));
        assert_eq!(s.block_choice(1), Err(MemoryError::Unanswered("block choice")));
    }

    #[test]
    fn tiebreak_must_be_offered() {
        let mut answers = ScriptedAnswers::default();
        answers.tiebreaks.insert('o', '(');
        let s = ScriptedSource::new(answers);
        assert_eq!(s.special_tiebreak('O', &['(', ')']), Ok('('));
        assert!(matches!(s.special_tiebreak('o', &['#', '$']), Err(MemoryError::InvalidAnswer(_))));
    }
}
