//! Step-by-step execution of a scheme by a person.
//!
//! A session keeps the answers given so far and reruns the real scheme over
//! them through a [`ScriptedSource`]. The first question that has no answer
//! yet becomes the pending [`Prompt`]; once every question is answered the
//! scheme's own output is the result. Human and simulated runs therefore go
//! through the same code.

use std::cell::RefCell;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::keyboard::{DiagonalPolicy, KeyboardLayout};
use crate::memory::{
    normalize_website, turn_trace, MemoryError, MemorySource, ScriptedAnswers, ScriptedSource, StoryElement, Turn,
    Walk,
};
use crate::metrics::{recall_score, similarity_ratio, RecallOutcome};
use crate::schemes::{
    apply_moves, hash, insert_specials, mnemonic, move_to_end, CharBox, PasswordOutput, SchemeContext, SchemeError,
    SchemeId, BOX_SIZE,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum WizardError {
    #[error("invalid answer: {0}")]
    Validation(String),
    #[error("session is already complete")]
    Completed,
    #[error("session is not complete yet")]
    Incomplete,
    #[error(transparent)]
    Scheme(#[from] SchemeError),
}

fn invalid(msg: impl Into<String>) -> WizardError {
    WizardError::Validation(msg.into())
}

/// What a free-text prompt is asking for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FreeField {
    Story,
    Connection,
    RareWord,
    Sentence,
}

/// The question waiting for an answer, with what the person needs to see.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Prompt {
    /// Walk the familiar place turning left at vowels and right at consonants,
    /// then describe what is in front of you.
    DirectionWalk { turns: Vec<Turn> },
    FavoriteLetter,
    /// How to read "diagonally above" on the keyboard.
    PolicyChoice { suggested: DiagonalPolicy },
    Pin,
    /// One song per mnemonic letter and the word at each position.
    SongWords { mnemonic: String, positions: [usize; 4] },
    TiebreakChoice { vowel: char, candidates: Vec<char> },
    /// Three 0-based positions of `text` to move to its end.
    ShiftChoice { text: String, round: usize },
    StoryElements,
    /// Top-left corner of the `size`×`size` block to move.
    BlockChoice {
        size: usize,
        max_row: usize,
        max_col: usize,
        sbox: Vec<String>,
    },
    FreeWord { field: FreeField },
}

impl Prompt {
    pub fn kind(&self) -> &'static str {
        match self {
            Prompt::DirectionWalk { .. } => "direction-walk",
            Prompt::FavoriteLetter => "favorite-letter",
            Prompt::PolicyChoice { .. } => "policy-choice",
            Prompt::Pin => "pin",
            Prompt::SongWords { .. } => "song-words",
            Prompt::TiebreakChoice { .. } => "tiebreak-choice",
            Prompt::ShiftChoice { .. } => "shift-choice",
            Prompt::StoryElements => "story-elements",
            Prompt::BlockChoice { .. } => "block-choice",
            Prompt::FreeWord { .. } => "free-word",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Answer {
    DirectionWalk { description: String },
    FavoriteLetter { letter: char },
    PolicyChoice { policy: DiagonalPolicy },
    Pin { pin: String },
    SongWords { songs: Vec<String>, words: Vec<String> },
    TiebreakChoice { choice: char },
    ShiftChoice { positions: [usize; 3] },
    StoryElements { elements: Vec<StoryElement> },
    BlockChoice { row: usize, col: usize },
    FreeWord { text: String },
}

impl Answer {
    pub fn kind(&self) -> &'static str {
        match self {
            Answer::DirectionWalk { .. } => "direction-walk",
            Answer::FavoriteLetter { .. } => "favorite-letter",
            Answer::PolicyChoice { .. } => "policy-choice",
            Answer::Pin { .. } => "pin",
            Answer::SongWords { .. } => "song-words",
            Answer::TiebreakChoice { .. } => "tiebreak-choice",
            Answer::ShiftChoice { .. } => "shift-choice",
            Answer::StoryElements { .. } => "story-elements",
            Answer::BlockChoice { .. } => "block-choice",
            Answer::FreeWord { .. } => "free-word",
        }
    }
}

/// Records the first question a [`ScriptedSource`] could not answer.
struct Probe<'a> {
    inner: &'a ScriptedSource,
    asked: RefCell<Option<Prompt>>,
}

impl Probe<'_> {
    fn ask<T>(&self, result: Result<T, MemoryError>, prompt: impl FnOnce() -> Prompt) -> Result<T, MemoryError> {
        if let Err(MemoryError::Unanswered(_)) = &result {
            self.asked.borrow_mut().get_or_insert_with(prompt);
        }
        result
    }
}

impl MemorySource for Probe<'_> {
    fn describe_location(&self, walk: &Walk) -> Result<String, MemoryError> {
        self.ask(self.inner.describe_location(walk), || Prompt::DirectionWalk {
            turns: walk.trace.clone(),
        })
    }

    fn favorite_letter(&self) -> Result<char, MemoryError> {
        self.ask(self.inner.favorite_letter(), || Prompt::FavoriteLetter)
    }

    fn diagonal_policy(&self) -> Result<DiagonalPolicy, MemoryError> {
        self.ask(self.inner.diagonal_policy(), || Prompt::PolicyChoice {
            suggested: DiagonalPolicy::CANONICAL,
        })
    }

    fn pin(&self) -> Result<[u8; 4], MemoryError> {
        self.ask(self.inner.pin(), || Prompt::Pin)
    }

    fn songs_for(&self, mnemonic: &str) -> Result<Vec<String>, MemoryError> {
        let pin = self.inner.answers.pin.unwrap_or_default();
        self.ask(self.inner.songs_for(mnemonic), || Prompt::SongWords {
            mnemonic: mnemonic.to_string(),
            positions: pin.map(|d| if d == 0 { 10 } else { d as usize }),
        })
    }

    fn song_word(&self, song: &str, k: usize) -> Result<String, MemoryError> {
        self.inner.song_word(song, k)
    }

    fn special_tiebreak(&self, vowel: char, candidates: &[char]) -> Result<char, MemoryError> {
        self.ask(self.inner.special_tiebreak(vowel, candidates), || Prompt::TiebreakChoice {
            vowel,
            candidates: candidates.to_vec(),
        })
    }

    fn shift_group(&self, length: usize, round: usize) -> Result<[usize; 3], MemoryError> {
        // the text is filled in by the session, which knows the layout
        self.ask(self.inner.shift_group(length, round), || Prompt::ShiftChoice {
            text: String::new(),
            round,
        })
    }

    fn story(&self) -> Result<String, MemoryError> {
        self.ask(self.inner.story(), || Prompt::FreeWord { field: FreeField::Story })
    }

    fn story_elements(&self, story: &str) -> Result<[StoryElement; 4], MemoryError> {
        self.ask(self.inner.story_elements(story), || Prompt::StoryElements)
    }

    fn block_choice(&self, size: usize) -> Result<(usize, usize), MemoryError> {
        self.ask(self.inner.block_choice(size), || Prompt::BlockChoice {
            size,
            max_row: BOX_SIZE.saturating_sub(size),
            max_col: BOX_SIZE.saturating_sub(size),
            sbox: Vec::new(),
        })
    }

    fn connection_word(&self, story: &str, website: &str) -> Result<String, MemoryError> {
        self.ask(self.inner.connection_word(story, website), || Prompt::FreeWord {
            field: FreeField::Connection,
        })
    }

    fn rare_word(&self) -> Result<String, MemoryError> {
        self.ask(self.inner.rare_word(), || Prompt::FreeWord { field: FreeField::RareWord })
    }

    fn sentence(&self, rare_word: &str, website: &str) -> Result<String, MemoryError> {
        self.ask(self.inner.sentence(rare_word, website), || Prompt::FreeWord { field: FreeField::Sentence })
    }

    fn indexing_base(&self) -> Result<u8, MemoryError> {
        self.inner.indexing_base()
    }
}

/// Where a session stands after the latest answer.
enum Progress {
    Ask(Prompt),
    Done(Box<PasswordOutput>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RecallAttemptResult {
    pub remembered: String,
    pub outcome: RecallOutcome<f64>,
    pub similarity: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WizardSession {
    pub scheme: SchemeId,
    pub website: String,
    pub answers: ScriptedAnswers,
    /// Number of answers accepted so far.
    pub step: usize,
    pub prompt: Option<Prompt>,
    pub result: Option<PasswordOutput>,
    pub recall: Vec<RecallAttemptResult>,
    #[serde(skip)]
    context: SchemeContext,
}

impl WizardSession {
    /// Starts a session. Scrambled Box sessions count letters from 1.
    pub fn new(scheme: SchemeId, website: &str, context: SchemeContext) -> Result<Self, WizardError> {
        normalize_website(website).map_err(SchemeError::from)?;
        if scheme == SchemeId::ScrambledBox && context.base_box.is_none() {
            return Err(SchemeError::Config("scrambled box needs a base box".into()).into());
        }
        let mut answers = ScriptedAnswers::default();
        if scheme == SchemeId::ScrambledBox {
            answers.indexing_base = Some(1);
        }
        let mut session = Self {
            scheme,
            website: website.to_string(),
            answers,
            step: 0,
            prompt: None,
            result: None,
            recall: Vec::new(),
            context,
        };
        session.settle(session.advance(&session.answers)?);
        Ok(session)
    }

    pub fn layout(&self) -> &KeyboardLayout {
        &self.context.layout
    }

    pub fn base_box(&self) -> Option<&CharBox> {
        self.context.base_box.as_ref()
    }

    pub fn is_complete(&self) -> bool {
        self.result.is_some()
    }

    fn settle(&mut self, progress: Progress) {
        match progress {
            Progress::Ask(p) => self.prompt = Some(p),
            Progress::Done(out) => {
                self.prompt = None;
                self.result = Some(*out);
            }
        }
    }

    fn advance(&self, answers: &ScriptedAnswers) -> Result<Progress, WizardError> {
        let source = ScriptedSource::new(answers.clone());
        let probe = Probe {
            inner: &source,
            asked: RefCell::new(None),
        };
        let outcome = hash(self.scheme, &probe, &self.website, &self.context);
        match (outcome, probe.asked.into_inner()) {
            (Ok(out), _) => Ok(Progress::Done(Box::new(out))),
            (Err(SchemeError::Memory(MemoryError::Unanswered(_))), Some(prompt)) => {
                Ok(Progress::Ask(self.decorate(prompt, answers)?))
            }
            (Err(e), _) => Err(e.into()),
        }
    }

    /// Adds payload the probe cannot know: the text being shifted, the box so far.
    fn decorate(&self, prompt: Prompt, answers: &ScriptedAnswers) -> Result<Prompt, WizardError> {
        Ok(match prompt {
            Prompt::ShiftChoice { round, .. } => {
                let joined = answers.song_words.concat();
                let mut text = insert_specials(&joined, &self.context.layout, |vowel, _| {
                    answers
                        .tiebreaks
                        .get(&vowel)
                        .copied()
                        .ok_or_else(|| SchemeError::Config(format!("no tiebreak for {vowel:?}")))
                })?;
                for group in answers.shift_groups.iter().take(round) {
                    text = move_to_end(&text, group)?;
                }
                Prompt::ShiftChoice { text, round }
            }
            Prompt::BlockChoice {
                size, max_row, max_col, ..
            } => {
                let sbox = match (self.context.base_box.as_ref(), answers.story_elements.as_ref()) {
                    (Some(base), Some(elements)) => apply_moves(base, elements, &answers.blocks)?.0.rows(),
                    (Some(base), None) => base.rows(),
                    _ => Vec::new(),
                };
                Prompt::BlockChoice {
                    size,
                    max_row,
                    max_col,
                    sbox,
                }
            }
            other => other,
        })
    }

    /// Validates `answer` against the pending prompt and advances. A rejected
    /// answer leaves the session unchanged.
    pub fn answer(&mut self, answer: Answer) -> Result<(), WizardError> {
        let Some(prompt) = self.prompt.clone() else {
            return Err(WizardError::Completed);
        };
        if prompt.kind() != answer.kind() {
            return Err(invalid(format!("expected a {} answer, got {}", prompt.kind(), answer.kind())));
        }
        let mut next = self.answers.clone();
        self.record(&prompt, answer, &mut next)?;
        let progress = self.advance(&next).map_err(|e| match e {
            WizardError::Scheme(s) => invalid(s.to_string()),
            other => other,
        })?;
        if let Progress::Ask(p) = &progress {
            if *p == prompt {
                return Err(invalid("answer did not settle the question"));
            }
        }
        self.answers = next;
        self.step += 1;
        self.settle(progress);
        Ok(())
    }

    fn record(&self, prompt: &Prompt, answer: Answer, a: &mut ScriptedAnswers) -> Result<(), WizardError> {
        match (prompt, answer) {
            (Prompt::DirectionWalk { .. }, Answer::DirectionWalk { description }) => {
                a.location = Some(words(&description, "location description")?);
            }
            (Prompt::FavoriteLetter, Answer::FavoriteLetter { letter }) => {
                if !letter.is_ascii_alphabetic() {
                    return Err(invalid(format!("{letter:?} is not a letter")));
                }
                a.favorite_letter = Some(letter.to_ascii_lowercase());
            }
            (Prompt::PolicyChoice { .. }, Answer::PolicyChoice { policy }) => {
                if policy.rows_up == 0 {
                    return Err(invalid("rows up must be at least 1"));
                }
                a.diagonal_policy = Some(policy);
            }
            (Prompt::Pin, Answer::Pin { pin }) => {
                let digits: Vec<u8> = pin.chars().filter_map(|c| c.to_digit(10).map(|d| d as u8)).collect();
                if digits.len() != 4 || pin.chars().count() != 4 {
                    return Err(invalid("pin must be exactly 4 digits"));
                }
                a.pin = Some([digits[0], digits[1], digits[2], digits[3]]);
            }
            (Prompt::SongWords { mnemonic, .. }, Answer::SongWords { songs, words: chosen }) => {
                if songs.len() != 4 || chosen.len() != 4 {
                    return Err(invalid("need exactly 4 songs and 4 words"));
                }
                for (i, (song, letter)) in songs.iter().zip(mnemonic.chars()).enumerate() {
                    let first = song.trim().chars().next().map(|c| c.to_ascii_lowercase());
                    if first != Some(letter) {
                        return Err(invalid(format!("song {} must start with {letter:?}", i + 1)));
                    }
                    if songs[..i].contains(song) {
                        return Err(invalid(format!("song {song:?} is listed twice")));
                    }
                }
                for w in &chosen {
                    if w.is_empty() || !w.chars().all(|c| c.is_ascii_alphabetic()) {
                        return Err(invalid(format!("{w:?} is not a single word of letters")));
                    }
                }
                a.songs = songs;
                a.song_words = chosen.iter().map(|w| w.to_ascii_lowercase()).collect();
            }
            (Prompt::TiebreakChoice { vowel, candidates }, Answer::TiebreakChoice { choice }) => {
                if !candidates.contains(&choice) {
                    return Err(invalid(format!("{choice:?} is not one of {candidates:?}")));
                }
                a.tiebreaks.insert(*vowel, choice);
            }
            (Prompt::ShiftChoice { text, .. }, Answer::ShiftChoice { positions }) => {
                move_to_end(text, &positions).map_err(|e| invalid(e.to_string()))?;
                a.shift_groups.push(positions);
            }
            (Prompt::StoryElements, Answer::StoryElements { elements }) => {
                let ordered = elements.len() == 4 && elements.iter().zip(1u8..).all(|(e, x)| e.ordinal == x);
                if !ordered {
                    return Err(invalid("need 4 story elements with ordinals 1, 2, 3, 4"));
                }
                a.story_elements = Some([elements[0], elements[1], elements[2], elements[3]]);
            }
            (Prompt::BlockChoice { max_row, max_col, .. }, Answer::BlockChoice { row, col }) => {
                if row > *max_row || col > *max_col {
                    return Err(invalid(format!("block must start within rows 0-{max_row} and columns 0-{max_col}")));
                }
                a.blocks.push((row, col));
            }
            (Prompt::FreeWord { field }, Answer::FreeWord { text }) => match field {
                FreeField::Story => a.story = Some(nonempty(&text, "story")?),
                FreeField::Connection => a.connection = Some(words(&text, "connection word")?),
                FreeField::RareWord => a.rare_word = Some(words(&text, "rare word")?),
                FreeField::Sentence => {
                    let rare = a.rare_word.clone().unwrap_or_default();
                    let site = normalize_website(&self.website).map_err(SchemeError::from)?;
                    let lower = text.to_lowercase();
                    for needed in [&rare, &site] {
                        if !lower.contains(&needed.to_lowercase()) {
                            return Err(invalid(format!("sentence must contain {needed:?}")));
                        }
                    }
                    a.sentence = Some(text);
                }
            },
            _ => unreachable!("kinds were matched by the caller"),
        }
        Ok(())
    }

    /// Scores a recall attempt against the finished password.
    pub fn practice(&mut self, remembered: &str) -> Result<RecallAttemptResult, WizardError> {
        let password = &self.result.as_ref().ok_or(WizardError::Incomplete)?.password;
        let attempt = RecallAttemptResult {
            remembered: remembered.to_string(),
            outcome: recall_score(password, remembered),
            similarity: similarity_ratio(password, remembered),
        };
        self.recall.push(attempt.clone());
        Ok(attempt)
    }
}

fn nonempty(text: &str, what: &str) -> Result<String, WizardError> {
    let t = text.trim();
    if t.is_empty() {
        return Err(invalid(format!("{what} is empty")));
    }
    Ok(t.to_string())
}

/// Letters and single spaces only.
fn words(text: &str, what: &str) -> Result<String, WizardError> {
    let t = nonempty(text, what)?;
    if !t.chars().all(|c| c.is_ascii_alphabetic() || c == ' ') {
        return Err(invalid(format!("{what} may only contain letters and spaces")));
    }
    Ok(t.split_whitespace().collect::<Vec<_>>().join(" ").to_lowercase())
}

/// Left/right turns a walk for `website` takes; what the direction-walk prompt shows.
pub fn walk_turns(website: &str) -> Result<Vec<Turn>, WizardError> {
    let normalized = normalize_website(website).map_err(SchemeError::from)?;
    turn_trace(&normalized).map_err(|e| SchemeError::from(e).into())
}

/// Mnemonic shown before the song prompt.
pub fn song_mnemonic(website: &str) -> Result<String, WizardError> {
    Ok(mnemonic(website)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::memory::ElementKind;
    use crate::schemes::{build_box, Trace};

    fn ctx() -> SchemeContext {
        SchemeContext::with_box(build_box(3))
    }

    #[test]
    fn memory_palace_session() {
        let mut s = WizardSession::new(SchemeId::MemoryPalace, "gmail", ctx()).unwrap();
        assert_eq!(s.prompt.as_ref().unwrap().kind(), "direction-walk");
        s.answer(Answer::DirectionWalk {
            description: "White  Birds".into(),
        })
        .unwrap();
        assert_eq!(s.prompt, Some(Prompt::FavoriteLetter));
        let err = s.answer(Answer::Pin { pin: "1234".into() }).unwrap_err();
        assert!(matches!(err, WizardError::Validation(_)));
        assert_eq!(s.step, 1);
        s.answer(Answer::FavoriteLetter { letter: 'e' }).unwrap();
        s.answer(Answer::PolicyChoice {
            policy: DiagonalPolicy::CANONICAL,
        })
        .unwrap();
        assert!(s.is_complete());
        assert_eq!(s.result.as_ref().unwrap().password, "e4cdgtaqw3");
        assert_eq!(s.answer(Answer::FavoriteLetter { letter: 'a' }), Err(WizardError::Completed));
    }

    #[test]
    fn song_session_with_ties_and_shifts() {
        let mut s = WizardSession::new(SchemeId::SongPassword, "flipkart", ctx()).unwrap();
        assert_eq!(s.prompt, Some(Prompt::Pin));
        assert!(s.answer(Answer::Pin { pin: "381".into() }).is_err());
        assert!(s.answer(Answer::Pin { pin: "38a9".into() }).is_err());
        s.answer(Answer::Pin { pin: "3819".into() }).unwrap();
        assert_eq!(
            s.prompt,
            Some(Prompt::SongWords {
                mnemonic: "fpkt".into(),
                positions: [3, 8, 1, 9],
            })
        );
        let songs = ["Fade", "Panama", "King of Mars", "Teddy Boy"].map(String::from).to_vec();
        let bad = Answer::SongWords {
            songs: ["Panama", "Fade", "King of Mars", "Teddy Boy"].map(String::from).to_vec(),
            words: ["go", "be", "my", "sky"].map(String::from).to_vec(),
        };
        assert!(s.answer(bad).is_err());
        s.answer(Answer::SongWords {
            songs,
            words: ["go", "be", "my", "sky"].map(String::from).to_vec(),
        })
        .unwrap();
        let Some(Prompt::TiebreakChoice { vowel, candidates }) = s.prompt.clone() else { panic!("{:?}", s.prompt) };
        assert_eq!(vowel, 'o');
        assert!(s.answer(Answer::TiebreakChoice { choice: '!' }).is_err());
        s.answer(Answer::TiebreakChoice { choice: candidates[0] }).unwrap();
        s.answer(Answer::TiebreakChoice { choice: '$' }).unwrap();
        assert_eq!(
            s.prompt,
            Some(Prompt::ShiftChoice {
                text: "go(be$mysky".into(),
                round: 0
            })
        );
        assert!(s.answer(Answer::ShiftChoice { positions: [0, 0, 1] }).is_err());
        s.answer(Answer::ShiftChoice { positions: [0, 1, 2] }).unwrap();
        assert_eq!(
            s.prompt,
            Some(Prompt::ShiftChoice {
                text: "be$myskygo(".into(),
                round: 1
            })
        );
        s.answer(Answer::ShiftChoice { positions: [0, 1, 2] }).unwrap();
        assert_eq!(s.result.as_ref().unwrap().password, "ykg(e");
    }

    #[test]
    fn scrambled_box_session_replays() {
        let mut s = WizardSession::new(SchemeId::ScrambledBox, "gmail", ctx()).unwrap();
        s.answer(Answer::FreeWord { text: "Cinderella".into() }).unwrap();
        let elements = [ElementKind::Sad, ElementKind::Happy, ElementKind::ForwardEvent, ElementKind::MemorableCharacter];
        assert!(s
            .answer(Answer::StoryElements {
                elements: vec![StoryElement { kind: ElementKind::Sad, ordinal: 1 }],
            })
            .is_err());
        s.answer(Answer::StoryElements {
            elements: elements
                .iter()
                .zip(1u8..)
                .map(|(&kind, ordinal)| StoryElement { kind, ordinal })
                .collect(),
        })
        .unwrap();
        for size in 1..=4usize {
            let Some(Prompt::BlockChoice { max_row, sbox, .. }) = s.prompt.clone() else { panic!() };
            assert_eq!(max_row, 10 - size);
            assert_eq!(sbox.len(), 10);
            assert!(s.answer(Answer::BlockChoice { row: 10, col: 0 }).is_err());
            s.answer(Answer::BlockChoice { row: size, col: 2 }).unwrap();
        }
        assert_eq!(s.prompt, Some(Prompt::FreeWord { field: FreeField::Connection }));
        assert!(s.answer(Answer::FreeWord { text: "glass 2".into() }).is_err());
        s.answer(Answer::FreeWord { text: "shirt".into() }).unwrap();
        let out = s.result.clone().unwrap();
        let Trace::ScrambledBox(t) = &out.trace else { panic!() };
        assert_eq!(t.coords, vec![(1, 9), (8, 0), (9, 0), (1, 8), (2, 0)]);
        assert_eq!(out.replay(&KeyboardLayout::qwerty()).unwrap(), out);
    }

    #[test]
    fn sentence_session_and_recall() {
        let mut s = WizardSession::new(SchemeId::InternalSentence, "bank", ctx()).unwrap();
        s.answer(Answer::FreeWord { text: "quokka".into() }).unwrap();
        assert!(s.answer(Answer::FreeWord { text: "my bank is big".into() }).is_err());
        assert_eq!(s.practice("x"), Err(WizardError::Incomplete));
        s.answer(Answer::FreeWord {
            text: "my bank hides a quokka".into(),
        })
        .unwrap();
        assert_eq!(s.practice("my bank hides a quokka").unwrap().outcome, RecallOutcome::Complete);
        assert_eq!(s.practice("").unwrap().outcome, RecallOutcome::Failed);
        assert_eq!(s.recall.len(), 2);
    }

    #[test]
    fn empty_website_is_rejected() {
        assert!(WizardSession::new(SchemeId::MemoryPalace, "!!", ctx()).is_err());
    }
}
