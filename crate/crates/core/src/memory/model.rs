use std::sync::{Arc, OnceLock};

use rand::seq::index::sample;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::rng::derive_rng;
use super::walk::{walk_grid, Cell, Heading, Walk};
use super::{ElementKind, MemoryError, MemorySource, StoryElement};
use crate::corpus::{Lexicon, SongLibrary};
use crate::keyboard::{DiagonalPolicy, Side};

/// Words a song must have so that every pin digit (0 meaning the 10th word) exists.
pub const MIN_SONG_WORDS: usize = 10;

#[derive(Clone, Copy)]
enum Slot {
    Det,
    Website,
    Verb,
    Modifier,
    Rare,
}

const SENTENCE_TEMPLATES: [[Slot; 5]; 3] = [
    [Slot::Det, Slot::Website, Slot::Verb, Slot::Modifier, Slot::Rare],
    [Slot::Det, Slot::Rare, Slot::Verb, Slot::Modifier, Slot::Website],
    [Slot::Det, Slot::Modifier, Slot::Rare, Slot::Verb, Slot::Website],
];

/// The word lists a simulated memory draws from.
#[derive(Debug, Clone, PartialEq)]
pub struct Corpora {
    pub nouns: Lexicon,
    pub rare: Lexicon,
    pub common: Lexicon,
    pub stories: Lexicon,
    pub songs: SongLibrary,
}

impl Corpora {
    /// The lists shipped with the crate.
    pub fn bundled() -> Arc<Corpora> {
        static BUNDLED: OnceLock<Arc<Corpora>> = OnceLock::new();
        BUNDLED
            .get_or_init(|| {
                let lex = |name, text, note| Lexicon::parse(name, text, note).expect("bundled lexicon is valid");
                Arc::new(Corpora {
                    nouns: lex("nouns", include_str!("../../data/nouns.txt"), "household objects and landmarks"),
                    rare: lex("rare", include_str!("../../data/rare.txt"), "uncommon words from several languages"),
                    common: lex("common", include_str!("../../data/common.txt"), "most frequent English words"),
                    stories: lex("stories", include_str!("../../data/stories.txt"), "well-known stories"),
                    songs: SongLibrary::parse_bundle(include_str!("../../data/songs.txt")).expect("bundled songs are valid"),
                })
            })
            .clone()
    }

    fn validate(&self) -> Result<(), MemoryError> {
        for lex in [&self.nouns, &self.rare, &self.common, &self.stories] {
            if lex.is_empty() {
                return Err(MemoryError::Config(format!("{} corpus is empty", lex.name)));
            }
        }
        if self.songs.is_empty() {
            return Err(MemoryError::Config("song library is empty".into()));
        }
        Ok(())
    }
}

/// Tunable shape of a simulated memory. Together with the seed this is all
/// that needs to be stored; everything else is recomputed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct ModelConfig {
    pub grid_width: usize,
    pub grid_height: usize,
    /// Walk step lengths are drawn from `1..=max_step`.
    pub max_step: usize,
    /// Nouns in each location description.
    pub words_per_location: usize,
    /// Size of each personal word pool used when composing sentences.
    pub vocabulary_size: usize,
}

impl Default for ModelConfig {
    fn default() -> Self {
        Self {
            grid_width: 12,
            grid_height: 12,
            max_step: 3,
            words_per_location: 2,
            vocabulary_size: 3,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelSpec {
    pub seed: u64,
    #[serde(default)]
    pub config: ModelConfig,
}

/// A seeded simulation of one person's memory.
///
/// Construction draws every per-person trait from a ChaCha8 stream seeded with
/// `seed`, in a fixed order. Questions that take arguments use a separate
/// stream per question (see [`derive_rng`]).
#[derive(Debug, Clone, PartialEq)]
pub struct MemoryModel {
    seed: u64,
    config: ModelConfig,
    corpora: Arc<Corpora>,
    labels: Vec<String>,
    start: Cell,
    heading: Heading,
    step: usize,
    favorite: char,
    policy: DiagonalPolicy,
    pin: [u8; 4],
    base: u8,
    story: String,
    rare_word: String,
    determiners: [&'static str; 2],
    verbs: Vec<String>,
    modifiers: Vec<String>,
    template: usize,
}

impl MemoryModel {
    pub fn new(seed: u64, corpora: Arc<Corpora>, config: ModelConfig) -> Result<Self, MemoryError> {
        corpora.validate()?;
        if config.grid_width < 4 || config.grid_height < 4 {
            return Err(MemoryError::Config("location grid must be at least 4x4".into()));
        }
        if config.max_step == 0 || config.words_per_location == 0 || config.vocabulary_size == 0 {
            return Err(MemoryError::Config("step, words per location and vocabulary size must be positive".into()));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let nouns = corpora.nouns.words();
        let labels = (0..config.grid_width * config.grid_height)
            .map(|_| {
                (0..config.words_per_location)
                    .map(|_| nouns.choose(&mut rng).unwrap().as_str())
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect();
        let start = Cell {
            row: rng.gen_range(0..config.grid_height),
            col: rng.gen_range(0..config.grid_width),
        };
        let heading = *Heading::ALL.choose(&mut rng).unwrap();
        let step = rng.gen_range(1..=config.max_step);
        let favorite = (b'a' + rng.gen_range(0..26u8)) as char;
        let policy = DiagonalPolicy {
            vowel_side: if rng.gen_bool(0.5) { Side::Left } else { Side::Right },
            rows_up: rng.gen_range(1..=2),
            use_shifted: rng.gen_bool(0.5),
        };
        let pin = [0; 4].map(|_: u8| rng.gen_range(0..10u8));
        let base = rng.gen_range(0..=1u8);
        let story = corpora.stories.words().choose(&mut rng).unwrap().clone();
        let rare_word = corpora.rare.words().choose(&mut rng).unwrap().clone();
        let determiners = if rng.gen_bool(0.5) { ["my", "the"] } else { ["the", "my"] };
        let common = corpora.common.words();
        let verbs = common.choose_multiple(&mut rng, config.vocabulary_size).cloned().collect();
        let modifiers = common.choose_multiple(&mut rng, config.vocabulary_size).cloned().collect();
        let template = rng.gen_range(0..SENTENCE_TEMPLATES.len());
        Ok(Self {
            seed,
            config,
            corpora,
            labels,
            start,
            heading,
            step,
            favorite,
            policy,
            pin,
            base,
            story,
            rare_word,
            determiners,
            verbs,
            modifiers,
            template,
        })
    }

    /// Bundled corpora and default configuration.
    pub fn with_seed(seed: u64) -> Self {
        Self::new(seed, Corpora::bundled(), ModelConfig::default()).expect("bundled corpora are valid")
    }

    pub fn from_spec(spec: &ModelSpec, corpora: Arc<Corpora>) -> Result<Self, MemoryError> {
        Self::new(spec.seed, corpora, spec.config)
    }

    pub fn spec(&self) -> ModelSpec {
        ModelSpec {
            seed: self.seed,
            config: self.config,
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn corpora(&self) -> &Corpora {
        &self.corpora
    }

    pub fn location_label(&self, cell: Cell) -> Option<&str> {
        if cell.row >= self.config.grid_height || cell.col >= self.config.grid_width {
            return None;
        }
        self.labels.get(cell.row * self.config.grid_width + cell.col).map(String::as_str)
    }

    pub fn start(&self) -> (Cell, Heading, usize) {
        (self.start, self.heading, self.step)
    }

    fn rng(&self, tag: &str, parts: &[&[u8]]) -> ChaCha8Rng {
        derive_rng(self.seed, tag, parts)
    }
}

impl MemorySource for MemoryModel {
    fn walk(&self, website: &str) -> Result<Walk, MemoryError> {
        walk_grid(
            website,
            self.config.grid_width,
            self.config.grid_height,
            self.start,
            self.heading,
            self.step,
        )
    }

    fn describe_location(&self, walk: &Walk) -> Result<String, MemoryError> {
        let cell = walk.end.ok_or(MemoryError::InvalidAnswer("walk has no end cell".into()))?;
        self.location_label(cell)
            .map(str::to_string)
            .ok_or_else(|| MemoryError::InvalidAnswer(format!("cell {cell:?} is outside the location")))
    }

    fn favorite_letter(&self) -> Result<char, MemoryError> {
        Ok(self.favorite)
    }

    fn diagonal_policy(&self) -> Result<DiagonalPolicy, MemoryError> {
        Ok(self.policy)
    }

    fn pin(&self) -> Result<[u8; 4], MemoryError> {
        Ok(self.pin)
    }

    fn songs_for(&self, mnemonic: &str) -> Result<Vec<String>, MemoryError> {
        let songs = &self.corpora.songs;
        let all: Vec<&str> = songs.titles().collect();
        let mut chosen: Vec<String> = Vec::with_capacity(4);
        for (i, letter) in mnemonic.chars().enumerate() {
            let mut rng = self.rng("song", &[letter.to_string().as_bytes(), &(i as u64).to_le_bytes()]);
            // a repeated letter still gets a different song when the library has one
            let fresh = |pool: &[&'_ str]| -> Vec<String> {
                pool.iter().filter(|t| !chosen.iter().any(|c| c == *t)).map(|t| t.to_string()).collect()
            };
            let by_letter = songs.starting_with(letter);
            let pool = [fresh(&by_letter), fresh(&all), all.iter().map(|t| t.to_string()).collect()]
                .into_iter()
                .find(|p| !p.is_empty())
                .expect("library is non-empty");
            let pick = pool.choose(&mut rng).expect("pool is non-empty").clone();
            chosen.push(pick);
        }
        Ok(chosen)
    }

    fn song_word(&self, song: &str, k: usize) -> Result<String, MemoryError> {
        let words = self
            .corpora
            .songs
            .words(song)
            .ok_or_else(|| MemoryError::UnknownSong(song.to_string()))?;
        let needed = k.max(MIN_SONG_WORDS);
        if words.len() < needed || k == 0 {
            return Err(MemoryError::SongTooShort {
                song: song.to_string(),
                words: words.len(),
                needed,
            });
        }
        Ok(words[k - 1].clone())
    }

    fn special_tiebreak(&self, vowel: char, candidates: &[char]) -> Result<char, MemoryError> {
        let mut rng = self.rng("tiebreak", &[vowel.to_ascii_lowercase().to_string().as_bytes()]);
        candidates
            .choose(&mut rng)
            .copied()
            .ok_or_else(|| MemoryError::InvalidAnswer("no tie candidates".into()))
    }

    fn shift_group(&self, length: usize, round: usize) -> Result<[usize; 3], MemoryError> {
        if length < 3 {
            return Err(MemoryError::InvalidAnswer(format!("cannot move three characters of a {length}-character string")));
        }
        let mut rng = self.rng("shift", &[&(length as u64).to_le_bytes(), &(round as u64).to_le_bytes()]);
        let mut picks = sample(&mut rng, length, 3).into_vec();
        picks.sort_unstable();
        Ok([picks[0], picks[1], picks[2]])
    }

    fn story(&self) -> Result<String, MemoryError> {
        Ok(self.story.clone())
    }

    fn story_elements(&self, story: &str) -> Result<[StoryElement; 4], MemoryError> {
        let mut rng = self.rng("elements", &[story.as_bytes()]);
        Ok([1u8, 2, 3, 4].map(|ordinal| StoryElement {
            kind: *ElementKind::ALL.choose(&mut rng).unwrap(),
            ordinal,
        }))
    }

    fn block_choice(&self, size: usize) -> Result<(usize, usize), MemoryError> {
        if !(1..=10).contains(&size) {
            return Err(MemoryError::InvalidAnswer(format!("block size {size} does not fit the box")));
        }
        let mut rng = self.rng("block", &[&(size as u64).to_le_bytes()]);
        Ok((rng.gen_range(0..=10 - size), rng.gen_range(0..=10 - size)))
    }

    fn connection_word(&self, story: &str, website: &str) -> Result<String, MemoryError> {
        let mut rng = self.rng("connect", &[story.as_bytes(), website.as_bytes()]);
        let count = rng.gen_range(1..=2);
        let words: Vec<&str> = (0..count)
            .map(|_| self.corpora.nouns.words().choose(&mut rng).unwrap().as_str())
            .collect();
        Ok(words.join(" "))
    }

    fn rare_word(&self) -> Result<String, MemoryError> {
        Ok(self.rare_word.clone())
    }

    /// One of a few sentence shapes built from a small personal vocabulary.
    /// Each person favours one shape and one determiner, so their sentences
    /// share habits.
    fn sentence(&self, rare_word: &str, website: &str) -> Result<String, MemoryError> {
        let mut rng = self.rng("sentence", &[rare_word.as_bytes(), website.as_bytes()]);
        let det = if rng.gen_bool(0.8) { self.determiners[0] } else { self.determiners[1] };
        let verb = self.verbs.choose(&mut rng).unwrap();
        let modifier = self.modifiers.choose(&mut rng).unwrap();
        let template = if rng.gen_bool(0.8) {
            self.template
        } else {
            rng.gen_range(0..SENTENCE_TEMPLATES.len())
        };
        let words = SENTENCE_TEMPLATES[template].map(|slot| match slot {
            Slot::Det => det,
            Slot::Website => website,
            Slot::Verb => verb,
            Slot::Modifier => modifier,
            Slot::Rare => rare_word,
        });
        Ok(words.join(" "))
    }

    fn indexing_base(&self) -> Result<u8, MemoryError> {
        Ok(self.base)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::memory::normalize_website;

    #[test]
    fn same_seed_same_model() {
        assert_eq!(MemoryModel::with_seed(1), MemoryModel::with_seed(1));
    }

    #[test]
    fn empty_noun_corpus_is_rejected() {
        let mut corpora = (*Corpora::bundled()).clone();
        corpora.nouns = Lexicon::new("nouns", vec![], "").unwrap();
        let err = MemoryModel::new(1, Arc::new(corpora), ModelConfig::default()).unwrap_err();
        assert!(matches!(err, MemoryError::Config(_)));
    }

    #[test]
    fn small_grid_is_rejected() {
        let config = ModelConfig {
            grid_width: 3,
            ..ModelConfig::default()
        };
        assert!(MemoryModel::new(1, Corpora::bundled(), config).is_err());
    }

    #[test]
    fn different_seeds_differ() {
        let differing = (0..1000u64)
            .filter(|&i| {
                let (a, b) = (MemoryModel::with_seed(2 * i + 1), MemoryModel::with_seed(2 * i + 2));
                a.pin != b.pin || a.labels != b.labels
            })
            .count();
        assert!(differing >= 990, "{differing}");
    }

    #[test]
    fn labels_are_noun_words() {
        let m = MemoryModel::with_seed(3);
        let walk = m.walk("gmail").unwrap();
        let label = m.describe_location(&walk).unwrap();
        assert!(!label.is_empty());
        for w in label.split(' ') {
            assert!(m.corpora().nouns.contains(w), "{w}");
        }
    }

    #[test]
    fn same_vowel_pattern_same_end_cell() {
        let m = MemoryModel::with_seed(11);
        let a = m.walk(&normalize_website("gmail").unwrap()).unwrap();
        let b = m.walk("bqeox").unwrap();
        assert_eq!(a.trace, b.trace);
        assert_eq!(a.end, b.end);
    }

    #[test]
    fn queries_are_repeatable() {
        let m = MemoryModel::with_seed(5);
        assert_eq!(m.songs_for("fpkt").unwrap(), m.songs_for("fpkt").unwrap());
        assert_eq!(m.shift_group(17, 1).unwrap(), m.shift_group(17, 1).unwrap());
        assert_eq!(m.sentence("sonder", "amazon").unwrap(), m.sentence("sonder", "amazon").unwrap());
        assert_eq!(m.special_tiebreak('o', &['(', ')']).unwrap(), m.special_tiebreak('o', &['(', ')']).unwrap());
    }

    #[test]
    fn songs_start_with_their_letter() {
        let m = MemoryModel::with_seed(9);
        let songs = m.songs_for("fpkt").unwrap();
        for (song, letter) in songs.iter().zip("fpkt".chars()) {
            assert!(song.to_lowercase().starts_with(letter), "{song}");
            assert!(m.song_word(song, 10).is_ok());
        }
        assert!(matches!(m.song_word("Fade", 40), Err(MemoryError::SongTooShort { .. })));
        assert!(matches!(m.song_word("No Such Song", 1), Err(MemoryError::UnknownSong(_))));
    }

    #[test]
    fn shift_groups_are_distinct_and_in_range() {
        let m = MemoryModel::with_seed(4);
        for len in 3..40 {
            for round in 0..2 {
                let g = m.shift_group(len, round).unwrap();
                assert!(g[0] < g[1] && g[1] < g[2] && g[2] < len);
            }
        }
    }

    #[test]
    fn spec_round_trips_through_json() {
        let m = MemoryModel::with_seed(42);
        let json = serde_json::to_string(&m.spec()).unwrap();
        let spec: ModelSpec = serde_json::from_str(&json).unwrap();
        assert_eq!(MemoryModel::from_spec(&spec, Corpora::bundled()).unwrap(), m);
    }
}
