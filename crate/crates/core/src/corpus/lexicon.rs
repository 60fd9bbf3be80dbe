use std::collections::{BTreeMap, HashSet};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::CorpusError;

/// An ordered list of unique lowercase words.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lexicon {
    pub name: String,
    words: Vec<String>,
    pub provenance: String,
}

impl Lexicon {
    pub fn new(name: &str, words: Vec<String>, provenance: &str) -> Result<Self, CorpusError> {
        let mut seen = HashSet::new();
        for (i, w) in words.iter().enumerate() {
            if w.is_empty() || !w.chars().all(|c| c.is_ascii_lowercase()) {
                return Err(CorpusError::InvalidEntry {
                    corpus: name.to_string(),
                    line: i + 1,
                    message: format!("{w:?} is not lowercase letters only"),
                });
            }
            if !seen.insert(w.as_str()) {
                return Err(CorpusError::InvalidEntry {
                    corpus: name.to_string(),
                    line: i + 1,
                    message: format!("duplicate entry {w:?}"),
                });
            }
        }
        Ok(Self {
            name: name.to_string(),
            words,
            provenance: provenance.to_string(),
        })
    }

    /// One entry per line; blank lines and `#` comments are skipped.
    pub fn parse(name: &str, text: &str, provenance: &str) -> Result<Self, CorpusError> {
        let mut words = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if !line.chars().all(|c| c.is_ascii_lowercase()) {
                return Err(CorpusError::InvalidEntry {
                    corpus: name.to_string(),
                    line: i + 1,
                    message: format!("{line:?} is not lowercase letters only"),
                });
            }
            words.push(line.to_string());
        }
        Self::new(name, words, provenance)
    }

    pub fn load(path: &Path, provenance: &str) -> Result<Self, CorpusError> {
        let text = std::fs::read_to_string(path)?;
        let name = path.file_stem().and_then(|s| s.to_str()).unwrap_or("lexicon");
        Self::parse(name, &text, provenance)
    }

    pub fn words(&self) -> &[String] {
        &self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn contains(&self, word: &str) -> bool {
        self.words.iter().any(|w| w == word)
    }
}

/// Song title → ordered lyric words.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SongLibrary {
    songs: BTreeMap<String, Vec<String>>,
}

impl SongLibrary {
    pub fn insert(&mut self, title: &str, lyrics: &str) {
        let words = lyrics.split_whitespace().map(str::to_string).collect();
        self.songs.insert(title.to_string(), words);
    }

    /// Bundled format: one `Title: lyric words ...` line per song.
    pub fn parse_bundle(text: &str) -> Result<Self, CorpusError> {
        let mut lib = Self::default();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (title, lyrics) = line.split_once(':').ok_or_else(|| CorpusError::InvalidEntry {
                corpus: "songs".into(),
                line: i + 1,
                message: "expected `Title: words`".into(),
            })?;
            lib.insert(title.trim(), lyrics);
        }
        Ok(lib)
    }

    /// One file per song; the file stem is the title, contents are whitespace-delimited words.
    pub fn load_dir(dir: &Path) -> Result<Self, CorpusError> {
        let mut lib = Self::default();
        let mut entries: Vec<_> = std::fs::read_dir(dir)?.collect::<Result<_, _>>()?;
        entries.sort_by_key(|e| e.path());
        for entry in entries {
            let path = entry.path();
            if !path.is_file() {
                continue;
            }
            let title = path.file_stem().and_then(|s| s.to_str()).unwrap_or_default().to_string();
            let text = std::fs::read_to_string(&path)?;
            lib.insert(&title, &text);
        }
        Ok(lib)
    }

    pub fn titles(&self) -> impl Iterator<Item = &str> {
        self.songs.keys().map(String::as_str)
    }

    pub fn words(&self, title: &str) -> Option<&[String]> {
        self.songs.get(title).map(Vec::as_slice)
    }

    pub fn len(&self) -> usize {
        self.songs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.songs.is_empty()
    }

    /// Titles whose first letter matches `letter`, case-insensitively.
    pub fn starting_with(&self, letter: char) -> Vec<&str> {
        let letter = letter.to_ascii_lowercase();
        self.titles()
            .filter(|t| t.chars().next().map(|c| c.to_ascii_lowercase()) == Some(letter))
            .collect()
    }
}
