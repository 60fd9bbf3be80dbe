use std::collections::{BTreeMap, HashSet};
use std::fs::OpenOptions;
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use chrono::{DateTime, Utc};
use serde::{Deserialize, Serialize};

use super::CorpusError;

/// Where a password came from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum SourceKind {
    Simulated { seed: u64 },
    Human { session: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecallAttempt {
    pub remembered: String,
    pub at: DateTime<Utc>,
}

/// One generation event, optionally with later recall attempts and survey answers.
///
/// Fields this version does not know about are kept in `extra` and written back
/// unchanged.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PasswordRecord {
    pub id: String,
    pub scheme: String,
    #[serde(default)]
    pub website: String,
    pub password: String,
    pub source: SourceKind,
    pub created_at: DateTime<Utc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub recall_attempts: Vec<RecallAttempt>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub difficulty: Option<u8>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub education_level: Option<u32>,
    #[serde(flatten)]
    pub extra: BTreeMap<String, serde_json::Value>,
}

impl PasswordRecord {
    pub fn new(id: impl Into<String>, scheme: &str, website: &str, password: &str, source: SourceKind) -> Self {
        Self {
            id: id.into(),
            scheme: scheme.to_string(),
            website: website.to_string(),
            password: password.to_string(),
            source,
            created_at: Utc::now(),
            recall_attempts: Vec::new(),
            difficulty: None,
            education_level: None,
            extra: BTreeMap::new(),
        }
    }

    pub fn validate(&self) -> Result<(), String> {
        if self.password.is_empty() {
            return Err("password is empty".into());
        }
        if let Some(d) = self.difficulty {
            if !(1..=7).contains(&d) {
                return Err(format!("difficulty {d} outside 1-7"));
            }
        }
        if self.recall_attempts.windows(2).any(|w| w[0].at > w[1].at) {
            return Err("recall attempts are not in timestamp order".into());
        }
        Ok(())
    }

    pub fn to_line(&self) -> String {
        serde_json::to_string(self).expect("records always serialize")
    }
}

#[derive(Debug, Default)]
pub struct LoadOutcome {
    pub records: Vec<PasswordRecord>,
    pub errors: Vec<CorpusError>,
}

/// An append-only JSON-lines file of [`PasswordRecord`]s.
#[derive(Debug, Clone)]
pub struct RecordStore {
    path: PathBuf,
}

impl RecordStore {
    pub fn new(path: impl Into<PathBuf>) -> Self {
        Self { path: path.into() }
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    /// Appends one record as a single write so concurrent readers never see half a line.
    pub fn append(&self, record: &PasswordRecord) -> Result<(), CorpusError> {
        record.validate().map_err(|message| CorpusError::Invalid { message })?;
        if let Some(parent) = self.path.parent() {
            if !parent.as_os_str().is_empty() {
                std::fs::create_dir_all(parent)?;
            }
        }
        let mut file = OpenOptions::new().create(true).append(true).open(&self.path)?;
        let mut line = record.to_line();
        line.push('\n');
        file.write_all(line.as_bytes())?;
        Ok(())
    }

    pub fn save_all(&self, records: &[PasswordRecord]) -> Result<(), CorpusError> {
        let mut out = String::new();
        for r in records {
            out.push_str(&r.to_line());
            out.push('\n');
        }
        std::fs::write(&self.path, out)?;
        Ok(())
    }

    /// Reads every line; bad lines are reported with their 1-based line number
    /// and do not stop the rest of the file from loading. A missing file is empty.
    pub fn load(&self) -> Result<LoadOutcome, CorpusError> {
        if !self.path.exists() {
            return Ok(LoadOutcome::default());
        }
        let file = std::fs::File::open(&self.path)?;
        Ok(parse_lines(BufReader::new(file)))
    }
}

pub fn parse_lines<R: BufRead>(reader: R) -> LoadOutcome {
    let mut out = LoadOutcome::default();
    let mut ids = HashSet::new();
    for (i, line) in reader.lines().enumerate() {
        let line_no = i + 1;
        let line = match line {
            Ok(l) => l,
            Err(e) => {
                out.errors.push(CorpusError::Parse {
                    line: line_no,
                    message: e.to_string(),
                });
                continue;
            }
        };
        if line.trim().is_empty() {
            continue;
        }
        let parsed = serde_json::from_str::<PasswordRecord>(&line)
            .map_err(|e| e.to_string())
            .and_then(|r| r.validate().map(|_| r));
        match parsed {
            Ok(r) if !ids.insert(r.id.clone()) => out.errors.push(CorpusError::Parse {
                line: line_no,
                message: format!("duplicate record id {:?}", r.id),
            }),
            Ok(r) => out.records.push(r),
            Err(message) => out.errors.push(CorpusError::Parse { line: line_no, message }),
        }
    }
    out
}
