//! CSV import/export at the edges of the record store.

use std::collections::HashMap;
use std::io::{Read, Write};

use chrono::{DateTime, Utc};
use serde::{Deserialize, Serialize};

use super::records::{PasswordRecord, RecallAttempt, SourceKind};
use super::CorpusError;

/// Which CSV header names carry which record fields. `scheme` and `password`
/// are mandatory; the rest are optional.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColumnMapping {
    pub scheme: String,
    pub password: String,
    pub id: Option<String>,
    pub website: Option<String>,
    pub recalled: Option<String>,
    pub difficulty: Option<String>,
    pub education_level: Option<String>,
    pub created_at: Option<String>,
}

impl ColumnMapping {
    pub fn minimal(scheme: &str, password: &str) -> Self {
        Self {
            scheme: scheme.into(),
            password: password.into(),
            id: None,
            website: None,
            recalled: None,
            difficulty: None,
            education_level: None,
            created_at: None,
        }
    }
}

impl Default for ColumnMapping {
    /// The headers written by [`export_csv`].
    fn default() -> Self {
        Self {
            scheme: "scheme".into(),
            password: "password".into(),
            id: Some("id".into()),
            website: Some("website".into()),
            recalled: Some("recalled".into()),
            difficulty: Some("difficulty".into()),
            education_level: Some("education_level".into()),
            created_at: Some("created_at".into()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowDiagnostic {
    /// 1-based data row (the header is row 0).
    pub row: usize,
    pub message: String,
}

#[derive(Debug, Default)]
pub struct ImportOutcome {
    pub records: Vec<PasswordRecord>,
    pub rejected: Vec<RowDiagnostic>,
}

pub fn import_survey_csv<R: Read>(reader: R, mapping: &ColumnMapping) -> Result<ImportOutcome, CorpusError> {
    let mut csv = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
    let headers = csv.headers()?.clone();
    let position: HashMap<&str, usize> = headers.iter().enumerate().map(|(i, h)| (h, i)).collect();
    let required = |name: &str| -> Result<usize, CorpusError> {
        position
            .get(name)
            .copied()
            .ok_or_else(|| CorpusError::Schema(format!("missing mandatory column {name:?}")))
    };
    let optional = |name: &Option<String>| -> Result<Option<usize>, CorpusError> {
        match name {
            None => Ok(None),
            Some(n) => position
                .get(n.as_str())
                .copied()
                .map(Some)
                .ok_or_else(|| CorpusError::Schema(format!("mapped column {n:?} not in header"))),
        }
    };
    let scheme_col = required(&mapping.scheme)?;
    let password_col = required(&mapping.password)?;
    let id_col = optional(&mapping.id)?;
    let website_col = optional(&mapping.website)?;
    let recalled_col = optional(&mapping.recalled)?;
    let difficulty_col = optional(&mapping.difficulty)?;
    let education_col = optional(&mapping.education_level)?;
    let created_col = optional(&mapping.created_at)?;

    let mut out = ImportOutcome::default();
    for (i, row) in csv.records().enumerate() {
        let row_no = i + 1;
        let reject = |message: String| RowDiagnostic { row: row_no, message };
        let row = match row {
            Ok(r) => r,
            Err(e) => {
                out.rejected.push(reject(e.to_string()));
                continue;
            }
        };
        let cell = |col: Option<usize>| col.and_then(|c| row.get(c)).filter(|s| !s.is_empty());

        let parsed: Result<PasswordRecord, String> = (|| {
            let id = cell(id_col).map(str::to_string).unwrap_or_else(|| format!("csv-{row_no}"));
            let created_at: DateTime<Utc> = match cell(created_col) {
                Some(s) => s.parse().map_err(|e| format!("bad created_at {s:?}: {e}"))?,
                None => Utc::now(),
            };
            let mut record = PasswordRecord::new(
                id,
                cell(Some(scheme_col)).ok_or("empty scheme")?,
                cell(website_col).unwrap_or_default(),
                row.get(password_col).unwrap_or_default(),
                SourceKind::Human {
                    session: format!("csv-row-{row_no}"),
                },
            );
            record.created_at = created_at;
            if let Some(s) = cell(difficulty_col) {
                record.difficulty = Some(s.parse().map_err(|_| format!("difficulty {s:?} is not an integer"))?);
            }
            if let Some(s) = cell(education_col) {
                record.education_level = Some(s.parse().map_err(|_| format!("education level {s:?} is not an integer"))?);
            }
            if let Some(s) = cell(recalled_col) {
                record.recall_attempts.push(RecallAttempt {
                    remembered: s.to_string(),
                    at: created_at,
                });
            }
            record.validate()?;
            Ok(record)
        })();
        match parsed {
            Ok(r) => out.records.push(r),
            Err(message) => out.rejected.push(reject(message)),
        }
    }
    Ok(out)
}

/// Writes records with the [`ColumnMapping::default`] headers. Only the most
/// recent recall attempt is kept.
pub fn export_csv<W: Write>(records: &[PasswordRecord], writer: W) -> Result<(), CorpusError> {
    let mut csv = csv::Writer::from_writer(writer);
    csv.write_record([
        "id",
        "scheme",
        "website",
        "password",
        "recalled",
        "difficulty",
        "education_level",
        "created_at",
    ])?;
    for r in records {
        let recalled = r.recall_attempts.last().map(|a| a.remembered.clone()).unwrap_or_default();
        csv.write_record([
            r.id.clone(),
            r.scheme.clone(),
            r.website.clone(),
            r.password.clone(),
            recalled,
            r.difficulty.map(|d| d.to_string()).unwrap_or_default(),
            r.education_level.map(|d| d.to_string()).unwrap_or_default(),
            r.created_at.to_rfc3339_opts(chrono::SecondsFormat::AutoSi, true),
        ])?;
    }
    csv.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_two_column_csv() {
        let data = "method,pw\nsong-password,tsto)mhS\ninternal-sentence,my cat sleeps\n";
        let out = import_survey_csv(data.as_bytes(), &ColumnMapping::minimal("method", "pw")).unwrap();
        assert_eq!(out.records.len(), 2);
        assert!(out.rejected.is_empty());
        let r = &out.records[0];
        assert_eq!((r.scheme.as_str(), r.password.as_str()), ("song-password", "tsto)mhS"));
        assert!(r.difficulty.is_none() && r.education_level.is_none() && r.recall_attempts.is_empty());
    }

    #[test]
    fn bad_difficulty_rejected_with_row() {
        let data = "scheme,password,difficulty\nmemory-palace,abc,3\nmemory-palace,def,9\n";
        let mut mapping = ColumnMapping::minimal("scheme", "password");
        mapping.difficulty = Some("difficulty".into());
        let out = import_survey_csv(data.as_bytes(), &mapping).unwrap();
        assert_eq!(out.records.len(), 1);
        assert_eq!(out.rejected.len(), 1);
        assert_eq!(out.rejected[0].row, 2);
        assert!(out.rejected[0].message.contains("difficulty"));
    }

    #[test]
    fn missing_mandatory_column() {
        let err = import_survey_csv("scheme,pw\na,b\n".as_bytes(), &ColumnMapping::minimal("scheme", "password")).unwrap_err();
        assert!(matches!(err, CorpusError::Schema(_)));
    }

    #[test]
    fn export_then_import_matches() {
        let mut a = PasswordRecord::new("a", "scrambled-box", "amazon", "v'tu_", SourceKind::Human { session: "csv-row-1".into() });
        a.created_at = "2024-03-01T10:00:00Z".parse().unwrap();
        a.difficulty = Some(6);
        a.education_level = Some(2);
        a.recall_attempts.push(RecallAttempt {
            remembered: "v'tu".into(),
            at: a.created_at,
        });
        let mut b = PasswordRecord::new("b", "song-password", "", "x,y\"z", SourceKind::Human { session: "csv-row-2".into() });
        b.created_at = "2024-03-02T11:30:00Z".parse().unwrap();

        let mut buf = Vec::new();
        export_csv(&[a.clone(), b.clone()], &mut buf).unwrap();
        let back = import_survey_csv(buf.as_slice(), &ColumnMapping::default()).unwrap();
        assert!(back.rejected.is_empty(), "{:?}", back.rejected);
        assert_eq!(back.records, vec![a, b]);
    }
}
