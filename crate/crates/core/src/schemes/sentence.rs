use serde::{Deserialize, Serialize};

use super::{PasswordOutput, SchemeError, SchemeId, Trace};
use crate::memory::{normalize_website, MemorySource};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SentenceTrace {
    pub rare_word: String,
    pub sentence: String,
}

/// The password is a sentence tying the website to one rare word.
pub fn internal_sentence_hash<S: MemorySource + ?Sized>(source: &S, website: &str) -> Result<PasswordOutput, SchemeError> {
    let normalized = normalize_website(website)?;
    let rare_word = source.rare_word()?;
    if rare_word.trim().is_empty() {
        return Err(SchemeError::Config("rare word is empty".into()));
    }
    let sentence = source.sentence(&rare_word, &normalized)?;
    let lower = sentence.to_lowercase();
    for needed in [&rare_word, &normalized] {
        if !lower.contains(&needed.to_lowercase()) {
            return Err(SchemeError::SentenceMissing(needed.clone()));
        }
    }
    Ok(PasswordOutput {
        scheme: SchemeId::InternalSentence,
        website: website.to_string(),
        normalized_website: normalized,
        password: sentence.clone(),
        trace: Trace::InternalSentence(SentenceTrace { rare_word, sentence }),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::memory::{MemoryModel, ScriptedAnswers, ScriptedSource};

    #[test]
    fn contains_word_and_website() {
        for seed in 0..50 {
            let m = MemoryModel::with_seed(seed);
            let out = internal_sentence_hash(&m, "Amazon.com").unwrap();
            let Trace::InternalSentence(t) = &out.trace else { panic!() };
            assert!(out.password.contains(&t.rare_word));
            assert!(out.password.contains("amazon"));
            assert!(out.password.contains(' '));
        }
    }

    #[test]
    fn scripted_sentence_must_mention_both() {
        let src = ScriptedSource::new(ScriptedAnswers {
            rare_word: Some("quokka".into()),
            sentence: Some("my bank likes ducks".into()),
            ..Default::default()
        });
        let err = internal_sentence_hash(&src, "bank").unwrap_err();
        assert_eq!(err, SchemeError::SentenceMissing("quokka".into()));

        let ok = ScriptedSource::new(ScriptedAnswers {
            rare_word: Some("quokka".into()),
            sentence: Some("My Bank feeds a quokka".into()),
            ..Default::default()
        });
        assert_eq!(internal_sentence_hash(&ok, "bank").unwrap().password, "My Bank feeds a quokka");
    }
}
