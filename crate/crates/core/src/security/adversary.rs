use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::SecurityError;
use crate::memory::Corpora;

const PRINTABLE: std::ops::RangeInclusive<u8> = b' '..=b'~';

/// A forger in the random-challenge game. It sees `observed`
/// (website, password) pairs of one person and must produce that person's
/// password for `challenge`.
pub trait Adversary {
    fn id(&self) -> AdversaryId;
    fn forge(&self, challenge: &str, observed: &[(String, String)], rng: &mut ChaCha8Rng) -> String;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AdversaryId {
    UniformRandom,
    CharsetAwareRandom,
    DictionarySentence,
    FrequencyReuse,
}

impl AdversaryId {
    pub const ALL: [AdversaryId; 4] = [
        AdversaryId::UniformRandom,
        AdversaryId::CharsetAwareRandom,
        AdversaryId::DictionarySentence,
        AdversaryId::FrequencyReuse,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            AdversaryId::UniformRandom => "uniform_random",
            AdversaryId::CharsetAwareRandom => "charset_aware_random",
            AdversaryId::DictionarySentence => "dictionary_sentence",
            AdversaryId::FrequencyReuse => "frequency_reuse",
        }
    }
}

impl fmt::Display for AdversaryId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for AdversaryId {
    type Err = SecurityError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().replace('-', "_").as_str() {
            "uniform_random" | "uniform" => Ok(AdversaryId::UniformRandom),
            "charset_aware_random" | "charset" => Ok(AdversaryId::CharsetAwareRandom),
            "dictionary_sentence" | "dictionary" => Ok(AdversaryId::DictionarySentence),
            "frequency_reuse" | "reuse" => Ok(AdversaryId::FrequencyReuse),
            other => Err(SecurityError::Config(format!("unknown adversary {other:?}"))),
        }
    }
}

pub fn adversary(id: AdversaryId, corpora: Arc<Corpora>) -> Box<dyn Adversary + Send + Sync> {
    match id {
        AdversaryId::UniformRandom => Box::new(UniformRandom),
        AdversaryId::CharsetAwareRandom => Box::new(CharsetAwareRandom),
        AdversaryId::DictionarySentence => Box::new(DictionarySentence { corpora }),
        AdversaryId::FrequencyReuse => Box::new(FrequencyReuse),
    }
}

fn uniform_guess(rng: &mut ChaCha8Rng) -> String {
    let len = rng.gen_range(8..=16);
    (0..len).map(|_| rng.gen_range(PRINTABLE) as char).collect()
}

/// Printable ASCII, length 8 to 16, uniformly.
#[derive(Debug, Clone, Copy, Default)]
pub struct UniformRandom;

impl Adversary for UniformRandom {
    fn id(&self) -> AdversaryId {
        AdversaryId::UniformRandom
    }

    fn forge(&self, _: &str, _: &[(String, String)], rng: &mut ChaCha8Rng) -> String {
        uniform_guess(rng)
    }
}

/// Random characters from those seen in the observed passwords, at the length
/// of one of them.
#[derive(Debug, Clone, Copy, Default)]
pub struct CharsetAwareRandom;

impl Adversary for CharsetAwareRandom {
    fn id(&self) -> AdversaryId {
        AdversaryId::CharsetAwareRandom
    }

    fn forge(&self, _: &str, observed: &[(String, String)], rng: &mut ChaCha8Rng) -> String {
        let mut pool: Vec<char> = observed.iter().flat_map(|(_, p)| p.chars()).collect();
        pool.sort_unstable();
        pool.dedup();
        let Some((_, template)) = observed.choose(rng) else {
            return uniform_guess(rng);
        };
        (0..template.chars().count()).map(|_| *pool.choose(rng).unwrap()).collect()
    }
}

/// Assumes sentence-shaped passwords built from everyday words around the
/// website name. Learns the person's most frequent word at each position from
/// observed sentences and falls back to common and rare word lists.
#[derive(Debug, Clone)]
pub struct DictionarySentence {
    pub corpora: Arc<Corpora>,
}

impl DictionarySentence {
    const SLOT: &'static str = "\u{0}";

    fn prior(&self, challenge: &str, rng: &mut ChaCha8Rng) -> Vec<String> {
        let common = self.corpora.common.words();
        let det = if rng.gen_bool(0.5) { "my" } else { "the" };
        vec![
            det.to_string(),
            challenge.to_string(),
            common.choose(rng).unwrap().clone(),
            common.choose(rng).unwrap().clone(),
            self.corpora.rare.words().choose(rng).unwrap().clone(),
        ]
    }
}

impl Adversary for DictionarySentence {
    fn id(&self) -> AdversaryId {
        AdversaryId::DictionarySentence
    }

    fn forge(&self, challenge: &str, observed: &[(String, String)], rng: &mut ChaCha8Rng) -> String {
        let sentences: Vec<Vec<String>> = observed
            .iter()
            .filter(|(_, p)| p.contains(' '))
            .map(|(site, p)| {
                p.split(' ')
                    .map(|w| if w.eq_ignore_ascii_case(site) { Self::SLOT.to_string() } else { w.to_string() })
                    .collect()
            })
            .collect();
        let prior = self.prior(challenge, rng);
        if sentences.is_empty() {
            return prior.join(" ");
        }
        let mut lengths: BTreeMap<usize, usize> = BTreeMap::new();
        for s in &sentences {
            *lengths.entry(s.len()).or_default() += 1;
        }
        let length = lengths.iter().max_by_key(|(len, n)| (**n, std::cmp::Reverse(**len))).map(|(l, _)| *l).unwrap();
        (0..length)
            .map(|i| {
                let mut counts: BTreeMap<&str, usize> = BTreeMap::new();
                for s in sentences.iter().filter_map(|s| s.get(i)) {
                    *counts.entry(s.as_str()).or_default() += 1;
                }
                let best = counts.iter().map(|(w, n)| (*n, std::cmp::Reverse(*w))).max().map(|(_, w)| w.0);
                match best {
                    Some(w) if w == Self::SLOT => challenge.to_string(),
                    Some(w) => w.to_string(),
                    None => prior.get(i).cloned().unwrap_or_default(),
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// Bets on password reuse: submits the most frequently observed password.
#[derive(Debug, Clone, Copy, Default)]
pub struct FrequencyReuse;

impl Adversary for FrequencyReuse {
    fn id(&self) -> AdversaryId {
        AdversaryId::FrequencyReuse
    }

    fn forge(&self, _: &str, observed: &[(String, String)], rng: &mut ChaCha8Rng) -> String {
        let mut counts: BTreeMap<&str, usize> = BTreeMap::new();
        for (_, p) in observed {
            *counts.entry(p.as_str()).or_default() += 1;
        }
        match counts.iter().map(|(p, n)| (*n, std::cmp::Reverse(*p))).max() {
            Some((_, p)) => p.0.to_string(),
            None => uniform_guess(rng),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    fn obs(pairs: &[(&str, &str)]) -> Vec<(String, String)> {
        pairs.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect()
    }

    #[test]
    fn ids_parse() {
        for id in AdversaryId::ALL {
            assert_eq!(id.as_str().parse::<AdversaryId>().unwrap(), id);
        }
        assert!(matches!("oracle".parse::<AdversaryId>(), Err(SecurityError::Config(_))));
    }

    #[test]
    fn dictionary_learns_habits() {
        let a = DictionarySentence { corpora: Corpora::bundled() };
        let seen = obs(&[
            ("gmail", "my gmail eats red quokka"),
            ("bank", "my bank eats blue quokka"),
            ("shop", "the shop eats red quokka"),
        ]);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert_eq!(a.forge("netflix", &seen, &mut rng), "my netflix eats red quokka");
    }

    #[test]
    fn reuse_picks_the_mode() {
        let seen = obs(&[("a", "x"), ("b", "y"), ("c", "y")]);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert_eq!(FrequencyReuse.forge("d", &seen, &mut rng), "y");
        let guess = FrequencyReuse.forge("d", &[], &mut rng);
        assert!((8..=16).contains(&guess.len()));
    }

    #[test]
    fn charset_guess_uses_seen_characters() {
        let seen = obs(&[("a", "ab1"), ("b", "ba2")]);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let g = CharsetAwareRandom.forge("c", &seen, &mut rng);
        assert_eq!(g.len(), 3);
        assert!(g.chars().all(|c| "ab12".contains(c)));
    }
}
