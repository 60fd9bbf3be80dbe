use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use sha3::{Digest, Sha3_256};

pub const MAX_INDEXED_LENGTH: usize = 25;

/// Uppercase counts by 1-based position, for passwords of at most 25 characters.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CapitalizationMatrix {
    pub counts: [u64; MAX_INDEXED_LENGTH],
    pub included: usize,
    pub excluded: usize,
}

impl Default for CapitalizationMatrix {
    fn default() -> Self {
        Self {
            counts: [0; MAX_INDEXED_LENGTH],
            included: 0,
            excluded: 0,
        }
    }
}

impl CapitalizationMatrix {
    /// Count at a 1-based index.
    pub fn at(&self, index: usize) -> u64 {
        index
            .checked_sub(1)
            .and_then(|i| self.counts.get(i))
            .copied()
            .unwrap_or(0)
    }

    pub fn add(&mut self, password: &str) {
        if password.chars().count() > MAX_INDEXED_LENGTH {
            self.excluded += 1;
            return;
        }
        self.included += 1;
        for (i, c) in password.chars().enumerate() {
            if c.is_uppercase() {
                self.counts[i] += 1;
            }
        }
    }
}

pub fn capitalization_matrix<'a>(passwords: impl IntoIterator<Item = &'a str>) -> CapitalizationMatrix {
    let mut m = CapitalizationMatrix::default();
    for p in passwords {
        m.add(p);
    }
    m
}

pub fn is_symbol(c: char) -> bool {
    c.is_ascii_punctuation()
}

/// Symbols by descending count; equal counts are ordered by character.
pub fn symbol_ranking<'a>(passwords: impl IntoIterator<Item = &'a str>) -> Vec<(char, u64)> {
    let mut counts: BTreeMap<char, u64> = BTreeMap::new();
    for p in passwords {
        for c in p.chars().filter(|&c| is_symbol(c)) {
            *counts.entry(c).or_default() += 1;
        }
    }
    let mut ranked: Vec<(char, u64)> = counts.into_iter().collect();
    ranked.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
    ranked
}

/// SHA3-256 of `input`, each byte read as a latin-1 character.
pub fn sha3_latin1(input: &str) -> String {
    Sha3_256::digest(input.as_bytes()).iter().map(|&b| b as char).collect()
}

/// The symbol ranking a cryptographic hash would produce over the same inputs.
pub fn sha3_symbol_baseline<'a>(inputs: impl IntoIterator<Item = &'a str>) -> Vec<(char, u64)> {
    let hashed: Vec<String> = inputs.into_iter().map(sha3_latin1).collect();
    symbol_ranking(hashed.iter().map(String::as_str))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct PolicyReport {
    pub length_6: bool,
    pub length_8: bool,
    pub length_10: bool,
    pub numeral: bool,
    pub uppercase: bool,
    pub special: bool,
    /// Length 8 or more with a numeral, an uppercase letter and a special.
    pub compliant: bool,
}

pub fn policy_check(password: &str) -> PolicyReport {
    let len = password.chars().count();
    let numeral = password.chars().any(|c| c.is_ascii_digit());
    let uppercase = password.chars().any(|c| c.is_uppercase());
    let special = password.chars().any(|c| !c.is_alphanumeric() && !c.is_whitespace());
    PolicyReport {
        length_6: len >= 6,
        length_8: len >= 8,
        length_10: len >= 10,
        numeral,
        uppercase,
        special,
        compliant: len >= 8 && numeral && uppercase && special,
    }
}
