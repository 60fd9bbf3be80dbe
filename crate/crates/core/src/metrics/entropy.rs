use serde::{Deserialize, Serialize};

use super::MetricsError;
use crate::scalar::Real;

pub const LOWER: usize = 26;
pub const UPPER: usize = 26;
pub const DIGITS: usize = 10;
/// Printable specials. ASCII has 32 punctuation characters; the class is
/// counted as 33 so that a full pool, space included, comes to 96.
pub const SPECIALS: usize = 33;
pub const SPACE: usize = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct CharClasses {
    pub lower: bool,
    pub upper: bool,
    pub digit: bool,
    pub special: bool,
    pub space: bool,
}

impl CharClasses {
    pub fn of(password: &str) -> Result<Self, MetricsError> {
        let mut classes = CharClasses::default();
        for c in password.chars() {
            match c {
                'a'..='z' => classes.lower = true,
                'A'..='Z' => classes.upper = true,
                '0'..='9' => classes.digit = true,
                ' ' => classes.space = true,
                c if c.is_ascii_punctuation() => classes.special = true,
                other => return Err(MetricsError::UnsupportedCharacter(other)),
            }
        }
        Ok(classes)
    }

    pub fn pool_size(&self) -> usize {
        [
            (self.lower, LOWER),
            (self.upper, UPPER),
            (self.digit, DIGITS),
            (self.special, SPECIALS),
            (self.space, SPACE),
        ]
        .iter()
        .filter(|(present, _)| *present)
        .map(|(_, size)| size)
        .sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EntropyEstimate<T> {
    pub bits: T,
    pub pool_size: usize,
    pub length: usize,
}

/// `length · log2(pool)`, where the pool is the union of the character classes present.
pub fn naive_entropy<T: Real>(password: &str) -> Result<EntropyEstimate<T>, MetricsError> {
    if password.is_empty() {
        return Err(MetricsError::EmptyPassword);
    }
    let pool_size = CharClasses::of(password)?.pool_size();
    let length = password.chars().count();
    Ok(EntropyEstimate {
        bits: T::count(length) * T::count(pool_size).log2(),
        pool_size,
        length,
    })
}
