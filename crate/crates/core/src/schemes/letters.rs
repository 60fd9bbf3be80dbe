use serde::{Deserialize, Serialize};

use super::SchemeError;

/// Letter ↔ number with `a = base`, `z = base + 25`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LetterValueMap {
    pub base: u8,
}

impl LetterValueMap {
    pub const ONE_BASED: LetterValueMap = LetterValueMap { base: 1 };
    pub const ZERO_BASED: LetterValueMap = LetterValueMap { base: 0 };

    pub fn new(base: u8) -> Result<Self, SchemeError> {
        match base {
            0 | 1 => Ok(Self { base }),
            other => Err(SchemeError::Config(format!("letter indexing base must be 0 or 1, got {other}"))),
        }
    }

    pub fn value(&self, c: char) -> Result<u32, SchemeError> {
        if !c.is_ascii_alphabetic() {
            return Err(SchemeError::NonLetter(c));
        }
        Ok((c.to_ascii_lowercase() as u8 - b'a') as u32 + self.base as u32)
    }

    pub fn letter(&self, value: u32) -> Option<char> {
        let offset = value.checked_sub(self.base as u32)?;
        (offset < 26).then(|| (b'a' + offset as u8) as char)
    }

    /// Letter whose value is `x + y`, wrapped back into the 26-letter range.
    pub fn add(&self, x: char, y: char) -> Result<char, SchemeError> {
        let (lo, span) = (self.base as u32, 26);
        let mut sum = self.value(x)? + self.value(y)?;
        while sum >= lo + span {
            sum -= span;
        }
        Ok(self.letter(sum).expect("wrapped sum is in range"))
    }
}

/// Lowercase letters of `word` with spaces removed. Anything else is an error.
pub fn subkey_letters(word: &str) -> Result<Vec<char>, SchemeError> {
    let letters: Vec<char> = word
        .chars()
        .filter(|c| !c.is_whitespace())
        .map(|c| {
            if c.is_ascii_alphabetic() {
                Ok(c.to_ascii_lowercase())
            } else {
                Err(SchemeError::NonLetter(c))
            }
        })
        .collect::<Result<_, _>>()?;
    if letters.is_empty() {
        return Err(SchemeError::EmptySubkey);
    }
    Ok(letters)
}

/// Splits letters into pairs, padding an odd tail with `favorite`.
pub fn letter_pairs(word: &str, favorite: char) -> Result<Vec<[char; 2]>, SchemeError> {
    if !favorite.is_ascii_alphabetic() {
        return Err(SchemeError::NonLetter(favorite));
    }
    let mut letters = subkey_letters(word)?;
    if letters.len() % 2 == 1 {
        letters.push(favorite.to_ascii_lowercase());
    }
    Ok(letters.chunks(2).map(|p| [p[0], p[1]]).collect())
}

/// Pairwise letter sums over a = 1 … z = 26, subtracting 26 on overflow.
pub fn group_sum(word: &str, favorite: char) -> Result<String, SchemeError> {
    group_sum_with(word, favorite, LetterValueMap::ONE_BASED)
}

pub fn group_sum_with(word: &str, favorite: char, map: LetterValueMap) -> Result<String, SchemeError> {
    letter_pairs(word, favorite)?
        .into_iter()
        .map(|[x, y]| map.add(x, y))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn worked_examples() {
        assert_eq!(group_sum("whitebirds", 'q').unwrap(), "ecgaw");
        assert_eq!(group_sum("white birds", 'q').unwrap(), "ecgaw");
        assert_eq!(group_sum("zz", 'q').unwrap(), "z");
        assert_eq!(group_sum("cat", 'e').unwrap(), "dy");
        assert_eq!(group_sum("CAT", 'E').unwrap(), "dy");
    }

    #[test]
    fn errors() {
        assert_eq!(group_sum("", 'a'), Err(SchemeError::EmptySubkey));
        assert_eq!(group_sum("   ", 'a'), Err(SchemeError::EmptySubkey));
        assert_eq!(group_sum("ab1", 'a'), Err(SchemeError::NonLetter('1')));
        assert_eq!(group_sum("abc", '!'), Err(SchemeError::NonLetter('!')));
    }

    #[test]
    fn zero_based_sum_is_mod_26() {
        let m = LetterValueMap::ZERO_BASED;
        assert_eq!(m.add('a', 'a').unwrap(), 'a');
        assert_eq!(m.add('z', 'b').unwrap(), 'a');
        assert_eq!(m.add('n', 'n').unwrap(), 'a');
    }

    #[test]
    fn letter_map_is_bijective() {
        for base in [0, 1] {
            let m = LetterValueMap::new(base).unwrap();
            for c in 'a'..='z' {
                assert_eq!(m.letter(m.value(c).unwrap()), Some(c));
            }
            assert_eq!(m.letter(base as u32 + 26), None);
        }
        assert!(LetterValueMap::new(2).is_err());
    }
}
