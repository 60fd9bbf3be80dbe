use serde::{Deserialize, Serialize};

use super::SecurityError;
use crate::schemes::LetterValueMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Counting {
    Ordered,
    Unordered,
}

/// Number of letter pairs whose group sum is `l`, by brute force over all 676.
pub fn preimage_pair_count(l: char, counting: Counting) -> Result<usize, SecurityError> {
    if !l.is_ascii_lowercase() {
        return Err(SecurityError::Config(format!("{l:?} is not a lowercase letter")));
    }
    let map = LetterValueMap::ONE_BASED;
    let mut count = 0;
    for x in 'a'..='z' {
        for y in 'a'..='z' {
            if counting == Counting::Unordered && y < x {
                continue;
            }
            if map.add(x, y).expect("letters") == l {
                count += 1;
            }
        }
    }
    Ok(count)
}
