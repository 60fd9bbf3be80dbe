use serde::{Deserialize, Serialize};

use super::letters::{letter_pairs, LetterValueMap};
use super::{PasswordOutput, SchemeError, SchemeId, Trace};
use crate::keyboard::{DiagonalPolicy, KeyboardLayout, Side};
use crate::memory::{is_vowel, normalize_website, Cell, MemorySource, Turn};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MemoryPalaceTrace {
    pub turns: Vec<Turn>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub end_cell: Option<Cell>,
    /// The location description, as given.
    pub subkey: String,
    pub favorite: char,
    pub policy: DiagonalPolicy,
    pub pairs: Vec<String>,
    pub sums: String,
    pub sides: Vec<Side>,
    pub diagonals: String,
}

/// Walk, describe, sum letter pairs, then follow every sum letter with the key
/// diagonally above it. The side depends on whether the pair's first letter
/// is a vowel.
pub fn memory_palace_hash<S: MemorySource + ?Sized>(
    source: &S,
    website: &str,
    layout: &KeyboardLayout,
) -> Result<PasswordOutput, SchemeError> {
    let normalized = normalize_website(website)?;
    let walk = source.walk(&normalized)?;
    let subkey = source.describe_location(&walk)?;
    let favorite = source.favorite_letter()?;
    let policy = source.diagonal_policy()?;

    let pairs = letter_pairs(&subkey, favorite)?;
    let map = LetterValueMap::ONE_BASED;
    let mut password = String::with_capacity(pairs.len() * 2);
    let (mut sums, mut diagonals, mut sides) = (String::new(), String::new(), Vec::new());
    for [x, y] in &pairs {
        let sum = map.add(*x, *y)?;
        let side = policy.side_for(is_vowel(*x));
        let diagonal = layout.diagonal_neighbor(sum, side, &policy)?;
        password.push(sum);
        password.push(diagonal);
        sums.push(sum);
        diagonals.push(diagonal);
        sides.push(side);
    }

    Ok(PasswordOutput {
        scheme: SchemeId::MemoryPalace,
        website: website.to_string(),
        normalized_website: normalized,
        password,
        trace: Trace::MemoryPalace(MemoryPalaceTrace {
            turns: walk.trace,
            end_cell: walk.end,
            subkey,
            favorite,
            policy,
            pairs: pairs.iter().map(|p| p.iter().collect()).collect(),
            sums,
            sides,
            diagonals,
        }),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::memory::{MemoryModel, ScriptedAnswers, ScriptedSource};
    use crate::schemes::group_sum;

    fn scripted(subkey: &str, policy: DiagonalPolicy) -> ScriptedSource {
        ScriptedSource::new(ScriptedAnswers {
            location: Some(subkey.into()),
            favorite_letter: Some('e'),
            diagonal_policy: Some(policy),
            ..Default::default()
        })
    }

    #[test]
    fn white_birds_canonical_policy() {
        // pairs wh it eb ir ds → sums e c g a w; sides R L L L R
        let out = memory_palace_hash(&scripted("white birds", DiagonalPolicy::CANONICAL), "gmail", &KeyboardLayout::qwerty()).unwrap();
        assert_eq!(out.password, "e4cdgtaqw3");
        let Trace::MemoryPalace(t) = &out.trace else { panic!() };
        assert_eq!(t.sums, "ecgaw");
        assert_eq!(t.turns, vec![Turn::Right, Turn::Right, Turn::Left, Turn::Left, Turn::Right]);
        assert_eq!(t.sides, [Side::Right, Side::Left, Side::Left, Side::Left, Side::Right]);
    }

    #[test]
    fn sum_letters_sit_at_odd_positions() {
        let out = memory_palace_hash(&scripted("white birds", DiagonalPolicy::CANONICAL), "x", &KeyboardLayout::qwerty()).unwrap();
        let odd: String = out.password.chars().step_by(2).collect();
        // the worked example's password shares exactly these letters
        let paper: String = "e3cfgya1w3".chars().step_by(2).collect();
        assert_eq!(odd, paper);
        assert_eq!(odd, group_sum("whitebirds", 'e').unwrap());
    }

    #[test]
    fn odd_subkey_uses_favorite_letter() {
        let out = memory_palace_hash(&scripted("cat", DiagonalPolicy::CANONICAL), "x", &KeyboardLayout::qwerty()).unwrap();
        assert_eq!(out.password.len(), 4);
        assert!(out.password.starts_with('d'));
        assert_eq!(out.password.chars().nth(2), Some('y'));
    }

    #[test]
    fn empty_website_is_rejected() {
        let err = memory_palace_hash(&scripted("cat", DiagonalPolicy::CANONICAL), "..", &KeyboardLayout::qwerty()).unwrap_err();
        assert_eq!(err, SchemeError::EmptyWebsite);
    }

    #[test]
    fn simulated_user_is_deterministic() {
        let m = MemoryModel::with_seed(7);
        let kb = KeyboardLayout::qwerty();
        let first = memory_palace_hash(&m, "aaaa", &kb).unwrap();
        for _ in 0..100 {
            assert_eq!(memory_palace_hash(&m, "aaaa", &kb).unwrap(), first);
        }
    }
}
