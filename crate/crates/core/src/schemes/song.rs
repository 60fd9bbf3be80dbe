use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{PasswordOutput, SchemeError, SchemeId, Trace};
use crate::keyboard::KeyboardLayout;
use crate::memory::{is_vowel, normalize_website, MemorySource};

/// First letter, the two middle letters, last letter. Names shorter than four
/// letters are padded by repeating their last letter.
pub fn mnemonic(website: &str) -> Result<String, SchemeError> {
    let mut letters: Vec<char> = normalize_website(website)?.chars().collect();
    while letters.len() < 4 {
        letters.push(*letters.last().unwrap());
    }
    let n = letters.len();
    let mid = n.div_ceil(2);
    Ok([1, mid, mid + 1, n].iter().map(|&p| letters[p - 1]).collect())
}

/// Puts the nearest special character after every vowel. When several
/// specials are equally near, `choose(vowel, ties)` picks one.
pub fn insert_specials<F>(text: &str, layout: &KeyboardLayout, mut choose: F) -> Result<String, SchemeError>
where
    F: FnMut(char, &[char]) -> Result<char, SchemeError>,
{
    let mut out = String::with_capacity(text.len() * 2);
    for c in text.chars() {
        out.push(c);
        if is_vowel(c) {
            let vowel = c.to_ascii_lowercase();
            let ties = layout.nearest_special_group(vowel)?;
            let special = match ties.as_slice() {
                [only] => *only,
                _ => choose(vowel, &ties)?,
            };
            out.push(special);
        }
    }
    Ok(out)
}

/// Removes the characters at `picks` and appends them, in the order picked.
pub fn move_to_end(text: &str, picks: &[usize; 3]) -> Result<String, SchemeError> {
    let chars: Vec<char> = text.chars().collect();
    let distinct = picks[0] != picks[1] && picks[0] != picks[2] && picks[1] != picks[2];
    if !distinct || picks.iter().any(|&p| p >= chars.len()) {
        return Err(SchemeError::InvalidShift(format!(
            "{picks:?} are not three distinct positions of a {}-character string",
            chars.len()
        )));
    }
    let mut out: String = chars
        .iter()
        .enumerate()
        .filter(|(i, _)| !picks.contains(i))
        .map(|(_, c)| *c)
        .collect();
    out.extend(picks.iter().map(|&p| chars[p]));
    Ok(out)
}

/// Deletes every character at an odd 1-based position, keeping ⌊n/2⌋ of them.
pub fn decimate(text: &str) -> String {
    text.chars().skip(1).step_by(2).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SongTrace {
    pub mnemonic: String,
    pub pin: [u8; 4],
    pub songs: Vec<String>,
    pub words: Vec<String>,
    pub song_string: String,
    pub with_specials: String,
    pub tiebreaks: BTreeMap<char, char>,
    pub shift_groups: Vec<[usize; 3]>,
    pub shifted: Vec<String>,
}

pub fn song_hash<S: MemorySource + ?Sized>(
    source: &S,
    website: &str,
    layout: &KeyboardLayout,
) -> Result<PasswordOutput, SchemeError> {
    let normalized = normalize_website(website)?;
    let mnemonic = mnemonic(&normalized)?;
    let pin = source.pin()?;
    if let Some(bad) = pin.iter().find(|&&d| d > 9) {
        return Err(SchemeError::Config(format!("pin digit {bad} is not 0-9")));
    }
    let songs = source.songs_for(&mnemonic)?;
    if songs.len() != 4 {
        return Err(SchemeError::Config(format!("need 4 songs, got {}", songs.len())));
    }
    let words = songs
        .iter()
        .zip(pin)
        .map(|(song, digit)| source.song_word(song, if digit == 0 { 10 } else { digit as usize }))
        .collect::<Result<Vec<_>, _>>()?;
    let song_string = words.concat();

    let mut tiebreaks = BTreeMap::new();
    let with_specials = insert_specials(&song_string, layout, |vowel, ties| {
        if let Some(&chosen) = tiebreaks.get(&vowel) {
            return Ok(chosen);
        }
        let chosen = source.special_tiebreak(vowel, ties)?;
        if !ties.contains(&chosen) {
            return Err(SchemeError::Config(format!("{chosen:?} is not one of {ties:?}")));
        }
        tiebreaks.insert(vowel, chosen);
        Ok(chosen)
    })?;

    let mut current = with_specials.clone();
    let mut shift_groups = Vec::with_capacity(2);
    let mut shifted = Vec::with_capacity(2);
    for round in 0..2 {
        let length = current.chars().count();
        if length < 3 {
            return Err(SchemeError::InvalidShift(format!("only {length} characters left to move")));
        }
        let picks = source.shift_group(length, round)?;
        current = move_to_end(&current, &picks)?;
        shift_groups.push(picks);
        shifted.push(current.clone());
    }
    let password = decimate(&current);

    Ok(PasswordOutput {
        scheme: SchemeId::SongPassword,
        website: website.to_string(),
        normalized_website: normalized,
        password,
        trace: Trace::SongPassword(SongTrace {
            mnemonic,
            pin,
            songs,
            words,
            song_string,
            with_specials,
            tiebreaks,
            shift_groups,
            shifted,
        }),
    })
}
