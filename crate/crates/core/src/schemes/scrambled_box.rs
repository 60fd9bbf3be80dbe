use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::letters::{subkey_letters, LetterValueMap};
use super::{PasswordOutput, SchemeError, SchemeId, Trace};
use crate::memory::{normalize_website, ElementKind, MemorySource, StoryElement};

pub const BOX_SIZE: usize = 10;

const LETTERS: &str = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ";
const DIGITS: &str = "0123456789";
const SPECIALS: &str = "!\"#$%&'()*+,-./:;<=>?@[\\]^_`{|}~";

/// A 10×10 table of characters, indexed `[row][col]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CharBox {
    cells: [[char; BOX_SIZE]; BOX_SIZE],
}

impl CharBox {
    pub fn from_rows<S: AsRef<str>>(rows: &[S]) -> Result<Self, SchemeError> {
        let mut cells = [[' '; BOX_SIZE]; BOX_SIZE];
        if rows.len() != BOX_SIZE {
            return Err(SchemeError::Config(format!("box needs {BOX_SIZE} rows, got {}", rows.len())));
        }
        for (r, row) in rows.iter().enumerate() {
            let chars: Vec<char> = row.as_ref().chars().collect();
            if chars.len() != BOX_SIZE {
                return Err(SchemeError::Config(format!("box row {r} has {} cells", chars.len())));
            }
            cells[r].copy_from_slice(&chars);
        }
        Ok(Self { cells })
    }

    pub fn rows(&self) -> Vec<String> {
        self.cells.iter().map(|r| r.iter().collect()).collect()
    }

    pub fn get(&self, row: usize, col: usize) -> char {
        self.cells[row][col]
    }

    pub fn cells(&self) -> impl Iterator<Item = char> + '_ {
        self.cells.iter().flatten().copied()
    }

    fn swap(&mut self, a: (usize, usize), b: (usize, usize)) {
        let tmp = self.cells[a.0][a.1];
        self.cells[a.0][a.1] = self.cells[b.0][b.1];
        self.cells[b.0][b.1] = tmp;
    }
}

/// Probability of drawing each character class for a cell.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoxWeights {
    pub letters: f64,
    pub digits: f64,
    pub specials: f64,
}

impl Default for BoxWeights {
    fn default() -> Self {
        Self {
            letters: 0.5,
            digits: 0.25,
            specials: 0.25,
        }
    }
}

pub fn build_box(seed: u64) -> CharBox {
    build_box_weighted(seed, BoxWeights::default())
}

/// Fills every cell independently: pick a class by weight, then a character
/// uniformly within it. Repetitions are allowed.
pub fn build_box_weighted(seed: u64, weights: BoxWeights) -> CharBox {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let classes: [(&str, f64); 3] = [
        (LETTERS, weights.letters),
        (DIGITS, weights.digits),
        (SPECIALS, weights.specials),
    ];
    let total: f64 = classes.iter().map(|c| c.1).sum();
    let mut cells = [[' '; BOX_SIZE]; BOX_SIZE];
    for cell in cells.iter_mut().flatten() {
        let mut roll = rng.gen::<f64>() * total;
        let mut pool = classes[classes.len() - 1].0;
        for (chars, w) in classes {
            if roll < w {
                pool = chars;
                break;
            }
            roll -= w;
        }
        let chars: Vec<char> = pool.chars().collect();
        *cell = *chars.choose(&mut rng).unwrap();
    }
    CharBox { cells }
}

/// One block exchange: the `size`×`size` block at `from` traded with the one at `to`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockSwap {
    pub size: usize,
    pub from: (usize, usize),
    pub to: (usize, usize),
}

impl BlockSwap {
    /// Cell pairs exchanged, in row-major order over the block. Destination
    /// cells wrap around the box edges.
    fn cell_pairs(&self) -> impl Iterator<Item = ((usize, usize), (usize, usize))> + '_ {
        (0..self.size).flat_map(move |i| {
            (0..self.size).map(move |j| {
                (
                    (self.from.0 + i, self.from.1 + j),
                    ((self.to.0 + i) % BOX_SIZE, (self.to.1 + j) % BOX_SIZE),
                )
            })
        })
    }

    fn apply(&self, b: &mut CharBox) {
        for (src, dst) in self.cell_pairs() {
            b.swap(src, dst);
        }
    }

    fn undo(&self, b: &mut CharBox) {
        let pairs: Vec<_> = self.cell_pairs().collect();
        for (src, dst) in pairs.into_iter().rev() {
            b.swap(src, dst);
        }
    }
}

/// Where the `size` block at `(row, col)` goes for an element of `kind`.
fn destination(kind: ElementKind, size: usize, (row, col): (usize, usize)) -> (usize, usize) {
    let n = BOX_SIZE;
    match kind {
        ElementKind::Sad => ((row + n - size % n) % n, col),
        ElementKind::MemorableCharacter => ((row + size) % n, (col + size) % n),
        ElementKind::ForwardEvent => (row, (col + size) % n),
        ElementKind::Happy => (n - size - row, n - size - col),
    }
}

/// Applies the four story moves in order. The `x`-th element moves the
/// `x`×`x` block at `choices[x - 1]` by `x` cells and swaps it with whatever
/// was there.
pub fn scramble(
    base: &CharBox,
    elements: &[StoryElement; 4],
    choices: &[(usize, usize)],
) -> Result<(CharBox, Vec<BlockSwap>), SchemeError> {
    if choices.len() != 4 {
        return Err(SchemeError::Config(format!("need 4 block choices, got {}", choices.len())));
    }
    apply_moves(base, elements, choices)
}

/// The first `choices.len()` moves of [`scramble`].
pub fn apply_moves(
    base: &CharBox,
    elements: &[StoryElement; 4],
    choices: &[(usize, usize)],
) -> Result<(CharBox, Vec<BlockSwap>), SchemeError> {
    let mut sbox = base.clone();
    let mut swaps = Vec::with_capacity(choices.len());
    for (x, (element, &(row, col))) in elements.iter().zip(choices).enumerate() {
        let size = x + 1;
        if row + size > BOX_SIZE || col + size > BOX_SIZE {
            return Err(SchemeError::BlockRange { size, row, col });
        }
        let swap = BlockSwap {
            size,
            from: (row, col),
            to: destination(element.kind, size, (row, col)),
        };
        swap.apply(&mut sbox);
        swaps.push(swap);
    }
    Ok((sbox, swaps))
}

/// Reverses recorded swaps, last first.
pub fn unscramble(sbox: &CharBox, swaps: &[BlockSwap]) -> CharBox {
    let mut b = sbox.clone();
    for s in swaps.iter().rev() {
        s.undo(&mut b);
    }
    b
}

/// Letter values as two-digit tokens; single digits get a trailing `0`.
pub fn coordinate_tokens(word: &str, map: LetterValueMap) -> Result<(Vec<u32>, Vec<String>), SchemeError> {
    let values = subkey_letters(word)?
        .into_iter()
        .map(|c| map.value(c))
        .collect::<Result<Vec<_>, _>>()?;
    let tokens = values
        .iter()
        .map(|&v| if v < 10 { format!("{v}0") } else { v.to_string() })
        .collect();
    Ok((values, tokens))
}

/// Each two-digit token read as (row, column).
pub fn token_coordinates<S: AsRef<str>>(tokens: &[S]) -> Vec<(usize, usize)> {
    tokens
        .iter()
        .map(|t| {
            let d: Vec<usize> = t.as_ref().chars().filter_map(|c| c.to_digit(10)).map(|d| d as usize).collect();
            (d[0], d[1])
        })
        .collect()
}

/// Box coordinates a connection word points at.
pub fn word_coordinates(word: &str, map: LetterValueMap) -> Result<Vec<(usize, usize)>, SchemeError> {
    Ok(token_coordinates(&coordinate_tokens(word, map)?.1))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScrambledBoxTrace {
    pub base_box: Vec<String>,
    pub story: String,
    pub elements: [StoryElement; 4],
    pub blocks: Vec<(usize, usize)>,
    pub swaps: Vec<BlockSwap>,
    pub sbox: Vec<String>,
    pub connection: String,
    pub indexing_base: u8,
    pub values: Vec<u32>,
    pub tokens: Vec<String>,
    pub coords: Vec<(usize, usize)>,
}

pub fn scrambled_box_hash<S: MemorySource + ?Sized>(
    source: &S,
    website: &str,
    base: &CharBox,
) -> Result<PasswordOutput, SchemeError> {
    let normalized = normalize_website(website)?;
    let story = source.story()?;
    let elements = source.story_elements(&story)?;
    let blocks = (1..=4).map(|x| source.block_choice(x)).collect::<Result<Vec<_>, _>>()?;
    let (sbox, swaps) = scramble(base, &elements, &blocks)?;

    let connection = source.connection_word(&story, &normalized)?;
    let indexing_base = source.indexing_base()?;
    let (values, tokens) = coordinate_tokens(&connection, LetterValueMap::new(indexing_base)?)?;
    let coords = token_coordinates(&tokens);
    let password: String = coords.iter().map(|&(r, c)| sbox.get(r, c)).collect();

    Ok(PasswordOutput {
        scheme: SchemeId::ScrambledBox,
        website: website.to_string(),
        normalized_website: normalized,
        password,
        trace: Trace::ScrambledBox(ScrambledBoxTrace {
            base_box: base.rows(),
            story,
            elements,
            blocks,
            swaps,
            sbox: sbox.rows(),
            connection,
            indexing_base,
            values,
            tokens,
            coords,
        }),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::memory::{MemoryModel, ScriptedAnswers, ScriptedSource};

    fn numbered_box() -> CharBox {
        // distinct cells so positions are traceable
        let chars: Vec<char> = (0..100u32).map(|i| char::from_u32(0x100 + i).unwrap()).collect();
        let rows: Vec<String> = chars.chunks(10).map(|r| r.iter().collect()).collect();
        CharBox::from_rows(&rows).unwrap()
    }

    fn el(kind: ElementKind, ordinal: u8) -> StoryElement {
        StoryElement { kind, ordinal }
    }

    #[test]
    fn shirt_tokens_and_coordinates() {
        // the worked example's values 19 8 9 18 20 count letters from 1
        let (values, tokens) = coordinate_tokens("shirt", LetterValueMap::ONE_BASED).unwrap();
        assert_eq!(values, [19, 8, 9, 18, 20]);
        assert_eq!(tokens, ["19", "80", "90", "18", "20"]);
        let (values, _) = coordinate_tokens("shirt", LetterValueMap::ZERO_BASED).unwrap();
        assert_eq!(values, [18, 7, 8, 17, 19]);
    }

    #[test]
    fn single_letter_a_maps_to_origin() {
        let (_, tokens) = coordinate_tokens("a", LetterValueMap::ZERO_BASED).unwrap();
        assert_eq!(tokens, ["00"]);
    }

    #[test]
    fn sad_one_by_one_moves_up() {
        let base = numbered_box();
        let swap = BlockSwap {
            size: 1,
            from: (5, 5),
            to: destination(ElementKind::Sad, 1, (5, 5)),
        };
        assert_eq!(swap.to, (4, 5));
        let mut b = base.clone();
        swap.apply(&mut b);
        assert_eq!(b.get(4, 5), base.get(5, 5));
        assert_eq!(b.get(5, 5), base.get(4, 5));
    }

    #[test]
    fn happy_reflects_to_opposite_corner() {
        assert_eq!(destination(ElementKind::Happy, 3, (1, 2)), (6, 5));
        assert_eq!(destination(ElementKind::Happy, 1, (0, 0)), (9, 9));
        assert_eq!(destination(ElementKind::Sad, 3, (1, 4)), (8, 4));
        assert_eq!(destination(ElementKind::MemorableCharacter, 4, (6, 6)), (0, 0));
        assert_eq!(destination(ElementKind::ForwardEvent, 2, (0, 8)), (0, 0));
    }

    #[test]
    fn scramble_then_unscramble_restores() {
        let base = numbered_box();
        let elements = [
            el(ElementKind::Happy, 1),
            el(ElementKind::Sad, 2),
            el(ElementKind::Happy, 3),
            el(ElementKind::MemorableCharacter, 4),
        ];
        // block 3 at (3,4) reflects onto (4,3): the blocks overlap
        let (sbox, swaps) = scramble(&base, &elements, &[(0, 0), (0, 0), (3, 4), (6, 6)]).unwrap();
        assert_ne!(sbox, base);
        assert_eq!(unscramble(&sbox, &swaps), base);
        let mut a: Vec<char> = sbox.cells().collect();
        let mut b: Vec<char> = base.cells().collect();
        a.sort();
        b.sort();
        assert_eq!(a, b);
    }

    #[test]
    fn out_of_range_block() {
        let elements = [el(ElementKind::Sad, 1); 4];
        let err = scramble(&numbered_box(), &elements, &[(0, 0), (0, 0), (0, 8), (0, 0)]).unwrap_err();
        assert_eq!(err, SchemeError::BlockRange { size: 3, row: 0, col: 8 });
    }

    #[test]
    fn box_shape_and_determinism() {
        assert_eq!(build_box(3), build_box(3));
        assert_ne!(build_box(3), build_box(4));
        assert_eq!(build_box(3).cells().count(), 100);
    }

    #[test]
    fn class_frequencies_follow_weights() {
        let (mut letters, mut digits, mut specials) = (0usize, 0usize, 0usize);
        for seed in 0..100 {
            for c in build_box(seed).cells() {
                match c {
                    c if c.is_ascii_alphabetic() => letters += 1,
                    c if c.is_ascii_digit() => digits += 1,
                    _ => specials += 1,
                }
            }
        }
        let w = BoxWeights::default();
        for (count, weight) in [(letters, w.letters), (digits, w.digits), (specials, w.specials)] {
            assert!((count as f64 / 10_000.0 - weight).abs() <= 0.05, "{count} vs {weight}");
        }
    }

    #[test]
    fn password_reads_sbox_coordinates() {
        let source = ScriptedSource::new(ScriptedAnswers {
            story: Some("tarzan".into()),
            story_elements: Some([el(ElementKind::ForwardEvent, 1); 4]),
            blocks: vec![(0, 0), (0, 0), (0, 0), (0, 0)],
            connection: Some("shirt".into()),
            indexing_base: Some(1),
            ..Default::default()
        });
        let base = numbered_box();
        let out = scrambled_box_hash(&source, "amazon", &base).unwrap();
        let Trace::ScrambledBox(t) = &out.trace else { panic!() };
        assert_eq!(t.coords, [(1, 9), (8, 0), (9, 0), (1, 8), (2, 0)]);
        let sbox = CharBox::from_rows(&t.sbox).unwrap();
        let expect: String = t.coords.iter().map(|&(r, c)| sbox.get(r, c)).collect();
        assert_eq!(out.password, expect);
        assert_eq!(out.password.chars().count(), 5);
    }

    #[test]
    fn simulated_password_length_matches_connection_letters() {
        for seed in 0..20 {
            let m = MemoryModel::with_seed(seed);
            let out = scrambled_box_hash(&m, "amazon", &build_box(seed)).unwrap();
            let Trace::ScrambledBox(t) = &out.trace else { panic!() };
            assert_eq!(out.password.chars().count(), t.connection.replace(' ', "").len());
        }
    }
}
