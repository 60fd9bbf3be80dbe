//! Physical keyboard geometry.
//!
//! Keys sit on integer rows (`y`) and integer columns; each row is shifted
//! right by a stagger offset measured in key widths, so a key's horizontal
//! position is `column + offset`. Shifted characters share their key's
//! position. Diagonal lookups and "closest special character" queries are
//! answered from that geometry alone.
//!
//! Layout description format (one row header followed by one key line):
//!
//! ```text
//! # comment
//! row <name> <offset> <first-column>
//! <base><shifted> <base><shifted> ...
//! ```

use std::collections::HashMap;
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// The canonical US QWERTY description. Offsets 0.0 / 0.5 / 0.75 / 1.25.
pub const QWERTY: &str = "\
# US QWERTY, staggered rows
row number 0.0 0
`~ 1! 2@ 3# 4$ 5% 6^ 7& 8* 9( 0) -_ =+
row top 0.5 1
qQ wW eE rR tT yY uU iI oO pP [{ ]} \\|
row home 0.75 1
aA sS dD fF gG hH jJ kK lL ;: '\"
row bottom 1.25 1
zZ xX cC vV bB nN mM ,< .> /?
";

const TIE_EPSILON: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum KeyboardError {
    #[error("character {0:?} is not on the keyboard layout")]
    UnmappedCharacter(char),
    #[error("{0:?} is not a letter")]
    NotALetter(char),
    #[error("{0:?} is on the top-most row; there is no row above it")]
    NoRowAbove(char),
    #[error("no key lies diagonally {side} of {c:?}")]
    NoDiagonal { c: char, side: Side },
    #[error("character {0:?} appears on more than one key")]
    DuplicateCharacter(char),
    #[error("layout line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("i/o error reading layout: {0}")]
    Io(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn opposite(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Left => "left",
            Side::Right => "right",
        })
    }
}

/// How one person reads "the key above and diagonally left/right".
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DiagonalPolicy {
    /// Side used when the pair starts with a vowel; consonant pairs use the other side.
    pub vowel_side: Side,
    /// How many rows to climb. Clamped to the rows that exist above a key.
    pub rows_up: u8,
    /// Take the shifted character of the landing key instead of its base.
    pub use_shifted: bool,
}

impl DiagonalPolicy {
    pub const CANONICAL: DiagonalPolicy = DiagonalPolicy {
        vowel_side: Side::Left,
        rows_up: 1,
        use_shifted: false,
    };

    pub fn side_for(&self, starts_with_vowel: bool) -> Side {
        if starts_with_vowel {
            self.vowel_side
        } else {
            self.vowel_side.opposite()
        }
    }
}

impl Default for DiagonalPolicy {
    fn default() -> Self {
        Self::CANONICAL
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Key {
    pub column: u32,
    pub base: char,
    pub shifted: char,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Row {
    pub name: String,
    pub offset: f64,
    pub keys: Vec<Key>,
}

/// Where a character physically lives.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KeyPosition {
    pub row: usize,
    pub column: u32,
    pub x: f64,
    pub y: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct KeyboardLayout {
    rows: Vec<Row>,
    index: HashMap<char, (usize, usize)>,
}

impl KeyboardLayout {
    pub fn qwerty() -> Self {
        Self::parse(QWERTY).expect("embedded QWERTY layout is valid")
    }

    /// Same QWERTY keys with caller-chosen row offsets (number, top, home, bottom).
    pub fn qwerty_with_offsets(offsets: [f64; 4]) -> Self {
        let mut layout = Self::qwerty();
        for (row, offset) in layout.rows.iter_mut().zip(offsets) {
            row.offset = offset;
        }
        layout
    }

    pub fn from_rows(rows: Vec<Row>) -> Result<Self, KeyboardError> {
        let mut index = HashMap::new();
        for (r, row) in rows.iter().enumerate() {
            for (k, key) in row.keys.iter().enumerate() {
                for c in [key.base, key.shifted] {
                    if index.insert(c, (r, k)).is_some() && !(c == key.shifted && c == key.base) {
                        return Err(KeyboardError::DuplicateCharacter(c));
                    }
                }
            }
        }
        Ok(Self { rows, index })
    }

    pub fn load(path: &Path) -> Result<Self, KeyboardError> {
        let text = std::fs::read_to_string(path).map_err(|e| KeyboardError::Io(e.to_string()))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, KeyboardError> {
        let mut rows = Vec::new();
        let mut pending: Option<(String, f64, u32, usize)> = None;
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |message: &str| KeyboardError::Parse {
                line: line_no,
                message: message.to_string(),
            };
            match pending.take() {
                None => {
                    let parts: Vec<&str> = line.split_whitespace().collect();
                    if parts.len() != 4 || parts[0] != "row" {
                        return Err(err("expected `row <name> <offset> <first-column>`"));
                    }
                    let offset: f64 = parts[2].parse().map_err(|_| err("bad offset"))?;
                    let first: u32 = parts[3].parse().map_err(|_| err("bad first column"))?;
                    pending = Some((parts[1].to_string(), offset, first, line_no));
                }
                Some((name, offset, first, _)) => {
                    let mut keys = Vec::new();
                    for (k, token) in line.split_whitespace().enumerate() {
                        let chars: Vec<char> = token.chars().collect();
                        if chars.len() != 2 {
                            return Err(err("each key token is exactly <base><shifted>"));
                        }
                        keys.push(Key {
                            column: first + k as u32,
                            base: chars[0],
                            shifted: chars[1],
                        });
                    }
                    rows.push(Row { name, offset, keys });
                }
            }
        }
        if let Some((_, _, _, line)) = pending {
            return Err(KeyboardError::Parse {
                line,
                message: "row header without keys".into(),
            });
        }
        Self::from_rows(rows)
    }

    /// Renders the layout back into the description format.
    pub fn describe(&self) -> String {
        let mut out = String::new();
        for row in &self.rows {
            let first = row.keys.first().map_or(1, |k| k.column);
            out.push_str(&format!("row {} {} {}\n", row.name, row.offset, first));
            let keys: Vec<String> = row.keys.iter().map(|k| format!("{}{}", k.base, k.shifted)).collect();
            out.push_str(&keys.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn rows(&self) -> &[Row] {
        &self.rows
    }

    fn key_at(&self, (r, k): (usize, usize)) -> &Key {
        &self.rows[r].keys[k]
    }

    fn position_of(&self, (r, k): (usize, usize)) -> KeyPosition {
        let row = &self.rows[r];
        let column = row.keys[k].column;
        KeyPosition {
            row: r,
            column,
            x: column as f64 + row.offset,
            y: r as f64,
        }
    }

    pub fn locate(&self, c: char) -> Result<KeyPosition, KeyboardError> {
        self.index
            .get(&c)
            .map(|&slot| self.position_of(slot))
            .ok_or(KeyboardError::UnmappedCharacter(c))
    }

    pub fn row_name(&self, row: usize) -> Option<&str> {
        self.rows.get(row).map(|r| r.name.as_str())
    }

    /// The key `policy.rows_up` rows above `c` that sits nearest to it on `side`.
    pub fn diagonal_neighbor(&self, c: char, side: Side, policy: &DiagonalPolicy) -> Result<char, KeyboardError> {
        if !c.is_ascii_alphabetic() {
            return Err(KeyboardError::NotALetter(c));
        }
        let from = self.locate(c)?;
        if from.row == 0 {
            return Err(KeyboardError::NoRowAbove(c));
        }
        let up = (policy.rows_up.max(1) as usize).min(from.row);
        let target = &self.rows[from.row - up];
        let candidates = target.keys.iter().map(|k| (k, k.column as f64 + target.offset));
        let chosen = match side {
            Side::Left => candidates
                .filter(|(_, x)| *x < from.x)
                .max_by(|a, b| a.1.total_cmp(&b.1)),
            Side::Right => candidates
                .filter(|(_, x)| *x > from.x)
                .min_by(|a, b| a.1.total_cmp(&b.1)),
        };
        let (key, _) = chosen.ok_or(KeyboardError::NoDiagonal { c, side })?;
        Ok(if policy.use_shifted { key.shifted } else { key.base })
    }

    /// Every non-alphanumeric character on the layout, in key order, base before shifted.
    pub fn specials(&self) -> Vec<char> {
        let mut out = Vec::new();
        for row in &self.rows {
            for key in &row.keys {
                for c in [key.base, key.shifted] {
                    if !c.is_alphanumeric() && !c.is_whitespace() && !out.contains(&c) {
                        out.push(c);
                    }
                }
            }
        }
        out
    }

    /// All specials grouped by Euclidean distance from `c`, nearest group first.
    /// Characters within a group are equidistant and kept in layout order.
    pub fn nearest_specials(&self, c: char) -> Result<Vec<Vec<char>>, KeyboardError> {
        let from = self.locate(c)?;
        let mut scored: Vec<(f64, usize, char)> = self
            .specials()
            .into_iter()
            .enumerate()
            .map(|(order, s)| {
                let p = self.locate(s).expect("special comes from the layout");
                let d2 = (p.x - from.x).powi(2) + (p.y - from.y).powi(2);
                (d2, order, s)
            })
            .collect();
        scored.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));

        let mut groups: Vec<Vec<char>> = Vec::new();
        let mut last = f64::NEG_INFINITY;
        for (d2, _, s) in scored {
            match groups.last_mut() {
                Some(group) if (d2 - last).abs() <= TIE_EPSILON => group.push(s),
                _ => {
                    groups.push(vec![s]);
                    last = d2;
                }
            }
        }
        Ok(groups)
    }

    pub fn nearest_special_group(&self, c: char) -> Result<Vec<char>, KeyboardError> {
        Ok(self.nearest_specials(c)?.into_iter().next().unwrap_or_default())
    }

    /// Whether `c` is printed on some key (either layer).
    pub fn contains(&self, c: char) -> bool {
        self.index.contains_key(&c)
    }

    pub fn base_of(&self, c: char) -> Option<char> {
        self.index.get(&c).map(|&slot| self.key_at(slot).base)
    }
}

impl Default for KeyboardLayout {
    fn default() -> Self {
        Self::qwerty()
    }
}
