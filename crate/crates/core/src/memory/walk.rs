use serde::{Deserialize, Serialize};

use super::{is_vowel, MemoryError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Turn {
    #[serde(rename = "L")]
    Left,
    #[serde(rename = "R")]
    Right,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Heading {
    North,
    East,
    South,
    West,
}

impl Heading {
    pub const ALL: [Heading; 4] = [Heading::North, Heading::East, Heading::South, Heading::West];

    fn turned(self, turn: Turn) -> Heading {
        let i = Self::ALL.iter().position(|h| *h == self).unwrap();
        let j = match turn {
            Turn::Right => (i + 1) % 4,
            Turn::Left => (i + 3) % 4,
        };
        Self::ALL[j]
    }

    /// (row delta, column delta); north is towards row 0.
    fn delta(self) -> (isize, isize) {
        match self {
            Heading::North => (-1, 0),
            Heading::East => (0, 1),
            Heading::South => (1, 0),
            Heading::West => (0, -1),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Cell {
    pub row: usize,
    pub col: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Walk {
    pub trace: Vec<Turn>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub end: Option<Cell>,
}

/// Vowels turn left, everything else turns right.
pub fn turn_trace(website: &str) -> Result<Vec<Turn>, MemoryError> {
    if website.is_empty() {
        return Err(MemoryError::EmptyWebsite);
    }
    Ok(website
        .chars()
        .map(|c| if is_vowel(c) { Turn::Left } else { Turn::Right })
        .collect())
}

/// Turtle walk on a `height`×`width` torus: for every letter turn, then advance `step` cells.
pub fn walk_grid(
    website: &str,
    width: usize,
    height: usize,
    start: Cell,
    heading: Heading,
    step: usize,
) -> Result<Walk, MemoryError> {
    let trace = turn_trace(website)?;
    let (mut row, mut col, mut heading) = (start.row as isize, start.col as isize, heading);
    let (h, w) = (height as isize, width as isize);
    for &turn in &trace {
        heading = heading.turned(turn);
        let (dr, dc) = heading.delta();
        row = (row + dr * step as isize).rem_euclid(h);
        col = (col + dc * step as isize).rem_euclid(w);
    }
    Ok(Walk {
        trace,
        end: Some(Cell {
            row: row as usize,
            col: col as usize,
        }),
    })
}
