use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::scalar::Real;

/// Characters matched by Ratcliff/Obershelp: take the longest common
/// substring, then recurse on the unmatched pieces to its left and right.
///
/// Among equally long candidates the one starting earliest in `a`, then
/// earliest in `b`, is taken, which is what makes the measure order-sensitive.
/// No characters are treated as junk.
pub fn matching_characters(a: &str, b: &str) -> usize {
    let a: Vec<char> = a.chars().collect();
    let b: Vec<char> = b.chars().collect();
    let mut b2j: HashMap<char, Vec<usize>> = HashMap::new();
    for (j, &c) in b.iter().enumerate() {
        b2j.entry(c).or_default().push(j);
    }

    let mut total = 0;
    let mut pending = vec![(0, a.len(), 0, b.len())];
    while let Some((alo, ahi, blo, bhi)) = pending.pop() {
        let (i, j, k) = longest_match(&a, &b2j, alo, ahi, blo, bhi);
        if k == 0 {
            continue;
        }
        total += k;
        if alo < i && blo < j {
            pending.push((alo, i, blo, j));
        }
        if i + k < ahi && j + k < bhi {
            pending.push((i + k, ahi, j + k, bhi));
        }
    }
    total
}

fn longest_match(
    a: &[char],
    b2j: &HashMap<char, Vec<usize>>,
    alo: usize,
    ahi: usize,
    blo: usize,
    bhi: usize,
) -> (usize, usize, usize) {
    let (mut best_i, mut best_j, mut best_k) = (alo, blo, 0);
    // run[j + 1] = length of the match ending at a[i - 1], b[j]
    let mut run: HashMap<usize, usize> = HashMap::new();
    for (i, c) in a.iter().enumerate().take(ahi).skip(alo) {
        let mut next = HashMap::new();
        if let Some(js) = b2j.get(c) {
            for &j in js.iter().filter(|&&j| j >= blo && j < bhi) {
                let k = run.get(&j).copied().unwrap_or(0) + 1;
                next.insert(j + 1, k);
                if k > best_k {
                    best_i = i + 1 - k;
                    best_j = j + 1 - k;
                    best_k = k;
                }
            }
        }
        run = next;
    }
    (best_i, best_j, best_k)
}

/// `2M / (|a| + |b|)`; two empty strings are identical.
pub fn similarity_ratio<T: Real>(a: &str, b: &str) -> T {
    let total = a.chars().count() + b.chars().count();
    if total == 0 {
        return T::one();
    }
    T::count(2 * matching_characters(a, b)) / T::count(total)
}

pub const DEFAULT_RECALL_THRESHOLD: f64 = 0.6;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "outcome", content = "similarity", rename_all = "lowercase")]
pub enum RecallOutcome<T> {
    Complete,
    Partial(T),
    Failed,
}

impl<T> RecallOutcome<T> {
    pub fn label(&self) -> &'static str {
        match self {
            RecallOutcome::Complete => "complete",
            RecallOutcome::Partial(_) => "partial",
            RecallOutcome::Failed => "failed",
        }
    }
}

pub fn recall_score<T: Real>(initial: &str, remembered: &str) -> RecallOutcome<T> {
    recall_score_with(initial, remembered, T::lit(DEFAULT_RECALL_THRESHOLD))
}

pub fn recall_score_with<T: Real>(initial: &str, remembered: &str, threshold: T) -> RecallOutcome<T> {
    if initial == remembered {
        return RecallOutcome::Complete;
    }
    let ratio = similarity_ratio::<T>(initial, remembered);
    if ratio >= threshold {
        RecallOutcome::Partial(ratio)
    } else {
        RecallOutcome::Failed
    }
}
