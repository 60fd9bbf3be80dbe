use std::collections::HashMap;

use super::{argmax, degenerate, Alphabet, NextChar, PredictorError};

/// Laplace-smoothed character model conditioned on the previous `order`
/// characters (fewer at the start of a password).
#[derive(Debug, Clone, PartialEq)]
pub struct NgramModel {
    pub order: usize,
    counts: HashMap<Vec<usize>, Vec<u32>>,
}

impl NgramModel {
    fn context(&self, prefix: &[usize]) -> Vec<usize> {
        prefix[prefix.len().saturating_sub(self.order)..].to_vec()
    }

    /// Smoothed probability of `next` after `prefix`.
    pub fn probability(&self, prefix: &[usize], next: usize) -> f64 {
        let counts = self.counts.get(&self.context(prefix));
        let total: u32 = counts.map_or(0, |c| c.iter().sum());
        let hits = counts.map_or(0, |c| c[next]);
        (hits as f64 + 1.0) / (total as f64 + Alphabet::SIZE as f64)
    }
}

impl NextChar for NgramModel {
    fn predict(&self, prefix: &[usize]) -> usize {
        match self.counts.get(&self.context(prefix)) {
            Some(counts) => argmax(counts),
            None => 0,
        }
    }
}

/// Counts every transition except each password's last, matching what the
/// recurrent model is trained on.
pub fn ngram_baseline<S: AsRef<str>>(passwords: &[S], order: usize) -> Result<NgramModel, PredictorError> {
    if order == 0 {
        return Err(PredictorError::Config("n-gram order must be at least 1".into()));
    }
    let mut model = NgramModel {
        order,
        counts: HashMap::new(),
    };
    let mut transitions = 0;
    for p in passwords {
        let seq = Alphabet::encode(p.as_ref())?;
        for end in 1..seq.len().saturating_sub(1) {
            let ctx = model.context(&seq[..end]);
            model.counts.entry(ctx).or_insert_with(|| vec![0; Alphabet::SIZE])[seq[end]] += 1;
            transitions += 1;
        }
    }
    if transitions == 0 {
        return Err(degenerate("no password has three or more characters to train on"));
    }
    Ok(model)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::predictor::last_char_accuracy;

    #[test]
    fn constant_corpus() {
        let corpus = ["aaaaaa", "aaaa"];
        let m = ngram_baseline(&corpus, 1).unwrap();
        assert_eq!(m.predict(&[Alphabet::index('a').unwrap()]), Alphabet::index('a').unwrap());
        assert_eq!(last_char_accuracy(&m, &corpus).unwrap(), 1.0);
    }

    #[test]
    fn unseen_context_is_uniform() {
        let m = ngram_baseline(&["abcd"], 2).unwrap();
        let z = Alphabet::index('z').unwrap();
        for c in 0..Alphabet::SIZE {
            assert!((m.probability(&[z, z], c) - 1.0 / 95.0).abs() < 1e-12);
        }
        assert_eq!(m.predict(&[z, z]), 0);
    }

    #[test]
    fn smoothed_probabilities_sum_to_one() {
        let m = ngram_baseline(&["abab", "abba"], 1).unwrap();
        let a = [Alphabet::index('a').unwrap()];
        let total: f64 = (0..Alphabet::SIZE).map(|c| m.probability(&a, c)).sum();
        assert!((total - 1.0).abs() < 1e-12);
    }

    #[test]
    fn errors() {
        assert!(matches!(ngram_baseline(&["ab"], 0), Err(PredictorError::Config(_))));
        assert!(matches!(ngram_baseline(&["ab", "c"], 1), Err(PredictorError::Corpus(_))));
    }
}
