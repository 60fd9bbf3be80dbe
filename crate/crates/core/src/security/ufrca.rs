use rand::seq::index::sample;
use serde::{Deserialize, Serialize};

use super::adversary::{adversary, AdversaryId};
use super::report::ExperimentReport;
use super::{split_seed, Lab, SecurityError};
use crate::memory::derive_rng;
use crate::metrics::similarity_ratio;
use crate::schemes::{hash, SchemeId};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UfRcaReport {
    pub scheme: SchemeId,
    pub adversary: AdversaryId,
    pub k_observed: usize,
    pub trials: usize,
    pub seed: u64,
    pub successes: u64,
    /// Exact-match forgeries per trial.
    pub success_rate: f64,
    /// Mean similarity between forgery and true password.
    pub mean_similarity: f64,
}

impl UfRcaReport {
    pub fn to_report(&self) -> ExperimentReport {
        ExperimentReport::new(
            "ufrca",
            self.seed,
            serde_json::json!({
                "scheme": self.scheme,
                "adversary": self.adversary,
                "k_observed": self.k_observed,
                "trials": self.trials,
            }),
        )
        .estimate("success_rate", Some(self.success_rate))
        .estimate("mean_similarity", Some(self.mean_similarity))
        .sample("trials", self.trials as u64)
        .sample("successes", self.successes)
    }
}

/// Each trial draws a fresh simulated person and `k_observed + 1` distinct
/// websites; the adversary sees the first `k_observed` passwords and must
/// forge the last.
pub fn ufrca_game(
    lab: &Lab,
    scheme: SchemeId,
    adversary_id: AdversaryId,
    k_observed: usize,
    trials: usize,
    seed: u64,
) -> Result<UfRcaReport, SecurityError> {
    if lab.websites.len() <= k_observed {
        return Err(SecurityError::Config(format!(
            "{} websites cannot supply {k_observed} observations and a challenge",
            lab.websites.len()
        )));
    }
    if trials == 0 {
        return Err(SecurityError::Config("need at least one trial".into()));
    }
    let forger = adversary(adversary_id, lab.corpora.clone());
    let (mut successes, mut similarity) = (0u64, 0.0);
    for t in 0..trials as u64 {
        let user = lab.user(split_seed(seed, "user", t))?;
        let mut rng = derive_rng(seed, "trial", &[&t.to_le_bytes()]);
        let picks = sample(&mut rng, lab.websites.len(), k_observed + 1).into_vec();
        let mut sites = picks.iter().map(|&i| lab.websites[i].as_str());
        let observed = sites
            .by_ref()
            .take(k_observed)
            .map(|site| Ok((site.to_string(), hash(scheme, &user, site, &lab.schemes)?.password)))
            .collect::<Result<Vec<_>, SecurityError>>()?;
        let challenge = sites.next().expect("k + 1 sites were drawn");
        let truth = hash(scheme, &user, challenge, &lab.schemes)?.password;
        let guess = forger.forge(challenge, &observed, &mut rng);
        if guess == truth {
            successes += 1;
        }
        similarity += similarity_ratio::<f64>(&guess, &truth);
    }
    Ok(UfRcaReport {
        scheme,
        adversary: adversary_id,
        k_observed,
        trials,
        seed,
        successes,
        success_rate: successes as f64 / trials as f64,
        mean_similarity: similarity / trials as f64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reproducible() {
        let lab = Lab::default();
        let a = ufrca_game(&lab, SchemeId::InternalSentence, AdversaryId::DictionarySentence, 3, 40, 9).unwrap();
        let b = ufrca_game(&lab, SchemeId::InternalSentence, AdversaryId::DictionarySentence, 3, 40, 9).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn too_few_websites() {
        let lab = Lab {
            websites: vec!["a".into()],
            ..Lab::default()
        };
        assert!(ufrca_game(&lab, SchemeId::MemoryPalace, AdversaryId::UniformRandom, 1, 1, 0).is_err());
    }
}
