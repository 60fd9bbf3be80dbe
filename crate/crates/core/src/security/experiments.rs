use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use sha3::{Digest, Sha3_256};

use super::report::ExperimentReport;
use super::{split_seed, Lab, SecurityError};
use rand::seq::index::sample;

use crate::corpus::{PasswordRecord, SourceKind};
use crate::memory::{derive_rng, normalize_website};
use crate::metrics::{naive_entropy, similarity_ratio};
use crate::scalar::Real;
use crate::schemes::{hash, SchemeId};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CollisionReport {
    pub scheme: SchemeId,
    pub seed: u64,
    pub users: usize,
    pub websites: usize,
    /// Same website, different users. Undefined with fewer than two users.
    pub cross_user_rate: Option<f64>,
    pub cross_user_collisions: u64,
    pub cross_user_comparisons: u64,
    /// Same user, different websites.
    pub same_user_rate: Option<f64>,
    pub same_user_collisions: u64,
    pub same_user_comparisons: u64,
}

impl CollisionReport {
    pub fn to_report(&self) -> ExperimentReport {
        ExperimentReport::new(
            "collision",
            self.seed,
            serde_json::json!({ "scheme": self.scheme, "users": self.users, "websites": self.websites }),
        )
        .estimate("cross_user_rate", self.cross_user_rate)
        .estimate("same_user_rate", self.same_user_rate)
        .sample("cross_user_comparisons", self.cross_user_comparisons)
        .sample("same_user_comparisons", self.same_user_comparisons)
    }
}

fn pairs(n: u64) -> u64 {
    n * n.saturating_sub(1) / 2
}

/// Hashes every website for `n_users` simulated users seeded from `seed`.
pub fn collision_experiment(
    lab: &Lab,
    scheme: SchemeId,
    n_users: usize,
    websites: &[String],
    seed: u64,
) -> Result<CollisionReport, SecurityError> {
    let seeds: Vec<u64> = (0..n_users as u64).map(|i| split_seed(seed, "user", i)).collect();
    let mut report = collision_experiment_with_seeds(lab, scheme, &seeds, websites)?;
    report.seed = seed;
    Ok(report)
}

/// As [`collision_experiment`] with explicit user seeds; repeated seeds act
/// as the same person.
pub fn collision_experiment_with_seeds(
    lab: &Lab,
    scheme: SchemeId,
    user_seeds: &[u64],
    websites: &[String],
) -> Result<CollisionReport, SecurityError> {
    if websites.is_empty() {
        return Err(SecurityError::Config("no websites given".into()));
    }
    let mut per_site: Vec<HashMap<String, u64>> = vec![HashMap::new(); websites.len()];
    let mut same_user_collisions = 0;
    for &s in user_seeds {
        let user = lab.user(s)?;
        let mut mine: HashMap<String, u64> = HashMap::new();
        for (w, site) in websites.iter().enumerate() {
            let password = hash(scheme, &user, site, &lab.schemes)?.password;
            *mine.entry(password.clone()).or_default() += 1;
            *per_site[w].entry(password).or_default() += 1;
        }
        same_user_collisions += mine.values().map(|&c| pairs(c)).sum::<u64>();
    }
    let cross_user_collisions: u64 = per_site.iter().flat_map(|m| m.values()).map(|&c| pairs(c)).sum();
    let cross_user_comparisons = pairs(user_seeds.len() as u64) * websites.len() as u64;
    let same_user_comparisons = user_seeds.len() as u64 * pairs(websites.len() as u64);
    let rate = |hits: u64, total: u64| (total > 0).then(|| hits as f64 / total as f64);
    Ok(CollisionReport {
        scheme,
        seed: 0,
        users: user_seeds.len(),
        websites: websites.len(),
        cross_user_rate: rate(cross_user_collisions, cross_user_comparisons),
        cross_user_collisions,
        cross_user_comparisons,
        same_user_rate: rate(same_user_collisions, same_user_comparisons),
        same_user_collisions,
        same_user_comparisons,
    })
}

/// True when `b` is `a` with exactly one character substituted, inserted or deleted.
pub fn is_single_edit(a: &str, b: &str) -> bool {
    let a: Vec<char> = a.chars().collect();
    let b: Vec<char> = b.chars().collect();
    let (short, long) = if a.len() <= b.len() { (&a, &b) } else { (&b, &a) };
    match long.len() - short.len() {
        0 => a.iter().zip(&b).filter(|(x, y)| x != y).count() == 1,
        1 => {
            let prefix = short.iter().zip(long.iter()).take_while(|(x, y)| x == y).count();
            short[prefix..] == long[prefix + 1..]
        }
        _ => false,
    }
}

/// Fraction of the 64 hex digits of two SHA3-256 digests that agree.
pub fn hex_position_agreement(a: &str, b: &str) -> f64 {
    let ha = format!("{:x}", Sha3_256::digest(a.as_bytes()));
    let hb = format!("{:x}", Sha3_256::digest(b.as_bytes()));
    ha.chars().zip(hb.chars()).filter(|(x, y)| x == y).count() as f64 / 64.0
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AvalancheReport {
    pub scheme: SchemeId,
    pub seed: u64,
    pub users: usize,
    pub pairs: usize,
    /// Mean fraction of positions, up to the shorter length, that differ.
    pub mean_position_change: f64,
    pub mean_similarity: f64,
    /// The same two measures for SHA3-256 hex digests of the raw names.
    pub baseline_position_change: f64,
    pub baseline_similarity: f64,
}

impl AvalancheReport {
    pub fn to_report(&self) -> ExperimentReport {
        ExperimentReport::new(
            "avalanche",
            self.seed,
            serde_json::json!({ "scheme": self.scheme, "users": self.users, "pairs": self.pairs }),
        )
        .estimate("mean_position_change", Some(self.mean_position_change))
        .estimate("mean_similarity", Some(self.mean_similarity))
        .estimate("baseline_position_change", Some(self.baseline_position_change))
        .estimate("baseline_similarity", Some(self.baseline_similarity))
        .sample("comparisons", (self.users * self.pairs) as u64)
    }
}

pub fn avalanche_experiment(
    lab: &Lab,
    scheme: SchemeId,
    website_pairs: &[(String, String)],
    n_users: usize,
    seed: u64,
) -> Result<AvalancheReport, SecurityError> {
    if website_pairs.is_empty() || n_users == 0 {
        return Err(SecurityError::Config("need at least one pair and one user".into()));
    }
    for (a, b) in website_pairs {
        let (na, nb) = (normalize_website(a).map_err(|e| SecurityError::Scheme(e.into()))?, normalize_website(b).map_err(|e| SecurityError::Scheme(e.into()))?);
        if !is_single_edit(&na, &nb) {
            return Err(SecurityError::InvalidPair(format!("{a:?} and {b:?} are not one edit apart")));
        }
    }
    let (mut change, mut similarity, mut n) = (0.0, 0.0, 0usize);
    for i in 0..n_users as u64 {
        let user = lab.user(split_seed(seed, "user", i))?;
        for (a, b) in website_pairs {
            let pa = hash(scheme, &user, a, &lab.schemes)?.password;
            let pb = hash(scheme, &user, b, &lab.schemes)?.password;
            let len = pa.chars().count().min(pb.chars().count());
            if len > 0 {
                let differing = pa.chars().zip(pb.chars()).filter(|(x, y)| x != y).count();
                change += differing as f64 / len as f64;
            }
            similarity += similarity_ratio::<f64>(&pa, &pb);
            n += 1;
        }
    }
    let (mut base_change, mut base_sim) = (0.0, 0.0);
    for (a, b) in website_pairs {
        base_change += 1.0 - hex_position_agreement(a, b);
        let ha = format!("{:x}", Sha3_256::digest(a.as_bytes()));
        let hb = format!("{:x}", Sha3_256::digest(b.as_bytes()));
        base_sim += similarity_ratio::<f64>(&ha, &hb);
    }
    let m = website_pairs.len() as f64;
    Ok(AvalancheReport {
        scheme,
        seed,
        users: n_users,
        pairs: website_pairs.len(),
        mean_position_change: change / n as f64,
        mean_similarity: similarity / n as f64,
        baseline_position_change: base_change / m,
        baseline_similarity: base_sim / m,
    })
}

/// Passwords of `n_users` simulated people, each for `sites_per_user`
/// websites drawn from the lab's list.
pub fn simulate_records(
    lab: &Lab,
    scheme: SchemeId,
    n_users: usize,
    sites_per_user: usize,
    seed: u64,
) -> Result<Vec<PasswordRecord>, SecurityError> {
    if sites_per_user > lab.websites.len() {
        return Err(SecurityError::Config(format!(
            "only {} websites available, {sites_per_user} requested",
            lab.websites.len()
        )));
    }
    let mut records = Vec::with_capacity(n_users * sites_per_user);
    for u in 0..n_users as u64 {
        let user_seed = split_seed(seed, "user", u);
        let user = lab.user(user_seed)?;
        let mut rng = derive_rng(seed, "sites", &[&u.to_le_bytes()]);
        for i in sample(&mut rng, lab.websites.len(), sites_per_user) {
            let site = &lab.websites[i];
            let out = hash(scheme, &user, site, &lab.schemes)?;
            records.push(PasswordRecord::new(
                format!("{scheme}-{u}-{site}"),
                scheme.as_str(),
                site,
                &out.password,
                SourceKind::Simulated { seed: user_seed },
            ));
        }
    }
    Ok(records)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OneWayness<T> {
    pub mean_bits: T,
    /// `2^-mean_bits`: the nominal chance of guessing a password outright.
    pub epsilon: T,
}

pub fn one_wayness_bound<T: Real>(records: &[PasswordRecord]) -> Result<OneWayness<T>, SecurityError> {
    if records.is_empty() {
        return Err(SecurityError::EmptyCorpus);
    }
    let total = records
        .iter()
        .map(|r| naive_entropy::<T>(&r.password).map(|e| e.bits))
        .collect::<Result<Vec<T>, _>>()?
        .into_iter()
        .sum::<T>();
    let mean_bits = total / T::count(records.len());
    Ok(OneWayness {
        mean_bits,
        epsilon: T::lit(2.0).powf(-mean_bits),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_edit_detection() {
        assert!(is_single_edit("store", "stove"));
        assert!(is_single_edit("store", "stores"));
        assert!(is_single_edit("store", "tore"));
        assert!(!is_single_edit("store", "store"));
        assert!(!is_single_edit("store", "stairs"));
        assert!(!is_single_edit("ab", "ba"));
    }

    #[test]
    fn identical_pair_is_rejected() {
        let err = avalanche_experiment(&Lab::default(), SchemeId::MemoryPalace, &[("a".into(), "a".into())], 1, 0);
        assert!(matches!(err, Err(SecurityError::InvalidPair(_))));
    }

    #[test]
    fn sha3_baseline_on_aaa_aab() {
        assert_eq!(hex_position_agreement("aaa", "aab"), 3.0 / 64.0);
    }

    #[test]
    fn one_user_has_no_cross_rate() {
        let sites: Vec<String> = ["gmail", "amazon"].map(String::from).to_vec();
        let r = collision_experiment(&Lab::default(), SchemeId::MemoryPalace, 1, &sites, 3).unwrap();
        assert_eq!(r.cross_user_rate, None);
        assert_eq!(r.cross_user_comparisons, 0);
        assert!(r.same_user_rate.is_some());
    }

    #[test]
    fn identical_users_always_collide() {
        let sites: Vec<String> = ["gmail", "amazon", "netflix"].map(String::from).to_vec();
        for scheme in SchemeId::ALL {
            let r = collision_experiment_with_seeds(&Lab::default(), scheme, &[42, 42], &sites).unwrap();
            assert_eq!(r.cross_user_rate, Some(1.0), "{scheme}");
        }
    }

    #[test]
    fn one_wayness() {
        let rec = PasswordRecord::new("1", "x", "s", "a", SourceKind::Simulated { seed: 0 });
        let b = one_wayness_bound::<f64>(&[rec]).unwrap();
        assert!((b.mean_bits - 26f64.log2()).abs() < 1e-12);
        assert!((b.epsilon - 1.0 / 26.0).abs() < 1e-12);
        assert!(matches!(one_wayness_bound::<f64>(&[]), Err(SecurityError::EmptyCorpus)));
    }
}
