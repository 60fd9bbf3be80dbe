//! Security experiments: preimage counting, collision and avalanche runs,
//! unforgeability games against pluggable adversaries, and the binomial
//! calculator for cue-based recovery.
//!
//! Every experiment derives its per-user and per-trial randomness from one
//! master seed, so reports are reproducible bit for bit and do not depend on
//! the order in which trials are run.

mod adversary;
mod cue;
mod experiments;
mod preimage;
mod report;
mod ufrca;

pub use adversary::{
    adversary, Adversary, AdversaryId, CharsetAwareRandom, DictionarySentence, FrequencyReuse, UniformRandom,
};
pub use cue::{binomial_upper_tails, cue_recovery_min_images, CueRecovery, DEFAULT_MAX_FPR, DEFAULT_MIN_TPR, MAX_IMAGES};
pub use experiments::{
    avalanche_experiment, collision_experiment, collision_experiment_with_seeds, hex_position_agreement,
    is_single_edit, one_wayness_bound, simulate_records, AvalancheReport, CollisionReport, OneWayness,
};
pub use preimage::{preimage_pair_count, Counting};
pub use report::ExperimentReport;
pub use ufrca::{ufrca_game, UfRcaReport};

use std::sync::{Arc, OnceLock};

use rand::RngCore;
use thiserror::Error;

use crate::corpus::Lexicon;
use crate::memory::{derive_rng, Corpora, MemoryModel, ModelConfig};
use crate::metrics::MetricsError;
use crate::schemes::{build_box, SchemeContext, SchemeError};

#[derive(Debug, Error)]
pub enum SecurityError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("primed accuracy p={p} must exceed unprimed accuracy n={n}, both in [0, 1]")]
    InvalidPriming { p: f64, n: f64 },
    #[error("invalid website pair: {0}")]
    InvalidPair(String),
    #[error("corpus is empty")]
    EmptyCorpus,
    #[error("{0}")]
    Unreachable(String),
    #[error(transparent)]
    Scheme(#[from] SchemeError),
    #[error(transparent)]
    Metrics(#[from] MetricsError),
}

/// Shared inputs of an experiment: corpora and model shape for the simulated
/// users, and the keyboard and printed box every user shares.
#[derive(Debug, Clone)]
pub struct Lab {
    pub corpora: Arc<Corpora>,
    pub config: ModelConfig,
    pub schemes: SchemeContext,
    pub websites: Vec<String>,
}

pub const LAB_BOX_SEED: u64 = 0;

impl Default for Lab {
    fn default() -> Self {
        Self {
            corpora: Corpora::bundled(),
            config: ModelConfig::default(),
            schemes: SchemeContext::with_box(build_box(LAB_BOX_SEED)),
            websites: default_websites().words().to_vec(),
        }
    }
}

impl Lab {
    pub fn user(&self, seed: u64) -> Result<MemoryModel, SecurityError> {
        MemoryModel::new(seed, self.corpora.clone(), self.config).map_err(|e| SecurityError::Scheme(e.into()))
    }
}

/// Popular website names shipped with the crate.
pub fn default_websites() -> &'static Lexicon {
    static SITES: OnceLock<Lexicon> = OnceLock::new();
    SITES.get_or_init(|| {
        Lexicon::parse("websites", include_str!("../../data/websites.txt"), "popular website names")
            .expect("bundled website list is valid")
    })
}

/// Seed of the `index`-th simulated user or trial under `master`.
pub fn split_seed(master: u64, tag: &str, index: u64) -> u64 {
    derive_rng(master, tag, &[&index.to_le_bytes()]).next_u64()
}
