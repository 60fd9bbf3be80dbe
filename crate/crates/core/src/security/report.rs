use std::collections::BTreeMap;
use std::io::Write;

use serde::{Deserialize, Serialize};

use super::SecurityError;

/// Flat form of any experiment's result, for JSON and CSV output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub kind: String,
    pub seed: u64,
    pub parameters: serde_json::Value,
    /// `None` marks a value that is undefined for these parameters.
    pub estimates: BTreeMap<String, Option<f64>>,
    pub sample_sizes: BTreeMap<String, u64>,
}

impl ExperimentReport {
    pub fn new(kind: &str, seed: u64, parameters: serde_json::Value) -> Self {
        Self {
            kind: kind.to_string(),
            seed,
            parameters,
            estimates: BTreeMap::new(),
            sample_sizes: BTreeMap::new(),
        }
    }

    pub fn estimate(mut self, name: &str, value: Option<f64>) -> Self {
        self.estimates.insert(name.to_string(), value);
        self
    }

    pub fn sample(mut self, name: &str, n: u64) -> Self {
        self.sample_sizes.insert(name.to_string(), n);
        self
    }

    /// One `kind,seed,field,value` row per estimate and sample size.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<(), SecurityError> {
        let wrap = |e: csv::Error| SecurityError::Metrics(e.into());
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["kind", "seed", "field", "value"]).map_err(wrap)?;
        let seed = self.seed.to_string();
        for (k, v) in &self.estimates {
            let value = v.map_or("NA".to_string(), |x| x.to_string());
            w.write_record([self.kind.as_str(), &seed, k, &value]).map_err(wrap)?;
        }
        for (k, n) in &self.sample_sizes {
            w.write_record([self.kind.as_str(), &seed, k, &n.to_string()]).map_err(wrap)?;
        }
        w.flush().map_err(|e| SecurityError::Metrics(e.into()))
    }
}
