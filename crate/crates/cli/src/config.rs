use std::fmt::Debug;
use std::path::Path;

use serde::Deserialize;
use thiserror::Error;

/// Bad or contradictory settings, found before any work starts.
#[derive(Debug, Error)]
#[error("config error: {0}")]
pub struct ConfigError(pub String);

/// Settings a JSON config file may supply instead of flags.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub seed: Option<u64>,
    pub scheme: Option<String>,
    pub users: Option<usize>,
    pub sites: Option<usize>,
    pub trials: Option<usize>,
    pub observed: Option<usize>,
    pub adversary: Option<String>,
    pub epochs: Option<usize>,
    pub hidden: Option<usize>,
    pub learning_rate: Option<f64>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|e| ConfigError(format!("{}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| ConfigError(format!("{}: {e}", path.display())))
    }
}

/// The flag value, else the file value, else `default`. Setting both to
/// different values is an error.
pub fn pick<T: PartialEq + Debug>(name: &str, flag: Option<T>, file: Option<T>, default: T) -> Result<T, ConfigError> {
    match (flag, file) {
        (Some(a), Some(b)) if a != b => Err(ConfigError(format!(
            "--{name} is {a:?} on the command line but {b:?} in the config file"
        ))),
        (Some(a), _) | (None, Some(a)) => Ok(a),
        (None, None) => Ok(default),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flag_file_default() {
        assert_eq!(pick("seed", Some(1), None, 0).unwrap(), 1);
        assert_eq!(pick("seed", None, Some(2), 0).unwrap(), 2);
        assert_eq!(pick("seed", Some(3), Some(3), 0).unwrap(), 3);
        assert_eq!(pick::<u64>("seed", None, None, 7).unwrap(), 7);
        assert!(pick("seed", Some(1), Some(2), 0).is_err());
    }

    #[test]
    fn unknown_keys_rejected() {
        assert!(serde_json::from_str::<FileConfig>(r#"{"seeds": 3}"#).is_err());
        let c: FileConfig = serde_json::from_str(r#"{"seed": 3, "scheme": "song"}"#).unwrap();
        assert_eq!(c.seed, Some(3));
    }
}
