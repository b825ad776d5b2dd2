//! JSON file formats for weights, phantom parameters and profiles.
//!
//! Weight file:  `{"n": 5, "weights": [0, 0.3333333333, 0.3333333333, 0.3333333333, 0]}`
//! Profile file: `{"locations": [0.1, 0.3, 0.5, 0.7, 0.9]}`
//! Phantom file: `{"n": 5, "betas": [0.2, 0.4, 0.6, 0.8]}`

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::{AgmvsParams, OwaWeights, Profile};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WeightsFile {
    pub n: usize,
    pub weights: Vec<f64>,
}

impl WeightsFile {
    pub fn into_weights(self) -> Result<OwaWeights> {
        if self.n != self.weights.len() {
            return Err(Error::FileCountMismatch {
                declared: self.n,
                got: self.weights.len(),
            });
        }
        OwaWeights::new(self.weights)
    }
}

impl From<&OwaWeights> for WeightsFile {
    fn from(weights: &OwaWeights) -> Self {
        Self {
            n: weights.n(),
            weights: weights.weights().to_vec(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BetasFile {
    pub n: usize,
    pub betas: Vec<f64>,
}

impl BetasFile {
    pub fn into_params(self) -> Result<AgmvsParams> {
        if self.n != self.betas.len() + 1 {
            return Err(Error::FileCountMismatch {
                declared: self.n,
                got: self.betas.len(),
            });
        }
        AgmvsParams::new(self.n, self.betas)
    }
}

impl From<&AgmvsParams> for BetasFile {
    fn from(params: &AgmvsParams) -> Self {
        Self {
            n: params.n(),
            betas: params.betas().to_vec(),
        }
    }
}

pub fn load_weights(path: impl AsRef<Path>) -> Result<OwaWeights> {
    let file: WeightsFile = serde_json::from_str(&fs::read_to_string(path)?)?;
    file.into_weights()
}

pub fn load_betas(path: impl AsRef<Path>) -> Result<AgmvsParams> {
    let file: BetasFile = serde_json::from_str(&fs::read_to_string(path)?)?;
    file.into_params()
}

pub fn load_profile(path: impl AsRef<Path>) -> Result<Profile> {
    Ok(serde_json::from_str(&fs::read_to_string(path)?)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn write_temp(contents: &str) -> tempfile::NamedTempFile {
        let mut file = tempfile::NamedTempFile::new().unwrap();
        file.write_all(contents.as_bytes()).unwrap();
        file
    }

    #[test]
    fn loads_the_documented_weight_schema() {
        let file = write_temp(
            r#"{"n": 5, "weights": [0, 0.3333333333, 0.3333333333, 0.3333333334, 0]}"#,
        );
        let weights = load_weights(file.path()).unwrap();
        assert_eq!(weights.n(), 5);
        assert_eq!(weights.first(), 0.0);
    }

    #[test]
    fn rejects_count_mismatch() {
        let file = write_temp(r#"{"n": 4, "weights": [0.5, 0.5]}"#);
        assert!(matches!(
            load_weights(file.path()),
            Err(Error::FileCountMismatch { declared: 4, got: 2 })
        ));
    }

    #[test]
    fn loads_betas_with_declared_agent_count() {
        let file = write_temp(r#"{"n": 5, "betas": [0.2, 0.4, 0.6, 0.8]}"#);
        let params = load_betas(file.path()).unwrap();
        assert_eq!(params.n(), 5);
        assert_eq!(params.betas().len(), 4);

        let file = write_temp(r#"{"n": 3, "betas": [0.2, 0.4, 0.6]}"#);
        assert!(load_betas(file.path()).is_err());
    }

    #[test]
    fn loads_profiles_and_rejects_bad_locations() {
        let file = write_temp(r#"{"locations": [0.1, 0.3, 0.5, 0.7, 0.9]}"#);
        assert_eq!(load_profile(file.path()).unwrap().n(), 5);

        let file = write_temp(r#"{"locations": [0.1, 1.3]}"#);
        assert!(load_profile(file.path()).is_err());
    }

    #[test]
    fn accepts_long_decimal_expansions() {
        let file = write_temp(r#"{"n": 2, "weights": [0.333333333333333, 0.666666666666667]}"#);
        let weights = load_weights(file.path()).unwrap();
        assert!((weights.first() - 1.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn missing_file_is_an_io_error() {
        assert!(matches!(
            load_profile("/nonexistent/profile.json"),
            Err(Error::Io(_))
        ));
    }
}
