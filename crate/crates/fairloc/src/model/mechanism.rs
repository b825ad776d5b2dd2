//! A uniform handle over the mechanism families, plus the named presets.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::location::{Location, Profile};
use crate::model::median::AgmvsParams;
use crate::model::median::GmvsParams;
use crate::model::owa::OwaWeights;
use crate::num::Real;

/// The parameter family a mechanism belongs to.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(
    rename_all = "snake_case",
    bound(
        serialize = "T: Serialize + Clone",
        deserialize = "T: Real + Deserialize<'de>"
    )
)]
pub enum MechanismKind<T> {
    Owa(OwaWeights<T>),
    Agmvs(AgmvsParams<T>),
    Gmvs(GmvsParams<T>),
}

/// A concrete mechanism: its parameters and an optional preset label.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(
    serialize = "T: Serialize + Clone",
    deserialize = "T: Real + Deserialize<'de>"
))]
pub struct Mechanism<T> {
    kind: MechanismKind<T>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    label: Option<String>,
}

impl<T: Real> Mechanism<T> {
    pub fn from_owa(weights: OwaWeights<T>) -> Self {
        Self {
            kind: MechanismKind::Owa(weights),
            label: None,
        }
    }

    pub fn from_agmvs(params: AgmvsParams<T>) -> Self {
        Self {
            kind: MechanismKind::Agmvs(params),
            label: None,
        }
    }

    pub fn from_gmvs(params: GmvsParams<T>) -> Self {
        Self {
            kind: MechanismKind::Gmvs(params),
            label: None,
        }
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    /// Builds one of the named preset mechanisms for `n` agents.
    pub fn preset(preset: Preset, n: usize) -> Result<Self> {
        let mech = match preset {
            Preset::Median => Self::from_owa(OwaWeights::median(n)?),
            Preset::Center => Self::from_owa(OwaWeights::center(n)?),
            Preset::StandardAverage => Self::from_owa(OwaWeights::standard_average(n)?),
            Preset::OlympicAverage => Self::from_owa(OwaWeights::olympic_average(n)?),
            Preset::OrderStatistic(rank) => Self::from_owa(OwaWeights::order_statistic(rank, n)?),
            Preset::UniformPhantom => Self::from_agmvs(AgmvsParams::uniform_phantom(n)?),
        };
        Ok(mech.with_label(preset.to_string()))
    }

    pub fn kind(&self) -> &MechanismKind<T> {
        &self.kind
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn family(&self) -> &'static str {
        match self.kind {
            MechanismKind::Owa(_) => "OWA",
            MechanismKind::Agmvs(_) => "AGMVS",
            MechanismKind::Gmvs(_) => "GMVS",
        }
    }

    pub fn n(&self) -> usize {
        match &self.kind {
            MechanismKind::Owa(w) => w.n(),
            MechanismKind::Agmvs(p) => p.n(),
            MechanismKind::Gmvs(p) => p.n(),
        }
    }

    pub fn as_owa(&self) -> Option<&OwaWeights<T>> {
        match &self.kind {
            MechanismKind::Owa(w) => Some(w),
            _ => None,
        }
    }

    pub fn as_agmvs(&self) -> Option<&AgmvsParams<T>> {
        match &self.kind {
            MechanismKind::Agmvs(p) => Some(p),
            _ => None,
        }
    }

    pub fn locate(&self, profile: &Profile<T>) -> Result<Location<T>> {
        match &self.kind {
            MechanismKind::Owa(w) => w.locate(profile),
            MechanismKind::Agmvs(p) => p.locate(profile),
            MechanismKind::Gmvs(p) => p.locate(profile),
        }
    }
}

/// The named preset mechanisms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preset {
    Median,
    Center,
    StandardAverage,
    OlympicAverage,
    /// 1-based rank of the report the mechanism returns.
    OrderStatistic(usize),
    UniformPhantom,
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Preset::Median => f.write_str("median"),
            Preset::Center => f.write_str("center"),
            Preset::StandardAverage => f.write_str("standard_average"),
            Preset::OlympicAverage => f.write_str("olympic_average"),
            Preset::OrderStatistic(rank) => write!(f, "order_statistic({rank})"),
            Preset::UniformPhantom => f.write_str("uniform_phantom"),
        }
    }
}

impl FromStr for Preset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "median" => return Ok(Preset::Median),
            "center" => return Ok(Preset::Center),
            "standard_average" => return Ok(Preset::StandardAverage),
            "olympic_average" => return Ok(Preset::OlympicAverage),
            "uniform_phantom" => return Ok(Preset::UniformPhantom),
            _ => {}
        }
        if let Some(rest) = s.strip_prefix("order_statistic") {
            let rank = rest
                .trim_start_matches([':', '('])
                .trim_end_matches(')')
                .parse::<usize>()
                .map_err(|_| Error::UnknownPreset(s.to_string()))?;
            return Ok(Preset::OrderStatistic(rank));
        }
        Err(Error::UnknownPreset(s.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn preset_dispatch() {
        let center: Mechanism<f64> = Mechanism::preset(Preset::Center, 5).unwrap();
        assert_eq!(center.as_owa().unwrap().weights()[0], 0.5);
        assert_eq!(center.label(), Some("center"));
        assert_eq!(center.family(), "OWA");

        let phantom: Mechanism<f64> = Mechanism::preset(Preset::UniformPhantom, 5).unwrap();
        assert_eq!(phantom.as_agmvs().unwrap().betas().len(), 4);
        assert_eq!(phantom.family(), "AGMVS");

        let median: Mechanism<f64> = Mechanism::preset(Preset::Median, 5).unwrap();
        let stat: Mechanism<f64> = Mechanism::preset(Preset::OrderStatistic(3), 5).unwrap();
        assert_eq!(median.as_owa(), stat.as_owa());
    }

    #[test]
    fn preset_parsing() {
        assert_eq!("median".parse::<Preset>().unwrap(), Preset::Median);
        assert_eq!(
            "order_statistic(3)".parse::<Preset>().unwrap(),
            Preset::OrderStatistic(3)
        );
        assert_eq!(
            "order_statistic:2".parse::<Preset>().unwrap(),
            Preset::OrderStatistic(2)
        );
        assert!("nonsense".parse::<Preset>().is_err());
        assert!("order_statistic(x)".parse::<Preset>().is_err());
    }

    #[test]
    fn unanimity_through_the_handle() {
        let mech: Mechanism<f64> = Mechanism::preset(Preset::Center, 2).unwrap();
        let p = Profile::from_values([0.4, 0.4]).unwrap();
        assert!((mech.locate(&p).unwrap().value() - 0.4).abs() < 1e-9);
    }

    #[test]
    fn mechanism_serde_round_trip() {
        let mech: Mechanism<f64> = Mechanism::preset(Preset::OlympicAverage, 5).unwrap();
        let json = serde_json::to_string(&mech).unwrap();
        let back: Mechanism<f64> = serde_json::from_str(&json).unwrap();
        assert_eq!(mech, back);
    }
}
