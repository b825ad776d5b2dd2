//! Points on the unit interval and reported profiles.

use std::cmp::Ordering;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::num::Real;

/// A point on the unit interval `[0, 1]`.
///
/// Construction validates the range; out-of-range values are rejected, never
/// clamped, so that property verdicts are not silently corrupted.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Location<T>(T);

impl<T: Real> Location<T> {
    pub fn new(value: T) -> Result<Self> {
        if value >= T::zero() && value <= T::one() {
            Ok(Self(value))
        } else {
            Err(Error::LocationOutOfRange(
                value.to_f64().unwrap_or(f64::NAN),
            ))
        }
    }

    pub fn value(self) -> T {
        self.0
    }

    /// Absolute distance to another point.
    pub fn distance(self, other: Self) -> T {
        (self.0 - other.0).abs()
    }

    /// Mirror image through the midpoint of the interval.
    pub fn mirrored(self) -> Self {
        Self(T::one() - self.0)
    }

    /// Wraps a mechanism output, absorbing floating-point drift at the
    /// interval endpoints. The value must already be in range up to the
    /// location tolerance.
    pub(crate) fn from_computed(value: T) -> Self {
        debug_assert!(
            value >= -T::location_tol() && value <= T::one() + T::location_tol(),
            "computed location {value:?} drifted outside [0, 1]"
        );
        Self(value.max(T::zero()).min(T::one()))
    }
}

impl<T: Serialize> Serialize for Location<T> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(serializer)
    }
}

impl<'de, T: Real + Deserialize<'de>> Deserialize<'de> for Location<T> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let value = T::deserialize(deserializer)?;
        Location::new(value).map_err(D::Error::custom)
    }
}

/// Utility of an agent with the given peak for an outcome: one minus the
/// distance between them.
pub fn utility<T: Real>(peak: Location<T>, outcome: Location<T>) -> T {
    T::one() - peak.distance(outcome)
}

/// Cost of an agent with the given peak for an outcome: the distance
/// between them. `cost == 1 - utility`.
pub fn cost<T: Real>(peak: Location<T>, outcome: Location<T>) -> T {
    peak.distance(outcome)
}

/// An ordered list of reported peaks, one per agent. Agent order is
/// preserved; sorting happens inside the mechanisms that need it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(
    try_from = "ProfileRepr<T>",
    bound(serialize = "T: Serialize", deserialize = "T: Real + Deserialize<'de>")
)]
pub struct Profile<T> {
    locations: Vec<Location<T>>,
}

#[derive(Deserialize)]
#[serde(bound(deserialize = "T: Real + Deserialize<'de>"))]
struct ProfileRepr<T> {
    locations: Vec<Location<T>>,
}

impl<T: Real> TryFrom<ProfileRepr<T>> for Profile<T> {
    type Error = Error;

    fn try_from(repr: ProfileRepr<T>) -> Result<Self> {
        Profile::new(repr.locations)
    }
}

impl<T: Real> Profile<T> {
    pub fn new(locations: Vec<Location<T>>) -> Result<Self> {
        if locations.is_empty() {
            return Err(Error::EmptyProfile);
        }
        Ok(Self { locations })
    }

    /// Builds a profile from raw values, validating each one.
    pub fn from_values<I: IntoIterator<Item = T>>(values: I) -> Result<Self> {
        let locations = values
            .into_iter()
            .map(Location::new)
            .collect::<Result<Vec<_>>>()?;
        Self::new(locations)
    }

    /// A profile with every agent at the same point.
    pub fn constant(n: usize, at: Location<T>) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyProfile);
        }
        Ok(Self {
            locations: vec![at; n],
        })
    }

    pub fn n(&self) -> usize {
        self.locations.len()
    }

    pub fn locations(&self) -> &[Location<T>] {
        &self.locations
    }

    pub fn get(&self, agent: usize) -> Location<T> {
        self.locations[agent]
    }

    /// Replaces one agent's report in place.
    pub fn set(&mut self, agent: usize, report: Location<T>) {
        self.locations[agent] = report;
    }

    /// A copy with one agent's report replaced.
    pub fn with_report(&self, agent: usize, report: Location<T>) -> Self {
        let mut copy = self.clone();
        copy.set(agent, report);
        copy
    }

    /// The reported values sorted ascending. Ties keep agent order; the
    /// weighted sum over a sorted multiset does not depend on the choice.
    pub fn sorted_values(&self) -> Vec<T> {
        let mut values: Vec<T> = self.locations.iter().map(|l| l.value()).collect();
        values.sort_by(|a, b| a.partial_cmp(b).unwrap_or(Ordering::Equal));
        values
    }

    pub fn min_value(&self) -> T {
        self.locations
            .iter()
            .map(|l| l.value())
            .fold(T::infinity(), T::min)
    }

    pub fn max_value(&self) -> T {
        self.locations
            .iter()
            .map(|l| l.value())
            .fold(T::neg_infinity(), T::max)
    }

    /// The common location if every agent reports the same point.
    pub fn constant_value(&self) -> Option<Location<T>> {
        let first = self.locations[0];
        self.locations
            .iter()
            .all(|l| l.value() == first.value())
            .then_some(first)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn loc(v: f64) -> Location<f64> {
        Location::new(v).unwrap()
    }

    #[test]
    fn location_rejects_out_of_range() {
        assert!(Location::new(-0.1f64).is_err());
        assert!(Location::new(1.1f64).is_err());
        assert!(Location::new(f64::NAN).is_err());
        assert!(Location::new(0.0f64).is_ok());
        assert!(Location::new(1.0f64).is_ok());
    }

    #[test]
    fn utility_is_one_minus_distance() {
        assert_eq!(utility(loc(0.5), loc(0.5)), 1.0);
        assert!((utility(loc(0.3), loc(0.86)) - 0.44).abs() < 1e-9);
        assert!((utility(loc(0.3), loc(1.0)) - 0.3).abs() < 1e-9);
        assert_eq!(cost(loc(0.3), loc(1.0)) + utility(loc(0.3), loc(1.0)), 1.0);
    }

    #[test]
    fn profile_must_be_nonempty() {
        assert!(matches!(
            Profile::<f64>::from_values([]),
            Err(Error::EmptyProfile)
        ));
    }

    #[test]
    fn profile_rejects_bad_values() {
        assert!(Profile::from_values([0.2, 1.5]).is_err());
    }

    #[test]
    fn sorted_values_sorts_ascending() {
        let p = Profile::from_values([0.9, 0.1, 0.5]).unwrap();
        assert_eq!(p.sorted_values(), vec![0.1, 0.5, 0.9]);
        assert_eq!(p.min_value(), 0.1);
        assert_eq!(p.max_value(), 0.9);
    }

    #[test]
    fn profile_json_matches_file_schema() {
        let p: Profile<f64> =
            serde_json::from_str(r#"{"locations": [0.1, 0.3, 0.5, 0.7, 0.9]}"#).unwrap();
        assert_eq!(p.n(), 5);
        let back = serde_json::to_string(&p).unwrap();
        assert_eq!(back, r#"{"locations":[0.1,0.3,0.5,0.7,0.9]}"#);
    }

    #[test]
    fn profile_json_rejects_out_of_range() {
        let err = serde_json::from_str::<Profile<f64>>(r#"{"locations": [0.1, 2.0]}"#);
        assert!(err.is_err());
    }

    #[test]
    fn parses_fifteen_significant_digits() {
        let p: Profile<f64> =
            serde_json::from_str(r#"{"locations": [0.333333333333333]}"#).unwrap();
        assert!((p.get(0).value() - 0.333333333333333).abs() < 1e-15);
    }
}
