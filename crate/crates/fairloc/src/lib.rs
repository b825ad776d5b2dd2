//! Mechanisms for locating a single facility on the unit interval, with
//! exact incentive and fairness analysis.
//!
//! Three mechanism families are implemented: ordered weighted averages
//! (weighted sums of the sorted reports), anonymous generalized median
//! voter schemes (the median of the reports plus fixed phantom peaks), and
//! general min-max schemes with one threshold per coalition. On top of the
//! mechanisms sit two analysis engines:
//!
//! * [`incentives`] and [`fairness`] decide strategy-proofness, non-obvious
//!   manipulability and the proportionality-based fairness hierarchy
//!   analytically from the OWA weights, and construct explicit
//!   counterexamples when a property fails;
//! * [`verify`] checks the same properties empirically over location and
//!   weight grids, cross-validates the two engines against each other, and
//!   tabulates which incentive/fairness combinations are achievable.
//!
//! The arithmetic is generic over the scalar type through [`num::Real`];
//! the crate root exports `f64` aliases for the common case, and the
//! verification machinery works on those.

pub mod error;
pub mod fairness;
pub mod files;
pub mod incentives;
pub mod model;
pub mod num;
pub mod property;
pub mod verify;

pub use error::{Error, Result};
pub use num::Real;
pub use property::Property;

pub use model::Preset;

/// A point on `[0, 1]` at the default `f64` precision.
pub type Location = model::Location<f64>;
/// A reported profile at the default `f64` precision.
pub type Profile = model::Profile<f64>;
/// OWA weights at the default `f64` precision.
pub type OwaWeights = model::OwaWeights<f64>;
/// Phantom-median parameters at the default `f64` precision.
pub type AgmvsParams = model::AgmvsParams<f64>;
/// Min-max subset parameters at the default `f64` precision.
pub type GmvsParams = model::GmvsParams<f64>;
/// A mechanism handle at the default `f64` precision.
pub type Mechanism = model::Mechanism<f64>;
/// Mechanism family tag at the default `f64` precision.
pub type MechanismKind = model::MechanismKind<f64>;
/// Reachable outcome interval at the default `f64` precision.
pub type ReachableInterval = incentives::ReachableInterval<f64>;
/// A profitable deviation at the default `f64` precision.
pub type ManipulationWitness = incentives::ManipulationWitness<f64>;
/// A point-level fairness verdict at the default `f64` precision.
pub type FairnessVerdict = fairness::FairnessVerdict<f64>;
/// A violating coalition at the default `f64` precision.
pub type CoalitionWitness = fairness::CoalitionWitness<f64>;
