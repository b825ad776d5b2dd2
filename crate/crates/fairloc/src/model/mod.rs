//! Domain types and the mechanism families: profiles of peaks on the unit
//! interval, ordered weighted averages, and generalized median voter schemes.

mod location;
mod mechanism;
mod median;
mod owa;

pub use location::{cost, utility, Location, Profile};
pub use mechanism::{Mechanism, MechanismKind, Preset};
pub use median::{order_statistic_as_agmvs, AgmvsParams, GmvsParams, GMVS_MAX_AGENTS};
pub use owa::OwaWeights;
