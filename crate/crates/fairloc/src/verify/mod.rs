//! Empirical verification: grid enumeration, property sweeps,
//! analytic/empirical cross-validation and the compatibility matrix.

mod crossval;
mod empirical;
mod grid;
mod matrix;
mod report;

pub use crossval::{cross_validate, CrossMismatch, CrossValidation};
pub use empirical::{
    empirical_fairness, empirical_nom, empirical_nom_grid, empirical_sp,
    reachable_interval_by_corners, FairnessViolation,
};
pub use grid::{enumerate_profiles, simplex_weights, GridSpec, ProfileGrid};
pub use matrix::{
    compatibility_matrix, CompatibilityCell, CompatibilityMatrix, MATRIX_COLUMNS, MATRIX_ROWS,
};
pub use report::{analyze, PropertyRecord, PropertyReport, WitnessRecord, REPORTED_PROPERTIES};
