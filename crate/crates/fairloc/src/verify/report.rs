//! Per-mechanism property reports combining analytic and grid verdicts.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fairness::{is_ifs, is_pf, is_proportional, is_unanimous};
use crate::incentives::{
    best_case_utility, construct_nomw_violation, construct_sp_violation, is_nom, is_nom_b, is_sp,
};
use crate::property::Property;
use crate::verify::empirical::{
    empirical_fairness, empirical_nom, empirical_nom_grid, empirical_sp, FairnessViolation,
};
use crate::verify::grid::GridSpec;
use crate::{ManipulationWitness, Mechanism, MechanismKind, OwaWeights};

const TOL: f64 = 1e-9;

/// A witness attached to a failing property row.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum WitnessRecord {
    Manipulation(ManipulationWitness),
    Fairness(FairnessViolation),
}

/// One property row: the analytic verdict where a closed-form predicate
/// exists, the grid-verified empirical verdict, and a witness when the
/// property fails.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PropertyRecord {
    pub property: Property,
    pub analytic: Option<bool>,
    /// Grid-verified at step `1/k`: a failing verdict is a proof, a passing
    /// one is evidence at grid resolution.
    pub empirical: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<WitnessRecord>,
}

impl PropertyRecord {
    pub fn holds(&self) -> bool {
        self.analytic.unwrap_or(self.empirical)
    }
}

/// The full verdict table for one mechanism.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PropertyReport {
    pub mechanism: Mechanism,
    pub grid: GridSpec,
    pub records: Vec<PropertyRecord>,
}

impl PropertyReport {
    pub fn record(&self, property: Property) -> Option<&PropertyRecord> {
        self.records.iter().find(|r| r.property == property)
    }
}

/// The properties reported for every mechanism, in row order.
pub const REPORTED_PROPERTIES: [Property; 7] = [
    Property::Sp,
    Property::Nom,
    Property::NomB,
    Property::Ifs,
    Property::Pf,
    Property::Proportionality,
    Property::Unanimity,
];

/// Builds the property table for an OWA (analytic and empirical columns) or
/// an anonymous median scheme (empirical column only). Analytic and
/// empirical verdicts must agree; a disagreement aborts instead of
/// producing a report.
pub fn analyze(mech: &Mechanism, spec: &GridSpec) -> Result<PropertyReport> {
    if mech.n() != spec.n() {
        return Err(Error::LengthMismatch {
            expected: mech.n(),
            got: spec.n(),
        });
    }
    let records = match mech.kind() {
        MechanismKind::Owa(weights) => analyze_owa(mech, weights, spec)?,
        MechanismKind::Agmvs(_) => analyze_empirical_only(mech, spec)?,
        MechanismKind::Gmvs(_) => return Err(Error::UnsupportedMechanism),
    };
    Ok(PropertyReport {
        mechanism: mech.clone(),
        grid: *spec,
        records,
    })
}

fn analyze_owa(
    mech: &Mechanism,
    weights: &OwaWeights,
    spec: &GridSpec,
) -> Result<Vec<PropertyRecord>> {
    let mut records = Vec::with_capacity(REPORTED_PROPERTIES.len());
    for property in REPORTED_PROPERTIES {
        let (analytic, empirical, witness) = match property {
            Property::Sp => {
                let (ok, grid_witness) = empirical_sp(mech, spec)?;
                let witness = construct_sp_violation(weights)
                    .map(WitnessRecord::Manipulation)
                    .or(grid_witness.map(WitnessRecord::Manipulation));
                (is_sp(weights), ok, witness)
            }
            Property::Nom => {
                let (ok, grid_witness) = empirical_nom(weights, spec);
                let witness = construct_nomw_violation(weights)
                    .map(WitnessRecord::Manipulation)
                    .or(grid_witness.map(WitnessRecord::Manipulation));
                (is_nom(weights), ok, witness)
            }
            Property::NomB => {
                let (ok, grid_witness) = empirical_nom_b(weights, spec);
                (is_nom_b(weights), ok, grid_witness.map(WitnessRecord::Manipulation))
            }
            Property::Ifs => fairness_row(mech, Property::Ifs, is_ifs(weights), spec)?,
            Property::Pf => fairness_row(mech, Property::Pf, is_pf(weights), spec)?,
            Property::Proportionality => fairness_row(
                mech,
                Property::Proportionality,
                is_proportional(weights),
                spec,
            )?,
            Property::Unanimity => {
                fairness_row(mech, Property::Unanimity, is_unanimous(weights), spec)?
            }
            Property::Ufs => unreachable!("not part of the report rows"),
        };
        if analytic != empirical {
            return Err(Error::VerdictMismatch {
                property,
                analytic,
                empirical,
            });
        }
        records.push(PropertyRecord {
            property,
            analytic: Some(analytic),
            empirical,
            witness,
        });
    }
    Ok(records)
}

fn fairness_row(
    mech: &Mechanism,
    property: Property,
    analytic: bool,
    spec: &GridSpec,
) -> Result<(bool, bool, Option<WitnessRecord>)> {
    let (ok, violation) = empirical_fairness(mech, property, spec)?;
    Ok((analytic, ok, violation.map(WitnessRecord::Fairness)))
}

fn analyze_empirical_only(mech: &Mechanism, spec: &GridSpec) -> Result<Vec<PropertyRecord>> {
    let mut records = Vec::with_capacity(REPORTED_PROPERTIES.len());
    for property in REPORTED_PROPERTIES {
        let (empirical, witness) = match property {
            Property::Sp => {
                let (ok, w) = empirical_sp(mech, spec)?;
                (ok, w.map(WitnessRecord::Manipulation))
            }
            Property::Nom => {
                let (ok, w) = empirical_nom_grid(mech, spec)?;
                (ok, w.map(WitnessRecord::Manipulation))
            }
            Property::NomB => {
                let (ok, w) = empirical_nom_b_grid(mech, spec)?;
                (ok, w.map(WitnessRecord::Manipulation))
            }
            Property::Ifs | Property::Pf | Property::Proportionality | Property::Unanimity => {
                let (ok, v) = empirical_fairness(mech, property, spec)?;
                (ok, v.map(WitnessRecord::Fairness))
            }
            Property::Ufs => unreachable!("not part of the report rows"),
        };
        records.push(PropertyRecord {
            property,
            analytic: None,
            empirical,
            witness,
        });
    }
    Ok(records)
}

/// Best-case half of the manipulability check over grid pairs, with the
/// closed-form utilities.
fn empirical_nom_b(
    weights: &OwaWeights,
    spec: &GridSpec,
) -> (bool, Option<ManipulationWitness>) {
    let points = spec.location_grid();
    for &truth in &points {
        let truthful_best = best_case_utility(weights, truth, truth);
        for &report in &points {
            if best_case_utility(weights, truth, report) > truthful_best + TOL {
                // unreachable for valid weights; report the offending pair
                let interval = crate::incentives::reachable_interval(weights, report);
                let outcome = if interval.contains(truth) {
                    truth
                } else if truth.value() < interval.lo().value() {
                    interval.lo()
                } else {
                    interval.hi()
                };
                return (
                    false,
                    Some(ManipulationWitness {
                        agent: 1,
                        truth,
                        misreport: report,
                        profile_others: vec![outcome; weights.n() - 1],
                        truthful_outcome: truth,
                        manipulated_outcome: outcome,
                        gain: best_case_utility(weights, truth, report) - truthful_best,
                    }),
                );
            }
        }
    }
    (true, None)
}

/// Best-case check for an arbitrary mechanism via corner intervals.
fn empirical_nom_b_grid(
    mech: &Mechanism,
    spec: &GridSpec,
) -> Result<(bool, Option<ManipulationWitness>)> {
    use crate::verify::empirical::reachable_interval_by_corners;
    let points = spec.location_grid();
    let intervals = points
        .iter()
        .map(|&report| reachable_interval_by_corners(mech, report))
        .collect::<Result<Vec<_>>>()?;
    for (ti, &truth) in points.iter().enumerate() {
        let truthful_best = 1.0 - intervals[ti].min_distance_from(truth);
        for (ri, &report) in points.iter().enumerate() {
            let best = 1.0 - intervals[ri].min_distance_from(truth);
            if best > truthful_best + TOL {
                let outcome = if intervals[ri].contains(truth) {
                    truth
                } else if truth.value() < intervals[ri].lo().value() {
                    intervals[ri].lo()
                } else {
                    intervals[ri].hi()
                };
                return Ok((
                    false,
                    Some(ManipulationWitness {
                        agent: 1,
                        truth,
                        misreport: report,
                        profile_others: vec![outcome; mech.n() - 1],
                        truthful_outcome: truth,
                        manipulated_outcome: outcome,
                        gain: best - truthful_best,
                    }),
                ));
            }
        }
    }
    Ok((true, None))
}
