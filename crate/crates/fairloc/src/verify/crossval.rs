//! Cross-validation of the analytic characterizations against grid sweeps.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::fairness::{is_ifs, is_pf, is_proportional};
use crate::incentives::{is_nom, is_sp};
use crate::property::Property;
use crate::verify::empirical::{empirical_fairness, empirical_nom, empirical_sp};
use crate::verify::grid::{simplex_weights, GridSpec};
use crate::verify::report::WitnessRecord;
use crate::{Mechanism, OwaWeights};

/// A weight vector whose analytic verdict disagrees with the grid sweep.
/// An empty mismatch list is the expected outcome; any entry points at a
/// defect in a predicate or a sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CrossMismatch {
    pub weights: OwaWeights,
    pub property: Property,
    pub analytic: bool,
    pub empirical: bool,
    /// The sweep's counterexample, present when the grid found a violation
    /// the predicate denies.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<WitnessRecord>,
}

/// Summary of a cross-validation run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CrossValidation {
    pub grid: GridSpec,
    pub weight_vectors: usize,
    pub comparisons: usize,
    pub mismatches: Vec<CrossMismatch>,
}

impl CrossValidation {
    pub fn is_clean(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// For every weight vector on the simplex grid, compares the analytic
/// predicate with the grid sweep for strategy-proofness, non-obvious
/// manipulability, individual fair share, proportional fairness and
/// proportionality.
pub fn cross_validate(spec: &GridSpec) -> Result<CrossValidation> {
    let vectors = simplex_weights(spec.n(), spec.m());
    let mut comparisons = 0usize;
    let mut mismatches = Vec::new();

    for weights in &vectors {
        let mech = Mechanism::from_owa(weights.clone());
        let (sp, sp_witness) = empirical_sp(&mech, spec)?;
        let (nom, nom_witness) = empirical_nom(weights, spec);
        let (ifs, ifs_witness) = empirical_fairness(&mech, Property::Ifs, spec)?;
        let (pf, pf_witness) = empirical_fairness(&mech, Property::Pf, spec)?;
        let (prop, prop_witness) =
            empirical_fairness(&mech, Property::Proportionality, spec)?;
        let verdicts: [(Property, bool, bool, Option<WitnessRecord>); 5] = [
            (
                Property::Sp,
                is_sp(weights),
                sp,
                sp_witness.map(WitnessRecord::Manipulation),
            ),
            (
                Property::Nom,
                is_nom(weights),
                nom,
                nom_witness.map(WitnessRecord::Manipulation),
            ),
            (
                Property::Ifs,
                is_ifs(weights),
                ifs,
                ifs_witness.map(WitnessRecord::Fairness),
            ),
            (
                Property::Pf,
                is_pf(weights),
                pf,
                pf_witness.map(WitnessRecord::Fairness),
            ),
            (
                Property::Proportionality,
                is_proportional(weights),
                prop,
                prop_witness.map(WitnessRecord::Fairness),
            ),
        ];
        for (property, analytic, empirical, witness) in verdicts {
            comparisons += 1;
            if analytic != empirical {
                mismatches.push(CrossMismatch {
                    weights: weights.clone(),
                    property,
                    analytic,
                    empirical,
                    witness,
                });
            }
        }
    }

    Ok(CrossValidation {
        grid: *spec,
        weight_vectors: vectors.len(),
        comparisons,
        mismatches,
    })
}
