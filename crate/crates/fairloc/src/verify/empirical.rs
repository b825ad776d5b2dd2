//! Grid-based empirical property checks, used to cross-validate the
//! analytic predicates and to analyze mechanisms without closed forms.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::fairness::{ifs_at, pf_at, ufs_at};
use crate::incentives::{best_case_utility, worst_case_utility};
use crate::model::utility;
use crate::property::Property;
use crate::verify::grid::{enumerate_profiles, GridSpec};
use crate::{
    CoalitionWitness, FairnessVerdict, Location, ManipulationWitness, Mechanism, OwaWeights,
    Profile, ReachableInterval,
};

const TOL: f64 = 1e-9;

/// A grid profile whose outcome violates a point-level fairness check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FairnessViolation {
    pub profile: Profile,
    pub outcome: Location,
    pub verdict: FairnessVerdict,
}

/// Searches the grid for a profitable deviation: every profile, every agent,
/// every grid misreport. Returns the first violation in lexicographic
/// iteration order.
pub fn empirical_sp(
    mech: &Mechanism,
    spec: &GridSpec,
) -> Result<(bool, Option<ManipulationWitness>)> {
    let points = spec.location_grid();
    let evals =
        spec.profile_count() * (1 + spec.n() as u128 * (u128::from(spec.k()) + 1));
    spec.ensure_budget(evals)?;

    for profile in enumerate_profiles(spec)? {
        let truthful_outcome = mech.locate(&profile)?;
        let mut scratch = profile.clone();
        for agent in 0..spec.n() {
            let truth = profile.get(agent);
            let truthful_utility = utility(truth, truthful_outcome);
            for &misreport in &points {
                if misreport.value() == truth.value() {
                    continue;
                }
                scratch.set(agent, misreport);
                let outcome = mech.locate(&scratch)?;
                let gain = utility(truth, outcome) - truthful_utility;
                if gain > TOL {
                    let mut others: Vec<Location> = profile.locations().to_vec();
                    others.remove(agent);
                    return Ok((
                        false,
                        Some(ManipulationWitness {
                            agent: agent + 1,
                            truth,
                            misreport,
                            profile_others: others,
                            truthful_outcome,
                            manipulated_outcome: outcome,
                            gain,
                        }),
                    ));
                }
            }
            scratch.set(agent, truth);
        }
    }
    Ok((true, None))
}

/// Checks the best- and worst-case inequalities for every grid pair of
/// truth and report, using the closed-form utilities for OWA weights.
pub fn empirical_nom(
    weights: &OwaWeights,
    spec: &GridSpec,
) -> (bool, Option<ManipulationWitness>) {
    let points = spec.location_grid();
    for &truth in &points {
        let truthful_worst = worst_case_utility(weights, truth, truth);
        let truthful_best = best_case_utility(weights, truth, truth);
        for &report in &points {
            if report.value() == truth.value() {
                continue;
            }
            let worst = worst_case_utility(weights, truth, report);
            if worst > truthful_worst + TOL {
                let witness = worst_case_witness(
                    crate::incentives::reachable_interval(weights, truth),
                    crate::incentives::reachable_interval(weights, report),
                    truth,
                    report,
                    spec.n(),
                );
                return (false, Some(witness));
            }
            let best = best_case_utility(weights, truth, report);
            if best > truthful_best + TOL {
                // unreachable for valid weights: truth-telling already
                // attains the maximum utility of one
                let witness = worst_case_witness(
                    crate::incentives::reachable_interval(weights, truth),
                    crate::incentives::reachable_interval(weights, report),
                    truth,
                    report,
                    spec.n(),
                );
                return (false, Some(witness));
            }
        }
    }
    (true, None)
}

/// Same check for an arbitrary mechanism: reachable intervals are taken
/// between the all-zeros and all-ones opponent profiles, which are the
/// extremes for any mechanism that is monotone in each report.
pub fn empirical_nom_grid(
    mech: &Mechanism,
    spec: &GridSpec,
) -> Result<(bool, Option<ManipulationWitness>)> {
    let points = spec.location_grid();
    let evals = 2 * (u128::from(spec.k()) + 1);
    spec.ensure_budget(evals)?;

    let intervals = points
        .iter()
        .map(|&report| reachable_interval_by_corners(mech, report))
        .collect::<Result<Vec<_>>>()?;

    for (ti, &truth) in points.iter().enumerate() {
        let truthful_worst = 1.0 - intervals[ti].max_distance_from(truth);
        let truthful_best = 1.0 - intervals[ti].min_distance_from(truth);
        for (ri, &report) in points.iter().enumerate() {
            if ri == ti {
                continue;
            }
            let worst = 1.0 - intervals[ri].max_distance_from(truth);
            let best = 1.0 - intervals[ri].min_distance_from(truth);
            if worst > truthful_worst + TOL || best > truthful_best + TOL {
                let witness =
                    worst_case_witness(intervals[ti], intervals[ri], truth, report, spec.n());
                return Ok((false, Some(witness)));
            }
        }
    }
    Ok((true, None))
}

/// Outcome interval over opponents pinned to the interval endpoints. Exact
/// for mechanisms monotone in each coordinate, which covers all families
/// here.
pub fn reachable_interval_by_corners(
    mech: &Mechanism,
    report: Location,
) -> Result<ReachableInterval> {
    let n = mech.n();
    if n == 1 {
        let at = mech.locate(&Profile::new(vec![report])?)?;
        return ReachableInterval::new(at, at);
    }
    let zero = Location::new(0.0).expect("in range");
    let one = Location::new(1.0).expect("in range");
    let mut low_profile = vec![zero; n];
    low_profile[0] = report;
    let mut high_profile = vec![one; n];
    high_profile[0] = report;
    let lo = mech.locate(&Profile::new(low_profile)?)?;
    let hi = mech.locate(&Profile::new(high_profile)?)?;
    ReachableInterval::new(lo, hi)
}

/// Builds a worst-case deviation witness from the two reachable intervals.
/// The recorded outcomes are the worst outcomes of truth and misreport;
/// `profile_others` pins the opponents to the corner realizing the
/// misreport's worst case.
fn worst_case_witness(
    truth_interval: ReachableInterval,
    report_interval: ReachableInterval,
    truth: Location,
    report: Location,
    n: usize,
) -> ManipulationWitness {
    let truthful_outcome = truth_interval.farthest_from(truth);
    let manipulated_outcome = report_interval.farthest_from(truth);
    let corner = if manipulated_outcome.value() == report_interval.hi().value() {
        Location::new(1.0).expect("in range")
    } else {
        Location::new(0.0).expect("in range")
    };
    ManipulationWitness {
        agent: 1,
        truth,
        misreport: report,
        profile_others: vec![corner; n - 1],
        truthful_outcome,
        manipulated_outcome,
        gain: utility(truth, manipulated_outcome) - utility(truth, truthful_outcome),
    }
}

/// Sweeps the grid for a profile whose outcome violates the point-level
/// check of the given fairness property. Proportionality only needs the
/// `{0,1}`-profiles and unanimity only the constant ones.
pub fn empirical_fairness(
    mech: &Mechanism,
    property: Property,
    spec: &GridSpec,
) -> Result<(bool, Option<FairnessViolation>)> {
    debug_assert!(property.is_fairness());
    match property {
        Property::Proportionality => proportionality_sweep(mech, spec),
        Property::Unanimity => unanimity_sweep(mech, spec),
        _ => {
            spec.ensure_budget(spec.profile_count())?;
            for profile in enumerate_profiles(spec)? {
                let outcome = mech.locate(&profile)?;
                let verdict = match property {
                    Property::Ifs => ifs_at(&profile, outcome),
                    Property::Ufs => ufs_at(&profile, outcome),
                    Property::Pf => pf_at(&profile, outcome),
                    _ => unreachable!("remaining properties handled above"),
                };
                if !verdict.holds {
                    return Ok((
                        false,
                        Some(FairnessViolation {
                            profile,
                            outcome,
                            verdict,
                        }),
                    ));
                }
            }
            Ok((true, None))
        }
    }
}

/// On profiles with `c` agents at 1 and the rest at 0, the outcome must be
/// `c/n`. Anonymity makes the `n + 1` sorted representatives sufficient.
fn proportionality_sweep(
    mech: &Mechanism,
    spec: &GridSpec,
) -> Result<(bool, Option<FairnessViolation>)> {
    let n = spec.n();
    spec.ensure_budget(n as u128 + 1)?;
    let zero = Location::new(0.0).expect("in range");
    let one = Location::new(1.0).expect("in range");
    for ones in 0..=n {
        let mut locations = vec![zero; n - ones];
        locations.extend(vec![one; ones]);
        let profile = Profile::new(locations)?;
        let outcome = mech.locate(&profile)?;
        let target = ones as f64 / n as f64;
        let deviation = (outcome.value() - target).abs();
        if deviation > TOL {
            let verdict = FairnessVerdict {
                property: Property::Proportionality,
                holds: false,
                witness: Some(CoalitionWitness {
                    coalition: (1..=n).collect(),
                    binding_agent: 1,
                    slack: -deviation,
                }),
            };
            return Ok((
                false,
                Some(FairnessViolation {
                    profile,
                    outcome,
                    verdict,
                }),
            ));
        }
    }
    Ok((true, None))
}

/// Constant grid profiles must map to their constant.
fn unanimity_sweep(
    mech: &Mechanism,
    spec: &GridSpec,
) -> Result<(bool, Option<FairnessViolation>)> {
    let n = spec.n();
    spec.ensure_budget(u128::from(spec.k()) + 1)?;
    for point in spec.location_grid() {
        let profile = Profile::constant(n, point)?;
        let outcome = mech.locate(&profile)?;
        let deviation = (outcome.value() - point.value()).abs();
        if deviation > TOL {
            let verdict = FairnessVerdict {
                property: Property::Unanimity,
                holds: false,
                witness: Some(CoalitionWitness {
                    coalition: (1..=n).collect(),
                    binding_agent: 1,
                    slack: -deviation,
                }),
            };
            return Ok((
                false,
                Some(FairnessViolation {
                    profile,
                    outcome,
                    verdict,
                }),
            ));
        }
    }
    Ok((true, None))
}
