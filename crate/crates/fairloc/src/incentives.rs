//! Incentive analysis of ordered weighted averages: reachable outcome sets,
//! closed-form best/worst-case utilities, strategy-proofness and non-obvious
//! manipulability predicates, and constructive counterexamples.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{utility, Location, OwaWeights, Profile};
use crate::num::{real, Real};

/// The closed interval of outcomes one agent's report can lead to as the
/// other agents' reports range over the whole domain.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(
    try_from = "IntervalRepr<T>",
    bound(serialize = "T: Serialize", deserialize = "T: Real + Deserialize<'de>")
)]
pub struct ReachableInterval<T> {
    lo: Location<T>,
    hi: Location<T>,
}

#[derive(Deserialize)]
#[serde(bound(deserialize = "T: Real + Deserialize<'de>"))]
struct IntervalRepr<T> {
    lo: Location<T>,
    hi: Location<T>,
}

impl<T: Real> TryFrom<IntervalRepr<T>> for ReachableInterval<T> {
    type Error = Error;

    fn try_from(repr: IntervalRepr<T>) -> Result<Self> {
        ReachableInterval::new(repr.lo, repr.hi)
    }
}

impl<T: Real> ReachableInterval<T> {
    pub fn new(lo: Location<T>, hi: Location<T>) -> Result<Self> {
        if lo.value() > hi.value() {
            return Err(Error::LocationOutOfRange(
                hi.value().to_f64().unwrap_or(f64::NAN),
            ));
        }
        Ok(Self { lo, hi })
    }

    pub fn lo(&self) -> Location<T> {
        self.lo
    }

    pub fn hi(&self) -> Location<T> {
        self.hi
    }

    pub fn contains(&self, point: Location<T>) -> bool {
        self.lo.value() <= point.value() && point.value() <= self.hi.value()
    }

    /// Distance from `point` to the farthest interval point.
    pub fn max_distance_from(&self, point: Location<T>) -> T {
        point.distance(self.lo).max(point.distance(self.hi))
    }

    /// Distance from `point` to the nearest interval point; zero inside.
    pub fn min_distance_from(&self, point: Location<T>) -> T {
        if self.contains(point) {
            T::zero()
        } else {
            point.distance(self.lo).min(point.distance(self.hi))
        }
    }

    /// The endpoint farthest from `point` (the high end wins ties).
    pub fn farthest_from(&self, point: Location<T>) -> Location<T> {
        if point.distance(self.hi) >= point.distance(self.lo) {
            self.hi
        } else {
            self.lo
        }
    }
}

/// Exact set of outcomes attainable for a fixed report: the low end has all
/// other agents at 0 (the report becomes the maximum, weighted `w_n`), the
/// high end has them at 1, and everything between is reached by continuity.
pub fn reachable_interval<T: Real>(
    weights: &OwaWeights<T>,
    report: Location<T>,
) -> ReachableInterval<T> {
    let r = report.value();
    let lo = weights.last() * r;
    let hi = T::one() - weights.first() + weights.first() * r;
    ReachableInterval {
        lo: Location::from_computed(lo),
        hi: Location::from_computed(hi.max(lo)),
    }
}

/// Minimum utility an agent with peak `truth` can end up with after
/// reporting `report`, over all reports of the other agents.
pub fn worst_case_utility<T: Real>(
    weights: &OwaWeights<T>,
    truth: Location<T>,
    report: Location<T>,
) -> T {
    let interval = reachable_interval(weights, report);
    T::one() - interval.max_distance_from(truth)
}

/// Maximum utility an agent with peak `truth` can end up with after
/// reporting `report`, over all reports of the other agents.
pub fn best_case_utility<T: Real>(
    weights: &OwaWeights<T>,
    truth: Location<T>,
    report: Location<T>,
) -> T {
    let interval = reachable_interval(weights, report);
    T::one() - interval.min_distance_from(truth)
}

/// An ordered weighted average is strategy-proof exactly when it is an order
/// statistic, i.e. some weight equals one.
pub fn is_sp<T: Real>(weights: &OwaWeights<T>) -> bool {
    let threshold = T::one() - T::weight_tol();
    weights.weights().iter().any(|&w| w >= threshold)
}

/// An ordered weighted average is not obviously manipulable exactly when it
/// is an order statistic or puts zero weight on both extreme reports.
pub fn is_nom<T: Real>(weights: &OwaWeights<T>) -> bool {
    let tol = T::weight_tol();
    is_sp(weights) || (weights.first() <= tol && weights.last() <= tol)
}

/// Every ordered weighted average satisfies the best-case half of
/// non-obvious manipulability: unanimity makes the peak itself reachable.
pub fn is_nom_b<T: Real>(_weights: &OwaWeights<T>) -> bool {
    true
}

/// A concrete profitable deviation. For a strategy-proofness witness the two
/// outcomes are realized against `profile_others`; for a worst-case witness
/// they are the worst outcomes of truth and misreport, and `profile_others`
/// realizes the misreport's worst case.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(
    serialize = "T: Serialize",
    deserialize = "T: Real + Deserialize<'de>"
))]
pub struct ManipulationWitness<T> {
    /// 1-based index of the manipulating agent.
    pub agent: usize,
    pub truth: Location<T>,
    pub misreport: Location<T>,
    /// Reports of the other agents, in agent order with the manipulator
    /// removed.
    pub profile_others: Vec<Location<T>>,
    pub truthful_outcome: Location<T>,
    pub manipulated_outcome: Location<T>,
    /// Utility gained by the deviation; positive for a genuine violation.
    pub gain: T,
}

impl<T: Real> ManipulationWitness<T> {
    /// The full profile with the agent reporting truthfully.
    pub fn truthful_profile(&self) -> Result<Profile<T>> {
        self.assemble(self.truth)
    }

    /// The full profile with the agent misreporting.
    pub fn manipulated_profile(&self) -> Result<Profile<T>> {
        self.assemble(self.misreport)
    }

    fn assemble(&self, report: Location<T>) -> Result<Profile<T>> {
        let mut locations = self.profile_others.clone();
        if self.agent == 0 || self.agent > locations.len() + 1 {
            return Err(Error::LengthMismatch {
                expected: locations.len() + 1,
                got: self.agent,
            });
        }
        locations.insert(self.agent - 1, report);
        Profile::new(locations)
    }

    /// Gain recomputed from the recorded outcomes.
    pub fn recomputed_gain(&self) -> T {
        utility(self.truth, self.manipulated_outcome) - utility(self.truth, self.truthful_outcome)
    }

    fn mirrored(self) -> Self {
        Self {
            agent: self.agent,
            truth: self.truth.mirrored(),
            misreport: self.misreport.mirrored(),
            profile_others: self
                .profile_others
                .into_iter()
                .map(Location::mirrored)
                .collect(),
            truthful_outcome: self.truthful_outcome.mirrored(),
            manipulated_outcome: self.manipulated_outcome.mirrored(),
            gain: self.gain,
        }
    }
}

/// For a non-strategy-proof weight vector, the canonical profitable
/// deviation: with `j` the smallest rank whose weight is fractional, `j - 1`
/// agents sit at 0, the manipulator at 1/2, the rest at 1, and the
/// manipulator under-reports by `min(1/4, (1 - w_j) / (2 w_j))`.
pub fn construct_sp_violation<T: Real>(weights: &OwaWeights<T>) -> Option<ManipulationWitness<T>> {
    if is_sp(weights) {
        return None;
    }
    let tol = T::weight_tol();
    let pos = weights
        .weights()
        .iter()
        .position(|&w| w > tol && w < T::one() - tol)
        .expect("a non-strategy-proof weight vector has a fractional weight");
    let w_j = weights.weights()[pos];
    let n = weights.n();

    let half: T = real(0.5);
    let two: T = real(2.0);
    let deviation = real::<T>(0.25).min((T::one() - w_j) / (two * w_j));

    let truth = Location::from_computed(half);
    let misreport = Location::from_computed(half - deviation);
    let mut profile_others = vec![Location::from_computed(T::zero()); pos];
    profile_others.extend(vec![Location::from_computed(T::one()); n - pos - 1]);

    let truthful_outcome = Location::from_computed(T::one() - w_j * half);
    let manipulated_outcome =
        Location::from_computed(T::one() - w_j * half - w_j * deviation);

    Some(ManipulationWitness {
        agent: pos + 1,
        truth,
        misreport,
        profile_others,
        truthful_outcome,
        manipulated_outcome,
        gain: w_j * deviation,
    })
}

/// For a weight vector that is obviously manipulable, a deviation that wins
/// in the worst case: with `w_1` fractional, an agent at `(1 - w_1) / 4`
/// reports 0; against everyone else at 1 this moves the worst outcome from
/// `1 - w_1 + w_1 x_i` down to `1 - w_1`. When only `w_n` is fractional the
/// construction is mirrored through 1/2.
pub fn construct_nomw_violation<T: Real>(
    weights: &OwaWeights<T>,
) -> Option<ManipulationWitness<T>> {
    if is_nom(weights) {
        return None;
    }
    let tol = T::weight_tol();
    let w_1 = weights.first();
    if w_1 > tol && w_1 < T::one() - tol {
        Some(nomw_low_end(weights))
    } else {
        // only the top weight is fractional; mirror the construction
        Some(nomw_low_end(&weights.reversed()).mirrored())
    }
}

fn nomw_low_end<T: Real>(weights: &OwaWeights<T>) -> ManipulationWitness<T> {
    let w_1 = weights.first();
    let n = weights.n();
    let truth_value = (T::one() - w_1) / real(4.0);

    let truth = Location::from_computed(truth_value);
    let misreport = Location::from_computed(T::zero());
    let profile_others = vec![Location::from_computed(T::one()); n - 1];

    // worst outcomes for truth and misreport, both attained at all-ones
    let truthful_outcome = Location::from_computed(T::one() - w_1 + w_1 * truth_value);
    let manipulated_outcome = Location::from_computed(T::one() - w_1);

    ManipulationWitness {
        agent: 1,
        truth,
        misreport,
        profile_others,
        truthful_outcome,
        manipulated_outcome,
        gain: w_1 * truth_value,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn loc(v: f64) -> Location<f64> {
        Location::new(v).unwrap()
    }

    fn uniform5() -> OwaWeights<f64> {
        OwaWeights::standard_average(5).unwrap()
    }

    fn olympic5() -> OwaWeights<f64> {
        OwaWeights::olympic_average(5).unwrap()
    }

    #[test]
    fn olympic_reaches_the_whole_interval() {
        for report in [0.0, 0.3, 1.0] {
            let interval = reachable_interval(&olympic5(), loc(report));
            assert_eq!(interval.lo().value(), 0.0);
            assert_eq!(interval.hi().value(), 1.0);
        }
    }

    #[test]
    fn standard_average_intervals() {
        let interval = reachable_interval(&uniform5(), loc(0.3));
        assert!((interval.lo().value() - 0.06).abs() < 1e-9);
        assert!((interval.hi().value() - 0.86).abs() < 1e-9);

        let interval = reachable_interval(&uniform5(), loc(0.0));
        assert!((interval.lo().value() - 0.0).abs() < 1e-9);
        assert!((interval.hi().value() - 0.8).abs() < 1e-9);
    }

    #[test]
    fn single_agent_interval_is_a_point() {
        let w = OwaWeights::order_statistic(1, 1).unwrap();
        let interval = reachable_interval(&w, loc(0.7));
        assert_eq!(interval.lo().value(), 0.7);
        assert_eq!(interval.hi().value(), 0.7);
    }

    #[test]
    fn worst_case_utilities_for_the_split_profile() {
        assert!((worst_case_utility(&uniform5(), loc(0.3), loc(0.3)) - 0.44).abs() < 1e-9);
        assert!((worst_case_utility(&uniform5(), loc(0.3), loc(0.0)) - 0.5).abs() < 1e-9);
        assert!((worst_case_utility(&olympic5(), loc(0.3), loc(0.0)) - 0.3).abs() < 1e-9);
        assert!((worst_case_utility(&olympic5(), loc(0.3), loc(0.3)) - 0.3).abs() < 1e-9);
    }

    #[test]
    fn best_case_of_truth_telling_is_one() {
        for w in [uniform5(), olympic5(), OwaWeights::center(5).unwrap()] {
            for t in [0.0, 0.25, 0.5, 1.0] {
                assert_eq!(best_case_utility(&w, loc(t), loc(t)), 1.0);
            }
        }
        // truth always lies inside the olympic interval [0, 1]
        assert_eq!(best_case_utility(&olympic5(), loc(0.3), loc(0.9)), 1.0);
    }

    #[test]
    fn best_case_outside_the_interval() {
        let max3 = OwaWeights::order_statistic(3, 3).unwrap();
        // reporting 0.8 pins the interval to [0.8, 1]
        let interval = reachable_interval(&max3, loc(0.8));
        assert_eq!(interval.lo().value(), 0.8);
        assert_eq!(interval.hi().value(), 1.0);
        assert!((best_case_utility(&max3, loc(0.5), loc(0.8)) - 0.7).abs() < 1e-9);
    }

    #[test]
    fn sp_predicate() {
        assert!(is_sp(&OwaWeights::<f64>::median(5).unwrap()));
        assert!(is_sp(&OwaWeights::<f64>::order_statistic(1, 4).unwrap()));
        assert!(!is_sp(&OwaWeights::<f64>::center(5).unwrap()));
        assert!(!is_sp(&uniform5()));
        // tolerance: a rounded-off order statistic still counts
        assert!(is_sp(
            &OwaWeights::new(vec![0.9999999999, 0.0000000001]).unwrap()
        ));
    }

    #[test]
    fn nom_predicate() {
        assert!(is_nom(&olympic5()));
        assert!(!is_nom(&uniform5()));
        assert!(is_nom(&OwaWeights::<f64>::median(5).unwrap()));
        assert!(is_nom(&OwaWeights::<f64>::order_statistic(5, 5).unwrap()));
        assert!(!is_nom(&OwaWeights::<f64>::center(3).unwrap()));
        assert!(is_nom_b(&uniform5()));
        assert!(is_nom_b(&OwaWeights::<f64>::center(2).unwrap()));
    }

    #[test]
    fn sp_violation_for_the_center() {
        let w = OwaWeights::<f64>::center(3).unwrap();
        let witness = construct_sp_violation(&w).unwrap();
        assert_eq!(witness.agent, 1);
        assert_eq!(witness.truth.value(), 0.5);
        assert_eq!(
            witness.truthful_profile().unwrap().sorted_values(),
            vec![0.5, 1.0, 1.0]
        );
        assert!((witness.truthful_outcome.value() - 0.75).abs() < 1e-9);
        assert!(witness.gain > 0.0);
    }

    #[test]
    fn sp_violation_for_the_standard_average() {
        let witness = construct_sp_violation(&uniform5()).unwrap();
        assert_eq!(witness.agent, 1);
        assert!((witness.truthful_outcome.value() - 0.9).abs() < 1e-9);
        assert!((witness.misreport.value() - 0.25).abs() < 1e-9);
        assert!((witness.manipulated_outcome.value() - 0.85).abs() < 1e-9);
        assert!((witness.gain - 0.05).abs() < 1e-9);

        // the recorded outcomes replay through the mechanism
        let w = uniform5();
        let truthful = w.locate(&witness.truthful_profile().unwrap()).unwrap();
        let manipulated = w.locate(&witness.manipulated_profile().unwrap()).unwrap();
        assert!((truthful.value() - witness.truthful_outcome.value()).abs() < 1e-9);
        assert!((manipulated.value() - witness.manipulated_outcome.value()).abs() < 1e-9);
    }

    #[test]
    fn order_statistics_have_no_sp_violation() {
        assert!(construct_sp_violation(&OwaWeights::<f64>::median(3).unwrap()).is_none());
        assert!(construct_sp_violation(&OwaWeights::<f64>::order_statistic(2, 4).unwrap()).is_none());
    }

    #[test]
    fn nomw_violation_with_fractional_low_weight() {
        let w: OwaWeights<f64> = OwaWeights::new(vec![0.4, 0.15, 0.15, 0.15, 0.15]).unwrap();
        let witness = construct_nomw_violation(&w).unwrap();
        assert!((witness.truth.value() - 0.15).abs() < 1e-9);
        assert_eq!(witness.misreport.value(), 0.0);
        let truthful_worst = worst_case_utility(&w, witness.truth, witness.truth);
        let misreport_worst = worst_case_utility(&w, witness.truth, witness.misreport);
        assert!((truthful_worst - 0.49).abs() < 1e-9);
        assert!((misreport_worst - 0.55).abs() < 1e-9);
        assert!((witness.gain - (misreport_worst - truthful_worst)).abs() < 1e-9);
    }

    #[test]
    fn nomw_violation_mirrors_when_only_the_top_weight_is_fractional() {
        let w: OwaWeights<f64> = OwaWeights::new(vec![0.0, 0.6, 0.4]).unwrap();
        let witness = construct_nomw_violation(&w).unwrap();
        assert_eq!(witness.misreport.value(), 1.0);
        assert!(witness.gain > 0.0);
        let truthful_worst = worst_case_utility(&w, witness.truth, witness.truth);
        let misreport_worst = worst_case_utility(&w, witness.truth, witness.misreport);
        assert!((witness.gain - (misreport_worst - truthful_worst)).abs() < 1e-9);
        // the recorded worst outcomes are consistent with the closed forms
        assert!(
            (utility(witness.truth, witness.truthful_outcome) - truthful_worst).abs() < 1e-9
        );
        assert!(
            (utility(witness.truth, witness.manipulated_outcome) - misreport_worst).abs() < 1e-9
        );
    }

    #[test]
    fn nom_mechanisms_have_no_nomw_violation() {
        assert!(construct_nomw_violation(&olympic5()).is_none());
        assert!(construct_nomw_violation(&OwaWeights::<f64>::median(4).unwrap()).is_none());
    }

    #[test]
    fn example_worst_cases_for_misreporting_zero() {
        // the standard average rewards the misreport in the worst case
        let t = loc(0.3);
        assert!(worst_case_utility(&uniform5(), t, loc(0.0)) > worst_case_utility(&uniform5(), t, t));
        // the olympic average does not
        assert!(
            worst_case_utility(&olympic5(), t, loc(0.0))
                <= worst_case_utility(&olympic5(), t, t) + 1e-12
        );
    }

    #[test]
    fn witness_serde_round_trip() {
        let witness = construct_sp_violation(&uniform5()).unwrap();
        let json = serde_json::to_string(&witness).unwrap();
        assert!(json.contains("\"profile_others\""));
        let back: ManipulationWitness<f64> = serde_json::from_str(&json).unwrap();
        assert_eq!(witness, back);
    }
}
