//! Proportionality-based fairness: point-level checks for a
//! (profile, outcome) pair and analytic predicates on OWA weights.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{Location, OwaWeights, Profile};
use crate::num::{one_over, Real};
use crate::property::Property;

/// Maximum agent count for the exhaustive coalition oracle.
pub const BRUTE_FORCE_MAX_AGENTS: usize = 12;

/// The coalition that pins down a fairness violation, with the slack of the
/// binding inequality (negative when violated).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(
    serialize = "T: Serialize",
    deserialize = "T: Real + Deserialize<'de>"
))]
pub struct CoalitionWitness<T> {
    /// 1-based agent indices, ascending.
    pub coalition: Vec<usize>,
    /// 1-based index of the agent whose bound is binding.
    pub binding_agent: usize,
    /// Bound minus distance for the binding agent.
    pub slack: T,
}

/// Outcome of a point-level fairness check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(
    serialize = "T: Serialize",
    deserialize = "T: Real + Deserialize<'de>"
))]
pub struct FairnessVerdict<T> {
    pub property: Property,
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<CoalitionWitness<T>>,
}

impl<T: Real> FairnessVerdict<T> {
    fn pass(property: Property) -> Self {
        Self {
            property,
            holds: true,
            witness: None,
        }
    }

    fn fail(property: Property, witness: CoalitionWitness<T>) -> Self {
        debug_assert!(witness.slack < T::zero());
        Self {
            property,
            holds: false,
            witness: Some(witness),
        }
    }
}

/// Individual fair share: every agent's distance to the outcome is at most
/// `1 - 1/n`.
pub fn ifs_at<T: Real>(profile: &Profile<T>, outcome: Location<T>) -> FairnessVerdict<T> {
    let n = profile.n();
    let bound = T::one() - one_over::<T>(n);
    let tol = T::location_tol();
    for (idx, &peak) in profile.locations().iter().enumerate() {
        let distance = peak.distance(outcome);
        if distance > bound + tol {
            return FairnessVerdict::fail(
                Property::Ifs,
                CoalitionWitness {
                    coalition: vec![idx + 1],
                    binding_agent: idx + 1,
                    slack: bound - distance,
                },
            );
        }
    }
    FairnessVerdict::pass(Property::Ifs)
}

/// Unanimous fair share: a coalition of `m` agents sharing one location gets
/// distance at most `1 - m/n`. Only the maximal coalition per distinct
/// location needs checking; smaller sub-coalitions have looser bounds.
/// Co-location is exact equality, so distinct parsed decimals stay distinct.
pub fn ufs_at<T: Real>(profile: &Profile<T>, outcome: Location<T>) -> FairnessVerdict<T> {
    let n = profile.n();
    let nf = T::from_usize(n).expect("agent count representable");
    let tol = T::location_tol();
    for group in co_located_groups(profile) {
        let bound = T::one() - T::from_usize(group.members.len()).expect("count") / nf;
        let distance = group.at.distance(outcome);
        if distance > bound + tol {
            return FairnessVerdict::fail(
                Property::Ufs,
                CoalitionWitness {
                    binding_agent: group.members[0],
                    coalition: group.members,
                    slack: bound - distance,
                },
            );
        }
    }
    FairnessVerdict::pass(Property::Ufs)
}

struct ColocatedGroup<T> {
    at: Location<T>,
    /// 1-based agent indices, ascending.
    members: Vec<usize>,
}

/// Groups of agents at exactly equal locations, in ascending location order.
fn co_located_groups<T: Real>(profile: &Profile<T>) -> Vec<ColocatedGroup<T>> {
    let mut indexed: Vec<(T, usize)> = profile
        .locations()
        .iter()
        .enumerate()
        .map(|(i, l)| (l.value(), i + 1))
        .collect();
    indexed.sort_by(|a, b| {
        a.0.partial_cmp(&b.0)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(a.1.cmp(&b.1))
    });
    let mut groups: Vec<ColocatedGroup<T>> = Vec::new();
    for (value, agent) in indexed {
        match groups.last_mut() {
            Some(group) if group.at.value() == value => group.members.push(agent),
            _ => groups.push(ColocatedGroup {
                at: Location::from_computed(value),
                members: vec![agent],
            }),
        }
    }
    groups
}

/// Proportional fairness via the interval reduction: for every pair of
/// sorted positions `(a, b)` take the coalition of all agents located in
/// `[x_(a), x_(b)]` with range `r = x_(b) - x_(a)` and require
/// `max(d(x_(a), y), d(x_(b), y)) <= 1 - |S|/n + r`. Adding interior agents
/// only grows the coalition without widening the range, and the distance to
/// the outcome is maximal at an extreme member, so these checks cover every
/// coalition.
pub fn pf_at<T: Real>(profile: &Profile<T>, outcome: Location<T>) -> FairnessVerdict<T> {
    let n = profile.n();
    let nf = T::from_usize(n).expect("agent count representable");
    let tol = T::location_tol();

    let mut indexed: Vec<(T, usize)> = profile
        .locations()
        .iter()
        .enumerate()
        .map(|(i, l)| (l.value(), i + 1))
        .collect();
    indexed.sort_by(|a, b| {
        a.0.partial_cmp(&b.0)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(a.1.cmp(&b.1))
    });

    for a in 0..n {
        for b in a..n {
            let low = indexed[a].0;
            let high = indexed[b].0;
            // maximal coalition spanned by the value interval
            let mut first = a;
            while first > 0 && indexed[first - 1].0 == low {
                first -= 1;
            }
            let mut last = b;
            while last + 1 < n && indexed[last + 1].0 == high {
                last += 1;
            }
            let size = last - first + 1;
            let range = high - low;
            let bound = T::one() - T::from_usize(size).expect("count") / nf + range;
            let dist_low = (low - outcome.value()).abs();
            let dist_high = (high - outcome.value()).abs();
            let distance = dist_low.max(dist_high);
            if distance > bound + tol {
                let mut coalition: Vec<usize> =
                    indexed[first..=last].iter().map(|&(_, id)| id).collect();
                coalition.sort_unstable();
                let binding_value = if dist_low >= dist_high { low } else { high };
                let binding_agent = indexed[first..=last]
                    .iter()
                    .filter(|&&(v, _)| v == binding_value)
                    .map(|&(_, id)| id)
                    .min()
                    .expect("binding value has a member");
                return FairnessVerdict::fail(
                    Property::Pf,
                    CoalitionWitness {
                        coalition,
                        binding_agent,
                        slack: bound - distance,
                    },
                );
            }
        }
    }
    FairnessVerdict::pass(Property::Pf)
}

/// Proportional fairness by direct enumeration of all `2^n - 1` coalitions.
/// The independent oracle for `pf_at`; capped at
/// [`BRUTE_FORCE_MAX_AGENTS`] agents.
pub fn pf_at_bruteforce<T: Real>(
    profile: &Profile<T>,
    outcome: Location<T>,
) -> Result<FairnessVerdict<T>> {
    let n = profile.n();
    if n > BRUTE_FORCE_MAX_AGENTS {
        return Err(Error::CoalitionTooLarge {
            n,
            max: BRUTE_FORCE_MAX_AGENTS,
        });
    }
    let nf = T::from_usize(n).expect("agent count representable");
    let tol = T::location_tol();
    let values: Vec<T> = profile.locations().iter().map(|l| l.value()).collect();

    for mask in 1usize..(1 << n) {
        let mut low = T::one();
        let mut high = T::zero();
        let mut size = 0usize;
        for (i, &x) in values.iter().enumerate() {
            if mask & (1 << i) != 0 {
                size += 1;
                low = low.min(x);
                high = high.max(x);
            }
        }
        let range = high - low;
        let bound = T::one() - T::from_usize(size).expect("count") / nf + range;
        // distance to the outcome is maximal at an extreme member
        let mut worst_distance = T::zero();
        let mut binding_agent = 0usize;
        for (i, &x) in values.iter().enumerate() {
            if mask & (1 << i) != 0 {
                let d = (x - outcome.value()).abs();
                if d > worst_distance {
                    worst_distance = d;
                    binding_agent = i + 1;
                }
            }
        }
        if worst_distance > bound + tol {
            let coalition: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).map(|i| i + 1).collect();
            return Ok(FairnessVerdict::fail(
                Property::Pf,
                CoalitionWitness {
                    coalition,
                    binding_agent,
                    slack: bound - worst_distance,
                },
            ));
        }
    }
    Ok(FairnessVerdict::pass(Property::Pf))
}

/// An OWA satisfies individual fair share exactly when both extreme weights
/// are at least `1/n`.
pub fn is_ifs<T: Real>(weights: &OwaWeights<T>) -> bool {
    let threshold = one_over::<T>(weights.n()) - T::weight_tol();
    weights.first() >= threshold && weights.last() >= threshold
}

/// An OWA satisfies proportional fairness exactly when every weight equals
/// `1/n`, i.e. it is the standard average.
pub fn is_pf<T: Real>(weights: &OwaWeights<T>) -> bool {
    let share = one_over::<T>(weights.n());
    let tol = T::weight_tol();
    weights.weights().iter().all(|&w| (w - share).abs() <= tol)
}

/// An OWA is proportional exactly when every prefix sum of the weights
/// equals `j/n`; on `{0,1}`-profiles with `j` zeros the outcome is one minus
/// the `j`-th prefix sum. Equivalent to [`is_pf`] for OWAs.
pub fn is_proportional<T: Real>(weights: &OwaWeights<T>) -> bool {
    let n = weights.n();
    let nf = T::from_usize(n).expect("agent count representable");
    let tol = T::from_usize(n).expect("agent count representable") * T::weight_tol();
    let mut prefix = T::zero();
    for (j, &w) in weights.weights().iter().enumerate() {
        prefix = prefix + w;
        let target = T::from_usize(j + 1).expect("index representable") / nf;
        if (prefix - target).abs() > tol {
            return false;
        }
    }
    true
}

/// Every OWA satisfies unanimity: a constant profile sorts to a constant
/// vector and the normalized weights reproduce the constant.
pub fn is_unanimous<T: Real>(_weights: &OwaWeights<T>) -> bool {
    true
}
