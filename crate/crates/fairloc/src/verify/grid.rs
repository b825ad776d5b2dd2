//! Grid specifications and enumeration of profiles and weight vectors.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::{Location, OwaWeights, Profile};

/// Grid resolution for an empirical sweep. Locations and misreports range
/// over `{0, 1/k, ..., 1}`; weight vectors range over the simplex points
/// with coordinates that are multiples of `1/m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GridSpecRepr")]
pub struct GridSpec {
    n: usize,
    k: u32,
    m: u32,
    budget: u64,
}

#[derive(Deserialize)]
struct GridSpecRepr {
    n: usize,
    k: u32,
    m: u32,
    budget: u64,
}

impl TryFrom<GridSpecRepr> for GridSpec {
    type Error = Error;

    fn try_from(repr: GridSpecRepr) -> Result<Self> {
        Ok(GridSpec::new(repr.n, repr.k, repr.m)?.with_budget(repr.budget))
    }
}

impl GridSpec {
    /// Default cap on mechanism evaluations per sweep.
    pub const DEFAULT_BUDGET: u64 = 10_000_000;

    pub fn new(n: usize, k: u32, m: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::NoAgents);
        }
        if k < 2 {
            return Err(Error::GridTooCoarse(k));
        }
        if m < 2 {
            return Err(Error::GridTooCoarse(m));
        }
        Ok(Self {
            n,
            k,
            m,
            budget: Self::DEFAULT_BUDGET,
        })
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Location (and misreport) step denominator.
    pub fn k(&self) -> u32 {
        self.k
    }

    /// Weight simplex step denominator.
    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn budget(&self) -> u64 {
        self.budget
    }

    /// The grid points `0, 1/k, ..., 1`.
    pub fn location_grid(&self) -> Vec<Location> {
        (0..=self.k)
            .map(|i| Location::new(f64::from(i) / f64::from(self.k)).expect("grid point in range"))
            .collect()
    }

    /// Number of grid profiles, `(k + 1)^n`.
    pub fn profile_count(&self) -> u128 {
        u128::from(self.k + 1).pow(self.n as u32)
    }

    /// Errors out when a sweep would exceed the evaluation budget.
    pub fn ensure_budget(&self, required: u128) -> Result<()> {
        if required > u128::from(self.budget) {
            return Err(Error::BudgetExceeded {
                required,
                budget: self.budget,
            });
        }
        Ok(())
    }
}

/// All grid profiles in lexicographic order (first agent most significant).
pub fn enumerate_profiles(spec: &GridSpec) -> Result<ProfileGrid> {
    spec.ensure_budget(spec.profile_count())?;
    Ok(ProfileGrid {
        points: spec.location_grid(),
        indices: vec![0; spec.n()],
        done: false,
    })
}

pub struct ProfileGrid {
    points: Vec<Location>,
    indices: Vec<usize>,
    done: bool,
}

impl Iterator for ProfileGrid {
    type Item = Profile;

    fn next(&mut self) -> Option<Profile> {
        if self.done {
            return None;
        }
        let profile = Profile::new(self.indices.iter().map(|&i| self.points[i]).collect())
            .expect("grid profiles are nonempty and in range");
        // odometer increment, rightmost coordinate fastest
        let mut pos = self.indices.len();
        loop {
            if pos == 0 {
                self.done = true;
                break;
            }
            pos -= 1;
            if self.indices[pos] + 1 < self.points.len() {
                self.indices[pos] += 1;
                for idx in &mut self.indices[pos + 1..] {
                    *idx = 0;
                }
                break;
            }
        }
        Some(profile)
    }
}

/// Every weight vector on the simplex grid with step `1/m`, i.e. all
/// compositions of `m` into `n` parts, in lexicographic order. The grid
/// always contains the order-statistic vertices and, when `n` divides `m`,
/// the uniform point.
pub fn simplex_weights(n: usize, m: u32) -> Vec<OwaWeights> {
    let mut out = Vec::new();
    let mut counts = vec![0u32; n];
    compose(&mut out, &mut counts, 0, m, m);
    out
}

fn compose(out: &mut Vec<OwaWeights>, counts: &mut [u32], pos: usize, remaining: u32, m: u32) {
    if pos + 1 == counts.len() {
        counts[pos] = remaining;
        let weights = counts
            .iter()
            .map(|&c| f64::from(c) / f64::from(m))
            .collect::<Vec<_>>();
        out.push(OwaWeights::new(weights).expect("grid weights are normalized"));
        return;
    }
    for c in 0..=remaining {
        counts[pos] = c;
        compose(out, counts, pos + 1, remaining - c, m);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_validation() {
        assert!(GridSpec::new(0, 10, 4).is_err());
        assert!(GridSpec::new(3, 1, 4).is_err());
        assert!(GridSpec::new(3, 10, 1).is_err());
        assert!(GridSpec::new(3, 10, 4).is_ok());
    }

    #[test]
    fn single_agent_grid() {
        let spec = GridSpec::new(1, 2, 2).unwrap();
        let profiles: Vec<Profile> = enumerate_profiles(&spec).unwrap().collect();
        assert_eq!(profiles.len(), 3);
        assert_eq!(profiles[0].get(0).value(), 0.0);
        assert_eq!(profiles[1].get(0).value(), 0.5);
        assert_eq!(profiles[2].get(0).value(), 1.0);
    }

    #[test]
    fn profile_counts() {
        let spec = GridSpec::new(2, 2, 2).unwrap();
        // k = 1 is rejected, so use k = 2 and count (2 + 1)^2
        assert_eq!(enumerate_profiles(&spec).unwrap().count(), 9);

        let spec = GridSpec::new(3, 10, 2).unwrap();
        assert_eq!(spec.profile_count(), 1331);
        assert_eq!(enumerate_profiles(&spec).unwrap().count(), 1331);
    }

    #[test]
    fn enumeration_is_lexicographic() {
        let spec = GridSpec::new(2, 2, 2).unwrap();
        let profiles: Vec<Vec<f64>> = enumerate_profiles(&spec)
            .unwrap()
            .map(|p| p.locations().iter().map(|l| l.value()).collect())
            .collect();
        assert_eq!(profiles[0], vec![0.0, 0.0]);
        assert_eq!(profiles[1], vec![0.0, 0.5]);
        assert_eq!(profiles[3], vec![0.5, 0.0]);
        assert_eq!(profiles[8], vec![1.0, 1.0]);
    }

    #[test]
    fn budget_guard_fires() {
        let spec = GridSpec::new(8, 10, 2).unwrap().with_budget(1000);
        assert!(matches!(
            enumerate_profiles(&spec),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn simplex_grid_counts_and_vertices() {
        // compositions of 4 into 3 parts: C(6, 2) = 15
        let weights = simplex_weights(3, 4);
        assert_eq!(weights.len(), 15);
        // lexicographically first is all mass on the last rank
        assert_eq!(weights[0].weights(), &[0.0, 0.0, 1.0]);
        assert_eq!(weights[14].weights(), &[1.0, 0.0, 0.0]);
        // vertices are present
        for rank in 1..=3 {
            let vertex = OwaWeights::order_statistic(rank, 3).unwrap();
            assert!(weights.contains(&vertex));
        }
        // uniform point present when n | m
        let weights = simplex_weights(3, 6);
        assert!(weights
            .iter()
            .any(|w| w.weights().iter().all(|&x| (x - 1.0 / 3.0).abs() < 1e-15)));
    }
}
