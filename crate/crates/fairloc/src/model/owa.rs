//! Ordered weighted average mechanisms.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::location::{Location, Profile};
use crate::num::{one_over, Real};

/// Weights of an ordered weighted average mechanism.
///
/// The `j`-th weight applies to the `j`-th smallest reported location. Each
/// weight must lie in `[0, 1]` and the weights must sum to one, both up to
/// the weight tolerance of the scalar type.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(
    try_from = "Vec<T>",
    into = "Vec<T>",
    bound(
        serialize = "T: Serialize + Clone",
        deserialize = "T: Real + Deserialize<'de>"
    )
)]
pub struct OwaWeights<T> {
    weights: Vec<T>,
}

impl<T: Real> TryFrom<Vec<T>> for OwaWeights<T> {
    type Error = Error;

    fn try_from(weights: Vec<T>) -> Result<Self> {
        OwaWeights::new(weights)
    }
}

impl<T> From<OwaWeights<T>> for Vec<T> {
    fn from(w: OwaWeights<T>) -> Self {
        w.weights
    }
}

impl<T: Real> OwaWeights<T> {
    pub fn new(weights: Vec<T>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::EmptyWeights);
        }
        let tol = T::weight_tol();
        for (idx, &w) in weights.iter().enumerate() {
            if !(w >= -tol && w <= T::one() + tol) {
                return Err(Error::WeightOutOfRange {
                    rank: idx + 1,
                    value: w.to_f64().unwrap_or(f64::NAN),
                });
            }
        }
        let sum = weights.iter().fold(T::zero(), |acc, &w| acc + w);
        if (sum - T::one()).abs() > tol {
            return Err(Error::WeightsNotNormalized(
                sum.to_f64().unwrap_or(f64::NAN),
            ));
        }
        Ok(Self { weights })
    }

    pub fn n(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[T] {
        &self.weights
    }

    /// Weight of the smallest report.
    pub fn first(&self) -> T {
        self.weights[0]
    }

    /// Weight of the largest report.
    pub fn last(&self) -> T {
        *self.weights.last().expect("weights are nonempty")
    }

    /// Weights read back to front; the mirrored mechanism satisfies
    /// `f'(x) = 1 - f(1 - x)` coordinate-wise.
    pub fn reversed(&self) -> Self {
        let mut weights = self.weights.clone();
        weights.reverse();
        Self { weights }
    }

    /// The weighted average of the sorted reports.
    pub fn locate(&self, profile: &Profile<T>) -> Result<Location<T>> {
        if profile.n() != self.n() {
            return Err(Error::LengthMismatch {
                expected: self.n(),
                got: profile.n(),
            });
        }
        let sorted = profile.sorted_values();
        let sum = self
            .weights
            .iter()
            .zip(sorted.iter())
            .fold(T::zero(), |acc, (&w, &x)| acc + w * x);
        Ok(Location::from_computed(sum))
    }

    /// Weights `(1/n, ..., 1/n)`: the standard average.
    pub fn standard_average(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::NoAgents);
        }
        Ok(Self {
            weights: vec![one_over(n); n],
        })
    }

    /// Half weight on the minimum and maximum reports each.
    pub fn center(n: usize) -> Result<Self> {
        match n {
            0 => Err(Error::NoAgents),
            1 => Ok(Self {
                weights: vec![T::one()],
            }),
            _ => {
                let mut weights = vec![T::zero(); n];
                let half = T::one() / (T::one() + T::one());
                weights[0] = half;
                weights[n - 1] = half;
                Ok(Self { weights })
            }
        }
    }

    /// Drops the extreme reports and averages the rest.
    pub fn olympic_average(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::PresetTooFewAgents {
                preset: "olympic_average",
                min: 3,
                n,
            });
        }
        let mut weights = vec![one_over(n - 2); n];
        weights[0] = T::zero();
        weights[n - 1] = T::zero();
        Ok(Self { weights })
    }

    /// Full weight on the `rank`-th smallest report (1-based).
    pub fn order_statistic(rank: usize, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::NoAgents);
        }
        if rank == 0 || rank > n {
            return Err(Error::InvalidOrderStatistic { rank, n });
        }
        let mut weights = vec![T::zero(); n];
        weights[rank - 1] = T::one();
        Ok(Self { weights })
    }

    /// The left median: order statistic `ceil(n/2)`.
    pub fn median(n: usize) -> Result<Self> {
        Self::order_statistic(n.div_ceil(2), n)
    }
}
