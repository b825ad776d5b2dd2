//! Generalized median voter schemes, anonymous and general.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::location::{Location, Profile};
use crate::num::Real;

/// Maximum agent count for the subset-parameterized scheme; it stores one
/// parameter per non-empty subset of agents.
pub const GMVS_MAX_AGENTS: usize = 16;

/// Parameters of an anonymous generalized median voter scheme: `n - 1`
/// phantom peaks mixed into the reports before taking the median.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(
    try_from = "AgmvsRepr<T>",
    bound(serialize = "T: Serialize", deserialize = "T: Real + Deserialize<'de>")
)]
pub struct AgmvsParams<T> {
    n: usize,
    betas: Vec<T>,
}

#[derive(Deserialize)]
#[serde(bound(deserialize = "T: Real + Deserialize<'de>"))]
struct AgmvsRepr<T> {
    n: usize,
    betas: Vec<T>,
}

impl<T: Real> TryFrom<AgmvsRepr<T>> for AgmvsParams<T> {
    type Error = Error;

    fn try_from(repr: AgmvsRepr<T>) -> Result<Self> {
        AgmvsParams::new(repr.n, repr.betas)
    }
}

impl<T: Real> AgmvsParams<T> {
    pub fn new(n: usize, betas: Vec<T>) -> Result<Self> {
        if n == 0 {
            return Err(Error::NoAgents);
        }
        if betas.len() != n - 1 {
            return Err(Error::PhantomCountMismatch {
                n,
                expected: n - 1,
                got: betas.len(),
            });
        }
        for &b in &betas {
            if !(b >= T::zero() && b <= T::one()) {
                return Err(Error::PhantomOutOfRange(b.to_f64().unwrap_or(f64::NAN)));
            }
        }
        Ok(Self { n, betas })
    }

    /// Phantoms at `l/n` for `l = 1..n-1`.
    pub fn uniform_phantom(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::NoAgents);
        }
        let nf = T::from_usize(n).expect("agent count representable");
        let betas = (1..n)
            .map(|l| T::from_usize(l).expect("index representable") / nf)
            .collect();
        Ok(Self { n, betas })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn betas(&self) -> &[T] {
        &self.betas
    }

    /// The left median of the `2n - 1` points formed by the `n` reports and
    /// the `n - 1` phantoms, i.e. their `n`-th smallest element.
    pub fn locate(&self, profile: &Profile<T>) -> Result<Location<T>> {
        if profile.n() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                got: profile.n(),
            });
        }
        let mut points: Vec<T> = profile.locations().iter().map(|l| l.value()).collect();
        points.extend_from_slice(&self.betas);
        points.sort_by(|a, b| a.partial_cmp(b).unwrap_or(Ordering::Equal));
        Ok(Location::from_computed(points[self.n - 1]))
    }
}

/// Phantom parameters that make the scheme coincide with the `rank`-th order
/// statistic on every profile: `n - rank` phantoms at 0, `rank - 1` at 1.
pub fn order_statistic_as_agmvs<T: Real>(rank: usize, n: usize) -> Result<AgmvsParams<T>> {
    if n == 0 {
        return Err(Error::NoAgents);
    }
    if rank == 0 || rank > n {
        return Err(Error::InvalidOrderStatistic { rank, n });
    }
    let mut betas = vec![T::zero(); n - 1];
    for beta in betas.iter_mut().skip(n - rank) {
        *beta = T::one();
    }
    AgmvsParams::new(n, betas)
}

/// Parameters of a generalized median voter scheme: one threshold per
/// non-empty subset of agents, stored densely. Entry `mask - 1` holds the
/// parameter of the subset whose members are the set bits of `mask`, with
/// bit `i` standing for agent `i + 1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(
    try_from = "GmvsRepr<T>",
    bound(serialize = "T: Serialize", deserialize = "T: Real + Deserialize<'de>")
)]
pub struct GmvsParams<T> {
    n: usize,
    alphas: Vec<T>,
}

#[derive(Deserialize)]
#[serde(bound(deserialize = "T: Real + Deserialize<'de>"))]
struct GmvsRepr<T> {
    n: usize,
    alphas: Vec<T>,
}

impl<T: Real> TryFrom<GmvsRepr<T>> for GmvsParams<T> {
    type Error = Error;

    fn try_from(repr: GmvsRepr<T>) -> Result<Self> {
        GmvsParams::new(repr.n, repr.alphas)
    }
}

impl<T: Real> GmvsParams<T> {
    pub fn new(n: usize, alphas: Vec<T>) -> Result<Self> {
        if n == 0 {
            return Err(Error::NoAgents);
        }
        if n > GMVS_MAX_AGENTS {
            return Err(Error::TooManyAgents {
                n,
                max: GMVS_MAX_AGENTS,
            });
        }
        let expected = (1usize << n) - 1;
        if alphas.len() != expected {
            return Err(Error::SubsetParamCountMismatch {
                n,
                expected,
                got: alphas.len(),
            });
        }
        for &a in &alphas {
            if !(a >= T::zero() && a <= T::one()) {
                return Err(Error::SubsetParamOutOfRange(a.to_f64().unwrap_or(f64::NAN)));
            }
        }
        Ok(Self { n, alphas })
    }

    /// The same parameter for every subset.
    pub fn uniform(n: usize, alpha: T) -> Result<Self> {
        if !(alpha >= T::zero() && alpha <= T::one()) {
            return Err(Error::SubsetParamOutOfRange(
                alpha.to_f64().unwrap_or(f64::NAN),
            ));
        }
        if n == 0 {
            return Err(Error::NoAgents);
        }
        if n > GMVS_MAX_AGENTS {
            return Err(Error::TooManyAgents {
                n,
                max: GMVS_MAX_AGENTS,
            });
        }
        Ok(Self {
            n,
            alphas: vec![alpha; (1usize << n) - 1],
        })
    }

    /// Lifts phantom parameters to subset parameters. A subset of size `s`
    /// gets the `(n - s)`-th smallest phantom, and the full set gets 0, which
    /// makes the min-max expression reproduce the phantom median exactly.
    pub fn from_agmvs(params: &AgmvsParams<T>) -> Result<Self> {
        let n = params.n();
        if n > GMVS_MAX_AGENTS {
            return Err(Error::TooManyAgents {
                n,
                max: GMVS_MAX_AGENTS,
            });
        }
        let mut sorted_betas = params.betas().to_vec();
        sorted_betas.sort_by(|a, b| a.partial_cmp(b).unwrap_or(Ordering::Equal));
        let mut alphas = vec![T::zero(); (1usize << n) - 1];
        for (slot, alpha) in alphas.iter_mut().enumerate() {
            let size = (slot + 1).count_ones() as usize;
            *alpha = if size == n {
                T::zero()
            } else {
                sorted_betas[n - size - 1]
            };
        }
        Ok(Self { n, alphas })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Parameter of the subset encoded by `mask` (bit `i` is agent `i + 1`).
    pub fn alpha(&self, mask: usize) -> T {
        self.alphas[mask - 1]
    }

    /// Evaluates `min` over all non-empty subsets of `max` of the subset's
    /// reports and its parameter.
    pub fn locate(&self, profile: &Profile<T>) -> Result<Location<T>> {
        if profile.n() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                got: profile.n(),
            });
        }
        let values: Vec<T> = profile.locations().iter().map(|l| l.value()).collect();
        let mut best = T::one();
        for mask in 1..(1usize << self.n) {
            let mut m = self.alpha(mask);
            for (i, &x) in values.iter().enumerate() {
                if mask & (1 << i) != 0 && x > m {
                    m = x;
                }
            }
            if m < best {
                best = m;
            }
        }
        Ok(Location::from_computed(best))
    }
}
