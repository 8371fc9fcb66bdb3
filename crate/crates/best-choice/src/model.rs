//! Problem parameters and the candidate-arrival Markov chain.
//!
//! A decision maker inspects `n` rankable items in uniformly random order
//! and may stop once.  Stopping on the overall best item pays `alpha`,
//! stopping on any other item costs `beta`, and ending the search without
//! a pick costs `gamma`.  Positions where the current item is the best
//! seen so far are *candidates*; the positions of successive candidates
//! form a Markov chain on `{1..n} ∪ {absorbing}` with transition law
//!
//! ```text
//! p(r, s) = r / (s (s - 1))      for r < s <= n,
//! p(r, ∂) = 1 - Σ_{s>r} p(r, s)  (analytically r / n).
//! ```
//!
//! Everything here is pure and freely shareable across threads.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Violations of the parameter invariants, one variant per invariant so
/// diagnostics can name exactly what was rejected.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParamError {
    #[error("alpha must be a finite nonnegative real, got {0}")]
    InvalidAlpha(f64),
    #[error("beta must be a finite nonnegative real, got {0}")]
    InvalidBeta(f64),
    #[error("gamma must be a finite nonnegative real, got {0}")]
    InvalidGamma(f64),
    #[error("alpha + beta must be positive (every threshold formula divides by it)")]
    ZeroPayoffScale,
    #[error("horizon n must be at least 1, got {0}")]
    InvalidHorizon(usize),
    #[error("availability probability p must lie in (0, 1], got {0}")]
    InvalidAvailability(f64),
}

/// A state index outside the valid range for the given horizon.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("state index {index} out of range 1..={n}")]
pub struct IndexError {
    pub index: usize,
    pub n: usize,
}

/// Payoff weights, horizon, and availability probability.
///
/// Weights may be any nonnegative reals with `alpha + beta > 0`; `p = 1`
/// is the certain-employment model (a solicited candidate never refuses).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProblemParams {
    alpha: f64,
    beta: f64,
    gamma: f64,
    n: usize,
    p: f64,
}

impl ProblemParams {
    /// Validates and builds a parameter set.
    pub fn new(alpha: f64, beta: f64, gamma: f64, n: usize, p: f64) -> Result<Self, ParamError> {
        if !alpha.is_finite() || alpha < 0.0 {
            return Err(ParamError::InvalidAlpha(alpha));
        }
        if !beta.is_finite() || beta < 0.0 {
            return Err(ParamError::InvalidBeta(beta));
        }
        if !gamma.is_finite() || gamma < 0.0 {
            return Err(ParamError::InvalidGamma(gamma));
        }
        if alpha + beta <= 0.0 {
            return Err(ParamError::ZeroPayoffScale);
        }
        if n < 1 {
            return Err(ParamError::InvalidHorizon(n));
        }
        if !p.is_finite() || p <= 0.0 || p > 1.0 {
            return Err(ParamError::InvalidAvailability(p));
        }
        Ok(Self {
            alpha,
            beta,
            gamma,
            n,
            p,
        })
    }

    /// Certain-employment parameters (`p = 1`).
    pub fn certain(alpha: f64, beta: f64, gamma: f64, n: usize) -> Result<Self, ParamError> {
        Self::new(alpha, beta, gamma, n, 1.0)
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    /// True when a solicited candidate always accepts.
    pub fn is_certain(&self) -> bool {
        self.p == 1.0
    }

    /// The ratio `(alpha + gamma) / (alpha + beta)` that drives every
    /// certain-model threshold.
    pub fn stop_ratio(&self) -> f64 {
        (self.alpha + self.gamma) / (self.alpha + self.beta)
    }
}

/// A state of the candidate chain: the position of the current candidate,
/// or the absorbing state reached when no further candidate will appear.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum StateIndex {
    /// A candidate observed at this position (1-based, `1..=n`).
    Position(usize),
    /// No further candidate will ever appear; the search is forfeited.
    Absorbing,
}

/// The three mutually exclusive ways a completed run can end.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutcomeKind {
    /// Picked the overall best item (+alpha).
    Win,
    /// Picked an item that is not the overall best (-beta).
    Wrong,
    /// The process ended without a pick (-gamma).
    None,
}

impl OutcomeKind {
    /// Realized payoff of this outcome under the given weights.
    pub fn payoff(&self, params: &ProblemParams) -> f64 {
        match self {
            OutcomeKind::Win => params.alpha(),
            OutcomeKind::Wrong => -params.beta(),
            OutcomeKind::None => -params.gamma(),
        }
    }
}

/// Harmonic tail `H_{k,n} = Σ_{j=k}^{n-1} 1/j`, with `H_{n,n} = 0`.
///
/// `(k/n) H_{k,n}` is the chance that some candidate appears after
/// position `k` given a candidate at `k`.  Terms are accumulated from the
/// smallest (`j = n-1`) upward to bound floating error.
pub fn harmonic_tail(k: usize, n: usize) -> Result<f64, IndexError> {
    if k < 1 || k > n {
        return Err(IndexError { index: k, n });
    }
    let mut sum = 0.0;
    for j in (k..n).rev() {
        sum += 1.0 / j as f64;
    }
    Ok(sum)
}

/// One-stage stopping reward: `(alpha + beta) k/n - beta` at a candidate
/// position `k`, and `-gamma` in the absorbing state.
pub fn reward(state: StateIndex, params: &ProblemParams) -> f64 {
    match state {
        StateIndex::Position(k) => {
            (params.alpha() + params.beta()) * (k as f64 / params.n() as f64) - params.beta()
        }
        StateIndex::Absorbing => -params.gamma(),
    }
}

/// One-step transition probability of the candidate chain from position
/// `r`.
///
/// Returns `r/(s(s-1))` for an integer target `r < s <= n`, zero for any
/// other integer target, and the complement of the row sum for the
/// absorbing state (analytically `r/n`; the complement form is kept so
/// the row sums to one by construction).
pub fn transition_prob(r: usize, s: StateIndex, n: usize) -> Result<f64, IndexError> {
    if r < 1 || r > n {
        return Err(IndexError { index: r, n });
    }
    match s {
        StateIndex::Position(j) => {
            if j > r && j <= n {
                Ok(r as f64 / (j as f64 * (j - 1) as f64))
            } else {
                Ok(0.0)
            }
        }
        StateIndex::Absorbing => {
            // Sum small terms first, as in harmonic_tail.
            let mut row = 0.0;
            for j in ((r + 1)..=n).rev() {
                row += r as f64 / (j as f64 * (j - 1) as f64);
            }
            Ok(1.0 - row)
        }
    }
}
