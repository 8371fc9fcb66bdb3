//! Finite-horizon backward induction for the penalized best-choice
//! problem, with and without candidate refusals.
//!
//! The value recursion over the candidate chain is
//!
//! ```text
//! V(k) = max{ g(k),  Σ_{j>k} [k/(j(j-1))] V(j) - gamma k/n },   V(n) = alpha
//! ```
//!
//! for the certain model, and with the stop branch replaced by
//! `p g(k) + (1-p) C(k)` (a refused proposal resumes the search) and
//! boundary `U(n) = p(alpha+gamma) - gamma` for the uncertain one.
//!
//! Outcome probabilities and expected durations are deliberately computed
//! by their own backward recursions under the fixed threshold policy
//! rather than from closed forms; the closed forms carry off-by-one traps
//! and are checked against these recursions in the tests instead.  All
//! recursions run in O(n) via telescoped running sums, so horizons up to
//! 1e7 are practical.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::ProblemParams;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DpError {
    #[error("solve_certain requires p = 1, got p = {0}")]
    NotCertain(f64),
    #[error("threshold {threshold} out of range 1..={n}")]
    ThresholdOutOfRange { threshold: usize, n: usize },
}

/// Which acceptance model a solution was computed under.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelKind {
    Certain,
    Uncertain,
}

/// Output of the backward induction: per-state values, the optimal
/// threshold, and exact outcome probabilities of the threshold policy.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DpSolution {
    /// `values[k-1]` is the optimal expected payoff at candidate state `k`.
    pub values: Vec<f64>,
    /// Smallest state at which stopping (soliciting) is optimal.
    pub threshold: usize,
    /// Value at state 1; position 1 is always a candidate, so this is the
    /// value of the whole problem.
    pub start_value: f64,
    pub win_prob: f64,
    pub wrong_prob: f64,
    pub none_prob: f64,
    pub model: ModelKind,
}

impl DpSolution {
    /// Value at state `k` (1-based).
    pub fn value_at(&self, k: usize) -> f64 {
        self.values[k - 1]
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }
}

/// Expected termination index of a threshold policy, per state.
///
/// `m[k-1]` is the expected index at which the process ends given that it
/// moved past position `k` without an accepted stop; a run that never
/// stops terminates at index `n`.  `start_mean` is the unconditional
/// expectation, seen from position 1 before anything is decided.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DurationTable {
    pub m: Vec<f64>,
    pub start_mean: f64,
    pub threshold: usize,
}

impl DurationTable {
    pub fn m_at(&self, k: usize) -> f64 {
        self.m[k - 1]
    }

    pub fn n(&self) -> usize {
        self.m.len()
    }
}

fn stop_reward(k: usize, params: &ProblemParams) -> f64 {
    (params.alpha() + params.beta()) * (k as f64 / params.n() as f64) - params.beta()
}

/// Stop-on-tie comparison with a rounding band.
///
/// Exact ties (e.g. g(2) = C(2) = -1/6 at n = 3, beta = 2 gamma) reach
/// this comparison as floats rounded through different routes, up to a
/// few ulps apart; a hard `>=` would then break the tie against the
/// stop-on-tie rule.  The band is orders of magnitude below any genuine
/// stop/continue gap yet far above accumulated rounding noise.
fn stops(stop_branch: f64, continuation: f64) -> bool {
    let band = 1e-13 * (1.0 + stop_branch.abs() + continuation.abs());
    stop_branch >= continuation - band
}

/// Solves the certain-employment model (`p = 1`).
pub fn solve_certain(params: &ProblemParams) -> Result<DpSolution, DpError> {
    if !params.is_certain() {
        return Err(DpError::NotCertain(params.p()));
    }
    let n = params.n();
    let gamma = params.gamma();
    let mut values = vec![0.0; n];
    values[n - 1] = params.alpha();
    let mut threshold = n;

    // Running sum Σ_{j>k} V(j) / (j(j-1)).
    let mut tail = 0.0;
    for k in (1..n).rev() {
        tail += values[k] / ((k + 1) as f64 * k as f64);
        let continuation = k as f64 * tail - gamma * k as f64 / n as f64;
        let stop = stop_reward(k, params);
        values[k - 1] = stop.max(continuation);
        if stops(stop, continuation) {
            threshold = k;
        }
    }

    let (win_prob, wrong_prob, none_prob) = policy_outcomes(n, 1.0, threshold);
    Ok(DpSolution {
        start_value: values[0],
        values,
        threshold,
        win_prob,
        wrong_prob,
        none_prob,
        model: ModelKind::Certain,
    })
}

/// Solves the uncertain-employment model (`0 < p <= 1`).
///
/// At `p = 1` this reproduces [`solve_certain`] exactly, table for table.
pub fn solve_uncertain(params: &ProblemParams) -> Result<DpSolution, DpError> {
    let n = params.n();
    let p = params.p();
    let gamma = params.gamma();
    let mut values = vec![0.0; n];
    // p(alpha+gamma) - gamma, written so that p = 1 yields alpha exactly.
    values[n - 1] = p * params.alpha() - (1.0 - p) * gamma;
    let mut threshold = n;

    let mut tail = 0.0;
    for k in (1..n).rev() {
        tail += values[k] / ((k + 1) as f64 * k as f64);
        let continuation = k as f64 * tail - gamma * k as f64 / n as f64;
        let solicit = p * stop_reward(k, params) + (1.0 - p) * continuation;
        values[k - 1] = solicit.max(continuation);
        if stops(solicit, continuation) {
            threshold = k;
        }
    }

    let (win_prob, wrong_prob, none_prob) = policy_outcomes(n, p, threshold);
    Ok(DpSolution {
        start_value: values[0],
        values,
        threshold,
        win_prob,
        wrong_prob,
        none_prob,
        model: if params.is_certain() {
            ModelKind::Certain
        } else {
            ModelKind::Uncertain
        },
    })
}

/// One-step look-ahead threshold: the smallest `k` with
/// `H_{k,n} <= (alpha+gamma)/(alpha+beta)`.
///
/// The `H_{0,n} = +inf` convention makes the region's lower edge land on
/// `k = 1` whenever even `H_{1,n}` clears the ratio.  Equals the
/// backward-induction threshold because the stopping region is monotone.
pub fn ola_threshold(params: &ProblemParams) -> usize {
    let n = params.n();
    let ratio = params.stop_ratio();
    let mut h = 0.0; // H_{n,n}
    let mut threshold = n;
    for k in (1..n).rev() {
        h += 1.0 / k as f64;
        if h <= ratio {
            threshold = k;
        } else {
            break; // H grows as k shrinks; no smaller k can qualify
        }
    }
    threshold
}

/// Exact win / wrong / none probabilities of an arbitrary threshold
/// policy (not necessarily the optimal one), evaluated at state 1.
pub fn threshold_outcomes(
    params: &ProblemParams,
    threshold: usize,
) -> Result<(f64, f64, f64), DpError> {
    let n = params.n();
    if threshold < 1 || threshold > n {
        return Err(DpError::ThresholdOutOfRange { threshold, n });
    }
    Ok(policy_outcomes(n, params.p(), threshold))
}

/// Win / wrong / none probabilities of the threshold policy, evaluated at
/// state 1 by backward recursions over the candidate chain.
///
/// From a solicited candidate at `k >= r`: accept (probability `p`) wins
/// iff the candidate is the overall best, which has probability `k/n`;
/// refusal resumes the search along the chain.  Below the threshold the
/// chain just moves on, and absorption (no further candidate) ends with
/// no pick.
fn policy_outcomes(n: usize, p: f64, r: usize) -> (f64, f64, f64) {
    let nf = n as f64;
    let mut win = vec![0.0; n];
    let mut wrong = vec![0.0; n];
    let mut none = vec![0.0; n];
    let mut win_tail = 0.0;
    let mut wrong_tail = 0.0;
    let mut none_tail = 0.0;

    for k in (1..=n).rev() {
        if k < n {
            let denom = (k + 1) as f64 * k as f64;
            win_tail += win[k] / denom;
            wrong_tail += wrong[k] / denom;
            none_tail += none[k] / denom;
        }
        let kf = k as f64;
        let cont_win = kf * win_tail;
        let cont_wrong = kf * wrong_tail;
        let cont_none = kf * none_tail + kf / nf; // absorption forfeits
        if k >= r {
            win[k - 1] = p * (kf / nf) + (1.0 - p) * cont_win;
            wrong[k - 1] = p * (1.0 - kf / nf) + (1.0 - p) * cont_wrong;
            none[k - 1] = (1.0 - p) * cont_none;
        } else {
            win[k - 1] = cont_win;
            wrong[k - 1] = cont_wrong;
            none[k - 1] = cont_none;
        }
    }
    (win[0], wrong[0], none[0])
}

fn duration_table(n: usize, p: f64, r: usize) -> Result<DurationTable, DpError> {
    if r < 1 || r > n {
        return Err(DpError::ThresholdOutOfRange { threshold: r, n });
    }
    let nf = n as f64;
    let mut m = vec![0.0; n];
    m[n - 1] = nf;

    // Running sums over later states: `stop_tail` carries the expected
    // index contribution of solicited candidates (p(k,j) j = k/(j-1)),
    // `resume_tail` the refusal continuations, `pass_tail` the
    // below-threshold pass-throughs.
    let mut stop_tail = 0.0;
    let mut resume_tail = 0.0;
    let mut pass_tail = 0.0;
    for k in (1..n).rev() {
        let j = k + 1;
        let denom = j as f64 * k as f64;
        if j >= r {
            stop_tail += 1.0 / k as f64; // 1/(j-1)
            resume_tail += m[j - 1] / denom;
        } else {
            pass_tail += m[j - 1] / denom;
        }
        let kf = k as f64;
        // No further candidate: the run ends at n, with probability k/n.
        m[k - 1] = kf * (p * stop_tail + (1.0 - p) * resume_tail + pass_tail) + kf;
    }

    // Position 1 is itself a candidate: when r = 1 it is solicited
    // immediately, otherwise the start just passes through state 1.
    let start_mean = if r == 1 { p + (1.0 - p) * m[0] } else { m[0] };
    Ok(DurationTable {
        m,
        start_mean,
        threshold: r,
    })
}

/// Expected-duration table for the certain model under a threshold rule.
pub fn duration_certain(params: &ProblemParams, threshold: usize) -> Result<DurationTable, DpError> {
    duration_table(params.n(), 1.0, threshold)
}

/// Expected-duration table when solicited candidates refuse with
/// probability `1 - p`.  Degenerates to [`duration_certain`] at `p = 1`.
pub fn duration_uncertain(
    params: &ProblemParams,
    threshold: usize,
) -> Result<DurationTable, DpError> {
    duration_table(params.n(), params.p(), threshold)
}
