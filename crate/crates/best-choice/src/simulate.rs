//! Monte Carlo engine for threshold policies.
//!
//! Trials draw the relative ranks `Y_k` directly (`Y_k` uniform on
//! `{1..k}`, independent), which is equal in law to ranking a uniformly
//! random permutation and costs O(n) per trial; the brute-force oracle
//! enumerates true permutations instead, so the two representations stay
//! independent and cross-check each other.
//!
//! Determinism: trial `i` uses a ChaCha8 stream derived from
//! `(seed, i)` — `ChaCha8Rng::seed_from_u64(seed)` with stream id `i` —
//! so every trial's randomness is fixed by the pair alone.  Aggregation
//! keeps integer tallies only (outcome counts and duration sums), making
//! reports bit-identical regardless of execution order or thread count.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::{OutcomeKind, ProblemParams};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SimError {
    #[error("trials must be at least 1")]
    ZeroTrials,
    #[error("threshold {threshold} out of range 1..={n}")]
    ThresholdOutOfRange { threshold: usize, n: usize },
}

/// Result of a single simulated run.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrialOutcome {
    /// Position where an accepted stop happened, if any.
    pub stopped_at: Option<usize>,
    pub outcome: OutcomeKind,
    pub payoff: f64,
    /// Index where the decision process terminated; a run that never
    /// stops terminates at `n`.
    pub duration: usize,
    /// Number of solicitations made (0 when no candidate was solicited).
    pub proposals_made: u32,
}

/// Aggregated Monte Carlo estimates with standard errors.
///
/// Standard errors are sample standard deviation over the square root of
/// the trial count and are absent for a single trial.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimReport {
    pub trials: u64,
    pub seed: u64,
    pub win_count: u64,
    pub wrong_count: u64,
    pub none_count: u64,
    pub mean_payoff: f64,
    pub se_payoff: Option<f64>,
    pub freq_win: f64,
    pub se_win: Option<f64>,
    pub freq_wrong: f64,
    pub se_wrong: Option<f64>,
    pub freq_none: f64,
    pub se_none: Option<f64>,
    pub mean_duration_fraction: f64,
    pub se_duration_fraction: Option<f64>,
}

/// Draws the relative-rank sequence `Y_1..Y_n`.
///
/// The last position with rank 1 is where the overall best item sits,
/// and the candidates are exactly the positions with rank 1.
pub fn draw_relative_ranks(n: usize, rng: &mut impl Rng) -> Vec<u32> {
    (1..=n as u32).map(|k| rng.random_range(1..=k)).collect()
}

/// Position of the overall best item implied by a rank sequence.
pub fn best_position(ranks: &[u32]) -> usize {
    ranks
        .iter()
        .rposition(|&y| y == 1)
        .expect("position 1 always has relative rank 1")
        + 1
}

/// The ChaCha8 stream assigned to one trial.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Runs one trial of the threshold policy: scan positions
/// `threshold..=n`, solicit each candidate encountered, stop at the
/// first acceptance (`p = 1` skips the acceptance draw entirely).
pub fn run_trial(
    params: &ProblemParams,
    threshold: usize,
    rng: &mut impl Rng,
) -> Result<TrialOutcome, SimError> {
    let n = params.n();
    if threshold < 1 || threshold > n {
        return Err(SimError::ThresholdOutOfRange { threshold, n });
    }
    let ranks = draw_relative_ranks(n, rng);
    let best = best_position(&ranks);
    let p = params.p();

    let mut proposals = 0u32;
    let mut stopped_at = None;
    for k in threshold..=n {
        if ranks[k - 1] == 1 {
            proposals += 1;
            if p == 1.0 || rng.random_bool(p) {
                stopped_at = Some(k);
                break;
            }
        }
    }

    Ok(match stopped_at {
        Some(k) => {
            let outcome = if k == best {
                OutcomeKind::Win
            } else {
                OutcomeKind::Wrong
            };
            TrialOutcome {
                stopped_at,
                outcome,
                payoff: outcome.payoff(params),
                duration: k,
                proposals_made: proposals,
            }
        }
        None => TrialOutcome {
            stopped_at: None,
            outcome: OutcomeKind::None,
            payoff: -params.gamma(),
            duration: n,
            proposals_made: proposals,
        },
    })
}

/// Integer tally of trial outcomes; merging is commutative and
/// associative, so parallel reduction order cannot change the result.
#[derive(Debug, Default, Clone, Copy)]
struct Tally {
    win: u64,
    wrong: u64,
    none: u64,
    duration_sum: u64,
    duration_sq_sum: u128,
}

impl Tally {
    fn record(mut self, trial: &TrialOutcome) -> Self {
        match trial.outcome {
            OutcomeKind::Win => self.win += 1,
            OutcomeKind::Wrong => self.wrong += 1,
            OutcomeKind::None => self.none += 1,
        }
        let d = trial.duration as u64;
        self.duration_sum += d;
        self.duration_sq_sum += (d as u128) * (d as u128);
        self
    }

    fn merge(self, other: Self) -> Self {
        Self {
            win: self.win + other.win,
            wrong: self.wrong + other.wrong,
            none: self.none + other.none,
            duration_sum: self.duration_sum + other.duration_sum,
            duration_sq_sum: self.duration_sq_sum + other.duration_sq_sum,
        }
    }
}

/// Sample standard error of a mean given the sum of squares.
fn standard_error(sum: f64, sum_sq: f64, trials: u64) -> Option<f64> {
    if trials < 2 {
        return None;
    }
    let t = trials as f64;
    let mean = sum / t;
    let var = ((sum_sq - t * mean * mean) / (t - 1.0)).max(0.0);
    Some((var / t).sqrt())
}

/// Runs `trials` independent trials and aggregates them.
///
/// Deterministic for a fixed `(seed, trials, params, threshold)`: the
/// per-trial stream derivation makes the result independent of execution
/// order and thread count.
pub fn estimate(
    params: &ProblemParams,
    threshold: usize,
    trials: u64,
    seed: u64,
) -> Result<SimReport, SimError> {
    if trials == 0 {
        return Err(SimError::ZeroTrials);
    }
    let n = params.n();
    if threshold < 1 || threshold > n {
        return Err(SimError::ThresholdOutOfRange { threshold, n });
    }

    let tally = (0..trials)
        .into_par_iter()
        .fold(Tally::default, |tally, i| {
            let mut rng = trial_rng(seed, i);
            let trial = run_trial(params, threshold, &mut rng).expect("threshold validated");
            tally.record(&trial)
        })
        .reduce(Tally::default, Tally::merge);

    let t = trials as f64;
    let (alpha, beta, gamma) = (params.alpha(), params.beta(), params.gamma());
    let (w, r, l) = (tally.win as f64, tally.wrong as f64, tally.none as f64);

    let payoff_sum = alpha * w - beta * r - gamma * l;
    let payoff_sq_sum = alpha * alpha * w + beta * beta * r + gamma * gamma * l;
    let dur_sum = tally.duration_sum as f64;
    let dur_sq_sum = tally.duration_sq_sum as f64;
    let nf = n as f64;

    Ok(SimReport {
        trials,
        seed,
        win_count: tally.win,
        wrong_count: tally.wrong,
        none_count: tally.none,
        mean_payoff: payoff_sum / t,
        se_payoff: standard_error(payoff_sum, payoff_sq_sum, trials),
        freq_win: w / t,
        se_win: standard_error(w, w, trials),
        freq_wrong: r / t,
        se_wrong: standard_error(r, r, trials),
        freq_none: l / t,
        se_none: standard_error(l, l, trials),
        mean_duration_fraction: dur_sum / t / nf,
        se_duration_fraction: standard_error(dur_sum, dur_sq_sum, trials).map(|se| se / nf),
    })
}
