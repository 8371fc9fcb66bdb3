//! Exhaustive ground truth for small horizons.
//!
//! Enumerates every arrival permutation (and, when availability is
//! uncertain, every accept/refuse pattern of the solicited candidates) to
//! score an arbitrary position-set stopping rule exactly.  Nothing here
//! shares code with the backward-induction solver or the simulator; the
//! point is an independent referee for both.
//!
//! Horizons are capped at `n = 8` (40320 permutations); the oracle exists
//! to anchor correctness, not to scale.

use std::collections::BTreeSet;
use std::sync::OnceLock;

use itertools::Itertools;
use thiserror::Error;

use crate::model::ProblemParams;

/// Largest horizon the oracle will enumerate.
pub const MAX_ORACLE_N: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("oracle horizon is capped at {MAX_ORACLE_N}, got n = {0}")]
    HorizonTooLarge(usize),
    #[error("stop set must be a nonempty subset of 1..={n}")]
    InvalidStopSet { n: usize },
    #[error("rule was built for n = {rule_n} but params have n = {params_n}")]
    HorizonMismatch { rule_n: usize, params_n: usize },
}

/// A stopping rule: solicit the first available candidate whose position
/// lies in `stop_set`.  Threshold rules are the up-closed sets `{r..=n}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleSpec {
    n: usize,
    stop_set: BTreeSet<usize>,
}

impl RuleSpec {
    /// Builds a rule from an explicit position set.
    pub fn new(n: usize, positions: impl IntoIterator<Item = usize>) -> Result<Self, OracleError> {
        let stop_set: BTreeSet<usize> = positions.into_iter().collect();
        if stop_set.is_empty() || stop_set.iter().any(|&k| k < 1 || k > n) {
            return Err(OracleError::InvalidStopSet { n });
        }
        Ok(Self { n, stop_set })
    }

    /// The threshold rule `{r..=n}`.
    pub fn threshold(r: usize, n: usize) -> Result<Self, OracleError> {
        if r < 1 || r > n {
            return Err(OracleError::InvalidStopSet { n });
        }
        Self::new(n, r..=n)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn stop_set(&self) -> &BTreeSet<usize> {
        &self.stop_set
    }

    pub fn contains(&self, position: usize) -> bool {
        self.stop_set.contains(&position)
    }

    /// True when the set has threshold shape `{r..=n}`.
    pub fn is_up_closed(&self) -> bool {
        let min = *self.stop_set.iter().next().expect("nonempty");
        self.stop_set.len() == self.n - min + 1
    }

    fn mask(&self) -> u16 {
        self.stop_set.iter().fold(0u16, |m, &k| m | (1 << (k - 1)))
    }
}

/// Exact outcome statistics of a rule, averaged over all permutations
/// (and acceptance patterns).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleEvaluation {
    /// Expected payoff `alpha P(win) - beta P(wrong) - gamma P(none)`.
    pub value: f64,
    pub win_prob: f64,
    pub wrong_prob: f64,
    pub none_prob: f64,
    /// Expected termination index, counting a no-stop run as `n`.
    pub mean_duration: f64,
}

/// Compensated (Kahan) accumulator; the enumeration sums tens of
/// thousands of small weights and the referee must be good to 1e-12.
#[derive(Debug, Default, Clone, Copy)]
struct Kahan {
    sum: f64,
    carry: f64,
}

impl Kahan {
    fn add(&mut self, x: f64) {
        let y = x - self.carry;
        let t = self.sum + y;
        self.carry = (t - self.sum) - y;
        self.sum = t;
    }

    fn value(self) -> f64 {
        self.sum
    }
}

/// Permutations grouped by their candidate set.
///
/// A position-set rule's behavior on a permutation depends only on which
/// positions hold candidates (the overall best sits at the last
/// candidate), so the n! permutations collapse to at most 2^(n-1)
/// weighted candidate masks.  Bit `k-1` marks a candidate at position
/// `k`.
fn candidate_table(n: usize) -> &'static [(u16, u64)] {
    static TABLES: [OnceLock<Vec<(u16, u64)>>; MAX_ORACLE_N + 1] =
        [const { OnceLock::new() }; MAX_ORACLE_N + 1];
    TABLES[n].get_or_init(|| {
        let mut counts = vec![0u64; 1 << n];
        // Lexicographic enumeration of rank arrangements; rank 1 is best.
        for perm in (1..=n).permutations(n) {
            let mut mask = 0u16;
            let mut best_so_far = usize::MAX;
            for (pos, &rank) in perm.iter().enumerate() {
                if rank < best_so_far {
                    best_so_far = rank;
                    mask |= 1 << pos;
                }
            }
            counts[mask as usize] += 1;
        }
        counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(mask, &c)| (mask as u16, c))
            .collect()
    })
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

/// Scores `rule` exactly under `params`.
///
/// Each candidate mask contributes its accept/refuse branches: soliciting
/// the i-th candidate in the stop set succeeds with weight
/// `p (1-p)^(i-1)`; exhausting all solicited candidates leaves the
/// no-pick branch with weight `(1-p)^m`.
pub fn exact_value(rule: &RuleSpec, params: &ProblemParams) -> Result<OracleEvaluation, OracleError> {
    let n = params.n();
    if n > MAX_ORACLE_N {
        return Err(OracleError::HorizonTooLarge(n));
    }
    if rule.n() != n {
        return Err(OracleError::HorizonMismatch {
            rule_n: rule.n(),
            params_n: n,
        });
    }
    let p = params.p();
    let rule_mask = rule.mask();

    let mut win = Kahan::default();
    let mut wrong = Kahan::default();
    let mut none = Kahan::default();
    let mut duration = Kahan::default();

    for &(mask, count) in candidate_table(n) {
        let weight = count as f64;
        let last_candidate = 16 - mask.leading_zeros() as usize; // position of the overall best
        let solicited = mask & rule_mask;

        let mut refuse_weight = 1.0;
        for pos in 1..=n {
            if solicited & (1 << (pos - 1)) == 0 {
                continue;
            }
            let w = weight * refuse_weight * p;
            if pos == last_candidate {
                win.add(w);
            } else {
                wrong.add(w);
            }
            duration.add(w * pos as f64);
            refuse_weight *= 1.0 - p;
            if refuse_weight == 0.0 {
                break;
            }
        }
        // Every solicited candidate refused (or none existed).
        let w = weight * refuse_weight;
        if w > 0.0 {
            none.add(w);
            duration.add(w * n as f64);
        }
    }

    let total = factorial(n);
    let win_prob = win.value() / total;
    let wrong_prob = wrong.value() / total;
    let none_prob = none.value() / total;
    Ok(OracleEvaluation {
        value: params.alpha() * win_prob - params.beta() * wrong_prob - params.gamma() * none_prob,
        win_prob,
        wrong_prob,
        none_prob,
        mean_duration: duration.value() / total,
    })
}

/// Exhaustively maximizes [`exact_value`] over all `2^n - 1` nonempty
/// stop sets.  Ties keep the first maximizer in mask order, so the result
/// is deterministic.
pub fn best_rule(params: &ProblemParams) -> Result<(RuleSpec, f64), OracleError> {
    let n = params.n();
    if n > MAX_ORACLE_N {
        return Err(OracleError::HorizonTooLarge(n));
    }
    let mut best: Option<(RuleSpec, f64)> = None;
    for mask in 1u16..(1 << n) {
        let rule = RuleSpec::new(n, (1..=n).filter(|&k| mask & (1 << (k - 1)) != 0))
            .expect("nonempty in-range mask");
        let value = exact_value(&rule, params)?.value;
        match &best {
            Some((_, v)) if value <= *v => {}
            _ => best = Some((rule, value)),
        }
    }
    Ok(best.expect("at least one rule"))
}
