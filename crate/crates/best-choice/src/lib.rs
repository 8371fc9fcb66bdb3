//! Solver, simulator, and verification toolkit for the sequential
//! best-choice problem with asymmetric payoffs.
//!
//! A decision maker reviews `n` rankable items arriving in uniformly
//! random order and may commit to at most one, judging each item only
//! against those already seen.  Picking the overall best earns `alpha`,
//! picking anything else costs `beta`, and walking away empty-handed
//! costs `gamma`; optionally, a solicited item accepts the proposal only
//! with probability `p` and the search resumes after a refusal.
//!
//! The crate provides:
//!
//! - [`dp`] — exact finite-horizon backward induction: optimal threshold,
//!   per-state values, outcome probabilities, and expected decision
//!   durations, all in O(n).
//! - [`asymptotics`] — the closed-form limits of the same quantities as
//!   `n` grows.
//! - [`simulate`] — a deterministic, seedable Monte Carlo engine that
//!   cross-checks the solver.
//! - [`oracle`] — brute-force enumeration over every permutation (and
//!   acceptance pattern) at small `n`, the independent referee for the
//!   other three.
//! - [`cli`] — the `best-choice` command-line tool built on top.
//!
//! Start with the runnable programs in `examples/`; each one exercises a
//! single capability end to end.

pub mod asymptotics;
pub mod cli;
pub mod dp;
pub mod model;
pub mod oracle;
pub mod simulate;

pub use asymptotics::AsymptoticSolution;
pub use dp::{DpSolution, DurationTable, ModelKind};
pub use model::{OutcomeKind, ProblemParams, StateIndex};
pub use oracle::{OracleEvaluation, RuleSpec};
pub use simulate::{SimReport, TrialOutcome};
