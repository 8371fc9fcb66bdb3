//! Closed-form limiting quantities as the horizon grows.
//!
//! With `r = (alpha + gamma) / (alpha + beta)`, the certain model has
//! limiting threshold fraction `t* = exp(-r)`, limiting value
//! `(alpha + beta) exp(-r) - beta`, and win probability `r exp(-r)`.
//! Under uncertain availability the threshold becomes
//! `t* = ((p alpha + beta - (1-p) gamma) / (alpha + beta))^(1/(1-p))`,
//! driven by the continuation value
//! `v(t) = K (t^p - t) + beta t - beta` with
//! `K = (alpha p + beta - (1-p) gamma) / (1-p)`.
//!
//! The stop-branch value `p[(alpha+beta)t - beta] + (1-p)[v(t) - gamma t]`
//! collapses algebraically to `(p alpha + beta - (1-p) gamma) t^p - beta`;
//! the implementation keeps the compositional form (it is definitionally
//! the stop value and matches the finite-horizon boundary) and the tests
//! pin the collapsed form against it.
//!
//! Everything here is verified against the finite-horizon solver and,
//! for the integral and differential equations, against quadrature and
//! finite-difference oracles in the test suite.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dp::ModelKind;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AsymptoticsError {
    #[error("alpha + beta must be positive")]
    ZeroPayoffScale,
    #[error(
        "nonpositive numerator p*alpha + beta - (1-p)*gamma = {numerator}: \
         stop-immediately regime, the closed form does not apply (the \
         finite-horizon solver still handles such instances)"
    )]
    NonpositiveNumerator { numerator: f64 },
    #[error("availability probability p must lie in (0, 1], got {0}")]
    AvailabilityOutOfRange(f64),
    #[error("certain-model forms apply at p = 1; this operation requires p < 1")]
    CertainAvailability,
    #[error("t must lie in (0, 1], got {0}")]
    TOutOfRange(f64),
}

fn check_scale(alpha: f64, beta: f64) -> Result<f64, AsymptoticsError> {
    let scale = alpha + beta;
    if scale > 0.0 && scale.is_finite() {
        Ok(scale)
    } else {
        Err(AsymptoticsError::ZeroPayoffScale)
    }
}

fn check_t(t: f64) -> Result<(), AsymptoticsError> {
    if t > 0.0 && t <= 1.0 {
        Ok(())
    } else {
        Err(AsymptoticsError::TOutOfRange(t))
    }
}

fn check_p_strict(p: f64) -> Result<(), AsymptoticsError> {
    if !(p > 0.0 && p <= 1.0) {
        return Err(AsymptoticsError::AvailabilityOutOfRange(p));
    }
    if p == 1.0 {
        return Err(AsymptoticsError::CertainAvailability);
    }
    Ok(())
}

/// Limiting threshold fraction `exp(-(alpha+gamma)/(alpha+beta))`.
pub fn threshold_certain(alpha: f64, beta: f64, gamma: f64) -> Result<f64, AsymptoticsError> {
    let scale = check_scale(alpha, beta)?;
    Ok((-(alpha + gamma) / scale).exp())
}

/// Limiting problem value `(alpha+beta) t* - beta`.
pub fn value_certain(alpha: f64, beta: f64, gamma: f64) -> Result<f64, AsymptoticsError> {
    let scale = check_scale(alpha, beta)?;
    Ok(scale * threshold_certain(alpha, beta, gamma)? - beta)
}

/// Limiting probability of picking the overall best: `r exp(-r)` with
/// `r = (alpha+gamma)/(alpha+beta)`.  Identically `-t* ln t*`.
pub fn win_prob_certain(alpha: f64, beta: f64, gamma: f64) -> Result<f64, AsymptoticsError> {
    let scale = check_scale(alpha, beta)?;
    let r = (alpha + gamma) / scale;
    Ok(r * (-r).exp())
}

/// `K = (alpha p + beta - (1-p) gamma) / (1-p)`, the coefficient of the
/// continuation value.  Requires `p < 1`.
fn continuation_coefficient(alpha: f64, beta: f64, gamma: f64, p: f64) -> f64 {
    (alpha * p + beta - (1.0 - p) * gamma) / (1.0 - p)
}

/// Continuation value of the uncertain model,
/// `v(t) = K (t^p - t) + beta t - beta`, the solution of
/// `v(t) = ∫_t^1 (t/s^2) [p((alpha+beta)s - beta) + (1-p)(v(s) - gamma s)] ds`
/// with `v(1) = 0`.
pub fn continuation_value(
    t: f64,
    alpha: f64,
    beta: f64,
    gamma: f64,
    p: f64,
) -> Result<f64, AsymptoticsError> {
    check_scale(alpha, beta)?;
    check_t(t)?;
    check_p_strict(p)?;
    let k = continuation_coefficient(alpha, beta, gamma, p);
    Ok(k * (t.powf(p) - t) + beta * t - beta)
}

/// Limiting threshold fraction under uncertain availability.
///
/// For `p < 1` this is `((p alpha + beta - (1-p) gamma)/(alpha+beta))^(1/(1-p))`;
/// at `p = 1` it continues into the certain-model threshold.  A
/// nonpositive numerator (heavy no-pick penalty, scarce availability) is
/// reported as an error rather than clamped: the formula's derivation
/// breaks down there.
pub fn threshold_uncertain(
    alpha: f64,
    beta: f64,
    gamma: f64,
    p: f64,
) -> Result<f64, AsymptoticsError> {
    let scale = check_scale(alpha, beta)?;
    if !(p > 0.0 && p <= 1.0) {
        return Err(AsymptoticsError::AvailabilityOutOfRange(p));
    }
    if p == 1.0 {
        return threshold_certain(alpha, beta, gamma);
    }
    let numerator = p * alpha + beta - (1.0 - p) * gamma;
    if numerator <= 0.0 {
        return Err(AsymptoticsError::NonpositiveNumerator { numerator });
    }
    Ok((numerator / scale).powf(1.0 / (1.0 - p)))
}

/// Limiting value profile of the uncertain model: the stop-branch value
/// `p[(alpha+beta)t - beta] + (1-p)[v(t) - gamma t]` above the threshold,
/// constant `(alpha+beta) t* - beta` below it.
pub fn value_uncertain(
    t: f64,
    alpha: f64,
    beta: f64,
    gamma: f64,
    p: f64,
) -> Result<f64, AsymptoticsError> {
    let scale = check_scale(alpha, beta)?;
    check_t(t)?;
    check_p_strict(p)?;
    let t_star = threshold_uncertain(alpha, beta, gamma, p)?;
    if t >= t_star {
        let v = continuation_value(t, alpha, beta, gamma, p)?;
        Ok(p * (scale * t - beta) + (1.0 - p) * (v - gamma * t))
    } else {
        Ok(scale * t_star - beta)
    }
}

/// Limiting expected-duration profile of the certain model:
/// `-t ln t + t` above the threshold, frozen at `t*` below.
pub fn duration_profile_certain(t: f64, t_star: f64) -> f64 {
    let t = t.max(t_star);
    -t * t.ln() + t
}

/// Limiting mean duration fraction seen from the start:
/// `(1 + r) exp(-r)`.
pub fn duration_at_zero_certain(alpha: f64, beta: f64, gamma: f64) -> Result<f64, AsymptoticsError> {
    let scale = check_scale(alpha, beta)?;
    let r = (alpha + gamma) / scale;
    Ok((1.0 + r) * (-r).exp())
}

/// Limiting duration profile with hesitating candidates:
/// `(t^p - p t)/(1-p)` above the threshold, frozen below.  Continues into
/// the certain profile as `p -> 1`.
pub fn duration_profile_uncertain(t: f64, p: f64, t_star: f64) -> Result<f64, AsymptoticsError> {
    if !(p > 0.0 && p <= 1.0) {
        return Err(AsymptoticsError::AvailabilityOutOfRange(p));
    }
    if p == 1.0 {
        return Ok(duration_profile_certain(t, t_star));
    }
    let t = t.max(t_star);
    Ok((t.powf(p) - p * t) / (1.0 - p))
}

/// Limiting mean duration fraction of the uncertain model from the start.
pub fn duration_at_zero_uncertain(
    alpha: f64,
    beta: f64,
    gamma: f64,
    p: f64,
) -> Result<f64, AsymptoticsError> {
    let t_star = threshold_uncertain(alpha, beta, gamma, p)?;
    duration_profile_uncertain(t_star, p, t_star)
}

/// Limiting win probability with hesitating candidates,
/// `p (t*^p - t*)/(1-p)`.
///
/// Solves the same renewal integral equation as the continuation value
/// (accepting the candidate at `s` wins with probability `s`); the tests
/// pin it against the finite-horizon solver.
fn win_prob_uncertain(t_star: f64, p: f64) -> f64 {
    p * (t_star.powf(p) - t_star) / (1.0 - p)
}

/// Bundle of the limiting quantities for one parameter point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticSolution {
    pub t_star: f64,
    pub value_at_zero: f64,
    pub win_prob: f64,
    pub duration_at_zero: f64,
    pub model: ModelKind,
}

impl AsymptoticSolution {
    /// Limits of the certain-employment model.
    pub fn certain(alpha: f64, beta: f64, gamma: f64) -> Result<Self, AsymptoticsError> {
        let t_star = threshold_certain(alpha, beta, gamma)?;
        Ok(Self {
            t_star,
            value_at_zero: value_certain(alpha, beta, gamma)?,
            win_prob: win_prob_certain(alpha, beta, gamma)?,
            duration_at_zero: duration_at_zero_certain(alpha, beta, gamma)?,
            model: ModelKind::Certain,
        })
    }

    /// Limits of the uncertain-employment model; `p = 1` falls back to
    /// the certain limits.
    pub fn uncertain(alpha: f64, beta: f64, gamma: f64, p: f64) -> Result<Self, AsymptoticsError> {
        if !(p > 0.0 && p <= 1.0) {
            return Err(AsymptoticsError::AvailabilityOutOfRange(p));
        }
        if p == 1.0 {
            return Self::certain(alpha, beta, gamma);
        }
        let scale = check_scale(alpha, beta)?;
        let t_star = threshold_uncertain(alpha, beta, gamma, p)?;
        Ok(Self {
            t_star,
            value_at_zero: scale * t_star - beta,
            win_prob: win_prob_uncertain(t_star, p),
            duration_at_zero: duration_at_zero_uncertain(alpha, beta, gamma, p)?,
            model: ModelKind::Uncertain,
        })
    }
}
