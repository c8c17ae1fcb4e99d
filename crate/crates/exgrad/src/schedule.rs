//! Iteration-parameter schedules and their admissibility conditions.
//!
//! The convergence theorem behind the solver places four hypotheses on the
//! parameter sequences:
//!
//! * (i)   the convex weights satisfy `alpha_k + beta_k + gamma_k = 1`
//!         with each weight in `[0, 1]`;
//! * (ii)  `liminf alpha_k * beta_k > 0` and `liminf alpha_k * gamma_k > 0`;
//! * (iii) the resolvent parameters stay above a positive floor,
//!         `r_k >= a > 0`;
//! * (iv)  the extragradient step size obeys `0 < tau < c^2 * alpha / 2`.
//!
//! Sequences come from a small closed-form family (constants and
//! `base + slope / k`), which makes (i) and the liminf in (ii) exactly
//! decidable instead of sampled. Validation always returns a full
//! diagnostic report; callers decide what to refuse. By convention the
//! solver refuses schedules failing (i), (iii) or (iv), while (ii) only
//! warns (it affects which limit the iterates select, not boundedness).

use serde::{Deserialize, Serialize};

/// Numeric slack for the symbolic identities in condition (i); covers
/// decimal representation error in coefficients like 1/3.
pub const WEIGHT_IDENTITY_TOL: f64 = 1e-12;

/// Default horizon over which per-iteration range checks sweep.
pub const DEFAULT_VALIDATION_HORIZON: usize = 1_000;

/// A closed-form scalar sequence indexed from k = 1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Sequence {
    /// k -> v for all k; serialized as a bare number.
    Constant(f64),
    /// k -> base + slope / k; serialized as `{"base": b, "slope": s}`.
    AffineReciprocal { base: f64, slope: f64 },
}

impl Sequence {
    pub fn constant(v: f64) -> Self {
        Sequence::Constant(v)
    }

    pub fn affine_reciprocal(base: f64, slope: f64) -> Self {
        Sequence::AffineReciprocal { base, slope }
    }

    /// Value at iteration k >= 1.
    pub fn at(&self, k: usize) -> f64 {
        assert!(k >= 1, "sequences are indexed from k = 1");
        match *self {
            Sequence::Constant(v) => v,
            Sequence::AffineReciprocal { base, slope } => base + slope / k as f64,
        }
    }

    /// Limit as k -> infinity (exact for this family).
    pub fn limit(&self) -> f64 {
        match *self {
            Sequence::Constant(v) => v,
            Sequence::AffineReciprocal { base, .. } => base,
        }
    }

    /// Coefficient of 1/k (zero for constants).
    pub fn slope(&self) -> f64 {
        match *self {
            Sequence::Constant(_) => 0.0,
            Sequence::AffineReciprocal { slope, .. } => slope,
        }
    }

    pub fn is_finite(&self) -> bool {
        match *self {
            Sequence::Constant(v) => v.is_finite(),
            Sequence::AffineReciprocal { base, slope } => base.is_finite() && slope.is_finite(),
        }
    }
}

/// Parameter schedule for the extragradient iteration. `r` is the
/// (constant) resolvent-regularization sequence; `a_floor` is the
/// positive lower bound demanded by condition (iii) and defaults to `r`
/// itself when omitted.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Schedule {
    pub alpha: Sequence,
    pub beta: Sequence,
    pub gamma: Sequence,
    pub r: f64,
    pub tau: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a_floor: Option<f64>,
}

impl Schedule {
    /// Convex weights (alpha_k, beta_k, gamma_k) at iteration k.
    pub fn weights_at(&self, k: usize) -> (f64, f64, f64) {
        (self.alpha.at(k), self.beta.at(k), self.gamma.at(k))
    }

    /// Resolvent parameter at iteration k (constant family).
    pub fn r_at(&self, _k: usize) -> f64 {
        self.r
    }

    /// The floor "a" of condition (iii).
    pub fn resolvent_floor(&self) -> f64 {
        self.a_floor.unwrap_or(self.r)
    }
}

/// Verdict for one named condition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ConditionStatus {
    Pass,
    /// Condition (ii) only: the theorem hypothesis fails but the
    /// iteration still runs, so this is advisory.
    Warn,
    Fail,
}

/// One line of the schedule diagnostic report.
#[derive(Debug, Clone)]
pub struct ConditionCheck {
    /// "(i)", "(ii)", "(iii)" or "(iv)".
    pub condition: &'static str,
    /// Human-readable statement of the hypothesis, including the margin.
    pub detail: String,
    pub status: ConditionStatus,
    /// Distance to the boundary of the condition: positive is slack,
    /// negative is violation depth.
    pub margin: f64,
}

/// Full diagnostic report; one entry per condition, in order.
#[derive(Debug, Clone)]
pub struct ScheduleReport {
    pub checks: Vec<ConditionCheck>,
}

impl ScheduleReport {
    /// True when no condition failed ((ii) warnings do not count).
    pub fn is_admissible(&self) -> bool {
        self.checks
            .iter()
            .all(|c| c.status != ConditionStatus::Fail)
    }

    pub fn failures(&self) -> Vec<&ConditionCheck> {
        self.checks
            .iter()
            .filter(|c| c.status == ConditionStatus::Fail)
            .collect()
    }

    pub fn warnings(&self) -> Vec<&ConditionCheck> {
        self.checks
            .iter()
            .filter(|c| c.status == ConditionStatus::Warn)
            .collect()
    }
}

/// Check conditions (i)-(iv) for a schedule against the operator constant
/// `alpha` and the space convexity constant `c`, sweeping per-iteration
/// range checks over `1..=horizon`. Always returns all four verdicts.
pub fn validate_schedule(
    schedule: &Schedule,
    alpha: f64,
    c: f64,
    horizon: usize,
) -> ScheduleReport {
    assert!(alpha > 0.0, "operator constant alpha must be positive");
    assert!(c > 0.0 && c <= 1.0, "convexity constant must lie in (0, 1]");
    let horizon = horizon.max(1);
    let mut checks = Vec::with_capacity(4);

    // (i): symbolic identity (bases sum to 1, slopes sum to 0) plus the
    // [0, 1] range of every weight over the horizon.
    {
        let base_sum =
            schedule.alpha.limit() + schedule.beta.limit() + schedule.gamma.limit();
        let slope_sum =
            schedule.alpha.slope() + schedule.beta.slope() + schedule.gamma.slope();
        let identity_error = (base_sum - 1.0).abs().max(slope_sum.abs());
        let mut range_margin = f64::INFINITY;
        let mut range_offender = None;
        for k in 1..=horizon {
            let (a, b, g) = schedule.weights_at(k);
            for (name, w) in [("alpha", a), ("beta", b), ("gamma", g)] {
                let margin = w.min(1.0 - w);
                if margin < range_margin {
                    range_margin = margin;
                    range_offender = Some((name, k, w));
                }
            }
        }
        let finite = schedule.alpha.is_finite()
            && schedule.beta.is_finite()
            && schedule.gamma.is_finite();
        let pass = finite && identity_error <= WEIGHT_IDENTITY_TOL && range_margin >= 0.0;
        let detail = if identity_error > WEIGHT_IDENTITY_TOL || !finite {
            format!(
                "(i) alpha_k + beta_k + gamma_k = 1: identity off by {identity_error:.3e} \
                 (bases sum to {base_sum}, slopes sum to {slope_sum})"
            )
        } else if range_margin < 0.0 {
            let (name, k, w) = range_offender.expect("horizon >= 1");
            format!("(i) weights in [0,1]: {name}_{k} = {w} leaves the unit interval")
        } else {
            format!(
                "(i) alpha_k + beta_k + gamma_k = 1 and weights in [0,1]: \
                 identity off by {identity_error:.3e}, worst range margin {range_margin:.3e}"
            )
        };
        checks.push(ConditionCheck {
            condition: "(i)",
            detail,
            status: if pass {
                ConditionStatus::Pass
            } else {
                ConditionStatus::Fail
            },
            margin: if identity_error > WEIGHT_IDENTITY_TOL {
                -identity_error
            } else {
                range_margin
            },
        });
    }

    // (ii): liminf of the closed-form products equals the product of
    // limits for this family.
    {
        let ab = schedule.alpha.limit() * schedule.beta.limit();
        let ag = schedule.alpha.limit() * schedule.gamma.limit();
        let margin = ab.min(ag);
        let pass = margin > 0.0;
        checks.push(ConditionCheck {
            condition: "(ii)",
            detail: format!(
                "(ii) liminf alpha_k*beta_k > 0 and liminf alpha_k*gamma_k > 0: \
                 limits are {ab:.6} and {ag:.6}"
            ),
            status: if pass {
                ConditionStatus::Pass
            } else {
                ConditionStatus::Warn
            },
            margin,
        });
    }

    // (iii): r_k >= a_floor > 0 (constant r family: a single comparison).
    {
        let floor = schedule.resolvent_floor();
        let r = schedule.r;
        let pass = r.is_finite() && floor.is_finite() && floor > 0.0 && r >= floor;
        let margin = if floor > 0.0 { r - floor } else { floor };
        checks.push(ConditionCheck {
            condition: "(iii)",
            detail: format!("(iii) r_k >= a > 0: r = {r}, a = {floor}"),
            status: if pass {
                ConditionStatus::Pass
            } else {
                ConditionStatus::Fail
            },
            margin,
        });
    }

    // (iv): 0 < tau < c^2 * alpha / 2, strict on both sides.
    {
        let bound = c * c * alpha / 2.0;
        let tau = schedule.tau;
        let pass = tau.is_finite() && tau > 0.0 && tau < bound;
        let margin = if tau > 0.0 { bound - tau } else { tau };
        checks.push(ConditionCheck {
            condition: "(iv)",
            detail: format!("(iv) 0 < tau < c^2*alpha/2: tau = {tau}, bound = {bound}"),
            status: if pass {
                ConditionStatus::Pass
            } else {
                ConditionStatus::Fail
            },
            margin,
        });
    }

    ScheduleReport { checks }
}
