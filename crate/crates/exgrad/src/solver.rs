//! The extragradient iteration for the combined problem: find a point
//! that solves the equilibrium problem for (f, A), solves the variational
//! inequality for A, and is a fixed point of the two relatively
//! nonexpansive maps T and S.
//!
//! One iteration, indexed from k = 1, computes
//!
//! ```text
//! u = K_{r_k}(x)                                   (resolvent step)
//! y = Pi_C J^{-1}(J x - tau A x)                   (extragradient half-step)
//! z = Pi_C J^{-1}(J u - tau A u)
//! x+ = Pi_C J^{-1}(alpha_k J x + beta_k J(T z) + gamma_k J(S y))
//! ```
//!
//! The convex combination is always formed in the dual space (on
//! J-images) and mapped back; this ordering is part of the algorithm's
//! definition and is preserved even in Euclidean geometry where a primal
//! combination would coincide.
//!
//! Pre-validation failures (bad problem data, inadmissible schedule,
//! infeasible start) are `Err`; numerical failures inside an iteration
//! surface as `SolveStatus::InnerFailure` with the partial trace intact.

use crate::equilibrium::{
    resolvent, verify_resolvent, Bifunction, ResolventError, ResolventQuery,
};
use crate::operators::{FixedPointMap, MonotoneOperator, OperatorError};
use crate::schedule::{validate_schedule, Schedule, DEFAULT_VALIDATION_HORIZON};
use crate::sets::{FeasibleSet, ProjectionError, SetError};
use crate::space::{
    dual_combination, lyapunov, Point, SpaceDescriptor, DEFAULT_GEOMETRY_TOL,
};
use thiserror::Error;

/// Default stopping tolerance on the step norm. The convergence proof
/// drives the step norm to zero, so it is the quantity we threshold.
pub const DEFAULT_STOP_TOL: f64 = 1e-12;

/// Default iteration budget.
pub const DEFAULT_MAX_ITERS: usize = 100;

/// Samples used to certify each iteration's resolvent output in the
/// recorded trace.
const TRACE_VIOLATION_SAMPLES: usize = 64;

/// Structural errors in problem data, caught before iterating.
#[derive(Debug, Error)]
pub enum ProblemError {
    #[error(transparent)]
    Set(#[from] SetError),
    #[error(transparent)]
    Operator(#[from] OperatorError),
    #[error("a quadratic bifunction requires a 1-dimensional space, got dimension {0}")]
    QuadraticNeedsDimOne(usize),
    #[error("reference solution lives in a different space than the problem")]
    ReferenceSpaceMismatch,
    #[error("reference solution violates the feasible set by {0:.3e}")]
    InfeasibleReference(f64),
}

/// Errors detected before the first iteration runs.
#[derive(Debug, Error)]
pub enum SolveError {
    #[error(transparent)]
    Problem(#[from] ProblemError),
    #[error("schedule rejected: {detail}")]
    ScheduleRejected {
        /// "(i)", "(iii)" or "(iv)" — the violated admissibility condition.
        condition: &'static str,
        detail: String,
    },
    #[error("starting point violates the feasible set by {0:.3e}")]
    InfeasibleStart(f64),
    #[error("starting point lives in a different space than the problem")]
    SpaceMismatch,
    #[error("the baseline method requires a euclidean space")]
    RequiresEuclidean,
    #[error("step size tau must be positive and finite, got {0}")]
    InvalidTau(f64),
}

/// Numerical failures inside one iteration.
#[derive(Debug, Error)]
pub enum StepError {
    #[error("resolvent step failed: {0}")]
    Resolvent(#[from] ResolventError),
    #[error("projection failed: {0}")]
    Projection(#[from] ProjectionError),
    #[error("map {map} left the feasible set (violation {violation:.3e})")]
    MapRange { map: &'static str, violation: f64 },
}

/// Problem data for the combined equilibrium / variational-inequality /
/// fixed-point problem.
#[derive(Debug, Clone)]
pub struct ProblemInstance {
    pub space: SpaceDescriptor,
    pub set: FeasibleSet,
    pub bifunction: Bifunction,
    pub operator: MonotoneOperator,
    pub map_t: FixedPointMap,
    pub map_s: FixedPointMap,
    /// Known solution, used for phi-gap diagnostics only.
    pub reference: Option<Point>,
}

impl ProblemInstance {
    /// Structural validation: component shapes agree with the space and
    /// all declared constants are usable. Semantic hypotheses (axioms,
    /// monotonicity, nonexpansiveness) are the checker's job.
    pub fn validate(&self) -> Result<(), ProblemError> {
        self.set.validate_for(&self.space)?;
        self.operator.validate_for(&self.space)?;
        self.map_t.validate()?;
        self.map_s.validate()?;
        if !self.bifunction.is_zero() && self.space.dim() != 1 {
            return Err(ProblemError::QuadraticNeedsDimOne(self.space.dim()));
        }
        if let Some(reference) = &self.reference {
            if reference.space() != &self.space {
                return Err(ProblemError::ReferenceSpaceMismatch);
            }
            let violation = self.set.violation(reference.coords());
            if violation > DEFAULT_GEOMETRY_TOL * (1.0 + reference.norm()) {
                return Err(ProblemError::InfeasibleReference(violation));
            }
        }
        Ok(())
    }
}

/// Reduced problem data for the corollary variant (f == 0, T = identity
/// wired in).
#[derive(Debug, Clone)]
pub struct CorollaryInstance {
    pub space: SpaceDescriptor,
    pub set: FeasibleSet,
    pub operator: MonotoneOperator,
    pub map_s: FixedPointMap,
    pub reference: Option<Point>,
}

impl CorollaryInstance {
    /// The equivalent full problem instance.
    pub fn into_problem(self) -> ProblemInstance {
        ProblemInstance {
            space: self.space,
            set: self.set,
            bifunction: Bifunction::Zero,
            operator: self.operator,
            map_t: FixedPointMap::Identity,
            map_s: self.map_s,
            reference: self.reference,
        }
    }
}

/// Everything recorded about one iteration. `x` is the iterate the step
/// started from (so row k carries x^k), and `step_norm` is
/// `||x^{k+1} - x^k||`.
#[derive(Debug, Clone, PartialEq)]
pub struct IterationRecord {
    pub k: usize,
    pub x: Point,
    pub u: Point,
    pub y: Point,
    pub z: Point,
    pub step_norm: f64,
    /// phi(reference, x^k); absent without a reference solution.
    pub phi_gap: Option<f64>,
    /// Certified worst violation of the resolvent inequality at u^k.
    pub resolvent_violation: f64,
}

/// Terminal state of a solve.
#[derive(Debug)]
pub enum SolveStatus {
    /// step_norm fell to the stopping tolerance.
    Converged,
    /// Iteration budget exhausted first.
    MaxIters,
    /// An iteration failed numerically; the trace holds the completed
    /// prefix.
    InnerFailure(StepError),
}

impl SolveStatus {
    pub fn label(&self) -> &'static str {
        match self {
            SolveStatus::Converged => "converged",
            SolveStatus::MaxIters => "max_iters",
            SolveStatus::InnerFailure(_) => "inner_failure",
        }
    }

    pub fn is_converged(&self) -> bool {
        matches!(self, SolveStatus::Converged)
    }
}

/// Result of a solve: terminal status, last iterate, and the full
/// per-iteration trace.
#[derive(Debug)]
pub struct SolveResult {
    pub status: SolveStatus,
    pub final_point: Point,
    pub trace: Vec<IterationRecord>,
}

/// One extragradient iteration from `x` at index `k`.
pub fn step(
    problem: &ProblemInstance,
    schedule: &Schedule,
    k: usize,
    x: &Point,
) -> Result<(Point, IterationRecord), StepError> {
    let tau = schedule.tau;
    let query = ResolventQuery {
        bifunction: &problem.bifunction,
        operator: &problem.operator,
        set: &problem.set,
        r: schedule.r_at(k),
        x,
    };
    let u = resolvent(&query)?.point;
    let resolvent_violation = verify_resolvent(&u, &query, TRACE_VIOLATION_SAMPLES)?.max_violation;

    let y = extragradient_half_step(problem, x, tau)?;
    let z = extragradient_half_step(problem, &u, tau)?;

    let tz = problem.map_t.apply(&z);
    let sy = problem.map_s.apply(&y);
    require_in_set(problem, &tz, "T")?;
    require_in_set(problem, &sy, "S")?;

    let (alpha_k, beta_k, gamma_k) = schedule.weights_at(k);
    let combined = dual_combination(&[
        (alpha_k, &x.duality_map()),
        (beta_k, &tz.duality_map()),
        (gamma_k, &sy.duality_map()),
    ]);
    let x_next = problem
        .set
        .generalized_projection(&problem.space.duality_map_inverse(&combined))?;

    let record = IterationRecord {
        k,
        x: x.clone(),
        u,
        y,
        z,
        step_norm: x_next.sub(x).norm(),
        phi_gap: problem.reference.as_ref().map(|p| lyapunov(p, x)),
        resolvent_violation,
    };
    Ok((x_next, record))
}

/// Pi_C J^{-1}(J v - tau A v).
fn extragradient_half_step(
    problem: &ProblemInstance,
    v: &Point,
    tau: f64,
) -> Result<Point, ProjectionError> {
    let jv = v.duality_map();
    let av = problem.operator.apply(v);
    let target = dual_combination(&[(1.0, &jv), (-tau, &av)]);
    problem
        .set
        .generalized_projection(&problem.space.duality_map_inverse(&target))
}

fn require_in_set(
    problem: &ProblemInstance,
    image: &Point,
    map: &'static str,
) -> Result<(), StepError> {
    let violation = problem.set.violation(image.coords());
    if violation > DEFAULT_GEOMETRY_TOL * (1.0 + image.norm()) {
        return Err(StepError::MapRange { map, violation });
    }
    Ok(())
}

/// Run the extragradient iteration from `x1`. Stops as soon as an
/// iteration's step norm is at or below `stop_tol`, or after `max_iters`
/// iterations. Two calls with identical inputs produce bit-identical
/// traces.
pub fn solve(
    problem: &ProblemInstance,
    schedule: &Schedule,
    x1: &Point,
    stop_tol: f64,
    max_iters: usize,
) -> Result<SolveResult, SolveError> {
    problem.validate()?;
    if x1.space() != &problem.space {
        return Err(SolveError::SpaceMismatch);
    }
    let report = validate_schedule(
        schedule,
        problem.operator.declared_alpha(),
        problem.space.convexity_constant(),
        max_iters.max(DEFAULT_VALIDATION_HORIZON),
    );
    if let Some(failure) = report.failures().first() {
        return Err(SolveError::ScheduleRejected {
            condition: failure.condition,
            detail: failure.detail.clone(),
        });
    }
    let start_violation = problem.set.violation(x1.coords());
    if start_violation > DEFAULT_GEOMETRY_TOL * (1.0 + x1.norm()) {
        return Err(SolveError::InfeasibleStart(start_violation));
    }

    let mut x = x1.clone();
    let mut trace = Vec::new();
    for k in 1..=max_iters {
        match step(problem, schedule, k, &x) {
            Ok((x_next, record)) => {
                let done = record.step_norm <= stop_tol;
                trace.push(record);
                x = x_next;
                if done {
                    return Ok(SolveResult {
                        status: SolveStatus::Converged,
                        final_point: x,
                        trace,
                    });
                }
            }
            Err(error) => {
                return Ok(SolveResult {
                    status: SolveStatus::InnerFailure(error),
                    final_point: x,
                    trace,
                });
            }
        }
    }
    Ok(SolveResult {
        status: SolveStatus::MaxIters,
        final_point: x,
        trace,
    })
}

/// The corollary variant: the same iteration with f == 0 and T = identity
/// wired in, so the resolvent step reduces to the variational-inequality
/// resolvent for A alone.
pub fn solve_corollary(
    instance: &CorollaryInstance,
    schedule: &Schedule,
    x1: &Point,
    stop_tol: f64,
    max_iters: usize,
) -> Result<SolveResult, SolveError> {
    solve(
        &instance.clone().into_problem(),
        schedule,
        x1,
        stop_tol,
        max_iters,
    )
}

/// Classical two-projection extragradient baseline in Euclidean space:
/// y = P_C(x - tau A x), x+ = P_C(x - tau A y). The trace reuses the
/// record shape with u := x and z := y; there is no resolvent, so the
/// violation column is zero.
pub fn solve_korpelevich(
    operator: &MonotoneOperator,
    set: &FeasibleSet,
    space: &SpaceDescriptor,
    tau: f64,
    x1: &Point,
    stop_tol: f64,
    max_iters: usize,
) -> Result<SolveResult, SolveError> {
    if !space.is_euclidean() {
        return Err(SolveError::RequiresEuclidean);
    }
    if !tau.is_finite() || tau <= 0.0 {
        return Err(SolveError::InvalidTau(tau));
    }
    set.validate_for(space).map_err(ProblemError::from)?;
    operator.validate_for(space).map_err(ProblemError::from)?;
    if x1.space() != space {
        return Err(SolveError::SpaceMismatch);
    }
    let start_violation = set.violation(x1.coords());
    if start_violation > DEFAULT_GEOMETRY_TOL * (1.0 + x1.norm()) {
        return Err(SolveError::InfeasibleStart(start_violation));
    }

    let gradient_step = |v: &Point, g: &Point| -> Result<Point, StepError> {
        let moved: Vec<f64> = v
            .coords()
            .iter()
            .zip(operator.apply(g).coords())
            .map(|(vi, gi)| vi - tau * gi)
            .collect();
        let candidate = space
            .point(moved)
            .expect("baseline arithmetic produced invalid coordinates");
        Ok(set.metric_projection(&candidate)?)
    };

    let mut x = x1.clone();
    let mut trace = Vec::new();
    for k in 1..=max_iters {
        let outcome = (|| -> Result<(Point, Point), StepError> {
            let y = gradient_step(&x, &x)?;
            let x_next = gradient_step(&x, &y)?;
            Ok((y, x_next))
        })();
        match outcome {
            Ok((y, x_next)) => {
                let record = IterationRecord {
                    k,
                    x: x.clone(),
                    u: x.clone(),
                    y: y.clone(),
                    z: y,
                    step_norm: x_next.sub(&x).norm(),
                    phi_gap: None,
                    resolvent_violation: 0.0,
                };
                let done = record.step_norm <= stop_tol;
                trace.push(record);
                x = x_next;
                if done {
                    return Ok(SolveResult {
                        status: SolveStatus::Converged,
                        final_point: x,
                        trace,
                    });
                }
            }
            Err(error) => {
                return Ok(SolveResult {
                    status: SolveStatus::InnerFailure(error),
                    final_point: x,
                    trace,
                });
            }
        }
    }
    Ok(SolveResult {
        status: SolveStatus::MaxIters,
        final_point: x,
        trace,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::schedule::Sequence;

    fn benchmark_schedule() -> Schedule {
        Schedule {
            alpha: Sequence::affine_reciprocal(1.0 / 3.0, 0.25),
            beta: Sequence::affine_reciprocal(0.5, -1.0 / 6.0),
            gamma: Sequence::affine_reciprocal(1.0 / 6.0, -1.0 / 12.0),
            r: 1.0 / 22.0,
            tau: 0.25,
            a_floor: None,
        }
    }

    fn benchmark_problem() -> ProblemInstance {
        let space = SpaceDescriptor::euclidean(1).unwrap();
        let reference = space.origin();
        ProblemInstance {
            space,
            set: FeasibleSet::interval(-4.0, 4.0).unwrap(),
            bifunction: Bifunction::quadratic_1d(9.0, 3.0).unwrap(),
            operator: MonotoneOperator::Identity,
            map_t: FixedPointMap::Identity,
            map_s: FixedPointMap::Scaling { t: 2.0 / 9.0 },
            reference: Some(reference),
        }
    }

    #[test]
    fn first_step_matches_hand_values() {
        let problem = benchmark_problem();
        let schedule = benchmark_schedule();
        let x = problem.space.point(vec![3.5]).unwrap();
        let (x_next, record) = step(&problem, &schedule, 1, &x).unwrap();
        assert_eq!(record.u.coords(), &[1.75]);
        assert_eq!(record.y.coords(), &[2.625]);
        assert_eq!(record.z.coords(), &[1.3125]);
        // x2 = (alpha_1 + beta_1 * 3/8 + gamma_1 * 1/6) * 3.5
        //    = (79/144 + 25/144) * 3.5 = 2.52777...
        let expected = (79.0 / 144.0 + 25.0 / 144.0) * 3.5;
        let rel = (x_next.coords()[0] - expected).abs() / expected;
        assert!(rel <= 1e-12, "x2 = {} vs {expected}", x_next.coords()[0]);
        assert!(record.resolvent_violation <= 1e-12);
        assert!(record.phi_gap.is_some());
    }

    #[test]
    fn first_step_from_negative_start() {
        let problem = benchmark_problem();
        let schedule = benchmark_schedule();
        let x = problem.space.point(vec![-4.0]).unwrap();
        let (_, record) = step(&problem, &schedule, 1, &x).unwrap();
        assert_eq!(record.u.coords(), &[-2.0]);
        assert_eq!(record.y.coords(), &[-3.0]);
        assert_eq!(record.z.coords(), &[-1.5]);
    }

    #[test]
    fn origin_is_stationary() {
        let problem = benchmark_problem();
        let schedule = benchmark_schedule();
        let x = problem.space.origin();
        let (x_next, record) = step(&problem, &schedule, 1, &x).unwrap();
        assert_eq!(x_next.coords(), &[0.0]);
        assert_eq!(record.u.coords(), &[0.0]);
        assert_eq!(record.y.coords(), &[0.0]);
        assert_eq!(record.z.coords(), &[0.0]);
        assert_eq!(record.step_norm, 0.0);

        let result = solve(&problem, &schedule, &x, DEFAULT_STOP_TOL, 100).unwrap();
        assert!(result.status.is_converged());
        assert_eq!(result.trace.len(), 1);
        assert_eq!(result.final_point.coords(), &[0.0]);
    }

    #[test]
    fn full_run_tracks_scalar_recurrence() {
        let problem = benchmark_problem();
        let schedule = benchmark_schedule();
        let x1 = problem.space.point(vec![3.5]).unwrap();
        let result = solve(&problem, &schedule, &x1, 0.0, 100).unwrap();
        assert_eq!(result.trace.len(), 100);
        assert_eq!(result.status.label(), "max_iters");
        for k in 1..100 {
            let coeff = 79.0 / 144.0 + 25.0 / (144.0 * k as f64);
            let predicted = coeff * result.trace[k - 1].x.coords()[0];
            let actual = result.trace[k].x.coords()[0];
            let rel = (actual - predicted).abs() / predicted.abs();
            assert!(rel <= 1e-12, "k={k}: {actual} vs {predicted}");
            assert!(actual.abs() < result.trace[k - 1].x.coords()[0].abs());
        }
        assert!(result.trace[99].x.coords()[0].abs() <= 1e-24);
    }

    #[test]
    fn phi_gap_is_monotone_and_sandwiched() {
        let problem = benchmark_problem();
        let schedule = benchmark_schedule();
        for start in [3.5, -4.0] {
            let x1 = problem.space.point(vec![start]).unwrap();
            let result = solve(&problem, &schedule, &x1, 0.0, 100).unwrap();
            let reference = problem.reference.as_ref().unwrap();
            let mut previous = f64::INFINITY;
            for record in &result.trace {
                let gap = record.phi_gap.unwrap();
                assert!(gap <= previous + 1e-10, "phi gap increased at k={}", record.k);
                previous = gap;
                // Per-step sandwich: the half-step iterates do not move
                // farther from the solution than x does.
                let phi_x = lyapunov(reference, &record.x);
                assert!(lyapunov(reference, &record.y) <= phi_x + 1e-10);
                assert!(lyapunov(reference, &record.z) <= phi_x + 1e-10);
                // Feasibility of everything recorded.
                for point in [&record.x, &record.u, &record.y, &record.z] {
                    assert!(problem.set.violation(point.coords()) <= 1e-9);
                }
            }
        }
    }

    #[test]
    fn identical_inputs_give_bit_identical_traces() {
        let problem = benchmark_problem();
        let schedule = benchmark_schedule();
        let x1 = problem.space.point(vec![3.5]).unwrap();
        let a = solve(&problem, &schedule, &x1, 0.0, 50).unwrap();
        let b = solve(&problem, &schedule, &x1, 0.0, 50).unwrap();
        assert_eq!(a.trace, b.trace);
        assert_eq!(a.final_point, b.final_point);
    }

    #[test]
    fn default_tolerance_converges_before_budget() {
        let problem = benchmark_problem();
        let schedule = benchmark_schedule();
        let x1 = problem.space.point(vec![3.5]).unwrap();
        let result = solve(&problem, &schedule, &x1, DEFAULT_STOP_TOL, 100).unwrap();
        assert!(result.status.is_converged());
        assert!(result.trace.len() < 100);
    }

    #[test]
    fn infeasible_start_is_refused() {
        let problem = benchmark_problem();
        let schedule = benchmark_schedule();
        let x1 = problem.space.point(vec![5.0]).unwrap();
        match solve(&problem, &schedule, &x1, 0.0, 10) {
            Err(SolveError::InfeasibleStart(v)) => assert!((v - 1.0).abs() < 1e-12),
            other => panic!("expected infeasible-start error, got {other:?}"),
        }
    }

    #[test]
    fn oversized_tau_is_refused_by_name() {
        let problem = benchmark_problem();
        let mut schedule = benchmark_schedule();
        schedule.tau = 0.6;
        let x1 = problem.space.point(vec![3.5]).unwrap();
        match solve(&problem, &schedule, &x1, 0.0, 10) {
            Err(SolveError::ScheduleRejected { condition, detail }) => {
                assert_eq!(condition, "(iv)");
                assert!(detail.contains("(iv)"), "detail: {detail}");
            }
            other => panic!("expected schedule rejection, got {other:?}"),
        }
    }

    #[test]
    fn quadratic_bifunction_needs_dimension_one() {
        let mut problem = benchmark_problem();
        problem.space = SpaceDescriptor::euclidean(2).unwrap();
        problem.set = FeasibleSet::bounded_box(vec![-4.0, -4.0], vec![4.0, 4.0]).unwrap();
        problem.reference = None;
        let x1 = problem.space.origin();
        match solve(&problem, &benchmark_schedule(), &x1, 0.0, 10) {
            Err(SolveError::Problem(ProblemError::QuadraticNeedsDimOne(2))) => {}
            other => panic!("expected dimension error, got {other:?}"),
        }
    }

    #[test]
    fn resolvent_stall_surfaces_as_inner_failure() {
        // Declared alpha wildly overstates the operator's regularity, so
        // the resolvent's damped fixed-point iteration ping-pongs inside
        // the box and never meets its tolerance.
        let space = SpaceDescriptor::euclidean(2).unwrap();
        let problem = ProblemInstance {
            space: space.clone(),
            set: FeasibleSet::bounded_box(vec![-4.0, -4.0], vec![4.0, 4.0]).unwrap(),
            bifunction: Bifunction::Zero,
            operator: MonotoneOperator::Linear {
                matrix: vec![vec![100.0, 0.0], vec![0.0, 100.0]],
                alpha: Some(1.0),
            },
            map_t: FixedPointMap::Identity,
            map_s: FixedPointMap::Identity,
            reference: None,
        };
        let mut schedule = benchmark_schedule();
        schedule.r = 1.0;
        let x1 = space.point(vec![1.0, 1.0]).unwrap();
        let result = solve(&problem, &schedule, &x1, 0.0, 5).unwrap();
        match &result.status {
            SolveStatus::InnerFailure(StepError::Resolvent(
                ResolventError::FixedPointStall { .. },
            )) => {}
            other => panic!("expected resolvent stall, got {other:?}"),
        }
        assert!(result.trace.is_empty());
        assert_eq!(result.final_point, x1);
    }

    #[test]
    fn hilbert_reduction_matches_baseline_half_step() {
        // f == 0, T = S = identity, alpha_k = 1: the y-step of the main
        // iteration is exactly the baseline's first half-step.
        let space = SpaceDescriptor::euclidean(2).unwrap();
        let set = FeasibleSet::bounded_box(vec![-1.0, -1.0], vec![1.0, 1.0]).unwrap();
        let operator = MonotoneOperator::Linear {
            matrix: vec![vec![1.0, 0.0], vec![0.0, 2.0]],
            alpha: None,
        };
        let problem = ProblemInstance {
            space: space.clone(),
            set: set.clone(),
            bifunction: Bifunction::Zero,
            operator: operator.clone(),
            map_t: FixedPointMap::Identity,
            map_s: FixedPointMap::Identity,
            reference: None,
        };
        let schedule = Schedule {
            alpha: Sequence::constant(1.0),
            beta: Sequence::constant(0.0),
            gamma: Sequence::constant(0.0),
            r: 1.0,
            tau: 0.2,
            a_floor: None,
        };
        let x1 = space.point(vec![0.9, -0.7]).unwrap();
        let main = solve(&problem, &schedule, &x1, 0.0, 1).unwrap();
        let baseline = solve_korpelevich(&operator, &set, &space, 0.2, &x1, 0.0, 1).unwrap();
        assert_eq!(main.trace[0].y, baseline.trace[0].y);
    }

    #[test]
    fn baseline_reproduces_hand_iterates() {
        let space = SpaceDescriptor::euclidean(1).unwrap();
        let set = FeasibleSet::interval(-4.0, 4.0).unwrap();
        let x1 = space.point(vec![3.5]).unwrap();
        let result =
            solve_korpelevich(&MonotoneOperator::Identity, &set, &space, 0.25, &x1, 0.0, 5)
                .unwrap();
        assert_eq!(result.trace[0].y.coords(), &[2.625]);
        assert_eq!(result.trace[0].u, result.trace[0].x);
        assert_eq!(result.trace[0].z, result.trace[0].y);
        assert_eq!(result.trace[1].x.coords(), &[2.84375]);
        assert_eq!(result.trace[0].resolvent_violation, 0.0);
        assert_eq!(result.trace[0].phi_gap, None);

        let zero = space.origin();
        let static_run =
            solve_korpelevich(&MonotoneOperator::Identity, &set, &space, 0.25, &zero, 1e-12, 5)
                .unwrap();
        assert!(static_run.status.is_converged());
        assert_eq!(static_run.trace.len(), 1);
    }

    #[test]
    fn baseline_contracts_on_two_dimensional_instance() {
        let space = SpaceDescriptor::euclidean(2).unwrap();
        let set = FeasibleSet::bounded_box(vec![-1.0, -1.0], vec![1.0, 1.0]).unwrap();
        let operator = MonotoneOperator::Linear {
            matrix: vec![vec![1.0, 0.0], vec![0.0, 2.0]],
            alpha: None,
        };
        let x1 = space.point(vec![1.0, 1.0]).unwrap();
        let result = solve_korpelevich(&operator, &set, &space, 0.2, &x1, 0.0, 200).unwrap();
        assert!(result.final_point.norm() <= 1e-6);
        for pair in result.trace.windows(2) {
            assert!(pair[1].x.norm() <= pair[0].x.norm() + 1e-15);
        }
    }

    #[test]
    fn baseline_refuses_bad_geometry_and_tau() {
        let lp = SpaceDescriptor::lp(2, 1.5).unwrap();
        let set = FeasibleSet::bounded_box(vec![-1.0, -1.0], vec![1.0, 1.0]).unwrap();
        let x1 = lp.origin();
        assert!(matches!(
            solve_korpelevich(&MonotoneOperator::Zero, &set, &lp, 0.1, &x1, 0.0, 5),
            Err(SolveError::RequiresEuclidean)
        ));
        let euclid = SpaceDescriptor::euclidean(2).unwrap();
        let origin = euclid.origin();
        assert!(matches!(
            solve_korpelevich(&MonotoneOperator::Zero, &set, &euclid, 0.0, &origin, 0.0, 5),
            Err(SolveError::InvalidTau(_))
        ));
    }

    #[test]
    fn corollary_agrees_with_explicit_wiring() {
        let space = SpaceDescriptor::euclidean(1).unwrap();
        let instance = CorollaryInstance {
            space: space.clone(),
            set: FeasibleSet::interval(-4.0, 4.0).unwrap(),
            operator: MonotoneOperator::Identity,
            map_s: FixedPointMap::Scaling { t: 2.0 / 9.0 },
            reference: Some(space.origin()),
        };
        let schedule = benchmark_schedule();
        let x1 = space.point(vec![3.5]).unwrap();
        let corollary = solve_corollary(&instance, &schedule, &x1, 0.0, 100).unwrap();

        let explicit = ProblemInstance {
            space: space.clone(),
            set: FeasibleSet::interval(-4.0, 4.0).unwrap(),
            bifunction: Bifunction::Zero,
            operator: MonotoneOperator::Identity,
            map_t: FixedPointMap::Identity,
            map_s: FixedPointMap::Scaling { t: 2.0 / 9.0 },
            reference: Some(space.origin()),
        };
        let direct = solve(&explicit, &schedule, &x1, 0.0, 100).unwrap();
        assert_eq!(corollary.trace, direct.trace);
        assert_eq!(corollary.final_point, direct.final_point);
        // Converges to the unique common solution 0.
        assert!(corollary.final_point.norm() <= 1e-6);

        // A start already at the solution is stationary.
        let at_zero = solve_corollary(&instance, &schedule, &space.origin(), 1e-12, 50).unwrap();
        assert!(at_zero.status.is_converged());
        assert_eq!(at_zero.final_point.coords(), &[0.0]);
    }
}
