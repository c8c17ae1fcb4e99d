//! Extragradient solver for combined equilibrium, variational-inequality
//! and fixed-point problems in smooth, 2-uniformly convex Banach spaces.
//!
//! The library is organized around the geometry it needs:
//!
//! * [`space`] — finite-dimensional Euclidean and `l_p` (1 < p <= 2)
//!   spaces, the normalized duality mapping `J` and its inverse, and the
//!   Lyapunov functionals `phi` and `V` that replace squared distance
//!   outside Hilbert space.
//! * [`sets`] — convex feasible sets (boxes, halfspaces, the whole
//!   space) with metric and generalized (`phi`-minimizing) projections,
//!   plus sampled optimality certificates.
//! * [`equilibrium`] — equilibrium bifunctions, their regularized
//!   resolvent `K_r`, and sampled axiom checks.
//! * [`operators`] — monotone operators with declared
//!   inverse-strong-monotonicity constants, fixed-point maps, and
//!   sampled hypothesis checkers.
//! * [`schedule`] — closed-form parameter sequences and the four
//!   admissibility conditions the convergence theory imposes.
//! * [`solver`] — the extragradient iteration itself, its corollary
//!   variant, and the classical two-projection baseline.
//! * [`harness`] — problem files, presets, trace CSV I/O, rate
//!   estimation, and the consolidated hypothesis checker backing the
//!   command-line interface.
//!
//! Primal points and dual vectors are distinct types; the duality map is
//! the only bridge between them, which keeps the algorithm's dual-space
//! bookkeeping honest at compile time.

pub mod equilibrium;
pub mod harness;
pub mod operators;
pub mod sampling;
pub mod schedule;
pub mod sets;
pub mod solver;
pub mod space;

pub use equilibrium::{
    check_bifunction_axioms, resolvent, resolvent_quadratic_1d, resolvent_solve,
    verify_resolvent, Bifunction, ResolventError, ResolventOutcome, ResolventQuery,
};
pub use operators::{
    check_norm_domination, check_relatively_nonexpansive, estimate_alpha, FixedPointMap,
    MonotoneOperator, OperatorError,
};
pub use schedule::{validate_schedule, ConditionStatus, Schedule, ScheduleReport, Sequence};
pub use sets::{FeasibleSet, ProjectionError, SetError};
pub use solver::{
    solve, solve_corollary, solve_korpelevich, step, CorollaryInstance, IterationRecord,
    ProblemInstance, SolveError, SolveResult, SolveStatus, StepError, DEFAULT_MAX_ITERS,
    DEFAULT_STOP_TOL,
};
pub use space::{
    dual_combination, lyapunov, pairing, v_functional, DualPoint, Point, SpaceDescriptor,
    SpaceError,
};
