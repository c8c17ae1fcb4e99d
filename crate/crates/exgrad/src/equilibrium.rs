//! Equilibrium bifunctions and their regularized resolvent.
//!
//! The resolvent K_r assigns to a query point x the unique feasible u with
//!
//! ```text
//! f(u, y) + <A u, y - u> + (1/r) <y - u, J u - J x>  >=  0   for all y in C.
//! ```
//!
//! Three solution paths are provided, from most to least exact:
//!
//! * a closed form for 1-D quadratic bifunctions with a scalar monotone
//!   operator (stationarity of the defining quadratic in y);
//! * bisection on the monotone scalar residual R(u) for general 1-D data;
//! * a damped fixed-point iteration for `f == 0` in any dimension, where
//!   the condition is the variational inequality of the strongly monotone
//!   map `u -> A u + (1/r)(J u - J x)`.
//!
//! Every numerical path certifies its answer with [`verify_resolvent`]
//! before returning it. The certificate is also exposed on its own so the
//! solver can record per-iteration violations.

use crate::operators::MonotoneOperator;
use crate::sets::{FeasibleSet, ProjectionError};
use crate::space::{dual_combination, pairing, Point, DEFAULT_GEOMETRY_TOL};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Bisection interval-width tolerance for the 1-D numerical resolvent.
pub const RESOLVENT_BISECTION_TOL: f64 = 1e-12;

/// Relative step tolerance for the f == 0 fixed-point iteration.
pub const RESOLVENT_FIXED_POINT_TOL: f64 = 1e-10;

/// Iteration budget for the fixed-point inner loop.
pub const MAX_RESOLVENT_ITERS: usize = 10_000;

/// Sample count used when a numerical path self-certifies its output.
const SELF_CHECK_SAMPLES: usize = 64;

/// Errors from resolvent computation.
#[derive(Debug, Error)]
pub enum ResolventError {
    #[error("resolvent parameter r must be positive and finite, got {0}")]
    InvalidParameter(f64),
    #[error("closed-form resolvent needs a > 0, b >= 0, lam >= 0; got a={a}, b={b}, lam={lam}")]
    InvalidClosedFormCoefficients { a: f64, b: f64, lam: f64 },
    #[error(
        "clamped closed-form candidate fails the defining inequality \
         (violation {violation:.3e}); no closed form applies to this query"
    )]
    ClosedFormInapplicable { violation: f64 },
    #[error("a quadratic bifunction requires a 1-dimensional space; only f == 0 is supported in dimension >= 2")]
    UnsupportedDimension,
    #[error("could not bracket the resolvent residual: R({lo:.3e}) = {flo:.3e}, R({hi:.3e}) = {fhi:.3e}")]
    BracketFailure { lo: f64, hi: f64, flo: f64, fhi: f64 },
    #[error("fixed-point iteration stalled after {iterations} iterations (relative step {residual:.3e})")]
    FixedPointStall { iterations: usize, residual: f64 },
    #[error("resolvent output failed certification: worst sampled violation {max_violation:.3e}")]
    VerificationFailed { max_violation: f64 },
    #[error("query or output point lies outside the feasible set (violation {0:.3e})")]
    PointOutsideSet(f64),
    #[error(transparent)]
    Projection(#[from] ProjectionError),
}

/// An equilibrium bifunction f(u, y) satisfying (or claiming to satisfy)
/// the standard axioms: zero on the diagonal, monotone, hemicontinuous in
/// the first argument, convex in the second.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(
    tag = "type",
    rename_all = "lowercase",
    try_from = "BifunctionDoc",
    into = "BifunctionDoc"
)]
pub enum Bifunction {
    /// f == 0 (reduces the equilibrium problem to the variational
    /// inequality for A alone).
    Zero,
    /// f(u, y) = a y^2 + b u y - (a + b) u^2 on a 1-D space. Requires
    /// a > 0 (convexity in y); b is unrestricted at the type level so the
    /// axiom checker can exhibit monotonicity failures for b < 0, but only
    /// b >= 0 actually satisfies the monotonicity axiom.
    Quadratic1d { a: f64, b: f64 },
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
enum BifunctionDoc {
    Zero,
    Quadratic1d { a: f64, b: f64 },
}

/// Error from constructing a bifunction.
#[derive(Debug, Error, PartialEq)]
pub enum BifunctionError {
    #[error("quadratic bifunction needs finite a > 0 (convexity in y), got a = {0}")]
    NonConvex(f64),
    #[error("quadratic bifunction coefficient b must be finite, got {0}")]
    NonFiniteCoefficient(f64),
}

impl TryFrom<BifunctionDoc> for Bifunction {
    type Error = BifunctionError;

    fn try_from(doc: BifunctionDoc) -> Result<Self, BifunctionError> {
        match doc {
            BifunctionDoc::Zero => Ok(Bifunction::Zero),
            BifunctionDoc::Quadratic1d { a, b } => Bifunction::quadratic_1d(a, b),
        }
    }
}

impl From<Bifunction> for BifunctionDoc {
    fn from(f: Bifunction) -> BifunctionDoc {
        match f {
            Bifunction::Zero => BifunctionDoc::Zero,
            Bifunction::Quadratic1d { a, b } => BifunctionDoc::Quadratic1d { a, b },
        }
    }
}

impl Bifunction {
    /// Validated constructor for the quadratic family.
    pub fn quadratic_1d(a: f64, b: f64) -> Result<Self, BifunctionError> {
        if !a.is_finite() || a <= 0.0 {
            return Err(BifunctionError::NonConvex(a));
        }
        if !b.is_finite() {
            return Err(BifunctionError::NonFiniteCoefficient(b));
        }
        Ok(Bifunction::Quadratic1d { a, b })
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Bifunction::Zero)
    }

    /// Evaluate f(u, y) for scalar (1-D) arguments.
    pub fn eval_1d(&self, u: f64, y: f64) -> f64 {
        match self {
            Bifunction::Zero => 0.0,
            Bifunction::Quadratic1d { a, b } => a * y * y + b * u * y - (a + b) * u * u,
        }
    }

    /// d/dy f(u, y) at y = u, for scalar arguments. This is the quantity
    /// entering the stationarity reformulation of the resolvent.
    pub fn partial_y_at_diagonal(&self, u: f64) -> f64 {
        match self {
            Bifunction::Zero => 0.0,
            Bifunction::Quadratic1d { a, b } => (2.0 * a + b) * u,
        }
    }

    /// Quadratic coefficients (a, b), with the zero bifunction viewed as
    /// the degenerate case a = b = 0.
    fn coefficients(&self) -> (f64, f64) {
        match self {
            Bifunction::Zero => (0.0, 0.0),
            Bifunction::Quadratic1d { a, b } => (*a, *b),
        }
    }
}

/// Everything needed to pose one resolvent evaluation. The space is
/// carried by `x`.
#[derive(Debug, Clone)]
pub struct ResolventQuery<'a> {
    pub bifunction: &'a Bifunction,
    pub operator: &'a MonotoneOperator,
    pub set: &'a FeasibleSet,
    pub r: f64,
    pub x: &'a Point,
}

/// A computed resolvent point together with how it was obtained.
#[derive(Debug, Clone)]
pub struct ResolventOutcome {
    pub point: Point,
    /// Path-specific accuracy measure: 0 for closed forms, final bracket
    /// width for bisection, final relative step for the fixed-point path.
    pub residual: f64,
    pub iterations: usize,
}

/// Certificate from sampling the defining inequality.
#[derive(Debug, Clone)]
pub struct ResolventCertificate {
    /// max(0, -min sampled left-hand side): how badly the inequality
    /// fails, 0 when it holds on every sample.
    pub max_violation: f64,
    /// Sample direction achieving the worst value.
    pub witness: Option<Point>,
}

/// Closed-form resolvent for f(u,y) = a y^2 + b u y - (a+b) u^2 with
/// A = lam * identity on a 1-D interval: stationarity of the defining
/// quadratic at y = u gives u = x / (1 + r (2a + b + lam)). When that
/// value leaves the interval it is clamped and the defining inequality is
/// re-verified at the endpoints (and interior vertex); failure of that
/// verification means no closed form applies and the caller should fall
/// back to the numerical solver.
pub fn resolvent_quadratic_1d(
    a: f64,
    b: f64,
    lam: f64,
    r: f64,
    set: &FeasibleSet,
    x: f64,
) -> Result<f64, ResolventError> {
    if !(a.is_finite() && a > 0.0 && b.is_finite() && b >= 0.0 && lam.is_finite() && lam >= 0.0) {
        return Err(ResolventError::InvalidClosedFormCoefficients { a, b, lam });
    }
    if !r.is_finite() || r <= 0.0 {
        return Err(ResolventError::InvalidParameter(r));
    }
    let interval = set.as_interval().ok_or(ResolventError::UnsupportedDimension)?;
    closed_form_1d(a, b, lam, 0.0, r, interval, x)
}

/// Shared closed form allowing a degenerate quadratic (a = 0, for f == 0)
/// and an affine operator intercept q: stationarity gives
/// u (1/r + 2a + b + m) = x/r - q.
fn closed_form_1d(
    a: f64,
    b: f64,
    m: f64,
    q: f64,
    r: f64,
    (lo, hi): (f64, f64),
    x: f64,
) -> Result<f64, ResolventError> {
    let denom = 1.0 + r * (2.0 * a + b + m);
    let free = (x - r * q) / denom;
    let u = free.clamp(lo, hi);
    if u != free {
        // Clamped: certify optimality by checking the defining quadratic
        // g(y) = f(u,y) + (m u + q)(y - u) + (1/r)(y - u)(u - x)
        // at the finite endpoints and at its interior vertex.
        let g = |y: f64| {
            a * y * y + b * u * y - (a + b) * u * u
                + (m * u + q) * (y - u)
                + (y - u) * (u - x) / r
        };
        let mut worst = 0.0f64;
        let mut candidates = Vec::new();
        if lo.is_finite() {
            candidates.push(lo);
        }
        if hi.is_finite() {
            candidates.push(hi);
        }
        if a > 0.0 {
            let vertex = -(b * u + m * u + q + (u - x) / r) / (2.0 * a);
            if vertex >= lo && vertex <= hi {
                candidates.push(vertex);
            }
        }
        let scale = 1.0 + x * x + u * u;
        for y in candidates {
            worst = worst.max(-g(y));
        }
        if worst > 1e-9 * scale {
            return Err(ResolventError::ClosedFormInapplicable { violation: worst });
        }
    }
    Ok(u)
}

/// Compute the resolvent K_r(x), choosing the most exact applicable path:
/// closed form when the 1-D query matches its preconditions, bisection for
/// other 1-D data, the damped fixed-point iteration for f == 0 in
/// dimension >= 2. Numerical paths self-certify before returning.
pub fn resolvent(query: &ResolventQuery) -> Result<ResolventOutcome, ResolventError> {
    if !query.r.is_finite() || query.r <= 0.0 {
        return Err(ResolventError::InvalidParameter(query.r));
    }
    let space = query.x.space();
    if space.dim() == 1 {
        let (a, b) = query.bifunction.coefficients();
        if let Some((m, q)) = query.operator.as_scalar_affine() {
            if b >= 0.0 && m >= 0.0 && q == 0.0 {
                let interval = query
                    .set
                    .as_interval()
                    .ok_or(ResolventError::UnsupportedDimension)?;
                if let Ok(u) = closed_form_1d(a, b, m, q, query.r, interval, query.x.coords()[0]) {
                    return Ok(ResolventOutcome {
                        point: point_in(space, vec![u]),
                        residual: 0.0,
                        iterations: 0,
                    });
                }
            }
        }
        return resolvent_solve(query, RESOLVENT_BISECTION_TOL);
    }
    if query.bifunction.is_zero() {
        return resolvent_solve(query, RESOLVENT_FIXED_POINT_TOL);
    }
    Err(ResolventError::UnsupportedDimension)
}

/// Numerical resolvent: bisection on the monotone residual in one
/// dimension, damped fixed-point iteration for f == 0 otherwise. The
/// output is certified against the defining inequality before it is
/// returned.
pub fn resolvent_solve(
    query: &ResolventQuery,
    tol: f64,
) -> Result<ResolventOutcome, ResolventError> {
    resolvent_solve_from(query, tol, None)
}

/// [`resolvent_solve`] with an explicit inner starting point (used by the
/// fixed-point path; the bisection path is bracketing and ignores it).
pub fn resolvent_solve_from(
    query: &ResolventQuery,
    tol: f64,
    initial: Option<&Point>,
) -> Result<ResolventOutcome, ResolventError> {
    if !query.r.is_finite() || query.r <= 0.0 {
        return Err(ResolventError::InvalidParameter(query.r));
    }
    let space = query.x.space();
    let outcome = if space.dim() == 1 {
        bisect_1d(query, tol)?
    } else if query.bifunction.is_zero() {
        fixed_point(query, tol, initial)?
    } else {
        return Err(ResolventError::UnsupportedDimension);
    };
    let certificate = verify_resolvent(&outcome.point, query, SELF_CHECK_SAMPLES)?;
    let scale = 1.0 + query.x.norm_squared() + outcome.point.norm_squared();
    if certificate.max_violation > 1e-6 * scale {
        return Err(ResolventError::VerificationFailed {
            max_violation: certificate.max_violation,
        });
    }
    Ok(outcome)
}

/// 1-D residual whose root is the resolvent:
/// R(u) = d/dy f(u,y)|_{y=u} + A(u) + (1/r)(J u - J x); increasing in u
/// for admissible data. In one dimension every supported norm has J equal
/// to the identity, so the last term is (u - x) / r.
fn residual_1d(query: &ResolventQuery, u: f64) -> f64 {
    let space = query.x.space();
    let point = point_in(space, vec![u]);
    let a_u = query.operator.apply(&point).coords()[0];
    query.bifunction.partial_y_at_diagonal(u) + a_u + (u - query.x.coords()[0]) / query.r
}

fn bisect_1d(query: &ResolventQuery, tol: f64) -> Result<ResolventOutcome, ResolventError> {
    let space = query.x.space();
    let (set_lo, set_hi) = query
        .set
        .as_interval()
        .expect("1-D sets always have an interval view");
    let x0 = query.x.coords()[0];

    // Establish a finite bracket [lo, hi] with R(lo) <= 0 <= R(hi),
    // honoring interval endpoints: if R >= 0 already at the lower
    // endpoint the minimizer is that endpoint, and symmetrically above.
    let mut lo;
    let mut hi;
    if set_lo.is_finite() {
        lo = set_lo;
        let f_lo = residual_1d(query, lo);
        if f_lo >= 0.0 {
            return Ok(ResolventOutcome {
                point: point_in(space, vec![lo]),
                residual: 0.0,
                iterations: 0,
            });
        }
    } else {
        let mut step = 1.0 + x0.abs();
        lo = x0 - step;
        let mut tries = 0;
        while residual_1d(query, lo) > 0.0 {
            step *= 2.0;
            lo = x0 - step;
            tries += 1;
            if tries > 200 {
                return Err(ResolventError::BracketFailure {
                    lo,
                    hi: x0,
                    flo: residual_1d(query, lo),
                    fhi: residual_1d(query, x0),
                });
            }
        }
    }
    if set_hi.is_finite() {
        hi = set_hi;
        let f_hi = residual_1d(query, hi);
        if f_hi <= 0.0 {
            return Ok(ResolventOutcome {
                point: point_in(space, vec![hi]),
                residual: 0.0,
                iterations: 0,
            });
        }
    } else {
        let mut step = 1.0 + x0.abs();
        hi = x0 + step;
        let mut tries = 0;
        while residual_1d(query, hi) < 0.0 {
            step *= 2.0;
            hi = x0 + step;
            tries += 1;
            if tries > 200 {
                return Err(ResolventError::BracketFailure {
                    lo,
                    hi,
                    flo: residual_1d(query, lo),
                    fhi: residual_1d(query, hi),
                });
            }
        }
    }
    if lo > hi {
        return Err(ResolventError::BracketFailure {
            lo,
            hi,
            flo: residual_1d(query, lo),
            fhi: residual_1d(query, hi),
        });
    }

    let mut iterations = 0;
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break; // interval at floating-point resolution
        }
        if residual_1d(query, mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        iterations += 1;
        if iterations > 200 {
            break;
        }
    }
    let u = (0.5 * (lo + hi)).clamp(set_lo, set_hi);
    Ok(ResolventOutcome {
        point: point_in(space, vec![u]),
        residual: hi - lo,
        iterations,
    })
}

/// Damped fixed-point iteration for f == 0:
/// u <- (1 - theta) u + theta * Pi_C J^{-1}(J x - r A u), with damping
/// theta = 0.5 * min(1, alpha / r). The stopping rule is relative so that
/// queries near the origin (late iterations of a convergent solve) retain
/// full precision.
fn fixed_point(
    query: &ResolventQuery,
    tol: f64,
    initial: Option<&Point>,
) -> Result<ResolventOutcome, ResolventError> {
    let space = query.x.space();
    let jx = query.x.duality_map();
    let alpha = query.operator.declared_alpha();
    let theta = 0.5 * (alpha / query.r).min(1.0);
    let mut u = match initial {
        Some(start) => query.set.generalized_projection(start)?,
        None => query.set.generalized_projection(query.x)?,
    };
    let mut residual = f64::INFINITY;
    for iteration in 1..=MAX_RESOLVENT_ITERS {
        let au = query.operator.apply(&u);
        let target = dual_combination(&[(1.0, &jx), (-query.r, &au)]);
        let candidate = query
            .set
            .generalized_projection(&space.duality_map_inverse(&target))?;
        let next_coords: Vec<f64> = u
            .coords()
            .iter()
            .zip(candidate.coords())
            .map(|(cur, cand)| (1.0 - theta) * cur + theta * cand)
            .collect();
        let next = point_in(space, next_coords);
        let step = next.distance(&u);
        let scale = query.x.norm().max(next.norm()).max(1e-30);
        residual = step / scale;
        u = next;
        if residual <= tol {
            return Ok(ResolventOutcome {
                point: u,
                residual,
                iterations: iteration,
            });
        }
    }
    Err(ResolventError::FixedPointStall {
        iterations: MAX_RESOLVENT_ITERS,
        residual,
    })
}

/// Evaluate the defining inequality at `samples` deterministic
/// quasi-random feasible directions (plus box corners) and report the
/// worst violation. A small value certifies `u` as K_r(x).
pub fn verify_resolvent(
    u: &Point,
    query: &ResolventQuery,
    samples: usize,
) -> Result<ResolventCertificate, ResolventError> {
    let space = query.x.space();
    let membership_tol = DEFAULT_GEOMETRY_TOL * (1.0 + u.norm());
    let violation = query.set.violation(u.coords());
    if violation > membership_tol {
        return Err(ResolventError::PointOutsideSet(violation));
    }
    if !query.bifunction.is_zero() && space.dim() != 1 {
        return Err(ResolventError::UnsupportedDimension);
    }
    let au = query.operator.apply(u);
    let ju_minus_jx = u.duality_map().sub(&query.x.duality_map());
    let mut min_value = f64::INFINITY;
    let mut witness = None;
    for y in query.set.sample(space, samples, 0) {
        let d = y.sub(u);
        let f_term = if query.bifunction.is_zero() {
            0.0
        } else {
            query.bifunction.eval_1d(u.coords()[0], y.coords()[0])
        };
        let value = f_term + pairing(&au, &d) + pairing(&ju_minus_jx, &d) / query.r;
        if value < min_value {
            min_value = value;
            witness = Some(y);
        }
    }
    Ok(ResolventCertificate {
        max_violation: (-min_value).max(0.0),
        witness,
    })
}

/// One sampled axiom verdict.
#[derive(Debug, Clone)]
pub struct AxiomCheck {
    /// "(A1)" diagonal vanishing, "(A2)" monotonicity, "(A3)"
    /// hemicontinuity probe, "(A4)" midpoint convexity.
    pub name: &'static str,
    pub passed: bool,
    /// Worst signed violation encountered (0 when the axiom held on all
    /// samples).
    pub worst: f64,
    /// Sample coordinates (1-D) achieving the worst value.
    pub witness: Option<(f64, f64)>,
}

/// Sampled verification of the four equilibrium axioms on a 1-D set. The
/// zero bifunction passes structurally; the quadratic family is evaluated
/// on quasi-random points. This is evidence, not proof.
pub fn check_bifunction_axioms(
    bifunction: &Bifunction,
    set: &FeasibleSet,
    space: &crate::space::SpaceDescriptor,
    samples: usize,
    seed: u64,
) -> [AxiomCheck; 4] {
    let trivially = |name| AxiomCheck {
        name,
        passed: true,
        worst: 0.0,
        witness: None,
    };
    if bifunction.is_zero() {
        return [
            trivially("(A1)"),
            trivially("(A2)"),
            trivially("(A3)"),
            trivially("(A4)"),
        ];
    }
    assert_eq!(space.dim(), 1, "quadratic bifunctions live on 1-D spaces");
    let points: Vec<f64> = set
        .sample(space, samples.max(8), seed)
        .iter()
        .map(|p| p.coords()[0])
        .collect();
    let scale = points.iter().fold(1.0f64, |acc, v| acc.max(v.abs()));
    let tol = 1e-8 * scale * scale;

    let mut a1 = trivially("(A1)");
    let mut a2 = trivially("(A2)");
    let mut a3 = trivially("(A3)");
    let mut a4 = trivially("(A4)");

    for (i, &u) in points.iter().enumerate() {
        let diag = bifunction.eval_1d(u, u).abs();
        if diag > a1.worst.max(tol) {
            a1 = AxiomCheck {
                name: "(A1)",
                passed: false,
                worst: diag,
                witness: Some((u, u)),
            };
        }

        let y = points[(i + 1) % points.len()];
        let z = points[(i + 2) % points.len()];

        let mono = bifunction.eval_1d(u, y) + bifunction.eval_1d(y, u);
        if mono > a2.worst.max(tol) {
            a2 = AxiomCheck {
                name: "(A2)",
                passed: false,
                worst: mono,
                witness: Some((u, y)),
            };
        }

        // Hemicontinuity probe: approaching u along the segment toward z
        // must not increase f(., y) in the limit. A continuous bifunction
        // shows positive excess shrinking linearly with the probe scale t;
        // a jump keeps the excess flat as t decreases, which is what this
        // flags.
        let base = bifunction.eval_1d(u, y);
        let probe: Vec<f64> = [1e-2, 1e-4, 1e-6]
            .iter()
            .map(|&t| (bifunction.eval_1d(t * z + (1.0 - t) * u, y) - base).max(0.0))
            .collect();
        let decayed = probe[2] <= (probe[0] * 1e-2).max(tol);
        if !decayed && probe[2] > a3.worst {
            a3 = AxiomCheck {
                name: "(A3)",
                passed: false,
                worst: probe[2],
                witness: Some((u, y)),
            };
        }

        let midpoint = bifunction.eval_1d(u, 0.5 * (y + z));
        let chord = 0.5 * (bifunction.eval_1d(u, y) + bifunction.eval_1d(u, z));
        let convexity_excess = midpoint - chord;
        if convexity_excess > a4.worst.max(tol) {
            a4 = AxiomCheck {
                name: "(A4)",
                passed: false,
                worst: convexity_excess,
                witness: Some((y, z)),
            };
        }
    }
    [a1, a2, a3, a4]
}

fn point_in(space: &crate::space::SpaceDescriptor, coords: Vec<f64>) -> Point {
    space
        .point(coords)
        .expect("resolvent arithmetic produced invalid coordinates")
}
