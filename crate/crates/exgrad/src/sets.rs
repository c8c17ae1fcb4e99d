//! Closed convex feasible sets: membership, the euclidean metric
//! projection, and the generalized projection that minimizes the Lyapunov
//! functional phi(., x) over the set.
//!
//! Three variants cover the solver's needs: coordinate boxes, halfspaces
//! `<normal, x> <= offset`, and the whole space. In euclidean geometry the
//! generalized projection coincides with the metric projection and is
//! computed by the same closed forms. In l_p geometry it is found by
//! projected gradient descent on the strictly convex objective
//! `||y||^2 - 2 <Jx, y>`, which differs from phi(y, x) only by the
//! constant `||x||^2`.

use crate::sampling::HaltonSampler;
use crate::space::{gauge_map, lp_norm, pairing, Point, SpaceDescriptor, DEFAULT_GEOMETRY_TOL};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Default stopping tolerance for the iterative generalized projection:
/// the euclidean norm of the projected gradient.
pub const DEFAULT_PROJECTION_TOL: f64 = 1e-10;

/// Iteration budget for the projected-gradient inner loop.
pub const MAX_PROJECTION_ITERS: usize = 10_000;

/// Half-width of the sampling window substituted for infinite bounds when
/// drawing quasi-random points from unbounded sets.
const SAMPLE_WINDOW: f64 = 10.0;

/// Errors from constructing or validating a feasible set.
#[derive(Debug, Error, PartialEq)]
pub enum SetError {
    #[error("set is {set_dim}-dimensional but the space has dimension {space_dim}")]
    DimensionMismatch { set_dim: usize, space_dim: usize },
    #[error("box bounds have mismatched lengths ({lower} lower vs {upper} upper)")]
    RaggedBounds { lower: usize, upper: usize },
    #[error("box is empty at coordinate {index}: lower {lower} > upper {upper}")]
    EmptyBox { index: usize, lower: f64, upper: f64 },
    #[error("box bounds must not be NaN")]
    NanBound,
    #[error("halfspace normal must be finite and nonzero")]
    DegenerateNormal,
    #[error("halfspace offset must be finite")]
    NonFiniteOffset,
}

/// Errors from projection routines.
#[derive(Debug, Error)]
pub enum ProjectionError {
    /// The metric projection is a euclidean notion; other geometries must
    /// use the generalized projection.
    #[error("metric projection requires a euclidean space; use the generalized projection")]
    NonEuclideanSpace,
    /// The inner minimizer ran out of budget. Carries the best iterate so
    /// callers can inspect how close it got.
    #[error(
        "projected-gradient iteration stopped after {iterations} iterations \
         with residual {residual:.3e} above tolerance {tol:.3e}"
    )]
    DidNotConverge {
        residual: f64,
        tol: f64,
        iterations: usize,
        best: Point,
    },
    /// A certification routine was handed a point not in the set.
    #[error("point lies outside the set (constraint violation {0:.3e})")]
    OutsideSet(f64),
}

/// A nonempty closed convex subset of the ambient space.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(
    tag = "type",
    rename_all = "lowercase",
    try_from = "SetDoc",
    into = "SetDoc"
)]
pub enum FeasibleSet {
    /// Coordinate box: lower_i <= x_i <= upper_i. Bounds may be infinite.
    Box { lower: Vec<f64>, upper: Vec<f64> },
    /// `<normal, x> <= offset` with a nonzero normal.
    Halfspace { normal: Vec<f64>, offset: f64 },
    /// The whole space (no constraints).
    Whole,
}

/// Unvalidated serialized form.
#[derive(Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
enum SetDoc {
    Box { lower: Vec<f64>, upper: Vec<f64> },
    Halfspace { normal: Vec<f64>, offset: f64 },
    Whole,
}

impl TryFrom<SetDoc> for FeasibleSet {
    type Error = SetError;

    fn try_from(doc: SetDoc) -> Result<Self, SetError> {
        let set = match doc {
            SetDoc::Box { lower, upper } => FeasibleSet::Box { lower, upper },
            SetDoc::Halfspace { normal, offset } => FeasibleSet::Halfspace { normal, offset },
            SetDoc::Whole => FeasibleSet::Whole,
        };
        set.validate()?;
        Ok(set)
    }
}

impl From<FeasibleSet> for SetDoc {
    fn from(set: FeasibleSet) -> SetDoc {
        match set {
            FeasibleSet::Box { lower, upper } => SetDoc::Box { lower, upper },
            FeasibleSet::Halfspace { normal, offset } => SetDoc::Halfspace { normal, offset },
            FeasibleSet::Whole => SetDoc::Whole,
        }
    }
}

/// Result of an iterative projection: the point, the final
/// projected-gradient residual, and the iterations spent. Exact
/// (closed-form) paths report residual 0 and 0 iterations.
#[derive(Debug, Clone)]
pub struct Projection {
    pub point: Point,
    pub residual: f64,
    pub iterations: usize,
}

impl FeasibleSet {
    /// Construct a validated box.
    pub fn bounded_box(lower: Vec<f64>, upper: Vec<f64>) -> Result<Self, SetError> {
        let set = FeasibleSet::Box { lower, upper };
        set.validate()?;
        Ok(set)
    }

    /// Construct a validated halfspace `<normal, x> <= offset`.
    pub fn halfspace(normal: Vec<f64>, offset: f64) -> Result<Self, SetError> {
        let set = FeasibleSet::Halfspace { normal, offset };
        set.validate()?;
        Ok(set)
    }

    /// The 1-D interval `[lo, hi]`.
    pub fn interval(lo: f64, hi: f64) -> Result<Self, SetError> {
        Self::bounded_box(vec![lo], vec![hi])
    }

    /// Internal consistency (nonemptiness, finite data where required).
    pub fn validate(&self) -> Result<(), SetError> {
        match self {
            FeasibleSet::Box { lower, upper } => {
                if lower.len() != upper.len() {
                    return Err(SetError::RaggedBounds {
                        lower: lower.len(),
                        upper: upper.len(),
                    });
                }
                for (i, (&lo, &hi)) in lower.iter().zip(upper).enumerate() {
                    if lo.is_nan() || hi.is_nan() {
                        return Err(SetError::NanBound);
                    }
                    if lo > hi {
                        return Err(SetError::EmptyBox {
                            index: i,
                            lower: lo,
                            upper: hi,
                        });
                    }
                }
                Ok(())
            }
            FeasibleSet::Halfspace { normal, offset } => {
                if !normal.iter().all(|v| v.is_finite()) || normal.iter().all(|&v| v == 0.0) {
                    return Err(SetError::DegenerateNormal);
                }
                if !offset.is_finite() {
                    return Err(SetError::NonFiniteOffset);
                }
                Ok(())
            }
            FeasibleSet::Whole => Ok(()),
        }
    }

    /// Dimension pinned by the set's data; `None` when any dimension fits.
    pub fn dim(&self) -> Option<usize> {
        match self {
            FeasibleSet::Box { lower, .. } => Some(lower.len()),
            FeasibleSet::Halfspace { normal, .. } => Some(normal.len()),
            FeasibleSet::Whole => None,
        }
    }

    /// Validate the set against a particular space.
    pub fn validate_for(&self, space: &SpaceDescriptor) -> Result<(), SetError> {
        self.validate()?;
        match self.dim() {
            Some(d) if d != space.dim() => Err(SetError::DimensionMismatch {
                set_dim: d,
                space_dim: space.dim(),
            }),
            _ => Ok(()),
        }
    }

    /// Largest constraint violation at the given coordinates; 0 inside.
    pub fn violation(&self, coords: &[f64]) -> f64 {
        match self {
            FeasibleSet::Box { lower, upper } => coords
                .iter()
                .zip(lower.iter().zip(upper))
                .map(|(&v, (&lo, &hi))| (lo - v).max(v - hi).max(0.0))
                .fold(0.0, f64::max),
            FeasibleSet::Halfspace { normal, offset } => {
                (dot(normal, coords) - offset).max(0.0)
            }
            FeasibleSet::Whole => 0.0,
        }
    }

    /// Membership with slack: no constraint violated by more than `tol`.
    pub fn contains(&self, x: &Point, tol: f64) -> bool {
        self.violation(x.coords()) <= tol
    }

    /// View a 1-D set as an interval (possibly unbounded on either side).
    /// `Whole` is reported as the full line regardless of its ambient
    /// dimension; box and halfspace variants return `None` unless 1-D.
    pub fn as_interval(&self) -> Option<(f64, f64)> {
        match self {
            FeasibleSet::Box { lower, upper } if lower.len() == 1 => Some((lower[0], upper[0])),
            FeasibleSet::Halfspace { normal, offset } if normal.len() == 1 => {
                let bound = offset / normal[0];
                if normal[0] > 0.0 {
                    Some((f64::NEG_INFINITY, bound))
                } else {
                    Some((bound, f64::INFINITY))
                }
            }
            FeasibleSet::Whole => Some((f64::NEG_INFINITY, f64::INFINITY)),
            _ => None,
        }
    }

    /// Nearest point in euclidean distance. Only defined on euclidean
    /// spaces; boxes clamp coordinatewise, halfspaces drop the excess
    /// along the normal.
    pub fn metric_projection(&self, x: &Point) -> Result<Point, ProjectionError> {
        if !x.space().is_euclidean() {
            return Err(ProjectionError::NonEuclideanSpace);
        }
        let coords = self.euclidean_project_coords(x.coords());
        Ok(point_unchecked(x.space(), coords))
    }

    /// Minimizer of phi(., x) over the set, with default tolerance and
    /// iteration budget.
    pub fn generalized_projection(&self, x: &Point) -> Result<Point, ProjectionError> {
        self.generalized_projection_with(x, DEFAULT_PROJECTION_TOL, MAX_PROJECTION_ITERS)
            .map(|p| p.point)
    }

    /// Minimizer of phi(., x) over the set.
    ///
    /// Exact paths (point already inside; euclidean space; any 1-D
    /// interval, where the duality map is an increasing bijection and the
    /// minimizer is the clamp) return immediately with residual 0. The
    /// remaining case — l_p geometry in dimension >= 2 — runs projected
    /// gradient descent from the euclidean clamp of `x`, with a halving
    /// line search (sufficient decrease 1e-4) and stops when the euclidean
    /// norm of the projected gradient falls below `tol`.
    pub fn generalized_projection_with(
        &self,
        x: &Point,
        tol: f64,
        max_iters: usize,
    ) -> Result<Projection, ProjectionError> {
        let space = x.space();
        if self.violation(x.coords()) <= 0.0 {
            return Ok(Projection {
                point: x.clone(),
                residual: 0.0,
                iterations: 0,
            });
        }
        if space.is_euclidean() {
            return Ok(Projection {
                point: self.metric_projection(x)?,
                residual: 0.0,
                iterations: 0,
            });
        }
        if space.dim() == 1 {
            let (lo, hi) = self
                .as_interval()
                .expect("1-D sets always have an interval view");
            let clamped = x.coords()[0].clamp(lo, hi);
            return Ok(Projection {
                point: point_unchecked(space, vec![clamped]),
                residual: 0.0,
                iterations: 0,
            });
        }
        self.projected_gradient_descent(x, tol, max_iters)
    }

    /// Certify `z` as the generalized projection of `x`: the maximum of
    /// `<Jx - Jz, y - z>` over `samples` quasi-random feasible points y
    /// (plus box corners), clipped below at zero. The variational
    /// characterization of the projection says this is <= 0 at the true
    /// projection, so a small residual certifies `z`.
    pub fn projection_residual(
        &self,
        x: &Point,
        z: &Point,
        samples: usize,
    ) -> Result<f64, ProjectionError> {
        let tol = DEFAULT_GEOMETRY_TOL * (1.0 + z.norm());
        let violation = self.violation(z.coords());
        if violation > tol {
            return Err(ProjectionError::OutsideSet(violation));
        }
        let d = x.duality_map().sub(&z.duality_map());
        let mut worst = 0.0f64;
        for y in self.sample(x.space(), samples, 0) {
            worst = worst.max(pairing(&d, &y.sub(z)));
        }
        Ok(worst)
    }

    /// Deterministic quasi-random feasible points: box corners and center
    /// (where finite) followed by `n` Halton draws, mapped into the set.
    /// Unbounded directions are sampled from a fixed window; halfspace
    /// draws are made feasible by euclidean projection.
    pub fn sample(&self, space: &SpaceDescriptor, n: usize, seed: u64) -> Vec<Point> {
        let dim = space.dim();
        let mut out = Vec::with_capacity(n + (1 << dim.min(10)) + 1);
        match self {
            FeasibleSet::Box { lower, upper } => {
                let windowed: Vec<(f64, f64)> = lower
                    .iter()
                    .zip(upper)
                    .map(|(&lo, &hi)| {
                        (
                            lo.max(-SAMPLE_WINDOW).min(hi),
                            hi.min(SAMPLE_WINDOW).max(lo.max(-SAMPLE_WINDOW)),
                        )
                    })
                    .collect();
                if dim <= 10 {
                    for mask in 0..(1usize << dim) {
                        let corner: Vec<f64> = windowed
                            .iter()
                            .enumerate()
                            .map(|(i, &(lo, hi))| if mask >> i & 1 == 1 { hi } else { lo })
                            .collect();
                        out.push(point_unchecked(space, corner));
                    }
                }
                let center: Vec<f64> = windowed.iter().map(|&(lo, hi)| 0.5 * (lo + hi)).collect();
                out.push(point_unchecked(space, center));
                let mut sampler = HaltonSampler::new(dim, seed);
                for _ in 0..n {
                    out.push(point_unchecked(space, sampler.next_in(&windowed)));
                }
            }
            FeasibleSet::Halfspace { .. } => {
                let window = vec![(-SAMPLE_WINDOW, SAMPLE_WINDOW); dim];
                let mut sampler = HaltonSampler::new(dim, seed);
                out.push(point_unchecked(
                    space,
                    self.euclidean_project_coords(&vec![0.0; dim]),
                ));
                for _ in 0..n {
                    let raw = sampler.next_in(&window);
                    out.push(point_unchecked(space, self.euclidean_project_coords(&raw)));
                }
            }
            FeasibleSet::Whole => {
                let window = vec![(-SAMPLE_WINDOW, SAMPLE_WINDOW); dim];
                out.push(space.origin());
                let mut sampler = HaltonSampler::new(dim, seed);
                for _ in 0..n {
                    out.push(point_unchecked(space, sampler.next_in(&window)));
                }
            }
        }
        out
    }

    /// Coordinate-level euclidean projection, shared by the public metric
    /// projection and the inner loop of the iterative generalized
    /// projection (which needs it in any geometry).
    fn euclidean_project_coords(&self, coords: &[f64]) -> Vec<f64> {
        match self {
            FeasibleSet::Box { lower, upper } => coords
                .iter()
                .zip(lower.iter().zip(upper))
                .map(|(&v, (&lo, &hi))| v.clamp(lo, hi))
                .collect(),
            FeasibleSet::Halfspace { normal, offset } => {
                let excess = dot(normal, coords) - offset;
                if excess <= 0.0 {
                    coords.to_vec()
                } else {
                    let scale = excess / dot(normal, normal);
                    coords
                        .iter()
                        .zip(normal)
                        .map(|(&v, &n)| v - scale * n)
                        .collect()
                }
            }
            FeasibleSet::Whole => coords.to_vec(),
        }
    }

    fn projected_gradient_descent(
        &self,
        x: &Point,
        tol: f64,
        max_iters: usize,
    ) -> Result<Projection, ProjectionError> {
        let space = x.space();
        let p = space.p();
        let jx = x.duality_map();
        let jxc: Vec<f64> = jx.coords().to_vec();
        // Objective: ||y||_p^2 - 2 <Jx, y>  (phi(y, x) minus the constant ||x||^2).
        let objective = |y: &[f64]| -> f64 { lp_norm(y, p).powi(2) - 2.0 * dot(&jxc, y) };
        let gradient = |y: &[f64]| -> Vec<f64> {
            gauge_map(y, p)
                .iter()
                .zip(&jxc)
                .map(|(a, b)| 2.0 * (a - b))
                .collect()
        };
        let stepped = |y: &[f64], grad: &[f64], t: f64| -> Vec<f64> {
            self.euclidean_project_coords(
                &y.iter()
                    .zip(grad)
                    .map(|(v, g)| v - t * g)
                    .collect::<Vec<f64>>(),
            )
        };

        let mut y = self.euclidean_project_coords(x.coords());
        let mut f_y = objective(&y);
        let mut best = y.clone();
        let mut best_residual = f64::INFINITY;
        let mut iteration = 0;

        // Phase 1: projected gradient descent with a backtracking
        // (halving, sufficient-decrease 1e-4) line search. The objective
        // comparison loses meaning once true decreases fall below
        // floating-point resolution of the objective (residuals around
        // 1e-8), at which point we fall through to phase 2.
        'descent: while iteration < max_iters {
            iteration += 1;
            let grad = gradient(&y);
            let projected = stepped(&y, &grad, 1.0);
            let residual = euclidean_distance(&y, &projected);
            if residual < best_residual {
                best_residual = residual;
                best = y.clone();
            }
            if residual <= tol {
                return Ok(Projection {
                    point: point_unchecked(space, y),
                    residual,
                    iterations: iteration,
                });
            }
            let mut t = 1.0;
            loop {
                let candidate = if t == 1.0 {
                    projected.clone()
                } else {
                    stepped(&y, &grad, t)
                };
                let f_c = objective(&candidate);
                let decrease: f64 = candidate
                    .iter()
                    .zip(&y)
                    .zip(&grad)
                    .map(|((c, v), g)| (c - v) * g)
                    .sum();
                if f_c <= f_y + 1e-4 * decrease && decrease < 0.0 {
                    y = candidate;
                    f_y = f_c;
                    continue 'descent;
                }
                t *= 0.5;
                if t < 1e-12 {
                    break 'descent;
                }
            }
        }

        // Phase 2: fixed-step polish. Pure map iteration
        // y <- clamp(y - t grad) needs no objective differences, so it is
        // immune to the cancellation that stops phase 1; the step size is
        // halved whenever the fixed-point residual stops improving.
        let mut t = 0.25;
        let mut stall = 0;
        y = best.clone();
        while iteration < max_iters {
            iteration += 1;
            let grad = gradient(&y);
            let projected = stepped(&y, &grad, 1.0);
            let residual = euclidean_distance(&y, &projected);
            if residual <= tol {
                return Ok(Projection {
                    point: point_unchecked(space, y),
                    residual,
                    iterations: iteration,
                });
            }
            if residual < best_residual {
                best_residual = residual;
                best = y.clone();
                stall = 0;
            } else {
                stall += 1;
                if stall >= 30 {
                    stall = 0;
                    t *= 0.5;
                    if t < 1e-9 {
                        break;
                    }
                    y = best.clone();
                    continue;
                }
            }
            y = stepped(&y, &grad, t);
        }
        Err(ProjectionError::DidNotConverge {
            residual: best_residual,
            tol,
            iterations: iteration,
            best: point_unchecked(space, best),
        })
    }
}

fn euclidean_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Construct a point from coordinates already known to be valid for the
/// space (finite, right length).
fn point_unchecked(space: &SpaceDescriptor, coords: Vec<f64>) -> Point {
    space
        .point(coords)
        .expect("projection arithmetic produced invalid coordinates")
}
