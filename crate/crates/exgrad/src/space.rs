//! Ambient-space geometry: norms, duality mappings, and the Lyapunov
//! functional used in place of squared distance outside Hilbert space.
//!
//! Two geometries are supported:
//!
//! * `euclidean`: R^n with the inner-product norm. The duality mapping is
//!   the identity and everything reduces to familiar Hilbert-space algebra.
//! * `lp`: R^n under the l_p norm for 1 < p <= 2, which is smooth and
//!   2-uniformly convex. The duality mapping is the gradient of
//!   (1/2)||.||^2 and is no longer linear.
//!
//! Primal vectors ([`Point`]) and dual vectors ([`DualPoint`]) are distinct
//! types: in the l_p geometry they live in different normed spaces
//! (exponents p and q = p/(p-1)), so confusing them is a unit error rather
//! than a rounding error. The normalized duality mapping [`Point::duality_map`]
//! carries primal to dual; [`SpaceDescriptor::duality_map_inverse`] carries
//! dual back to primal and is its exact inverse.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Default relative tolerance for geometric predicates (membership tests,
/// identity verification, equality-with-slack checks).
pub const DEFAULT_GEOMETRY_TOL: f64 = 1e-9;

/// Errors from constructing spaces or points.
#[derive(Debug, Error, PartialEq)]
pub enum SpaceError {
    /// Spaces must have at least one coordinate.
    #[error("dimension must be at least 1")]
    ZeroDimension,
    /// Only exponents in (1, 2] give a smooth, 2-uniformly convex geometry
    /// with the convexity-constant machinery used here.
    #[error("l_p exponent must satisfy 1 < p <= 2, got {0}")]
    InvalidExponent(f64),
    /// The 2-uniform-convexity constant `c` must lie in (0, 1].
    #[error("convexity constant must lie in (0, 1], got {0}")]
    InvalidConvexityConstant(f64),
    /// A coordinate vector had the wrong length for its space.
    #[error("coordinate vector has length {got}, expected {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    /// Coordinates must be finite (no NaN or infinities).
    #[error("coordinates must be finite, got {0}")]
    NonFiniteCoordinate(f64),
}

/// Which norm the space carries.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SpaceKind {
    /// Inner-product norm; duality mapping is the identity.
    Euclidean,
    /// l_p norm with 1 < p <= 2.
    Lp { p: f64 },
}

/// A finite-dimensional smooth, 2-uniformly convex normed space.
///
/// Cheap to copy around; every [`Point`] carries one so that algebra on
/// points can check compatibility.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "SpaceDoc", into = "SpaceDoc")]
pub struct SpaceDescriptor {
    kind: SpaceKind,
    dim: usize,
    convexity: f64,
}

/// Serialized form: `{"kind":"euclidean","dim":1}` or
/// `{"kind":"lp","p":1.5,"dim":2,"c":0.707...}` with `c` optional.
#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum SpaceDoc {
    Euclidean {
        dim: usize,
    },
    Lp {
        dim: usize,
        p: f64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        c: Option<f64>,
    },
}

impl TryFrom<SpaceDoc> for SpaceDescriptor {
    type Error = SpaceError;

    fn try_from(doc: SpaceDoc) -> Result<Self, SpaceError> {
        match doc {
            SpaceDoc::Euclidean { dim } => SpaceDescriptor::euclidean(dim),
            SpaceDoc::Lp { dim, p, c } => match c {
                Some(c) => SpaceDescriptor::lp_with_constant(dim, p, c),
                None => SpaceDescriptor::lp(dim, p),
            },
        }
    }
}

impl From<SpaceDescriptor> for SpaceDoc {
    fn from(s: SpaceDescriptor) -> SpaceDoc {
        match s.kind {
            SpaceKind::Euclidean => SpaceDoc::Euclidean { dim: s.dim },
            SpaceKind::Lp { p } => SpaceDoc::Lp {
                dim: s.dim,
                p,
                c: Some(s.convexity),
            },
        }
    }
}

impl SpaceDescriptor {
    /// R^n with the euclidean norm. Convexity constant is 1.
    pub fn euclidean(dim: usize) -> Result<Self, SpaceError> {
        if dim == 0 {
            return Err(SpaceError::ZeroDimension);
        }
        Ok(SpaceDescriptor {
            kind: SpaceKind::Euclidean,
            dim,
            convexity: 1.0,
        })
    }

    /// R^n with the l_p norm, 1 < p <= 2. The 2-uniform-convexity constant
    /// defaults to sqrt(p - 1), the sharp value for these spaces.
    pub fn lp(dim: usize, p: f64) -> Result<Self, SpaceError> {
        Self::lp_with_constant(dim, p, (p - 1.0).sqrt())
    }

    /// Like [`SpaceDescriptor::lp`] but with an explicit convexity constant
    /// `c` in (0, 1]. Any 0 < c' <= c valid for the space is acceptable; a
    /// smaller `c` only tightens the step-size restriction downstream.
    pub fn lp_with_constant(dim: usize, p: f64, c: f64) -> Result<Self, SpaceError> {
        if dim == 0 {
            return Err(SpaceError::ZeroDimension);
        }
        if !p.is_finite() || p <= 1.0 || p > 2.0 {
            return Err(SpaceError::InvalidExponent(p));
        }
        if !c.is_finite() || c <= 0.0 || c > 1.0 {
            return Err(SpaceError::InvalidConvexityConstant(c));
        }
        Ok(SpaceDescriptor {
            kind: SpaceKind::Lp { p },
            dim,
            convexity: c,
        })
    }

    pub fn kind(&self) -> SpaceKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_euclidean(&self) -> bool {
        matches!(self.kind, SpaceKind::Euclidean)
    }

    /// Norm exponent: 2 for euclidean, p for l_p.
    pub fn p(&self) -> f64 {
        match self.kind {
            SpaceKind::Euclidean => 2.0,
            SpaceKind::Lp { p } => p,
        }
    }

    /// Conjugate exponent q = p / (p - 1); the dual space carries the l_q norm.
    pub fn q(&self) -> f64 {
        let p = self.p();
        p / (p - 1.0)
    }

    /// The 2-uniform-convexity constant `c`: the largest known constant with
    /// ||x - y|| <= (2 / c^2) ||Jx - Jy|| on this space.
    pub fn convexity_constant(&self) -> f64 {
        self.convexity
    }

    /// The zero vector of the space.
    pub fn origin(&self) -> Point {
        Point {
            space: self.clone(),
            coords: vec![0.0; self.dim],
        }
    }

    /// Construct a point, validating length and finiteness.
    pub fn point(&self, coords: impl Into<Vec<f64>>) -> Result<Point, SpaceError> {
        let coords = coords.into();
        self.check_coords(&coords)?;
        Ok(Point {
            space: self.clone(),
            coords,
        })
    }

    /// Construct a dual vector, validating length and finiteness.
    pub fn dual_point(&self, coords: impl Into<Vec<f64>>) -> Result<DualPoint, SpaceError> {
        let coords = coords.into();
        self.check_coords(&coords)?;
        Ok(DualPoint {
            space: self.clone(),
            coords,
        })
    }

    /// The zero vector of the dual space.
    pub fn zero_dual(&self) -> DualPoint {
        DualPoint {
            space: self.clone(),
            coords: vec![0.0; self.dim],
        }
    }

    fn check_coords(&self, coords: &[f64]) -> Result<(), SpaceError> {
        if coords.len() != self.dim {
            return Err(SpaceError::DimensionMismatch {
                expected: self.dim,
                got: coords.len(),
            });
        }
        if let Some(&bad) = coords.iter().find(|v| !v.is_finite()) {
            return Err(SpaceError::NonFiniteCoordinate(bad));
        }
        Ok(())
    }

    /// Inverse duality mapping J^{-1}: dual space back to primal. Identity in
    /// the euclidean case; the duality mapping of the l_q dual space otherwise.
    pub fn duality_map_inverse(&self, xs: &DualPoint) -> Point {
        assert_eq!(
            &xs.space, self,
            "dual point belongs to a different space than the one mapping it"
        );
        let coords = match self.kind {
            SpaceKind::Euclidean => xs.coords.clone(),
            SpaceKind::Lp { .. } => gauge_map(&xs.coords, self.q()),
        };
        Point {
            space: self.clone(),
            coords,
        }
    }
}

/// The coordinate form shared by J and J^{-1}: for exponent s, maps v to
/// ||v||_s^{2-s} * sign(v_i) |v_i|^{s-1}, with 0 at the origin. In one
/// dimension this is the identity for every exponent, and is computed as
/// such so 1-D geometry is exact.
pub(crate) fn gauge_map(coords: &[f64], s: f64) -> Vec<f64> {
    if coords.len() == 1 {
        return vec![coords[0]];
    }
    let norm = lp_norm(coords, s);
    if norm == 0.0 {
        return vec![0.0; coords.len()];
    }
    let scale = norm.powf(2.0 - s);
    coords
        .iter()
        .map(|&v| {
            if v == 0.0 {
                0.0
            } else {
                scale * v.signum() * v.abs().powf(s - 1.0)
            }
        })
        .collect()
}

pub(crate) fn lp_norm(coords: &[f64], s: f64) -> f64 {
    if coords.len() == 1 {
        return coords[0].abs();
    }
    coords
        .iter()
        .map(|v| v.abs().powf(s))
        .sum::<f64>()
        .powf(1.0 / s)
}

fn euclidean_norm_squared(coords: &[f64]) -> f64 {
    coords.iter().map(|v| v * v).sum()
}

/// A vector in the primal space.
#[derive(Debug, Clone, PartialEq)]
pub struct Point {
    space: SpaceDescriptor,
    coords: Vec<f64>,
}

impl Point {
    pub fn space(&self) -> &SpaceDescriptor {
        &self.space
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    /// Norm in the space's own geometry.
    pub fn norm(&self) -> f64 {
        match self.space.kind {
            SpaceKind::Euclidean => euclidean_norm_squared(&self.coords).sqrt(),
            SpaceKind::Lp { p } => lp_norm(&self.coords, p),
        }
    }

    /// ||x||^2, computed without the sqrt/square round trip in the
    /// euclidean case.
    pub fn norm_squared(&self) -> f64 {
        match self.space.kind {
            SpaceKind::Euclidean => euclidean_norm_squared(&self.coords),
            SpaceKind::Lp { p } => lp_norm(&self.coords, p).powi(2),
        }
    }

    /// Normalized duality mapping J: the (sub)gradient of (1/2)||.||^2.
    /// Identity on euclidean space; J(0) = 0 always.
    pub fn duality_map(&self) -> DualPoint {
        let coords = match self.space.kind {
            SpaceKind::Euclidean => self.coords.clone(),
            SpaceKind::Lp { p } => gauge_map(&self.coords, p),
        };
        DualPoint {
            space: self.space.clone(),
            coords,
        }
    }

    /// Coordinate-wise scaling t * x.
    pub fn scale(&self, t: f64) -> Point {
        Point {
            space: self.space.clone(),
            coords: self.coords.iter().map(|v| t * v).collect(),
        }
    }

    /// x - y in the primal space. Panics if the spaces differ.
    pub fn sub(&self, other: &Point) -> Point {
        assert_same_space(&self.space, &other.space);
        Point {
            space: self.space.clone(),
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    /// ||x - y|| without materializing the difference.
    pub fn distance(&self, other: &Point) -> f64 {
        self.sub(other).norm()
    }
}

/// A vector in the dual space (the image side of the duality mapping).
#[derive(Debug, Clone, PartialEq)]
pub struct DualPoint {
    space: SpaceDescriptor,
    coords: Vec<f64>,
}

impl DualPoint {
    pub fn space(&self) -> &SpaceDescriptor {
        &self.space
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    /// Norm in the dual geometry (l_q for an l_p primal space).
    pub fn dual_norm(&self) -> f64 {
        match self.space.kind {
            SpaceKind::Euclidean => euclidean_norm_squared(&self.coords).sqrt(),
            SpaceKind::Lp { .. } => lp_norm(&self.coords, self.space.q()),
        }
    }

    /// ||x*||^2 in the dual geometry, avoiding the sqrt/square round trip in
    /// the euclidean case. For euclidean spaces this uses the same summation
    /// as [`pairing`], so ratios of the two are exact.
    pub fn dual_norm_squared(&self) -> f64 {
        match self.space.kind {
            SpaceKind::Euclidean => euclidean_norm_squared(&self.coords),
            SpaceKind::Lp { .. } => lp_norm(&self.coords, self.space.q()).powi(2),
        }
    }

    /// x* - y* in the dual space. Panics if the spaces differ.
    pub fn sub(&self, other: &DualPoint) -> DualPoint {
        assert_same_space(&self.space, &other.space);
        DualPoint {
            space: self.space.clone(),
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    /// Coordinate-wise scaling t * x*.
    pub fn scale(&self, t: f64) -> DualPoint {
        DualPoint {
            space: self.space.clone(),
            coords: self.coords.iter().map(|v| t * v).collect(),
        }
    }
}

fn assert_same_space(a: &SpaceDescriptor, b: &SpaceDescriptor) {
    assert_eq!(a, b, "operands belong to different spaces");
}

/// Duality pairing <x, x*> between a primal and a dual vector.
pub fn pairing(xs: &DualPoint, x: &Point) -> f64 {
    assert_same_space(&xs.space, &x.space);
    xs.coords.iter().zip(&x.coords).map(|(a, b)| a * b).sum()
}

/// Weighted sum of dual vectors: sum_i t_i * v_i. Panics on an empty list or
/// mismatched spaces. Terms are folded left to right per coordinate, so the
/// result is deterministic.
pub fn dual_combination(terms: &[(f64, &DualPoint)]) -> DualPoint {
    let (_, first) = terms
        .first()
        .expect("dual_combination needs at least one term");
    let space = first.space.clone();
    let mut coords = vec![0.0; space.dim()];
    for (t, v) in terms {
        assert_same_space(&space, &v.space);
        for (acc, &c) in coords.iter_mut().zip(&v.coords) {
            *acc += t * c;
        }
    }
    DualPoint { space, coords }
}

/// The Lyapunov functional phi(x, y) = ||x||^2 - 2 <x, Jy> + ||y||^2.
///
/// Always nonnegative, zero iff x = y; the algorithm's surrogate for squared
/// distance. In the euclidean case it *is* ||x - y||^2 and is computed as
/// such (the two expressions agree exactly in real arithmetic; the
/// difference form is the numerically stable one).
pub fn lyapunov(x: &Point, y: &Point) -> f64 {
    assert_same_space(&x.space, &y.space);
    match x.space.kind {
        SpaceKind::Euclidean => euclidean_norm_squared(&x.sub(y).coords),
        SpaceKind::Lp { .. } => {
            x.norm_squared() - 2.0 * pairing(&y.duality_map(), x) + y.norm_squared()
        }
    }
}

/// V(x, x*) = ||x||^2 - 2 <x, x*> + ||x*||^2: the Lyapunov functional with
/// the second argument already in dual coordinates, so
/// V(x, x*) = phi(x, J^{-1} x*).
pub fn v_functional(x: &Point, xs: &DualPoint) -> f64 {
    assert_same_space(&x.space, &xs.space);
    x.norm_squared() - 2.0 * pairing(xs, x) + xs.dual_norm_squared()
}
