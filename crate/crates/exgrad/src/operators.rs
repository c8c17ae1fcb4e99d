//! Monotone operators (the A in the variational inequality) and fixed-point
//! mappings (the T and S whose fixed points the iteration preserves), plus
//! sampled checkers for the hypotheses the convergence theorem places on
//! them: inverse strong monotonicity, relative nonexpansiveness, and the
//! norm-domination condition linking A to its solution set.
//!
//! The checkers are deliberately sampled verifications, not proofs: they
//! evaluate the defining inequalities on deterministic quasi-random points
//! and report the worst case with a witness. Structural validation (shapes,
//! finiteness, space kinds) happens eagerly; semantic properties
//! (monotonicity, spectral bounds, |t| <= 1) are left to the checkers so
//! that deliberately broken inputs can still be loaded and diagnosed.

use crate::sets::FeasibleSet;
use crate::space::{pairing, DualPoint, Point, SpaceDescriptor, DEFAULT_GEOMETRY_TOL};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Errors from structural validation of operators and maps.
#[derive(Debug, Error, PartialEq)]
pub enum OperatorError {
    #[error("the {0} operator requires a euclidean space")]
    RequiresEuclidean(&'static str),
    #[error("the {0} operator requires a 1-dimensional space")]
    RequiresDimOne(&'static str),
    #[error("linear operator matrix must be {dim}x{dim} to act on this space")]
    MatrixShape { dim: usize },
    #[error("linear operator matrix must be symmetric; entries ({i},{j}) and ({j},{i}) differ by {delta:.3e}")]
    NotSymmetric { i: usize, j: usize, delta: f64 },
    #[error("operator coefficients must be finite")]
    NonFiniteCoefficient,
    #[error("declared alpha must be positive, got {0}")]
    BadDeclaredAlpha(f64),
}

/// An operator A: E -> E* with a declared inverse-strong-monotonicity
/// constant. The declared constant is an input assumption; use
/// [`estimate_alpha`] to test it against samples.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum MonotoneOperator {
    /// A x = x (euclidean only, where E* is identified with E); alpha = 1.
    Identity,
    /// A x = 0; every inverse-strong-monotonicity constant holds vacuously.
    Zero,
    /// A x = M x for symmetric M (euclidean only); alpha = 1 / lambda_max.
    /// A declared `alpha` overrides the spectral estimate.
    Linear {
        matrix: Vec<Vec<f64>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        alpha: Option<f64>,
    },
    /// A x = m x + q in one dimension.
    ScalarAffine { m: f64, q: f64 },
}

impl MonotoneOperator {
    /// Structural validation against a space: shapes, finiteness, and the
    /// euclidean-only restriction for operators whose formulas identify E
    /// with its dual. Semantic properties (positive semidefiniteness,
    /// m >= 0) are the checkers' business.
    pub fn validate_for(&self, space: &SpaceDescriptor) -> Result<(), OperatorError> {
        match self {
            MonotoneOperator::Identity => {
                if !space.is_euclidean() {
                    return Err(OperatorError::RequiresEuclidean("identity"));
                }
                Ok(())
            }
            MonotoneOperator::Zero => Ok(()),
            MonotoneOperator::Linear { matrix, alpha } => {
                if !space.is_euclidean() {
                    return Err(OperatorError::RequiresEuclidean("linear"));
                }
                let dim = space.dim();
                if matrix.len() != dim || matrix.iter().any(|row| row.len() != dim) {
                    return Err(OperatorError::MatrixShape { dim });
                }
                if matrix.iter().flatten().any(|v| !v.is_finite()) {
                    return Err(OperatorError::NonFiniteCoefficient);
                }
                let scale = matrix
                    .iter()
                    .flatten()
                    .fold(0.0f64, |acc, v| acc.max(v.abs()));
                for i in 0..dim {
                    for j in (i + 1)..dim {
                        let delta = (matrix[i][j] - matrix[j][i]).abs();
                        if delta > 1e-12 * (1.0 + scale) {
                            return Err(OperatorError::NotSymmetric { i, j, delta });
                        }
                    }
                }
                if let Some(a) = alpha {
                    if !a.is_finite() || *a <= 0.0 {
                        return Err(OperatorError::BadDeclaredAlpha(*a));
                    }
                }
                Ok(())
            }
            MonotoneOperator::ScalarAffine { m, q } => {
                if !space.is_euclidean() {
                    return Err(OperatorError::RequiresEuclidean("scalar_affine"));
                }
                if space.dim() != 1 {
                    return Err(OperatorError::RequiresDimOne("scalar_affine"));
                }
                if !m.is_finite() || !q.is_finite() {
                    return Err(OperatorError::NonFiniteCoefficient);
                }
                Ok(())
            }
        }
    }

    /// Evaluate A x as a dual vector.
    ///
    /// # Panics
    /// If the operator's shape does not match the point's dimension.
    pub fn apply(&self, x: &Point) -> DualPoint {
        let space = x.space();
        let coords = match self {
            MonotoneOperator::Identity => x.coords().to_vec(),
            MonotoneOperator::Zero => vec![0.0; space.dim()],
            MonotoneOperator::Linear { matrix, .. } => {
                assert_eq!(matrix.len(), space.dim(), "matrix does not fit this space");
                matrix
                    .iter()
                    .map(|row| row.iter().zip(x.coords()).map(|(a, b)| a * b).sum())
                    .collect()
            }
            MonotoneOperator::ScalarAffine { m, q } => {
                assert_eq!(space.dim(), 1, "scalar_affine acts on one dimension");
                vec![m * x.coords()[0] + q]
            }
        };
        space
            .dual_point(coords)
            .expect("operator evaluation produced invalid coordinates")
    }

    /// The inverse-strong-monotonicity constant this operator claims:
    /// 1 for the identity, infinite for constants (the condition is
    /// vacuous), and 1 / lambda_max for symmetric matrices unless the
    /// problem declares a value. Returns +infinity when no finite claim
    /// makes sense (e.g. nonpositive slope, zero matrix); the sampled
    /// checker is responsible for exposing operators that are not in fact
    /// inverse strongly monotone.
    pub fn declared_alpha(&self) -> f64 {
        match self {
            MonotoneOperator::Identity => 1.0,
            MonotoneOperator::Zero => f64::INFINITY,
            MonotoneOperator::Linear { matrix, alpha } => match alpha {
                Some(a) => *a,
                None => {
                    let top = lambda_max(matrix);
                    if top > 0.0 {
                        1.0 / top
                    } else {
                        f64::INFINITY
                    }
                }
            },
            MonotoneOperator::ScalarAffine { m, .. } => {
                if *m > 0.0 {
                    1.0 / m
                } else {
                    f64::INFINITY
                }
            }
        }
    }

    /// View as the 1-D affine action u -> m u + q, when the operator has
    /// one. Enables closed-form resolvents.
    pub(crate) fn as_scalar_affine(&self) -> Option<(f64, f64)> {
        match self {
            MonotoneOperator::Identity => Some((1.0, 0.0)),
            MonotoneOperator::Zero => Some((0.0, 0.0)),
            MonotoneOperator::Linear { matrix, .. } if matrix.len() == 1 => {
                Some((matrix[0][0], 0.0))
            }
            MonotoneOperator::ScalarAffine { m, q } => Some((*m, *q)),
            _ => None,
        }
    }
}

/// Largest eigenvalue of a symmetric matrix, by power iteration on a
/// Gershgorin-shifted copy (which is positive semidefinite, so its
/// dominant eigenvalue is lambda_max + shift).
fn lambda_max(matrix: &[Vec<f64>]) -> f64 {
    let n = matrix.len();
    if n == 0 {
        return 0.0;
    }
    let shift = matrix
        .iter()
        .map(|row| row.iter().map(|v| v.abs()).sum::<f64>())
        .fold(0.0f64, f64::max);
    if shift == 0.0 {
        return 0.0;
    }
    // Slightly asymmetric start so no eigenvector of a small symmetric
    // matrix is exactly orthogonal to it.
    let mut v: Vec<f64> = (0..n).map(|i| 1.0 + 0.01 * i as f64).collect();
    for _ in 0..500 {
        let mut w: Vec<f64> = matrix
            .iter()
            .map(|row| row.iter().zip(&v).map(|(a, b)| a * b).sum::<f64>())
            .collect();
        for (wi, vi) in w.iter_mut().zip(&v) {
            *wi += shift * vi;
        }
        let norm = w.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm == 0.0 {
            return 0.0;
        }
        for wi in w.iter_mut() {
            *wi /= norm;
        }
        v = w;
    }
    // Rayleigh quotient on the original matrix.
    let mv: Vec<f64> = matrix
        .iter()
        .map(|row| row.iter().zip(&v).map(|(a, b)| a * b).sum::<f64>())
        .collect();
    let num: f64 = mv.iter().zip(&v).map(|(a, b)| a * b).sum();
    let den: f64 = v.iter().map(|x| x * x).sum();
    num / den
}

/// A mapping T: C -> C whose fixed points the iteration is meant to
/// preserve.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum FixedPointMap {
    /// T x = x: fixes everything.
    Identity,
    /// T x = t x: fixes the origin. Relatively nonexpansive when |t| <= 1;
    /// values outside that range are accepted structurally so the checker
    /// can exhibit the violation.
    Scaling { t: f64 },
}

impl FixedPointMap {
    pub fn validate(&self) -> Result<(), OperatorError> {
        match self {
            FixedPointMap::Identity => Ok(()),
            FixedPointMap::Scaling { t } => {
                if t.is_finite() {
                    Ok(())
                } else {
                    Err(OperatorError::NonFiniteCoefficient)
                }
            }
        }
    }

    /// Evaluate T x.
    pub fn apply(&self, x: &Point) -> Point {
        match self {
            FixedPointMap::Identity => x.clone(),
            FixedPointMap::Scaling { t } => x.scale(*t),
        }
    }

    /// Representative declared fixed points: the origin always qualifies
    /// for both supported maps (scaling fixes only the origin; the
    /// identity fixes everything).
    pub fn known_fixed_points(&self, space: &SpaceDescriptor) -> Vec<Point> {
        vec![space.origin()]
    }
}

/// Outcome of the sampled inverse-strong-monotonicity estimate.
#[derive(Debug, Clone)]
pub struct AlphaEstimate {
    /// The constant the operator claims.
    pub declared: f64,
    /// Empirical infimum of `<Ax-Ay, x-y> / ||Ax-Ay||^2` over sampled
    /// pairs; an upper bound on the true constant. +infinity when every
    /// sampled pair had Ax = Ay (constant operator).
    pub estimate: f64,
    /// Smallest sampled monotonicity product `<Ax-Ay, x-y>`; negative
    /// values witness a failure of plain monotonicity.
    pub min_monotonicity: f64,
    /// True when the declared constant exceeds the sampled estimate
    /// beyond tolerance — the declaration is then unsupportable.
    pub declared_inconsistent: bool,
    /// Pair achieving the estimate (or the monotonicity violation).
    pub witness: Option<(Point, Point)>,
}

/// Sample pairs from the set and estimate the inverse-strong-monotonicity
/// constant of A as the worst ratio `<Ax-Ay, x-y> / ||Ax-Ay||^2`.
/// Axis-aligned pairs through the box center are included so symmetric
/// matrices are probed along their eigendirections.
pub fn estimate_alpha(
    operator: &MonotoneOperator,
    set: &FeasibleSet,
    space: &SpaceDescriptor,
    samples: usize,
    seed: u64,
) -> AlphaEstimate {
    let declared = operator.declared_alpha();
    let points = set.sample(space, samples.max(2), seed);
    let mut pairs: Vec<(Point, Point)> = points
        .chunks_exact(2)
        .map(|c| (c[0].clone(), c[1].clone()))
        .collect();
    pairs.extend(axis_pairs(set, space));

    let mut estimate = f64::INFINITY;
    let mut min_monotonicity = f64::INFINITY;
    let mut witness = None;
    for (x, y) in pairs {
        let d_primal = x.sub(&y);
        let d_dual = operator.apply(&x).sub(&operator.apply(&y));
        let denom = d_dual.dual_norm_squared();
        if denom <= 0.0 {
            continue;
        }
        let num = pairing(&d_dual, &d_primal);
        min_monotonicity = min_monotonicity.min(num);
        let ratio = num / denom;
        if ratio < estimate {
            estimate = ratio;
            witness = Some((x, y));
        }
    }
    if min_monotonicity == f64::INFINITY {
        // No pair separated the operator values: constant operator.
        min_monotonicity = 0.0;
    }
    let declared_inconsistent = declared.is_finite()
        && estimate.is_finite()
        && declared > estimate + DEFAULT_GEOMETRY_TOL * (1.0 + estimate.abs());
    AlphaEstimate {
        declared,
        estimate,
        min_monotonicity,
        declared_inconsistent,
        witness,
    }
}

/// Pairs differing along one coordinate axis, placed through the center of
/// a finite box. Empty for unbounded sets.
fn axis_pairs(set: &FeasibleSet, space: &SpaceDescriptor) -> Vec<(Point, Point)> {
    let FeasibleSet::Box { lower, upper } = set else {
        return Vec::new();
    };
    if lower.iter().chain(upper).any(|v| !v.is_finite()) {
        return Vec::new();
    }
    let center: Vec<f64> = lower
        .iter()
        .zip(upper)
        .map(|(&lo, &hi)| 0.5 * (lo + hi))
        .collect();
    (0..lower.len())
        .filter(|&i| upper[i] > lower[i])
        .map(|i| {
            let mut a = center.clone();
            let mut b = center.clone();
            a[i] = lower[i];
            b[i] = upper[i];
            (
                space.point(a).expect("axis pair inside the box"),
                space.point(b).expect("axis pair inside the box"),
            )
        })
        .collect()
}

/// Outcome of the sampled relative-nonexpansiveness check.
#[derive(Debug, Clone)]
pub struct RelativeNonexpansivenessReport {
    /// Declared fixed points that the map actually moves, with the
    /// distance moved.
    pub broken_fixed_points: Vec<(Point, f64)>,
    /// Largest sampled value of `phi(p, Tx) - phi(p, x)` (positive means
    /// the defining inequality failed).
    pub max_excess: f64,
    /// (p, x) achieving the largest excess.
    pub witness: Option<(Point, Point)>,
    /// Whole-check verdict.
    pub passed: bool,
}

/// Check the testable half of relative nonexpansiveness: every declared
/// fixed point is actually fixed, and `phi(p, Tx) <= phi(p, x)` for
/// sampled x in the set. (The asymptotic-fixed-point half is a limit
/// statement and is treated as an assumption on the input data.)
pub fn check_relatively_nonexpansive(
    map: &FixedPointMap,
    set: &FeasibleSet,
    space: &SpaceDescriptor,
    samples: usize,
    seed: u64,
) -> RelativeNonexpansivenessReport {
    use crate::space::lyapunov;

    let fixed_points = map.known_fixed_points(space);
    let mut broken = Vec::new();
    for p in &fixed_points {
        let moved = map.apply(p).distance(p);
        if moved > DEFAULT_GEOMETRY_TOL * (1.0 + p.norm()) {
            broken.push((p.clone(), moved));
        }
    }

    let mut max_excess = f64::NEG_INFINITY;
    let mut witness = None;
    let mut inequality_ok = true;
    for x in set.sample(space, samples, seed) {
        let tx = map.apply(&x);
        for p in &fixed_points {
            let phi_x = lyapunov(p, &x);
            let excess = lyapunov(p, &tx) - phi_x;
            if excess > max_excess {
                max_excess = excess;
                witness = Some((p.clone(), x.clone()));
            }
            if excess > DEFAULT_GEOMETRY_TOL * (1.0 + phi_x) {
                inequality_ok = false;
            }
        }
    }
    if max_excess == f64::NEG_INFINITY {
        max_excess = 0.0;
    }
    let passed = broken.is_empty() && inequality_ok;
    RelativeNonexpansivenessReport {
        broken_fixed_points: broken,
        max_excess,
        witness,
        passed,
    }
}

/// Outcome of the norm-domination check.
#[derive(Debug, Clone)]
pub struct NormDominationReport {
    /// Largest sampled value of `||Ax|| - ||Ax - A(solution)||` (positive
    /// beyond tolerance means the hypothesis fails at that x).
    pub max_excess: f64,
    pub witness: Option<Point>,
    pub passed: bool,
}

/// Check the hypothesis `||Ax|| <= ||Ax - A(solution)||` for sampled
/// x in the set, with `solution` a known solution.
pub fn check_norm_domination(
    operator: &MonotoneOperator,
    solution: &Point,
    set: &FeasibleSet,
    space: &SpaceDescriptor,
    samples: usize,
    seed: u64,
) -> NormDominationReport {
    let a_sol = operator.apply(solution);
    let mut max_excess = f64::NEG_INFINITY;
    let mut witness = None;
    let mut passed = true;
    for x in set.sample(space, samples, seed) {
        let ax = operator.apply(&x);
        let lhs = ax.dual_norm();
        let rhs = ax.sub(&a_sol).dual_norm();
        let excess = lhs - rhs;
        if excess > max_excess {
            max_excess = excess;
            witness = Some(x.clone());
        }
        if excess > DEFAULT_GEOMETRY_TOL * (1.0 + rhs) {
            passed = false;
        }
    }
    if max_excess == f64::NEG_INFINITY {
        max_excess = 0.0;
    }
    NormDominationReport {
        max_excess,
        witness,
        passed,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn euclid(dim: usize) -> SpaceDescriptor {
        SpaceDescriptor::euclidean(dim).unwrap()
    }

    fn pt(space: &SpaceDescriptor, coords: &[f64]) -> Point {
        space.point(coords.to_vec()).unwrap()
    }

    fn interval() -> FeasibleSet {
        FeasibleSet::interval(-4.0, 4.0).unwrap()
    }

    #[test]
    fn apply_examples() {
        let s = euclid(1);
        assert_eq!(
            MonotoneOperator::Identity.apply(&pt(&s, &[3.5])).coords(),
            &[3.5]
        );
        assert_eq!(MonotoneOperator::Zero.apply(&pt(&s, &[2.0])).coords(), &[0.0]);
        let affine = MonotoneOperator::ScalarAffine { m: 1.0, q: 1.0 };
        assert_eq!(affine.apply(&pt(&s, &[-1.0])).coords(), &[0.0]);

        let s2 = euclid(2);
        let linear = MonotoneOperator::Linear {
            matrix: vec![vec![1.0, 0.0], vec![0.0, 2.0]],
            alpha: None,
        };
        assert_eq!(linear.apply(&pt(&s2, &[3.0, -1.0])).coords(), &[3.0, -2.0]);

        let scale = FixedPointMap::Scaling { t: 2.0 / 9.0 };
        assert_relative_eq!(
            scale.apply(&pt(&s, &[-4.0])).coords()[0],
            -8.0 / 9.0,
            epsilon = 1e-15
        );
    }

    #[test]
    fn alpha_estimate_for_identity_is_exactly_one() {
        let s = euclid(1);
        let est = estimate_alpha(&MonotoneOperator::Identity, &interval(), &s, 200, 42);
        assert_eq!(est.declared, 1.0);
        assert_eq!(est.estimate, 1.0, "identity ratio must be exact");
        assert!(!est.declared_inconsistent);
        assert!(est.min_monotonicity >= 0.0);
    }

    #[test]
    fn alpha_estimate_for_diagonal_matrix_hits_top_eigenvalue() {
        let s = euclid(2);
        let set = FeasibleSet::bounded_box(vec![-1.0, -1.0], vec![1.0, 1.0]).unwrap();
        let op = MonotoneOperator::Linear {
            matrix: vec![vec![1.0, 0.0], vec![0.0, 2.0]],
            alpha: None,
        };
        assert_eq!(op.declared_alpha(), 0.5);
        let est = estimate_alpha(&op, &set, &s, 200, 42);
        assert_eq!(est.estimate, 0.5, "axis pair along e2 gives the exact ratio");
        assert!(!est.declared_inconsistent);

        // An overclaimed constant is flagged.
        let overclaimed = MonotoneOperator::Linear {
            matrix: vec![vec![1.0, 0.0], vec![0.0, 2.0]],
            alpha: Some(1.0),
        };
        let est = estimate_alpha(&overclaimed, &set, &s, 200, 42);
        assert!(est.declared_inconsistent);
        assert!(est.witness.is_some());
    }

    #[test]
    fn alpha_estimate_constant_operator_returns_infinity_marker() {
        let s = euclid(1);
        let est = estimate_alpha(&MonotoneOperator::Zero, &interval(), &s, 50, 42);
        assert!(est.estimate.is_infinite());
        assert!(!est.declared_inconsistent);
    }

    #[test]
    fn negative_slope_breaks_monotonicity_with_witness() {
        let s = euclid(1);
        let op = MonotoneOperator::ScalarAffine { m: -1.0, q: 0.0 };
        let est = estimate_alpha(&op, &interval(), &s, 100, 42);
        assert!(est.min_monotonicity < 0.0);
        let (x, y) = est.witness.expect("violating pair recorded");
        let num = pairing(&op.apply(&x).sub(&op.apply(&y)), &x.sub(&y));
        assert!(num < 0.0);
    }

    #[test]
    fn relative_nonexpansiveness_examples() {
        let s = euclid(1);
        let set = interval();
        let ok = check_relatively_nonexpansive(
            &FixedPointMap::Scaling { t: 2.0 / 9.0 },
            &set,
            &s,
            200,
            42,
        );
        assert!(ok.passed, "scaling by 2/9 should pass: {ok:?}");

        let identity = check_relatively_nonexpansive(&FixedPointMap::Identity, &set, &s, 200, 42);
        assert!(identity.passed);
        assert!(identity.max_excess.abs() <= 1e-12, "identity gives equality");

        let bad = check_relatively_nonexpansive(
            &FixedPointMap::Scaling { t: 1.5 },
            &set,
            &s,
            200,
            42,
        );
        assert!(!bad.passed);
        let (p, x) = bad.witness.expect("witness for expansion");
        assert_eq!(p.coords(), &[0.0]);
        assert!(x.coords()[0] != 0.0);
        assert!(bad.max_excess > 0.0);
    }

    #[test]
    fn norm_domination_examples() {
        let s = euclid(1);
        let set = interval();
        let zero = s.origin();
        let id = check_norm_domination(&MonotoneOperator::Identity, &zero, &set, &s, 200, 42);
        assert!(id.passed);
        assert!(id.max_excess.abs() <= 1e-12, "identity case is equality");

        let z = check_norm_domination(&MonotoneOperator::Zero, &zero, &set, &s, 50, 42);
        assert!(z.passed);

        let affine = MonotoneOperator::ScalarAffine { m: 1.0, q: 1.0 };
        let sol = pt(&s, &[-1.0]);
        let a = check_norm_domination(&affine, &sol, &set, &s, 200, 42);
        assert!(a.passed, "A(-1) = 0 makes the condition an equality");
    }

    #[test]
    fn validation_rules() {
        let lp = SpaceDescriptor::lp(2, 1.5).unwrap();
        assert_eq!(
            MonotoneOperator::Identity.validate_for(&lp),
            Err(OperatorError::RequiresEuclidean("identity"))
        );
        assert!(MonotoneOperator::Zero.validate_for(&lp).is_ok());

        let s2 = euclid(2);
        let ragged = MonotoneOperator::Linear {
            matrix: vec![vec![1.0, 0.0]],
            alpha: None,
        };
        assert!(matches!(
            ragged.validate_for(&s2),
            Err(OperatorError::MatrixShape { .. })
        ));
        let asym = MonotoneOperator::Linear {
            matrix: vec![vec![1.0, 0.5], vec![0.0, 1.0]],
            alpha: None,
        };
        assert!(matches!(
            asym.validate_for(&s2),
            Err(OperatorError::NotSymmetric { .. })
        ));
        let affine = MonotoneOperator::ScalarAffine { m: 1.0, q: 0.0 };
        assert!(matches!(
            affine.validate_for(&s2),
            Err(OperatorError::RequiresDimOne(_))
        ));
        assert!(affine.validate_for(&euclid(1)).is_ok());
    }

    #[test]
    fn lambda_max_handles_non_diagonal_and_sign_structure() {
        // Eigenvalues 3 and 1.
        assert_relative_eq!(
            lambda_max(&[vec![2.0, 1.0], vec![1.0, 2.0]]),
            3.0,
            epsilon = 1e-9
        );
        // Eigenvalues 1 and -1, dominant eigenvector orthogonal to (1,1).
        assert_relative_eq!(
            lambda_max(&[vec![0.0, -1.0], vec![-1.0, 0.0]]),
            1.0,
            epsilon = 1e-9
        );
        assert_eq!(lambda_max(&[vec![0.0]]), 0.0);
    }

    #[test]
    fn serialization_round_trips() {
        let ops = [
            (MonotoneOperator::Identity, r#"{"type":"identity"}"#),
            (MonotoneOperator::Zero, r#"{"type":"zero"}"#),
            (
                MonotoneOperator::Linear {
                    matrix: vec![vec![1.0, 0.0], vec![0.0, 2.0]],
                    alpha: None,
                },
                r#"{"type":"linear","matrix":[[1.0,0.0],[0.0,2.0]]}"#,
            ),
            (
                MonotoneOperator::ScalarAffine { m: 1.0, q: 0.0 },
                r#"{"type":"scalar_affine","m":1.0,"q":0.0}"#,
            ),
        ];
        for (op, json) in ops {
            assert_eq!(serde_json::to_string(&op).unwrap(), json);
            assert_eq!(serde_json::from_str::<MonotoneOperator>(json).unwrap(), op);
        }
        let maps = [
            (FixedPointMap::Identity, r#"{"type":"identity"}"#),
            (
                FixedPointMap::Scaling { t: 0.2222222222222222 },
                r#"{"type":"scaling","t":0.2222222222222222}"#,
            ),
        ];
        for (map, json) in maps {
            assert_eq!(serde_json::to_string(&map).unwrap(), json);
            assert_eq!(serde_json::from_str::<FixedPointMap>(json).unwrap(), map);
        }
    }
}
