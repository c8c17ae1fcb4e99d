//! Shared helpers for integration tests.

use exgrad::space::Point;

/// Brute-force minimizer of phi(y, x) = ||y||^2 - 2 <Jx, y> + ||x||^2
/// over a dense grid on a 2-D box, used as an independent oracle for the
/// generalized projection in l_p geometry.
///
/// The grid has `resolution` spacing per axis. For a fixed first
/// coordinate the objective is convex in the second, so each slice's
/// minimum is located by binary search over adjacent differences; the
/// whole scan costs O(n log n) evaluations instead of O(n^2).
pub fn lp_box_grid_argmin(
    x: &Point,
    lower: [f64; 2],
    upper: [f64; 2],
    resolution: f64,
) -> [f64; 2] {
    let p = x.space().p();
    let jx = x.duality_map();
    let (j0, j1) = (jx.coords()[0], jx.coords()[1]);

    let axis = |lo: f64, hi: f64| -> Vec<f64> {
        let n = ((hi - lo) / resolution).round() as usize + 1;
        (0..n)
            .map(|i| if i == n - 1 { hi } else { lo + i as f64 * resolution })
            .collect()
    };
    let grid0 = axis(lower[0], upper[0]);
    let grid1 = axis(lower[1], upper[1]);
    let pow0: Vec<f64> = grid0.iter().map(|v| v.abs().powf(p)).collect();
    let pow1: Vec<f64> = grid1.iter().map(|v| v.abs().powf(p)).collect();

    let mut best = (f64::INFINITY, [grid0[0], grid1[0]]);
    for (i0, &v0) in grid0.iter().enumerate() {
        let objective = |i1: usize| -> f64 {
            (pow0[i0] + pow1[i1]).powf(2.0 / p) - 2.0 * (j0 * v0 + j1 * grid1[i1])
        };
        // Binary search for the minimum of the convex slice.
        let (mut lo, mut hi) = (0usize, grid1.len() - 1);
        while lo < hi {
            let mid = (lo + hi) / 2;
            if objective(mid + 1) < objective(mid) {
                lo = mid + 1;
            } else {
                hi = mid;
            }
        }
        let value = objective(lo);
        if value < best.0 {
            best = (value, [v0, grid1[lo]]);
        }
    }
    best.1
}
