//! Smallest enclosing ball in arbitrary dimension.
//!
//! Welzl's move-to-front recursion with at most d+1 support points. The
//! working order is a permutation drawn from a fixed seed, so the result is
//! deterministic for a fixed input order while still getting the expected
//! O(n) behavior of the randomized algorithm.

use super::vecops;
use super::{Ball, GeometryError, Point};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const SHUFFLE_SEED: u64 = 0x5eb0_11a5_c0ff_ee00;

/// Minimal-radius closed ball containing all `points` (within 1e-9).
///
/// Accepts up to ~10^4 points; the recursion depth is bounded by the input
/// size.
pub fn smallest_enclosing_ball(points: &[Point]) -> Result<Ball, GeometryError> {
    if points.is_empty() {
        return Err(GeometryError::EmptyPoints);
    }
    let dim = points[0].dim();
    for p in points {
        if p.dim() != dim {
            return Err(GeometryError::DimensionMismatch { expected: dim, got: p.dim() });
        }
    }
    if points.len() > 20_000 {
        return Err(GeometryError::TooManyPoints(points.len()));
    }

    let mut order: Vec<&Point> = points.iter().collect();
    let mut rng = ChaCha8Rng::seed_from_u64(SHUFFLE_SEED);
    order.shuffle(&mut rng);

    let mut support: Vec<&Point> = Vec::with_capacity(dim + 1);
    let ball = mtf_ball(&mut order, points.len(), &mut support, dim);
    Ok(ball.unwrap_or_else(|| Ball::new(points[0].clone(), 0.0)))
}

/// Move-to-front recursion: smallest ball of `order[..n]` with all of
/// `support` on its boundary.
fn mtf_ball<'a>(
    order: &mut Vec<&'a Point>,
    n: usize,
    support: &mut Vec<&'a Point>,
    dim: usize,
) -> Option<Ball> {
    let mut ball = ball_of_support(support, dim);
    if support.len() == dim + 1 {
        return ball;
    }
    let mut i = 0;
    while i < n {
        let p = order[i];
        let outside = match &ball {
            None => true,
            Some(b) => p.dist(&b.center) > b.radius + 1e-12 * (1.0 + b.radius),
        };
        if outside {
            support.push(p);
            ball = mtf_ball(order, i, support, dim);
            support.pop();
            // move-to-front keeps hard points early
            let moved = order.remove(i);
            order.insert(0, moved);
        }
        i += 1;
    }
    ball
}

/// Smallest ball with every support point on its boundary. The center is
/// the point of the support's affine hull equidistant from all of them.
fn ball_of_support(support: &[&Point], dim: usize) -> Option<Ball> {
    match support.len() {
        0 => None,
        1 => Some(Ball::new(support[0].clone(), 0.0)),
        _ => {
            let p0 = support[0];
            let vs: Vec<Vec<f64>> = support[1..].iter().map(|p| p.sub(p0)).collect();
            let m = vs.len();
            // Gram system: 2 * G * lambda = |v_i|^2
            let mut a = vec![vec![0.0; m + 1]; m];
            for i in 0..m {
                for j in 0..m {
                    a[i][j] = 2.0 * vecops::dot(&vs[i], &vs[j]);
                }
                a[i][m] = vecops::dot(&vs[i], &vs[i]);
            }
            let lambda = solve(&mut a)?;
            let mut center = p0.coords.clone();
            for (l, v) in lambda.iter().zip(&vs) {
                for (c, vi) in center.iter_mut().zip(v) {
                    *c += l * vi;
                }
            }
            let center = Point::new(center);
            let radius = support
                .iter()
                .map(|p| p.dist(&center))
                .fold(0.0, f64::max);
            debug_assert!(center.dim() == dim);
            Some(Ball::new(center, radius))
        }
    }
}

/// Gaussian elimination with partial pivoting on an augmented system.
/// Returns None when the support is affinely degenerate.
#[allow(clippy::needless_range_loop)]
fn solve(a: &mut [Vec<f64>]) -> Option<Vec<f64>> {
    let n = a.len();
    let scale: f64 = a
        .iter()
        .flat_map(|row| row[..n].iter())
        .fold(0.0f64, |s, &x| s.max(x.abs()))
        .max(1.0);
    for col in 0..n {
        let pivot = (col..n).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if a[pivot][col].abs() < 1e-12 * scale {
            return None;
        }
        a.swap(col, pivot);
        for row in col + 1..n {
            let f = a[row][col] / a[col][col];
            for k in col..=n {
                a[row][k] -= f * a[col][k];
            }
        }
    }
    let mut x = vec![0.0; n];
    for col in (0..n).rev() {
        let mut s = a[col][n];
        for k in col + 1..n {
            s -= a[col][k] * x[k];
        }
        x[col] = s / a[col][col];
    }
    Some(x)
}
