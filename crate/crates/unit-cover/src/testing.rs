//! Independent oracles and scripted opponents used by the test suites.
//!
//! Everything here is deliberately written against the problem statement
//! rather than against the library internals, so it can certify them.

use crate::geometry::{Ball, Norm, Point};
use crate::online::{CoverDecision, CoverState, OnlineAlgorithm, OnlineError};
use crate::CONTAIN_TOL;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Smallest enclosing radius by exhaustive search over candidate support
/// sets of size <= d+1: singletons, midpoint balls of pairs and
/// circumballs of larger subsets. Only sensible for tiny inputs.
pub fn seb_brute_force(points: &[Point]) -> f64 {
    let n = points.len();
    let d = points[0].dim();
    let mut best = f64::INFINITY;
    for mask in 1u32..(1 << n) {
        let size = mask.count_ones() as usize;
        if size > d + 1 {
            continue;
        }
        let subset: Vec<&Point> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| &points[i]).collect();
        if let Some((center, radius)) = circumball(&subset) {
            let covers_all = points.iter().all(|p| p.dist(&center) <= radius + 1e-9);
            if covers_all && radius < best {
                best = radius;
            }
        }
    }
    best
}

/// Center and radius of the smallest ball with all of `subset` on its
/// boundary (center constrained to their affine hull).
fn circumball(subset: &[&Point]) -> Option<(Point, f64)> {
    let m = subset.len();
    if m == 1 {
        return Some((subset[0].clone(), 0.0));
    }
    let p0 = subset[0];
    let vs: Vec<Vec<f64>> = subset[1..].iter().map(|p| p.sub(p0)).collect();
    let k = vs.len();
    let mut a = vec![vec![0.0; k + 1]; k];
    for i in 0..k {
        for j in 0..k {
            a[i][j] = 2.0 * dot(&vs[i], &vs[j]);
        }
        a[i][k] = dot(&vs[i], &vs[i]);
    }
    let lambda = gauss(&mut a)?;
    let mut center = p0.coords.clone();
    for (l, v) in lambda.iter().zip(&vs) {
        for (c, vi) in center.iter_mut().zip(v) {
            *c += l * vi;
        }
    }
    let center = Point::new(center);
    let radius = subset.iter().map(|p| p.dist(&center)).fold(0.0, f64::max);
    Some((center, radius))
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[allow(clippy::needless_range_loop)]
fn gauss(a: &mut [Vec<f64>]) -> Option<Vec<f64>> {
    let n = a.len();
    for col in 0..n {
        let pivot = (col..n).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if a[pivot][col].abs() < 1e-10 {
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

/// Minimum number of radius-`radius` balls covering `points`, by
/// enumerating every set partition (restricted growth strings) and
/// checking each block's enclosing radius. Bell(8) = 4140, so n <= 8 only.
pub fn bell_opt_brute_force(points: &[Point], radius: f64) -> usize {
    let n = points.len();
    assert!((1..=8).contains(&n), "bell oracle supports 1..=8 points");
    let mut rgs = vec![0usize; n];
    let mut best = n;
    loop {
        let blocks = *rgs.iter().max().unwrap() + 1;
        if blocks < best && partition_feasible(points, &rgs, blocks, radius) {
            best = blocks;
        }
        // next restricted growth string
        let mut i = n;
        loop {
            if i == 1 {
                return best;
            }
            i -= 1;
            let cap = rgs[..i].iter().max().unwrap() + 1;
            if rgs[i] < cap {
                rgs[i] += 1;
                for r in rgs[i + 1..].iter_mut() {
                    *r = 0;
                }
                break;
            }
            // else carry on leftwards
        }
    }
}

fn partition_feasible(points: &[Point], rgs: &[usize], blocks: usize, radius: f64) -> bool {
    for b in 0..blocks {
        let block: Vec<Point> = points
            .iter()
            .zip(rgs)
            .filter(|(_, &g)| g == b)
            .map(|(p, _)| p.clone())
            .collect();
        if block.is_empty() {
            continue;
        }
        let r = crate::geometry::smallest_enclosing_ball(&block).unwrap().radius;
        if r > radius + CONTAIN_TOL {
            return false;
        }
    }
    true
}

/// A legal but unhelpful opponent: covers each uncovered point with a unit
/// ball displaced by a seeded random offset of norm below 0.95.
pub struct RandomLegalBob {
    rng: ChaCha8Rng,
    dim: usize,
}

impl RandomLegalBob {
    pub fn new(seed: u64, dim: usize) -> Self {
        RandomLegalBob { rng: ChaCha8Rng::seed_from_u64(seed ^ 0xb0b_b0b), dim }
    }
}

impl OnlineAlgorithm for RandomLegalBob {
    fn id(&self) -> &'static str {
        "random-legal"
    }

    fn norm(&self) -> Norm {
        Norm::L2
    }

    fn decide(&mut self, state: &CoverState, p: &Point) -> Result<CoverDecision, OnlineError> {
        for (i, b) in state.balls.iter().enumerate() {
            if crate::geometry::covers(b, state.norm, p, CONTAIN_TOL) {
                return Ok(CoverDecision::Assign(i));
            }
        }
        let dir: Vec<f64> = (0..self.dim)
            .map(|_| self.rng.sample::<f64, _>(rand_distr::StandardNormal))
            .collect();
        let norm = dot(&dir, &dir).sqrt();
        let len = self.rng.gen_range(0.0..0.95);
        let center = if norm > 1e-12 {
            p.add_scaled(&dir, len / norm)
        } else {
            p.clone()
        };
        Ok(CoverDecision::Open(Ball::unit(center)))
    }
}

/// An opponent that covers each point with a unit ball at a caller-chosen
/// center, for driving adversaries down specific branches.
pub struct ScriptedBob<F: FnMut(&CoverState, &Point) -> Point> {
    pub choose_center: F,
}

impl<F: FnMut(&CoverState, &Point) -> Point> OnlineAlgorithm for ScriptedBob<F> {
    fn id(&self) -> &'static str {
        "scripted"
    }

    fn norm(&self) -> Norm {
        Norm::L2
    }

    fn decide(&mut self, state: &CoverState, p: &Point) -> Result<CoverDecision, OnlineError> {
        for (i, b) in state.balls.iter().enumerate() {
            if crate::geometry::covers(b, state.norm, p, CONTAIN_TOL) {
                return Ok(CoverDecision::Assign(i));
            }
        }
        Ok(CoverDecision::Open(Ball::unit((self.choose_center)(state, p))))
    }
}
