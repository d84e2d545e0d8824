//! Exact offline optimum for unit covering.
//!
//! Offline, covering by radius-r balls and partitioning into clusters of
//! enclosing radius at most r are the same problem: multiply covered
//! points can be assigned to unique balls arbitrarily. The solver works on
//! the partition formulation, which needs no dimension-specific candidate
//! centers: memoized recursion over the uncovered-set bitmask, always
//! grouping the lowest-index uncovered point with a feasible subset
//! containing it.

use crate::geometry::{smallest_enclosing_ball, Ball, Point};
use crate::CONTAIN_TOL;
use std::collections::HashMap;
use thiserror::Error;

/// Bitmask cap: memory stays within ~2^22 entries.
pub const MAX_EXACT_POINTS: usize = 22;

#[derive(Debug, Error, PartialEq)]
pub enum OptError {
    #[error("no points")]
    Empty,
    #[error("{0} points exceed the exact cap of {MAX_EXACT_POINTS}; use greedy_cover for an upper bound")]
    TooLarge(usize),
    #[error("radius must be positive")]
    BadRadius,
}

/// Exact optimum plus a witness partition.
#[derive(Debug, Clone)]
pub struct OptResult {
    pub count: usize,
    pub clusters: Vec<Vec<usize>>,
    pub balls: Vec<Ball>,
}

struct Solver<'a> {
    points: &'a [Point],
    radius: f64,
    /// per-point mask of partners within pairwise distance 2r
    compat: Vec<u32>,
    feas_cache: HashMap<u32, bool>,
    memo: HashMap<u32, (usize, u32)>,
}

impl<'a> Solver<'a> {
    fn new(points: &'a [Point], radius: f64) -> Self {
        let n = points.len();
        let mut compat = vec![0u32; n];
        for i in 0..n {
            for j in 0..n {
                if points[i].dist(&points[j]) <= 2.0 * radius + CONTAIN_TOL {
                    compat[i] |= 1 << j;
                }
            }
        }
        Solver { points, radius, compat, feas_cache: HashMap::new(), memo: HashMap::new() }
    }

    fn is_clique(&self, mask: u32) -> bool {
        let mut m = mask;
        while m != 0 {
            let i = m.trailing_zeros() as usize;
            if mask & !self.compat[i] != 0 {
                return false;
            }
            m &= m - 1;
        }
        true
    }

    fn feasible(&mut self, mask: u32) -> bool {
        if let Some(&f) = self.feas_cache.get(&mask) {
            return f;
        }
        let pts: Vec<Point> = iter_bits(mask).map(|i| self.points[i].clone()).collect();
        let f = smallest_enclosing_ball(&pts).unwrap().radius <= self.radius + CONTAIN_TOL;
        self.feas_cache.insert(mask, f);
        f
    }

    fn solve(&mut self, mask: u32) -> (usize, u32) {
        if mask == 0 {
            return (0, 0);
        }
        if let Some(&hit) = self.memo.get(&mask) {
            return hit;
        }
        let i = mask.trailing_zeros() as usize;
        let cand = mask & self.compat[i];
        let bit = 1u32 << i;

        // the whole candidate set in one cluster, when feasible, dominates
        // every sub-cluster choice
        let result = if self.is_clique(cand) && self.feasible(cand) {
            let (rest, _) = self.solve(mask & !cand);
            (rest + 1, cand)
        } else {
            let free = cand & !bit;
            let mut best = (usize::MAX, 0u32);
            // enumerate subsets of the compatible partners of i
            let mut s = free;
            loop {
                let cluster = s | bit;
                if self.is_clique(cluster) && self.feasible(cluster) {
                    let (rest, _) = self.solve(mask & !cluster);
                    if rest + 1 < best.0 {
                        best = (rest + 1, cluster);
                    }
                }
                if s == 0 {
                    break;
                }
                s = (s - 1) & free;
            }
            best
        };
        self.memo.insert(mask, result);
        result
    }
}

fn iter_bits(mask: u32) -> impl Iterator<Item = usize> {
    (0..32).filter(move |i| mask >> i & 1 == 1)
}

/// Minimum number of radius-`radius` balls covering `points`, with a
/// witness clustering. Exact for up to [`MAX_EXACT_POINTS`] points.
pub fn opt_cover_exact(points: &[Point], radius: f64) -> Result<OptResult, OptError> {
    if points.is_empty() {
        return Err(OptError::Empty);
    }
    if points.len() > MAX_EXACT_POINTS {
        return Err(OptError::TooLarge(points.len()));
    }
    if !radius.is_finite() || radius <= 0.0 {
        return Err(OptError::BadRadius);
    }
    let n = points.len();
    let full: u32 = if n == 32 { u32::MAX } else { (1 << n) - 1 };
    let mut solver = Solver::new(points, radius);
    let (count, _) = solver.solve(full);

    // reconstruct the witness partition from the memoized choices
    let mut clusters = Vec::with_capacity(count);
    let mut balls = Vec::with_capacity(count);
    let mut mask = full;
    while mask != 0 {
        let (_, chosen) = solver.memo[&mask];
        let idx: Vec<usize> = iter_bits(chosen).collect();
        let pts: Vec<Point> = idx.iter().map(|&i| points[i].clone()).collect();
        balls.push(smallest_enclosing_ball(&pts).expect("cluster nonempty"));
        clusters.push(idx);
        mask &= !chosen;
    }
    debug_assert_eq!(clusters.len(), count);
    Ok(OptResult { count, clusters, balls })
}

/// All nonempty subsets (as bitmasks) whose smallest enclosing ball has
/// radius at most `radius` + 1e-9. Feasibility is monotone: every subset
/// of a yielded set would be yielded too.
pub fn feasible_clusters<'a>(
    points: &'a [Point],
    radius: f64,
) -> impl Iterator<Item = u32> + 'a {
    let n = points.len();
    assert!(n <= MAX_EXACT_POINTS, "feasible_clusters supports up to {MAX_EXACT_POINTS} points");
    let mut compat = vec![0u32; n];
    for i in 0..n {
        for j in 0..n {
            if points[i].dist(&points[j]) <= 2.0 * radius + CONTAIN_TOL {
                compat[i] |= 1 << j;
            }
        }
    }
    let full: u32 = if n == 0 { 0 } else { (1u32 << n) - 1 };
    (1..=full).filter(move |&mask| {
        let mut m = mask;
        while m != 0 {
            let i = m.trailing_zeros() as usize;
            if mask & !compat[i] != 0 {
                return false;
            }
            m &= m - 1;
        }
        let pts: Vec<Point> = iter_bits(mask).map(|i| points[i].clone()).collect();
        smallest_enclosing_ball(&pts).unwrap().radius <= radius + CONTAIN_TOL
    })
}

/// Centered replay over the given order: an upper bound on
/// OPT * ratio(d), never a substitute for the exact optimum in reports.
pub fn greedy_cover(points: &[Point], radius: f64) -> usize {
    let mut centers: Vec<&Point> = Vec::new();
    for p in points {
        if !centers.iter().any(|c| c.dist(p) <= radius + CONTAIN_TOL) {
            centers.push(p);
        }
    }
    centers.len()
}
