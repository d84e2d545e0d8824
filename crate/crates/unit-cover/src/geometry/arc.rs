//! Coverage arithmetic on a circle embedded in R^d.
//!
//! Angles are measured against the circle's first basis direction. Interval
//! sets are kept sorted, disjoint, half-open `[a, b)` and normalized into
//! `[0, 2pi)`; gaps below 1e-12 are merged away.

use super::vecops;
use super::{Ball, GeometryError, Point, Subsphere};
use std::f64::consts::TAU;

const MERGE_EPS: f64 = 1e-12;

/// A subset of a circle as a list of angle intervals.
#[derive(Debug, Clone)]
pub struct Arc {
    pub circle: Subsphere,
    pub intervals: Vec<(f64, f64)>,
}

impl Arc {
    pub fn total_measure(&self) -> f64 {
        self.intervals.iter().map(|(a, b)| b - a).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn is_full(&self) -> bool {
        (self.total_measure() - TAU).abs() < 1e-9
    }

    /// Largest circular interval, joining the wrap-around at 0/2pi.
    /// Returns (start, length).
    pub fn largest_interval(&self) -> Option<(f64, f64)> {
        if self.intervals.is_empty() {
            return None;
        }
        let mut spans = self.intervals.clone();
        let n = spans.len();
        if n >= 2 && spans[0].0 <= MERGE_EPS && spans[n - 1].1 >= TAU - MERGE_EPS {
            // first and last are wrap-adjacent
            let (a, b) = (spans[n - 1].0, spans[0].1 + TAU);
            spans[0] = (a, b);
            spans.remove(n - 1);
        }
        spans
            .into_iter()
            .map(|(a, b)| (a, b - a))
            .max_by(|x, y| x.1.total_cmp(&y.1).then(y.0.total_cmp(&x.0)))
    }

    /// World-space point at angle `theta` on the circle.
    pub fn point_at(&self, theta: f64) -> Point {
        circle_point(&self.circle, theta)
    }

    /// Angle midpoint of the largest interval.
    pub fn largest_gap_midpoint(&self) -> Option<f64> {
        self.largest_interval()
            .map(|(a, len)| (a + len / 2.0).rem_euclid(TAU))
    }
}

pub(crate) fn circle_point(circle: &Subsphere, theta: f64) -> Point {
    let (c, s) = (theta.cos(), theta.sin());
    let dir: Vec<f64> = circle.basis[0]
        .iter()
        .zip(&circle.basis[1])
        .map(|(u, v)| c * u + s * v)
        .collect();
    circle.center.add_scaled(&dir, circle.radius)
}

/// Normalize a raw interval list: split wrap-around, clamp into [0, 2pi),
/// sort, merge overlaps and sub-1e-12 gaps.
fn normalize(raw: Vec<(f64, f64)>) -> Vec<(f64, f64)> {
    let mut parts: Vec<(f64, f64)> = Vec::new();
    for (a, b) in raw {
        if b - a >= TAU - MERGE_EPS {
            return vec![(0.0, TAU)];
        }
        if b <= a + MERGE_EPS {
            continue;
        }
        let a0 = a.rem_euclid(TAU);
        let b0 = a0 + (b - a);
        if b0 <= TAU {
            parts.push((a0, b0));
        } else {
            parts.push((a0, TAU));
            parts.push((0.0, b0 - TAU));
        }
    }
    parts.sort_by(|x, y| x.0.total_cmp(&y.0));
    let mut out: Vec<(f64, f64)> = Vec::with_capacity(parts.len());
    for (a, b) in parts {
        match out.last_mut() {
            Some(last) if a <= last.1 + MERGE_EPS => last.1 = last.1.max(b),
            _ => out.push((a, b)),
        }
    }
    out
}

/// Complement of an interval set within [0, 2pi).
fn complement(covered: &[(f64, f64)]) -> Vec<(f64, f64)> {
    let mut out = Vec::new();
    let mut cursor = 0.0;
    for &(a, b) in covered {
        if a > cursor + MERGE_EPS {
            out.push((cursor, a));
        }
        cursor = cursor.max(b);
    }
    if cursor < TAU - MERGE_EPS {
        out.push((cursor, TAU));
    }
    out
}

/// The part of a circle left uncovered by a set of balls, as angle
/// intervals.
///
/// Each ball is intersected with the circle's plane: with `rho` the circle
/// radius, `m` the in-plane distance to the ball center and `r'` the
/// in-plane ball radius, the covered half-width is `phi` with
/// `cos phi = (rho^2 + m^2 - r'^2) / (2 rho m)`; a concentric ball covers
/// everything iff `rho <= r'`.
pub fn circle_uncovered(circle: &Subsphere, balls: &[Ball]) -> Result<Arc, GeometryError> {
    if circle.k() != 1 {
        return Err(GeometryError::NotACircle(circle.k()));
    }
    let rho = circle.radius;
    let mut covered: Vec<(f64, f64)> = Vec::new();
    for ball in balls {
        if ball.dim() != circle.dim() {
            return Err(GeometryError::DimensionMismatch {
                expected: circle.dim(),
                got: ball.dim(),
            });
        }
        let rel = ball.center.sub(&circle.center);
        let x = vecops::dot(&rel, &circle.basis[0]);
        let y = vecops::dot(&rel, &circle.basis[1]);
        let in_plane_sq = x * x + y * y;
        let perp_sq = (vecops::dot(&rel, &rel) - in_plane_sq).max(0.0);
        if perp_sq > ball.radius * ball.radius {
            continue; // plane misses the ball
        }
        let r_eff = (ball.radius * ball.radius - perp_sq).sqrt();
        let m = in_plane_sq.sqrt();
        if m < 1e-12 {
            if rho <= r_eff {
                return Ok(Arc { circle: circle.clone(), intervals: Vec::new() });
            }
            continue;
        }
        let cos_phi = (rho * rho + m * m - r_eff * r_eff) / (2.0 * rho * m);
        if cos_phi >= 1.0 {
            continue; // disk too far in-plane to reach the circle
        }
        let center_angle = y.atan2(x);
        if cos_phi <= -1.0 {
            return Ok(Arc { circle: circle.clone(), intervals: Vec::new() });
        }
        let phi = cos_phi.acos();
        covered.push((center_angle - phi, center_angle + phi));
    }
    let covered = normalize(covered);
    Ok(Arc { circle: circle.clone(), intervals: complement(&covered) })
}
