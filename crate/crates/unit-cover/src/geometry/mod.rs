//! Euclidean primitives in arbitrary dimension: points, balls, spheres,
//! hemispheres and circular-arc coverage arithmetic.
//!
//! Everything here is pure and freely copyable; there is no shared mutable
//! state, so values can move between threads without ceremony.

mod arc;
mod miniball;
mod sphere;

pub use arc::{circle_uncovered, Arc};
pub use miniball::smallest_enclosing_ball;
pub use sphere::{hemisphere_avoiding, hemisphere_boundary, pole, Hemisphere, Subsphere};

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum GeometryError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("empty point set")]
    EmptyPoints,
    #[error("point set of {0} points exceeds the supported size")]
    TooManyPoints(usize),
    #[error("zero vector where a direction is required")]
    ZeroVector,
    #[error("degenerate sphere: radius must be positive")]
    DegenerateSphere,
    #[error("sphere basis is not orthonormal within tolerance")]
    InvalidBasis,
    #[error("a 0-hemisphere has no boundary")]
    BoundaryOfPoint,
    #[error("hemisphere construction requires sphere radius > ball radius")]
    RadiusOrder,
    #[error("expected a circle (1-sphere), got a {0}-sphere")]
    NotACircle(usize),
    #[error("negative tolerance")]
    NegativeTolerance,
    #[error("invalid argument: {0}")]
    Invalid(&'static str),
}

/// A point of R^d. Also used for direction vectors, which share the same
/// coordinate arithmetic.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub coords: Vec<f64>,
}

impl Point {
    pub fn new(coords: Vec<f64>) -> Self {
        debug_assert!(!coords.is_empty());
        debug_assert!(coords.iter().all(|c| c.is_finite()));
        Point { coords }
    }

    /// Origin of R^d.
    pub fn origin(dim: usize) -> Self {
        Point { coords: vec![0.0; dim] }
    }

    /// The i-th standard basis vector of R^d.
    pub fn axis(dim: usize, i: usize) -> Self {
        let mut coords = vec![0.0; dim];
        coords[i] = 1.0;
        Point { coords }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn dist(&self, other: &Point) -> f64 {
        vecops::dist(&self.coords, &other.coords)
    }

    pub fn dist_linf(&self, other: &Point) -> f64 {
        self.coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    pub fn sub(&self, other: &Point) -> Vec<f64> {
        vecops::sub(&self.coords, &other.coords)
    }

    pub fn add_scaled(&self, dir: &[f64], t: f64) -> Point {
        Point::new(vecops::axpy(&self.coords, dir, t))
    }

    pub fn norm(&self) -> f64 {
        vecops::norm(&self.coords)
    }
}

impl std::ops::Index<usize> for Point {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.coords[i]
    }
}

/// Closed ball: center plus radius. Immutable once opened by an online
/// algorithm; the referee never moves or resizes it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Ball {
    pub center: Point,
    pub radius: f64,
}

impl Ball {
    pub fn new(center: Point, radius: f64) -> Self {
        debug_assert!(radius.is_finite() && radius >= 0.0);
        Ball { center, radius }
    }

    pub fn unit(center: Point) -> Self {
        Ball::new(center, 1.0)
    }

    pub fn dim(&self) -> usize {
        self.center.dim()
    }
}

/// Norm tag carried by match state and reports. The covering problem is
/// posed under L2; Grid is the one algorithm that works under Linf and is
/// reported as such.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Norm {
    L2,
    Linf,
}

impl Norm {
    pub fn dist(self, a: &Point, b: &Point) -> f64 {
        match self {
            Norm::L2 => a.dist(b),
            Norm::Linf => a.dist_linf(b),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Norm::L2 => "L2",
            Norm::Linf => "Linf",
        }
    }
}

/// Signed clearance of `p` against `ball` under `norm`: negative deep
/// inside, zero on the boundary, positive outside.
pub fn ball_margin(ball: &Ball, norm: Norm, p: &Point) -> f64 {
    norm.dist(&ball.center, p) - ball.radius
}

/// Closed containment with explicit tolerance under `norm`.
pub fn covers(ball: &Ball, norm: Norm, p: &Point, tol: f64) -> bool {
    ball_margin(ball, norm, p) <= tol
}

/// Closed L2 containment: `|center - p| <= radius + tol`. This is the
/// single predicate the referee and all adversaries share.
pub fn contains(b: &Ball, p: &Point, tol: f64) -> Result<bool, GeometryError> {
    if b.dim() != p.dim() {
        return Err(GeometryError::DimensionMismatch { expected: b.dim(), got: p.dim() });
    }
    if tol < 0.0 {
        return Err(GeometryError::NegativeTolerance);
    }
    Ok(b.center.dist(p) <= b.radius + tol)
}

/// Angle `∠poq` in radians, in `[0, pi]`.
///
/// Computed as `atan2(|u||v| sin, u·v)` with the cross magnitude obtained
/// from the Gram determinant, which is symmetric in (p, q) bit for bit.
pub fn angle_at(o: &Point, p: &Point, q: &Point) -> Result<f64, GeometryError> {
    if o.dim() != p.dim() || o.dim() != q.dim() {
        return Err(GeometryError::DimensionMismatch { expected: o.dim(), got: p.dim().max(q.dim()) });
    }
    let u = p.sub(o);
    let v = q.sub(o);
    let nu = vecops::norm(&u);
    let nv = vecops::norm(&v);
    if nu == 0.0 || nv == 0.0 {
        return Err(GeometryError::ZeroVector);
    }
    let dot = vecops::dot(&u, &v);
    let gram = (nu * nu) * (nv * nv) - dot * dot;
    let sin = gram.max(0.0).sqrt();
    Ok(sin.atan2(dot))
}

/// Enclosing radius of a regular d-simplex of side `side` in R^d, which is
/// Jung's bound for a set of diameter `side`: `side * sqrt(d / (2(d+1)))`.
///
/// The regular simplex on d+1 vertices attains it; for the simplex spanned
/// by d mutually orthogonal points of equal norm (d vertices, a
/// (d-1)-simplex) evaluate at `d - 1`.
pub fn jung_radius(side: f64, d: usize) -> Result<f64, GeometryError> {
    if d == 0 {
        return Err(GeometryError::Invalid("jung_radius requires d >= 1"));
    }
    if !side.is_finite() || side <= 0.0 {
        return Err(GeometryError::Invalid("jung_radius requires side > 0"));
    }
    Ok(side * (d as f64 / (2.0 * (d as f64 + 1.0))).sqrt())
}

/// Raw vector arithmetic on coordinate slices.
pub(crate) mod vecops {
    pub fn dot(a: &[f64], b: &[f64]) -> f64 {
        a.iter().zip(b).map(|(x, y)| x * y).sum()
    }

    pub fn norm(a: &[f64]) -> f64 {
        dot(a, a).sqrt()
    }

    pub fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
        a.iter().zip(b).map(|(x, y)| x - y).collect()
    }

    pub fn dist(a: &[f64], b: &[f64]) -> f64 {
        a.iter()
            .zip(b)
            .map(|(x, y)| (x - y) * (x - y))
            .sum::<f64>()
            .sqrt()
    }

    /// a + t * d
    pub fn axpy(a: &[f64], d: &[f64], t: f64) -> Vec<f64> {
        a.iter().zip(d).map(|(x, y)| x + t * y).collect()
    }

    pub fn scale(a: &[f64], t: f64) -> Vec<f64> {
        a.iter().map(|x| x * t).collect()
    }

    pub fn normalize(a: &[f64]) -> Option<Vec<f64>> {
        let n = norm(a);
        if n == 0.0 {
            None
        } else {
            Some(scale(a, 1.0 / n))
        }
    }

    /// Remove from `v` its components along each of the orthonormal `dirs`.
    pub fn project_off(v: &[f64], dirs: &[Vec<f64>]) -> Vec<f64> {
        let mut out = v.to_vec();
        for d in dirs {
            let c = dot(&out, d);
            for (o, di) in out.iter_mut().zip(d) {
                *o -= c * di;
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    #[test]
    fn contains_boundary_is_closed() {
        let b = Ball::unit(Point::origin(2));
        assert!(contains(&b, &Point::new(vec![1.0, 0.0]), 1e-9).unwrap());
        assert!(!contains(&b, &Point::new(vec![1.0 + 1e-4, 0.0]), 1e-9).unwrap());
        // 3-4-5 scaling, distance exactly 1
        assert!(contains(&b, &Point::new(vec![0.6, 0.8]), 1e-9).unwrap());
    }

    #[test]
    fn contains_rejects_dimension_mismatch() {
        let b = Ball::unit(Point::origin(2));
        assert_eq!(
            contains(&b, &Point::new(vec![0.0, 0.0, 0.0]), 1e-9),
            Err(GeometryError::DimensionMismatch { expected: 2, got: 3 })
        );
    }

    #[test]
    fn angle_basics() {
        let o = Point::origin(2);
        let p = Point::new(vec![1.0, 0.0]);
        let q = Point::new(vec![0.0, 1.0]);
        assert_relative_eq!(angle_at(&o, &p, &q).unwrap(), PI / 2.0, max_relative = 1e-12);
        let m = Point::new(vec![-1.0, 0.0]);
        assert_relative_eq!(angle_at(&o, &p, &m).unwrap(), PI, max_relative = 1e-12);
        assert!(angle_at(&o, &o, &q).is_err());
    }

    #[test]
    fn adjacent_pentagon_vertices_exceed_pi_over_3() {
        let o = Point::origin(2);
        let p = Point::new(vec![1.0, 0.0]);
        let q = Point::new(vec![(2.0 * PI / 5.0).cos(), (2.0 * PI / 5.0).sin()]);
        let a = angle_at(&o, &p, &q).unwrap();
        assert_relative_eq!(a, 2.0 * PI / 5.0, max_relative = 1e-12);
        assert!(a > PI / 3.0);
    }

    #[test]
    fn jung_radius_values() {
        // half the side on a line
        assert_relative_eq!(jung_radius(2f64.sqrt(), 1).unwrap(), 2f64.sqrt() / 2.0);
        // diameter-2 triangle in the plane
        assert_relative_eq!(jung_radius(2.0, 2).unwrap(), 2.0 / 3f64.sqrt(), max_relative = 1e-12);
        // orthogonal-frame simplex in R^3 stays strictly inside the unit ball:
        // d points of norm 1+eps span a (d-1)-simplex of side (1+eps)*sqrt(2)
        let d = 3usize;
        let eps = 1.0 / (4.0 * d as f64);
        let side = (1.0 + eps) * 2f64.sqrt();
        assert!(jung_radius(side, d - 1).unwrap() < 1.0);
        // and the full d-simplex bound is below 1 as well at this side length
        assert!(jung_radius(side, d).unwrap() < 1.0);
        assert!(jung_radius(1.0, 0).is_err());
    }

    proptest::proptest! {
        #[test]
        fn angle_symmetry_exact(
            px in -10.0f64..10.0, py in -10.0f64..10.0,
            qx in -10.0f64..10.0, qy in -10.0f64..10.0,
        ) {
            let o = Point::origin(2);
            let p = Point::new(vec![px, py]);
            let q = Point::new(vec![qx, qy]);
            if p.norm() > 1e-12 && q.norm() > 1e-12 {
                let a = angle_at(&o, &p, &q).unwrap();
                let b = angle_at(&o, &q, &p).unwrap();
                proptest::prop_assert_eq!(a, b);
            }
        }
    }
}
