//! k-spheres inside R^d, hemispheres and their poles.
//!
//! A k-sphere is the set of points at a fixed distance from a center,
//! restricted to a (k+1)-dimensional affine subspace through that center.
//! A k-hemisphere is its intersection with a closed halfspace whose
//! boundary passes through the center; the pole is the point of the
//! hemisphere farthest into the halfspace.

use super::vecops;
use super::{Ball, GeometryError, Point};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Tolerance for orthonormality checks on sphere bases.
pub const BASIS_TOL: f64 = 1e-9;

/// A k-sphere of R^d: center, radius and k+1 orthonormal directions
/// spanning its affine hull.
#[derive(Debug, Clone, PartialEq)]
pub struct Subsphere {
    pub center: Point,
    pub radius: f64,
    pub basis: Vec<Vec<f64>>,
}

impl Subsphere {
    pub fn new(center: Point, radius: f64, basis: Vec<Vec<f64>>) -> Result<Self, GeometryError> {
        if !radius.is_finite() || radius <= 0.0 {
            return Err(GeometryError::DegenerateSphere);
        }
        let d = center.dim();
        if basis.is_empty() || basis.len() > d {
            return Err(GeometryError::InvalidBasis);
        }
        for (i, u) in basis.iter().enumerate() {
            if u.len() != d {
                return Err(GeometryError::DimensionMismatch { expected: d, got: u.len() });
            }
            if (vecops::norm(u) - 1.0).abs() > BASIS_TOL {
                return Err(GeometryError::InvalidBasis);
            }
            for v in &basis[..i] {
                if vecops::dot(u, v).abs() > BASIS_TOL {
                    return Err(GeometryError::InvalidBasis);
                }
            }
        }
        Ok(Subsphere { center, radius, basis })
    }

    /// Full (d-1)-sphere of R^d centered at `center`.
    pub fn full_sphere(center: Point, radius: f64) -> Result<Self, GeometryError> {
        let d = center.dim();
        let basis = (0..d).map(|i| Point::axis(d, i).coords).collect();
        Subsphere::new(center, radius, basis)
    }

    /// k, where self is a k-sphere.
    pub fn k(&self) -> usize {
        self.basis.len() - 1
    }

    pub fn dim(&self) -> usize {
        self.center.dim()
    }

    /// Orthogonal projection of `p` onto the sphere's affine hull.
    pub fn project(&self, p: &Point) -> Point {
        let rel = p.sub(&self.center);
        let mut out = self.center.coords.clone();
        for u in &self.basis {
            let c = vecops::dot(&rel, u);
            for (o, ui) in out.iter_mut().zip(u) {
                *o += c * ui;
            }
        }
        Point::new(out)
    }

    /// The sphere point `center + radius * dir` for an in-span unit `dir`.
    pub fn point_at(&self, dir: &[f64]) -> Point {
        self.center.add_scaled(dir, self.radius)
    }
}

/// A k-hemisphere: a k-sphere plus the inward unit direction of its
/// halfspace. The pole is `center + radius * inward`.
#[derive(Debug, Clone, PartialEq)]
pub struct Hemisphere {
    pub sphere: Subsphere,
    pub inward: Vec<f64>,
}

impl Hemisphere {
    fn new(sphere: Subsphere, inward: Vec<f64>) -> Result<Self, GeometryError> {
        // inward must be unit and lie in the span
        if (vecops::norm(&inward) - 1.0).abs() > BASIS_TOL {
            return Err(GeometryError::InvalidBasis);
        }
        let residual = vecops::project_off(&inward, &sphere.basis);
        if vecops::norm(&residual) > BASIS_TOL {
            return Err(GeometryError::InvalidBasis);
        }
        Ok(Hemisphere { sphere, inward })
    }
}

/// Pole of a hemisphere: the point farthest along the inward direction.
pub fn pole(h: &Hemisphere) -> Point {
    h.sphere.center.add_scaled(&h.inward, h.sphere.radius)
}

/// A hemisphere of `s` disjoint from `b`, for `s.radius > b.radius`.
///
/// Project `b`'s center onto the sphere's hull; aiming away from that
/// projection leaves every hemisphere point at distance >= s.radius from
/// the ball center. Concentric ties pick the first basis direction. The
/// construction is checked by sampling the pole and boundary.
pub fn hemisphere_avoiding(s: &Subsphere, b: &Ball) -> Result<Hemisphere, GeometryError> {
    if !s.radius.is_finite() || s.radius <= 0.0 {
        return Err(GeometryError::DegenerateSphere);
    }
    if s.dim() != b.dim() {
        return Err(GeometryError::DimensionMismatch { expected: s.dim(), got: b.dim() });
    }
    if !(s.radius - b.radius).is_finite() || s.radius <= b.radius {
        return Err(GeometryError::RadiusOrder);
    }
    let proj = s.project(&b.center);
    let offset = proj.sub(&s.center);
    let inward = match vecops::normalize(&vecops::scale(&offset, -1.0)) {
        Some(u) if vecops::norm(&offset) > 1e-9 => u,
        _ => s.basis[0].clone(),
    };
    let h = Hemisphere::new(s.clone(), inward)?;

    // postcondition: sampled hemisphere points clear the ball
    for p in sample_hemisphere(&h, 64) {
        if p.dist(&b.center) < b.radius + 1e-9 {
            return Err(GeometryError::Invalid("hemisphere sample inside avoided ball"));
        }
    }
    Ok(h)
}

/// Relative boundary of a k-hemisphere (k >= 1): the (k-1)-sphere with the
/// same center and radius, spanned by the hemisphere's hull minus the
/// inward direction.
pub fn hemisphere_boundary(h: &Hemisphere) -> Result<Subsphere, GeometryError> {
    let k = h.sphere.k();
    if k == 0 {
        return Err(GeometryError::BoundaryOfPoint);
    }
    // pivoted Gram-Schmidt: residuals of the hull basis off the inward
    // direction, largest first
    let mut cands: Vec<Vec<f64>> = h
        .sphere
        .basis
        .iter()
        .map(|u| vecops::project_off(u, std::slice::from_ref(&h.inward)))
        .collect();
    let mut basis: Vec<Vec<f64>> = Vec::with_capacity(k);
    for _ in 0..k {
        let best = cands
            .iter()
            .enumerate()
            .max_by(|(_, a), (_, b)| vecops::norm(a).total_cmp(&vecops::norm(b)))
            .map(|(i, _)| i)
            .ok_or(GeometryError::InvalidBasis)?;
        let v = cands.swap_remove(best);
        let unit = vecops::normalize(&v).ok_or(GeometryError::InvalidBasis)?;
        if vecops::norm(&v) < 1e-9 {
            return Err(GeometryError::InvalidBasis);
        }
        for c in cands.iter_mut() {
            *c = vecops::project_off(c, std::slice::from_ref(&unit));
        }
        basis.push(unit);
    }
    Subsphere::new(h.sphere.center.clone(), h.sphere.radius, basis)
}

/// Deterministic sample of hemisphere points: the pole, boundary points
/// along each boundary axis, and seeded random in-span directions folded
/// onto the inward side.
pub fn sample_hemisphere(h: &Hemisphere, random_count: usize) -> Vec<Point> {
    let mut out = vec![pole(h)];
    if h.sphere.k() >= 1 {
        if let Ok(boundary) = hemisphere_boundary(h) {
            for u in &boundary.basis {
                out.push(boundary.point_at(u));
                out.push(boundary.point_at(&vecops::scale(u, -1.0)));
                // mid-latitude points between boundary and pole
                let mid: Vec<f64> = u
                    .iter()
                    .zip(&h.inward)
                    .map(|(a, b)| (a + b) / 2f64.sqrt())
                    .collect();
                out.push(h.sphere.point_at(&mid));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x11e1_5a3e);
    for _ in 0..random_count {
        let coeffs: Vec<f64> = (0..h.sphere.basis.len())
            .map(|_| rng.gen_range(-1.0..1.0))
            .collect();
        let mut v = vec![0.0; h.sphere.dim()];
        for (c, u) in coeffs.iter().zip(&h.sphere.basis) {
            for (vi, ui) in v.iter_mut().zip(u) {
                *vi += c * ui;
            }
        }
        if let Some(mut unit) = vecops::normalize(&v) {
            if vecops::dot(&unit, &h.inward) < 0.0 {
                unit = vecops::scale(&unit, -1.0);
            }
            out.push(h.sphere.point_at(&unit));
        }
    }
    out
}
