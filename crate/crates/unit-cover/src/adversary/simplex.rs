//! The hemisphere descent game in d-space and its d+2 extension.
//!
//! The adversary opens with the origin, then walks a chain of hemispheres
//! on the sphere S0 of radius 1+eps: each new point is the pole of the
//! current hemisphere, and after the opponent answers with a ball, the
//! chain descends to a hemisphere of the previous relative boundary that
//! avoids it. Two invariants are maintained and checked at runtime:
//!
//! (I) the vectors from the origin to the emitted points are pairwise
//!     orthogonal of length 1+eps, so p_1..p_d span a regular simplex of
//!     side (1+eps)*sqrt(2);
//! (II) the current hemisphere lies in the subspace orthogonal to all
//!     chosen directions and clears every ball placed so far.
//!
//! The final smallest enclosing ball of all d+1 points has radius below 1
//! (the simplex circumradius; Jung's bound at dimension d-1) and is the
//! certificate.
//!
//! The plus-two extension (d = 2, 3) appends one more point on the sphere
//! of radius 2-R around the certificate center: a unit ball cuts that
//! sphere in a cap of diameter at most 2, and for radius above 2/sqrt(3)
//! three caps cannot close a great circle, so an uncovered arc midpoint
//! always exists. Its eps defaults to 0.01 to keep 2-R above that
//! threshold in both dimensions.

use super::{
    assert_certificate, assert_latest_ball_legal, assert_uncovered, Adversary, AdversaryError,
    AdversaryMove,
};
use crate::geometry::{
    circle_uncovered, hemisphere_avoiding, hemisphere_boundary, jung_radius, pole,
    smallest_enclosing_ball, vecops, Ball, Hemisphere, Point, Subsphere,
};
use crate::online::CoverState;

/// Orthogonality tolerance for invariant (I).
const ORTHO_TOL: f64 = 1e-9;

pub struct SimplexAdversary {
    dim: usize,
    eps: f64,
    emitted: Vec<Point>,
    hemisphere: Option<Hemisphere>,
    step: usize,
    done: bool,
}

impl SimplexAdversary {
    /// Default eps = 1/(4d), inside the required (0, 1/(2d)) range.
    pub fn new(dim: usize) -> Result<Self, AdversaryError> {
        if dim == 0 {
            return Err(AdversaryError::UnsupportedDimension { adversary: "simplex", got: 0 });
        }
        Ok(Self::with_eps(dim, 1.0 / (4.0 * dim as f64)))
    }

    pub fn with_eps(dim: usize, eps: f64) -> Self {
        debug_assert!(eps > 0.0 && eps < 1.0 / (2.0 * dim as f64) + 1e-12);
        SimplexAdversary { dim, eps, emitted: Vec::new(), hemisphere: None, step: 0, done: false }
    }

    pub fn points(&self) -> &[Point] {
        &self.emitted
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    fn check_invariants(&self, p: &Point) -> Result<(), AdversaryError> {
        let r = 1.0 + self.eps;
        if (p.norm() - r).abs() > 1e-9 {
            return Err(AdversaryError::ScriptInfeasible("pole left the sphere S0"));
        }
        for prev in self.emitted.iter().skip(1) {
            let cos = vecops::dot(&p.coords, &prev.coords) / (r * r);
            if cos.abs() > ORTHO_TOL {
                return Err(AdversaryError::ScriptInfeasible("emitted directions not orthogonal"));
            }
        }
        Ok(())
    }

    /// Advance one round: absorb the opponent's latest ball, descend the
    /// hemisphere chain, emit the new pole. Shared with the extension.
    fn step_emit(&mut self, state: &CoverState) -> Result<Point, AdversaryError> {
        assert_latest_ball_legal(state, self.step, &self.emitted[self.step - 1])?;
        // the script reasons about the unit ball at the opponent's center
        let avoided = Ball::unit(state.balls[self.step - 1].center.clone());
        let sphere = match &self.hemisphere {
            None => Subsphere::full_sphere(Point::origin(self.dim), 1.0 + self.eps)?,
            Some(h) => hemisphere_boundary(h)?,
        };
        let h = hemisphere_avoiding(&sphere, &avoided)?;
        let p = pole(&h);
        self.check_invariants(&p)?;
        assert_uncovered(state, &p)?;
        self.hemisphere = Some(h);
        self.emitted.push(p.clone());
        self.step += 1;
        Ok(p)
    }

    fn certificate(&self) -> Result<Ball, AdversaryError> {
        let seb = smallest_enclosing_ball(&self.emitted)?;
        // Jung at dimension d-1: the simplex circumradius stays below 1
        if self.dim >= 2 {
            let side = (1.0 + self.eps) * 2f64.sqrt();
            let expect = jung_radius(side, self.dim - 1)?;
            if (seb.radius - expect).abs() > 1e-6 {
                return Err(AdversaryError::ScriptInfeasible("certificate radius off Jung's value"));
            }
        }
        if seb.radius >= 1.0 - 1e-4 {
            return Err(AdversaryError::ScriptInfeasible("certificate radius not below 1"));
        }
        assert_certificate(&seb, &self.emitted)?;
        Ok(seb)
    }
}

impl Adversary for SimplexAdversary {
    fn id(&self) -> &'static str {
        "simplex"
    }

    fn dimension(&self) -> usize {
        self.dim
    }

    fn next(&mut self, state: &CoverState) -> Result<AdversaryMove, AdversaryError> {
        if self.done {
            return Err(AdversaryError::Protocol { expected: self.dim + 1, got: state.balls.len() });
        }
        if self.step == 0 {
            let origin = Point::origin(self.dim);
            assert_uncovered(state, &origin)?;
            self.emitted.push(origin.clone());
            self.step = 1;
            return Ok(AdversaryMove::Emit(origin));
        }
        if self.step <= self.dim {
            let p = self.step_emit(state)?;
            return Ok(AdversaryMove::Emit(p));
        }
        assert_latest_ball_legal(state, self.dim + 1, &self.emitted[self.dim])?;
        let certificate = self.certificate()?;
        self.done = true;
        Ok(AdversaryMove::Stop { certificate })
    }
}

/// The d+2 game for d in {2, 3}: play the simplex game, then place one
/// more point on the sphere of radius 2-R about the enclosing center.
pub struct PlusTwo {
    inner: SimplexAdversary,
    final_point: Option<Point>,
    enclosing: Option<Ball>,
    done: bool,
}

/// eps for the extension; small enough that 2-R exceeds 2/sqrt(3) in both
/// supported dimensions.
pub const PLUS_TWO_EPS: f64 = 0.01;

impl PlusTwo {
    pub fn new(dim: usize) -> Result<Self, AdversaryError> {
        if dim != 2 && dim != 3 {
            return Err(AdversaryError::UnsupportedDimension { adversary: "plus2", got: dim });
        }
        Ok(PlusTwo {
            inner: SimplexAdversary::with_eps(dim, PLUS_TWO_EPS),
            final_point: None,
            enclosing: None,
            done: false,
        })
    }

    /// Uncovered point of the outer sphere, against unit balls at the
    /// opponent's centers.
    fn pick_outer_point(&self, state: &CoverState, outer: f64, c: &Point) -> Result<Point, AdversaryError> {
        let dim = self.inner.dim;
        let unit_balls: Vec<Ball> =
            state.balls.iter().map(|b| Ball::unit(b.center.clone())).collect();
        if dim == 2 {
            let circle = Subsphere::full_sphere(c.clone(), outer)?;
            let arc = circle_uncovered(&circle, &unit_balls)?;
            let mid = arc.largest_gap_midpoint().ok_or(AdversaryError::NoUncoveredArc)?;
            return Ok(arc.point_at(mid));
        }
        // d = 3: drop the ball farthest off-center and take the great
        // circle in the plane through c orthogonal to that direction
        let (k, dist) = state
            .balls
            .iter()
            .map(|b| b.center.dist(c))
            .enumerate()
            .max_by(|(_, a), (_, b)| a.total_cmp(b))
            .expect("opponent placed balls");
        if dist < 1e-9 {
            // fully concentric opponents miss the outer sphere entirely
            return Ok(c.add_scaled(&Point::axis(dim, 0).coords, outer));
        }
        let normal = vecops::normalize(&state.balls[k].center.sub(c)).expect("dist checked");
        let mut basis = Vec::new();
        for i in 0..dim {
            let mut used = vec![normal.clone()];
            used.extend(basis.iter().cloned());
            let res = vecops::project_off(&Point::axis(dim, i).coords, &used);
            if let Some(u) = vecops::normalize(&res) {
                if vecops::norm(&res) > 1e-7 {
                    basis.push(u);
                }
            }
            if basis.len() == 2 {
                break;
            }
        }
        let circle = Subsphere::new(c.clone(), outer, basis)?;
        let arc = circle_uncovered(&circle, &unit_balls)?;
        let mid = arc.largest_gap_midpoint().ok_or(AdversaryError::NoUncoveredArc)?;
        Ok(arc.point_at(mid))
    }
}

impl Adversary for PlusTwo {
    fn id(&self) -> &'static str {
        "plus2"
    }

    fn dimension(&self) -> usize {
        self.inner.dim
    }

    fn next(&mut self, state: &CoverState) -> Result<AdversaryMove, AdversaryError> {
        let dim = self.inner.dim;
        if self.done {
            return Err(AdversaryError::Protocol { expected: dim + 2, got: state.balls.len() });
        }
        if self.inner.step <= dim {
            // drive the inner simplex game without letting it stop
            return self.inner.next(state);
        }
        if self.final_point.is_none() {
            assert_latest_ball_legal(state, dim + 1, &self.inner.emitted[dim])?;
            let seb = smallest_enclosing_ball(&self.inner.emitted)?;
            if seb.radius >= 1.0 {
                return Err(AdversaryError::ScriptInfeasible("inner certificate not below 1"));
            }
            let outer = 2.0 - seb.radius;
            let p = self.pick_outer_point(state, outer, &seb.center)?;
            assert_uncovered(state, &p)?;
            self.final_point = Some(p.clone());
            self.enclosing = Some(seb);
            return Ok(AdversaryMove::Emit(p));
        }
        let p_last = self.final_point.clone().expect("set above");
        assert_latest_ball_legal(state, dim + 2, &p_last)?;
        let seb = self.enclosing.clone().expect("set with final point");
        let dir = vecops::normalize(&p_last.sub(&seb.center)).expect("outer point off center");
        let certificate = Ball::unit(seb.center.add_scaled(&dir, 1.0 - seb.radius));
        let mut all = self.inner.emitted.clone();
        all.push(p_last);
        assert_certificate(&certificate, &all)?;
        self.done = true;
        Ok(AdversaryMove::Stop { certificate })
    }
}
