//! The planar four-ball game.
//!
//! With eps = 0.01, the script forces four balls out of any deterministic
//! opponent while keeping all four points inside one unit disk:
//!
//! - p1 at the frame origin; after D1 the frame is renormalized so the
//!   opponent's center sits at (0,0) with p1 on the nonnegative x-axis,
//! - p2 = (1 + eps^2, 0), outside D1 by eps^2,
//! - after D2 the frame is reflected about the x-axis (which carries p1,
//!   p2 and c1) so that y(c2) <= 0,
//! - p3 = (0, 1 + eps), outside D1 and outside D2 because y(c2) <= 0,
//! - p4 is r = (1+eps, 1+eps) when D3 covers q = (-1+eps, sqrt(2 eps)),
//!   and q otherwise; q and r are more than 2 apart so D3 never covers
//!   both, and neither is reachable by D1 or D2.
//!
//! Certificates: the unit disk at (1/2, 1/2) in the r-case, the unit disk
//! at the midpoint of q p2 in the q-case.

use super::{
    assert_certificate, assert_latest_ball_legal, assert_uncovered, branch_covered, Adversary,
    AdversaryError, AdversaryMove, Frame,
};
use crate::geometry::{Ball, Point};
use crate::online::CoverState;

pub const PLANAR_EPS: f64 = 0.01;

enum Phase {
    EmitFirst,
    EmitSecond,
    EmitThird,
    EmitFourth,
    Finish,
    Done,
}

pub struct PlanarFour {
    eps: f64,
    frame: Frame,
    emitted: Vec<Point>,
    phase: Phase,
}

impl PlanarFour {
    pub fn new() -> Self {
        PlanarFour {
            eps: PLANAR_EPS,
            frame: Frame::identity(2),
            emitted: Vec::new(),
            phase: Phase::EmitFirst,
        }
    }

    fn script(&self, x: f64, y: f64) -> Point {
        self.frame.to_world(&Point::new(vec![x, y]))
    }

    fn q_script(&self) -> (f64, f64) {
        (-1.0 + self.eps, (2.0 * self.eps).sqrt())
    }

    fn emit(&mut self, state: &CoverState, p: Point) -> Result<AdversaryMove, AdversaryError> {
        assert_uncovered(state, &p)?;
        self.emitted.push(p.clone());
        Ok(AdversaryMove::Emit(p))
    }
}

impl Default for PlanarFour {
    fn default() -> Self {
        Self::new()
    }
}

impl Adversary for PlanarFour {
    fn id(&self) -> &'static str {
        "planar4"
    }

    fn dimension(&self) -> usize {
        2
    }

    fn next(&mut self, state: &CoverState) -> Result<AdversaryMove, AdversaryError> {
        match self.phase {
            Phase::EmitFirst => {
                self.phase = Phase::EmitSecond;
                let p1 = self.script(0.0, 0.0);
                self.emit(state, p1)
            }
            Phase::EmitSecond => {
                assert_latest_ball_legal(state, 1, &self.emitted[0])?;
                // renormalize: c1 at the origin, p1 on the nonnegative x-axis
                let c1 = &state.balls[0].center;
                let p1 = self.emitted[0].clone();
                let offset = p1.sub(c1);
                let x_axis = match crate::geometry::vecops::normalize(&offset) {
                    Some(u) if p1.dist(c1) > 1e-9 => u,
                    _ => vec![1.0, 0.0],
                };
                let y_axis = vec![-x_axis[1], x_axis[0]];
                self.frame = Frame { columns: vec![x_axis, y_axis], translation: c1.coords.clone() };
                self.phase = Phase::EmitThird;
                let p2 = self.script(1.0 + self.eps * self.eps, 0.0);
                self.emit(state, p2)
            }
            Phase::EmitThird => {
                assert_latest_ball_legal(state, 2, &self.emitted[1])?;
                // reflect so that y(c2) <= 0; the x-axis carries p1, p2, c1
                let c2 = self.frame.to_script(&state.balls[1].center);
                if c2[1] > 0.0 {
                    self.frame.reflect_axis(1);
                }
                self.phase = Phase::EmitFourth;
                let p3 = self.script(0.0, 1.0 + self.eps);
                self.emit(state, p3)
            }
            Phase::EmitFourth => {
                assert_latest_ball_legal(state, 3, &self.emitted[2])?;
                let (qx, qy) = self.q_script();
                let q = self.script(qx, qy);
                let r = self.script(1.0 + self.eps, 1.0 + self.eps);
                // D3 cannot cover both: |q r| > 2
                let p4 = if branch_covered(state, 2, &q) { r } else { q };
                self.phase = Phase::Finish;
                self.emit(state, p4)
            }
            Phase::Finish => {
                assert_latest_ball_legal(state, 4, &self.emitted[3])?;
                let (qx, qy) = self.q_script();
                let q = self.script(qx, qy);
                let certificate = if self.emitted[3].dist(&q) < 1e-9 {
                    // case p4 = q: unit disk at the midpoint of q p2
                    let p2s = 1.0 + self.eps * self.eps;
                    Ball::unit(self.script((qx + p2s) / 2.0, qy / 2.0))
                } else {
                    // case p4 = r: unit disk at (1/2, 1/2)
                    Ball::unit(self.script(0.5, 0.5))
                };
                assert_certificate(&certificate, &self.emitted)?;
                self.phase = Phase::Done;
                Ok(AdversaryMove::Stop { certificate })
            }
            Phase::Done => Err(AdversaryError::Protocol { expected: 4, got: state.balls.len() }),
        }
    }
}
