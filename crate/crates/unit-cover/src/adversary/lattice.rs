//! Lower-bound games on the square and hexagonal lattices.
//!
//! Both scripts force a third ball against any opponent while keeping the
//! emitted points inside one unit disk. The square script is fixed; the
//! hexagonal one is derived once by exhaustive search over lattice points
//! near the first point, against a constraint system whose pieces are
//! statements about lenses (the set of unit-disk centers covering two
//! given points): "every center covering {a, b} is within 1 of c" and "no
//! center covering {a, b} is within 1 of c". Both reduce to extremal
//! distances from a point to a lens, computed in closed form below.

use super::{
    assert_certificate, assert_latest_ball_legal, assert_uncovered, branch_covered, Adversary,
    AdversaryError, AdversaryMove, Frame,
};
use crate::geometry::{vecops, Ball, Point};
use crate::lattice::{hex_point, lattice_points_within, LatticeKind};
use crate::online::CoverState;
use crate::CONTAIN_TOL;
use std::sync::OnceLock;

/// Robustness floor for the "no center within 1" constraints; emission
/// margins stay clear of the tolerance-exploit window under it.
const AVOID_MARGIN: f64 = 1e-3;

/// Slack for the "every center within 1" constraints. The tight cases
/// have anchor distance exactly 2, where the rounded distance turns the
/// point lens into a sliver of width ~sqrt(machine eps); real violations
/// on the lattice are quantized far above this.
const WITHIN_TOL: f64 = 1e-7;

// ---------------------------------------------------------------------------
// lens extremal distances

/// The two corner points of the lens of unit disks at `a` and `b`, or None
/// when the disks are too far apart. For |ab| = 2 both corners collapse
/// onto the midpoint.
fn lens_corners(a: &Point, b: &Point) -> Option<(Point, Point)> {
    let l = a.dist(b);
    if l > 2.0 {
        return None;
    }
    let mid = Point::new(vec![(a[0] + b[0]) / 2.0, (a[1] + b[1]) / 2.0]);
    let h = (1.0 - (l / 2.0) * (l / 2.0)).max(0.0).sqrt();
    let u = vecops::normalize(&b.sub(a)).unwrap_or(vec![1.0, 0.0]);
    let perp = vec![-u[1], u[0]];
    Some((mid.add_scaled(&perp, h), mid.add_scaled(&perp, -h)))
}

/// Extremum of |x - c| over the arc of the unit circle at `o` that lies
/// inside the unit disk at `other`, given the lens corners.
fn arc_extremes(
    o: &Point,
    other: &Point,
    corners: (&Point, &Point),
    c: &Point,
) -> (f64, f64) {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    let mut consider = |p: &Point| {
        let d = p.dist(c);
        lo = lo.min(d);
        hi = hi.max(d);
    };
    consider(corners.0);
    consider(corners.1);
    let dir = c.sub(o);
    if let Some(u) = vecops::normalize(&dir) {
        // nearest and farthest points of the full circle, kept only when
        // they fall on the lens arc (inside the other disk)
        for cand in [o.add_scaled(&u, 1.0), o.add_scaled(&u, -1.0)] {
            if cand.dist(other) <= 1.0 + 1e-12 {
                consider(&cand);
            }
        }
    } else {
        // c at the circle center: every arc point is at distance 1
        lo = lo.min(1.0);
        hi = hi.max(1.0);
    }
    (lo, hi)
}

/// (min, max) of |x - c| over the lens of unit disks at `a` and `b`; None
/// when the lens is empty.
fn lens_dist_range(a: &Point, b: &Point, c: &Point) -> Option<(f64, f64)> {
    let (c1, c2) = lens_corners(a, b)?;
    let (lo_a, hi_a) = arc_extremes(a, b, (&c1, &c2), c);
    let (lo_b, hi_b) = arc_extremes(b, a, (&c1, &c2), c);
    let mut lo = lo_a.min(lo_b);
    let hi = hi_a.max(hi_b);
    // interior point: minimum is zero when c lies in the lens itself
    if c.dist(a) <= 1.0 && c.dist(b) <= 1.0 {
        lo = 0.0;
    }
    Some((lo, hi))
}

/// Every unit-disk center covering {a, b} lies within 1 of c (vacuously
/// true when none exists).
fn lens_within(a: &Point, b: &Point, c: &Point) -> bool {
    match lens_dist_range(a, b, c) {
        Some((_, hi)) => hi <= 1.0 + WITHIN_TOL,
        None => true,
    }
}

/// No unit-disk center covering {a, b} comes within 1 of c, with a
/// robustness margin (vacuously true when none exists).
fn lens_avoids(a: &Point, b: &Point, c: &Point) -> bool {
    match lens_dist_range(a, b, c) {
        Some((lo, _)) => lo >= 1.0 + AVOID_MARGIN,
        None => true,
    }
}

fn in_unit_ball(center: &Point, pts: &[&Point]) -> bool {
    pts.iter().all(|p| p.dist(center) <= 1.0 + CONTAIN_TOL)
}

fn midpoint(a: &Point, b: &Point) -> Point {
    Point::new(vec![(a[0] + b[0]) / 2.0, (a[1] + b[1]) / 2.0])
}

fn centroid3(a: &Point, b: &Point, c: &Point) -> Point {
    Point::new(vec![(a[0] + b[0] + c[0]) / 3.0, (a[1] + b[1] + c[1]) / 3.0])
}

// ---------------------------------------------------------------------------
// square lattice game

/// Script coordinates (integer points): p1 = (0,0); p2 = (1,1) and
/// p3 = (-1,-1) swap under point reflection; then p4 = (2,0), p5 = (0,2).
/// Lens facts validated at construction: the only unit-disk center
/// covering {p1, p4} is (1,0), which lies within 1 of p2, and likewise
/// (0,1) for {p1, p5}; |p2 p3| = 2*sqrt(2) and |p4 p5| = 2*sqrt(2) exceed
/// 2, so no single disk ever covers either pair.
pub struct SquareLatticeAdversary {
    frame: Frame,
    emitted: Vec<Point>,
    phase: usize,
    fourth_was_p4: bool,
}

impl SquareLatticeAdversary {
    pub fn new() -> Self {
        square_script_check();
        SquareLatticeAdversary {
            frame: Frame::identity(2),
            emitted: Vec::new(),
            phase: 0,
            fourth_was_p4: false,
        }
    }

    fn script(&self, x: f64, y: f64) -> Point {
        self.frame.to_world(&Point::new(vec![x, y]))
    }
}

impl Default for SquareLatticeAdversary {
    fn default() -> Self {
        Self::new()
    }
}

fn square_script_check() {
    static CHECKED: OnceLock<()> = OnceLock::new();
    CHECKED.get_or_init(|| {
        let p1 = Point::new(vec![0.0, 0.0]);
        let p2 = Point::new(vec![1.0, 1.0]);
        let p3 = Point::new(vec![-1.0, -1.0]);
        let p4 = Point::new(vec![2.0, 0.0]);
        let p5 = Point::new(vec![0.0, 2.0]);
        assert!(p2.dist(&p3) > 2.0);
        assert!(p4.dist(&p5) > 2.0);
        assert!(lens_within(&p1, &p4, &p2), "lens({{p1,p4}}) must sit within 1 of p2");
        assert!(lens_within(&p1, &p5, &p2), "lens({{p1,p5}}) must sit within 1 of p2");
        assert!(in_unit_ball(&Point::new(vec![1.0, 0.0]), &[&p1, &p2, &p4]));
        assert!(in_unit_ball(&Point::new(vec![0.0, 1.0]), &[&p1, &p2, &p5]));
    });
}

impl Adversary for SquareLatticeAdversary {
    fn id(&self) -> &'static str {
        "lat-square"
    }

    fn dimension(&self) -> usize {
        2
    }

    fn next(&mut self, state: &CoverState) -> Result<AdversaryMove, AdversaryError> {
        match self.phase {
            0 => {
                self.phase = 1;
                let p1 = self.script(0.0, 0.0);
                assert_uncovered(state, &p1)?;
                self.emitted.push(p1.clone());
                Ok(AdversaryMove::Emit(p1))
            }
            1 => {
                assert_latest_ball_legal(state, 1, &self.emitted[0])?;
                // D1 misses (1,1) or (-1,-1); reflect so the missed one
                // plays the p2 role
                if branch_covered(state, 0, &self.script(1.0, 1.0)) {
                    self.frame.reflect_axis(0);
                    self.frame.reflect_axis(1);
                }
                self.phase = 2;
                let p2 = self.script(1.0, 1.0);
                assert_uncovered(state, &p2)?;
                self.emitted.push(p2.clone());
                Ok(AdversaryMove::Emit(p2))
            }
            2 => {
                assert_latest_ball_legal(state, 2, &self.emitted[1])?;
                let p4 = self.script(2.0, 0.0);
                let third = if branch_covered(state, 1, &p4) {
                    self.fourth_was_p4 = false;
                    self.script(0.0, 2.0)
                } else {
                    self.fourth_was_p4 = true;
                    p4
                };
                self.phase = 3;
                assert_uncovered(state, &third)?;
                self.emitted.push(third.clone());
                Ok(AdversaryMove::Emit(third))
            }
            3 => {
                assert_latest_ball_legal(state, 3, &self.emitted[2])?;
                let certificate = if self.fourth_was_p4 {
                    Ball::unit(self.script(1.0, 0.0))
                } else {
                    Ball::unit(self.script(0.0, 1.0))
                };
                assert_certificate(&certificate, &self.emitted)?;
                self.phase = 4;
                Ok(AdversaryMove::Stop { certificate })
            }
            _ => Err(AdversaryError::Protocol { expected: 3, got: state.balls.len() }),
        }
    }
}

// ---------------------------------------------------------------------------
// hexagonal lattice game

/// The derived script: seven lattice points and the mirror that swaps p2
/// and p3 while fixing p1 = (0, 0).
#[derive(Debug, Clone)]
pub struct HexScript {
    pub points: [Point; 7],
    pub mirror: [[f64; 2]; 2],
}

/// One-time exhaustive search for script coordinates satisfying the case
/// tree's constraint system over lattice points within distance 5 of p1:
///
/// (a) |p2 p3| = 2*sqrt(3) and a lattice mirror fixing p1 swaps them;
/// (b) every center covering {p1, p4} is within 1 of p3, and {p1, p3, p4}
///     fit in the unit disk at (p1+p4)/2;
/// (c) no center covering {p3, p4} is within 1 of p5, and {p1, p3, p5}
///     fit in the unit disk at their centroid;
/// (d) every center covering {p1, p6} is within 1 of p3;
/// (e) {p1, p3, p6} fit in the unit disk at (p1+p6)/2;
/// (f) no center covering {p1, p5} or {p3, p6} is within 1 of p7, and
///     {p1, p3, p7} fit in the unit disk at their centroid.
pub fn derive_hex_script() -> Result<&'static HexScript, AdversaryError> {
    static SCRIPT: OnceLock<Result<HexScript, AdversaryError>> = OnceLock::new();
    SCRIPT
        .get_or_init(search_hex_script)
        .as_ref()
        .map_err(|_| AdversaryError::ScriptInfeasible("hexagonal constraint system unsatisfied"))
}

fn mirror_matrix(k: usize) -> [[f64; 2]; 2] {
    // reflection about the line through the origin at angle k * 30 degrees
    let t = 2.0 * (k as f64) * std::f64::consts::PI / 6.0;
    [[t.cos(), t.sin()], [t.sin(), -t.cos()]]
}

fn apply2(m: &[[f64; 2]; 2], p: &Point) -> Point {
    Point::new(vec![
        m[0][0] * p[0] + m[0][1] * p[1],
        m[1][0] * p[0] + m[1][1] * p[1],
    ])
}

fn search_hex_script() -> Result<HexScript, AdversaryError> {
    let p1 = hex_point(0, 0);
    let pts = lattice_points_within(LatticeKind::Hex, 5.0);
    let two_sqrt3 = 2.0 * crate::lattice::SQRT3;
    let distinct = |cand: &Point, prior: &[&Point]| prior.iter().all(|p| p.dist(cand) > 1e-9);

    for p3 in &pts {
        if p3.dist(&p1) < 1e-9 || p3.dist(&p1) > 2.0 {
            continue;
        }
        for p2 in &pts {
            if (p2.dist(p3) - two_sqrt3).abs() > 1e-9 || !distinct(p2, &[&p1, p3]) {
                continue;
            }
            let Some(mirror) = (0..6)
                .map(mirror_matrix)
                .find(|m| apply2(m, p2).dist(p3) < 1e-9)
            else {
                continue;
            };
            for p4 in &pts {
                if !distinct(p4, &[&p1, p2, p3])
                    || !in_unit_ball(&midpoint(&p1, p4), &[&p1, p3, p4])
                    || !lens_within(&p1, p4, p3)
                {
                    continue;
                }
                for p5 in &pts {
                    if !distinct(p5, &[&p1, p2, p3, p4])
                        || !in_unit_ball(&centroid3(&p1, p3, p5), &[&p1, p3, p5])
                        || !lens_avoids(p3, p4, p5)
                    {
                        continue;
                    }
                    for p6 in &pts {
                        if !distinct(p6, &[&p1, p2, p3, p4, p5])
                            || !in_unit_ball(&midpoint(&p1, p6), &[&p1, p3, p6])
                            || !lens_within(&p1, p6, p3)
                        {
                            continue;
                        }
                        for p7 in &pts {
                            if !distinct(p7, &[&p1, p2, p3, p4, p5, p6])
                                || !in_unit_ball(&centroid3(&p1, p3, p7), &[&p1, p3, p7])
                                || !lens_avoids(&p1, p5, p7)
                                || !lens_avoids(p3, p6, p7)
                            {
                                continue;
                            }
                            return Ok(HexScript {
                                points: [
                                    p1.clone(),
                                    p2.clone(),
                                    p3.clone(),
                                    p4.clone(),
                                    p5.clone(),
                                    p6.clone(),
                                    p7.clone(),
                                ],
                                mirror,
                            });
                        }
                    }
                }
            }
        }
    }
    Err(AdversaryError::ScriptInfeasible("no lattice tuple satisfies the case tree"))
}

/// Adaptive game on the hexagonal lattice, replaying the derived script's
/// case tree against the opponent's actual balls.
pub struct HexLatticeAdversary {
    script: &'static HexScript,
    frame: Frame,
    emitted: Vec<Point>,
    phase: usize,
    certificate_center: Option<Point>,
}

impl HexLatticeAdversary {
    pub fn new() -> Result<Self, AdversaryError> {
        Ok(HexLatticeAdversary {
            script: derive_hex_script()?,
            frame: Frame::identity(2),
            emitted: Vec::new(),
            phase: 0,
            certificate_center: None,
        })
    }

    fn world(&self, idx: usize) -> Point {
        self.frame.to_world(&self.script.points[idx])
    }
}

impl Adversary for HexLatticeAdversary {
    fn id(&self) -> &'static str {
        "lat-hex"
    }

    fn dimension(&self) -> usize {
        2
    }

    fn next(&mut self, state: &CoverState) -> Result<AdversaryMove, AdversaryError> {
        match self.phase {
            0 => {
                self.phase = 1;
                let p1 = self.world(0);
                assert_uncovered(state, &p1)?;
                self.emitted.push(p1.clone());
                Ok(AdversaryMove::Emit(p1))
            }
            1 => {
                assert_latest_ball_legal(state, 1, &self.emitted[0])?;
                // D1 misses one of {p2, p3}; mirror so it misses the p3 role
                if branch_covered(state, 0, &self.world(2)) {
                    let m = self.script.mirror;
                    self.frame.columns = vec![vec![m[0][0], m[1][0]], vec![m[0][1], m[1][1]]];
                }
                self.phase = 2;
                let p3 = self.world(2);
                assert_uncovered(state, &p3)?;
                self.emitted.push(p3.clone());
                Ok(AdversaryMove::Emit(p3))
            }
            2 => {
                assert_latest_ball_legal(state, 2, &self.emitted[1])?;
                let (p1, p3) = (self.world(0), self.world(2));
                let (p4, p5, p6, p7) = (self.world(3), self.world(4), self.world(5), self.world(6));
                let (third, cert) = if !branch_covered(state, 1, &p4) {
                    // case 1: D2 misses p4 (and D1 does too, or it would
                    // reach p3)
                    (p4.clone(), midpoint(&p1, &p4))
                } else if !branch_covered(state, 0, &p5) {
                    // case 2.1: D2 took p4 so it misses p5; D1 misses it too
                    (p5.clone(), centroid3(&p1, &p3, &p5))
                } else if !branch_covered(state, 1, &p6) {
                    // case 2.2a: D1 holds p5 so it cannot reach p6
                    (p6.clone(), midpoint(&p1, &p6))
                } else {
                    // case 2.2b: D1 holds p5 and D2 holds p6; neither
                    // reaches p7
                    (p7.clone(), centroid3(&p1, &p3, &p7))
                };
                self.phase = 3;
                assert_uncovered(state, &third)?;
                self.emitted.push(third.clone());
                self.certificate_center = Some(cert);
                Ok(AdversaryMove::Emit(third))
            }
            3 => {
                assert_latest_ball_legal(state, 3, &self.emitted[2])?;
                let certificate = Ball::unit(self.certificate_center.clone().expect("phase 2 set it"));
                assert_certificate(&certificate, &self.emitted)?;
                self.phase = 4;
                Ok(AdversaryMove::Stop { certificate })
            }
            _ => Err(AdversaryError::Protocol { expected: 3, got: state.balls.len() }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn lens_range_matches_monte_carlo() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..200 {
            let a = Point::new(vec![rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)]);
            let b = Point::new(vec![rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)]);
            let c = Point::new(vec![rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)]);
            if a.dist(&b) > 2.0 {
                continue;
            }
            let (lo, hi) = lens_dist_range(&a, &b, &c).unwrap();
            // rejection-sample the lens
            let (mut mc_lo, mut mc_hi) = (f64::INFINITY, f64::NEG_INFINITY);
            let mut hits = 0usize;
            let mid = midpoint(&a, &b);
            for _ in 0..4000 {
                let x = Point::new(vec![
                    mid[0] + rng.gen_range(-1.0..1.0),
                    mid[1] + rng.gen_range(-1.0..1.0),
                ]);
                if x.dist(&a) <= 1.0 && x.dist(&b) <= 1.0 {
                    let d = x.dist(&c);
                    mc_lo = mc_lo.min(d);
                    mc_hi = mc_hi.max(d);
                    hits += 1;
                }
            }
            if hits > 0 {
                // the analytic range brackets every sampled distance
                assert!(lo <= mc_lo + 1e-6, "lo {lo} vs sampled {mc_lo}");
                assert!(hi >= mc_hi - 1e-6, "hi {hi} vs sampled {mc_hi}");
            }
            if hits > 500 {
                // and with dense sampling it is tight
                assert!(mc_lo - lo < 0.2 && hi - mc_hi < 0.2, "loose range on {hits} hits");
            }
        }
    }

    #[test]
    fn degenerate_lens_is_the_midpoint() {
        let a = Point::new(vec![0.0, 0.0]);
        let b = Point::new(vec![2.0, 0.0]);
        let c = Point::new(vec![1.0, 1.0]);
        let (lo, hi) = lens_dist_range(&a, &b, &c).unwrap();
        assert_relative_eq!(lo, 1.0, epsilon = 1e-12);
        assert_relative_eq!(hi, 1.0, epsilon = 1e-12);
        assert!(lens_dist_range(&a, &Point::new(vec![2.1, 0.0]), &c).is_none());
    }

    #[test]
    fn square_script_facts() {
        square_script_check();
        let c = Point::new(vec![1.0, 0.0]);
        for p in [
            Point::new(vec![0.0, 0.0]),
            Point::new(vec![1.0, 1.0]),
            Point::new(vec![2.0, 0.0]),
        ] {
            assert_relative_eq!(c.dist(&p), 1.0, epsilon = 1e-12);
        }
        assert_relative_eq!(
            Point::new(vec![1.0, 1.0]).dist(&Point::new(vec![-1.0, -1.0])),
            2.0 * 2f64.sqrt(),
            epsilon = 1e-12
        );
    }

    #[test]
    fn hex_script_derives_and_validates() {
        let script = derive_hex_script().expect("constraint system satisfiable");
        let [p1, p2, p3, p4, p5, p6, p7] = &script.points;
        assert!(p1.norm() < 1e-12);
        assert_relative_eq!(p2.dist(p3), 2.0 * crate::lattice::SQRT3, epsilon = 1e-9);
        // mirror swaps p2 and p3 and fixes the lattice
        assert!(apply2(&script.mirror, p2).dist(p3) < 1e-9);
        assert!(apply2(&script.mirror, p3).dist(p2) < 1e-9);
        for p in &script.points {
            assert!(crate::lattice::hex_lattice_coords(p).is_some(), "{p:?} off lattice");
            let moved = apply2(&script.mirror, p);
            assert!(crate::lattice::hex_lattice_coords(&moved).is_some(), "mirror leaves lattice");
        }
        // the case-1 certificate has p1 and p4 on its boundary
        assert_relative_eq!(p1.dist(p4), 2.0, epsilon = 1e-9);
        // {p1, p3, p5} is the equilateral sqrt(3) triple with circumradius 1
        let cert = centroid3(p1, p3, p5);
        for p in [p1, p3, p5] {
            assert_relative_eq!(cert.dist(p), 1.0, epsilon = 1e-9);
        }
        let _ = (p6, p7);
    }
}
