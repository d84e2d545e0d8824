//! Lattice-specialized covering algorithms and the partition verifier.
//!
//! Square lattice: Z^2 is grouped into staggered 2x2 bricks, each covered
//! by the unit disk at the brick center (the four points sit at distance
//! sqrt(2)/2). Consecutive brick rows are offset by one column, which is
//! what keeps any unit disk from touching more than three groups.
//!
//! Hexagonal lattice: the unit-spacing triangular lattice
//! `{ i*(1,0) + j*(1/2, sqrt(3)/2) }`. Points are grouped into 7-point
//! flowers (a center and its six neighbors); flower centers form the
//! index-7 sublattice spanned by (2, sqrt(3)) and (-1/2, 3*sqrt(3)/2),
//! whose minimal vector length sqrt(7) exceeds every distance between two
//! flower members, so the seven offsets tile. Each flower fits in the unit
//! disk at its center with the outer six points exactly on the boundary.
//!
//! `verify_partition` brute-forces the claim that no unit disk meets more
//! than three groups, by enumerating every disk position that can be
//! anchored by up to three covered points.

use crate::geometry::{covers, Ball, Norm, Point};
use crate::online::{CoverDecision, CoverState, OnlineAlgorithm, OnlineError};
use crate::{CONTAIN_TOL, LATTICE_SNAP};
use std::collections::{HashMap, HashSet};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum LatticeError {
    #[error("unknown lattice kind {0:?}")]
    UnknownLattice(String),
    #[error("search radius must be at least 4, got {0}")]
    RadiusTooSmall(f64),
}

pub const SQRT3: f64 = 1.732_050_807_568_877_2;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LatticeKind {
    Square,
    Hex,
}

impl LatticeKind {
    pub fn parse(s: &str) -> Result<Self, LatticeError> {
        match s {
            "square" => Ok(LatticeKind::Square),
            "hex" => Ok(LatticeKind::Hex),
            other => Err(LatticeError::UnknownLattice(other.to_string())),
        }
    }
}

fn near_integer(x: f64) -> Option<i64> {
    let r = x.round();
    ((x - r).abs() <= LATTICE_SNAP).then_some(r as i64)
}

// ---------------------------------------------------------------------------
// square lattice

/// Staggered-brick group of an integer point: r = floor(y/2), s = r mod 2,
/// gx = floor((x-s)/2). The group's disk is centered at
/// (2*gx + s + 1/2, 2*r + 1/2).
pub fn square_lattice_group(p: &Point) -> Result<(i64, i64), OnlineError> {
    let (x, y) = square_lattice_coords(p).ok_or_else(|| OnlineError::OffLattice(p.coords.clone()))?;
    Ok(square_group_of(x, y))
}

fn square_lattice_coords(p: &Point) -> Option<(i64, i64)> {
    if p.dim() != 2 {
        return None;
    }
    Some((near_integer(p[0])?, near_integer(p[1])?))
}

fn square_group_of(x: i64, y: i64) -> (i64, i64) {
    let r = y.div_euclid(2);
    let s = r.rem_euclid(2);
    let gx = (x - s).div_euclid(2);
    (gx, r)
}

/// Unit disk covering the four points of a staggered-brick group.
pub fn square_group_disk(group: (i64, i64)) -> Ball {
    let (gx, r) = group;
    let s = r.rem_euclid(2);
    Ball::unit(Point::new(vec![
        (2 * gx + s) as f64 + 0.5,
        (2 * r) as f64 + 0.5,
    ]))
}

// ---------------------------------------------------------------------------
// hexagonal (triangular) lattice

/// Lattice basis: a = (1, 0), b = (1/2, sqrt(3)/2).
pub fn hex_point(i: i64, j: i64) -> Point {
    Point::new(vec![i as f64 + j as f64 * 0.5, j as f64 * SQRT3 / 2.0])
}

/// Inverse of [`hex_point`] with snap tolerance.
pub fn hex_lattice_coords(p: &Point) -> Option<(i64, i64)> {
    if p.dim() != 2 {
        return None;
    }
    let j = near_integer(p[1] * 2.0 / SQRT3)?;
    let i = near_integer(p[0] - j as f64 * 0.5)?;
    Some((i, j))
}

/// Flower-center sublattice basis, in (a, b) lattice coordinates:
/// v1 = a + 2b, v2 = -2a + 3b. Both have squared length 7.
const FLOWER_V1: (i64, i64) = (1, 2);
const FLOWER_V2: (i64, i64) = (-2, 3);

/// The seven residues of a flower: the center and its six neighbors.
const FLOWER_OFFSETS: [(i64, i64); 7] =
    [(0, 0), (1, 0), (-1, 0), (0, 1), (0, -1), (1, -1), (-1, 1)];

/// Flower group of a triangular-lattice point, as the flower center's
/// integer coordinates in the (v1, v2) sublattice basis.
pub fn hex_lattice_group(p: &Point) -> Result<(i64, i64), OnlineError> {
    let (i, j) = hex_lattice_coords(p).ok_or_else(|| OnlineError::OffLattice(p.coords.clone()))?;
    Ok(hex_group_of(i, j))
}

fn hex_group_of(i: i64, j: i64) -> (i64, i64) {
    // solve (i, j) = u*v1 + v*v2 + offset over the 7 offsets; det = 7
    for (oi, oj) in FLOWER_OFFSETS {
        let di = i - oi;
        let dj = j - oj;
        // [di, dj] = u*(1,2) + v*(-2,3)  =>  u = (3di + 2dj)/7, v = (dj - 2di)/7
        let un = 3 * di + 2 * dj;
        let vn = dj - 2 * di;
        if un.rem_euclid(7) == 0 && vn.rem_euclid(7) == 0 {
            return (un.div_euclid(7), vn.div_euclid(7));
        }
    }
    unreachable!("the seven flower offsets form a complete residue system");
}

/// Unit disk covering the seven points of a flower; the six outer points
/// lie exactly on its boundary.
pub fn hex_group_disk(group: (i64, i64)) -> Ball {
    let (u, v) = group;
    let i = u * FLOWER_V1.0 + v * FLOWER_V2.0;
    let j = u * FLOWER_V1.1 + v * FLOWER_V2.1;
    Ball::unit(hex_point(i, j))
}

// ---------------------------------------------------------------------------
// the two online algorithms

/// Brick-partition algorithm for Z^2. Off-lattice points fall back to the
/// Centered rule so the algorithm stays a total opponent in adversary
/// games whose scripts leave the lattice.
pub struct LatticeSquare {
    groups: HashMap<(i64, i64), usize>,
}

impl LatticeSquare {
    pub fn new() -> Self {
        LatticeSquare { groups: HashMap::new() }
    }
}

impl Default for LatticeSquare {
    fn default() -> Self {
        Self::new()
    }
}

/// Flower-partition algorithm for the triangular lattice, with the same
/// Centered fallback off the lattice.
pub struct LatticeHex {
    groups: HashMap<(i64, i64), usize>,
}

impl LatticeHex {
    pub fn new() -> Self {
        LatticeHex { groups: HashMap::new() }
    }
}

impl Default for LatticeHex {
    fn default() -> Self {
        Self::new()
    }
}

fn lattice_decide(
    state: &CoverState,
    p: &Point,
    group: Option<(i64, i64)>,
    groups: &mut HashMap<(i64, i64), usize>,
    disk_of: impl Fn((i64, i64)) -> Ball,
) -> CoverDecision {
    match group {
        Some(g) => {
            if let Some(&i) = groups.get(&g) {
                CoverDecision::Assign(i)
            } else {
                groups.insert(g, state.balls.len());
                CoverDecision::Open(disk_of(g))
            }
        }
        // centered fallback off the lattice
        None => crate::online::centered_step(state, p),
    }
}

impl OnlineAlgorithm for LatticeSquare {
    fn id(&self) -> &'static str {
        "lattice-square"
    }

    fn decide(&mut self, state: &CoverState, p: &Point) -> Result<CoverDecision, OnlineError> {
        if p.dim() != 2 {
            return Err(OnlineError::UnsupportedDimension {
                algorithm: "lattice-square",
                required: 2,
                got: p.dim(),
            });
        }
        let group = square_lattice_coords(p).map(|(x, y)| square_group_of(x, y));
        Ok(lattice_decide(state, p, group, &mut self.groups, square_group_disk))
    }
}

impl OnlineAlgorithm for LatticeHex {
    fn id(&self) -> &'static str {
        "lattice-hex"
    }

    fn decide(&mut self, state: &CoverState, p: &Point) -> Result<CoverDecision, OnlineError> {
        if p.dim() != 2 {
            return Err(OnlineError::UnsupportedDimension {
                algorithm: "lattice-hex",
                required: 2,
                got: p.dim(),
            });
        }
        let group = hex_lattice_coords(p).map(|(i, j)| hex_group_of(i, j));
        Ok(lattice_decide(state, p, group, &mut self.groups, hex_group_disk))
    }
}

// ---------------------------------------------------------------------------
// partition verification

/// All lattice points within `radius` of the origin.
pub fn lattice_points_within(kind: LatticeKind, radius: f64) -> Vec<Point> {
    let mut out = Vec::new();
    match kind {
        LatticeKind::Square => {
            let r = radius.floor() as i64;
            for x in -r..=r {
                for y in -r..=r {
                    let p = Point::new(vec![x as f64, y as f64]);
                    if p.norm() <= radius + 1e-12 {
                        out.push(p);
                    }
                }
            }
        }
        LatticeKind::Hex => {
            let jmax = (radius * 2.0 / SQRT3).ceil() as i64 + 1;
            for j in -jmax..=jmax {
                let imax = radius.ceil() as i64 + jmax;
                for i in -imax..=imax {
                    let p = hex_point(i, j);
                    if p.norm() <= radius + 1e-12 {
                        out.push(p);
                    }
                }
            }
        }
    }
    out
}

fn group_of(kind: LatticeKind, p: &Point) -> (i64, i64) {
    match kind {
        LatticeKind::Square => square_lattice_group(p).expect("window point is on lattice"),
        LatticeKind::Hex => hex_lattice_group(p).expect("window point is on lattice"),
    }
}

/// Candidate disk centers anchored by at most three covered points: every
/// lattice point, the midpoint of every pair at distance <= 2, and the
/// circumcenter of every triple with circumradius <= 1. A disk maximizing
/// the covered set can be translated until some such anchor pins it.
fn candidate_centers(anchors: &[Point]) -> Vec<Point> {
    let mut seen: HashSet<(i64, i64)> = HashSet::new();
    let mut out: Vec<Point> = Vec::new();
    let mut push = |x: f64, y: f64, out: &mut Vec<Point>| {
        let key = ((x * 1e9).round() as i64, (y * 1e9).round() as i64);
        if seen.insert(key) {
            out.push(Point::new(vec![x, y]));
        }
    };
    let n = anchors.len();
    for p in anchors {
        push(p[0], p[1], &mut out);
    }
    for i in 0..n {
        for j in 0..i {
            let (p, q) = (&anchors[i], &anchors[j]);
            if p.dist(q) <= 2.0 + CONTAIN_TOL {
                push((p[0] + q[0]) / 2.0, (p[1] + q[1]) / 2.0, &mut out);
            }
        }
    }
    for i in 0..n {
        for j in 0..i {
            if anchors[i].dist(&anchors[j]) > 2.0 + CONTAIN_TOL {
                continue;
            }
            for k in 0..j {
                let (a, b, c) = (&anchors[i], &anchors[j], &anchors[k]);
                if a.dist(c) > 2.0 + CONTAIN_TOL || b.dist(c) > 2.0 + CONTAIN_TOL {
                    continue;
                }
                if let Some((x, y, r)) = circumcenter(a, b, c) {
                    if r <= 1.0 + CONTAIN_TOL {
                        push(x, y, &mut out);
                    }
                }
            }
        }
    }
    out
}

fn circumcenter(a: &Point, b: &Point, c: &Point) -> Option<(f64, f64, f64)> {
    let d = 2.0 * (a[0] * (b[1] - c[1]) + b[0] * (c[1] - a[1]) + c[0] * (a[1] - b[1]));
    if d.abs() < 1e-12 {
        return None;
    }
    let a2 = a[0] * a[0] + a[1] * a[1];
    let b2 = b[0] * b[0] + b[1] * b[1];
    let c2 = c[0] * c[0] + c[1] * c[1];
    let ux = (a2 * (b[1] - c[1]) + b2 * (c[1] - a[1]) + c2 * (a[1] - b[1])) / d;
    let uy = (a2 * (c[0] - b[0]) + b2 * (a[0] - c[0]) + c2 * (b[0] - a[0])) / d;
    let r = ((a[0] - ux).powi(2) + (a[1] - uy).powi(2)).sqrt();
    Some((ux, uy, r))
}

fn groups_covered(center: &Point, points: &[Point], groups: &[(i64, i64)]) -> usize {
    let disk = Ball::unit(center.clone());
    let mut seen: HashSet<(i64, i64)> = HashSet::new();
    for (p, g) in points.iter().zip(groups) {
        if covers(&disk, Norm::L2, p, CONTAIN_TOL) {
            seen.insert(*g);
        }
    }
    seen.len()
}

/// Window points, their group ids, and the candidate disk centers.
type PartitionInputs = (Vec<Point>, Vec<(i64, i64)>, Vec<Point>);

fn partition_inputs(kind: LatticeKind, search_radius: f64) -> Result<PartitionInputs, LatticeError> {
    if search_radius < 4.0 {
        return Err(LatticeError::RadiusTooSmall(search_radius));
    }
    let points = lattice_points_within(kind, search_radius);
    let groups: Vec<(i64, i64)> = points.iter().map(|p| group_of(kind, p)).collect();
    // anchors stay 3 away from the rim so every covered point and its
    // whole group disk sit inside the window
    let anchors: Vec<Point> = points
        .iter()
        .filter(|p| p.norm() <= search_radius - 3.0 + 1e-12)
        .cloned()
        .collect();
    let candidates = candidate_centers(&anchors);
    Ok((points, groups, candidates))
}

/// Exhaustive upper bound on how many distinct groups a single unit disk
/// can cover. Sequential implementation.
pub fn verify_partition_seq(kind: LatticeKind, search_radius: f64) -> Result<usize, LatticeError> {
    let (points, groups, candidates) = partition_inputs(kind, search_radius)?;
    Ok(candidates
        .iter()
        .map(|c| groups_covered(c, &points, &groups))
        .max()
        .unwrap_or(0))
}

/// Parallel implementation over the candidate centers.
#[cfg(feature = "parallel")]
pub fn verify_partition_par(kind: LatticeKind, search_radius: f64) -> Result<usize, LatticeError> {
    use rayon::prelude::*;
    let (points, groups, candidates) = partition_inputs(kind, search_radius)?;
    Ok(candidates
        .par_iter()
        .map(|c| groups_covered(c, &points, &groups))
        .max()
        .unwrap_or(0))
}

/// Exhaustive upper bound on the number of distinct groups one unit disk
/// can cover; 3 certifies the ratio-3 analysis of both lattice algorithms.
pub fn verify_partition(kind: LatticeKind, search_radius: f64) -> Result<usize, LatticeError> {
    #[cfg(feature = "parallel")]
    {
        verify_partition_par(kind, search_radius)
    }
    #[cfg(not(feature = "parallel"))]
    {
        verify_partition_seq(kind, search_radius)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn square_group_examples() {
        assert_eq!(square_lattice_group(&Point::new(vec![0.0, 0.0])).unwrap(), (0, 0));
        assert_eq!(square_group_disk((0, 0)).center, Point::new(vec![0.5, 0.5]));

        let g = square_lattice_group(&Point::new(vec![2.0, 3.0])).unwrap();
        assert_eq!(g, (0, 1));
        let disk = square_group_disk(g);
        assert_eq!(disk.center, Point::new(vec![1.5, 2.5]));
        for (x, y) in [(1.0, 2.0), (2.0, 2.0), (1.0, 3.0), (2.0, 3.0)] {
            let p = Point::new(vec![x, y]);
            assert_eq!(square_group_of(x as i64, y as i64), g);
            assert_relative_eq!(p.dist(&disk.center), 2f64.sqrt() / 2.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn square_group_rejects_off_lattice() {
        assert!(square_lattice_group(&Point::new(vec![0.5, 0.0])).is_err());
    }

    #[test]
    fn every_square_group_member_is_inside_its_disk() {
        for p in lattice_points_within(LatticeKind::Square, 6.0) {
            let disk = square_group_disk(square_lattice_group(&p).unwrap());
            assert!(p.dist(&disk.center) <= 2f64.sqrt() / 2.0 + 1e-12);
        }
    }

    #[test]
    fn hex_coords_roundtrip() {
        for i in -5..=5 {
            for j in -5..=5 {
                let p = hex_point(i, j);
                assert_eq!(hex_lattice_coords(&p), Some((i, j)));
            }
        }
        assert_eq!(hex_lattice_coords(&Point::new(vec![0.3, 0.3])), None);
        assert!(hex_lattice_group(&Point::new(vec![0.3, 0.3])).is_err());
    }

    #[test]
    fn flower_offsets_are_a_complete_residue_system() {
        // every lattice point lands in exactly one flower, and its disk
        // covers it with the outer ring exactly on the boundary
        for i in -8..=8i64 {
            for j in -8..=8i64 {
                let p = hex_point(i, j);
                let g = hex_group_of(i, j);
                let disk = hex_group_disk(g);
                let dist = p.dist(&disk.center);
                assert!(
                    dist < 1e-9 || (dist - 1.0).abs() < 1e-9,
                    "point {p:?} not a flower member of {g:?}"
                );
            }
        }
    }

    #[test]
    fn flower_of_origin_groups_its_neighbors() {
        let members: Vec<Point> = FLOWER_OFFSETS.iter().map(|&(i, j)| hex_point(i, j)).collect();
        let g0 = hex_group_of(0, 0);
        for m in &members {
            assert_eq!(hex_lattice_group(m).unwrap(), g0);
        }
        // algorithm behavior: one open, six assigns
        let mut algo = LatticeHex::new();
        let mut state = CoverState::new(2, Norm::L2);
        let mut opens = 0;
        for m in &members {
            let d = algo.decide(&state, m).unwrap();
            if matches!(d, CoverDecision::Open(_)) {
                opens += 1;
            }
            state.apply(&d);
        }
        assert_eq!(opens, 1);
        assert_eq!(state.balls.len(), 1);
    }

    #[test]
    fn lattice_algorithms_fall_back_off_lattice() {
        let mut algo = LatticeSquare::new();
        let mut state = CoverState::new(2, Norm::L2);
        let p = Point::new(vec![0.25, 0.75]);
        let d = algo.decide(&state, &p).unwrap();
        match &d {
            CoverDecision::Open(b) => {
                assert_eq!(b.center, p);
                assert_eq!(b.radius, 1.0);
            }
            other => panic!("expected centered-style open, got {other:?}"),
        }
        state.apply(&d);
        // nearby off-lattice point reuses the fallback ball
        let d2 = algo.decide(&state, &Point::new(vec![0.3, 0.8])).unwrap();
        assert_eq!(d2, CoverDecision::Assign(0));
    }

    #[test]
    fn non_staggered_square_blocks_reach_four_groups() {
        // the witness from the staggering rationale: one unit disk covers
        // (1,1), (2,1), (1,2), (2,2), which lie in four plain 2x2 blocks
        let points = lattice_points_within(LatticeKind::Square, 6.0);
        let groups: Vec<(i64, i64)> = points
            .iter()
            .map(|p| (((p[0] as i64).div_euclid(2)), ((p[1] as i64).div_euclid(2))))
            .collect();
        let anchors: Vec<Point> = points.iter().filter(|p| p.norm() <= 3.0).cloned().collect();
        let max = candidate_centers(&anchors)
            .iter()
            .map(|c| groups_covered(c, &points, &groups))
            .max()
            .unwrap();
        assert_eq!(max, 4);
        let witness = Point::new(vec![1.5, 1.5]);
        assert_eq!(groups_covered(&witness, &points, &groups), 4);
    }

    #[test]
    fn staggered_square_partition_is_three() {
        assert_eq!(verify_partition_seq(LatticeKind::Square, 5.0).unwrap(), 3);
    }

    #[test]
    fn hex_partition_is_three() {
        assert_eq!(verify_partition_seq(LatticeKind::Hex, 5.0).unwrap(), 3);
    }

    #[test]
    fn radius_below_four_is_rejected() {
        assert!(matches!(
            verify_partition_seq(LatticeKind::Square, 3.0),
            Err(LatticeError::RadiusTooSmall(_))
        ));
    }

    #[cfg(feature = "parallel")]
    #[test]
    fn parallel_and_sequential_agree() {
        for kind in [LatticeKind::Square, LatticeKind::Hex] {
            assert_eq!(
                verify_partition_par(kind, 5.0).unwrap(),
                verify_partition_seq(kind, 5.0).unwrap()
            );
        }
    }
}
