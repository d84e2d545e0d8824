//! Deterministic instance generators.

use crate::geometry::Point;
use crate::lattice::hex_point;
use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum InstanceError {
    #[error("unknown instance kind {0:?}")]
    UnknownKind(String),
    #[error("instance kind {kind} is only defined in dimension {required}")]
    WrongDimension { kind: &'static str, required: usize },
    #[error("cannot draw {wanted} distinct lattice points from a window of {available}")]
    WindowTooSmall { wanted: usize, available: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub enum InstanceKind {
    /// Uniform points in the cube [lo, hi]^d.
    Random { n: usize, dim: usize, lo: f64, hi: f64 },
    /// Distinct integer points from [-window, window]^2.
    LatticeSquare { n: usize, window: i64 },
    /// Distinct triangular-lattice points with coordinates in
    /// [-window, window].
    LatticeHex { n: usize, window: i64 },
    /// The five vertices of a regular pentagon inscribed in the unit
    /// circle; minimum pairwise distance 2 sin(pi/5) > 1.
    Pentagon,
    /// The twelve vertices of a regular icosahedron inscribed in the unit
    /// sphere; minimum pairwise distance 1/sin(2 pi/5) > 1.
    Icosahedron,
}

impl InstanceKind {
    pub fn parse(kind: &str, n: usize, dim: usize, window: i64, lo: f64, hi: f64) -> Result<Self, InstanceError> {
        match kind {
            "random" => Ok(InstanceKind::Random { n, dim, lo, hi }),
            "lattice-square" => Ok(InstanceKind::LatticeSquare { n, window }),
            "lattice-hex" => Ok(InstanceKind::LatticeHex { n, window }),
            "pentagon" => Ok(InstanceKind::Pentagon),
            "icosahedron" => Ok(InstanceKind::Icosahedron),
            other => Err(InstanceError::UnknownKind(other.to_string())),
        }
    }
}

/// Generate an instance; identical output for identical seed.
pub fn generate_instance(kind: &InstanceKind, seed: u64) -> Result<Vec<Point>, InstanceError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match kind {
        InstanceKind::Random { n, dim, lo, hi } => Ok((0..*n)
            .map(|_| Point::new((0..*dim).map(|_| rng.gen_range(*lo..*hi)).collect()))
            .collect()),
        InstanceKind::LatticeSquare { n, window } => {
            let mut all: Vec<Point> = (-window..=*window)
                .flat_map(|x| {
                    (-window..=*window).map(move |y| Point::new(vec![x as f64, y as f64]))
                })
                .collect();
            if all.len() < *n {
                return Err(InstanceError::WindowTooSmall { wanted: *n, available: all.len() });
            }
            all.shuffle(&mut rng);
            all.truncate(*n);
            Ok(all)
        }
        InstanceKind::LatticeHex { n, window } => {
            let mut all: Vec<Point> = (-window..=*window)
                .flat_map(|i| (-window..=*window).map(move |j| hex_point(i, j)))
                .collect();
            if all.len() < *n {
                return Err(InstanceError::WindowTooSmall { wanted: *n, available: all.len() });
            }
            all.shuffle(&mut rng);
            all.truncate(*n);
            Ok(all)
        }
        InstanceKind::Pentagon => Ok((0..5)
            .map(|k| {
                let t = 2.0 * PI * k as f64 / 5.0 + PI / 2.0;
                Point::new(vec![t.cos(), t.sin()])
            })
            .collect()),
        InstanceKind::Icosahedron => {
            let phi = (1.0 + 5f64.sqrt()) / 2.0;
            let s = 1.0 / (1.0 + phi * phi).sqrt();
            let mut pts = Vec::with_capacity(12);
            for &a in &[-1.0f64, 1.0] {
                for &b in &[-phi, phi] {
                    pts.push(Point::new(vec![0.0, a * s, b * s]));
                    pts.push(Point::new(vec![a * s, b * s, 0.0]));
                    pts.push(Point::new(vec![b * s, 0.0, a * s]));
                }
            }
            Ok(pts)
        }
    }
}

/// Minimum pairwise distance of an instance, for sanity checks.
pub fn min_pairwise_distance(points: &[Point]) -> f64 {
    let mut best = f64::INFINITY;
    for i in 0..points.len() {
        for j in 0..i {
            best = best.min(points[i].dist(&points[j]));
        }
    }
    best
}
