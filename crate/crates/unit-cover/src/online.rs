//! Online covering strategies behind a single observe-point/decide
//! interface.
//!
//! On each arrival an algorithm either assigns the point to an existing
//! ball that contains it or opens a new ball that does. Balls never move
//! or resize once opened; the referee in [`crate::harness`] enforces both
//! rules with the shared containment tolerance.

use crate::geometry::{covers, Ball, Norm, Point};
use crate::lattice::{LatticeHex, LatticeSquare};
use crate::CONTAIN_TOL;
use serde::Serialize;
use std::collections::HashMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum OnlineError {
    #[error("dimension mismatch: algorithm expects {expected}, point has {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("{algorithm} requires dimension {required}, got {got}")]
    UnsupportedDimension { algorithm: &'static str, required: usize, got: usize },
    #[error("point {0:?} is not a lattice point")]
    OffLattice(Vec<f64>),
    #[error("unknown algorithm id {0:?}")]
    UnknownAlgorithm(String),
}

/// One decision: reuse an open ball or open a new one.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum CoverDecision {
    Assign(usize),
    Open(Ball),
}

/// Append-only record of the balls opened so far in a match.
#[derive(Debug, Clone)]
pub struct CoverState {
    pub dim: usize,
    pub norm: Norm,
    pub balls: Vec<Ball>,
    pub opened_step: Vec<usize>,
    step: usize,
}

impl CoverState {
    pub fn new(dim: usize, norm: Norm) -> Self {
        CoverState { dim, norm, balls: Vec::new(), opened_step: Vec::new(), step: 0 }
    }

    /// Record a validated decision. Balls are never mutated afterwards.
    pub fn apply(&mut self, decision: &CoverDecision) {
        if let CoverDecision::Open(ball) = decision {
            self.balls.push(ball.clone());
            self.opened_step.push(self.step);
        }
        self.step += 1;
    }

    pub fn steps_taken(&self) -> usize {
        self.step
    }

    /// Lowest-index open ball containing `p` under the state's norm.
    pub fn first_containing(&self, p: &Point) -> Option<usize> {
        self.balls
            .iter()
            .position(|b| covers(b, self.norm, p, CONTAIN_TOL))
    }
}

pub trait OnlineAlgorithm {
    fn id(&self) -> &'static str;

    /// Norm under which this algorithm's balls are interpreted.
    fn norm(&self) -> Norm {
        Norm::L2
    }

    fn decide(&mut self, state: &CoverState, p: &Point) -> Result<CoverDecision, OnlineError>;
}

/// Covers each uncovered point with a unit ball centered at the point
/// itself; assigns to the lowest-index containing ball otherwise.
pub struct Centered;

/// The Centered rule as a free function over explicit state.
pub fn centered_step(state: &CoverState, p: &Point) -> CoverDecision {
    match state.first_containing(p) {
        Some(i) => CoverDecision::Assign(i),
        None => CoverDecision::Open(Ball::unit(p.clone())),
    }
}

impl OnlineAlgorithm for Centered {
    fn id(&self) -> &'static str {
        "centered"
    }

    fn decide(&mut self, state: &CoverState, p: &Point) -> Result<CoverDecision, OnlineError> {
        if p.dim() != state.dim {
            return Err(OnlineError::DimensionMismatch { expected: state.dim, got: p.dim() });
        }
        Ok(centered_step(state, p))
    }
}

/// Partitions space into the unit cells `prod [i_j, i_j+1)` and opens one
/// Linf ball of radius 1/2 per nonempty cell. There is no direct analogue
/// of this algorithm under the L2 norm; reports tag it as Linf.
pub struct Grid {
    cells: HashMap<Vec<i64>, usize>,
}

impl Grid {
    pub fn new() -> Self {
        Grid { cells: HashMap::new() }
    }

    fn cell_of(p: &Point) -> Vec<i64> {
        p.coords.iter().map(|c| c.floor() as i64).collect()
    }
}

impl Default for Grid {
    fn default() -> Self {
        Self::new()
    }
}

impl OnlineAlgorithm for Grid {
    fn id(&self) -> &'static str {
        "grid"
    }

    fn norm(&self) -> Norm {
        Norm::Linf
    }

    fn decide(&mut self, state: &CoverState, p: &Point) -> Result<CoverDecision, OnlineError> {
        if p.dim() != state.dim {
            return Err(OnlineError::DimensionMismatch { expected: state.dim, got: p.dim() });
        }
        let cell = Self::cell_of(p);
        if let Some(&i) = self.cells.get(&cell) {
            return Ok(CoverDecision::Assign(i));
        }
        let center = Point::new(cell.iter().map(|&c| c as f64 + 0.5).collect());
        self.cells.insert(cell, state.balls.len());
        Ok(CoverDecision::Open(Ball::new(center, 0.5)))
    }
}

/// Instantiate an algorithm by its CLI id.
pub fn algorithm_by_id(id: &str, dim: usize) -> Result<Box<dyn OnlineAlgorithm>, OnlineError> {
    match id {
        "centered" => Ok(Box::new(Centered)),
        "grid" => Ok(Box::new(Grid::new())),
        "lattice-square" => {
            if dim != 2 {
                return Err(OnlineError::UnsupportedDimension {
                    algorithm: "lattice-square",
                    required: 2,
                    got: dim,
                });
            }
            Ok(Box::new(LatticeSquare::new()))
        }
        "lattice-hex" => {
            if dim != 2 {
                return Err(OnlineError::UnsupportedDimension {
                    algorithm: "lattice-hex",
                    required: 2,
                    got: dim,
                });
            }
            Ok(Box::new(LatticeHex::new()))
        }
        other => Err(OnlineError::UnknownAlgorithm(other.to_string())),
    }
}

pub const ALGORITHM_IDS: [&str; 4] = ["centered", "grid", "lattice-square", "lattice-hex"];
