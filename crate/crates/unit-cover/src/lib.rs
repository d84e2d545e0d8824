//! Online unit covering in Euclidean d-space.
//!
//! Points arrive one by one and each must be covered on arrival by an
//! existing ball or by a newly opened one whose position is then fixed.
//! This crate provides:
//!
//! - exact-tolerance geometric primitives (balls, spheres, hemispheres,
//!   circular-arc coverage) in any dimension ([`geometry`]),
//! - online covering algorithms behind a single observe/decide interface,
//!   including two lattice-specialized ones ([`online`], [`lattice`]),
//! - an exact offline optimum for the competitive-ratio denominator
//!   ([`offline`]),
//! - adaptive adversaries that force worst-case behavior out of any
//!   deterministic algorithm and certify the offline optimum ([`adversary`]),
//! - closed-form and quadrature bounds on kissing numbers and on the
//!   Centered algorithm's ratio ([`bounds`]),
//! - a match referee, instance generators, file formats and an SVG trace
//!   emitter ([`harness`], [`instance`], [`io`], [`svg`]).
//!
//! The heavy inner loops (partition verification, batch match sweeps) are
//! data-parallel via rayon when the default `parallel` feature is enabled;
//! sequential fallbacks are always available and benchmarked against the
//! parallel path in `benches/parallel.rs`.

pub mod adversary;
pub mod bounds;
pub mod geometry;
pub mod harness;
pub mod instance;
pub mod io;
pub mod lattice;
pub mod offline;
pub mod online;
pub mod svg;

#[doc(hidden)]
pub mod testing;

/// Global containment tolerance: `p` is inside a ball of radius `r` iff
/// `dist(center, p) <= r + CONTAIN_TOL`. Shared by the referee, the
/// algorithms and the adversaries so that boundary play is adjudicated
/// consistently everywhere.
pub const CONTAIN_TOL: f64 = 1e-9;

/// Margin the adversaries require between an emitted point and every
/// previously opened ball. Constructions carry slack of at least ~1e-4,
/// so this nests two orders of magnitude above [`CONTAIN_TOL`].
pub const ADVERSARY_MARGIN: f64 = 1e-6;

/// Snap tolerance for recognizing lattice points.
pub const LATTICE_SNAP: f64 = 1e-6;

pub use geometry::{Ball, Norm, Point};
pub use harness::{run_match, MatchReport, MatchSource};
pub use online::{CoverDecision, CoverState, OnlineAlgorithm};

/// Cap the rayon worker pool used by the parallel paths. Must run before
/// any parallel work; later calls fail once the global pool exists.
#[cfg(feature = "parallel")]
pub fn configure_thread_pool(threads: usize) -> Result<(), rayon::ThreadPoolBuildError> {
    rayon::ThreadPoolBuilder::new().num_threads(threads).build_global()
}

/// Without the `parallel` feature every sweep is sequential; the knob is
/// accepted and ignored.
#[cfg(not(feature = "parallel"))]
pub fn configure_thread_pool(_threads: usize) -> Result<(), std::convert::Infallible> {
    Ok(())
}
