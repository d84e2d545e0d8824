//! Match referee: mediates points into an algorithm, validates every
//! decision, scores the result against the exact optimum or an adversary
//! certificate, and emits a serializable report.
//!
//! Matches are independent jobs; the batch runner fans them out with
//! rayon when the `parallel` feature is on.

use crate::adversary::{Adversary, AdversaryError, AdversaryMove};
use crate::geometry::{covers, Ball, Norm, Point};
use crate::offline::{opt_cover_exact, OptError, OptResult, MAX_EXACT_POINTS};
use crate::online::{algorithm_by_id, CoverDecision, CoverState, OnlineAlgorithm, OnlineError};
use crate::CONTAIN_TOL;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error(transparent)]
    Online(#[from] OnlineError),
    #[error(transparent)]
    Adversary(#[from] AdversaryError),
    #[error(transparent)]
    Opt(#[from] OptError),
    #[error("illegal decision at step {step}: {detail}")]
    IllegalDecision { step: usize, detail: String },
    #[error("adversary certificate of radius {radius} exceeds the unit bound")]
    OversizeCertificate { radius: f64 },
    #[error("certificate misses emitted point {point:?}")]
    CertificateGap { point: Vec<f64> },
    #[error("point dimension {got} does not match match dimension {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("{n} points exceed the exact-optimum cap of {MAX_EXACT_POINTS}; rerun with opt disabled")]
    OptTooLarge { n: usize },
}

impl HarnessError {
    /// Exit code the CLI maps this error to: legality violations are 2,
    /// everything else 1.
    pub fn exit_code(&self) -> i32 {
        match self {
            HarnessError::IllegalDecision { .. }
            | HarnessError::OversizeCertificate { .. }
            | HarnessError::CertificateGap { .. }
            | HarnessError::Adversary(AdversaryError::IllegalBall { .. })
            | HarnessError::Adversary(AdversaryError::ToleranceExploit { .. }) => 2,
            _ => 1,
        }
    }
}

/// Ordered record of a match: every point seen and the decision taken.
#[derive(Debug, Clone)]
pub struct CoverTranscript {
    pub dim: usize,
    pub norm: Norm,
    pub entries: Vec<(Point, CoverDecision)>,
}

impl CoverTranscript {
    /// Replay the opened balls in order.
    pub fn balls(&self) -> Vec<Ball> {
        self.entries
            .iter()
            .filter_map(|(_, d)| match d {
                CoverDecision::Open(b) => Some(b.clone()),
                CoverDecision::Assign(_) => None,
            })
            .collect()
    }
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct RatioRecord {
    pub balls: usize,
    pub opt: usize,
    pub value: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct StepRecord {
    pub point: Vec<f64>,
    pub action: String,
    pub ball_index: usize,
    pub ball_center: Option<Vec<f64>>,
    pub ball_radius: Option<f64>,
}

/// Serializable outcome of one match; field order is the wire order.
#[derive(Debug, Clone, Serialize)]
pub struct MatchReport {
    pub algorithm: String,
    pub source: String,
    pub dimension: usize,
    pub norm: String,
    pub n_points: usize,
    pub balls_opened: usize,
    pub opt: Option<usize>,
    pub ratio: Option<RatioRecord>,
    pub steps: Vec<StepRecord>,
}

/// A match's full outcome: the report plus the raw transcript and, for
/// point sources, the optimum witness.
#[derive(Debug)]
pub struct MatchOutcome {
    pub report: MatchReport,
    pub transcript: CoverTranscript,
    pub opt_witness: Option<OptResult>,
    /// The covering ball an adversary stopped with, when there was one.
    pub certificate: Option<Ball>,
}

/// Where the points of a match come from.
pub enum MatchSource<'a> {
    /// A fixed point sequence; `compute_opt` scores it against the exact
    /// optimum (requires at most [`MAX_EXACT_POINTS`] points).
    Points { points: &'a [Point], label: String, compute_opt: bool },
    /// An adaptive adversary that also certifies opt = 1.
    Adversary(&'a mut dyn Adversary),
}

/// Largest ball an algorithm may open, per norm: unit balls under L2,
/// half-unit cells under Linf.
fn radius_cap(norm: Norm) -> f64 {
    match norm {
        Norm::L2 => 1.0,
        Norm::Linf => 0.5,
    }
}

fn validate_decision(
    state: &CoverState,
    p: &Point,
    decision: &CoverDecision,
) -> Result<(), HarnessError> {
    let step = state.steps_taken();
    match decision {
        CoverDecision::Assign(i) => {
            let ball = state.balls.get(*i).ok_or_else(|| HarnessError::IllegalDecision {
                step,
                detail: format!("assign to nonexistent ball {i}"),
            })?;
            if !covers(ball, state.norm, p, CONTAIN_TOL) {
                return Err(HarnessError::IllegalDecision {
                    step,
                    detail: format!("assigned ball {i} does not contain the point"),
                });
            }
        }
        CoverDecision::Open(ball) => {
            if ball.dim() != state.dim {
                return Err(HarnessError::IllegalDecision {
                    step,
                    detail: "opened ball has the wrong dimension".into(),
                });
            }
            if ball.radius > radius_cap(state.norm) + CONTAIN_TOL {
                return Err(HarnessError::IllegalDecision {
                    step,
                    detail: format!("opened ball radius {} exceeds the cap", ball.radius),
                });
            }
            if !covers(ball, state.norm, p, CONTAIN_TOL) {
                return Err(HarnessError::IllegalDecision {
                    step,
                    detail: "opened ball does not contain its point".into(),
                });
            }
        }
    }
    Ok(())
}

fn feed_point(
    algo: &mut dyn OnlineAlgorithm,
    state: &mut CoverState,
    transcript: &mut CoverTranscript,
    steps: &mut Vec<StepRecord>,
    p: Point,
) -> Result<(), HarnessError> {
    if p.dim() != state.dim {
        return Err(HarnessError::DimensionMismatch { expected: state.dim, got: p.dim() });
    }
    let decision = algo.decide(state, &p)?;
    validate_decision(state, &p, &decision)?;
    let record = match &decision {
        CoverDecision::Assign(i) => StepRecord {
            point: p.coords.clone(),
            action: "assign".into(),
            ball_index: *i,
            ball_center: None,
            ball_radius: None,
        },
        CoverDecision::Open(b) => StepRecord {
            point: p.coords.clone(),
            action: "open".into(),
            ball_index: state.balls.len(),
            ball_center: Some(b.center.coords.clone()),
            ball_radius: Some(b.radius),
        },
    };
    state.apply(&decision);
    transcript.entries.push((p, decision));
    steps.push(record);
    Ok(())
}

/// Run one match end to end.
pub fn run_match(
    algo: &mut dyn OnlineAlgorithm,
    dim: usize,
    source: MatchSource<'_>,
) -> Result<MatchOutcome, HarnessError> {
    let norm = algo.norm();
    let mut state = CoverState::new(dim, norm);
    let mut transcript = CoverTranscript { dim, norm, entries: Vec::new() };
    let mut steps: Vec<StepRecord> = Vec::new();

    let mut certificate = None;
    let (source_label, opt, opt_witness) = match source {
        MatchSource::Points { points, label, compute_opt } => {
            for p in points {
                feed_point(algo, &mut state, &mut transcript, &mut steps, p.clone())?;
            }
            if compute_opt {
                if points.len() > MAX_EXACT_POINTS {
                    return Err(HarnessError::OptTooLarge { n: points.len() });
                }
                let witness = opt_cover_exact(points, 1.0)?;
                (label, Some(witness.count), Some(witness))
            } else {
                (label, None, None)
            }
        }
        MatchSource::Adversary(adversary) => {
            let label = adversary.id().to_string();
            loop {
                match adversary.next(&state)? {
                    AdversaryMove::Emit(p) => {
                        feed_point(algo, &mut state, &mut transcript, &mut steps, p)?;
                    }
                    AdversaryMove::Stop { certificate: cert } => {
                        if cert.radius > 1.0 + CONTAIN_TOL {
                            return Err(HarnessError::OversizeCertificate { radius: cert.radius });
                        }
                        for (p, _) in &transcript.entries {
                            if cert.center.dist(p) > cert.radius + CONTAIN_TOL {
                                return Err(HarnessError::CertificateGap {
                                    point: p.coords.clone(),
                                });
                            }
                        }
                        certificate = Some(cert);
                        break;
                    }
                }
            }
            (label, Some(1), None)
        }
    };

    let balls_opened = state.balls.len();
    let ratio = opt.map(|o| RatioRecord {
        balls: balls_opened,
        opt: o,
        value: balls_opened as f64 / o as f64,
    });
    Ok(MatchOutcome {
        report: MatchReport {
            algorithm: algo.id().to_string(),
            source: source_label,
            dimension: dim,
            norm: norm.label().to_string(),
            n_points: transcript.entries.len(),
            balls_opened,
            opt,
            ratio,
            steps,
        },
        transcript,
        opt_witness,
        certificate,
    })
}

/// Convenience: run an adversary duel with both sides chosen by id.
pub fn duel(algo_id: &str, adversary_id: &str, dim: usize) -> Result<MatchOutcome, HarnessError> {
    let mut algo = algorithm_by_id(algo_id, dim)?;
    let mut adversary = crate::adversary::adversary_by_id(adversary_id, dim)?;
    run_match(algo.as_mut(), dim, MatchSource::Adversary(adversary.as_mut()))
}

/// One entry of a batch sweep: an algorithm id against a fixed instance.
#[derive(Debug, Clone)]
pub struct BatchJob {
    pub algorithm: String,
    pub label: String,
    pub points: Vec<Point>,
    pub compute_opt: bool,
}

fn run_job(job: &BatchJob) -> Result<MatchReport, HarnessError> {
    let dim = job.points.first().map(|p| p.dim()).unwrap_or(2);
    let mut algo = algorithm_by_id(&job.algorithm, dim)?;
    let outcome = run_match(
        algo.as_mut(),
        dim,
        MatchSource::Points {
            points: &job.points,
            label: job.label.clone(),
            compute_opt: job.compute_opt,
        },
    )?;
    Ok(outcome.report)
}

/// Sequential batch sweep.
pub fn run_batch_seq(jobs: &[BatchJob]) -> Vec<Result<MatchReport, HarnessError>> {
    jobs.iter().map(run_job).collect()
}

/// Parallel batch sweep over independent matches.
#[cfg(feature = "parallel")]
pub fn run_batch_par(jobs: &[BatchJob]) -> Vec<Result<MatchReport, HarnessError>> {
    use rayon::prelude::*;
    jobs.par_iter().map(run_job).collect()
}

/// Batch sweep; parallel when the `parallel` feature is enabled.
pub fn run_batch(jobs: &[BatchJob]) -> Vec<Result<MatchReport, HarnessError>> {
    #[cfg(feature = "parallel")]
    {
        run_batch_par(jobs)
    }
    #[cfg(not(feature = "parallel"))]
    {
        run_batch_seq(jobs)
    }
}
