//! Branch coverage and opponent-agnosticism for the adversary games:
//! scripted opponents steer each case of the decision trees, and every
//! adversary is checked against every algorithm plus seeded random-legal
//! opponents.

use unit_cover::adversary::{adversary_by_id, derive_hex_script};
use unit_cover::geometry::{smallest_enclosing_ball, Point};
use unit_cover::harness::{run_match, HarnessError, MatchOutcome, MatchSource};
use unit_cover::online::{algorithm_by_id, OnlineAlgorithm};
use unit_cover::testing::{RandomLegalBob, ScriptedBob};

fn duel_with(algo: &mut dyn OnlineAlgorithm, adversary_id: &str, dim: usize) -> MatchOutcome {
    let mut adversary = adversary_by_id(adversary_id, dim).unwrap();
    run_match(algo, dim, MatchSource::Adversary(adversary.as_mut()))
        .unwrap_or_else(|e| panic!("{} vs {adversary_id}: {e}", algo.id()))
}

fn forced_count(adversary_id: &str, dim: usize) -> usize {
    match adversary_id {
        "planar4" => 4,
        "simplex" => dim + 1,
        "plus2" => dim + 2,
        "lat-square" | "lat-hex" => 3,
        other => panic!("unknown adversary {other}"),
    }
}

#[test]
fn every_adversary_beats_every_planar_opponent() {
    for adversary_id in ["planar4", "simplex", "plus2", "lat-square", "lat-hex"] {
        for algo_id in ["centered", "grid", "lattice-square", "lattice-hex"] {
            let mut algo = algorithm_by_id(algo_id, 2).unwrap();
            let outcome = duel_with(algo.as_mut(), adversary_id, 2);
            assert_eq!(
                outcome.report.balls_opened,
                forced_count(adversary_id, 2),
                "{algo_id} vs {adversary_id}"
            );
            assert_eq!(outcome.report.opt, Some(1));
            assert!(outcome.certificate.is_some());
        }
        for seed in 0..100u64 {
            let mut bob = RandomLegalBob::new(seed, 2);
            let outcome = duel_with(&mut bob, adversary_id, 2);
            assert_eq!(
                outcome.report.balls_opened,
                forced_count(adversary_id, 2),
                "seed {seed} vs {adversary_id}"
            );
        }
    }
}

#[test]
fn duels_replay_identically() {
    for adversary_id in ["planar4", "simplex", "lat-hex"] {
        let render = || {
            let mut algo = algorithm_by_id("centered", 2).unwrap();
            let outcome = duel_with(algo.as_mut(), adversary_id, 2);
            serde_json::to_string(&outcome.report).unwrap()
        };
        assert_eq!(render(), render(), "{adversary_id}");
    }
}

#[test]
fn planar_adversary_takes_the_r_branch_when_q_is_covered() {
    // against Centered the frame is the identity, so the script points sit
    // at their nominal coordinates; cover q with the third ball
    let eps = 0.01f64;
    let p3 = Point::new(vec![0.0, 1.0 + eps]);
    let q = Point::new(vec![-1.0 + eps, (2.0 * eps).sqrt()]);
    let mid_q_p3 = Point::new(vec![(p3[0] + q[0]) / 2.0, (p3[1] + q[1]) / 2.0]);
    let mut bob = ScriptedBob {
        choose_center: |_: &unit_cover::CoverState, p: &Point| {
            if p.dist(&Point::new(vec![0.0, 1.01])) < 1e-9 {
                mid_q_p3.clone()
            } else {
                p.clone()
            }
        },
    };
    let outcome = duel_with(&mut bob, "planar4", 2);
    assert_eq!(outcome.report.balls_opened, 4);
    // case p4 = r stops with the unit disk at (1/2, 1/2)
    let cert = outcome.certificate.unwrap();
    assert!(cert.center.dist(&Point::new(vec![0.5, 0.5])) < 1e-9);
    // and the fourth point is r, not q
    let last = &outcome.transcript.entries.last().unwrap().0;
    assert!(last.dist(&Point::new(vec![1.0 + eps, 1.0 + eps])) < 1e-9);
}

#[test]
fn square_adversary_reflects_when_the_diagonal_is_covered() {
    // covering (1,1) with the first ball sends the game to (-1,-1)
    let mut bob = ScriptedBob {
        choose_center: |_: &unit_cover::CoverState, p: &Point| {
            if p.norm() < 1e-9 {
                Point::new(vec![0.55, 0.55])
            } else {
                p.clone()
            }
        },
    };
    let outcome = duel_with(&mut bob, "lat-square", 2);
    assert_eq!(outcome.report.balls_opened, 3);
    let second = &outcome.transcript.entries[1].0;
    assert!(second.dist(&Point::new(vec![-1.0, -1.0])) < 1e-9);
}

fn hex_points() -> [Point; 7] {
    derive_hex_script().unwrap().points.clone()
}

fn mid(a: &Point, b: &Point) -> Point {
    Point::new(vec![(a[0] + b[0]) / 2.0, (a[1] + b[1]) / 2.0])
}

#[test]
fn hex_adversary_walks_case_2_2a() {
    // D1 covers p1 and p5 but misses p3; D2 covers p3 and p4 but misses
    // p6: the game must emit p6 and certify with the disk at (p1+p6)/2
    let [p1, _, p3, p4, p5, p6, _] = hex_points();
    let d1 = mid(&p1, &p5);
    let d2 = mid(&p3, &p4);
    let p3c = p3.clone();
    let mut bob = ScriptedBob {
        choose_center: move |_: &unit_cover::CoverState, p: &Point| {
            if p.dist(&p1) < 1e-9 {
                d1.clone()
            } else if p.dist(&p3c) < 1e-9 {
                d2.clone()
            } else {
                p.clone()
            }
        },
    };
    let outcome = duel_with(&mut bob, "lat-hex", 2);
    assert_eq!(outcome.report.balls_opened, 3);
    let third = &outcome.transcript.entries[2].0;
    assert!(third.dist(&p6) < 1e-9, "expected p6, got {third:?}");
    let cert = outcome.certificate.unwrap();
    assert!(cert.center.dist(&mid(&hex_points()[0], &p6)) < 1e-9);
}

#[test]
fn hex_adversary_walks_case_2_2b() {
    // D1 covers p1 and p5; D2 covers p3, p4 and p6: only p7 is left
    let [p1, _, p3, p4, p5, p6, p7] = hex_points();
    let d1 = mid(&p1, &p5);
    let d2 = smallest_enclosing_ball(&[p3.clone(), p4.clone(), p6.clone()]).unwrap();
    assert!(d2.radius <= 1.0 + 1e-9, "p3, p4, p6 share a unit disk");
    let p3c = p3.clone();
    let d2c = d2.center.clone();
    let mut bob = ScriptedBob {
        choose_center: move |_: &unit_cover::CoverState, p: &Point| {
            if p.dist(&p1) < 1e-9 {
                d1.clone()
            } else if p.dist(&p3c) < 1e-9 {
                d2c.clone()
            } else {
                p.clone()
            }
        },
    };
    let outcome = duel_with(&mut bob, "lat-hex", 2);
    assert_eq!(outcome.report.balls_opened, 3);
    let third = &outcome.transcript.entries[2].0;
    assert!(third.dist(&p7) < 1e-9, "expected p7, got {third:?}");
}

#[test]
fn boundary_shaving_is_reported_as_a_tolerance_exploit() {
    // the first ball grazes p1 within the referee tolerance while leaving
    // the next scripted point uncovered by less than the emission margin
    let delta = 5e-7;
    let mut bob = ScriptedBob {
        choose_center: move |_: &unit_cover::CoverState, p: &Point| {
            if p.norm() < 1e-9 {
                Point::new(vec![1.0, -delta])
            } else {
                p.clone()
            }
        },
    };
    let mut adversary = adversary_by_id("lat-square", 2).unwrap();
    let err = run_match(&mut bob, 2, MatchSource::Adversary(adversary.as_mut())).unwrap_err();
    match &err {
        HarnessError::Adversary(unit_cover::adversary::AdversaryError::ToleranceExploit {
            margin,
            ..
        }) => {
            assert!(*margin < 1e-6 && *margin > 0.0, "margin {margin}");
        }
        other => panic!("expected tolerance exploit, got {other}"),
    }
    assert_eq!(err.exit_code(), 2);
}

#[test]
fn simplex_certificate_tracks_jung_radius() {
    for dim in 2..=8usize {
        let mut algo = algorithm_by_id("centered", dim).unwrap();
        let outcome = duel_with(algo.as_mut(), "simplex", dim);
        let cert = outcome.certificate.unwrap();
        let eps = 1.0 / (4.0 * dim as f64);
        let side = (1.0 + eps) * 2f64.sqrt();
        let expect = unit_cover::geometry::jung_radius(side, dim - 1).unwrap();
        assert!((cert.radius - expect).abs() < 1e-6, "d={dim}");
        // emitted points pairwise orthogonal from the origin at 1+eps
        let pts: Vec<&Point> = outcome.transcript.entries.iter().map(|(p, _)| p).collect();
        for (i, p) in pts.iter().enumerate().skip(1) {
            assert!((p.norm() - (1.0 + eps)).abs() < 1e-9);
            for q in pts.iter().take(i).skip(1) {
                let dot: f64 = p.coords.iter().zip(&q.coords).map(|(a, b)| a * b).sum();
                assert!(dot.abs() < 1e-8, "d={dim}");
                assert!((p.dist(q) - side).abs() < 1e-9, "simplex side length");
            }
        }
    }
}

#[test]
fn adversaries_reject_wrong_dimensions() {
    assert!(adversary_by_id("planar4", 3).is_err());
    assert!(adversary_by_id("lat-hex", 1).is_err());
    assert!(adversary_by_id("plus2", 5).is_err());
    assert!(adversary_by_id("simplex", 0).is_err());
}
