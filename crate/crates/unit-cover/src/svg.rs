//! Static SVG rendering of planar match transcripts: points numbered by
//! arrival, opened balls as circles (or squares under Linf), and the
//! optimal cover dashed when available.

use crate::geometry::{Norm, Point};
use crate::harness::CoverTranscript;
use crate::offline::OptResult;
use crate::online::CoverDecision;
use std::fmt::Write as _;
use std::path::Path;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SvgError {
    #[error("svg output requires dimension 2, got {0}")]
    NotPlanar(usize),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

const SCALE: f64 = 60.0;

/// Render a planar transcript to an SVG string.
pub fn render_svg(transcript: &CoverTranscript, opt: Option<&OptResult>) -> Result<String, SvgError> {
    if transcript.dim != 2 {
        return Err(SvgError::NotPlanar(transcript.dim));
    }

    // bounds over points, balls and the optional optimal cover
    let mut lo = [f64::INFINITY; 2];
    let mut hi = [f64::NEG_INFINITY; 2];
    let mut grow = |p: &Point, pad: f64| {
        for k in 0..2 {
            lo[k] = lo[k].min(p[k] - pad);
            hi[k] = hi[k].max(p[k] + pad);
        }
    };
    for (p, d) in &transcript.entries {
        grow(p, 0.1);
        if let CoverDecision::Open(b) = d {
            grow(&b.center, b.radius);
        }
    }
    if let Some(opt) = opt {
        for b in &opt.balls {
            grow(&b.center, b.radius.max(0.1));
        }
    }
    if transcript.entries.is_empty() {
        lo = [0.0, 0.0];
        hi = [1.0, 1.0];
    }
    let margin = 0.3;
    let width = (hi[0] - lo[0] + 2.0 * margin) * SCALE;
    let height = (hi[1] - lo[1] + 2.0 * margin) * SCALE;
    let x = |v: f64| (v - lo[0] + margin) * SCALE;
    // flip y so the geometry reads the usual way up
    let y = |v: f64| height - (v - lo[1] + margin) * SCALE;

    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0}" height="{height:.0}" viewBox="0 0 {width:.2} {height:.2}">"#
    )
    .unwrap();
    writeln!(out, r#"  <rect width="100%" height="100%" fill="white"/>"#).unwrap();

    if let Some(opt) = opt {
        for b in &opt.balls {
            writeln!(
                out,
                r##"  <circle cx="{:.2}" cy="{:.2}" r="{:.2}" fill="none" stroke="#2a9d8f" stroke-width="1.5" stroke-dasharray="6 4"/>"##,
                x(b.center[0]),
                y(b.center[1]),
                b.radius.max(0.02) * SCALE
            )
            .unwrap();
        }
    }

    for (p, d) in &transcript.entries {
        if let CoverDecision::Open(b) = d {
            match transcript.norm {
                Norm::L2 => writeln!(
                    out,
                    r##"  <circle cx="{:.2}" cy="{:.2}" r="{:.2}" fill="none" stroke="#264653" stroke-width="1.5"/>"##,
                    x(b.center[0]),
                    y(b.center[1]),
                    b.radius * SCALE
                )
                .unwrap(),
                Norm::Linf => writeln!(
                    out,
                    r##"  <rect x="{:.2}" y="{:.2}" width="{:.2}" height="{:.2}" fill="none" stroke="#264653" stroke-width="1.5"/>"##,
                    x(b.center[0] - b.radius),
                    y(b.center[1] + b.radius),
                    2.0 * b.radius * SCALE,
                    2.0 * b.radius * SCALE
                )
                .unwrap(),
            }
        }
        let _ = p;
    }

    for (i, (p, _)) in transcript.entries.iter().enumerate() {
        writeln!(
            out,
            r##"  <circle cx="{:.2}" cy="{:.2}" r="3" fill="#e76f51"/>"##,
            x(p[0]),
            y(p[1])
        )
        .unwrap();
        writeln!(
            out,
            r##"  <text x="{:.2}" y="{:.2}" font-size="12" font-family="monospace" fill="#333">{}</text>"##,
            x(p[0]) + 5.0,
            y(p[1]) - 5.0,
            i + 1
        )
        .unwrap();
    }

    writeln!(out, "</svg>").unwrap();
    Ok(out)
}

/// Render and write a planar transcript.
pub fn emit_svg(
    transcript: &CoverTranscript,
    opt: Option<&OptResult>,
    path: &Path,
) -> Result<(), SvgError> {
    let svg = render_svg(transcript, opt)?;
    std::fs::write(path, svg)?;
    Ok(())
}
