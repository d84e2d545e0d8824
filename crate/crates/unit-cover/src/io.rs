//! Point-file parsing and report serialization.
//!
//! Point files are plain text: a `dim k` header line, then one point per
//! line as k whitespace-separated decimals. Blank lines and lines starting
//! with `#` are skipped.

use crate::geometry::Point;
use crate::harness::MatchReport;
use std::io::Write;
use std::path::Path;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("{path}:{line}: {detail}")]
    Malformed { path: String, line: usize, detail: String },
    #[error("{path}: missing `dim k` header")]
    MissingHeader { path: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Parse a point file into its dimension and points.
pub fn parse_points(path: &Path) -> Result<(usize, Vec<Point>), ParseError> {
    let text = std::fs::read_to_string(path)?;
    parse_points_str(&text, &path.display().to_string())
}

pub fn parse_points_str(text: &str, path: &str) -> Result<(usize, Vec<Point>), ParseError> {
    let mut dim: Option<usize> = None;
    let mut points = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        match dim {
            None => {
                let mut it = line.split_whitespace();
                let (kw, k) = (it.next(), it.next());
                if kw != Some("dim") || it.next().is_some() {
                    return Err(ParseError::Malformed {
                        path: path.into(),
                        line: line_no,
                        detail: "expected header `dim k`".into(),
                    });
                }
                let k: usize = k
                    .and_then(|s| s.parse().ok())
                    .filter(|&k| k >= 1)
                    .ok_or_else(|| ParseError::Malformed {
                        path: path.into(),
                        line: line_no,
                        detail: "dimension must be a positive integer".into(),
                    })?;
                dim = Some(k);
            }
            Some(k) => {
                let coords: Result<Vec<f64>, _> =
                    line.split_whitespace().map(|t| t.parse::<f64>()).collect();
                let coords = coords.map_err(|e| ParseError::Malformed {
                    path: path.into(),
                    line: line_no,
                    detail: format!("bad coordinate: {e}"),
                })?;
                if coords.len() != k {
                    return Err(ParseError::Malformed {
                        path: path.into(),
                        line: line_no,
                        detail: format!("expected {k} coordinates, got {}", coords.len()),
                    });
                }
                if coords.iter().any(|c| !c.is_finite()) {
                    return Err(ParseError::Malformed {
                        path: path.into(),
                        line: line_no,
                        detail: "coordinates must be finite".into(),
                    });
                }
                points.push(Point::new(coords));
            }
        }
    }
    match dim {
        Some(d) => Ok((d, points)),
        None => Err(ParseError::MissingHeader { path: path.into() }),
    }
}

/// Render a point list in the file format.
pub fn format_points(dim: usize, points: &[Point]) -> String {
    let mut out = format!("dim {dim}\n");
    for p in points {
        let coords: Vec<String> = p.coords.iter().map(|c| format!("{c}")).collect();
        out.push_str(&coords.join(" "));
        out.push('\n');
    }
    out
}

pub fn write_points(path: &Path, dim: usize, points: &[Point]) -> Result<(), std::io::Error> {
    std::fs::write(path, format_points(dim, points))
}

/// Serialize a report as a single JSON object with fixed key order.
pub fn report_json(report: &MatchReport) -> String {
    serde_json::to_string_pretty(report).expect("reports always serialize")
}

pub fn write_report(report: &MatchReport, path: &Path) -> Result<(), std::io::Error> {
    let mut f = std::fs::File::create(path)?;
    f.write_all(report_json(report).as_bytes())?;
    f.write_all(b"\n")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_basic_files() {
        let (dim, pts) = parse_points_str("dim 2\n0 0\n1 1\n", "t").unwrap();
        assert_eq!(dim, 2);
        assert_eq!(pts.len(), 2);
        assert_eq!(pts[1], Point::new(vec![1.0, 1.0]));

        let (dim, pts) = parse_points_str("# comment\n\ndim 3\n0 0 0\n", "t").unwrap();
        assert_eq!(dim, 3);
        assert_eq!(pts, vec![Point::origin(3)]);
    }

    #[test]
    fn arity_errors_carry_line_numbers() {
        let err = parse_points_str("dim 2\n0 0\n1 2 3\n", "pts.txt").unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("pts.txt:3"), "{msg}");

        let err = parse_points_str("dim 2\nnan 0\n", "pts.txt").unwrap_err();
        assert!(err.to_string().contains(":2"));

        let err = parse_points_str("dim 2\n1e999 0\n", "pts.txt").unwrap_err();
        assert!(err.to_string().contains("finite"));

        assert!(matches!(
            parse_points_str("# nothing\n", "pts.txt"),
            Err(ParseError::MissingHeader { .. })
        ));
    }

    #[test]
    fn points_roundtrip() {
        let pts = vec![Point::new(vec![0.5, -1.25]), Point::new(vec![3.0, 4.0])];
        let text = format_points(2, &pts);
        let (dim, parsed) = parse_points_str(&text, "t").unwrap();
        assert_eq!(dim, 2);
        assert_eq!(parsed, pts);
    }
}
