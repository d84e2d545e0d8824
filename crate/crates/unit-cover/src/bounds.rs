//! Kissing-number bounds and competitive-ratio bounds.
//!
//! `rankin_upper` evaluates the classical cap-packing bound
//!
//! ```text
//! A*_d = sqrt(pi) * Gamma((d-1)/2)
//!        / ( 2*sqrt(2) * Gamma(d/2) * I_d ),
//! I_d  = integral_0^{pi/4} sin(t)^(d-2) * (cos t - cos(pi/4)) dt
//! ```
//!
//! with a Lanczos log-gamma and adaptive Simpson quadrature. Two sharper
//! asymptotic statements are known but carry unquantified constants, so
//! they are documented rather than computed: an upper bound of the form
//! `2^(0.401 d (1+o(1)))` (hence O(1.321^d)) and a lower bound of order
//! `d^(3/2) * (2/sqrt(3))^d` (hence Omega(1.154^d)).

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum BoundsError {
    #[error("the cap-packing integral needs d >= 2")]
    DimensionTooSmall,
    #[error("dimension {0} overflows the quadrature; supported up to 600")]
    DimensionTooLarge(usize),
}

/// Exactly known kissing numbers of the Euclidean ball.
pub fn newton_number_known(d: usize) -> Option<u64> {
    match d {
        1 => Some(2),
        2 => Some(6),
        3 => Some(12),
        4 => Some(24),
        _ => None,
    }
}

/// Rankin's upper bound A*_d on the kissing number, d >= 2.
pub fn rankin_upper(d: usize) -> Result<f64, BoundsError> {
    if d < 2 {
        return Err(BoundsError::DimensionTooSmall);
    }
    if d > 600 {
        return Err(BoundsError::DimensionTooLarge(d));
    }
    let quarter_pi = std::f64::consts::FRAC_PI_4;
    let cos_q = quarter_pi.cos();
    let exp = d as f64 - 2.0;
    let integrand = |t: f64| t.sin().powf(exp) * (t.cos() - cos_q);
    let integral = adaptive_simpson(&integrand, 0.0, quarter_pi, 1e-9);
    if !integral.is_finite() || integral <= 0.0 {
        return Err(BoundsError::DimensionTooLarge(d));
    }
    let log_ratio = ln_gamma((d as f64 - 1.0) / 2.0) - ln_gamma(d as f64 / 2.0);
    Ok(std::f64::consts::PI.sqrt() / (2.0 * 2f64.sqrt()) * log_ratio.exp() / integral)
}

/// Leading-order growth of A*_d: sqrt(pi/8) * d^(3/2) * 2^(d/2).
pub fn rankin_asymptotic(d: usize) -> f64 {
    (std::f64::consts::PI / 8.0).sqrt() * (d as f64).powf(1.5) * 2f64.powf(d as f64 / 2.0)
}

/// Volume-argument recurrence R_{t+1} = (R_t + t^(1/d)) / 2 with R_1 = 0,
/// iterated until the value first exceeds 1. Returns every computed value
/// and the largest t with R_t <= 1, which is the lower bound the argument
/// yields.
pub fn charikar_recurrence(d: usize) -> (Vec<f64>, usize) {
    assert!(d >= 1);
    let mut table = vec![0.0f64];
    let mut t = 1usize;
    let mut r = 0.0f64;
    while r <= 1.0 {
        let next = (r + (t as f64).powf(1.0 / d as f64)) / 2.0;
        table.push(next);
        r = next;
        t += 1;
        if t > 64 {
            break; // the sequence grows monotonically long before this
        }
    }
    let max_t = table.iter().enumerate().rev().find(|(_, &v)| v <= 1.0).map(|(i, _)| i + 1).unwrap();
    (table, max_t)
}

/// Best proven competitive ratio bound for the Centered algorithm: exact
/// at small d, the kissing number when known, Rankin's bound otherwise.
pub fn centered_ratio_bound(d: usize) -> f64 {
    match d {
        0 => f64::NAN,
        1 => 2.0,
        2 => 5.0,
        3 => 12.0,
        4 => 24.0,
        _ => match newton_number_known(d) {
            Some(n) => (n as f64).min(rankin_upper(d).unwrap_or(f64::INFINITY)),
            None => rankin_upper(d).unwrap_or(f64::INFINITY),
        },
    }
}

/// Everything the `bounds` CLI subcommand reports for one dimension.
#[derive(Debug, Clone, Serialize)]
pub struct BoundsReport {
    pub dimension: usize,
    pub newton_known: Option<u64>,
    pub rankin_upper: Option<f64>,
    pub rankin_asymptotic: f64,
    pub centered_ratio_bound: f64,
    pub charikar_table: Vec<f64>,
    pub charikar_max_t: usize,
}

pub fn bounds_report(d: usize) -> BoundsReport {
    let (charikar_table, charikar_max_t) = charikar_recurrence(d);
    BoundsReport {
        dimension: d,
        newton_known: newton_number_known(d),
        rankin_upper: rankin_upper(d).ok(),
        rankin_asymptotic: rankin_asymptotic(d),
        centered_ratio_bound: centered_ratio_bound(d),
        charikar_table,
        charikar_max_t,
    }
}

// ---------------------------------------------------------------------------
// special functions

/// Lanczos log-gamma (g = 7, 9 coefficients), relative error around 1e-13
/// over the arguments used here.
pub fn ln_gamma(x: f64) -> f64 {
    const G: f64 = 7.0;
    #[allow(clippy::excessive_precision)]
    const COEFFS: [f64; 9] = [
        0.999_999_999_999_809_93,
        676.520_368_121_885_1,
        -1_259.139_216_722_402_8,
        771.323_428_777_653_13,
        -176.615_029_162_140_59,
        12.507_343_278_686_905,
        -0.138_571_095_265_720_12,
        9.984_369_578_019_571_6e-6,
        1.505_632_735_149_311_6e-7,
    ];
    if x < 0.5 {
        // reflection
        let pi = std::f64::consts::PI;
        return (pi / (pi * x).sin()).ln() - ln_gamma(1.0 - x);
    }
    let x = x - 1.0;
    let mut acc = COEFFS[0];
    for (i, c) in COEFFS.iter().enumerate().skip(1) {
        acc += c / (x + i as f64);
    }
    let t = x + G + 0.5;
    0.5 * (2.0 * std::f64::consts::PI).ln() + (x + 0.5) * t.ln() - t + acc.ln()
}

pub fn gamma(x: f64) -> f64 {
    if x < 0.5 {
        let pi = std::f64::consts::PI;
        pi / ((pi * x).sin() * gamma(1.0 - x))
    } else {
        ln_gamma(x).exp()
    }
}

/// Adaptive Simpson quadrature with interval bisection; `rel_tol` is
/// relative to the magnitude of the whole integral. The tolerance is
/// seeded from a composite pass so sharply peaked integrands do not
/// drive it below what is attainable.
pub fn adaptive_simpson(f: &impl Fn(f64) -> f64, a: f64, b: f64, rel_tol: f64) -> f64 {
    let panels = 256;
    let h = (b - a) / panels as f64;
    let estimate: f64 = (0..panels)
        .map(|i| simpson(f, a + i as f64 * h, a + (i + 1) as f64 * h))
        .sum();
    let eps = rel_tol * estimate.abs().max(1e-300);
    (0..panels)
        .map(|i| {
            let lo = a + i as f64 * h;
            let hi = a + (i + 1) as f64 * h;
            adaptive_step(f, lo, hi, eps / panels as f64, simpson(f, lo, hi), 28)
        })
        .sum()
}

fn simpson(f: &impl Fn(f64) -> f64, a: f64, b: f64) -> f64 {
    let m = 0.5 * (a + b);
    (b - a) / 6.0 * (f(a) + 4.0 * f(m) + f(b))
}

fn adaptive_step(
    f: &impl Fn(f64) -> f64,
    a: f64,
    b: f64,
    eps: f64,
    whole: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let left = simpson(f, a, m);
    let right = simpson(f, m, b);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * eps {
        return left + right + delta / 15.0;
    }
    adaptive_step(f, a, m, eps / 2.0, left, depth - 1)
        + adaptive_step(f, m, b, eps / 2.0, right, depth - 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    #[test]
    fn gamma_reference_values() {
        assert_relative_eq!(gamma(0.5), PI.sqrt(), max_relative = 1e-12);
        assert_relative_eq!(gamma(1.0), 1.0, max_relative = 1e-12);
        assert_relative_eq!(gamma(1.5), PI.sqrt() / 2.0, max_relative = 1e-12);
        assert_relative_eq!(gamma(5.0), 24.0, max_relative = 1e-12);
        assert_relative_eq!(gamma(10.0), 362_880.0, max_relative = 1e-12);
        // stays accurate through the largest arguments the bound needs
        assert_relative_eq!(ln_gamma(70.0), 226.190_548_323_727_57, max_relative = 1e-12);
    }

    #[test]
    fn newton_table() {
        assert_eq!(newton_number_known(1), Some(2));
        assert_eq!(newton_number_known(2), Some(6));
        assert_eq!(newton_number_known(4), Some(24));
        assert_eq!(newton_number_known(5), None);
    }

    #[test]
    fn rankin_closed_forms() {
        // d = 2: I = (sqrt(2)/2)(1 - pi/4), so A* = pi / (2 - pi/2)
        let expect2 = PI / (2.0 - PI / 2.0);
        assert_relative_eq!(rankin_upper(2).unwrap(), expect2, max_relative = 1e-8);
        assert!(rankin_upper(2).unwrap() > 7.0 && rankin_upper(2).unwrap() < 7.6);

        // d = 3: I = 3/4 - sqrt(2)/2, A* = 1 / (sqrt(2) I)
        let i3 = 0.75 - 2f64.sqrt() / 2.0;
        let expect3 = 1.0 / (2f64.sqrt() * i3);
        assert_relative_eq!(rankin_upper(3).unwrap(), expect3, max_relative = 1e-8);
        assert!(rankin_upper(3).unwrap() > 16.0 && rankin_upper(3).unwrap() < 17.0);

        assert_eq!(rankin_upper(1), Err(BoundsError::DimensionTooSmall));
    }

    #[test]
    fn rankin_dominates_known_newton_numbers() {
        for d in [2usize, 3, 4] {
            assert!(rankin_upper(d).unwrap() >= newton_number_known(d).unwrap() as f64);
        }
    }

    #[test]
    fn rankin_tracks_its_asymptotic_form() {
        for d in [60usize, 100, 200] {
            let ratio = rankin_upper(d).unwrap() / rankin_asymptotic(d);
            assert!((ratio - 1.0).abs() < 0.1, "d={d} ratio={ratio}");
        }
        // monotone growth of the asymptotic form
        let mut prev = 0.0;
        for d in 1..40 {
            let v = rankin_asymptotic(d);
            assert!(v > prev);
            prev = v;
        }
    }

    #[test]
    fn rankin_asymptotic_values() {
        assert_relative_eq!(rankin_asymptotic(2), 2.0 * PI.sqrt(), max_relative = 1e-12);
        assert_relative_eq!(
            rankin_asymptotic(8),
            (PI / 8.0).sqrt() * 8f64.powf(1.5) * 16.0,
            max_relative = 1e-12
        );
    }

    #[test]
    fn quadrature_is_stable_under_tolerance_halving() {
        for d in [2usize, 3, 10, 60] {
            let quarter_pi = PI / 4.0;
            let cos_q = quarter_pi.cos();
            let exp = d as f64 - 2.0;
            let f = |t: f64| t.sin().powf(exp) * (t.cos() - cos_q);
            let coarse = adaptive_simpson(&f, 0.0, quarter_pi, 1e-9);
            let fine = adaptive_simpson(&f, 0.0, quarter_pi, 5e-10);
            assert!((coarse - fine).abs() <= 1e-6 * fine.abs());
        }
    }

    #[test]
    fn recurrence_reproduces_the_volume_table() {
        // frozen values of the direct iteration:
        // d=2: (0.5 + sqrt(2))/2, then (that + sqrt(3))/2
        // d=3: (0.5 + 2^(1/3))/2, then (that + 3^(1/3))/2
        let (t2, max2) = charikar_recurrence(2);
        assert_eq!(max2, 3);
        assert_relative_eq!(t2[0], 0.0);
        assert_relative_eq!(t2[1], 0.5);
        assert_relative_eq!(t2[2], 0.957_106_781_186_547_6, max_relative = 1e-12);
        assert_relative_eq!(t2[3], 1.344_578_794_377_712_4, max_relative = 1e-12);

        let (t3, max3) = charikar_recurrence(3);
        assert_eq!(max3, 3);
        assert_relative_eq!(t3[2], 0.879_960_524_947_436_6, max_relative = 1e-12);
        assert_relative_eq!(t3[3], 1.161_105_047_627_422_5, max_relative = 1e-12);

        // three-decimal truncation agrees with the published digits
        let trunc = |x: f64| (x * 1000.0).floor() / 1000.0;
        assert_eq!(trunc(t2[2]), 0.957);
        assert_eq!(trunc(t2[3]), 1.344);
        assert_eq!(trunc(t3[2]), 0.879);
        assert_eq!(trunc(t3[3]), 1.161);
    }

    #[test]
    fn recurrence_on_the_line() {
        // direct iteration: 0, 1/2, (1/2 + 2)/2 = 5/4
        let (t1, max1) = charikar_recurrence(1);
        assert_eq!(&t1[..3], &[0.0, 0.5, 1.25]);
        assert_eq!(max1, 2);
    }

    #[test]
    fn recurrence_stays_below_the_game_bounds() {
        for d in [2usize, 3] {
            let (_, max_t) = charikar_recurrence(d);
            assert!(max_t <= d + 1);
        }
    }

    #[test]
    fn ratio_bound_table() {
        assert_eq!(centered_ratio_bound(1), 2.0);
        assert_eq!(centered_ratio_bound(2), 5.0);
        assert_eq!(centered_ratio_bound(3), 12.0);
        assert_eq!(centered_ratio_bound(4), 24.0);
        assert_relative_eq!(centered_ratio_bound(5), rankin_upper(5).unwrap());
    }
}
