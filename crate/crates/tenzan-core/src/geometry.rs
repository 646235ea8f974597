//! Float oracle for the square-and-tangency construction.
//!
//! Independent check on the symbolic derivation: a square of side b
//! (the medium diameter, half the large) centered at the origin
//! inscribes the medium circle, and a small circle sits at each corner,
//! externally tangent to it. The small diameter that closes the
//! tangency is found by bisection on the residual, never by the
//! derived formula, so agreement between the two is evidence.
//!
//! Only this sub-configuration is modeled. How the full figure hosts
//! two large and five medium circles is not known from the sources,
//! and inventing it would verify nothing.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Circle {
    pub center: (f64, f64),
    pub radius: f64,
}

/// The checked construction for a given large diameter a.
#[derive(Debug, Clone, PartialEq)]
pub struct SquareConfig {
    pub a: f64,
    pub b: f64,
    /// Side length of the square centered at the origin.
    pub square_side: f64,
    pub center_circle: Circle,
    pub corner_centers: [(f64, f64); 4],
}

pub fn build_square_config(a: f64) -> Result<SquareConfig> {
    if !a.is_finite() || a <= 0.0 {
        return Err(Error::Geometry(format!("large diameter must be positive, got {a}")));
    }
    let b = a / 2.0;
    let h = b / 2.0;
    Ok(SquareConfig {
        a,
        b,
        square_side: b,
        center_circle: Circle { center: (0.0, 0.0), radius: h },
        corner_centers: [(h, h), (-h, h), (-h, -h), (h, -h)],
    })
}

/// Signed tangency defect for candidate small diameter c: corner
/// distance minus the sum of radii. Zero means the corner circle
/// touches the medium one; strictly decreasing in c.
pub fn tangency_residual(cfg: &SquareConfig, c: f64) -> f64 {
    let (x, y) = cfg.corner_centers[0];
    x.hypot(y) - (cfg.b + c) / 2.0
}

/// Bisection for the tangent small diameter over c in [0, a]. The
/// residual is linear in c with slope -1/2, so the bracket width bound
/// also bounds the residual.
pub fn solve_small(a: f64, tol: f64) -> f64 {
    let cfg = build_square_config(a).expect("bisection requires a > 0");
    let (mut lo, mut hi) = (0.0_f64, a);
    debug_assert!(tangency_residual(&cfg, lo) > 0.0 && tangency_residual(&cfg, hi) < 0.0);
    while hi - lo > tol {
        let mid = (lo + hi) / 2.0;
        if tangency_residual(&cfg, mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (lo + hi) / 2.0
}

const INCIDENCE_TOL: f64 = 1e-9;

/// Checks every stated incidence at c; returns the failures, one line
/// each, so a clean construction is an empty list.
pub fn check_incidences(cfg: &SquareConfig, c: f64) -> Vec<String> {
    let mut failures = Vec::new();
    let inscribed = (cfg.square_side / 2.0 - cfg.center_circle.radius).abs();
    if inscribed > INCIDENCE_TOL {
        failures.push(format!("square does not inscribe the medium circle (gap {inscribed:.3e})"));
    }
    let h = cfg.square_side / 2.0;
    for (i, &(x, y)) in cfg.corner_centers.iter().enumerate() {
        if (x.abs() - h).abs() > INCIDENCE_TOL || (y.abs() - h).abs() > INCIDENCE_TOL {
            failures.push(format!("small-circle center {i} is not a square corner: ({x}, {y})"));
        }
        let gap = (x.hypot(y) - (cfg.center_circle.radius + c / 2.0)).abs();
        if gap > INCIDENCE_TOL {
            failures.push(format!("corner circle {i} is not tangent to the medium circle (gap {gap:.3e})"));
        }
    }
    failures
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn configurations_follow_the_halving() {
        let cfg = build_square_config(10.0).unwrap();
        assert_eq!(cfg.b, 5.0);
        assert_eq!(cfg.corner_centers[0], (2.5, 2.5));
        assert_eq!(build_square_config(1.0).unwrap().b, 0.5);
        assert_eq!(build_square_config(2.0).unwrap().center_circle.radius, 0.5);
        assert!(matches!(build_square_config(0.0), Err(Error::Geometry(_))));
        assert!(matches!(build_square_config(-3.0), Err(Error::Geometry(_))));
        assert!(matches!(build_square_config(f64::NAN), Err(Error::Geometry(_))));
    }

    #[test]
    fn residual_vanishes_at_the_tangent_diameter() {
        let cfg = build_square_config(10.0).unwrap();
        assert!(tangency_residual(&cfg, 2.0710678118654755).abs() < 1e-12);
        let at_zero = tangency_residual(&cfg, 0.0);
        assert!((at_zero - (5.0 * 2f64.sqrt() - 5.0) / 2.0).abs() < 1e-12);
        assert!((at_zero - 1.0355339059327378).abs() < 1e-12);
        let closed_form = cfg.b * (2f64.sqrt() - 1.0);
        assert!(tangency_residual(&cfg, closed_form).abs() < 1e-12);
    }

    #[test]
    fn residual_is_strictly_decreasing() {
        let cfg = build_square_config(7.0).unwrap();
        let probes = [0.0, 0.5, 1.0, 1.4, 2.0, 5.0, 7.0];
        for w in probes.windows(2) {
            assert!(tangency_residual(&cfg, w[0]) > tangency_residual(&cfg, w[1]));
        }
    }

    #[test]
    fn bisection_recovers_both_stated_answers() {
        assert!((solve_small(10.0, 1e-12) - 2.0710678118654755).abs() < 1e-10);
        assert!((solve_small(1.0, 1e-12) - 0.2071067811865475).abs() < 1e-10);
    }

    #[test]
    fn solutions_scale_linearly() {
        let one = solve_small(1.0, 1e-13);
        let two = solve_small(2.0, 1e-13);
        assert!((two - 2.0 * one).abs() < 1e-10);
    }

    #[test]
    fn incidence_report_flags_broken_tangency() {
        let cfg = build_square_config(10.0).unwrap();
        let c = solve_small(10.0, 1e-12);
        assert!(check_incidences(&cfg, c).is_empty());
        let broken = check_incidences(&cfg, 2.0 * c);
        assert_eq!(broken.len(), 4);
        assert!(broken.iter().all(|f| f.contains("not tangent")));
    }
}
