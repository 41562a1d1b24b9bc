//! Sweeps of the numeric maximum over a uniform `θ₁` grid.

use std::f64::consts::SQRT_2;

use crate::bounds::{bound, nearest_branch, BoundVariant, Branch};
use crate::entanglement::gghz_tangle;
use crate::error::{Error, Result};
use crate::optimizer::{maximize_with, MaxResult, OptimizerConfig};
use crate::par::Exec;
use crate::state::{gghz_state, GghzParam};

/// Largest attainable `|⟨S⟩|` for any state and settings, `4√2`.
pub const QUANTUM_MAX: f64 = 4.0 * SQRT_2;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub theta1: f64,
    pub tau: f64,
    pub s_numeric: f64,
    pub bound_third: f64,
    pub bound_half: f64,
    pub branch: Branch,
    pub converged: bool,
}

impl SweepRow {
    /// Fills in both bounds and the nearest branch for a numeric value at `tau`.
    pub fn from_numeric(theta1: f64, tau: f64, s_numeric: f64, converged: bool) -> Result<Self> {
        Ok(Self {
            theta1,
            tau,
            s_numeric,
            bound_third: bound(BoundVariant::OriginalThird, tau)?.value,
            bound_half: bound(BoundVariant::CommentHalf, tau)?.value,
            branch: nearest_branch(tau, s_numeric),
            converged,
        })
    }
}

/// A row together with the optimizer output it came from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepPoint {
    pub row: SweepRow,
    pub max: MaxResult,
}

/// `steps` points from `theta_min` to `theta_max` inclusive.
pub fn theta_grid(theta_min: f64, theta_max: f64, steps: usize) -> Result<Vec<f64>> {
    if steps < 2 {
        return Err(Error::InvalidArgument("steps must be >= 2".into()));
    }
    let lo = GghzParam::new(theta_min)?.theta1();
    let hi = GghzParam::new(theta_max)?.theta1();
    if !(lo < hi) {
        return Err(Error::InvalidArgument(format!(
            "theta_min ({theta_min}) must be below theta_max ({theta_max})"
        )));
    }
    let last = steps - 1;
    Ok((0..steps)
        .map(|i| {
            if i == last {
                hi
            } else {
                lo + (hi - lo) * i as f64 / last as f64
            }
        })
        .collect())
}

/// Maximizes `⟨S⟩` for the GGHZ state at `theta1` and tabulates the bounds.
pub fn sweep_point(theta1: f64, cfg: &OptimizerConfig, exec: Exec) -> Result<SweepPoint> {
    let p = GghzParam::new(theta1)?;
    let max = maximize_with(&gghz_state(p), cfg, exec)?;
    let row = SweepRow::from_numeric(p.theta1(), gghz_tangle(p).value(), max.value, max.converged)?;
    Ok(SweepPoint { row, max })
}

/// One [`SweepPoint`] per grid angle, in grid order.
pub fn sweep(
    theta_min: f64,
    theta_max: f64,
    steps: usize,
    cfg: &OptimizerConfig,
    exec: Exec,
) -> Result<Vec<SweepPoint>> {
    cfg.validate()?;
    let grid = theta_grid(theta_min, theta_max, steps)?;
    exec.map(grid.len(), |i| sweep_point(grid[i], cfg, exec))
        .into_iter()
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_4;

    #[test]
    fn grid_endpoints_are_exact() {
        let g = theta_grid(0.0, FRAC_PI_4, 101).unwrap();
        assert_eq!(g.len(), 101);
        assert_eq!(g[0], 0.0);
        assert_eq!(g[100], FRAC_PI_4);
        assert!(g.windows(2).all(|w| w[1] > w[0]));
    }

    #[test]
    fn grid_rejects_bad_ranges() {
        assert!(theta_grid(0.0, 0.5, 1).is_err());
        assert!(theta_grid(0.3, 0.3, 10).is_err());
        assert!(theta_grid(0.5, 0.3, 10).is_err());
        assert!(theta_grid(-0.1, 0.3, 10).is_err());
        assert!(theta_grid(0.0, 1.0, 10).is_err());
    }

    #[test]
    fn small_sweep_rows_are_consistent() {
        let cfg = OptimizerConfig {
            starts: 16,
            ..Default::default()
        };
        let pts = sweep(0.0, FRAC_PI_4, 5, &cfg, Exec::default()).unwrap();
        for p in &pts {
            let r = p.row;
            let tau = (2.0 * r.theta1).sin().powi(2);
            assert!((r.tau - tau).abs() < 1e-12);
            assert!(r.s_numeric <= QUANTUM_MAX + 1e-9);
            assert_eq!(r.s_numeric, p.max.value);
        }
        assert!(pts.windows(2).all(|w| w[1].row.tau > w[0].row.tau));
    }
}
