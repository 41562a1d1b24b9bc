//! The Coffman-Kundu-Wootters 3-tangle.

use std::f64::consts::FRAC_PI_4;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::state::{GghzParam, PureState3};

/// Cancellation slack accepted below 0 and above 1 before clamping.
pub const TANGLE_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Tangle(f64);

impl Tangle {
    pub fn value(self) -> f64 {
        self.0
    }

    fn checked(raw: f64) -> Result<Self> {
        if !(-TANGLE_TOL..=1.0 + TANGLE_TOL).contains(&raw) {
            return Err(Error::TangleOutOfRange(raw));
        }
        Ok(Self(raw.clamp(0.0, 1.0)))
    }
}

/// `τ = 4|d₁ − 2d₂ + 4d₃|` from the amplitudes `a_ijk` (index `4i + 2j + k`).
pub fn three_tangle(s: &PureState3) -> Result<Tangle> {
    let norm = s.norm_sqr();
    if (norm - 1.0).abs() > crate::state::NORM_TOL {
        return Err(Error::NotNormalized(norm));
    }
    let a = s.amplitudes();
    let [a000, a001, a010, a011, a100, a101, a110, a111] = *a;
    let sq = |x: Complex64| x * x;

    let d1 = sq(a000) * sq(a111) + sq(a001) * sq(a110) + sq(a010) * sq(a101) + sq(a100) * sq(a011);
    let d2 = a000 * a111 * a011 * a100
        + a000 * a111 * a101 * a010
        + a000 * a111 * a110 * a001
        + a011 * a100 * a101 * a010
        + a011 * a100 * a110 * a001
        + a101 * a010 * a110 * a001;
    let d3 = a000 * a110 * a101 * a011 + a111 * a001 * a010 * a100;

    Tangle::checked(4.0 * (d1 - 2.0 * d2 + 4.0 * d3).norm())
}

/// Closed form `sin²(2θ₁)` for the GGHZ family.
pub fn gghz_tangle(p: GghzParam) -> Tangle {
    let s = (2.0 * p.theta1()).sin();
    Tangle((s * s).min(1.0))
}

/// Inverse of [`gghz_tangle`]: `θ₁ = arcsin(√τ) / 2`.
pub fn theta_for_tangle(tau: f64) -> Result<GghzParam> {
    if !tau.is_finite() || !(0.0..=1.0).contains(&tau) {
        return Err(Error::TauOutOfRange(tau));
    }
    let theta = (tau.sqrt().asin() / 2.0).min(FRAC_PI_4);
    GghzParam::new(theta)
}
