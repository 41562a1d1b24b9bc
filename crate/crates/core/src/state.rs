//! Three-qubit pure states and the generalized GHZ family.
//!
//! Basis index `i = 4*a + 2*b + c` for the computational label `|abc⟩`, so
//! qubit A is the most significant bit. Every tensor product in this crate
//! uses the same order.

use std::f64::consts::FRAC_PI_4;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::operators::Operator8;

/// Tolerance on `Σ|amp|² - 1` accepted by [`PureState3::new`].
pub const NORM_TOL: f64 = 1e-12;

/// Tolerance used for Hermiticity and imaginary residue checks on expectations.
pub const HERMITIAN_TOL: f64 = 1e-10;

/// Values within this distance outside `[0, π/4]` snap to the endpoint, so
/// decimal renderings such as `0.7853981634` are accepted as `π/4`.
pub const ANGLE_SNAP_TOL: f64 = 1e-9;

/// Angle `θ₁` of the state `cos θ₁|000⟩ + sin θ₁|111⟩`, restricted to `[0, π/4]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct GghzParam(f64);

impl GghzParam {
    pub fn new(theta1: f64) -> Result<Self> {
        if !(-ANGLE_SNAP_TOL..=FRAC_PI_4 + ANGLE_SNAP_TOL).contains(&theta1) {
            return Err(Error::ThetaOutOfRange(theta1));
        }
        Ok(Self(theta1.clamp(0.0, FRAC_PI_4)))
    }

    pub fn theta1(self) -> f64 {
        self.0
    }
}

/// Normalized amplitude vector of a three-qubit pure state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PureState3 {
    amps: [Complex64; 8],
}

impl PureState3 {
    /// Accepts amplitudes that are already normalized within [`NORM_TOL`].
    pub fn new(amps: [Complex64; 8]) -> Result<Self> {
        if amps.iter().any(|a| !a.re.is_finite() || !a.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        let norm_sqr: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
        if (norm_sqr - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized(norm_sqr));
        }
        Ok(Self { amps })
    }

    /// Rescales arbitrary nonzero amplitudes to unit norm.
    pub fn normalized(mut amps: [Complex64; 8]) -> Result<Self> {
        if amps.iter().any(|a| !a.re.is_finite() || !a.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Err(Error::NotNormalized(0.0));
        }
        for a in &mut amps {
            *a /= norm;
        }
        Self::new(amps)
    }

    /// Computational basis state `|index⟩`, `index < 8`.
    pub fn basis(index: usize) -> Self {
        assert!(index < 8, "basis index {index} out of range");
        let mut amps = [Complex64::new(0.0, 0.0); 8];
        amps[index] = Complex64::new(1.0, 0.0);
        Self { amps }
    }

    pub fn amplitudes(&self) -> &[Complex64; 8] {
        &self.amps
    }

    pub fn amp(&self, index: usize) -> Complex64 {
        self.amps[index]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// `M|ψ⟩` for an arbitrary 8×8 matrix. The result is not renormalized.
    pub fn apply(&self, op: &Operator8) -> [Complex64; 8] {
        op.mul_vec(&self.amps)
    }
}

/// `cos θ₁|000⟩ + sin θ₁|111⟩`.
pub fn gghz_state(p: GghzParam) -> PureState3 {
    let (s, c) = p.theta1().sin_cos();
    let mut amps = [Complex64::new(0.0, 0.0); 8];
    amps[0] = Complex64::new(c, 0.0);
    amps[7] = Complex64::new(s, 0.0);
    PureState3 { amps }
}

/// `⟨x|y⟩`, conjugate-linear in `x`.
pub fn inner_product(x: &PureState3, y: &PureState3) -> Complex64 {
    x.amps.iter().zip(y.amps.iter()).map(|(a, b)| a.conj() * b).sum()
}

/// `⟨s|M|s⟩` for Hermitian `M`.
///
/// Fails if `M` deviates from Hermitian by more than [`HERMITIAN_TOL`] or if
/// the imaginary part of the result exceeds it.
pub fn expectation(s: &PureState3, op: &Operator8) -> Result<f64> {
    let residual = op.hermiticity_residual();
    if residual > HERMITIAN_TOL {
        return Err(Error::NotHermitian(residual));
    }
    let value: Complex64 = s.amps.iter().zip(s.apply(op).iter()).map(|(a, b)| a.conj() * b).sum();
    if value.im.abs() > HERMITIAN_TOL {
        return Err(Error::ImaginaryResidue(value.im));
    }
    Ok(value.re)
}
