//! Maximization of `⟨S⟩` over the six measurement directions.
//!
//! `⟨S⟩` is affine in each Bloch vector separately, so with five vectors
//! fixed the best sixth is the normalized coefficient vector. Cycling this
//! update over the six slots never decreases the objective. Independent runs
//! from uniformly random starts are combined by taking the best value, lowest
//! run index first on ties.

use crate::error::{Error, Result};
use crate::operators::{tensor3, BlochVector, CorrelationTensor, MeasurementSettings, Operator2, Slot};
use crate::par::Exec;
use crate::rng::{sphere_point, CounterStream, DOMAIN_OPTIMIZER};
use crate::state::{expectation, PureState3};

/// Below this coefficient norm a slot keeps its incumbent vector.
pub const ZERO_GRADIENT: f64 = 1e-14;

/// Two runs whose values differ by no more than this are treated as tied.
pub const TIE_TOL: f64 = 1e-12;

/// Refuse grid oracles needing more than this many `(a, a', b, b')` points.
pub const GRID_COST_LIMIT: u128 = 1_000_000_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimizerConfig {
    pub starts: usize,
    pub max_sweeps: usize,
    /// Stop a run once one full sweep improves the objective by less than this.
    pub tol: f64,
    pub seed: u64,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        Self {
            starts: 64,
            max_sweeps: 200,
            tol: 1e-10,
            seed: 42,
        }
    }
}

impl OptimizerConfig {
    pub fn validate(&self) -> Result<()> {
        if self.starts == 0 {
            return Err(Error::InvalidArgument("starts must be >= 1".into()));
        }
        if self.max_sweeps == 0 {
            return Err(Error::InvalidArgument("max_sweeps must be >= 1".into()));
        }
        if !self.tol.is_finite() || self.tol <= 0.0 {
            return Err(Error::InvalidArgument("tol must be a positive finite number".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MaxResult {
    pub value: f64,
    pub settings: MeasurementSettings,
    pub sweeps_used: usize,
    pub converged: bool,
    /// Index of the winning start.
    pub run: usize,
}

/// Objective value after every single-slot update of one run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunTrace {
    pub initial: f64,
    pub updates: Vec<f64>,
    pub result: MaxResult,
}

/// Optimal direction for `which` with the other five vectors held fixed.
pub fn best_response(s: &PureState3, m: &MeasurementSettings, which: Slot) -> BlochVector {
    best_response_in(&CorrelationTensor::of(s), m, which)
}

/// [`best_response`] against a precomputed correlation tensor.
///
/// The objective is affine in one slot, `f(v) = g·v + h`, where `h` collects
/// the terms not involving that slot. `g_i` is read off as `f(e_i) − f(0)`.
pub fn best_response_in(t: &CorrelationTensor, m: &MeasurementSettings, which: Slot) -> BlochVector {
    let offset = t.svetlichny_value(&m.with(which, BlochVector::unnormalized(0.0, 0.0, 0.0)));
    let g = [BlochVector::X, BlochVector::Y, BlochVector::Z].map(|e| t.svetlichny_value(&m.with(which, e)) - offset);
    let norm = (g[0] * g[0] + g[1] * g[1] + g[2] * g[2]).sqrt();
    if norm < ZERO_GRADIENT {
        return m.get(which);
    }
    BlochVector::unnormalized(g[0] / norm, g[1] / norm, g[2] / norm)
}

fn start_settings(cfg: &OptimizerConfig, run: usize) -> MeasurementSettings {
    let mut rng = CounterStream::new(cfg.seed, DOMAIN_OPTIMIZER).stream(run as u64);
    let mut vectors = [BlochVector::Z; 6];
    for v in vectors.iter_mut() {
        *v = sphere_point(&mut rng);
    }
    MeasurementSettings::algebraic(vectors)
}

fn run_once(t: &CorrelationTensor, cfg: &OptimizerConfig, run: usize, mut trace: Option<&mut Vec<f64>>) -> MaxResult {
    let mut m = start_settings(cfg, run);
    let mut value = t.svetlichny_value(&m);
    let mut converged = false;
    let mut sweeps_used = 0;
    for _ in 0..cfg.max_sweeps {
        sweeps_used += 1;
        let before = value;
        for slot in Slot::ALL {
            m = m.with(slot, best_response_in(t, &m, slot));
            value = t.svetlichny_value(&m);
            if let Some(tr) = trace.as_deref_mut() {
                tr.push(value);
            }
        }
        if value - before < cfg.tol {
            converged = true;
            break;
        }
    }
    MaxResult {
        value,
        settings: m,
        sweeps_used,
        converged,
        run,
    }
}

/// Replays a single start and records the objective after every update.
pub fn trace_run(s: &PureState3, cfg: &OptimizerConfig, run: usize) -> Result<RunTrace> {
    cfg.validate()?;
    let t = CorrelationTensor::of(s);
    let initial = t.svetlichny_value(&start_settings(cfg, run));
    let mut updates = Vec::new();
    let result = run_once(&t, cfg, run, Some(&mut updates));
    Ok(RunTrace {
        initial,
        updates,
        result,
    })
}

/// Best `⟨S⟩` over `cfg.starts` alternating best-response runs.
pub fn maximize(s: &PureState3, cfg: &OptimizerConfig) -> Result<MaxResult> {
    maximize_with(s, cfg, Exec::default())
}

pub fn maximize_with(s: &PureState3, cfg: &OptimizerConfig, exec: Exec) -> Result<MaxResult> {
    cfg.validate()?;
    let t = CorrelationTensor::of(s);
    let runs = exec.map(cfg.starts, |run| run_once(&t, cfg, run, None));
    let best = runs
        .into_iter()
        .reduce(|best, r| if r.value > best.value + TIE_TOL { r } else { best })
        .expect("starts >= 1");
    Ok(best)
}

/// Lower bound on `max ⟨S⟩` from an exhaustive angular grid.
///
/// `a, a', b, b'` range over the `n_theta × n_phi` grid of polar angles
/// `π·i/n_theta` and azimuths `2π·j/n_phi` (the +z pole is included, and the
/// equator whenever `n_theta` is even). For each
/// grid point the two remaining slots are set by best response; the
/// objective splits as `c·u + c'·w`, so this is exact and contributes
/// `|u| + |w|`. The correlation tensor is rebuilt here from the 8×8
/// matrices, independently of the optimizer's fast path.
pub fn grid_oracle(s: &PureState3, n_theta: usize, n_phi: usize) -> Result<f64> {
    grid_oracle_with(s, n_theta, n_phi, Exec::default())
}

pub fn grid_oracle_with(s: &PureState3, n_theta: usize, n_phi: usize, exec: Exec) -> Result<f64> {
    if n_theta < 2 || n_phi < 2 {
        return Err(Error::InvalidArgument("grid sizes must be >= 2".into()));
    }
    let g = (n_theta as u128) * (n_phi as u128);
    let cost = g.pow(4);
    if cost > GRID_COST_LIMIT {
        return Err(Error::GridTooLarge {
            n_theta,
            n_phi,
            cost,
            limit: GRID_COST_LIMIT,
        });
    }

    let paulis = [Operator2::pauli_x(), Operator2::pauli_y(), Operator2::pauli_z()];
    let mut t = [[[0.0f64; 3]; 3]; 3];
    for (i, pi) in paulis.iter().enumerate() {
        for (j, pj) in paulis.iter().enumerate() {
            for (k, pk) in paulis.iter().enumerate() {
                t[i][j][k] = expectation(s, &tensor3(pi, pj, pk))?;
            }
        }
    }

    let mut dirs = Vec::with_capacity(n_theta * n_phi);
    for i in 0..n_theta {
        let theta = std::f64::consts::PI * i as f64 / n_theta as f64;
        for j in 0..n_phi {
            let phi = std::f64::consts::TAU * j as f64 / n_phi as f64;
            dirs.push(BlochVector::from_angles(theta, phi).to_array());
        }
    }
    let n = dirs.len();

    // P(a)_jk = Σ_i a_i T_ijk
    let partial: Vec<[[f64; 3]; 3]> = dirs
        .iter()
        .map(|a| {
            let mut p = [[0.0; 3]; 3];
            for (i, ai) in a.iter().enumerate() {
                for j in 0..3 {
                    for k in 0..3 {
                        p[j][k] += ai * t[i][j][k];
                    }
                }
            }
            p
        })
        .collect();

    let row = |b: &[f64; 3], p: &[[f64; 3]; 3]| -> [f64; 3] {
        let mut out = [0.0; 3];
        for (j, bj) in b.iter().enumerate() {
            for k in 0..3 {
                out[k] += bj * p[j][k];
            }
        }
        out
    };

    let best_per_pair = exec.map(n * n, |pair| {
        let (ia, iap) = (pair / n, pair % n);
        let mut plus = [[0.0; 3]; 3];
        let mut minus = [[0.0; 3]; 3];
        for j in 0..3 {
            for k in 0..3 {
                plus[j][k] = partial[ia][j][k] + partial[iap][j][k];
                minus[j][k] = partial[ia][j][k] - partial[iap][j][k];
            }
        }
        let xs: Vec<[f64; 3]> = dirs.iter().map(|b| row(b, &plus)).collect();
        let ys: Vec<[f64; 3]> = dirs.iter().map(|b| row(b, &minus)).collect();
        let mut best = f64::NEG_INFINITY;
        for ib in 0..n {
            for ibp in 0..n {
                let (x, y, xp, yp) = (&xs[ib], &ys[ib], &xs[ibp], &ys[ibp]);
                let u = [x[0] + yp[0], x[1] + yp[1], x[2] + yp[2]];
                let w = [y[0] - xp[0], y[1] - xp[1], y[2] - xp[2]];
                let v =
                    (u[0] * u[0] + u[1] * u[1] + u[2] * u[2]).sqrt() + (w[0] * w[0] + w[1] * w[1] + w[2] * w[2]).sqrt();
                if v > best {
                    best = v;
                }
            }
        }
        best
    });
    Ok(best_per_pair.into_iter().fold(f64::NEG_INFINITY, f64::max))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operators::svetlichny_expectation;
    use crate::state::{gghz_state, GghzParam};
    use approx::assert_abs_diff_eq;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, SQRT_2};

    fn gghz(theta: f64) -> PureState3 {
        gghz_state(GghzParam::new(theta).unwrap())
    }

    fn ghz_optimal() -> MeasurementSettings {
        let eq = |phi: f64| BlochVector::from_angles(FRAC_PI_2, phi);
        MeasurementSettings::new([
            eq(0.0),
            eq(FRAC_PI_2),
            eq(0.0),
            eq(FRAC_PI_2),
            eq(-FRAC_PI_4),
            eq(FRAC_PI_4),
        ])
        .unwrap()
    }

    #[test]
    fn zero_operator_keeps_incumbent() {
        let m = MeasurementSettings::new([BlochVector::Z; 6]).unwrap();
        let ghz = gghz(FRAC_PI_4);
        for slot in Slot::ALL {
            assert_eq!(best_response(&ghz, &m, slot), m.get(slot));
        }
    }

    #[test]
    fn one_update_recovers_ghz_optimum() {
        let ghz = gghz(FRAC_PI_4);
        let opt = ghz_optimal();
        for slot in Slot::ALL {
            let perturbed = opt.with(slot, BlochVector::Z);
            let v = best_response(&ghz, &perturbed, slot);
            let m = MeasurementSettings::new(*perturbed.with(slot, v).vectors()).unwrap();
            assert_abs_diff_eq!(svetlichny_expectation(&ghz, &m).unwrap(), 4.0 * SQRT_2, epsilon = 1e-12);
        }
        // The grid oracle reaches the same optimum on a grid containing these azimuths.
        assert_abs_diff_eq!(grid_oracle(&ghz, 4, 4).unwrap(), 4.0 * SQRT_2, epsilon = 1e-12);
    }

    #[test]
    fn best_response_never_decreases_objective() {
        let s = gghz(0.4);
        let t = CorrelationTensor::of(&s);
        let mut rng = CounterStream::new(9, 0).stream(0);
        for _ in 0..200 {
            let m = MeasurementSettings::algebraic([(); 6].map(|_| sphere_point(&mut rng)));
            for slot in Slot::ALL {
                let before = t.svetlichny_value(&m);
                let after = t.svetlichny_value(&m.with(slot, best_response_in(&t, &m, slot)));
                assert!(after >= before - 1e-12, "{after} < {before}");
            }
        }
    }

    #[test]
    fn endpoints() {
        let cfg = OptimizerConfig::default();
        let r = maximize(&gghz(FRAC_PI_4), &cfg).unwrap();
        assert_abs_diff_eq!(r.value, 4.0 * SQRT_2, epsilon = 1e-6);
        let r = maximize(&gghz(0.0), &cfg).unwrap();
        assert_abs_diff_eq!(r.value, 4.0, epsilon = 1e-6);
    }

    #[test]
    fn result_settings_reproduce_value() {
        let s = gghz(0.3);
        let r = maximize(&s, &OptimizerConfig::default()).unwrap();
        assert!(r.settings.is_unit());
        assert_abs_diff_eq!(
            svetlichny_expectation(&s, &r.settings).unwrap(),
            r.value,
            epsilon = 1e-10
        );
    }

    #[test]
    fn sequential_and_parallel_agree_bitwise() {
        let s = gghz(0.5);
        let cfg = OptimizerConfig::default();
        let a = maximize_with(&s, &cfg, Exec::Sequential).unwrap();
        let b = maximize_with(&s, &cfg, Exec::default()).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.value.to_bits(), b.value.to_bits());
    }

    #[test]
    fn trace_is_monotone_and_matches_run() {
        let s = gghz(0.35);
        let cfg = OptimizerConfig::default();
        let tr = trace_run(&s, &cfg, 3).unwrap();
        let mut prev = tr.initial;
        for v in &tr.updates {
            assert!(*v >= prev - 1e-12);
            prev = *v;
        }
        assert_eq!(*tr.updates.last().unwrap(), tr.result.value);
        assert_eq!(tr.updates.len(), 6 * tr.result.sweeps_used);
    }

    #[test]
    fn invalid_config_rejected() {
        let s = gghz(0.1);
        let bad = [
            OptimizerConfig {
                starts: 0,
                ..Default::default()
            },
            OptimizerConfig {
                max_sweeps: 0,
                ..Default::default()
            },
            OptimizerConfig {
                tol: 0.0,
                ..Default::default()
            },
            OptimizerConfig {
                tol: f64::NAN,
                ..Default::default()
            },
        ];
        for cfg in bad {
            assert!(maximize(&s, &cfg).is_err());
        }
    }

    #[test]
    fn grid_oracle_examples() {
        let g = grid_oracle(&gghz(FRAC_PI_4), 6, 6).unwrap();
        assert!((5.0..=4.0 * SQRT_2 + 1e-9).contains(&g), "{g}");
        assert_abs_diff_eq!(grid_oracle(&gghz(0.0), 8, 8).unwrap(), 4.0, epsilon = 1e-3);
    }

    #[test]
    fn grid_oracle_refuses_large_or_degenerate_grids() {
        let s = gghz(0.2);
        match grid_oracle(&s, 100, 100) {
            Err(Error::GridTooLarge { cost, .. }) => assert_eq!(cost, 10_000u128.pow(4)),
            other => panic!("{other:?}"),
        }
        assert!(grid_oracle(&s, 1, 4).is_err());
        assert!(grid_oracle(&s, 4, 1).is_err());
    }
}
