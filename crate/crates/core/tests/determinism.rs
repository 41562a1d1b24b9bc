use svetlichny::bounds::audit_chain_with;
use svetlichny::optimizer::{grid_oracle_with, maximize_with};
use svetlichny::par::with_thread_cap;
use svetlichny::{audit_chain, gghz_state, maximize, sweep, ConstraintMode, Exec, GghzParam, OptimizerConfig};

fn execs() -> Vec<Exec> {
    let mut v = vec![Exec::Sequential];
    #[cfg(feature = "parallel")]
    v.push(Exec::Parallel);
    v
}

#[test]
fn maximize_is_identical_across_executors() {
    let s = gghz_state(GghzParam::new(0.37).unwrap());
    let cfg = OptimizerConfig::default();
    let results: Vec<_> = execs()
        .into_iter()
        .map(|e| maximize_with(&s, &cfg, e).unwrap())
        .collect();
    for r in &results {
        assert_eq!(r.value.to_bits(), results[0].value.to_bits());
        assert_eq!(r.settings, results[0].settings);
        assert_eq!(r.run, results[0].run);
    }
}

#[test]
fn maximize_is_identical_across_thread_counts() {
    let s = gghz_state(GghzParam::new(0.61).unwrap());
    let cfg = OptimizerConfig::default();
    let base = maximize(&s, &cfg).unwrap();
    for n in [1, 2, 3, 8] {
        let r = with_thread_cap(Some(n), || maximize(&s, &cfg)).unwrap().unwrap();
        assert_eq!(r, base);
    }
}

#[test]
fn seed_selects_the_start_points() {
    let s = gghz_state(GghzParam::new(0.2).unwrap());
    let a = maximize(
        &s,
        &OptimizerConfig {
            seed: 1,
            ..Default::default()
        },
    )
    .unwrap();
    let b = maximize(
        &s,
        &OptimizerConfig {
            seed: 2,
            ..Default::default()
        },
    )
    .unwrap();
    assert_ne!(a.settings, b.settings);
    assert!((a.value - b.value).abs() < 1e-9);
}

#[test]
fn sweep_is_identical_across_executors() {
    let cfg = OptimizerConfig {
        starts: 8,
        ..Default::default()
    };
    let runs: Vec<_> = execs()
        .into_iter()
        .map(|e| sweep(0.0, std::f64::consts::FRAC_PI_4, 17, &cfg, e).unwrap())
        .collect();
    for r in &runs {
        assert_eq!(r, &runs[0]);
    }
}

#[test]
fn audit_is_identical_across_executors() {
    for mode in [ConstraintMode::Free, ConstraintMode::SumLeqOne] {
        let runs: Vec<_> = execs()
            .into_iter()
            .map(|e| audit_chain_with(50_000, 9, mode, e).unwrap())
            .collect();
        for r in &runs {
            assert_eq!(r, &runs[0]);
        }
    }
    let other = audit_chain(50_000, 10, ConstraintMode::Free).unwrap();
    assert_ne!(
        other.violations,
        audit_chain(50_000, 9, ConstraintMode::Free).unwrap().violations
    );
}

#[test]
fn grid_oracle_is_identical_across_executors() {
    let s = gghz_state(GghzParam::new(0.5).unwrap());
    let vals: Vec<_> = execs()
        .into_iter()
        .map(|e| grid_oracle_with(&s, 6, 6, e).unwrap())
        .collect();
    for v in &vals {
        assert_eq!(v.to_bits(), vals[0].to_bits());
    }
}
