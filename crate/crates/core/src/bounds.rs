//! Analytic upper bounds on `max ⟨S⟩` for the GGHZ family and checks on them.
//!
//! Two piecewise forms are compared. Both use `4√(1−τ)` below a crossover
//! tangle and `4√(2τ)` above it; they differ only in where the crossover
//! sits (`1/3` or `1/2`). This module evaluates both, evaluates the
//! three-angle bound they are derived from, audits the inequality chain that
//! moves the crossover to `1/2`, and locates the crossover in numeric data.

use std::f64::consts::FRAC_PI_4;

use crate::entanglement::gghz_tangle;
use crate::error::{Error, Result};
use crate::par::Exec;
use crate::rng::{CounterStream, DOMAIN_AUDIT};
use crate::state::GghzParam;
use crate::sweep::SweepRow;

/// Local realistic (and hybrid) bound on `|⟨S⟩|`.
pub const CLASSICAL_BOUND: f64 = 4.0;

/// Two branch values closer than this at a threshold count as agreeing.
pub const BRANCH_AGREE_TOL: f64 = 1e-12;

/// Slack when comparing the two sides of a branch condition.
pub const CONDITION_TOL: f64 = 1e-12;

/// Jumps above this are reported by [`continuity_scan`].
pub const JUMP_TOL: f64 = 1e-6;

pub fn classical_bound() -> f64 {
    CLASSICAL_BOUND
}

/// True when `value` exceeds the classical bound by more than `1e-9`.
pub fn violates_classical(value: f64) -> bool {
    value > CLASSICAL_BOUND + 1e-9
}

/// `4√(1−τ)`
pub fn cos_curve(tau: f64) -> f64 {
    4.0 * (1.0 - tau).max(0.0).sqrt()
}

/// `4√(2τ)`
pub fn sin_curve(tau: f64) -> f64 {
    4.0 * (2.0 * tau).max(0.0).sqrt()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BoundVariant {
    /// Crossover at `τ = 1/3`.
    OriginalThird,
    /// Crossover at `τ = 1/2`.
    CommentHalf,
}

impl BoundVariant {
    pub const ALL: [BoundVariant; 2] = [BoundVariant::OriginalThird, BoundVariant::CommentHalf];

    pub fn threshold(self) -> f64 {
        match self {
            BoundVariant::OriginalThird => 1.0 / 3.0,
            BoundVariant::CommentHalf => 0.5,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            BoundVariant::OriginalThird => "ORIGINAL_THIRD",
            BoundVariant::CommentHalf => "COMMENT_HALF",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundValue {
    pub value: f64,
    /// `|4√(1−τ) − 4√(2τ)|` when `τ` sits exactly on the threshold and the
    /// branches disagree; zero otherwise.
    pub jump: f64,
}

impl BoundValue {
    pub fn discontinuous(&self) -> bool {
        self.jump > 0.0
    }
}

/// Piecewise bound for `variant`. At the threshold itself the larger branch
/// is returned and any disagreement is reported in [`BoundValue::jump`].
pub fn bound(variant: BoundVariant, tau: f64) -> Result<BoundValue> {
    if !tau.is_finite() || !(0.0..=1.0).contains(&tau) {
        return Err(Error::TauOutOfRange(tau));
    }
    let t = variant.threshold();
    let value = if tau < t {
        BoundValue {
            value: cos_curve(tau),
            jump: 0.0,
        }
    } else if tau > t {
        BoundValue {
            value: sin_curve(tau),
            jump: 0.0,
        }
    } else {
        let (lo, hi) = (cos_curve(tau), sin_curve(tau));
        let gap = (lo - hi).abs();
        BoundValue {
            value: lo.max(hi),
            jump: if gap > BRANCH_AGREE_TOL { gap } else { 0.0 },
        }
    };
    Ok(value)
}

/// Which analytic curve a numeric value follows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Branch {
    /// `4√(1−τ)`
    Cos,
    /// `4√(2τ)`
    Sin,
}

impl Branch {
    pub fn name(self) -> &'static str {
        match self {
            Branch::Cos => "COS_BRANCH",
            Branch::Sin => "SIN_BRANCH",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "COS_BRANCH" => Some(Branch::Cos),
            "SIN_BRANCH" => Some(Branch::Sin),
            _ => None,
        }
    }
}

/// Nearest of the two curves by absolute distance; ties go to `Cos`.
pub fn nearest_branch(tau: f64, value: f64) -> Branch {
    if (value - sin_curve(tau)).abs() < (value - cos_curve(tau)).abs() {
        Branch::Sin
    } else {
        Branch::Cos
    }
}

/// Angles of the three-parameter bound: `θ₁` and the two setting angles.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Eq2Point {
    pub theta1: f64,
    pub theta_d: f64,
    pub theta_dp: f64,
}

impl Eq2Point {
    pub fn new(theta1: f64, theta_d: f64, theta_dp: f64) -> Result<Self> {
        if !(theta1.is_finite() && theta_d.is_finite() && theta_dp.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self {
            theta1,
            theta_d,
            theta_dp,
        })
    }

    /// `cos²θ_d + cos²θ_d'`
    pub fn cos_sum(&self) -> f64 {
        self.theta_d.cos().powi(2) + self.theta_dp.cos().powi(2)
    }

    /// `sin²θ_d + sin²θ_d'`
    pub fn sin_sum(&self) -> f64 {
        self.theta_d.sin().powi(2) + self.theta_dp.sin().powi(2)
    }

    /// `(cos²2θ₁ · (cos²θ_d + cos²θ_d'), sin²2θ₁ · (sin²θ_d + sin²θ_d'))`
    pub fn condition_sides(&self) -> (f64, f64) {
        let (s2, c2) = (2.0 * self.theta1).sin_cos();
        (c2 * c2 * self.cos_sum(), s2 * s2 * self.sin_sum())
    }

    /// First branch condition (`≥`), with [`CONDITION_TOL`] slack.
    pub fn cos_condition(&self) -> bool {
        let (lhs, rhs) = self.condition_sides();
        lhs >= rhs - CONDITION_TOL
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Eq2Branch {
    Cos,
    Sin,
    Tie,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Eq2Bound {
    pub value: f64,
    pub branch: Eq2Branch,
}

/// `4|cos 2θ₁|√(cos²θ_d + cos²θ_d')` when the first condition holds,
/// `4|sin 2θ₁|√(sin²θ_d + sin²θ_d')` when the second does.
///
/// On a tie the two expressions coincide (their squares are the two sides
/// of the condition times 16) and the common value is returned.
pub fn eq2_bound(p: &Eq2Point) -> Eq2Bound {
    let (lhs, rhs) = p.condition_sides();
    let (s2, c2) = (2.0 * p.theta1).sin_cos();
    let cos_value = 4.0 * c2.abs() * p.cos_sum().sqrt();
    let sin_value = 4.0 * s2.abs() * p.sin_sum().sqrt();
    if (lhs - rhs).abs() <= CONDITION_TOL {
        Eq2Bound {
            value: 0.5 * (cos_value + sin_value),
            branch: Eq2Branch::Tie,
        }
    } else if lhs > rhs {
        Eq2Bound {
            value: cos_value,
            branch: Eq2Branch::Cos,
        }
    } else {
        Eq2Bound {
            value: sin_value,
            branch: Eq2Branch::Sin,
        }
    }
}

/// The implications of the chain, in order. Each names the conclusion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ChainStep {
    /// `cos²2θ₁·C ≥ sin²2θ₁·(2 − C)`, with `C = cos²θ_d + cos²θ_d'`
    SubstituteSinSum,
    /// `C ≥ 2 sin²2θ₁`
    CollectTerms,
    /// `2 sin²2θ₁ ≤ 1`, which needs `C ≤ 1`
    ApplySumAtMostOne,
    /// `sin²2θ₁ ≤ 1/2`
    Halve,
    /// `τ ≤ 1/2`
    TangleAtMostHalf,
}

impl ChainStep {
    pub const ALL: [ChainStep; 5] = [
        ChainStep::SubstituteSinSum,
        ChainStep::CollectTerms,
        ChainStep::ApplySumAtMostOne,
        ChainStep::Halve,
        ChainStep::TangleAtMostHalf,
    ];

    pub fn describe(self) -> &'static str {
        match self {
            ChainStep::SubstituteSinSum => "cos^2(2t1)*C >= sin^2(2t1)*(2 - C)",
            ChainStep::CollectTerms => "C >= 2 sin^2(2t1)",
            ChainStep::ApplySumAtMostOne => "2 sin^2(2t1) <= 1",
            ChainStep::Halve => "sin^2(2t1) <= 1/2",
            ChainStep::TangleAtMostHalf => "tau <= 1/2",
        }
    }
}

/// Result of pushing one point through the chain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointCheck {
    pub point: Eq2Point,
    pub condition_holds: bool,
    pub tau: f64,
    /// The first condition holds yet `τ > 1/2`.
    pub violation: bool,
    /// First step whose premise holds but whose conclusion does not.
    pub failed_step: Option<ChainStep>,
}

/// Evaluates the chain's premise and every implication at `p`.
///
/// `τ` comes from the GGHZ closed form and requires `θ₁ ∈ [0, π/4]`.
pub fn check_point(p: &Eq2Point) -> Result<PointCheck> {
    let tau = gghz_tangle(GghzParam::new(p.theta1)?).value();
    let (s2, c2) = (2.0 * p.theta1).sin_cos();
    let (sin2, cos2) = (s2 * s2, c2 * c2);
    let c = p.cos_sum();
    let tol = CONDITION_TOL;

    let premise = p.cos_condition();
    let conclusions = [
        cos2 * c >= sin2 * (2.0 - c) - tol,
        c >= 2.0 * sin2 - tol,
        2.0 * sin2 <= 1.0 + tol,
        sin2 <= 0.5 + tol,
        tau <= 0.5 + tol,
    ];

    let mut failed_step = None;
    if premise {
        let mut holds = true;
        for (step, &ok) in ChainStep::ALL.iter().zip(conclusions.iter()) {
            if holds && !ok {
                failed_step = Some(*step);
                break;
            }
            holds = ok;
        }
    }
    Ok(PointCheck {
        point: *p,
        condition_holds: premise,
        tau,
        violation: premise && tau > 0.5 + tol,
        failed_step,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ConstraintMode {
    /// `θ_d, θ_d'` unconstrained.
    Free,
    /// Samples with `cos²θ_d + cos²θ_d' > 1` are discarded.
    SumLeqOne,
}

impl ConstraintMode {
    pub fn name(self) -> &'static str {
        match self {
            ConstraintMode::Free => "FREE",
            ConstraintMode::SumLeqOne => "SUM_LEQ_ONE",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChainAudit {
    pub constraint_mode: ConstraintMode,
    pub samples_drawn: usize,
    /// Samples retained after the constraint filter.
    pub samples_tested: usize,
    pub condition_hits: usize,
    /// Points (in draw order) where the first condition holds but `τ > 1/2`.
    pub violations: Vec<Eq2Point>,
    /// Failure count per [`ChainStep`], indexed like `ChainStep::ALL`.
    pub step_failures: [usize; 5],
}

const AUDIT_CHUNK: usize = 4096;

/// Random search for points that break the chain.
///
/// `θ₁` is uniform on `[0, π/4]` and `θ_d, θ_d'` on `[0, π]`. Sample `i`
/// uses draws `3(i mod 4096) ..` of stream `i / 4096`, so the outcome is
/// fixed by `(n, seed, mode)`.
pub fn audit_chain(n: usize, seed: u64, mode: ConstraintMode) -> Result<ChainAudit> {
    audit_chain_with(n, seed, mode, Exec::default())
}

pub fn audit_chain_with(n: usize, seed: u64, mode: ConstraintMode, exec: Exec) -> Result<ChainAudit> {
    if n == 0 {
        return Err(Error::InvalidArgument("audit needs n >= 1 samples".into()));
    }
    let streams = CounterStream::new(seed, DOMAIN_AUDIT);
    let chunks = n.div_ceil(AUDIT_CHUNK);

    let partials = exec.map(chunks, |chunk| -> Result<ChainAudit> {
        use rand::Rng;
        let mut rng = streams.stream(chunk as u64);
        let start = chunk * AUDIT_CHUNK;
        let end = (start + AUDIT_CHUNK).min(n);
        let mut part = ChainAudit {
            constraint_mode: mode,
            samples_drawn: end - start,
            samples_tested: 0,
            condition_hits: 0,
            violations: Vec::new(),
            step_failures: [0; 5],
        };
        for _ in start..end {
            let theta1 = FRAC_PI_4 * rng.random::<f64>();
            let theta_d = std::f64::consts::PI * rng.random::<f64>();
            let theta_dp = std::f64::consts::PI * rng.random::<f64>();
            let p = Eq2Point {
                theta1,
                theta_d,
                theta_dp,
            };
            if mode == ConstraintMode::SumLeqOne && p.cos_sum() > 1.0 {
                continue;
            }
            part.samples_tested += 1;
            let check = check_point(&p)?;
            if check.condition_holds {
                part.condition_hits += 1;
            }
            if check.violation {
                part.violations.push(p);
            }
            if let Some(step) = check.failed_step {
                part.step_failures[step as usize] += 1;
            }
        }
        Ok(part)
    });

    let mut audit = ChainAudit {
        constraint_mode: mode,
        samples_drawn: 0,
        samples_tested: 0,
        condition_hits: 0,
        violations: Vec::new(),
        step_failures: [0; 5],
    };
    for part in partials {
        let part = part?;
        audit.samples_drawn += part.samples_drawn;
        audit.samples_tested += part.samples_tested;
        audit.condition_hits += part.condition_hits;
        audit.violations.extend(part.violations);
        for (acc, k) in audit.step_failures.iter_mut().zip(part.step_failures) {
            *acc += k;
        }
    }
    Ok(audit)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Third,
    Half,
    Neither,
}

impl Verdict {
    pub fn name(self) -> &'static str {
        match self {
            Verdict::Third => "THIRD",
            Verdict::Half => "HALF",
            Verdict::Neither => "NEITHER",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Crossover {
    /// Midpoint of the first interval where the nearest curve changes from
    /// `Cos` to `Sin`.
    pub tau_star: f64,
    /// Width in `τ` of that interval.
    pub grid_step: f64,
    pub verdict: Verdict,
    /// Number of branch changes in either direction along the rows.
    pub switches: usize,
}

pub const MIN_CROSSOVER_ROWS: usize = 50;

/// Ends of the row range must lie within this distance of `τ = 0` and `τ = 1`.
pub const COVERAGE_TOL: f64 = 1e-6;

/// Locates where numeric maxima switch from following `4√(1−τ)` to `4√(2τ)`.
pub fn crossover_scan(rows: &[SweepRow]) -> Result<Crossover> {
    if rows.len() < MIN_CROSSOVER_ROWS {
        return Err(Error::InvalidArgument(format!(
            "crossover scan needs at least {MIN_CROSSOVER_ROWS} rows, got {}",
            rows.len()
        )));
    }
    if rows
        .windows(2)
        .any(|w| w[1].tau.partial_cmp(&w[0].tau) != Some(std::cmp::Ordering::Greater))
    {
        return Err(Error::InvalidArgument(
            "rows must be sorted by strictly increasing tau".into(),
        ));
    }
    let (first, last) = (rows[0].tau, rows[rows.len() - 1].tau);
    if first > COVERAGE_TOL || last < 1.0 - COVERAGE_TOL {
        return Err(Error::InvalidArgument(format!(
            "rows cover tau in [{first}, {last}], need [0, 1]"
        )));
    }

    let branches: Vec<Branch> = rows.iter().map(|r| nearest_branch(r.tau, r.s_numeric)).collect();
    let switches = branches.windows(2).filter(|w| w[0] != w[1]).count();
    let i = branches
        .windows(2)
        .position(|w| w[0] == Branch::Cos && w[1] == Branch::Sin)
        .ok_or_else(|| Error::InvalidArgument("numeric values never switch branch".into()))?;

    let tau_star = 0.5 * (rows[i].tau + rows[i + 1].tau);
    let grid_step = rows[i + 1].tau - rows[i].tau;
    let verdict = if (tau_star - 1.0 / 3.0).abs() < grid_step {
        Verdict::Third
    } else if (tau_star - 0.5).abs() < grid_step {
        Verdict::Half
    } else {
        Verdict::Neither
    };
    Ok(Crossover {
        tau_star,
        grid_step,
        verdict,
        switches,
    })
}

/// How closely numeric maxima follow each piecewise bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tracking {
    pub variant: BoundVariant,
    /// Largest `|numeric − bound|` over rows outside the excluded window.
    pub max_deviation: f64,
    /// Largest `numeric − bound` over all rows (positive means the bound is exceeded).
    pub max_excess: f64,
    pub rows_compared: usize,
}

impl Tracking {
    pub fn tracks(&self, tol: f64) -> bool {
        self.max_deviation <= tol
    }
}

/// Compares rows to `variant`, skipping rows within `window` of `center` in `τ`.
pub fn bound_tracking(rows: &[SweepRow], variant: BoundVariant, center: f64, window: f64) -> Result<Tracking> {
    let mut max_deviation = 0.0f64;
    let mut max_excess = f64::NEG_INFINITY;
    let mut rows_compared = 0;
    for r in rows {
        let b = bound(variant, r.tau)?.value;
        max_excess = max_excess.max(r.s_numeric - b);
        if (r.tau - center).abs() <= window {
            continue;
        }
        rows_compared += 1;
        max_deviation = max_deviation.max((r.s_numeric - b).abs());
    }
    Ok(Tracking {
        variant,
        max_deviation,
        max_excess,
        rows_compared,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct ContinuityReport {
    pub variant: BoundVariant,
    /// `(location, jump)` for every jump above [`JUMP_TOL`].
    pub discontinuities: Vec<(f64, f64)>,
    /// Largest jump below [`JUMP_TOL`].
    pub max_continuous_jump: f64,
}

const ZOOM_LEVELS: usize = 48;

/// Scans `[0, 1]` in `intervals` pieces for jumps.
///
/// Each interval is bisected toward its larger change: continuous variation
/// shrinks with the width, a jump does not, so the change left after
/// [`ZOOM_LEVELS`] halvings estimates the jump inside the interval.
pub fn continuity_scan(variant: BoundVariant, intervals: usize) -> Result<ContinuityReport> {
    if intervals == 0 {
        return Err(Error::InvalidArgument(
            "continuity scan needs at least one interval".into(),
        ));
    }
    let f = |t: f64| bound(variant, t).map(|b| b.value);
    let mut discontinuities = Vec::new();
    let mut max_continuous_jump = 0.0f64;
    for k in 0..intervals {
        let (mut lo, mut hi) = (k as f64 / intervals as f64, (k + 1) as f64 / intervals as f64);
        let (mut flo, mut fhi) = (f(lo)?, f(hi)?);
        for _ in 0..ZOOM_LEVELS {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            let fmid = f(mid)?;
            if (fmid - flo).abs() >= (fhi - fmid).abs() {
                hi = mid;
                fhi = fmid;
            } else {
                lo = mid;
                flo = fmid;
            }
        }
        let jump = (fhi - flo).abs();
        if jump > JUMP_TOL {
            discontinuities.push((0.5 * (lo + hi), jump));
        } else {
            max_continuous_jump = max_continuous_jump.max(jump);
        }
    }
    Ok(ContinuityReport {
        variant,
        discontinuities,
        max_continuous_jump,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::{FRAC_PI_2, SQRT_2};

    #[test]
    fn classical_bound_is_four() {
        assert_eq!(classical_bound(), 4.0);
        assert!(violates_classical(4.0 * SQRT_2));
        assert!(!violates_classical(4.0));
    }

    #[test]
    fn bound_examples() {
        let third = bound(BoundVariant::OriginalThird, 1.0 / 3.0).unwrap();
        assert_abs_diff_eq!(third.value, 4.0 * (2.0f64 / 3.0).sqrt(), epsilon = 1e-12);
        assert!(!third.discontinuous());

        assert_abs_diff_eq!(
            bound(BoundVariant::OriginalThird, 0.4).unwrap().value,
            3.577_709,
            epsilon = 1e-6
        );
        assert_abs_diff_eq!(
            bound(BoundVariant::CommentHalf, 0.4).unwrap().value,
            3.098_387,
            epsilon = 1e-6
        );

        let half = bound(BoundVariant::CommentHalf, 0.5).unwrap();
        assert_eq!(half.value, 4.0);
        assert!(half.discontinuous());
        assert_abs_diff_eq!(half.jump, 4.0 - 4.0 * 0.5f64.sqrt(), epsilon = 1e-12);
    }

    #[test]
    fn bound_rejects_out_of_range_tau() {
        for tau in [-0.1, 1.1, f64::NAN] {
            assert!(bound(BoundVariant::OriginalThird, tau).is_err());
        }
    }

    #[test]
    fn original_bound_is_the_upper_envelope() {
        for i in 0..=10_000 {
            let tau = i as f64 / 10_000.0;
            let env = cos_curve(tau).max(sin_curve(tau));
            assert_abs_diff_eq!(
                bound(BoundVariant::OriginalThird, tau).unwrap().value,
                env,
                epsilon = 1e-12
            );
        }
    }

    #[test]
    fn eq2_examples() {
        let b = eq2_bound(&Eq2Point::new(0.0, 0.0, 0.0).unwrap());
        assert_eq!(b.branch, Eq2Branch::Cos);
        assert_abs_diff_eq!(b.value, 4.0 * SQRT_2, epsilon = 1e-12);

        let b = eq2_bound(&Eq2Point::new(FRAC_PI_4, FRAC_PI_2, FRAC_PI_2).unwrap());
        assert_eq!(b.branch, Eq2Branch::Sin);
        assert_abs_diff_eq!(b.value, 4.0 * SQRT_2, epsilon = 1e-12);

        let p = Eq2Point::new(FRAC_PI_4, 0.0, 0.0).unwrap();
        let b = eq2_bound(&p);
        assert_eq!(b.branch, Eq2Branch::Tie);
        assert!(b.value.abs() < 1e-12);
        assert!(p.cos_condition());
    }

    #[test]
    fn eq2_tie_values_agree() {
        // cos²2θ₁·C = sin²2θ₁·S with θ_d = θ_d' = π/4 (C = S = 1) at θ₁ = π/8.
        let p = Eq2Point::new(std::f64::consts::PI / 8.0, FRAC_PI_4, FRAC_PI_4).unwrap();
        let b = eq2_bound(&p);
        assert_eq!(b.branch, Eq2Branch::Tie);
        assert_abs_diff_eq!(b.value, 2.0 * SQRT_2, epsilon = 1e-12);
    }

    #[test]
    fn analytic_witness_breaks_the_chain() {
        let c = check_point(&Eq2Point::new(FRAC_PI_4, 0.0, 0.0).unwrap()).unwrap();
        assert!(c.condition_holds);
        assert!(c.violation);
        assert_abs_diff_eq!(c.tau, 1.0, epsilon = 1e-15);
        assert_eq!(c.failed_step, Some(ChainStep::ApplySumAtMostOne));
    }

    #[test]
    fn chain_holds_at_constrained_point() {
        let c = check_point(&Eq2Point::new(0.2, 1.0, 1.2).unwrap()).unwrap();
        assert!(c.condition_holds);
        assert!(!c.violation);
        assert_eq!(c.failed_step, None);
    }

    #[test]
    fn check_point_requires_canonical_theta() {
        assert!(check_point(&Eq2Point::new(1.0, 0.0, 0.0).unwrap()).is_err());
    }

    #[test]
    fn audit_modes() {
        let a = audit_chain(50_000, 7, ConstraintMode::SumLeqOne).unwrap();
        assert_eq!(a.samples_drawn, 50_000);
        assert!(a.samples_tested < 50_000 && a.samples_tested > 0);
        assert!(a.condition_hits > 0);
        assert!(a.violations.is_empty());
        assert_eq!(a.step_failures, [0; 5]);

        let f = audit_chain(50_000, 7, ConstraintMode::Free).unwrap();
        assert_eq!(f.samples_tested, 50_000);
        assert!(!f.violations.is_empty());
        assert!(f.step_failures[ChainStep::ApplySumAtMostOne as usize] > 0);
        for v in &f.violations {
            assert!(v.cos_sum() > 1.0);
        }
    }

    #[test]
    fn audit_rejects_zero_samples() {
        assert!(audit_chain(0, 1, ConstraintMode::Free).is_err());
    }

    #[test]
    fn audit_is_schedule_independent() {
        let a = audit_chain_with(20_000, 3, ConstraintMode::Free, Exec::Sequential).unwrap();
        let b = audit_chain_with(20_000, 3, ConstraintMode::Free, Exec::default()).unwrap();
        assert_eq!(a, b);
    }

    fn synthetic_rows(f: impl Fn(f64) -> f64) -> Vec<SweepRow> {
        (0..=100)
            .map(|i| {
                let tau = i as f64 / 100.0;
                SweepRow::from_numeric(0.0, tau, f(tau), true).unwrap()
            })
            .collect()
    }

    #[test]
    fn crossover_of_envelope_is_third() {
        let rows = synthetic_rows(|t| cos_curve(t).max(sin_curve(t)));
        let c = crossover_scan(&rows).unwrap();
        assert_eq!(c.verdict, Verdict::Third);
        assert!((c.tau_star - 1.0 / 3.0).abs() < c.grid_step);
        assert_eq!(c.switches, 1);
    }

    #[test]
    fn crossover_of_half_bound_is_half() {
        let rows = synthetic_rows(|t| bound(BoundVariant::CommentHalf, t).unwrap().value);
        let c = crossover_scan(&rows).unwrap();
        assert_eq!(c.verdict, Verdict::Half);
        assert!((c.tau_star - 0.5).abs() < c.grid_step);
    }

    #[test]
    fn crossover_elsewhere_is_neither() {
        let rows = synthetic_rows(|t| if t < 0.8 { cos_curve(t) } else { sin_curve(t) });
        assert_eq!(crossover_scan(&rows).unwrap().verdict, Verdict::Neither);
    }

    #[test]
    fn crossover_rejects_bad_input() {
        let rows = synthetic_rows(|t| cos_curve(t).max(sin_curve(t)));
        assert!(crossover_scan(&rows[..40]).is_err());
        let mut shuffled = rows.clone();
        shuffled.swap(3, 4);
        assert!(crossover_scan(&shuffled).is_err());
        assert!(crossover_scan(&rows[..95]).is_err());
        let flat = synthetic_rows(cos_curve);
        assert!(crossover_scan(&flat).is_err());
    }

    #[test]
    fn continuity_of_both_variants() {
        let third = continuity_scan(BoundVariant::OriginalThird, 10_000).unwrap();
        assert!(third.discontinuities.is_empty());
        assert!(third.max_continuous_jump < 1e-6);

        let half = continuity_scan(BoundVariant::CommentHalf, 10_000).unwrap();
        assert_eq!(half.discontinuities.len(), 1);
        let (at, jump) = half.discontinuities[0];
        assert_abs_diff_eq!(at, 0.5, epsilon = 1e-9);
        assert_abs_diff_eq!(jump, 4.0 - 4.0 * 0.5f64.sqrt(), epsilon = 1e-9);
    }
}
