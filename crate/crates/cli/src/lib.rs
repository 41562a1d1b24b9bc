//! Command-line front end for the `svetlichny` crate.
//!
//! Exit codes: 0 success, 1 usage error, 2 I/O error, 3 audit violation in
//! `sum-leq-one` mode. `SVET_THREADS` caps the worker pool.

pub mod csv_io;

use std::f64::consts::FRAC_PI_4;
use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

use svetlichny::bounds::{bound_tracking, check_point, cos_curve, sin_curve, violates_classical, ChainStep};
use svetlichny::par::with_thread_cap;
use svetlichny::sweep::{sweep, QUANTUM_MAX};
use svetlichny::{
    audit_chain, bound, classical_bound, crossover_scan, gghz_state, gghz_tangle, maximize, three_tangle, BoundVariant,
    ConstraintMode, Eq2Point, GghzParam, OptimizerConfig, PureState3, Slot, SweepRow,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_IO: i32 = 2;
pub const EXIT_AUDIT: i32 = 3;

/// Tolerance for a numeric curve to count as following a bound.
pub const TRACK_TOL: f64 = 1e-4;

pub const THREADS_ENV: &str = "SVET_THREADS";

#[derive(Debug, Parser)]
#[command(
    name = "svet",
    version,
    about = "Svetlichny-operator maxima for generalized GHZ states"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, clap::Args)]
pub struct OptArgs {
    /// Independent optimizer starts per point
    #[arg(long, default_value_t = 64)]
    pub starts: usize,
    /// Sweep cap per start
    #[arg(long, default_value_t = 200)]
    pub max_sweeps: usize,
    /// Stop a start when one sweep improves by less than this
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
}

impl OptArgs {
    fn config(&self) -> OptimizerConfig {
        OptimizerConfig {
            starts: self.starts,
            max_sweeps: self.max_sweeps,
            tol: self.tol,
            seed: self.seed,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Free,
    SumLeqOne,
}

impl From<ModeArg> for ConstraintMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Free => ConstraintMode::Free,
            ModeArg::SumLeqOne => ConstraintMode::SumLeqOne,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Maximize over a uniform theta1 grid and write a CSV
    Sweep {
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        theta_min: f64,
        #[arg(long, default_value_t = FRAC_PI_4, allow_negative_numbers = true)]
        theta_max: f64,
        #[arg(long, default_value_t = 101)]
        steps: usize,
        #[command(flatten)]
        opt: OptArgs,
        #[arg(long)]
        out: PathBuf,
    },
    /// Maximize at a single theta1
    Maximize {
        #[arg(long, allow_negative_numbers = true)]
        theta1: f64,
        #[command(flatten)]
        opt: OptArgs,
    },
    /// Random search for counterexamples to the tau <= 1/2 chain
    Audit {
        #[arg(long, default_value_t = 1_000_000)]
        n: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = ModeArg::SumLeqOne)]
        mode: ModeArg,
        /// Also check one point given as theta1,theta_d,theta_dp
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        witness: Option<Vec<f64>>,
    },
    /// 3-tangle of a state given as 16 reals (re, im per basis amplitude)
    Tangle {
        #[arg(allow_negative_numbers = true)]
        amps: Vec<f64>,
        /// Read the 16 reals from a file (whitespace or comma separated)
        #[arg(long, conflicts_with = "amps")]
        file: Option<PathBuf>,
        /// Rescale the amplitudes to unit norm first
        #[arg(long)]
        normalize: bool,
    },
}

type Sink<'a> = &'a mut (dyn Write + Send);

struct Io<'a> {
    out: Sink<'a>,
    err: Sink<'a>,
}

macro_rules! outln {
    ($io:expr, $($arg:tt)*) => {
        if writeln!($io.out, $($arg)*).is_err() {
            return EXIT_IO;
        }
    };
}

macro_rules! errln {
    ($io:expr, $($arg:tt)*) => {
        let _ = writeln!($io.err, $($arg)*);
    };
}

/// Parses `args` (program name first) and runs the command.
///
/// `threads` is the raw value of `SVET_THREADS`, if set.
pub fn run<I, T>(args: I, threads: Option<&str>, out: Sink<'_>, err: Sink<'_>) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let mut io = Io { out, err };
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(io.out, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(io.err, "{e}");
                    EXIT_USAGE
                }
            };
        }
    };

    let cap = match threads.map(str::trim) {
        None | Some("") => None,
        Some(s) => match s.parse::<usize>() {
            Ok(n) if n > 0 => Some(n),
            _ => {
                errln!(io, "error: {THREADS_ENV} must be a positive integer, got {s:?}");
                return EXIT_USAGE;
            }
        },
    };

    let io_ref = &mut io;
    match with_thread_cap(cap, move || dispatch(cli.command, io_ref)) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(io.err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn dispatch(cmd: Command, io: &mut Io<'_>) -> i32 {
    match cmd {
        Command::Sweep {
            theta_min,
            theta_max,
            steps,
            opt,
            out,
        } => cmd_sweep(theta_min, theta_max, steps, &opt, out, io),
        Command::Maximize { theta1, opt } => cmd_maximize(theta1, &opt, io),
        Command::Audit { n, seed, mode, witness } => cmd_audit(n, seed, mode.into(), witness, io),
        Command::Tangle { amps, file, normalize } => cmd_tangle(amps, file, normalize, io),
    }
}

fn shell_word(s: &str) -> String {
    if !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || "-_./=,:+".contains(c)) {
        s.to_string()
    } else {
        format!("'{}'", s.replace('\'', r"'\''"))
    }
}

/// Canonical command line that regenerates a sweep file.
pub fn sweep_command_line(
    theta_min: f64,
    theta_max: f64,
    steps: usize,
    opt: &OptArgs,
    out: &std::path::Path,
) -> String {
    format!(
        "svet sweep --theta-min {theta_min:?} --theta-max {theta_max:?} --steps {steps} --starts {} --max-sweeps {} --tol {:?} --seed {} --out {}",
        opt.starts,
        opt.max_sweeps,
        opt.tol,
        opt.seed,
        shell_word(&out.display().to_string())
    )
}

fn cmd_sweep(theta_min: f64, theta_max: f64, steps: usize, opt: &OptArgs, out: PathBuf, io: &mut Io<'_>) -> i32 {
    if steps < 2 {
        errln!(io, "error: steps must be ≥ 2");
        return EXIT_USAGE;
    }
    if !(theta_min >= 0.0 && theta_min < theta_max && GghzParam::new(theta_max).is_ok()) {
        errln!(
            io,
            "error: need 0 <= theta_min < theta_max <= pi/4, got [{theta_min}, {theta_max}]"
        );
        return EXIT_USAGE;
    }
    let cfg = opt.config();
    let started = SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    let clock = Instant::now();
    let points = match sweep(theta_min, theta_max, steps, &cfg, Default::default()) {
        Ok(p) => p,
        Err(e) => {
            errln!(io, "error: {e}");
            return EXIT_USAGE;
        }
    };
    let elapsed = clock.elapsed().as_secs_f64();
    let rows: Vec<SweepRow> = points.iter().map(|p| p.row).collect();

    let manifest = vec![
        format!("svet {}", env!("CARGO_PKG_VERSION")),
        format!(
            "command: {}",
            sweep_command_line(theta_min, theta_max, steps, opt, &out)
        ),
        format!("seed: {}", cfg.seed),
        format!("starts: {}", cfg.starts),
        format!("max_sweeps: {}", cfg.max_sweeps),
        format!("tol: {:?}", cfg.tol),
        format!("grid: theta_min={theta_min:?} theta_max={theta_max:?} steps={steps} (uniform in theta1)"),
        format!("started_unix: {started}"),
        format!("wall_clock_s: {elapsed:.3}"),
    ];
    let mut buf = Vec::new();
    csv_io::write_sweep(&mut buf, &manifest, &rows).expect("write to memory");
    if let Err(e) = fs::write(&out, &buf) {
        errln!(io, "error: cannot write {}: {e}", out.display());
        return EXIT_IO;
    }

    outln!(io, "wrote {} rows to {}", rows.len(), out.display());
    let unconverged = rows.iter().filter(|r| !r.converged).count();
    if unconverged > 0 {
        outln!(io, "warning: {unconverged} points hit the sweep cap before converging");
    }
    let excess = rows
        .iter()
        .map(|r| r.s_numeric - r.bound_third)
        .fold(f64::NEG_INFINITY, f64::max);
    if excess > 1e-6 {
        outln!(
            io,
            "warning: numeric maximum exceeds the ORIGINAL_THIRD bound by {excess:.3e}"
        );
    }
    match crossover_scan(&rows) {
        Ok(c) => {
            outln!(io, "crossover tau* = {:.9}, verdict = {}", c.tau_star, c.verdict.name());
            outln!(
                io,
                "switching interval width = {:.9}, branch switches = {}",
                c.grid_step,
                c.switches
            );
            for v in BoundVariant::ALL {
                match bound_tracking(&rows, v, c.tau_star, c.grid_step) {
                    Ok(t) => {
                        outln!(
                            io,
                            "{}: max |numeric - bound| = {:.3e}, max excess = {:.3e}, tracks within {TRACK_TOL:e}: {}",
                            v.name(),
                            t.max_deviation,
                            t.max_excess,
                            t.tracks(TRACK_TOL)
                        );
                    }
                    Err(e) => {
                        errln!(io, "error: {e}");
                        return EXIT_USAGE;
                    }
                }
            }
        }
        Err(e) => {
            outln!(io, "crossover unavailable: {e}");
        }
    }
    EXIT_OK
}

fn cmd_maximize(theta1: f64, opt: &OptArgs, io: &mut Io<'_>) -> i32 {
    let p = match GghzParam::new(theta1) {
        Ok(p) => p,
        Err(e) => {
            errln!(io, "error: {e}");
            return EXIT_USAGE;
        }
    };
    let r = match maximize(&gghz_state(p), &opt.config()) {
        Ok(r) => r,
        Err(e) => {
            errln!(io, "error: {e}");
            return EXIT_USAGE;
        }
    };
    let tau = gghz_tangle(p).value();
    let (third, half) = match (
        bound(BoundVariant::OriginalThird, tau),
        bound(BoundVariant::CommentHalf, tau),
    ) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(e), _) | (_, Err(e)) => {
            errln!(io, "error: {e}");
            return EXIT_USAGE;
        }
    };
    outln!(io, "theta1 = {:.9}", p.theta1());
    outln!(io, "tau = {:.9}", tau);
    outln!(io, "s_numeric = {:.9}", r.value);
    outln!(io, "bound_third = {:.9}{}", third.value, jump_note(third.jump));
    outln!(io, "bound_half = {:.9}{}", half.value, jump_note(half.jump));
    outln!(io, "cos_branch 4*sqrt(1-tau) = {:.9}", cos_curve(tau));
    outln!(io, "sin_branch 4*sqrt(2*tau) = {:.9}", sin_curve(tau));
    outln!(
        io,
        "classical_bound = {}, violated = {}",
        classical_bound(),
        violates_classical(r.value)
    );
    if r.value > QUANTUM_MAX + 1e-9 {
        outln!(io, "warning: value exceeds 4*sqrt(2)");
    }
    outln!(
        io,
        "converged = {} (sweeps = {}, start = {})",
        r.converged,
        r.sweeps_used,
        r.run
    );
    for slot in Slot::ALL {
        let v = r.settings.get(slot);
        outln!(io, "{:<2} = ({:.9}, {:.9}, {:.9})", slot.label(), v.x(), v.y(), v.z());
    }
    EXIT_OK
}

fn jump_note(jump: f64) -> String {
    if jump > 0.0 {
        format!(" (threshold: branches disagree by {jump:.9})")
    } else {
        String::new()
    }
}

fn cmd_audit(n: usize, seed: u64, mode: ConstraintMode, witness: Option<Vec<f64>>, io: &mut Io<'_>) -> i32 {
    if n == 0 {
        errln!(io, "error: n must be >= 1");
        return EXIT_USAGE;
    }
    let audit = match audit_chain(n, seed, mode) {
        Ok(a) => a,
        Err(e) => {
            errln!(io, "error: {e}");
            return EXIT_USAGE;
        }
    };
    outln!(io, "mode = {}", mode.name());
    outln!(io, "seed = {seed}");
    outln!(io, "samples drawn = {}", audit.samples_drawn);
    outln!(io, "samples tested = {}", audit.samples_tested);
    outln!(io, "condition hits = {}", audit.condition_hits);
    outln!(io, "violations: {}", audit.violations.len());
    if let Some(w) = audit.violations.first() {
        let tau = (2.0 * w.theta1).sin().powi(2);
        outln!(
            io,
            "first witness: theta1 = {:.9}, theta_d = {:.9}, theta_dp = {:.9}, cos^2 sum = {:.9}, tau = {:.9}",
            w.theta1,
            w.theta_d,
            w.theta_dp,
            w.cos_sum(),
            tau
        );
    }
    for step in ChainStep::ALL {
        let k = audit.step_failures[step as usize];
        if k > 0 {
            outln!(io, "step failures [{}]: {k}", step.describe());
        }
    }

    if let Some(w) = witness {
        if w.len() != 3 {
            errln!(io, "error: --witness takes theta1,theta_d,theta_dp");
            return EXIT_USAGE;
        }
        let p = match Eq2Point::new(w[0], w[1], w[2]) {
            Ok(p) => p,
            Err(e) => {
                errln!(io, "error: witness: {e}");
                return EXIT_USAGE;
            }
        };
        let c = match check_point(&p) {
            Ok(c) => c,
            Err(e) => {
                errln!(io, "error: witness: {e}");
                return EXIT_USAGE;
            }
        };
        let allowed = mode == ConstraintMode::Free || p.cos_sum() <= 1.0;
        outln!(
            io,
            "witness ({}, {}, {}): condition = {}, tau = {:.9}, violation = {}, failed step = {}, admissible in {} = {}",
            p.theta1,
            p.theta_d,
            p.theta_dp,
            c.condition_holds,
            c.tau,
            c.violation,
            c.failed_step.map(|s| s.describe()).unwrap_or("none"),
            mode.name(),
            allowed
        );
    }

    if mode == ConstraintMode::SumLeqOne && !audit.violations.is_empty() {
        return EXIT_AUDIT;
    }
    EXIT_OK
}

fn cmd_tangle(amps: Vec<f64>, file: Option<PathBuf>, normalize: bool, io: &mut Io<'_>) -> i32 {
    let values = match file {
        Some(path) => {
            let text = match fs::read_to_string(&path) {
                Ok(t) => t,
                Err(e) => {
                    errln!(io, "error: cannot read {}: {e}", path.display());
                    return EXIT_IO;
                }
            };
            let parsed: Result<Vec<f64>, _> = text
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|s| !s.is_empty())
                .map(str::parse::<f64>)
                .collect();
            match parsed {
                Ok(v) => v,
                Err(e) => {
                    errln!(io, "error: {}: {e}", path.display());
                    return EXIT_USAGE;
                }
            }
        }
        None => amps,
    };
    if values.len() != 16 {
        errln!(
            io,
            "error: expected 16 reals (re, im for |000> .. |111>), got {}",
            values.len()
        );
        return EXIT_USAGE;
    }
    let mut c = [Complex64::new(0.0, 0.0); 8];
    for (k, a) in c.iter_mut().enumerate() {
        *a = Complex64::new(values[2 * k], values[2 * k + 1]);
    }
    let state = if normalize {
        PureState3::normalized(c)
    } else {
        PureState3::new(c)
    };
    let tau = state.and_then(|s| three_tangle(&s));
    match tau {
        Ok(t) => {
            outln!(io, "tau = {:.12}", t.value());
            EXIT_OK
        }
        Err(e) => {
            errln!(io, "error: {e}");
            EXIT_USAGE
        }
    }
}
