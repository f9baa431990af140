//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 when a verification finds violations, 2 on
//! invalid input.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::activations::{self, FixedSet, MexicanHatParams};
use crate::contraction::{profile, ContractionKind, KindName};
use crate::discontinuity::{classify_with, RadiusSchedule};
use crate::error::{Error, Result};
use crate::fixed_circle::{check_c1_c2, circle_continuity, is_fixed_circle, Circle};
use crate::format;
use crate::metric::{check_axioms, usual_metric};
use crate::numerics::{Interval, SelfMap};
use crate::picard::{basin_sweep, iterate, Attractor, IterateOptions};
use crate::report;
use crate::sampling::Sampling;
use crate::verifier::{
    check_condition1, check_condition2, check_rhoades, Bound, Condition1Spec, Condition2Spec, Factor, ViolationReport,
};

pub const EXIT_OK: u8 = 0;
pub const EXIT_VIOLATIONS: u8 = 1;
pub const EXIT_INVALID: u8 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "fixdisc",
    version,
    about = "Fixed-point and discontinuity analysis for piecewise self-maps"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List the fixed points of a map, solved piece by piece.
    FixedPoints {
        #[command(flatten)]
        map: MapArg,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Run Picard iteration from one starting point.
    Iterate {
        #[command(flatten)]
        map: MapArg,
        /// Starting point.
        #[arg(long, allow_negative_numbers = true)]
        x0: f64,
        #[command(flatten)]
        iter: IterArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Label each starting point with the fixed point its orbit reaches.
    Basins {
        #[command(flatten)]
        map: MapArg,
        #[command(flatten)]
        points: PointsArgs,
        #[command(flatten)]
        iter: IterArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Check d(Tx,Ty) <= factor * psi(M(x,y)) and psi(t) < t on sampled pairs.
    VerifyC1 {
        #[command(flatten)]
        map: MapArg,
        #[command(flatten)]
        kind: KindArgs,
        /// Function file for psi.
        #[arg(long, required_unless_present = "psi_identity", conflicts_with = "psi_identity")]
        psi: Option<PathBuf>,
        /// Use psi(t) = t where M > 0 (the weak bound d(Tx,Ty) <= M).
        #[arg(long)]
        psi_identity: bool,
        #[arg(long, value_enum, default_value = "one")]
        factor: FactorArg,
        #[command(flatten)]
        sampling: SamplingArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Check that eps < M(x,y) < eps + delta(eps) implies d(Tx,Ty) <= eps.
    VerifyC2 {
        #[command(flatten)]
        map: MapArg,
        #[command(flatten)]
        kind: KindArgs,
        /// Function file for delta.
        #[arg(long)]
        delta: PathBuf,
        /// Comma-separated epsilons checked in addition to the deciles of M.
        #[arg(long, value_delimiter = ',')]
        eps: Vec<f64>,
        /// Check only the epsilons given with --eps.
        #[arg(long)]
        no_deciles: bool,
        #[command(flatten)]
        sampling: SamplingArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Check Rhoades' strict inequality on sampled pairs with x != y.
    Rhoades {
        #[command(flatten)]
        map: MapArg,
        #[command(flatten)]
        sampling: SamplingArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Classify continuity at a fixed point from the limits of M(x, y0).
    Classify {
        #[command(flatten)]
        map: MapArg,
        #[command(flatten)]
        kind: KindArgs,
        /// The fixed point y0.
        #[arg(long, allow_negative_numbers = true)]
        at: f64,
        /// Tolerance for the tail (Cauchy) test and for "limit is zero".
        #[arg(long, default_value = "1e-6")]
        tau_lim: f64,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Tabulate M(x, y0) over a list or range of x.
    Profile {
        #[command(flatten)]
        map: MapArg,
        #[command(flatten)]
        kind: KindArgs,
        #[arg(long, allow_negative_numbers = true)]
        y0: f64,
        #[command(flatten)]
        points: PointsArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Check a fixed circle, the C1/C2 conditions and continuity on it.
    Circle {
        #[command(flatten)]
        map: MapArg,
        #[arg(long, allow_negative_numbers = true)]
        center: f64,
        #[arg(long)]
        radius: f64,
        #[command(flatten)]
        kind: KindArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Mexican-hat activation parameters.
    Activation {
        #[command(subcommand)]
        action: ActivationCommand,
    },
    /// Sample the metric axioms for the usual metric |x - y|.
    Axioms {
        #[arg(long, default_value = "0", allow_negative_numbers = true)]
        lo: f64,
        #[arg(long, default_value = "4", allow_negative_numbers = true)]
        hi: f64,
        /// Number of random triples.
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[command(flatten)]
        out: OutArgs,
    },
}

#[derive(Debug, Subcommand)]
enum ActivationCommand {
    /// Check the family's constraints.
    Validate {
        #[arg(long)]
        params: PathBuf,
    },
    /// Write the activation as a map file (stdout when --out is absent).
    Build {
        #[arg(long)]
        params: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
struct MapArg {
    /// Map definition file.
    #[arg(long)]
    map: PathBuf,
}

#[derive(Debug, Args)]
struct OutArgs {
    /// Write the JSON report here.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write the CSV table here.
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct KindArgs {
    /// Contraction number: m1, m2, pant, bp_m, bp_n, rhoades or dist.
    #[arg(long, default_value = "m1")]
    kind: String,
    /// Power m (m1 and m2 only): use T^m in place of T.
    #[arg(long, default_value_t = 1)]
    power: u32,
    /// Parameter of bp_n, 0 <= alpha < 1.
    #[arg(long)]
    alpha: Option<f64>,
}

impl KindArgs {
    fn kind(&self) -> Result<ContractionKind> {
        ContractionKind::new(self.kind.parse::<KindName>()?, self.power, self.alpha)
    }
}

#[derive(Debug, Args)]
struct SamplingArgs {
    /// Grid points per axis; as many random pairs as grid pairs are added.
    #[arg(long = "grid", default_value_t = 201)]
    grid_n: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Unbounded domains are sampled this far beyond the outermost finite breakpoint.
    #[arg(long, default_value = "10")]
    window: f64,
}

impl SamplingArgs {
    fn sampling(&self) -> Sampling {
        Sampling {
            grid_n: self.grid_n,
            seed: self.seed,
            margin: self.window,
        }
    }
}

#[derive(Debug, Args)]
struct IterArgs {
    #[arg(long, default_value_t = 10_000)]
    max_iters: usize,
    /// Stop once d(x_n, x_{n+1}) and d(T x, x) at the last iterate are within this.
    #[arg(long, default_value = "1e-12")]
    fix_tol: f64,
}

impl IterArgs {
    fn options(&self) -> IterateOptions {
        IterateOptions {
            max_iters: self.max_iters,
            fix_tol: self.fix_tol,
        }
    }
}

#[derive(Debug, Args)]
struct PointsArgs {
    /// Comma-separated points.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true, conflicts_with_all = ["from", "to"])]
    xs: Vec<f64>,
    /// Start of an evenly spaced range (with --to and --n).
    #[arg(long, allow_negative_numbers = true, requires = "to")]
    from: Option<f64>,
    #[arg(long, allow_negative_numbers = true, requires = "from")]
    to: Option<f64>,
    #[arg(long, default_value_t = 41)]
    n: usize,
}

impl PointsArgs {
    fn points(&self) -> Result<Vec<f64>> {
        match (self.from, self.to) {
            (Some(a), Some(b)) => {
                let dom = Interval::closed(a.min(b), a.max(b))?;
                Ok(crate::sampling::grid(&dom, a, b, self.n))
            }
            _ => Ok(self.xs.clone()),
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FactorArg {
    One,
    Half,
}

/// Parses `args` (including the program name) and runs the command, writing
/// the one-line verdict to `stdout`. Returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            let _ = err.print();
            return code;
        }
    };
    match execute(cli.command, stdout) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            EXIT_INVALID
        }
    }
}

fn write_text(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(Error::from)
}

fn write_report(out: &OutArgs, command: &str, seed: Option<u64>, body: impl Serialize) -> Result<()> {
    let Some(path) = &out.out else { return Ok(()) };
    let mut doc = json!({ "command": command, "seed": seed });
    if let (Value::Object(head), Value::Object(rest)) = (&mut doc, serde_json::to_value(body)?) {
        head.extend(rest);
    }
    let mut text = serde_json::to_string_pretty(&doc)?;
    text.push('\n');
    write_text(path, &text)
}

fn write_csv(out: &OutArgs, csv: &str) -> Result<()> {
    match &out.csv {
        Some(path) => write_text(path, csv),
        None => Ok(()),
    }
}

fn verdict_line(report: &ViolationReport) -> String {
    let status = if report.pass { "pass" } else { "fail" };
    format!(
        "{status}: {} violations in {} samples (seed {})",
        report.violations.len(),
        report.samples_checked,
        report.seed
    )
}

fn read_params(path: &Path) -> Result<MexicanHatParams> {
    Ok(serde_json::from_str(&fs::read_to_string(path)?)?)
}

fn load(map: &MapArg) -> Result<SelfMap> {
    format::read_map(&map.map)
}

fn execute(command: Command, stdout: &mut dyn Write) -> Result<u8> {
    let d = usual_metric();
    match command {
        Command::FixedPoints { map, out } => {
            let t = load(&map)?;
            let fps = activations::fixed_points(&t);
            let line: Vec<String> = fps.iter().map(FixedSet::to_string).collect();
            writeln!(stdout, "{}", line.join(" "))?;
            write_report(&out, "fixed-points", None, json!({ "fixed_points": fps }))?;
            Ok(EXIT_OK)
        }
        Command::Iterate { map, x0, iter, out } => {
            let t = load(&map)?;
            let r = iterate(&t, &d, x0, &iter.options())?;
            match r.limit {
                Some(limit) => writeln!(stdout, "converged to {limit} after {} iterations", r.iterations)?,
                None => writeln!(stdout, "not converged after {} iterations", r.iterations)?,
            }
            write_csv(&out, &report::orbit_csv(&r))?;
            write_report(&out, "iterate", None, &r)?;
            Ok(EXIT_OK)
        }
        Command::Basins { map, points, iter, out } => {
            let t = load(&map)?;
            let entries = basin_sweep(&t, &d, &points.points()?, &iter.options())?;
            let labels: Vec<String> = entries
                .iter()
                .map(|e| match e.attractor {
                    Attractor::Fixed { x } | Attractor::Numeric { x } => x.to_string(),
                    Attractor::NotConverged => "not_converged".into(),
                })
                .collect();
            writeln!(stdout, "{}", labels.join(" "))?;
            write_csv(&out, &report::basin_csv(&entries))?;
            write_report(&out, "basins", None, json!({ "basins": entries }))?;
            Ok(EXIT_OK)
        }
        Command::VerifyC1 {
            map,
            kind,
            psi,
            psi_identity,
            factor,
            sampling,
            out,
        } => {
            let t = load(&map)?;
            let bound = match (&psi, psi_identity) {
                (_, true) => Bound::Identity,
                (Some(path), false) => Bound::Psi(format::read_function(path)?),
                (None, false) => return Err(Error::Spec("--psi or --psi-identity is required".into())),
            };
            let factor = match factor {
                FactorArg::One => Factor::One,
                FactorArg::Half => Factor::Half,
            };
            let spec = Condition1Spec::new(kind.kind()?, bound, factor)?;
            let s = sampling.sampling();
            let report = check_condition1(&t, &d, &spec, &s)?;
            writeln!(stdout, "{}", verdict_line(&report))?;
            let echo = json!({
                "map": map.map,
                "kind": spec.kind(),
                "psi": psi.map(|p| p.display().to_string()).unwrap_or_else(|| "identity".into()),
                "factor": spec.factor(),
            });
            write_report(
                &out,
                "verify-c1",
                Some(s.seed),
                json!({ "spec_echo": echo, "report": report }),
            )?;
            Ok(if report.pass { EXIT_OK } else { EXIT_VIOLATIONS })
        }
        Command::VerifyC2 {
            map,
            kind,
            delta,
            eps,
            no_deciles,
            sampling,
            out,
        } => {
            let t = load(&map)?;
            let mut spec = Condition2Spec::new(kind.kind()?, format::read_function(&delta)?, eps)?;
            if !no_deciles {
                spec = spec.with_decile_epsilons();
            }
            let s = sampling.sampling();
            let report = check_condition2(&t, &d, &spec, &s)?;
            writeln!(stdout, "{}", verdict_line(&report))?;
            let echo = json!({ "map": map.map, "kind": spec.kind(), "delta": delta });
            write_report(
                &out,
                "verify-c2",
                Some(s.seed),
                json!({ "spec_echo": echo, "report": report }),
            )?;
            Ok(if report.pass { EXIT_OK } else { EXIT_VIOLATIONS })
        }
        Command::Rhoades { map, sampling, out } => {
            let t = load(&map)?;
            let s = sampling.sampling();
            let report = check_rhoades(&t, &d, &s)?;
            writeln!(stdout, "{}", verdict_line(&report))?;
            let echo = json!({ "map": map.map, "kind": ContractionKind::rhoades() });
            write_report(
                &out,
                "rhoades",
                Some(s.seed),
                json!({ "spec_echo": echo, "report": report }),
            )?;
            Ok(if report.pass { EXIT_OK } else { EXIT_VIOLATIONS })
        }
        Command::Classify {
            map,
            kind,
            at,
            tau_lim,
            out,
        } => {
            let t = load(&map)?;
            let schedule = RadiusSchedule {
                tau_lim,
                ..Default::default()
            };
            let kind = kind.kind()?;
            let v = classify_with(&t, &d, kind, at, &schedule)?;
            let show = |e: Option<f64>| e.map(report::fmt_g17).unwrap_or_else(|| "none".into());
            writeln!(
                stdout,
                "{} (left={}, right={})",
                v.status.as_str(),
                show(v.left_estimate),
                show(v.right_estimate)
            )?;
            write_csv(&out, &report::evidence_csv(&v))?;
            write_report(&out, "classify", None, json!({ "kind": kind, "at": at, "verdict": v }))?;
            Ok(EXIT_OK)
        }
        Command::Profile {
            map,
            kind,
            y0,
            points,
            out,
        } => {
            let t = load(&map)?;
            let rows = profile(kind.kind()?, &t, &d, y0, &points.points()?)?;
            let csv = report::profile_csv(&rows);
            if out.csv.is_some() {
                write_csv(&out, &csv)?;
                writeln!(stdout, "{} rows", rows.len())?;
            } else {
                write!(stdout, "{csv}")?;
            }
            write_report(&out, "profile", None, json!({ "y0": y0, "rows": rows }))?;
            Ok(EXIT_OK)
        }
        Command::Circle {
            map,
            center,
            radius,
            kind,
            out,
        } => {
            let t = load(&map)?;
            let circle = Circle::on_real_line(center, radius)?;
            let fixed = is_fixed_circle(&t, &d, &circle)?;
            let conds = check_c1_c2(&t, &d, &circle)?;
            let continuity = if fixed.fixed {
                circle_continuity(&t, &d, &circle, kind.kind()?)?
            } else {
                Vec::new()
            };
            let points: Vec<String> = circle.points.iter().map(f64::to_string).collect();
            let c1c2 = if conds.iter().all(|c| c.c1 && c.c2) {
                "C1/C2 hold"
            } else {
                "C1/C2 fail"
            };
            let mut line = format!(
                "circle {{{}}}: {}, {c1c2}",
                points.join(", "),
                if fixed.fixed { "fixed" } else { "not fixed" }
            );
            for (x, v) in &continuity {
                line.push_str(&format!("; {x}: {}", v.status.as_str()));
            }
            writeln!(stdout, "{line}")?;
            let continuity: Vec<Value> = continuity
                .iter()
                .map(|(x, v)| json!({ "point": x, "verdict": v }))
                .collect();
            write_report(
                &out,
                "circle",
                None,
                json!({
                    "circle": circle,
                    "fixed": fixed.fixed,
                    "residuals": fixed.residuals,
                    "c1c2": conds,
                    "continuity": continuity,
                }),
            )?;
            Ok(if fixed.fixed { EXIT_OK } else { EXIT_VIOLATIONS })
        }
        Command::Activation { action } => match action {
            ActivationCommand::Validate { params } => {
                read_params(&params)?.validate()?;
                writeln!(stdout, "valid")?;
                Ok(EXIT_OK)
            }
            ActivationCommand::Build { params, out } => {
                let t = activations::build(&read_params(&params)?)?;
                let text = format::map_to_string(&t);
                match out {
                    Some(path) => {
                        write_text(&path, &text)?;
                        writeln!(stdout, "wrote {}", path.display())?;
                    }
                    None => write!(stdout, "{text}")?,
                }
                Ok(EXIT_OK)
            }
        },
        Command::Axioms {
            lo,
            hi,
            samples,
            seed,
            out,
        } => {
            let dom = Interval::closed(lo, hi)?;
            let report = check_axioms(&d, &dom, samples, seed);
            let status = if report.pass() { "pass" } else { "fail" };
            writeln!(
                stdout,
                "{status}: {} violations in {samples} triples (seed {seed})",
                report.violations.len()
            )?;
            write_report(&out, "axioms", Some(seed), &report)?;
            Ok(if report.pass() { EXIT_OK } else { EXIT_VIOLATIONS })
        }
    }
}
