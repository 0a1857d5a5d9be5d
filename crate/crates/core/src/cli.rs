//! Command-line front end. Exit codes: 0 success, 1 failed check or runtime
//! error, 2 usage error.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::closed_forms::{maclaurin_check, SeriesFunction};
use crate::error::{Error, Result};
use crate::geometry::{construct_p_with, construct_q_with, BuildOptions};
use crate::io::{export_mesh, export_sweep_csv, MeshFormat};
use crate::param::ParamT;
use crate::solver::{
    check_parameter, find_t_star_with, summarize, sweep_with, ParameterReport, RatioTarget,
};
use crate::tolerance::Tolerances;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "bipyramid",
    version,
    about = "Convex bipyramid p(t), its isometric nonconvex counterpart q(t), and their volume ratio"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write p(t) or q(t) as an OBJ or OFF file.
    Build(BuildArgs),
    /// Check volumes by both routes, convexity and the isometry certificate at one t.
    Verify(VerifyArgs),
    /// Find t* with vol q(t*) > c · vol p(t*) and verify the pair.
    Solve(SolveArgs),
    /// Tabulate volumes, ratio and checks over a range of t as CSV.
    Sweep(SweepArgs),
    /// Compare numeric Maclaurin coefficients with the reference values.
    SeriesCheck(SeriesArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Shape {
    P,
    Q,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum ReportFormat {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Args)]
pub struct ToleranceArgs {
    /// Relative tolerance between closed-form and mesh volumes.
    #[arg(long, value_name = "REL")]
    pub volume_tol: Option<f64>,
    /// Absolute side-length tolerance of the isometry certificate.
    #[arg(long, value_name = "ABS")]
    pub isometry_tol: Option<f64>,
    /// Absolute distance above a face plane that counts as nonconvex.
    #[arg(long, value_name = "ABS")]
    pub convexity_tol: Option<f64>,
}

impl ToleranceArgs {
    fn resolve(&self) -> Result<Tolerances> {
        let mut tol = Tolerances::default();
        for (name, value, slot) in [
            ("--volume-tol", self.volume_tol, &mut tol.volume_rel),
            ("--isometry-tol", self.isometry_tol, &mut tol.isometry_abs),
            (
                "--convexity-tol",
                self.convexity_tol,
                &mut tol.convexity_abs,
            ),
        ] {
            if let Some(v) = value {
                if !(v.is_finite() && v > 0.0) {
                    return Err(Error::InvalidTarget(format!(
                        "{name} must be positive, got {v}"
                    )));
                }
                *slot = v;
            }
        }
        Ok(tol)
    }
}

#[derive(Debug, Args)]
pub struct BuildArgs {
    #[arg(long, value_enum)]
    pub shape: Shape,
    /// Parameter t (radians unless --degrees).
    #[arg(long, allow_negative_numbers = true)]
    pub t: f64,
    #[arg(long)]
    pub degrees: bool,
    #[arg(long)]
    pub out: PathBuf,
    /// Defaults to the extension of --out, then OBJ.
    #[arg(long, value_enum)]
    pub format: Option<MeshFormat>,
    /// Accept the flat limits t = 0 and t = π/6.
    #[arg(long)]
    pub allow_degenerate: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub t: f64,
    #[arg(long)]
    pub degrees: bool,
    #[command(flatten)]
    pub tol: ToleranceArgs,
    #[arg(long, value_enum, default_value_t)]
    pub format: ReportFormat,
    /// Also write the report to this file.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    /// Required ratio vol q / vol p.
    #[arg(long, allow_negative_numbers = true)]
    pub c: f64,
    /// Safety factor: t* is chosen so that the ratio reaches margin · c.
    #[arg(long, default_value_t = 2.0)]
    pub margin: f64,
    /// Smallest acceptable t*.
    #[arg(long, default_value_t = crate::tolerance::T_STAR_FLOOR)]
    pub floor: f64,
    #[command(flatten)]
    pub tol: ToleranceArgs,
    #[arg(long, value_enum, default_value_t)]
    pub format: ReportFormat,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub t_min: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub t_max: f64,
    #[arg(long)]
    pub steps: usize,
    #[arg(long)]
    pub degrees: bool,
    #[arg(long)]
    pub out: PathBuf,
    #[command(flatten)]
    pub tol: ToleranceArgs,
}

#[derive(Debug, Args)]
pub struct SeriesArgs {
    #[arg(long, value_enum, default_value_t)]
    pub format: ReportFormat,
}

fn param(t: f64, degrees: bool) -> Result<ParamT> {
    if degrees {
        ParamT::from_degrees(t)
    } else {
        ParamT::new(t)
    }
}

/// Parses `argv` (program name first), runs the command, and returns the exit code.
pub fn run_cli<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(true) => EXIT_OK,
        Ok(false) => EXIT_FAILED,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if e.is_usage() {
                EXIT_USAGE
            } else {
                EXIT_FAILED
            }
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> Result<bool> {
    let io = |e| Error::io("<stdout>", e);
    match cmd {
        Command::Build(a) => {
            let t = param(a.t, a.degrees)?;
            let opts = BuildOptions {
                allow_degenerate: a.allow_degenerate,
            };
            let mesh = match a.shape {
                Shape::P => construct_p_with(t, opts)?,
                Shape::Q => construct_q_with(t, opts)?,
            };
            let format = a
                .format
                .or_else(|| MeshFormat::from_path(&a.out))
                .unwrap_or(MeshFormat::Obj);
            export_mesh(&mesh, format, &a.out)?;
            writeln!(out, "wrote {}", a.out.display()).map_err(io)?;
            Ok(true)
        }
        Command::Verify(a) => {
            let t = param(a.t, a.degrees)?;
            let report = check_parameter(t, &a.tol.resolve()?)?;
            let text = match a.format {
                ReportFormat::Text => render_report(&report),
                ReportFormat::Json => serde_json::to_string_pretty(&report)? + "\n",
            };
            out.write_all(text.as_bytes()).map_err(io)?;
            if let Some(path) = &a.out {
                std::fs::write(path, &text).map_err(|e| Error::io(path, e))?;
            }
            Ok(report.passes())
        }
        Command::Solve(a) => {
            let mut target = RatioTarget::with_margin(a.c, a.margin)?;
            if !(a.floor.is_finite() && a.floor > 0.0) {
                return Err(Error::InvalidTarget(format!(
                    "--floor must be positive, got {}",
                    a.floor
                )));
            }
            target.floor = a.floor;
            let tol = a.tol.resolve()?;
            let solution = match find_t_star_with(&target, &tol) {
                Ok(s) => s,
                Err(e @ (Error::Verification(_) | Error::Underflow { .. })) => {
                    writeln!(out, "no verified t* for c = {}: {e}", a.c).map_err(io)?;
                    return Ok(false);
                }
                Err(e) => return Err(e),
            };
            let text = match a.format {
                ReportFormat::Text => {
                    let r = &solution.report;
                    format!(
                        "c = {}\nmargin = {}\nt* = {:e}\nvol p = {:e}\nvol q = {:e}\nratio = {:e}\n\n{}",
                        a.c,
                        a.margin,
                        solution.t_star.value(),
                        r.vol_p_closed,
                        r.vol_q_closed,
                        r.ratio,
                        render_report(r)
                    )
                }
                ReportFormat::Json => serde_json::to_string_pretty(&solution)? + "\n",
            };
            out.write_all(text.as_bytes()).map_err(io)?;
            Ok(solution.report.proves(a.c))
        }
        Command::Sweep(a) => {
            let (lo, hi) = if a.degrees {
                (a.t_min.to_radians(), a.t_max.to_radians())
            } else {
                (a.t_min, a.t_max)
            };
            let tol = a.tol.resolve()?;
            let rows = sweep_with(lo, hi, a.steps, &tol)?;
            export_sweep_csv(&rows, &a.out)?;
            let s = summarize(&rows, &tol);
            writeln!(
                out,
                "wrote {} rows to {}\nall rows valid: {}\nratio strictly decreasing: {}\nsmallest ratio {} at t = {}",
                s.rows,
                a.out.display(),
                s.all_valid,
                s.ratio_strictly_decreasing,
                s.min_ratio,
                rows[s.min_ratio_row].t
            )
            .map_err(io)?;
            Ok(s.all_valid)
        }
        Command::SeriesCheck(a) => {
            let checks = SeriesFunction::ALL
                .iter()
                .map(|&f| maclaurin_check(f, 3))
                .collect::<Result<Vec<_>>>()?;
            let ok = checks.iter().all(|c| c.all_agree());
            match a.format {
                ReportFormat::Json => {
                    writeln!(out, "{}", serde_json::to_string_pretty(&checks)?).map_err(io)?
                }
                ReportFormat::Text => {
                    writeln!(
                        out,
                        "{:<6} {:>5} {:>22} {:>22} {:>10}  status",
                        "fn", "order", "numeric", "reference", "error"
                    )
                    .map_err(io)?;
                    for c in &checks {
                        for term in &c.terms {
                            writeln!(
                                out,
                                "{:<6} {:>5} {:>22.15e} {:>22.15e} {:>10.2e}  {}",
                                c.function.name(),
                                term.order,
                                term.numeric,
                                term.reference,
                                term.error(),
                                if term.agrees() { "ok" } else { "MISMATCH" }
                            )
                            .map_err(io)?;
                        }
                    }
                    writeln!(out, "result: {}", if ok { "PASS" } else { "FAIL" }).map_err(io)?;
                }
            }
            Ok(ok)
        }
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn render_report(r: &ParameterReport) -> String {
    use std::fmt::Write as _;
    let mut s = String::new();
    let _ = writeln!(s, "t = {}", r.t);
    let vol_line = |name: &str, closed: f64, mesh: Option<f64>| match mesh {
        Some(m) => format!(
            "vol {name}: closed form {closed:.15e}, mesh {m:.15e}, rel. diff {:.1e}",
            ((m - closed) / closed).abs()
        ),
        None => format!(
            "vol {name}: closed form {closed:.15e}, mesh check skipped below t = {:e}",
            r.tolerances.mesh_oracle_floor
        ),
    };
    let _ = writeln!(s, "{}", vol_line("p", r.vol_p_closed, r.vol_p_mesh));
    let _ = writeln!(s, "{}", vol_line("q", r.vol_q_closed, r.vol_q_mesh));
    let _ = writeln!(s, "ratio vol q / vol p = {:.15e}", r.ratio);
    let _ = writeln!(
        s,
        "p convex: {} (largest vertex height above a face plane {:.3e})",
        yes_no(r.p_convexity.is_convex),
        r.p_convexity.worst_violation
    );
    let reflex: Vec<&str> = r
        .q_convexity
        .reflex_edges
        .iter()
        .map(|e| e.name.as_str())
        .collect();
    let _ = writeln!(
        s,
        "q convex: {} (reflex edges: {})",
        yes_no(r.q_convexity.is_convex),
        if reflex.is_empty() {
            "none".to_string()
        } else {
            reflex.join(", ")
        }
    );
    let _ = writeln!(
        s,
        "isometry certificate: {} (max side discrepancy {:.3e}, tolerance {:e})",
        if r.isometry_valid { "valid" } else { "INVALID" },
        r.isometry_discrepancy,
        r.tolerances.isometry_abs
    );
    let _ = writeln!(
        s,
        "bipyramid combinatorics (V=5, E=9, F=6): {}",
        yes_no(r.combinatorics_ok)
    );
    let failures = r.failures();
    if failures.is_empty() {
        let _ = writeln!(s, "result: PASS");
    } else {
        let _ = writeln!(s, "result: FAIL ({})", failures.join("; "));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("bipyramid").chain(args.iter().copied());
        let code = run_cli(argv, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn usage_errors() {
        assert_eq!(run(&[]).0, EXIT_USAGE);
        assert_eq!(run(&["frobnicate"]).0, EXIT_USAGE);
        assert_eq!(run(&["verify"]).0, EXIT_USAGE);
        let (code, _, err) = run(&["verify", "--t", "1.0"]);
        assert_eq!(code, EXIT_USAGE);
        assert!(err.contains("π/6"), "{err}");
        assert_eq!(run(&["verify", "--t", "-0.1"]).0, EXIT_USAGE);
        assert_eq!(run(&["solve", "--c", "0"]).0, EXIT_USAGE);
        assert_eq!(
            run(&["verify", "--t", "0.2", "--volume-tol", "-1"]).0,
            EXIT_USAGE
        );
    }

    #[test]
    fn help_goes_to_stdout() {
        let (code, out, _) = run(&["--help"]);
        assert_eq!(code, EXIT_OK);
        assert!(out.contains("series-check"));
    }

    #[test]
    fn verify_passes_and_fails_on_tolerance() {
        let (code, out, _) = run(&["verify", "--t", "0.2"]);
        assert_eq!(code, EXIT_OK, "{out}");
        assert!(out.contains("result: PASS"));
        // A convexity band wider than q's dent hides the nonconvexity.
        let (code, out, _) = run(&["verify", "--t", "0.2", "--convexity-tol", "100"]);
        assert_eq!(code, EXIT_FAILED, "{out}");
        assert!(out.contains("q is convex"));
    }

    #[test]
    fn verify_degrees_and_json() {
        let (code, out, _) = run(&["verify", "--t", "10", "--degrees", "--format", "json"]);
        assert_eq!(code, EXIT_OK);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert!((v["t"].as_f64().unwrap() - 10f64.to_radians()).abs() < 1e-15);
        assert_eq!(v["isometry_valid"], true);
    }
}
