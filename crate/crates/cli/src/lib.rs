//! Command dispatch for the `triharm` binary.
//!
//! [`run_command`] never prints or exits; it returns the exit code and both
//! output streams so the whole interface can be driven from tests.

use std::fmt::Write as _;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use triharm_core::algebra::{evaluate, Base, DerivedSymbol, Frame, PointAssignment, Poly};
use triharm_core::derivation::RewriteSystem;
use triharm_core::expr::{parse_equation, GRAMMAR};
use triharm_core::geometry::{bitension_components, tension_field, tritension_components, Section};
use triharm_core::proof::{
    builtin_biharmonic_script, builtin_triharmonic_script, numeric_cross_check, replay_script, Report,
};
use triharm_core::verify::{verify_connection, verify_curvature, verify_pullback, EntryCheck};

pub const EXIT_OK: u8 = 0;
pub const EXIT_MISMATCH: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

const FLAGS: &str = "\
--omega          use the constrained system where k1 does not vanish
--k2-zero        set k2 and its derivatives to zero (compute)
--by e1|e2|e3    derivation to apply (derive)
--at k1=q,...    point to evaluate at; with --omega, c defaults to sigma^2 - k1*f2 (eval)
--json [PATH]    JSON report to PATH or stdout (replay)
--samples N      random points for the numeric check (check)";

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Output {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

impl Output {
    fn ok(stdout: String) -> Self {
        Output { code: EXIT_OK, stdout, stderr: String::new() }
    }

    fn status(passed: bool, stdout: String) -> Self {
        Output {
            code: if passed { EXIT_OK } else { EXIT_MISMATCH },
            stdout,
            stderr: String::new(),
        }
    }

    fn usage(message: String) -> Self {
        Output {
            code: EXIT_USAGE,
            stdout: String::new(),
            stderr: format!("{message}\n\nexpression grammar:\n{GRAMMAR}\n\nflags:\n{FLAGS}\n"),
        }
    }
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Engine(#[from] triharm_core::Error),
    #[error("{0}")]
    Usage(String),
    #[error("cannot write {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

#[derive(Parser, Debug)]
#[command(
    name = "triharm",
    version,
    about = "Exact verification of tension, bitension and tritension fields of Riemannian submersions",
    after_help = "Expressions use the syntax:\n\n".to_owned() + GRAMMAR
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compare computed geometry with the reference tables
    Verify {
        #[arg(value_enum)]
        what: VerifyTarget,
    },
    /// Print a computed field as its eps1, eps2 components
    Compute {
        #[arg(value_enum)]
        what: FieldName,
        /// use the constrained system where k1 does not vanish
        #[arg(long)]
        omega: bool,
        /// set k2 and its derivatives to zero
        #[arg(long = "k2-zero")]
        k2_zero: bool,
    },
    /// Replay a builtin elimination script
    Replay {
        #[arg(value_enum)]
        script: ScriptName,
        /// write the JSON report to PATH, or to stdout when PATH is omitted
        #[arg(long, value_name = "PATH", num_args = 0..=1, default_missing_value = "-")]
        json: Option<String>,
    },
    /// Print the normal form of an expression (of lhs - rhs for an equation)
    Normalize {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[arg(long)]
        omega: bool,
    },
    /// Apply a frame derivation
    Derive {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[arg(long, value_enum)]
        by: FrameName,
        #[arg(long)]
        omega: bool,
    },
    /// Evaluate exactly at a point such as k1=2,f2=-1/3,sigma=1
    Eval {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[arg(long, allow_hyphen_values = true)]
        at: String,
        #[arg(long)]
        omega: bool,
    },
    /// Check that an equation holds identically; exit 1 otherwise
    Check {
        #[arg(allow_hyphen_values = true)]
        equation: String,
        #[arg(long)]
        omega: bool,
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum VerifyTarget {
    Connection,
    Pullback,
    Curvature,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FieldName {
    Tension,
    Bitension,
    Tritension,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ScriptName {
    Tri,
    Bi,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FrameName {
    E1,
    E2,
    E3,
}

impl From<FrameName> for Frame {
    fn from(f: FrameName) -> Frame {
        match f {
            FrameName::E1 => Frame::E1,
            FrameName::E2 => Frame::E2,
            FrameName::E3 => Frame::E3,
        }
    }
}

fn rules(omega: bool) -> RewriteSystem {
    if omega {
        RewriteSystem::omega()
    } else {
        RewriteSystem::generic()
    }
}

/// Runs one invocation. `args` excludes the program name.
pub fn run_command<S: AsRef<str>>(args: &[S]) -> Output {
    let argv = std::iter::once("triharm").chain(args.iter().map(AsRef::as_ref));
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Output::ok(e.to_string()),
                _ => Output::usage(e.to_string().trim_end().to_string()),
            }
        }
    };
    match dispatch(cli.command) {
        Ok(out) => out,
        Err(CliError::Io { path, source }) => Output {
            code: EXIT_USAGE,
            stdout: String::new(),
            stderr: format!("error: cannot write {path}: {source}\n"),
        },
        Err(e) => Output::usage(format!("error: {e}")),
    }
}

fn dispatch(cmd: Command) -> Result<Output, CliError> {
    match cmd {
        Command::Verify { what } => Ok(verify(what)),
        Command::Compute { what, omega, k2_zero } => Ok(compute(what, omega, k2_zero)),
        Command::Replay { script, json } => replay(script, json.as_deref()),
        Command::Normalize { expr, omega } => {
            let p = parse_equation(&expr)?.to_poly(&rules(omega));
            Ok(Output::ok(format!("{p}\n")))
        }
        Command::Derive { expr, by, omega } => {
            let rs = rules(omega);
            let p = parse_equation(&expr)?.to_poly(&rs);
            Ok(Output::ok(format!("{}\n", rs.derive(&p, by.into()))))
        }
        Command::Eval { expr, at, omega } => eval(&expr, &at, omega),
        Command::Check { equation, omega, samples } => check(&equation, omega, samples),
    }
}

fn entry_lines(checks: &[EntryCheck], out: &mut String) -> bool {
    let width = checks.iter().map(|c| c.label.len()).max().unwrap_or(0);
    for c in checks {
        if c.ok {
            let _ = writeln!(out, "{:<width$} = {}   ok", c.label, c.computed);
        } else {
            let _ = writeln!(
                out,
                "{:<width$} = {}   MISMATCH (expected {})",
                c.label, c.computed, c.expected
            );
        }
    }
    let good = checks.iter().filter(|c| c.ok).count();
    let _ = writeln!(out, "{good}/{} entries match", checks.len());
    good == checks.len()
}

fn verify(what: VerifyTarget) -> Output {
    let mut out = String::new();
    let passed = match what {
        VerifyTarget::Connection => entry_lines(&verify_connection(), &mut out),
        VerifyTarget::Pullback => entry_lines(&verify_pullback(), &mut out),
        VerifyTarget::Curvature => {
            let checks = verify_curvature();
            for c in &checks {
                let idx: String = c.indices.iter().map(|i| i.to_string()).collect();
                let _ = writeln!(
                    out,
                    "R_{idx} = {}   [{} = {}: {}]   {}",
                    c.computed,
                    c.expected,
                    c.rhs,
                    c.comparison,
                    if c.ok { "ok" } else { "MISMATCH" }
                );
            }
            let good = checks.iter().filter(|c| c.ok).count();
            let _ = writeln!(out, "{good}/{} components match", checks.len());
            good == checks.len()
        }
    };
    Output::status(passed, out)
}

fn compute(what: FieldName, omega: bool, k2_zero: bool) -> Output {
    let mut rs = rules(omega);
    if k2_zero {
        rs = rs.with_vanishing([Base::K2]);
    }
    let section = match what {
        FieldName::Tension => tension_field(&rs),
        FieldName::Bitension => {
            let (a, b) = bitension_components(&rs);
            Section::new(a, b)
        }
        FieldName::Tritension => {
            let (a, b) = tritension_components(&rs);
            Section::new(a, b)
        }
    };
    Output::ok(format!("{section}\n"))
}

fn replay(script: ScriptName, json: Option<&str>) -> Result<Output, CliError> {
    let script = match script {
        ScriptName::Tri => builtin_triharmonic_script(),
        ScriptName::Bi => builtin_biharmonic_script(),
    };
    let report: Report = replay_script(&script, &RewriteSystem::omega());
    let complete = report.is_complete();
    let mut out = Output::status(complete, String::new());
    match json {
        Some("-") => out.stdout = report.to_json(),
        Some(path) => {
            std::fs::write(path, report.to_json())
                .map_err(|source| CliError::Io { path: path.to_string(), source })?;
            out.stdout = report.to_text();
            out.stderr = format!("report written to {path}\n");
        }
        None => out.stdout = report.to_text(),
    }
    Ok(out)
}

fn parse_point(spec: &str) -> Result<PointAssignment, CliError> {
    let mut at = PointAssignment::new();
    for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (name, value) = item
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("expected name=value in --at, found `{item}`")))?;
        let base = Base::from_name(name.trim())
            .ok_or_else(|| CliError::Usage(format!("unknown symbol `{name}` in --at")))?;
        let v = parse_equation(value)?
            .to_poly(&RewriteSystem::generic())
            .as_constant()
            .ok_or_else(|| CliError::Usage(format!("value of {name} is not a number")))?;
        at.set(DerivedSymbol::base(base), v);
    }
    Ok(at)
}

fn eval(expr: &str, at: &str, omega: bool) -> Result<Output, CliError> {
    let rs = rules(omega);
    let p = parse_equation(expr)?.to_poly(&rs);
    let mut point = parse_point(at)?;
    let mut stderr = String::new();
    if omega && point.base_value(Base::C).is_none() {
        let sigma = Poly::base(Base::Sigma);
        let rel = &sigma * &sigma - Poly::base(Base::K1) * Poly::base(Base::F2);
        if let Ok(c) = evaluate(&rel, &point, &rs) {
            stderr = format!("c = sigma^2 - k1*f2 = {c}\n");
            point.set(DerivedSymbol::base(Base::C), c);
        }
    }
    let value = evaluate(&p, &point, &rs)?;
    Ok(Output { code: EXIT_OK, stdout: format!("{value}\n"), stderr })
}

fn check(src: &str, omega: bool, samples: usize) -> Result<Output, CliError> {
    let rs = rules(omega);
    let p = parse_equation(src)?.to_poly(&rs);
    let oracle = numeric_cross_check(&p, &rs, samples.max(1));
    let mut out = String::new();
    if p.is_zero() {
        let _ = writeln!(out, "identity holds ({rs})");
    } else {
        let _ = writeln!(out, "identity fails ({rs})");
        let _ = writeln!(out, "residual: {p}");
    }
    match &oracle.witness {
        None => {
            let _ = writeln!(out, "numeric check: {} points, all zero", oracle.samples);
        }
        Some((at, v)) => {
            let _ = writeln!(out, "numeric check: value {v} at {at}");
        }
    }
    Ok(Output::status(p.is_zero() && oracle.passed, out))
}
