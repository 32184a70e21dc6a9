//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 when a computation fails or `verify` reports a
//! failed check, 2 on usage errors.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::choreography::{export_trajectories, write_csv, ChoreographyConfig, Lemniscate, DEFAULT_SAMPLES};
use crate::elliptic::{
    complete_e, complete_k, incomplete_f, ratio_kprime_over_k, series_f, singular_modulus, Amplitude,
    Modulus,
};
use crate::gamma::{beta, gamma};
use crate::jacobi::jacobi_sncndn;
use crate::quadrature::QuadratureSpec;
use crate::randomwalk::{
    default_w_spec, mc_return_probability, return_probability_from_w_plus, watson_w,
    watson_w_closed_form, watson_w_plus,
};
use crate::verify::{run_suite, Profile, VerifyConfig};
use crate::{Error, Result};

pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "legendre", version, about = "Elliptic integrals at the singular modulus sin 15° and friends")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evaluate one function: K k | E k | F phi k | sn u k | cn u k | dn u k |
    /// gamma x | beta x y | f_series alpha | ratio k
    Eval {
        function: String,
        #[arg(allow_negative_numbers = true)]
        args: Vec<f64>,
    },
    /// Solve K'(k)/K(k) = sqrt(N) for the singular modulus k_N
    Singular {
        #[arg(allow_negative_numbers = true)]
        n: f64,
    },
    /// Check the three-body choreography on the lemniscate and export it as CSV
    Choreography {
        /// Modulus (defaults to cos 15°)
        #[arg(long)]
        k: Option<f64>,
        #[arg(long, default_value_t = DEFAULT_SAMPLES)]
        samples: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Random-walk return probability on the cubic lattice
    Walk {
        #[command(subcommand)]
        mode: WalkMode,
    },
    /// Run the identity-verification suite and write a JSON Lines report
    Verify(VerifyArgs),
}

#[derive(Subcommand, Debug)]
pub enum WalkMode {
    /// W, W⁺ and p by tensor-product quadrature
    Quadrature {
        /// Gauss–Legendre nodes per panel for W⁺
        #[arg(long, default_value_t = 24)]
        nodes: usize,
    },
    /// Seeded Monte Carlo estimate
    Montecarlo {
        #[arg(long, default_value_t = 1_000_000)]
        walks: u64,
        #[arg(long, default_value_t = 10_000)]
        steps: u64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum ProfileArg {
    Default,
    Strict,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value = "default")]
    pub profile: ProfileArg,
    /// Report path (stdout when absent)
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// Override one tolerance, e.g. `--set-tol legendre_CM=1e-14`
    #[arg(long = "set-tol", value_name = "NAME=VALUE")]
    pub set_tol: Vec<String>,
    #[arg(long, default_value_t = 100_000)]
    pub mc_walks: u64,
    #[arg(long, default_value_t = 1_000)]
    pub mc_steps: u64,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, A>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = A>,
    A: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(stderr, "{text}")
            } else {
                write!(stdout, "{text}")
            };
            return code;
        }
    };
    match execute(&cli.command, stdout) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "legendre: {e}");
            match e {
                Error::Usage(_) => EXIT_USAGE,
                _ => EXIT_FAILURE,
            }
        }
    }
}

fn execute(cmd: &Command, out: &mut dyn Write) -> Result<i32> {
    match cmd {
        Command::Eval { function, args } => {
            let v = eval(function, args)?;
            writeln!(out, "{v}")?;
        }
        Command::Singular { n } => {
            if !(*n > 0.0 && n.is_finite()) {
                return Err(Error::Usage(format!("N must be positive, got {n}")));
            }
            let m = singular_modulus(*n)?;
            let residual = (ratio_kprime_over_k(&m)? - n.sqrt()).abs();
            writeln!(out, "k={}", m.k())?;
            writeln!(out, "k2={}", m.k_squared())?;
            writeln!(out, "kp={}", m.kp())?;
            writeln!(out, "residual={residual:e}")?;
        }
        Command::Choreography { k, samples, out: path } => {
            let k = k.unwrap_or_else(|| (5.0 * std::f64::consts::PI / 12.0).sin());
            let m = Modulus::new(k).map_err(|e| Error::Usage(e.to_string()))?;
            let cfg = ChoreographyConfig::new(m, *samples, path.clone()).map_err(|e| Error::Usage(e.to_string()))?;
            let rows = export_trajectories(&cfg)?;
            let max = Lemniscate::new(&m)?.max_residual_norm(*samples);
            if path.is_none() {
                write_csv(&rows, out)?;
            }
            writeln!(out, "max_residual={max:e}")?;
        }
        Command::Walk { mode } => walk(mode, out)?,
        Command::Verify(args) => return verify(args, out),
    }
    Ok(0)
}

fn arity(function: &str, args: &[f64], n: usize) -> Result<()> {
    if args.len() == n {
        Ok(())
    } else {
        Err(Error::Usage(format!(
            "{function} takes {n} argument(s), got {}",
            args.len()
        )))
    }
}

/// Value of one named function.
pub fn eval(function: &str, args: &[f64]) -> Result<f64> {
    let modulus = |k: f64| Modulus::new(k);
    match function {
        "K" => {
            arity(function, args, 1)?;
            complete_k(&modulus(args[0])?)
        }
        "E" => {
            arity(function, args, 1)?;
            complete_e(&modulus(args[0])?)
        }
        "F" => {
            arity(function, args, 2)?;
            incomplete_f(Amplitude::new(args[0])?, &modulus(args[1])?)
        }
        "sn" | "cn" | "dn" => {
            arity(function, args, 2)?;
            let t = jacobi_sncndn(args[0], &modulus(args[1])?)?;
            Ok(match function {
                "sn" => t.sn,
                "cn" => t.cn,
                _ => t.dn,
            })
        }
        "gamma" => {
            arity(function, args, 1)?;
            gamma(args[0])
        }
        "beta" => {
            arity(function, args, 2)?;
            beta(args[0], args[1])
        }
        "f_series" => {
            arity(function, args, 1)?;
            Ok(series_f(args[0], 1e-15)?.value)
        }
        "ratio" => {
            arity(function, args, 1)?;
            ratio_kprime_over_k(&modulus(args[0])?)
        }
        other => Err(Error::Usage(format!(
            "unknown function {other:?}; expected one of K, E, F, sn, cn, dn, gamma, beta, f_series, ratio"
        ))),
    }
}

fn walk(mode: &WalkMode, out: &mut dyn Write) -> Result<()> {
    match mode {
        WalkMode::Quadrature { nodes } => {
            let spec = QuadratureSpec::gauss_legendre(*nodes, 2).map_err(|e| Error::Usage(e.to_string()))?;
            let w: f64 = watson_w(&default_w_spec())?;
            let w_plus: f64 = watson_w_plus(&spec)?;
            writeln!(out, "W={w}")?;
            writeln!(out, "W_closed_form={}", watson_w_closed_form::<f64>()?)?;
            writeln!(out, "W_plus={w_plus}")?;
            writeln!(out, "p={}", return_probability_from_w_plus(w_plus))?;
        }
        WalkMode::Montecarlo { walks, steps, seed } => {
            let est = mc_return_probability(*walks, *steps, *seed).map_err(|e| Error::Usage(e.to_string()))?;
            writeln!(out, "n_walks={}", est.n_walks)?;
            writeln!(out, "max_steps={}", est.max_steps)?;
            writeln!(out, "returns={}", est.returns)?;
            writeln!(out, "p_hat={}", est.p_hat)?;
            writeln!(out, "stderr={}", est.stderr)?;
            writeln!(out, "seed={}", est.seed)?;
        }
    }
    Ok(())
}

fn parse_overrides(items: &[String]) -> Result<BTreeMap<String, f64>> {
    items
        .iter()
        .map(|item| {
            let (name, value) = item
                .split_once('=')
                .ok_or_else(|| Error::Usage(format!("expected NAME=VALUE, got {item:?}")))?;
            let tol: f64 = value
                .parse()
                .map_err(|_| Error::Usage(format!("bad tolerance {value:?} for {name}")))?;
            Ok((name.to_string(), tol))
        })
        .collect()
}

fn verify(args: &VerifyArgs, out: &mut dyn Write) -> Result<i32> {
    let profile = match args.profile {
        ProfileArg::Default => Profile::Default,
        ProfileArg::Strict => Profile::Strict,
    };
    let cfg = VerifyConfig {
        profile,
        seed: args.seed,
        overrides: parse_overrides(&args.set_tol)?,
        mc_walks: args.mc_walks,
        mc_steps: args.mc_steps,
    };
    let report = run_suite(&cfg)?;
    let timestamp = SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    match &args.out {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path)?);
            report.write_jsonl(&mut w, profile, timestamp)?;
            w.flush()?;
            for c in report.checks.iter().filter(|c| !c.passed) {
                writeln!(out, "FAILED {} (abs_err={:e}, rel_err={:e}, tol={:e})", c.name, c.abs_err, c.rel_err, c.tol)?;
            }
            writeln!(out, "total={} failed={}", report.total, report.failed)?;
        }
        None => report.write_jsonl(out, profile, timestamp)?,
    }
    Ok(if report.all_passed() { 0 } else { EXIT_FAILURE })
}
