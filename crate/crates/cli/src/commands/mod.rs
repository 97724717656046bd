//! Command implementations. Each returns a JSON report and whether every
//! check in it passed.

mod bench;
mod blockshift;
mod catalog;
mod decompose;
mod shiftdeform;
mod verify;

use std::fs;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use polyadic_core::verify::{trial_rng, CheckResult, Counterexample, Rng64, RunConfig, VerificationReport};
use polyadic_core::Domain;
use serde_json::{json, Value};

use crate::cli::{Cli, Command, GlobalOpts};
use crate::job;

pub const DEFAULT_ARITY: usize = 4;

pub struct Outcome {
    pub report: Value,
    pub passed: bool,
}

impl Outcome {
    pub fn info(report: Value) -> Self {
        Self { report, passed: true }
    }

    /// Report wrapping a list of engine reports; passes iff all pass.
    pub fn from_reports(mut header: Value, reports: Vec<VerificationReport>) -> Result<Self> {
        let passed = reports.iter().all(VerificationReport::passed);
        header["result"] = result_text(passed);
        header["reports"] = serde_json::to_value(&reports)?;
        Ok(Self { report: header, passed })
    }
}

pub fn result_text(passed: bool) -> Value {
    Value::from(if passed { "pass" } else { "fail" })
}

/// Options shared by all commands.
pub struct Ctx {
    pub arity: Option<usize>,
    pub scalar: Option<Domain>,
    pub cfg: RunConfig,
}

impl Ctx {
    fn new(g: &GlobalOpts) -> Self {
        Self {
            arity: g.arity,
            scalar: g.scalar,
            cfg: RunConfig::new(g.trials, g.seed).parallel(g.parallel),
        }
    }

    pub fn arity_or(&self, default: usize) -> usize {
        self.arity.unwrap_or(default)
    }

    /// Rejects `--arity` values other than the fixed arity of a structure.
    pub fn fixed_arity(&self, n: usize, what: &str) -> Result<usize> {
        match self.arity {
            Some(a) if a != n => bail!("{what} has arity {n}, not {a}"),
            _ => Ok(n),
        }
    }

    /// The scalar domain for exact matrix work, complex rationals by default.
    pub fn matrix_domain(&self) -> Result<Domain> {
        match self.scalar {
            Some(Domain::Turns) => bail!("turns are not a matrix scalar domain"),
            Some(d) => Ok(d),
            None => Ok(Domain::ComplexRational),
        }
    }

    /// Rational or complex rational; whether imaginary parts are sampled.
    pub fn complex_sampling(&self) -> Result<bool> {
        match self.matrix_domain()? {
            Domain::Rational => Ok(false),
            Domain::ComplexRational => Ok(true),
            d => bail!("random elements are drawn over rational or complex-rational, not {d}"),
        }
    }

    pub fn generators(&self, default: u8) -> Result<u8> {
        match self.scalar {
            None => Ok(default),
            Some(Domain::Grassmann(n)) => Ok(n),
            Some(d) => bail!("this command needs a grassmann:N domain, not {d}"),
        }
    }

    pub fn header(&self, command: &str) -> Value {
        json!({ "command": command })
    }
}

/// A hand-rolled randomized check with the same report shape as the
/// engine's. Trials run in order; the first failure is kept.
pub fn manual_check(
    check: &str,
    arity: usize,
    domain: &str,
    cfg: RunConfig,
    mut trial: impl FnMut(usize, &mut Rng64) -> Result<Option<Counterexample>>,
) -> Result<VerificationReport> {
    let start = Instant::now();
    let mut counterexample = None;
    for t in 0..cfg.trials {
        let mut rng = trial_rng(cfg.seed, t as u64);
        if let Some(ce) = trial(t, &mut rng)? {
            counterexample = Some(ce);
            break;
        }
    }
    Ok(VerificationReport {
        check: check.into(),
        arity,
        domain: domain.into(),
        trials: cfg.trials,
        seed: cfg.seed,
        result: if counterexample.is_none() { CheckResult::Pass } else { CheckResult::Fail },
        counterexample,
        note: None,
        wall_time_ms: start.elapsed().as_secs_f64() * 1e3,
    })
}

pub fn counterexample(trial: usize, detail: impl Into<String>, elements: Vec<Value>) -> Counterexample {
    Counterexample {
        trial,
        detail: detail.into(),
        elements,
        expected: None,
        got: None,
    }
}

/// Runs the parsed command line, writes the report and returns whether all
/// checks passed.
pub fn execute(cli: Cli) -> Result<bool> {
    let cli = match &cli.command {
        Command::Job(args) => job::load(&args.file)?,
        _ => cli,
    };
    let ctx = Ctx::new(&cli.global);
    let outcome = dispatch(&ctx, &cli.command)?;
    let text = serde_json::to_string_pretty(&outcome.report)? + "\n";
    match &cli.global.out {
        Some(path) => fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))?,
        None => print!("{text}"),
    }
    if !outcome.passed {
        eprintln!("check failed; see the report for the counterexample");
    }
    Ok(outcome.passed)
}

fn dispatch(ctx: &Ctx, command: &Command) -> Result<Outcome> {
    match command {
        Command::Polyadize(a) => blockshift::polyadize(ctx, a),
        Command::Quer(a) => blockshift::quer(ctx, a),
        Command::Identity(a) => blockshift::identity(ctx, a),
        Command::Idempotent(a) => blockshift::idempotent(ctx, a),
        Command::Character(a) => blockshift::character(ctx, a),
        Command::Verify(a) => verify::run(ctx, a),
        Command::Decompose(c) => decompose::run(ctx, c),
        Command::Shiftdeform(c) => shiftdeform::run(ctx, c),
        Command::Catalog(c) => catalog::run(ctx, c),
        Command::Bench(a) => bench::run(ctx, a),
        Command::Job(_) => bail!("jobs cannot start other jobs"),
    }
}

/// Calls `$body` with `$S` bound to the scalar type of `$domain`.
macro_rules! with_scalar {
    ($domain:expr, $S:ident => $body:expr) => {
        match $domain {
            polyadic_core::Domain::Rational | polyadic_core::Domain::ComplexRational => {
                type $S = polyadic_core::ComplexRational;
                $body
            }
            polyadic_core::Domain::Grassmann(_) => {
                type $S = polyadic_core::GrassmannElement;
                $body
            }
            polyadic_core::Domain::Turns => anyhow::bail!("turns are not a matrix scalar domain"),
        }
    };
}
pub(crate) use with_scalar;
