use anyhow::{bail, Result};
use num_rational::BigRational;
use polyadic_core::shiftdeform::{
    associativity_witness, derived_sum, is_identity_tuple, nu_s, quer_tuple, AdditiveGroup, ShiftTuple,
};
use polyadic_core::{Domain, Turn};
use serde_json::json;

use super::{result_text, Ctx, Outcome, DEFAULT_ARITY};
use crate::cli::{ShiftdeformCommand, TupleArgs};
use crate::input::read_tuples;

fn single<A: AdditiveGroup>(args: &TupleArgs) -> Result<ShiftTuple<A>> {
    let mut ts = read_tuples::<A>(&args.tuples, args.input.as_deref())?;
    if ts.len() != 1 {
        bail!("expected exactly one tuple, got {}", ts.len());
    }
    Ok(ts.remove(0))
}

fn texts<A: AdditiveGroup>(t: &ShiftTuple<A>) -> Vec<String> {
    t.to_texts()
}

fn eval<A: AdditiveGroup>(ctx: &Ctx, args: &TupleArgs) -> Result<Outcome> {
    let ts = read_tuples::<A>(&args.tuples, args.input.as_deref())?;
    let n = ctx.arity_or(ts.len());
    let mut report = ctx.header("shiftdeform eval");
    report["arity"] = json!(n);
    report["result"] = json!(texts(&nu_s(n, &ts)?));
    report["derived"] = json!(texts(&derived_sum(n, &ts)?));
    Ok(Outcome::info(report))
}

fn quer<A: AdditiveGroup>(ctx: &Ctx, args: &TupleArgs) -> Result<Outcome> {
    let a = single::<A>(args)?;
    let n = ctx.arity_or(a.len() + 1);
    let q = quer_tuple(n, &a)?;
    let failing: Vec<usize> = (0..n)
        .filter_map(|pos| {
            let mut xs = vec![a.clone(); n];
            xs[pos] = q.clone();
            match nu_s(n, &xs) {
                Ok(r) if r == a => None,
                _ => Some(pos + 1),
            }
        })
        .collect();
    let passed = failing.is_empty();
    let mut report = ctx.header("shiftdeform quer");
    report["arity"] = json!(n);
    report["querelement"] = json!(texts(&q));
    report["result"] = result_text(passed);
    report["failing_positions"] = json!(failing);
    Ok(Outcome { report, passed })
}

fn identity<A: AdditiveGroup>(ctx: &Ctx, args: &TupleArgs) -> Result<Outcome> {
    let e = single::<A>(args)?;
    let n = ctx.arity_or(e.len() + 1);
    let is_identity = is_identity_tuple(n, &e)?;
    let mut report = ctx.header("shiftdeform identity");
    report["arity"] = json!(n);
    report["tuple"] = json!(texts(&e));
    report["identity"] = json!(is_identity);
    report["result"] = result_text(is_identity);
    Ok(Outcome { report, passed: is_identity })
}

pub fn run(ctx: &Ctx, command: &ShiftdeformCommand) -> Result<Outcome> {
    macro_rules! carrier {
        ($f:ident, $args:expr) => {
            match ctx.scalar {
                None | Some(Domain::Rational) => $f::<BigRational>(ctx, $args),
                Some(Domain::Turns) => $f::<Turn>(ctx, $args),
                Some(d) => bail!("tuples take rational or turns components, not {d}"),
            }
        };
    }
    match command {
        ShiftdeformCommand::Eval(a) => carrier!(eval, a),
        ShiftdeformCommand::Quer(a) => carrier!(quer, a),
        ShiftdeformCommand::Identity(a) => carrier!(identity, a),
        ShiftdeformCommand::Assoc { m } => {
            let n = ctx.arity_or(DEFAULT_ARITY);
            let m = m.unwrap_or(n - 1);
            let outcome = associativity_witness(n, m, ctx.cfg.trials, ctx.cfg.seed)?;
            let passed = outcome.holds();
            let mut report = ctx.header("shiftdeform assoc");
            report["arity"] = json!(n);
            report["m"] = json!(m);
            report["seed"] = json!(ctx.cfg.seed);
            report["result"] = result_text(passed);
            report["outcome"] = serde_json::to_value(&outcome)?;
            Ok(Outcome { report, passed })
        }
    }
}
