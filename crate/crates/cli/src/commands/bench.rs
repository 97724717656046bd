use anyhow::Result;
use polyadic_bench::bench_blockwise;
use serde_json::json;

use super::{result_text, Ctx, Outcome, DEFAULT_ARITY};
use crate::cli::BenchArgs;

/// Largest tolerated entrywise gap between the two floating-point routes.
pub const MAX_DEVIATION: f64 = 1e-9;

pub fn run(ctx: &Ctx, args: &BenchArgs) -> Result<Outcome> {
    let n = ctx.arity_or(DEFAULT_ARITY);
    let r = bench_blockwise(n, args.block_size, args.reps, ctx.cfg.seed)?;
    let passed = r.max_deviation <= MAX_DEVIATION;
    let mut report = ctx.header("bench");
    report["result"] = result_text(passed);
    report["tolerance"] = json!(MAX_DEVIATION);
    report["timing"] = serde_json::to_value(&r)?;
    Ok(Outcome { report, passed })
}
