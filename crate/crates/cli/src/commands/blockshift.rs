use anyhow::{bail, Context, Result};
use polyadic_core::blockshift::{
    make_idempotent, nary_identity, polyadize as build, querelement_law_failures, unique_polyadize,
};
use polyadic_core::io::{BlockShiftJson, MatrixJson};
use polyadic_core::scalar::TextScalar;
use polyadic_core::verify::{check_identity_at, check_idempotent, random_invertible, trial_rng, BlockShiftStructure};
use polyadic_core::{ComplexRational, Domain, Matrix};
use serde_json::json;

use super::{result_text, with_scalar, Ctx, Outcome, DEFAULT_ARITY};
use crate::cli::{IdempotentArgs, IdentityArgs, InputArgs, PolyadizeArgs};
use crate::input::{read_blockshift, read_json};

fn read_blocks<S: TextScalar>(args: &PolyadizeArgs, domain: &Domain) -> Result<Vec<Matrix<S>>> {
    let path = &args.input;
    let raw: Vec<MatrixJson> = if args.unique {
        vec![read_json(path)?]
    } else {
        read_json(path)?
    };
    raw.iter()
        .enumerate()
        .map(|(i, m)| {
            m.to_matrix(domain)
                .with_context(|| format!("block {} in {}", i + 1, path.display()))
        })
        .collect()
}

pub fn polyadize(ctx: &Ctx, args: &PolyadizeArgs) -> Result<Outcome> {
    let domain = ctx.matrix_domain()?;
    with_scalar!(domain, S => {
        let blocks = read_blocks::<S>(args, &domain)?;
        let q = if args.unique {
            let n = ctx.arity.context("--unique needs --arity")?;
            unique_polyadize(n, &blocks[0])?
        } else {
            let n = ctx.arity_or(blocks.len() + 1);
            build(n, blocks)?
        };
        Ok(Outcome::info(serde_json::to_value(BlockShiftJson::from_blockshift(&q))?))
    })
}

pub fn quer(ctx: &Ctx, args: &InputArgs) -> Result<Outcome> {
    let domain = ctx.matrix_domain()?;
    with_scalar!(domain, S => {
        let q = read_blockshift::<S>(&args.input, &domain, ctx.arity)?;
        let quer = q.querelement()?;
        let failures = querelement_law_failures(&q, &quer)?;
        let passed = failures.is_empty();
        let mut report = ctx.header("quer");
        report["arity"] = json!(q.arity());
        report["querelement"] = serde_json::to_value(BlockShiftJson::from_blockshift(&quer))?;
        report["result"] = result_text(passed);
        report["failing_positions"] = json!(failures.iter().map(|p| p + 1).collect::<Vec<_>>());
        Ok(Outcome { report, passed })
    })
}

pub fn identity(ctx: &Ctx, args: &IdentityArgs) -> Result<Outcome> {
    let n = ctx.arity_or(DEFAULT_ARITY);
    let complex = ctx.complex_sampling()?;
    let s = BlockShiftStructure::square(n, args.block_size, complex, false)?;
    let e = nary_identity::<ComplexRational>(n, args.block_size)?;
    let positions: Vec<usize> = if args.positions.is_empty() {
        (0..n).collect()
    } else {
        args.positions
            .iter()
            .map(|&p| {
                if (1..=n).contains(&p) {
                    Ok(p - 1)
                } else {
                    bail!("position {p} is outside 1..={n}")
                }
            })
            .collect::<Result<_>>()?
    };
    let reports = vec![
        check_identity_at(&s, &e, &positions, ctx.cfg)?,
        check_idempotent(&s, &e)?,
    ];
    let mut header = ctx.header("identity");
    header["identity"] = serde_json::to_value(BlockShiftJson::from_blockshift(&e))?;
    Outcome::from_reports(header, reports)
}

pub fn idempotent(ctx: &Ctx, args: &IdempotentArgs) -> Result<Outcome> {
    let n = ctx.arity_or(DEFAULT_ARITY);
    let domain = ctx.matrix_domain()?;
    let (matrix, idempotent) = match &args.input {
        Some(path) => with_scalar!(domain, S => {
            let raw: Vec<MatrixJson> = read_json(path)?;
            let free = raw
                .iter()
                .map(|m| m.to_matrix::<S>(&domain))
                .collect::<polyadic_core::Result<Vec<_>>>()
                .with_context(|| format!("free blocks in {}", path.display()))?;
            let q = make_idempotent(n, free)?;
            (serde_json::to_value(BlockShiftJson::from_blockshift(&q))?, q.is_nary_idempotent())
        }),
        None => {
            let complex = ctx.complex_sampling()?;
            let mut rng = trial_rng(ctx.cfg.seed, 0);
            let free = (0..n.saturating_sub(2))
                .map(|_| random_invertible(&mut rng, args.block_size, complex))
                .collect();
            let q = make_idempotent(n, free)?;
            (serde_json::to_value(BlockShiftJson::from_blockshift(&q))?, q.is_nary_idempotent())
        }
    };
    let mut report = ctx.header("idempotent");
    report["matrix"] = matrix;
    report["result"] = result_text(idempotent);
    Ok(Outcome { report, passed: idempotent })
}

pub fn character(ctx: &Ctx, args: &InputArgs) -> Result<Outcome> {
    let domain = ctx.matrix_domain()?;
    if matches!(domain, Domain::Grassmann(_)) {
        bail!("the determinant character needs commutative scalars");
    }
    let q = read_blockshift::<ComplexRational>(&args.input, &domain, ctx.arity)?;
    let chi = q.polyadized_character(Matrix::determinant)?;
    let (dense, sign_rule) = q.dense_determinant_comparison()?;
    let mut report = ctx.header("character");
    report["arity"] = json!(q.arity());
    report["character"] = json!(chi.to_text());
    report["dense_determinant"] = json!(dense.to_text());
    report["dense_matches_character"] = json!(dense == sign_rule);
    Ok(Outcome::info(report))
}
