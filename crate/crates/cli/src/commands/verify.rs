use anyhow::{bail, Context, Result};
use polyadic_core::blockshift::nary_identity;
use polyadic_core::catalog::{so2_quer, Gl11Structure, Gl2Structure, So2Structure};
use polyadic_core::io::BlockShiftJson;
use polyadic_core::scalar::TextScalar;
use polyadic_core::shiftdeform::quer_tuple;
use polyadic_core::verify::{
    check_commutative, check_identity, check_querelement, check_total_associativity,
    mutation_self_test, BlockShiftStructure, FnStructure, NaryStructure, RunConfig,
    ShiftTupleStructure, VerificationReport,
};
use polyadic_core::{blockshift, BlockShiftMatrix, ComplexRational, Domain, GrassmannElement};
use rand::Rng;
use serde::Deserialize;
use serde_json::json;

use super::{with_scalar, Ctx, Outcome, DEFAULT_ARITY};
use crate::cli::{CheckKind, StructureKind, VerifyArgs};
use crate::input::read_json;

/// A finite population of elements to check, with optional claimed
/// querelements (same order as `elements`).
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct Fixture {
    arity: usize,
    elements: Vec<BlockShiftJson>,
    #[serde(default)]
    querelements: Option<Vec<BlockShiftJson>>,
}

/// Expands `all`; it includes the querelement law only when the structure
/// has querelements.
fn expand(checks: &[CheckKind], has_quer: bool) -> Vec<CheckKind> {
    let all: &[CheckKind] = if has_quer {
        &[CheckKind::Associativity, CheckKind::Querelement]
    } else {
        &[CheckKind::Associativity]
    };
    let mut out = Vec::new();
    for &c in checks {
        let items: &[CheckKind] = match c {
            CheckKind::All => all,
            _ => std::slice::from_ref(&c),
        };
        for &i in items {
            if !out.contains(&i) {
                out.push(i);
            }
        }
    }
    out
}

/// Runs the requested checks. `group` is used where inverses are needed,
/// `general` elsewhere; they coincide except for random block-shift
/// matrices.
fn run_checks<S, Q>(
    general: &S,
    group: &S,
    checks: &[CheckKind],
    quer: Option<Q>,
    identity: Option<&S::Elem>,
    cfg: RunConfig,
) -> Result<Vec<VerificationReport>>
where
    S: NaryStructure,
    Q: Fn(&S::Elem) -> polyadic_core::Result<S::Elem> + Sync,
{
    let mut reports = Vec::new();
    for check in expand(checks, quer.is_some()) {
        let r = match check {
            CheckKind::Associativity => check_total_associativity(general, cfg)?,
            CheckKind::Querelement => {
                let q = quer.as_ref().context("this structure has no querelement")?;
                check_querelement(group, q, cfg)?
            }
            CheckKind::Identity => {
                let e = identity.context("this structure has no identity candidate")?;
                check_identity(group, e, cfg)?
            }
            CheckKind::Commutative => check_commutative(general, cfg)?,
            CheckKind::Mutation => mutation_self_test(group, quer.as_ref(), identity, cfg)?,
            CheckKind::All => unreachable!("expanded"),
        };
        reports.push(r);
    }
    Ok(reports)
}

pub fn run(ctx: &Ctx, args: &VerifyArgs) -> Result<Outcome> {
    if let Some(path) = &args.input {
        if args.structure != StructureKind::Blockshift {
            bail!("fixtures hold block-shift elements; use --structure blockshift");
        }
        return fixture(ctx, args, path);
    }
    let cfg = ctx.cfg;
    let checks = &args.checks;
    let (n, reports) = match args.structure {
        StructureKind::Blockshift => {
            let n = ctx.arity_or(DEFAULT_ARITY);
            let complex = ctx.complex_sampling()?;
            let general = BlockShiftStructure::square(n, args.block_size, complex, false)?;
            let group = BlockShiftStructure::square(n, args.block_size, complex, true)?;
            let e = nary_identity::<ComplexRational>(n, args.block_size)?;
            let quer = |q: &BlockShiftMatrix<ComplexRational>| q.querelement();
            (n, run_checks(&general, &group, checks, Some(quer), Some(&e), cfg)?)
        }
        StructureKind::Shiftdeform => {
            let n = ctx.arity_or(DEFAULT_ARITY);
            let m = args.m.unwrap_or(n - 1);
            if m == 0 {
                bail!("--m must be positive");
            }
            let s = ShiftTupleStructure { arity: n, m };
            let quer = move |a: &_| quer_tuple(n, a);
            let quer = (m == n - 1).then_some(quer);
            (n, run_checks(&s, &s, checks, quer, None, cfg)?)
        }
        StructureKind::So2 => {
            let n = ctx.fixed_arity(4, "the SO(2) structure")?;
            let quer = |a: &_| Ok(so2_quer(a));
            (n, run_checks(&So2Structure, &So2Structure, checks, Some(quer), None, cfg)?)
        }
        StructureKind::Gl2 => {
            let n = ctx.fixed_arity(4, "the GL(2) structure")?;
            let e = nary_identity::<ComplexRational>(4, 2)?;
            let quer = |q: &BlockShiftMatrix<ComplexRational>| q.querelement();
            (n, run_checks(&Gl2Structure, &Gl2Structure, checks, Some(quer), Some(&e), cfg)?)
        }
        StructureKind::Gl11 => {
            let n = ctx.fixed_arity(3, "the GL(1|1) structure")?;
            let s = Gl11Structure { generators: ctx.generators(4)? };
            let e = nary_identity::<GrassmannElement>(3, 2)?;
            let quer = |q: &BlockShiftMatrix<GrassmannElement>| q.querelement();
            (n, run_checks(&s, &s, checks, Some(quer), Some(&e), cfg)?)
        }
    };
    let mut header = ctx.header("verify");
    header["structure"] = json!(format!("{:?}", args.structure).to_lowercase());
    header["arity"] = json!(n);
    Outcome::from_reports(header, reports)
}

fn fixture(ctx: &Ctx, args: &VerifyArgs, path: &std::path::Path) -> Result<Outcome> {
    let raw: Fixture = read_json(path)?;
    let domain = ctx.matrix_domain()?;
    if let Some(n) = ctx.arity {
        if n != raw.arity {
            bail!("--arity {n} contradicts arity {} in {}", raw.arity, path.display());
        }
    }
    with_scalar!(domain, S => fixture_checks::<S>(ctx, args, path, &raw, &domain))
}

fn fixture_checks<S: TextScalar>(
    ctx: &Ctx,
    args: &VerifyArgs,
    path: &std::path::Path,
    raw: &Fixture,
    domain: &Domain,
) -> Result<Outcome> {
    let parse = |items: &[BlockShiftJson], what: &str| -> Result<Vec<BlockShiftMatrix<S>>> {
        items
            .iter()
            .enumerate()
            .map(|(i, j)| {
                let q = j
                    .to_blockshift::<S>(domain)
                    .with_context(|| format!("{what} {} in {}", i + 1, path.display()))?;
                if q.arity() != raw.arity {
                    bail!("{what} {} has arity {}, fixture declares {}", i + 1, q.arity(), raw.arity);
                }
                Ok(q)
            })
            .collect()
    };
    let elements = parse(&raw.elements, "element")?;
    if elements.is_empty() {
        bail!("fixture {} has no elements", path.display());
    }
    let claimed = match &raw.querelements {
        Some(q) => {
            let q = parse(q, "querelement")?;
            if q.len() != elements.len() {
                bail!("fixture has {} elements but {} querelements", elements.len(), q.len());
            }
            Some(q)
        }
        None => None,
    };
    let s = FnStructure::new(
        raw.arity,
        format!("fixture {}", path.display()),
        |xs: &[BlockShiftMatrix<S>]| blockshift::nary_product(xs),
        |rng: &mut polyadic_core::verify::Rng64| elements[rng.gen_range(0..elements.len())].clone(),
    );
    let quer = |a: &BlockShiftMatrix<S>| match &claimed {
        Some(c) => {
            let i = elements.iter().position(|x| x == a).expect("sampled from the fixture");
            Ok(c[i].clone())
        }
        None => a.querelement(),
    };
    let checks: Vec<CheckKind> = args
        .checks
        .iter()
        .copied()
        .filter(|c| !matches!(c, CheckKind::Mutation | CheckKind::Identity))
        .collect();
    if checks.len() != args.checks.len() {
        bail!("fixtures support the associativity, querelement and commutative checks");
    }
    let reports = run_checks(&s, &s, &checks, Some(quer), None, ctx.cfg)?;
    let mut header = ctx.header("verify");
    header["structure"] = json!("fixture");
    header["arity"] = json!(raw.arity);
    header["elements"] = json!(elements.len());
    Outcome::from_reports(header, reports)
}
