use anyhow::{Context, Result};
use polyadic_bench::max_deviation;
use polyadic_core::blockshift::{nary_product, querelement_law_failures};
use polyadic_core::catalog::{
    gl11_component_equations, gl11_instance, gl11_quer, gl2_character, gl2_closed_form_quer,
    gl2_idempotent_residuals, gl2_instance, so2_is_identity, so2_nary_product, so2_quer, so2_via_shift,
    Gl11Params, Gl11Structure, Gl2Params, Gl2Structure, So2Poly, So2Structure,
};
use polyadic_core::io::{BlockShiftJson, MatrixJson};
use polyadic_core::scalar::TextScalar;
use polyadic_core::verify::{check_querelement, check_total_associativity, Rng64, VerificationReport};
use polyadic_core::{BlockShiftMatrix, ComplexRational, Domain, GrassmannElement, Matrix, Scalar};
use serde_json::{json, Value};

use super::{counterexample, manual_check, result_text, Ctx, Outcome};
use crate::cli::{CatalogCommand, Gl11Command, Gl2Command, InputArgs, So2Command};
use crate::input::read_json;

/// Float agreement tolerance for the rotation-matrix route.
const FLOAT_TOLERANCE: f64 = 1e-12;

fn read_exact<T: serde::de::DeserializeOwned, const K: usize>(path: &std::path::Path, what: &str) -> Result<[T; K]> {
    let items: Vec<T> = read_json(path)?;
    let got = items.len();
    items
        .try_into()
        .map_err(|_| anyhow::anyhow!("{} must hold {K} {what}, found {got}", path.display()))
}

fn poly_json(p: &So2Poly) -> Value {
    json!(p)
}

/// The exact product, the shift-deformed sum and the rotation-matrix
/// product; returns the exact product and the float deviation when the
/// exact routes agree.
fn so2_routes(args: &[So2Poly; 4]) -> Result<(So2Poly, Option<f64>)> {
    let exact = so2_nary_product(&args[0], &args[1], &args[2], &args[3]);
    if so2_via_shift(args)? != exact {
        return Ok((exact, None));
    }
    let floats: Vec<_> = args.iter().map(So2Poly::to_float_blockshift).collect();
    let got = nary_product(&floats)?.to_dense();
    Ok((exact.clone(), Some(max_deviation(&got, &exact.to_float_blockshift().to_dense()))))
}

fn so2_law_failures(a: &So2Poly) -> Vec<usize> {
    let q = so2_quer(a);
    (0..4)
        .filter(|&pos| {
            let mut xs: Vec<So2Poly> = vec![a.clone(); 4];
            xs[pos] = q.clone();
            so2_nary_product(&xs[0], &xs[1], &xs[2], &xs[3]) != *a
        })
        .map(|p| p + 1)
        .collect()
}

fn so2(ctx: &Ctx, command: &So2Command) -> Result<Outcome> {
    ctx.fixed_arity(4, "the SO(2) structure")?;
    match command {
        So2Command::Product(InputArgs { input }) => {
            let args: [So2Poly; 4] = read_exact(input, "angle triples")?;
            let (exact, deviation) = so2_routes(&args)?;
            let passed = deviation.is_some_and(|d| d <= FLOAT_TOLERANCE);
            let mut report = ctx.header("catalog so2 product");
            report["product"] = poly_json(&exact);
            report["via_shift"] = poly_json(&so2_via_shift(&args)?);
            report["float_deviation"] = json!(deviation);
            report["result"] = result_text(passed);
            Ok(Outcome { report, passed })
        }
        So2Command::Quer(InputArgs { input }) => {
            let a: So2Poly = read_json(input)?;
            let failing = so2_law_failures(&a);
            let passed = failing.is_empty();
            let mut report = ctx.header("catalog so2 quer");
            report["querelement"] = poly_json(&so2_quer(&a));
            report["failing_positions"] = json!(failing);
            report["result"] = result_text(passed);
            Ok(Outcome { report, passed })
        }
        So2Command::Identity(InputArgs { input }) => {
            let e: So2Poly = read_json(input)?;
            let is_identity = so2_is_identity(&e);
            let mut report = ctx.header("catalog so2 identity");
            report["identity"] = json!(is_identity);
            report["result"] = result_text(is_identity);
            Ok(Outcome { report, passed: is_identity })
        }
        So2Command::Verify => {
            let label = "SO(2) angle triples";
            let agreement = manual_check("triple_agreement", 4, label, ctx.cfg, |t, rng| {
                let args: [So2Poly; 4] = std::array::from_fn(|_| So2Poly::random(rng));
                let (_, deviation) = so2_routes(&args)?;
                Ok(match deviation {
                    Some(d) if d <= FLOAT_TOLERANCE => None,
                    other => Some(counterexample(
                        t,
                        match other {
                            None => "exact routes disagree".to_string(),
                            Some(d) => format!("float deviation {d:e}"),
                        },
                        args.iter().map(poly_json).collect(),
                    )),
                })
            })?;
            let law = manual_check("querelement_closed_form", 4, label, ctx.cfg, |t, rng| {
                let a = So2Poly::random(rng);
                let failing = so2_law_failures(&a);
                Ok((!failing.is_empty())
                    .then(|| counterexample(t, format!("positions {failing:?}"), vec![poly_json(&a)])))
            })?;
            let reports = vec![
                agreement,
                law,
                check_total_associativity(&So2Structure, ctx.cfg)?,
                check_querelement(&So2Structure, |a: &So2Poly| Ok(so2_quer(a)), ctx.cfg)?,
            ];
            Outcome::from_reports(ctx.header("catalog so2 verify"), reports)
        }
    }
}

fn gl2_params(path: &std::path::Path) -> Result<[Gl2Params; 3]> {
    let raw: [MatrixJson; 3] = read_exact(path, "2x2 blocks")?;
    let mut out = Vec::with_capacity(3);
    for (i, m) in raw.iter().enumerate() {
        let m = m
            .to_matrix::<ComplexRational>(&Domain::ComplexRational)
            .with_context(|| format!("block {}", i + 1))?;
        out.push(Gl2Params::from_matrix(&m).with_context(|| format!("block {}", i + 1))?);
    }
    Ok(out.try_into().expect("three blocks"))
}

fn blocks_json<S: TextScalar>(blocks: &[Matrix<S>]) -> Value {
    json!(blocks.iter().map(MatrixJson::from_matrix).collect::<Vec<_>>())
}

fn gl2_closed_form_matches(p: &[Gl2Params; 3]) -> Result<bool> {
    let q = gl2_instance(p)?;
    Ok(gl2_closed_form_quer(p)?.as_slice() == q.querelement()?.blocks())
}

fn det_character(q: &BlockShiftMatrix<ComplexRational>) -> Result<ComplexRational> {
    Ok(q.polyadized_character(Matrix::determinant)?)
}

fn gl2(ctx: &Ctx, command: &Gl2Command) -> Result<Outcome> {
    ctx.fixed_arity(4, "the GL(2) structure")?;
    match command {
        Gl2Command::Instance(InputArgs { input }) => {
            let p = gl2_params(input)?;
            Ok(Outcome::info(json!(BlockShiftJson::from_blockshift(&gl2_instance(&p)?))))
        }
        Gl2Command::Quer(InputArgs { input }) => {
            let p = gl2_params(input)?;
            let closed = gl2_closed_form_quer(&p)?;
            let general = gl2_instance(&p)?.querelement()?;
            let passed = closed.as_slice() == general.blocks();
            let mut report = ctx.header("catalog gl2 quer");
            report["closed_form"] = blocks_json(&closed);
            report["querelement"] = blocks_json(general.blocks());
            report["result"] = result_text(passed);
            Ok(Outcome { report, passed })
        }
        Gl2Command::Idempotent(InputArgs { input }) => {
            let p = gl2_params(input)?;
            let residuals = gl2_idempotent_residuals(&p);
            let passed = residuals.iter().all(Scalar::is_zero);
            let mut report = ctx.header("catalog gl2 idempotent");
            report["residuals"] = json!(residuals.iter().map(TextScalar::to_text).collect::<Vec<_>>());
            report["idempotent"] = json!(gl2_instance(&p).map(|q| q.is_nary_idempotent()).unwrap_or(false));
            report["result"] = result_text(passed);
            Ok(Outcome { report, passed })
        }
        Gl2Command::Verify => {
            let label = "4-ary GL(2) over complex rationals";
            let random = |rng: &mut Rng64| -> [Gl2Params; 3] { std::array::from_fn(|_| Gl2Params::random(rng)) };
            let closed = manual_check("querelement_closed_form", 4, label, ctx.cfg, |t, rng| {
                let p = random(rng);
                Ok((!gl2_closed_form_matches(&p)?).then(|| {
                    counterexample(t, "closed form differs", vec![json!(BlockShiftJson::from_blockshift(
                        &gl2_instance(&p).expect("sampled invertible")
                    ))])
                }))
            })?;
            let character = manual_check("character_homomorphism", 4, label, ctx.cfg, |t, rng| {
                let ps: Vec<[Gl2Params; 3]> = (0..4).map(|_| random(rng)).collect();
                let qs = ps.iter().map(gl2_instance).collect::<polyadic_core::Result<Vec<_>>>()?;
                let elements = || qs.iter().map(|q| json!(BlockShiftJson::from_blockshift(q))).collect();
                for (p, q) in ps.iter().zip(&qs) {
                    if det_character(q)? != gl2_character(p) {
                        return Ok(Some(counterexample(t, "character differs from the determinant product", elements())));
                    }
                }
                let lhs = det_character(&nary_product(&qs)?)?;
                let rhs = qs.iter().try_fold(ComplexRational::from(1), |acc, q| Ok::<_, anyhow::Error>(acc * det_character(q)?))?;
                Ok((lhs != rhs).then(|| counterexample(t, "character is not multiplicative", elements())))
            })?;
            let reports = vec![
                check_total_associativity(&Gl2Structure, ctx.cfg)?,
                check_querelement(&Gl2Structure, |q: &BlockShiftMatrix<ComplexRational>| q.querelement(), ctx.cfg)?,
                closed,
                character,
            ];
            Outcome::from_reports(ctx.header("catalog gl2 verify"), reports)
        }
    }
}

fn gl11_params(path: &std::path::Path, generators: u8) -> Result<[Gl11Params; 2]> {
    let raw: [MatrixJson; 2] = read_exact(path, "(1|1) supermatrices")?;
    let mut out = Vec::with_capacity(2);
    for (i, m) in raw.iter().enumerate() {
        let sm = m.to_supermatrix(generators).with_context(|| format!("supermatrix {}", i + 1))?;
        out.push(Gl11Params::from_matrix(sm.matrix()).with_context(|| format!("supermatrix {}", i + 1))?);
    }
    Ok(out.try_into().expect("two supermatrices"))
}

fn gl11(ctx: &Ctx, command: &Gl11Command) -> Result<Outcome> {
    ctx.fixed_arity(3, "the GL(1|1) structure")?;
    let generators = ctx.generators(4)?;
    match command {
        Gl11Command::Instance(InputArgs { input }) => {
            let q = gl11_instance(&gl11_params(input, generators)?)?;
            Ok(Outcome::info(json!(BlockShiftJson::from_blockshift(&q))))
        }
        Gl11Command::Quer(InputArgs { input }) => {
            let p = gl11_params(input, generators)?;
            let q = gl11_instance(&p)?;
            let quer = q.querelement()?;
            let expected = gl11_quer(&p)?;
            let failing = querelement_law_failures(&q, &quer)?;
            let passed = failing.is_empty() && expected.as_slice() == quer.blocks();
            let mut report = ctx.header("catalog gl11 quer");
            report["querelement"] = blocks_json(quer.blocks());
            report["failing_positions"] = json!(failing.iter().map(|p| p + 1).collect::<Vec<_>>());
            report["result"] = result_text(passed);
            Ok(Outcome { report, passed })
        }
        Gl11Command::Verify => {
            let s = Gl11Structure { generators };
            let label = format!("ternary (1|1) supermatrices over grassmann:{generators}");
            let random = |rng: &mut Rng64| -> [Gl11Params; 2] {
                std::array::from_fn(|_| Gl11Params::random(rng, generators))
            };
            let equations = manual_check("component_equations", 3, &label, ctx.cfg, |t, rng| {
                let (x, y, z) = (random(rng), random(rng), random(rng));
                let qs = [gl11_instance(&x)?, gl11_instance(&y)?, gl11_instance(&z)?];
                let product = nary_product(&qs)?;
                let eqs = gl11_component_equations(&x, &y, &z);
                let agree = eqs.iter().zip(product.blocks()).all(|(e, b)| e.matrix() == *b);
                Ok((!agree).then(|| {
                    counterexample(t, "component equations differ from the product", qs.iter().map(|q| json!(BlockShiftJson::from_blockshift(q))).collect())
                }))
            })?;
            let reports: Vec<VerificationReport> = vec![
                check_total_associativity(&s, ctx.cfg)?,
                check_querelement(&s, |q: &BlockShiftMatrix<GrassmannElement>| q.querelement(), ctx.cfg)?,
                equations,
            ];
            Outcome::from_reports(ctx.header("catalog gl11 verify"), reports)
        }
    }
}

pub fn run(ctx: &Ctx, command: &CatalogCommand) -> Result<Outcome> {
    match command {
        CatalogCommand::So2(c) => so2(ctx, c),
        CatalogCommand::Gl2(c) => gl2(ctx, c),
        CatalogCommand::Gl11(c) => gl11(ctx, c),
    }
}

