use std::fmt::Debug;

use anyhow::{bail, Context, Result};
use polyadic_core::decomposition::{
    diagshift_nary_product, patterns_distinct, pmatrix_ternary_product, shiftdiag_nary_product,
    DiagShift, PMatrix, ShiftDiag,
};
use polyadic_core::io::{DiagShiftJson, PMatrixJson, ShiftDiagJson};
use polyadic_core::scalar::TextScalar;
use polyadic_core::verify::{
    check_total_associativity, random_diagshift, random_pmatrix, random_shiftdiag, FnStructure,
    Rng64, VerificationReport,
};
use polyadic_core::{ComplexRational as C, Domain, Matrix};
use serde_json::{json, Value};

use super::{counterexample, manual_check, with_scalar, Ctx, Outcome};
use crate::cli::{DecomposeCommand, DecompositionKind};
use crate::input::read_json;

/// What the closure check needs from a decomposition element.
trait Dense: Clone + PartialEq + Debug + Send + Sync {
    fn dense(&self) -> Matrix<C>;
    fn plus(&self, other: &Self) -> polyadic_core::Result<Self>;
}

macro_rules! impl_dense {
    ($t:ty) => {
        impl Dense for $t {
            fn dense(&self) -> Matrix<C> {
                self.to_dense()
            }
            fn plus(&self, other: &Self) -> polyadic_core::Result<Self> {
                self.add(other)
            }
        }
    };
}
impl_dense!(ShiftDiag<C>);
impl_dense!(DiagShift<C>);
impl_dense!(PMatrix<C>);

fn dense_value(m: &Matrix<C>) -> Value {
    json!(polyadic_core::io::MatrixJson::from_matrix(m))
}

/// Closure under the n-ary product and addition (compared with the dense
/// embeddings), then total associativity.
fn check_family<E, P, G>(ctx: &Ctx, n: usize, label: &str, product: P, sample: G) -> Result<Vec<VerificationReport>>
where
    E: Dense,
    P: Fn(&[E]) -> polyadic_core::Result<E> + Sync,
    G: Fn(&mut Rng64) -> E + Sync,
{
    let closure = manual_check("closure", n, label, ctx.cfg, |t, rng| {
        let xs: Vec<E> = (0..n).map(|_| sample(rng)).collect();
        let dense: Vec<Matrix<C>> = xs.iter().map(Dense::dense).collect();
        let elements = || dense.iter().map(dense_value).collect();
        let expected = Matrix::product(&dense)?;
        match product(&xs) {
            Err(e) => return Ok(Some(counterexample(t, format!("product failed: {e}"), elements()))),
            Ok(p) if p.dense() != expected => {
                return Ok(Some(counterexample(t, "product differs from the dense product", elements())))
            }
            Ok(_) => {}
        }
        match xs[0].plus(&xs[1]) {
            Err(e) => Ok(Some(counterexample(t, format!("sum failed: {e}"), elements()))),
            Ok(s) if s.dense() != dense[0].add(&dense[1])? => {
                Ok(Some(counterexample(t, "sum differs from the dense sum", elements())))
            }
            Ok(_) => Ok(None),
        }
    })?;
    let s = FnStructure::new(n, label, product, sample);
    Ok(vec![closure, check_total_associativity(&s, ctx.cfg)?])
}

fn verify(ctx: &Ctx, kind: DecompositionKind, sizes: &[usize]) -> Result<Outcome> {
    if sizes.is_empty() || sizes.contains(&0) {
        bail!("--sizes must be positive");
    }
    let complex = ctx.complex_sampling()?;
    let (n, reports) = match kind {
        DecompositionKind::Shiftdiag => {
            let n = ctx.arity_or(3);
            let sample = |rng: &mut Rng64| random_shiftdiag(rng, n, sizes, complex).expect("validated sizes");
            (n, check_family(ctx, n, "shift-diagonal", shiftdiag_nary_product, sample)?)
        }
        DecompositionKind::Diagshift => {
            let n = ctx.arity_or(3);
            // Component j cycles its shift dims through 1..=sizes[j], so
            // inner blocks are nonsquare whenever sizes[j] > 1.
            let dims: Vec<Vec<usize>> = sizes
                .iter()
                .enumerate()
                .map(|(j, &q)| (0..n - 1).map(|i| 1 + (i + j) % q).collect())
                .collect();
            let sample = |rng: &mut Rng64| random_diagshift(rng, n, &dims, complex).expect("positive dims");
            (n, check_family(ctx, n, "diagonal-shift", diagshift_nary_product, sample)?)
        }
        DecompositionKind::Pmatrix => {
            let n = ctx.fixed_arity(3, "the P-matrix ring")?;
            let [q] = sizes else {
                bail!("P matrices take one block size, got {sizes:?}");
            };
            let q = *q;
            let sample = |rng: &mut Rng64| random_pmatrix(rng, q, complex).expect("positive size");
            let product = |xs: &[PMatrix<C>]| pmatrix_ternary_product(&xs[0], &xs[1], &xs[2]);
            (n, check_family(ctx, n, "P matrices", product, sample)?)
        }
    };
    let mut header = ctx.header("decompose verify");
    header["kind"] = json!(format!("{kind:?}").to_lowercase());
    header["arity"] = json!(n);
    header["sizes"] = json!(sizes);
    Outcome::from_reports(header, reports)
}

fn product<S: TextScalar>(ctx: &Ctx, kind: DecompositionKind, inputs: &[std::path::PathBuf], domain: &Domain) -> Result<Value> {
    let check_count = |n: usize| -> Result<()> {
        if inputs.len() != n {
            bail!("arity {n} needs {n} input files, got {}", inputs.len());
        }
        Ok(())
    };
    match kind {
        DecompositionKind::Shiftdiag => {
            let xs = inputs
                .iter()
                .map(|p| read_json::<ShiftDiagJson>(p)?.to_value::<S>(domain).with_context(|| p.display().to_string()))
                .collect::<Result<Vec<_>>>()?;
            check_count(ctx.arity_or(xs[0].arity()))?;
            Ok(json!(ShiftDiagJson::from_value(&shiftdiag_nary_product(&xs)?)))
        }
        DecompositionKind::Diagshift => {
            let xs = inputs
                .iter()
                .map(|p| read_json::<DiagShiftJson>(p)?.to_value::<S>(domain).with_context(|| p.display().to_string()))
                .collect::<Result<Vec<_>>>()?;
            check_count(ctx.arity_or(xs[0].arity()))?;
            Ok(json!(DiagShiftJson::from_value(&diagshift_nary_product(&xs)?)))
        }
        DecompositionKind::Pmatrix => {
            check_count(ctx.fixed_arity(3, "the P-matrix ring")?)?;
            let xs = inputs
                .iter()
                .map(|p| read_json::<PMatrixJson>(p)?.to_value::<S>(domain).with_context(|| p.display().to_string()))
                .collect::<Result<Vec<_>>>()?;
            Ok(json!(PMatrixJson::from_value(&pmatrix_ternary_product(&xs[0], &xs[1], &xs[2])?)))
        }
    }
}

pub fn run(ctx: &Ctx, command: &DecomposeCommand) -> Result<Outcome> {
    match command {
        DecomposeCommand::Verify { kind, sizes } => verify(ctx, *kind, sizes),
        DecomposeCommand::Patterns { sizes } => {
            let n = ctx.arity_or(3);
            let distinct = patterns_distinct(n, sizes)?;
            let mut report = ctx.header("decompose patterns");
            report["arity"] = json!(n);
            report["sizes"] = json!(sizes);
            report["distinct"] = json!(distinct);
            report["result"] = super::result_text(distinct);
            Ok(Outcome { report, passed: distinct })
        }
        DecomposeCommand::Product { kind, input } => {
            let domain = ctx.matrix_domain()?;
            let value = with_scalar!(domain, S => product::<S>(ctx, *kind, input, &domain)?);
            Ok(Outcome::info(value))
        }
    }
}
