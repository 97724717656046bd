//! Randomized checking of polyadic axioms for any structure with an n-ary
//! product.
//!
//! Every trial draws its elements from its own ChaCha stream derived from
//! `(seed, trial)`, so a run is reproducible bit-for-bit and trials can be
//! evaluated in parallel without changing the outcome. A failing check
//! carries the first failing trial (lowest index) as its counterexample.

use std::fmt::Debug;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::blockshift::{self, BlockShiftMatrix};
use crate::decomposition::{DiagShift, PMatrix, ShiftDiag};
use crate::error::{Error, Result};
use crate::io::BlockShiftJson;
use crate::matrix::Matrix;
use crate::scalar::ComplexRational;
use crate::shiftdeform::{self, ShiftTuple};

pub const DEFAULT_TRIALS: usize = 200;
/// Bound on sampled numerators and denominators.
pub const ENTRY_BOUND: i64 = 100;

pub type Rng64 = ChaCha8Rng;

/// The RNG stream for one trial.
pub fn trial_rng(seed: u64, trial: u64) -> Rng64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// A set with an n-ary product, as seen by the checkers.
pub trait NaryStructure: Sync {
    type Elem: Clone + PartialEq + Debug + Send + Sync;

    fn arity(&self) -> usize;

    /// Short description of the carrier, for reports.
    fn domain(&self) -> String;

    fn product(&self, args: &[Self::Elem]) -> Result<Self::Elem>;

    /// Random element; `None` when the structure has no sampler.
    fn sample(&self, _rng: &mut Rng64) -> Option<Self::Elem> {
        None
    }

    fn equal(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        a == b
    }

    fn describe(&self, a: &Self::Elem) -> Value {
        Value::String(format!("{a:?}"))
    }

    /// A small non-homomorphic change to an element, used to corrupt
    /// operations in the mutation self-test.
    fn perturb(&self, _a: &Self::Elem) -> Option<Self::Elem> {
        None
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckResult {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Counterexample {
    pub trial: usize,
    /// Placement (0-based) or permutation detail of the failing law.
    pub detail: String,
    pub elements: Vec<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub got: Option<Value>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub check: String,
    pub arity: usize,
    pub domain: String,
    pub trials: usize,
    pub seed: u64,
    pub result: CheckResult,
    pub counterexample: Option<Counterexample>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    pub wall_time_ms: f64,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.result == CheckResult::Pass
    }

    /// Equality ignoring wall time.
    pub fn same_outcome(&self, other: &Self) -> bool {
        let mut a = self.clone();
        a.wall_time_ms = other.wall_time_ms;
        a == *other
    }
}

/// Options shared by the randomized checks.
#[derive(Clone, Copy, Debug)]
pub struct RunConfig {
    pub trials: usize,
    pub seed: u64,
    pub parallel: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            trials: DEFAULT_TRIALS,
            seed: 0,
            parallel: false,
        }
    }
}

impl RunConfig {
    pub fn new(trials: usize, seed: u64) -> Self {
        Self {
            trials,
            seed,
            parallel: false,
        }
    }

    pub fn parallel(mut self, on: bool) -> Self {
        self.parallel = on;
        self
    }
}

/// Runs `trial` for each index and returns the lowest-index failure.
fn run_trials<F>(cfg: &RunConfig, trial: F) -> Result<Option<Counterexample>>
where
    F: Fn(usize, &mut Rng64) -> Result<Option<Counterexample>> + Sync,
{
    let one = |t: usize| {
        let mut rng = trial_rng(cfg.seed, t as u64);
        trial(t, &mut rng)
    };
    if cfg.parallel {
        let results: Vec<Result<Option<Counterexample>>> =
            (0..cfg.trials).into_par_iter().map(one).collect();
        for r in results {
            if let Some(c) = r? {
                return Ok(Some(c));
            }
        }
        Ok(None)
    } else {
        for t in 0..cfg.trials {
            if let Some(c) = one(t)? {
                return Ok(Some(c));
            }
        }
        Ok(None)
    }
}

fn report<S: NaryStructure>(
    s: &S,
    check: &str,
    trials: usize,
    seed: u64,
    counterexample: Option<Counterexample>,
    start: Instant,
) -> VerificationReport {
    VerificationReport {
        check: check.into(),
        arity: s.arity(),
        domain: s.domain(),
        trials,
        seed,
        result: if counterexample.is_some() {
            CheckResult::Fail
        } else {
            CheckResult::Pass
        },
        counterexample,
        note: None,
        wall_time_ms: start.elapsed().as_secs_f64() * 1e3,
    }
}

fn draw<S: NaryStructure>(s: &S, rng: &mut Rng64) -> Result<S::Elem> {
    s.sample(rng)
        .ok_or_else(|| Error::Unsupported(format!("structure '{}' has no sampler", s.domain())))
}

fn draw_many<S: NaryStructure>(s: &S, rng: &mut Rng64, k: usize) -> Result<Vec<S::Elem>> {
    (0..k).map(|_| draw(s, rng)).collect()
}

/// Double product of `2n - 1` elements with the inner product at `pos`.
pub fn double_product<S: NaryStructure>(s: &S, args: &[S::Elem], pos: usize) -> Result<S::Elem> {
    let n = s.arity();
    let inner = s.product(&args[pos..pos + n])?;
    let mut outer = args[..pos].to_vec();
    outer.push(inner);
    outer.extend_from_slice(&args[pos + n..]);
    s.product(&outer)
}

/// Draws `2n - 1` elements per trial and compares the double product over
/// all `n` placements of the inner product.
pub fn check_total_associativity<S: NaryStructure>(s: &S, cfg: RunConfig) -> Result<VerificationReport> {
    let start = Instant::now();
    let n = s.arity();
    let ce = run_trials(&cfg, |t, rng| {
        let args = draw_many(s, rng, 2 * n - 1)?;
        let base = double_product(s, &args, 0)?;
        for pos in 1..n {
            let other = double_product(s, &args, pos)?;
            if !s.equal(&base, &other) {
                return Ok(Some(Counterexample {
                    trial: t,
                    detail: format!("inner product at placement 0 vs {pos}"),
                    elements: args.iter().map(|a| s.describe(a)).collect(),
                    expected: Some(s.describe(&base)),
                    got: Some(s.describe(&other)),
                }));
            }
        }
        Ok(None)
    })?;
    Ok(report(s, "total_associativity", cfg.trials, cfg.seed, ce, start))
}

/// For sampled `a`, checks `mu[a, ..., quer(a), ..., a] = a` with the
/// querelement at each of the `n` positions.
pub fn check_querelement<S, Q>(s: &S, quer: Q, cfg: RunConfig) -> Result<VerificationReport>
where
    S: NaryStructure,
    Q: Fn(&S::Elem) -> Result<S::Elem> + Sync,
{
    let start = Instant::now();
    let n = s.arity();
    let ce = run_trials(&cfg, |t, rng| {
        let a = draw(s, rng)?;
        let q = quer(&a)?;
        for pos in 0..n {
            let mut args = vec![a.clone(); n];
            args[pos] = q.clone();
            let got = s.product(&args)?;
            if !s.equal(&got, &a) {
                return Ok(Some(Counterexample {
                    trial: t,
                    detail: format!("querelement at position {pos}"),
                    elements: vec![s.describe(&a), s.describe(&q)],
                    expected: Some(s.describe(&a)),
                    got: Some(s.describe(&got)),
                }));
            }
        }
        Ok(None)
    })?;
    Ok(report(s, "querelement", cfg.trials, cfg.seed, ce, start))
}

/// Checks `mu[e, ..., a, ..., e] = a` with sampled `a` at every position.
pub fn check_identity<S: NaryStructure>(s: &S, e: &S::Elem, cfg: RunConfig) -> Result<VerificationReport> {
    check_identity_at(s, e, &(0..s.arity()).collect::<Vec<_>>(), cfg)
}

/// [`check_identity`] restricted to the given positions.
pub fn check_identity_at<S: NaryStructure>(
    s: &S,
    e: &S::Elem,
    positions: &[usize],
    cfg: RunConfig,
) -> Result<VerificationReport> {
    let start = Instant::now();
    let n = s.arity();
    let ce = run_trials(&cfg, |t, rng| {
        let a = draw(s, rng)?;
        for &pos in positions {
            let mut args = vec![e.clone(); n];
            args[pos] = a.clone();
            let got = s.product(&args)?;
            if !s.equal(&got, &a) {
                return Ok(Some(Counterexample {
                    trial: t,
                    detail: format!("element at position {pos}, identity elsewhere"),
                    elements: vec![s.describe(&a), s.describe(e)],
                    expected: Some(s.describe(&a)),
                    got: Some(s.describe(&got)),
                }));
            }
        }
        Ok(None)
    })?;
    let mut r = report(s, "identity", cfg.trials, cfg.seed, ce, start);
    if positions.len() != n {
        r.note = Some(format!("positions {positions:?}"));
    }
    Ok(r)
}

/// `mu[a, ..., a] = a`.
pub fn check_idempotent<S: NaryStructure>(s: &S, a: &S::Elem) -> Result<VerificationReport> {
    let start = Instant::now();
    let got = s.product(&vec![a.clone(); s.arity()])?;
    let ce = (!s.equal(&got, a)).then(|| Counterexample {
        trial: 0,
        detail: "n copies".into(),
        elements: vec![s.describe(a)],
        expected: Some(s.describe(a)),
        got: Some(s.describe(&got)),
    });
    Ok(report(s, "idempotent", 1, 0, ce, start))
}

/// Compares the product of sampled elements with the product under a
/// random non-identity permutation of the arguments.
pub fn check_commutative<S: NaryStructure>(s: &S, cfg: RunConfig) -> Result<VerificationReport> {
    let start = Instant::now();
    let n = s.arity();
    let ce = run_trials(&cfg, |t, rng| {
        let args = draw_many(s, rng, n)?;
        let sigma = random_permutation(n, rng);
        let permuted: Vec<_> = sigma.iter().map(|&i| args[i].clone()).collect();
        let a = s.product(&args)?;
        let b = s.product(&permuted)?;
        if !s.equal(&a, &b) {
            return Ok(Some(Counterexample {
                trial: t,
                detail: format!("permutation {sigma:?}"),
                elements: args.iter().map(|x| s.describe(x)).collect(),
                expected: Some(s.describe(&a)),
                got: Some(s.describe(&b)),
            }));
        }
        Ok(None)
    })?;
    Ok(report(s, "commutative", cfg.trials, cfg.seed, ce, start))
}

/// Uniform permutation other than the identity (for `n >= 2`).
fn random_permutation(n: usize, rng: &mut Rng64) -> Vec<usize> {
    loop {
        let mut p: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            let j = rng.gen_range(0..=i);
            p.swap(i, j);
        }
        if n < 2 || p.iter().enumerate().any(|(i, &v)| i != v) {
            return p;
        }
    }
}

/// `a^<ell>`: the product folded `ell` times over `ell (n - 1) + 1` copies.
pub fn polyadic_power<S: NaryStructure>(s: &S, a: &S::Elem, ell: usize) -> Result<S::Elem> {
    if ell == 0 {
        return Err(Error::Count {
            what: "polyadic power",
            expected: 1,
            got: 0,
        });
    }
    let n = s.arity();
    let mut acc = s.product(&vec![a.clone(); n])?;
    for _ in 1..ell {
        let mut args = vec![acc];
        args.extend(std::iter::repeat(a.clone()).take(n - 1));
        acc = s.product(&args)?;
    }
    Ok(acc)
}

/// `mu[a, ..., z, ..., a] = z` with `z` at every position, for sampled `a`.
pub fn check_polyadic_zero<S: NaryStructure>(s: &S, z: &S::Elem, cfg: RunConfig) -> Result<VerificationReport> {
    let start = Instant::now();
    let n = s.arity();
    let ce = run_trials(&cfg, |t, rng| {
        let a = draw(s, rng)?;
        for pos in 0..n {
            let mut args = vec![a.clone(); n];
            args[pos] = z.clone();
            let got = s.product(&args)?;
            if !s.equal(&got, z) {
                return Ok(Some(Counterexample {
                    trial: t,
                    detail: format!("zero at position {pos}"),
                    elements: vec![s.describe(&a), s.describe(z)],
                    expected: Some(s.describe(z)),
                    got: Some(s.describe(&got)),
                }));
            }
        }
        Ok(None)
    })?;
    Ok(report(s, "polyadic_zero", cfg.trials, cfg.seed, ce, start))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum NilpotentOutcome {
    Nilpotent { ell: usize },
    NoneFound { max_ell: usize },
    /// The proposed zero failed the polyadic-zero law.
    NotAZero { report: Box<VerificationReport> },
}

/// Least `ell <= max_ell` with `a^<ell> = z`, after checking that `z` is a
/// polyadic zero on sampled elements.
pub fn check_nilpotent<S: NaryStructure>(
    s: &S,
    z: &S::Elem,
    a: &S::Elem,
    max_ell: usize,
    cfg: RunConfig,
) -> Result<NilpotentOutcome> {
    let zero_report = check_polyadic_zero(s, z, cfg)?;
    if !zero_report.passed() {
        return Ok(NilpotentOutcome::NotAZero {
            report: Box::new(zero_report),
        });
    }
    for ell in 1..=max_ell {
        if s.equal(&polyadic_power(s, a, ell)?, z) {
            return Ok(NilpotentOutcome::Nilpotent { ell });
        }
    }
    Ok(NilpotentOutcome::NoneFound { max_ell })
}

/// A structure whose product output is perturbed.
pub struct Mutated<'a, S>(pub &'a S);

impl<S: NaryStructure> NaryStructure for Mutated<'_, S> {
    type Elem = S::Elem;
    fn arity(&self) -> usize {
        self.0.arity()
    }
    fn domain(&self) -> String {
        format!("mutated {}", self.0.domain())
    }
    fn product(&self, args: &[S::Elem]) -> Result<S::Elem> {
        let p = self.0.product(args)?;
        self.0
            .perturb(&p)
            .ok_or_else(|| Error::Unsupported("structure has no perturbation".into()))
    }
    fn sample(&self, rng: &mut Rng64) -> Option<S::Elem> {
        self.0.sample(rng)
    }
    fn equal(&self, a: &S::Elem, b: &S::Elem) -> bool {
        self.0.equal(a, b)
    }
    fn describe(&self, a: &S::Elem) -> Value {
        self.0.describe(a)
    }
}

/// Confirms each checker detects a corrupted operation: associativity with
/// a perturbed product, the querelement law with a perturbed queroperation,
/// and (when an identity is given) the identity law with a perturbed
/// identity. Passes iff every corrupted run fails.
pub fn mutation_self_test<S, Q>(
    s: &S,
    quer: Option<Q>,
    identity: Option<&S::Elem>,
    cfg: RunConfig,
) -> Result<VerificationReport>
where
    S: NaryStructure,
    Q: Fn(&S::Elem) -> Result<S::Elem> + Sync,
{
    let start = Instant::now();
    let mut missed = Vec::new();
    if check_total_associativity(&Mutated(s), cfg)?.passed() {
        missed.push("total_associativity");
    }
    if let Some(q) = quer {
        let bad = |a: &S::Elem| -> Result<S::Elem> {
            let good = q(a)?;
            s.perturb(&good)
                .ok_or_else(|| Error::Unsupported("structure has no perturbation".into()))
        };
        if check_querelement(s, bad, cfg)?.passed() {
            missed.push("querelement");
        }
    }
    if let Some(e) = identity {
        let bad = s
            .perturb(e)
            .ok_or_else(|| Error::Unsupported("structure has no perturbation".into()))?;
        if check_identity(s, &bad, cfg)?.passed() {
            missed.push("identity");
        }
    }
    let ce = (!missed.is_empty()).then(|| Counterexample {
        trial: 0,
        detail: format!("corruption not detected by {}", missed.join(", ")),
        elements: Vec::new(),
        expected: None,
        got: None,
    });
    Ok(report(s, "mutation_self_test", cfg.trials, cfg.seed, ce, start))
}

/// Random rational with numerator in `[-bound, bound]` and denominator in
/// `[1, bound]`.
pub fn random_rational(rng: &mut Rng64, bound: i64) -> ComplexRational {
    ComplexRational::ratio(rng.gen_range(-bound..=bound), rng.gen_range(1..=bound))
}

/// Random complex rational; purely real when `complex` is false.
pub fn random_scalar(rng: &mut Rng64, complex: bool) -> ComplexRational {
    let re = random_rational(rng, ENTRY_BOUND);
    if complex {
        re + random_rational(rng, ENTRY_BOUND) * ComplexRational::i()
    } else {
        re
    }
}

pub fn random_matrix(rng: &mut Rng64, rows: usize, cols: usize, complex: bool) -> Matrix<ComplexRational> {
    let entries = (0..rows * cols).map(|_| random_scalar(rng, complex)).collect();
    Matrix::new(rows, cols, entries).expect("positive shape")
}

/// Random invertible square matrix, by rejection.
pub fn random_invertible(rng: &mut Rng64, p: usize, complex: bool) -> Matrix<ComplexRational> {
    loop {
        let m = random_matrix(rng, p, p, complex);
        if m.inverse().is_ok() {
            return m;
        }
    }
}

/// Random shift-diagonal element with component sizes `sizes`.
pub fn random_shiftdiag(rng: &mut Rng64, arity: usize, sizes: &[usize], complex: bool) -> Result<ShiftDiag<ComplexRational>> {
    if arity < 2 {
        return Err(Error::Arity(arity));
    }
    let blocks = (0..arity - 1)
        .map(|_| sizes.iter().map(|&q| random_matrix(rng, q, q, complex)).collect())
        .collect();
    ShiftDiag::new(arity, blocks)
}

/// Random diagonal-shift element; `dims[j]` are the shift dims of component `j`.
pub fn random_diagshift(rng: &mut Rng64, arity: usize, dims: &[Vec<usize>], complex: bool) -> Result<DiagShift<ComplexRational>> {
    let components = dims
        .iter()
        .map(|d| {
            BlockShiftStructure {
                arity,
                dims: d.clone(),
                complex,
                invertible: false,
            }
            .checked_sample(rng)
        })
        .collect::<Result<Vec<_>>>()?;
    DiagShift::new(components)
}

/// Random P matrix with `q x q` blocks.
pub fn random_pmatrix(rng: &mut Rng64, q: usize, complex: bool) -> Result<PMatrix<ComplexRational>> {
    if q == 0 {
        return Err(Error::Dimension("block size must be positive".into()));
    }
    PMatrix::from_blocks(std::array::from_fn(|_| random_matrix(rng, q, q, complex)))
}

/// Block-shift matrices over complex rationals with fixed arity and dims.
#[derive(Clone, Debug)]
pub struct BlockShiftStructure {
    pub arity: usize,
    pub dims: Vec<usize>,
    pub complex: bool,
    /// Sample only square invertible blocks.
    pub invertible: bool,
}

impl BlockShiftStructure {
    /// Square `p x p` blocks.
    pub fn square(arity: usize, p: usize, complex: bool, invertible: bool) -> Result<Self> {
        if arity < 2 {
            return Err(Error::Arity(arity));
        }
        if p == 0 {
            return Err(Error::Dimension("block size must be positive".into()));
        }
        Ok(Self {
            arity,
            dims: vec![p; arity - 1],
            complex,
            invertible,
        })
    }

    pub fn sample_element(&self, rng: &mut Rng64) -> BlockShiftMatrix<ComplexRational> {
        let m = self.dims.len();
        let blocks = (0..m)
            .map(|i| {
                let (r, c) = (self.dims[i], self.dims[(i + 1) % m]);
                if self.invertible && r == c {
                    random_invertible(rng, r, self.complex)
                } else {
                    random_matrix(rng, r, c, self.complex)
                }
            })
            .collect();
        BlockShiftMatrix::from_blocks(self.arity, blocks).expect("dims are cyclic")
    }

    /// [`Self::sample_element`] after validating the arity and dims.
    pub fn checked_sample(&self, rng: &mut Rng64) -> Result<BlockShiftMatrix<ComplexRational>> {
        if self.arity < 2 {
            return Err(Error::Arity(self.arity));
        }
        if self.dims.len() != self.arity - 1 || self.dims.contains(&0) {
            return Err(Error::Dimension(format!(
                "arity {} needs {} positive dims, got {:?}",
                self.arity,
                self.arity - 1,
                self.dims
            )));
        }
        Ok(self.sample_element(rng))
    }
}

impl NaryStructure for BlockShiftStructure {
    type Elem = BlockShiftMatrix<ComplexRational>;

    fn arity(&self) -> usize {
        self.arity
    }
    fn domain(&self) -> String {
        format!(
            "block-shift dims {:?} over {}",
            self.dims,
            if self.complex { "complex-rational" } else { "rational" }
        )
    }
    fn product(&self, args: &[Self::Elem]) -> Result<Self::Elem> {
        blockshift::nary_product(args)
    }
    fn sample(&self, rng: &mut Rng64) -> Option<Self::Elem> {
        Some(self.sample_element(rng))
    }
    fn describe(&self, a: &Self::Elem) -> Value {
        serde_json::to_value(BlockShiftJson::from_blockshift(a)).unwrap_or(Value::Null)
    }
    fn perturb(&self, a: &Self::Elem) -> Option<Self::Elem> {
        let mut blocks = a.blocks().to_vec();
        let mut b = blocks[0].clone();
        let v = b.get(0, 0).clone() + ComplexRational::from(1);
        b.set(0, 0, v);
        blocks[0] = b;
        BlockShiftMatrix::from_blocks(a.arity(), blocks).ok()
    }
}

/// Integer `m`-tuples under the shift-deformed n-ary sum.
#[derive(Clone, Debug)]
pub struct ShiftTupleStructure {
    pub arity: usize,
    pub m: usize,
}

impl NaryStructure for ShiftTupleStructure {
    type Elem = ShiftTuple<num_bigint::BigInt>;

    fn arity(&self) -> usize {
        self.arity
    }
    fn domain(&self) -> String {
        format!("integer {}-tuples, shift-deformed sum", self.m)
    }
    fn product(&self, args: &[Self::Elem]) -> Result<Self::Elem> {
        shiftdeform::nu_s(self.arity, args)
    }
    fn sample(&self, rng: &mut Rng64) -> Option<Self::Elem> {
        let v: Vec<i64> = (0..self.m)
            .map(|_| rng.gen_range(-ENTRY_BOUND..=ENTRY_BOUND))
            .collect();
        ShiftTuple::from_i64s(&v).ok()
    }
    fn describe(&self, a: &Self::Elem) -> Value {
        serde_json::to_value(a.to_texts()).unwrap_or(Value::Null)
    }
    fn perturb(&self, a: &Self::Elem) -> Option<Self::Elem> {
        let mut v = a.components().to_vec();
        v[0] = v[0].clone() + num_bigint::BigInt::from(1);
        ShiftTuple::new(v).ok()
    }
}

/// A structure assembled from closures.
pub struct FnStructure<E, P, G> {
    pub arity: usize,
    pub domain: String,
    pub product: P,
    pub sampler: G,
    pub _elem: std::marker::PhantomData<fn() -> E>,
}

impl<E, P, G> FnStructure<E, P, G>
where
    P: Fn(&[E]) -> Result<E> + Sync,
    G: Fn(&mut Rng64) -> E + Sync,
{
    pub fn new(arity: usize, domain: impl Into<String>, product: P, sampler: G) -> Self {
        Self {
            arity,
            domain: domain.into(),
            product,
            sampler,
            _elem: std::marker::PhantomData,
        }
    }
}

impl<E, P, G> NaryStructure for FnStructure<E, P, G>
where
    E: Clone + PartialEq + Debug + Send + Sync,
    P: Fn(&[E]) -> Result<E> + Sync,
    G: Fn(&mut Rng64) -> E + Sync,
{
    type Elem = E;
    fn arity(&self) -> usize {
        self.arity
    }
    fn domain(&self) -> String {
        self.domain.clone()
    }
    fn product(&self, args: &[E]) -> Result<E> {
        if args.len() != self.arity {
            return Err(Error::Count {
                what: "arguments",
                expected: self.arity,
                got: args.len(),
            });
        }
        (self.product)(args)
    }
    fn sample(&self, rng: &mut Rng64) -> Option<E> {
        Some((self.sampler)(rng))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blockshift::{make_idempotent, nary_identity, polyadize};

    fn cfg(trials: usize) -> RunConfig {
        RunConfig::new(trials, 7)
    }

    #[test]
    fn streams_are_reproducible() {
        let a: u64 = trial_rng(3, 5).gen();
        let b: u64 = trial_rng(3, 5).gen();
        let c: u64 = trial_rng(3, 6).gen();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn blockshift_associativity_and_reproducibility() {
        let s = BlockShiftStructure::square(4, 2, true, false).unwrap();
        let r1 = check_total_associativity(&s, cfg(10)).unwrap();
        assert!(r1.passed());
        let r2 = check_total_associativity(&s, cfg(10).parallel(true)).unwrap();
        assert!(r1.same_outcome(&r2));
    }

    #[test]
    fn shift_tuples_dichotomy() {
        let good = ShiftTupleStructure { arity: 4, m: 3 };
        assert!(check_total_associativity(&good, cfg(50)).unwrap().passed());
        let bad = ShiftTupleStructure { arity: 4, m: 2 };
        let r = check_total_associativity(&bad, cfg(200)).unwrap();
        assert!(!r.passed());
        assert_eq!(r.counterexample.unwrap().elements.len(), 7);
    }

    #[test]
    fn binary_reduces_to_associativity() {
        let s = BlockShiftStructure::square(2, 2, false, false).unwrap();
        assert!(check_total_associativity(&s, cfg(10)).unwrap().passed());
    }

    #[test]
    fn querelement_and_mutation() {
        let s = BlockShiftStructure::square(3, 2, false, true).unwrap();
        let quer = |q: &BlockShiftMatrix<ComplexRational>| q.querelement();
        assert!(check_querelement(&s, quer, cfg(10)).unwrap().passed());
        let negated = |q: &BlockShiftMatrix<ComplexRational>| {
            let good = q.querelement()?;
            let mut b = good.blocks().to_vec();
            b[0] = b[0].neg();
            BlockShiftMatrix::from_blocks(3, b)
        };
        assert!(!check_querelement(&s, negated, cfg(10)).unwrap().passed());
        let e = nary_identity(3, 2).unwrap();
        let st = mutation_self_test(&s, Some(quer), Some(&e), cfg(5)).unwrap();
        assert!(st.passed(), "{st:?}");
    }

    #[test]
    fn identity_positions() {
        let s = BlockShiftStructure::square(4, 2, false, false).unwrap();
        let e = nary_identity(4, 2).unwrap();
        assert!(check_identity_at(&s, &e, &[0, 3], cfg(10)).unwrap().passed());
        assert!(!check_identity(&s, &e, cfg(10)).unwrap().passed());
        let s2 = BlockShiftStructure::square(2, 2, false, false).unwrap();
        assert!(check_identity(&s2, &nary_identity(2, 2).unwrap(), cfg(10)).unwrap().passed());
    }

    #[test]
    fn powers_and_idempotents() {
        let s = BlockShiftStructure::square(4, 2, false, false).unwrap();
        let e = nary_identity(4, 2).unwrap();
        for ell in 1..=5 {
            assert_eq!(polyadic_power(&s, &e, ell).unwrap(), e);
        }
        let b = |v: [i64; 4]| Matrix::new(2, 2, v.map(ComplexRational::from).to_vec()).unwrap();
        let q = make_idempotent(4, vec![b([1, 2, 3, 5]), b([2, 0, 1, 1])]).unwrap();
        assert!(check_idempotent(&s, &q).unwrap().passed());
        assert_eq!(polyadic_power(&s, &q, 3).unwrap(), q);
        let a = s.sample_element(&mut trial_rng(1, 1));
        assert_eq!(polyadic_power(&s, &a, 1).unwrap(), blockshift::nary_product(&vec![a.clone(); 4]).unwrap());
    }

    #[test]
    fn nilpotency() {
        let s = BlockShiftStructure::square(4, 2, false, false).unwrap();
        let z = BlockShiftMatrix::from_blocks(4, vec![Matrix::zeros(2, 2); 3]).unwrap();
        assert_eq!(
            check_nilpotent(&s, &z, &z, 3, cfg(5)).unwrap(),
            NilpotentOutcome::Nilpotent { ell: 1 }
        );
        let b = |v: [i64; 4]| Matrix::new(2, 2, v.map(ComplexRational::from).to_vec()).unwrap();
        // B1 B2 B3 strictly upper triangular
        let n = polyadize(4, vec![b([1, 2, 0, 3]), b([0, 1, 0, 0]), b([2, 1, 0, 1])]).unwrap();
        let got = check_nilpotent(&s, &z, &n, 5, cfg(5)).unwrap();
        assert!(matches!(got, NilpotentOutcome::Nilpotent { ell } if ell <= 2), "{got:?}");
        let e = nary_identity(4, 2).unwrap();
        assert_eq!(
            check_nilpotent(&s, &z, &e, 5, cfg(5)).unwrap(),
            NilpotentOutcome::NoneFound { max_ell: 5 }
        );
        let not_zero = nary_identity(4, 2).unwrap();
        assert!(matches!(
            check_nilpotent(&s, &not_zero, &e, 2, cfg(5)).unwrap(),
            NilpotentOutcome::NotAZero { .. }
        ));
    }

    #[test]
    fn commutativity() {
        let s = BlockShiftStructure::square(3, 1, false, false).unwrap();
        assert!(!check_commutative(&s, cfg(20)).unwrap().passed());
        let s2 = BlockShiftStructure::square(2, 1, false, false).unwrap();
        assert!(check_commutative(&s2, cfg(20)).unwrap().passed());
    }

    #[test]
    fn report_json_shape() {
        let s = ShiftTupleStructure { arity: 4, m: 2 };
        let r = check_total_associativity(&s, cfg(100)).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        for key in ["check", "arity", "trials", "seed", "result", "counterexample"] {
            assert!(v.get(key).is_some(), "missing {key}");
        }
        assert_eq!(v["result"], "fail");
    }
}
