//! The shift-deformed n-ary sum on tuples over a commutative additive group.
//!
//! For `m`-tuples, the deformed operation adds the `i`-th argument after
//! rotating it `i - 1` times. It is totally associative when `m = n - 1`,
//! and then every tuple has a querelement and there is a whole family of
//! identities.
//!
//! Direction: [`cyclic_shift`] moves the last component to the front,
//! `(a, b, c) -> (c, a, b)`. The deformed sum rotates its arguments the
//! other way, so that `(a1..a4)` over angle turns reproduces the 4-ary
//! rotation product `(a1+b2+c3+a4, b1+c2+a3+b4, c1+a2+b3+c4)`. Every law
//! checked here is symmetric under reversing the direction.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{parse_rational, Turn};
use crate::verify::trial_rng;

/// An exact commutative additive group usable as a tuple carrier.
pub trait AdditiveGroup:
    Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn is_zero(&self) -> bool {
        *self == Self::zero()
    }
    fn from_i64(v: i64) -> Self;
    fn parse_text(text: &str) -> Result<Self>;
}

impl AdditiveGroup for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn parse_text(text: &str) -> Result<Self> {
        let r = parse_rational(text)?;
        if !r.is_integer() {
            return Err(Error::Parse(format!("'{text}' is not an integer")));
        }
        Ok(r.to_integer())
    }
}

impl AdditiveGroup for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(v.into())
    }
    fn parse_text(text: &str) -> Result<Self> {
        parse_rational(text)
    }
}

impl AdditiveGroup for Turn {
    fn zero() -> Self {
        Turn::zero()
    }
    fn from_i64(_: i64) -> Self {
        Turn::zero()
    }
    fn parse_text(text: &str) -> Result<Self> {
        Turn::parse(text)
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ShiftTuple<A> {
    components: Vec<A>,
}

impl<A: AdditiveGroup> ShiftTuple<A> {
    pub fn new(components: Vec<A>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::Dimension("tuples need at least one component".into()));
        }
        Ok(Self { components })
    }

    pub fn zero(m: usize) -> Self {
        Self {
            components: vec![A::zero(); m.max(1)],
        }
    }

    pub fn from_i64s(values: &[i64]) -> Result<Self> {
        Self::new(values.iter().map(|&v| A::from_i64(v)).collect())
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn components(&self) -> &[A] {
        &self.components
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(A::is_zero)
    }

    fn zip_with(&self, other: &Self, f: impl Fn(A, A) -> A) -> Result<Self> {
        if self.len() != other.len() {
            return Err(Error::Dimension(format!(
                "tuple lengths {} and {} differ",
                self.len(),
                other.len()
            )));
        }
        Ok(Self {
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| f(a.clone(), b.clone()))
                .collect(),
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn neg(&self) -> Self {
        Self {
            components: self.components.iter().cloned().map(Neg::neg).collect(),
        }
    }

    /// Parses `[x, y, ...]` text components.
    pub fn parse(items: &[String]) -> Result<Self> {
        Self::new(items.iter().map(|t| A::parse_text(t)).collect::<Result<_>>()?)
    }

    pub fn to_texts(&self) -> Vec<String> {
        self.components.iter().map(ToString::to_string).collect()
    }
}

impl<A: fmt::Display> fmt::Display for ShiftTuple<A> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.components.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

impl<A: fmt::Display> fmt::Debug for ShiftTuple<A> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `(a_1, ..., a_m) -> (a_m, a_1, ..., a_{m-1})`.
pub fn cyclic_shift<A: AdditiveGroup>(a: &ShiftTuple<A>) -> ShiftTuple<A> {
    shift_pow(a, 1)
}

/// `s^k a` for any integer `k`; negative powers rotate the other way.
pub fn shift_pow<A: AdditiveGroup>(a: &ShiftTuple<A>, k: i64) -> ShiftTuple<A> {
    let m = a.len() as i64;
    let r = k.rem_euclid(m) as usize;
    let mut components = a.components.clone();
    components.rotate_right(r);
    ShiftTuple { components }
}

fn check_args<A: AdditiveGroup>(n: usize, args: &[ShiftTuple<A>]) -> Result<usize> {
    if n < 2 {
        return Err(Error::Arity(n));
    }
    if args.len() != n {
        return Err(Error::Count {
            what: "arguments",
            expected: n,
            got: args.len(),
        });
    }
    let m = args[0].len();
    if let Some(a) = args.iter().find(|a| a.len() != m) {
        return Err(Error::Dimension(format!(
            "tuple lengths {m} and {} differ",
            a.len()
        )));
    }
    Ok(m)
}

/// The shift-deformed n-ary sum: the `i`-th argument (1-based) is rotated
/// `i - 1` steps before adding.
pub fn nu_s<A: AdditiveGroup>(n: usize, args: &[ShiftTuple<A>]) -> Result<ShiftTuple<A>> {
    let m = check_args(n, args)?;
    let mut acc = ShiftTuple::zero(m);
    for (i, a) in args.iter().enumerate() {
        acc = acc.add(&shift_pow(a, -(i as i64)))?;
    }
    Ok(acc)
}

/// The undeformed componentwise n-ary sum.
pub fn derived_sum<A: AdditiveGroup>(n: usize, args: &[ShiftTuple<A>]) -> Result<ShiftTuple<A>> {
    let m = check_args(n, args)?;
    args.iter()
        .try_fold(ShiftTuple::zero(m), |acc, a| acc.add(a))
}

fn check_length<A: AdditiveGroup>(n: usize, a: &ShiftTuple<A>) -> Result<()> {
    if n < 2 {
        return Err(Error::Arity(n));
    }
    if a.len() != n - 1 {
        return Err(Error::Dimension(format!(
            "arity {n} needs tuples of length {}, got {}",
            n - 1,
            a.len()
        )));
    }
    Ok(())
}

/// Sum of the shifts `s^from a + ... + s^(to-1) a`.
fn orbit_sum<A: AdditiveGroup>(a: &ShiftTuple<A>, from: i64, to: i64) -> ShiftTuple<A> {
    (from..to).fold(ShiftTuple::zero(a.len()), |acc, k| {
        acc.add(&shift_pow(a, k)).expect("equal lengths")
    })
}

/// `-(s a + s^2 a + ... + s^(n-2) a)`.
pub fn quer_tuple<A: AdditiveGroup>(n: usize, a: &ShiftTuple<A>) -> Result<ShiftTuple<A>> {
    check_length(n, a)?;
    Ok(orbit_sum(a, 1, n as i64 - 1).neg())
}

/// Whether `e + s e + ... + s^(n-2) e = 0`.
pub fn is_identity_tuple<A: AdditiveGroup>(n: usize, e: &ShiftTuple<A>) -> Result<bool> {
    check_length(n, e)?;
    Ok(orbit_sum(e, 0, n as i64 - 1).is_zero())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AssociativityCounterexample {
    /// The `2n - 1` arguments as integer texts.
    pub args: Vec<Vec<String>>,
    /// 0-based placements of the inner product whose results differ.
    pub placements: (usize, usize),
    pub results: (Vec<String>, Vec<String>),
    pub trial: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum AssociativityOutcome {
    Holds { trials: usize },
    Counterexample(AssociativityCounterexample),
}

impl AssociativityOutcome {
    pub fn holds(&self) -> bool {
        matches!(self, AssociativityOutcome::Holds { .. })
    }
}

/// Double product of `2n - 1` arguments with the inner product at `pos`.
pub fn double_nu_s<A: AdditiveGroup>(
    n: usize,
    args: &[ShiftTuple<A>],
    pos: usize,
) -> Result<ShiftTuple<A>> {
    if args.len() != 2 * n - 1 || pos >= n {
        return Err(Error::Count {
            what: "double-product arguments",
            expected: 2 * n - 1,
            got: args.len(),
        });
    }
    let inner = nu_s(n, &args[pos..pos + n])?;
    let mut outer: Vec<_> = args[..pos].to_vec();
    outer.push(inner);
    outer.extend_from_slice(&args[pos + n..]);
    nu_s(n, &outer)
}

/// Random integer search over `m`-tuples: compares all `n` placements of
/// the inner product per trial and returns the first mismatch. Entries are
/// drawn from `[-100, 100]`.
pub fn associativity_witness(n: usize, m: usize, trials: usize, seed: u64) -> Result<AssociativityOutcome> {
    if n < 2 {
        return Err(Error::Arity(n));
    }
    if m == 0 {
        return Err(Error::Dimension("tuples need at least one component".into()));
    }
    for trial in 0..trials {
        let mut rng = trial_rng(seed, trial as u64);
        let args: Vec<ShiftTuple<BigInt>> = (0..2 * n - 1)
            .map(|_| {
                let v: Vec<i64> = (0..m).map(|_| rng.gen_range(-100..=100)).collect();
                ShiftTuple::from_i64s(&v).expect("m >= 1")
            })
            .collect();
        let base = double_nu_s(n, &args, 0)?;
        for pos in 1..n {
            let other = double_nu_s(n, &args, pos)?;
            if other != base {
                return Ok(AssociativityOutcome::Counterexample(AssociativityCounterexample {
                    args: args.iter().map(ShiftTuple::to_texts).collect(),
                    placements: (0, pos),
                    results: (base.to_texts(), other.to_texts()),
                    trial,
                }));
            }
        }
    }
    Ok(AssociativityOutcome::Holds { trials })
}
