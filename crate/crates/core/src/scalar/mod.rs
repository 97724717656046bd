//! Coefficient rings for matrices: exact complex rationals, a finite
//! Grassmann algebra, rational turns for angles, and an `f64` adapter used
//! only by the float cross-checks and the benchmark.

mod complex;
mod grassmann;
mod turn;

pub use complex::ComplexRational;
pub use grassmann::{grassmann_mul, GrassmannElement, Parity, MAX_GENERATORS};
pub use turn::Turn;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A unital ring whose elements can be stored in a [`crate::matrix::Matrix`].
///
/// Arithmetic goes through the by-value operator traits. Exact rings never
/// round; `f64` is the only inexact implementor.
pub trait Scalar:
    Clone
    + PartialEq
    + fmt::Debug
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    /// Whether multiplication commutes for every pair of elements.
    const COMMUTATIVE: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    /// Two-sided multiplicative inverse, if the element is a unit.
    fn try_inverse(&self) -> Option<Self>;
    fn from_i64(v: i64) -> Self;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }
}

impl Scalar for f64 {
    const COMMUTATIVE: bool = true;

    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn try_inverse(&self) -> Option<Self> {
        if *self == 0.0 {
            None
        } else {
            Some(1.0 / *self)
        }
    }
    fn from_i64(v: i64) -> Self {
        v as f64
    }
}

/// Scalars with a canonical text form, used by the JSON fixtures.
pub trait TextScalar: Scalar {
    fn to_text(&self) -> String;
    fn parse_text(text: &str, domain: &Domain) -> Result<Self>;
}

/// Scalar domain tag as written on the command line and in job files.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Domain {
    Rational,
    ComplexRational,
    Grassmann(u8),
    Turns,
}

impl Domain {
    pub fn parse(tag: &str) -> Result<Self> {
        match tag {
            "rational" => Ok(Domain::Rational),
            "complex-rational" => Ok(Domain::ComplexRational),
            "turns" => Ok(Domain::Turns),
            _ => {
                if let Some(n) = tag.strip_prefix("grassmann:") {
                    let n: usize = n
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad generator count in '{tag}'")))?;
                    if n == 0 {
                        return Err(Error::Parse(
                            "grassmann domain needs at least 1 generator".into(),
                        ));
                    }
                    if n > MAX_GENERATORS as usize {
                        return Err(Error::Parse(format!(
                            "grassmann domain supports at most {MAX_GENERATORS} generators"
                        )));
                    }
                    Ok(Domain::Grassmann(n as u8))
                } else {
                    Err(Error::Parse(format!("unknown scalar domain '{tag}'")))
                }
            }
        }
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Domain::Rational => f.write_str("rational"),
            Domain::ComplexRational => f.write_str("complex-rational"),
            Domain::Grassmann(n) => write!(f, "grassmann:{n}"),
            Domain::Turns => f.write_str("turns"),
        }
    }
}

/// Parses `p`, `-p`, `p/q` into an exact rational.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let t = text.trim();
    let bad = || Error::Parse(format!("malformed rational '{text}'"));
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (t, None),
    };
    let num: BigInt = parse_int(num).ok_or_else(bad)?;
    let den: BigInt = match den {
        Some(d) => {
            let d = parse_int(d).ok_or_else(bad)?;
            if d.is_zero() {
                return Err(Error::DivisionByZero);
            }
            d
        }
        None => BigInt::one(),
    };
    Ok(BigRational::new(num, den))
}

fn parse_int(s: &str) -> Option<BigInt> {
    let digits = s.strip_prefix('+').unwrap_or(s);
    let body = digits.strip_prefix('-').unwrap_or(digits);
    if body.is_empty() || !body.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    digits.parse().ok()
}

/// Canonical text of a rational: `p` when integral, `p/q` otherwise.
pub fn rational_text(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub(crate) fn rational_abs_text(r: &BigRational) -> String {
    rational_text(&r.abs())
}
