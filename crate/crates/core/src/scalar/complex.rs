use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{parse_rational, rational_abs_text, rational_text, Domain, Scalar, TextScalar};
use crate::error::{Error, Result};

/// Exact element of Q(i): a pair of arbitrary-precision rationals.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ComplexRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl ComplexRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Self { re, im }
    }

    pub fn real(re: BigRational) -> Self {
        Self {
            re,
            im: BigRational::zero(),
        }
    }

    /// `num/den` with zero imaginary part. Panics on `den == 0`.
    pub fn ratio(num: i64, den: i64) -> Self {
        Self::real(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_parts(re: (i64, i64), im: (i64, i64)) -> Self {
        Self::new(
            BigRational::new(re.0.into(), re.1.into()),
            BigRational::new(im.0.into(), im.1.into()),
        )
    }

    pub fn i() -> Self {
        Self::new(BigRational::zero(), BigRational::one())
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -self.im.clone())
    }

    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        let inv = rhs.try_inverse().ok_or(Error::DivisionByZero)?;
        Ok(self.clone() * inv)
    }
}

impl Scalar for ComplexRational {
    const COMMUTATIVE: bool = true;

    fn zero() -> Self {
        Self::default()
    }
    fn one() -> Self {
        Self::real(BigRational::one())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn try_inverse(&self) -> Option<Self> {
        let n = self.norm_sqr();
        if n.is_zero() {
            return None;
        }
        Some(Self::new(&self.re / &n, -(&self.im / &n)))
    }
    fn from_i64(v: i64) -> Self {
        Self::real(BigRational::from_integer(v.into()))
    }
}

impl Add for ComplexRational {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.re + rhs.re, self.im + rhs.im)
    }
}

impl Sub for ComplexRational {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.re - rhs.re, self.im - rhs.im)
    }
}

impl Mul for ComplexRational {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

impl<'a> Mul<&'a ComplexRational> for &'a ComplexRational {
    type Output = ComplexRational;
    fn mul(self, rhs: &'a ComplexRational) -> ComplexRational {
        if self.im.is_zero() && rhs.im.is_zero() {
            return ComplexRational::real(&self.re * &rhs.re);
        }
        ComplexRational::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl<'a> Add<&'a ComplexRational> for &'a ComplexRational {
    type Output = ComplexRational;
    fn add(self, rhs: &'a ComplexRational) -> ComplexRational {
        ComplexRational::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

/// Panics on division by zero; use [`ComplexRational::checked_div`] otherwise.
impl Div for ComplexRational {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        self.checked_div(&rhs).expect("division by zero")
    }
}

impl Neg for ComplexRational {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.re, -self.im)
    }
}

impl From<i64> for ComplexRational {
    fn from(v: i64) -> Self {
        Self::from_i64(v)
    }
}

impl From<BigRational> for ComplexRational {
    fn from(r: BigRational) -> Self {
        Self::real(r)
    }
}

impl fmt::Display for ComplexRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => f.write_str(&rational_text(&self.re)),
            (true, false) => write!(f, "{}*i", rational_text(&self.im)),
            (false, false) => {
                let sign = if self.im.is_negative() { '-' } else { '+' };
                write!(
                    f,
                    "{}{}{}*i",
                    rational_text(&self.re),
                    sign,
                    rational_abs_text(&self.im)
                )
            }
        }
    }
}

impl fmt::Debug for ComplexRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for ComplexRational {
    type Err = Error;

    /// Accepts `p/q`, `r/s*i`, `p/q+r/s*i`, `p/q-r/s*i`, and bare `i`/`-i`.
    fn from_str(text: &str) -> Result<Self> {
        let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() {
            return Err(Error::Parse("empty scalar".into()));
        }
        let Some(head) = t.strip_suffix('i') else {
            return Ok(Self::real(parse_rational(&t)?));
        };
        let head = head.strip_suffix('*').unwrap_or(head);
        // split at the last sign that is not a leading sign
        let split = head
            .char_indices()
            .filter(|&(k, c)| k > 0 && (c == '+' || c == '-'))
            .map(|(k, _)| k)
            .last();
        let (re_text, im_text) = match split {
            Some(k) => (&head[..k], &head[k..]),
            None => ("", head),
        };
        let re = if re_text.is_empty() {
            BigRational::zero()
        } else {
            parse_rational(re_text)?
        };
        let im = match im_text {
            "" | "+" => BigRational::one(),
            "-" => -BigRational::one(),
            s => parse_rational(s)?,
        };
        Ok(Self::new(re, im))
    }
}

impl TextScalar for ComplexRational {
    fn to_text(&self) -> String {
        self.to_string()
    }

    fn parse_text(text: &str, domain: &Domain) -> Result<Self> {
        let v: Self = text.parse()?;
        match domain {
            Domain::Rational if !v.is_real() => Err(Error::Parse(format!(
                "'{text}' has an imaginary part but the domain is rational"
            ))),
            Domain::Rational | Domain::ComplexRational => Ok(v),
            other => Err(Error::Parse(format!(
                "complex rational scalar requested for domain {other}"
            ))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(s: &str) -> ComplexRational {
        s.parse().unwrap()
    }

    #[test]
    fn text_forms() {
        assert_eq!(c("1/2+3/4*i").to_string(), "1/2+3/4*i");
        assert_eq!(c("1/2-3/4*i").to_string(), "1/2-3/4*i");
        assert_eq!(c("-1/2-3/4*i"), ComplexRational::from_parts((-1, 2), (-3, 4)));
        assert_eq!(c("3/4*i").to_string(), "3/4*i");
        assert_eq!(c("-i"), -ComplexRational::i());
        assert_eq!(c("2/4").to_string(), "1/2");
        assert_eq!(c("0").to_string(), "0");
        assert!("1/2+*i+".parse::<ComplexRational>().is_err());
        assert!("abc".parse::<ComplexRational>().is_err());
    }

    #[test]
    fn field_ops() {
        let a = c("1+2*i");
        let inv = a.try_inverse().unwrap();
        assert_eq!(a.clone() * inv, ComplexRational::one());
        assert_eq!(c("i") * c("i"), c("-1"));
        assert!(ComplexRational::zero().try_inverse().is_none());
        assert_eq!(a.checked_div(&ComplexRational::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn rational_domain_rejects_imaginary() {
        assert!(ComplexRational::parse_text("1+i", &Domain::Rational).is_err());
        assert!(ComplexRational::parse_text("5/3", &Domain::Rational).is_ok());
    }
}
