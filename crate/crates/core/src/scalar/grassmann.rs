use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;

use super::{ComplexRational, Domain, Scalar, TextScalar};
use crate::error::{Error, Result};

/// Largest supported number of anticommuting generators.
pub const MAX_GENERATORS: u8 = 16;

/// Z2-grading of a Grassmann element.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
    Mixed,
}

/// Element of the Grassmann algebra on `N` anticommuting generators
/// `t1..tN` over `ComplexRational`.
///
/// Terms are keyed by the bitmask of their generator subset (bit `k-1` is
/// `tk`), so every key is a sorted index set. Zero coefficients are never
/// stored.
///
/// `generators == 0` marks a constant that embeds into every algebra; the
/// ring constants `zero()`/`one()` are such constants. Equality compares
/// terms only.
#[derive(Clone)]
pub struct GrassmannElement {
    generators: u8,
    terms: BTreeMap<u32, ComplexRational>,
}

/// Sign picked up when the sorted product `t_left * t_right` is reordered.
fn merge_sign(left: u32, right: u32) -> bool {
    let mut swaps = 0u32;
    let mut r = right;
    while r != 0 {
        let j = r.trailing_zeros();
        swaps += (left >> (j + 1)).count_ones();
        r &= r - 1;
    }
    swaps % 2 == 1
}

impl GrassmannElement {
    pub fn zero_in(generators: u8) -> Self {
        Self {
            generators,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(generators: u8, c: ComplexRational) -> Self {
        let mut e = Self::zero_in(generators);
        e.insert(0, c);
        e
    }

    /// The generator `tk`, 1-based.
    pub fn generator(generators: u8, k: u8) -> Result<Self> {
        Self::monomial(generators, &[k], ComplexRational::one())
    }

    /// `coeff * t_{i1} * t_{i2} * ...` in the given (possibly unsorted) order.
    pub fn monomial(generators: u8, indices: &[u8], coeff: ComplexRational) -> Result<Self> {
        let mut acc = Self::constant(generators, coeff);
        for &k in indices {
            if k == 0 || k > generators {
                return Err(Error::Parse(format!(
                    "generator t{k} outside t1..t{generators}"
                )));
            }
            let g = Self {
                generators,
                terms: BTreeMap::from([(1u32 << (k - 1), ComplexRational::one())]),
            };
            acc = acc.try_mul(&g)?;
        }
        Ok(acc)
    }

    pub fn generators(&self) -> u8 {
        self.generators
    }

    /// Same element viewed in the algebra with `generators` generators.
    pub fn with_generators(mut self, generators: u8) -> Result<Self> {
        if let Some(&mask) = self.terms.keys().next_back() {
            if (32 - mask.leading_zeros()) as u8 > generators {
                return Err(Error::GeneratorMismatch {
                    left: self.generators,
                    right: generators,
                });
            }
        }
        self.generators = generators;
        Ok(self)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&u32, &ComplexRational)> {
        self.terms.iter()
    }

    fn insert(&mut self, mask: u32, c: ComplexRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&mask) {
            Some(v) => {
                let s = v.clone() + c;
                if s.is_zero() {
                    self.terms.remove(&mask);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(mask, c);
            }
        }
    }

    fn joined(&self, other: &Self) -> Result<u8> {
        match (self.generators, other.generators) {
            (0, g) | (g, 0) => Ok(g),
            (a, b) if a == b => Ok(a),
            (a, b) => Err(Error::GeneratorMismatch { left: a, right: b }),
        }
    }

    /// Product that rejects operands from algebras with different `N`.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        let generators = self.joined(other)?;
        let mut out = Self::zero_in(generators);
        for (&ma, ca) in &self.terms {
            for (&mb, cb) in &other.terms {
                if ma & mb != 0 {
                    continue;
                }
                let c = ca * cb;
                out.insert(ma | mb, if merge_sign(ma, mb) { -c } else { c });
            }
        }
        Ok(out)
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        let generators = self.joined(other)?;
        let mut out = self.clone();
        out.generators = generators;
        for (&m, c) in &other.terms {
            out.insert(m, c.clone());
        }
        Ok(out)
    }

    /// Coefficient of the empty monomial.
    pub fn body(&self) -> ComplexRational {
        self.terms.get(&0).cloned().unwrap_or_default()
    }

    pub fn soul(&self) -> Self {
        let mut s = self.clone();
        s.terms.remove(&0);
        s
    }

    pub fn even_part(&self) -> Self {
        self.filtered(|m| m.count_ones() % 2 == 0)
    }

    pub fn odd_part(&self) -> Self {
        self.filtered(|m| m.count_ones() % 2 == 1)
    }

    fn filtered(&self, keep: impl Fn(u32) -> bool) -> Self {
        Self {
            generators: self.generators,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(**m))
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    pub fn parity(&self) -> Parity {
        let mut even = true;
        let mut odd = true;
        for m in self.terms.keys() {
            if m.count_ones() % 2 == 0 {
                odd = false;
            } else {
                even = false;
            }
        }
        match (even, odd) {
            (true, _) => Parity::Even,
            (false, true) => Parity::Odd,
            _ => Parity::Mixed,
        }
    }

    pub fn is_even(&self) -> bool {
        self.parity() == Parity::Even
    }

    /// Zero counts as odd as well as even.
    pub fn is_odd(&self) -> bool {
        self.terms.is_empty() || self.parity() == Parity::Odd
    }

    /// Inverse by the finite geometric series in the nilpotent soul.
    pub fn inverse(&self) -> Result<Self> {
        let body = self.body();
        let body_inv = body
            .try_inverse()
            .ok_or_else(|| Error::NotInvertible(format!("{self} has zero body")))?;
        // self = body * (1 + x) with x nilpotent
        let x = self.soul().scale(&body_inv);
        let neg_x = -x;
        let mut sum = Self::constant(self.generators, ComplexRational::one());
        let mut power = sum.clone();
        loop {
            power = power.try_mul(&neg_x)?;
            if power.terms.is_empty() {
                break;
            }
            sum = sum.try_add(&power)?;
        }
        Ok(sum.scale(&body_inv))
    }

    pub fn scale(&self, c: &ComplexRational) -> Self {
        let mut out = Self::zero_in(self.generators);
        for (&m, v) in &self.terms {
            out.insert(m, v * c);
        }
        out
    }

    /// Parses terms joined by ` + `, each `coeff`, `coeff*t1*t3` or `t2`.
    /// Coefficients with both real and imaginary parts are parenthesised.
    pub fn parse(text: &str, generators: u8) -> Result<Self> {
        let mut out = Self::zero_in(generators);
        for raw in text.split(" + ") {
            let term = raw.trim();
            if term.is_empty() {
                return Err(Error::Parse(format!("empty term in '{text}'")));
            }
            let (coeff_text, rest) = if let Some(inner) = term.strip_prefix('(') {
                let close = inner
                    .find(')')
                    .ok_or_else(|| Error::Parse(format!("unbalanced '(' in '{term}'")))?;
                let rest = &inner[close + 1..];
                let rest = if rest.is_empty() {
                    rest
                } else {
                    rest.strip_prefix('*').ok_or_else(|| {
                        Error::Parse(format!("expected '*' after coefficient in '{term}'"))
                    })?
                };
                (inner[..close].to_string(), rest.to_string())
            } else {
                let mut coeff = Vec::new();
                let mut gens = Vec::new();
                for tok in term.split('*') {
                    if is_generator_token(tok) {
                        gens.push(tok);
                    } else if let Some(g) = tok.strip_prefix('-').filter(|g| is_generator_token(g)) {
                        // `-t2` reads as `-1*t2`.
                        if !(coeff.is_empty() && gens.is_empty()) {
                            return Err(Error::Parse(format!("misplaced sign in '{term}'")));
                        }
                        coeff.push("-1");
                        gens.push(g);
                    } else if gens.is_empty() {
                        coeff.push(tok);
                    } else {
                        return Err(Error::Parse(format!(
                            "coefficient must precede generators in '{term}'"
                        )));
                    }
                }
                (coeff.join("*"), gens.join("*"))
            };
            let coeff: ComplexRational = if coeff_text.is_empty() {
                ComplexRational::one()
            } else {
                coeff_text.parse()?
            };
            let mut indices = Vec::new();
            if !rest.is_empty() {
                for tok in rest.split('*') {
                    if !is_generator_token(tok) {
                        return Err(Error::Parse(format!("bad generator '{tok}' in '{term}'")));
                    }
                    let k: u8 = tok[1..]
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad generator '{tok}'")))?;
                    indices.push(k);
                }
            }
            let m = Self::monomial(generators, &indices, coeff)?;
            out = out.try_add(&m)?;
        }
        Ok(out)
    }
}

fn is_generator_token(tok: &str) -> bool {
    tok.len() > 1 && tok.starts_with('t') && tok[1..].bytes().all(|b| b.is_ascii_digit())
}

/// Checked product, the fallible form of `*`.
pub fn grassmann_mul(a: &GrassmannElement, b: &GrassmannElement) -> Result<GrassmannElement> {
    a.try_mul(b)
}

impl PartialEq for GrassmannElement {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl Eq for GrassmannElement {}

impl Scalar for GrassmannElement {
    const COMMUTATIVE: bool = false;

    fn zero() -> Self {
        Self::zero_in(0)
    }
    fn one() -> Self {
        Self::constant(0, ComplexRational::one())
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn try_inverse(&self) -> Option<Self> {
        self.inverse().ok()
    }
    fn from_i64(v: i64) -> Self {
        Self::constant(0, ComplexRational::from_i64(v))
    }
}

/// Panics when the operands come from algebras with different generator
/// counts; see [`GrassmannElement::try_mul`].
impl Mul for GrassmannElement {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.try_mul(&rhs).expect("grassmann product")
    }
}

impl Add for GrassmannElement {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.try_add(&rhs).expect("grassmann sum")
    }
}

impl Sub for GrassmannElement {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self.try_add(&-rhs).expect("grassmann difference")
    }
}

impl Neg for GrassmannElement {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            generators: self.generators,
            terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect(),
        }
    }
}

impl fmt::Display for GrassmannElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut keys: Vec<u32> = self.terms.keys().copied().collect();
        keys.sort_by_key(|m| (m.count_ones(), std::cmp::Reverse(m.reverse_bits())));
        for (k, m) in keys.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            let c = &self.terms[m];
            let text = c.to_string();
            if !c.re.is_zero() && !c.is_real() {
                write!(f, "({text})")?;
            } else {
                f.write_str(&text)?;
            }
            let mut bits = *m;
            while bits != 0 {
                write!(f, "*t{}", bits.trailing_zeros() + 1)?;
                bits &= bits - 1;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for GrassmannElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl TextScalar for GrassmannElement {
    fn to_text(&self) -> String {
        self.to_string()
    }

    fn parse_text(text: &str, domain: &Domain) -> Result<Self> {
        match domain {
            Domain::Grassmann(n) => Self::parse(text, *n),
            other => Err(Error::Parse(format!(
                "grassmann scalar requested for domain {other}"
            ))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(text: &str) -> GrassmannElement {
        GrassmannElement::parse(text, 4).unwrap()
    }

    #[test]
    fn basis_products() {
        let t1 = GrassmannElement::generator(4, 1).unwrap();
        let t2 = GrassmannElement::generator(4, 2).unwrap();
        assert_eq!(t1.clone() * t2.clone(), g("1*t1*t2"));
        assert_eq!(t2.clone() * t1.clone(), g("-1*t1*t2"));
        assert!((t1.clone() * t1).is_zero());
    }

    #[test]
    fn nilpotent_pair_product() {
        assert_eq!(g("1 + 1*t1*t2") * g("1 + -1*t1*t2"), GrassmannElement::one());
    }

    #[test]
    fn parities() {
        assert_eq!(g("3 + 1*t1*t2").parity(), Parity::Even);
        assert_eq!(g("t1").parity(), Parity::Odd);
        assert_eq!(g("1 + t1").parity(), Parity::Mixed);
        assert_eq!(GrassmannElement::zero_in(4).parity(), Parity::Even);
    }

    #[test]
    fn inverses() {
        assert_eq!(g("2").inverse().unwrap(), g("1/2"));
        assert_eq!(g("1 + 1*t1*t2").inverse().unwrap(), g("1 + -1*t1*t2"));
        assert!(matches!(g("t1").inverse(), Err(Error::NotInvertible(_))));
        assert_eq!(g("1 + -t1*t2"), g("1 + -1*t1*t2"));
        assert!(GrassmannElement::parse("2*-t1", 4).is_err());
        let a = g("3 + 1/2*t1 + -2*t2*t3 + (1+i)*t1*t2*t4");
        let inv = a.inverse().unwrap();
        assert_eq!(a.clone() * inv.clone(), GrassmannElement::one());
        assert_eq!(inv * a, GrassmannElement::one());
    }

    #[test]
    fn generator_mismatch_is_an_error() {
        let a = GrassmannElement::generator(3, 1).unwrap();
        let b = GrassmannElement::generator(4, 2).unwrap();
        assert_eq!(
            grassmann_mul(&a, &b),
            Err(Error::GeneratorMismatch { left: 3, right: 4 })
        );
        assert!(GrassmannElement::generator(3, 4).is_err());
    }

    #[test]
    fn text_round_trip() {
        let a = g("(1/2-3*i)*t1*t3 + -7 + 2*i*t2");
        let text = a.to_string();
        assert_eq!(text, "-7 + 2*i*t2 + (1/2-3*i)*t1*t3");
        assert_eq!(g(&text), a);
        assert_eq!(g("t3*t1"), g("-1*t1*t3"));
        assert!(GrassmannElement::parse("t1*2", 4).is_err());
        assert!(GrassmannElement::parse("1 + ", 4).is_err());
    }

    #[test]
    fn even_odd_split() {
        let a = g("1 + t1 + 2*t1*t2 + t1*t2*t3");
        assert_eq!(a.even_part().try_add(&a.odd_part()).unwrap(), a);
        assert!(a.even_part().is_even());
        assert!(a.odd_part().is_odd());
    }
}
