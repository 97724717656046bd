use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::{parse_rational, rational_text};
use crate::error::Result;

/// An angle measured in whole turns, reduced into `[0, 1)`.
///
/// `Turn(r)` stands for the angle `2*pi*r`, so arithmetic modulo a full
/// rotation is exact rational arithmetic modulo 1.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Turn(BigRational);

impl Turn {
    pub fn new(r: BigRational) -> Self {
        let floor = r.floor();
        Turn(r - floor)
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Self::new(BigRational::new(num.into(), den.into()))
    }

    pub fn zero() -> Self {
        Turn(BigRational::zero())
    }

    pub fn value(&self) -> &BigRational {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// Angle in radians as a float, `2*pi*turn`.
    pub fn radians(&self) -> f64 {
        std::f64::consts::TAU * self.0.to_f64().unwrap_or(f64::NAN)
    }

    pub fn parse(text: &str) -> Result<Self> {
        Ok(Self::new(parse_rational(text)?))
    }
}

impl Add for Turn {
    type Output = Turn;
    fn add(self, rhs: Turn) -> Turn {
        let s = self.0 + rhs.0;
        if s >= BigRational::one() {
            Turn(s - BigRational::one())
        } else {
            Turn(s)
        }
    }
}

impl Sub for Turn {
    type Output = Turn;
    fn sub(self, rhs: Turn) -> Turn {
        self + (-rhs)
    }
}

impl Neg for Turn {
    type Output = Turn;
    fn neg(self) -> Turn {
        if self.0.is_zero() {
            self
        } else {
            Turn(BigRational::one() - self.0)
        }
    }
}

impl fmt::Display for Turn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&rational_text(&self.0))
    }
}

impl fmt::Debug for Turn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Turn({self})")
    }
}
