//! Exact rational weights.
//!
//! All lengths, budgets and potentials in this crate are arbitrary-precision
//! rationals. The piecemeal stop rule and the perturbation construction both
//! hinge on exact `<=` comparisons, so nothing here ever rounds.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;

/// An exact rational quantity (edge weight, route length, budget, potential).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Weight(BigRational);

impl Weight {
    pub fn zero() -> Self {
        Weight(BigRational::zero())
    }

    pub fn one() -> Self {
        Weight(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Weight(BigRational::from_integer(BigInt::from(n)))
    }

    /// Exact ratio `p/q`. Panics on a zero denominator.
    pub fn ratio(p: i64, q: i64) -> Self {
        Weight(BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn half(&self) -> Self {
        Weight(&self.0 / BigRational::from_integer(BigInt::from(2)))
    }

    pub fn double(&self) -> Self {
        Weight(&self.0 * BigRational::from_integer(BigInt::from(2)))
    }

    pub fn scale_int(&self, k: i64) -> Self {
        Weight(&self.0 * BigRational::from_integer(BigInt::from(k)))
    }

    /// Smallest integer `>= self`, as a weight.
    pub fn ceil(&self) -> Self {
        Weight(self.0.ceil())
    }

    pub fn min(self, other: Self) -> Self {
        if self <= other {
            self
        } else {
            other
        }
    }

    pub fn max(self, other: Self) -> Self {
        if self >= other {
            self
        } else {
            other
        }
    }

    /// Approximate value for display purposes only.
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    pub fn as_rational(&self) -> &BigRational {
        &self.0
    }

    pub fn from_rational(r: BigRational) -> Self {
        Weight(r)
    }
}

/// Parses `"3"`, `"2.5"` or `"5/2"` into an exact non-negative rational.
impl FromStr for Weight {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::BadWeight("empty weight".into()));
        }
        if s.starts_with('-') {
            return Err(Error::BadWeight(format!("negative weight `{s}`")));
        }
        let value = if let Some((p, q)) = s.split_once('/') {
            let p: BigInt = p
                .parse()
                .map_err(|_| Error::BadWeight(format!("bad numerator in `{s}`")))?;
            let q: BigInt = q
                .parse()
                .map_err(|_| Error::BadWeight(format!("bad denominator in `{s}`")))?;
            if q.is_zero() {
                return Err(Error::BadWeight(format!("zero denominator in `{s}`")));
            }
            BigRational::new(p, q)
        } else if let Some((int, frac)) = s.split_once('.') {
            if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
                return Err(Error::BadWeight(format!("bad decimal `{s}`")));
            }
            let int: BigInt = if int.is_empty() {
                BigInt::zero()
            } else {
                int.parse()
                    .map_err(|_| Error::BadWeight(format!("bad decimal `{s}`")))?
            };
            let scale = BigInt::from(10u32).pow(frac.len() as u32);
            let frac: BigInt = frac
                .parse()
                .map_err(|_| Error::BadWeight(format!("bad decimal `{s}`")))?;
            BigRational::new(int * &scale + frac, scale)
        } else {
            let n: BigInt = s
                .parse()
                .map_err(|_| Error::BadWeight(format!("bad integer `{s}`")))?;
            BigRational::from_integer(n)
        };
        if value.is_negative() {
            return Err(Error::BadWeight(format!("negative weight `{s}`")));
        }
        Ok(Weight(value))
    }
}

/// Canonical exact rendering: integers as `n`, everything else as `p/q`.
impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

macro_rules! impl_binop {
    ($trait:ident, $fn:ident) => {
        impl $trait for Weight {
            type Output = Weight;
            fn $fn(self, rhs: Weight) -> Weight {
                Weight((self.0).$fn(rhs.0))
            }
        }
        impl $trait for &Weight {
            type Output = Weight;
            fn $fn(self, rhs: &Weight) -> Weight {
                Weight((&self.0).$fn(&rhs.0))
            }
        }
        impl $trait<&Weight> for Weight {
            type Output = Weight;
            fn $fn(self, rhs: &Weight) -> Weight {
                Weight((self.0).$fn(&rhs.0))
            }
        }
        impl $trait<Weight> for &Weight {
            type Output = Weight;
            fn $fn(self, rhs: Weight) -> Weight {
                Weight((&self.0).$fn(rhs.0))
            }
        }
    };
}

impl_binop!(Add, add);
impl_binop!(Sub, sub);
impl_binop!(Mul, mul);
impl_binop!(Div, div);

impl Neg for Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight(-self.0)
    }
}

impl Sum for Weight {
    fn sum<I: Iterator<Item = Weight>>(iter: I) -> Weight {
        iter.fold(Weight::zero(), |a, b| a + b)
    }
}

impl<'a> Sum<&'a Weight> for Weight {
    fn sum<I: Iterator<Item = &'a Weight>>(iter: I) -> Weight {
        iter.fold(Weight::zero(), |a, b| a + b)
    }
}
