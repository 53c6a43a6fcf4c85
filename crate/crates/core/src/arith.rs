//! Exact integer and rational arithmetic.
//!
//! Integers are `num_bigint::BigInt`. [`BigRat`] is kept canonical after every
//! operation: the denominator is strictly positive and coprime to the numerator,
//! and zero is stored as `0/1`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

pub use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ArithError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid rational literal `{0}`")]
    BadLiteral(String),
}

/// Nonnegative greatest common divisor; `int_gcd(0, 0) = 0`.
pub fn int_gcd(a: &BigInt, b: &BigInt) -> BigInt {
    a.gcd(b)
}

/// Builds the reduced fraction `num/den` with a positive denominator.
pub fn rat_canon(num: BigInt, den: BigInt) -> Result<BigRat, ArithError> {
    if den.is_zero() {
        return Err(ArithError::DivisionByZero);
    }
    Ok(BigRat::canon_unchecked(num, den))
}

/// An exact rational number in lowest terms.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BigRat {
    num: BigInt,
    den: BigInt,
}

impl BigRat {
    fn canon_unchecked(mut num: BigInt, mut den: BigInt) -> BigRat {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return BigRat::zero();
        }
        if den.is_negative() {
            num = -num;
            den = -den;
        }
        let g = num.gcd(&den);
        if !g.is_one() {
            num /= &g;
            den /= &g;
        }
        BigRat { num, den }
    }

    pub fn zero() -> BigRat {
        BigRat {
            num: BigInt::zero(),
            den: BigInt::one(),
        }
    }

    pub fn one() -> BigRat {
        BigRat::from_integer(BigInt::one())
    }

    pub fn from_integer(n: BigInt) -> BigRat {
        BigRat {
            num: n,
            den: BigInt::one(),
        }
    }

    pub fn from_i64(n: i64) -> BigRat {
        BigRat::from_integer(BigInt::from(n))
    }

    pub fn new(num: i64, den: i64) -> Result<BigRat, ArithError> {
        rat_canon(BigInt::from(num), BigInt::from(den))
    }

    pub fn numer(&self) -> &BigInt {
        &self.num
    }

    pub fn denom(&self) -> &BigInt {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_integer(&self) -> bool {
        self.den.is_one()
    }

    pub fn is_negative(&self) -> bool {
        self.num.is_negative()
    }

    pub fn abs(&self) -> BigRat {
        BigRat {
            num: self.num.abs(),
            den: self.den.clone(),
        }
    }

    pub fn recip(&self) -> Result<BigRat, ArithError> {
        if self.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        Ok(BigRat::canon_unchecked(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &BigRat) -> Result<BigRat, ArithError> {
        if rhs.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        Ok(BigRat::canon_unchecked(
            &self.num * &rhs.den,
            &self.den * &rhs.num,
        ))
    }
}

impl Default for BigRat {
    fn default() -> Self {
        BigRat::zero()
    }
}

impl From<i64> for BigRat {
    fn from(n: i64) -> Self {
        BigRat::from_i64(n)
    }
}

impl From<BigInt> for BigRat {
    fn from(n: BigInt) -> Self {
        BigRat::from_integer(n)
    }
}

impl<'a> Add<&'a BigRat> for &'a BigRat {
    type Output = BigRat;
    fn add(self, rhs: &BigRat) -> BigRat {
        if self.den.is_one() && rhs.den.is_one() {
            return BigRat::from_integer(&self.num + &rhs.num);
        }
        BigRat::canon_unchecked(&self.num * &rhs.den + &rhs.num * &self.den, &self.den * &rhs.den)
    }
}

impl<'a> Sub<&'a BigRat> for &'a BigRat {
    type Output = BigRat;
    fn sub(self, rhs: &BigRat) -> BigRat {
        if self.den.is_one() && rhs.den.is_one() {
            return BigRat::from_integer(&self.num - &rhs.num);
        }
        BigRat::canon_unchecked(&self.num * &rhs.den - &rhs.num * &self.den, &self.den * &rhs.den)
    }
}

impl<'a> Mul<&'a BigRat> for &'a BigRat {
    type Output = BigRat;
    fn mul(self, rhs: &BigRat) -> BigRat {
        if self.den.is_one() && rhs.den.is_one() {
            return BigRat::from_integer(&self.num * &rhs.num);
        }
        BigRat::canon_unchecked(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl<'a> Div<&'a BigRat> for &'a BigRat {
    type Output = BigRat;
    /// Panics on a zero divisor; use [`BigRat::checked_div`] to get an error.
    fn div(self, rhs: &BigRat) -> BigRat {
        self.checked_div(rhs).expect("division by zero")
    }
}

impl Neg for &BigRat {
    type Output = BigRat;
    fn neg(self) -> BigRat {
        BigRat {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for BigRat {
    type Output = BigRat;
    fn neg(self) -> BigRat {
        BigRat {
            num: -self.num,
            den: self.den,
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<BigRat> for BigRat {
            type Output = BigRat;
            fn $m(self, rhs: BigRat) -> BigRat {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Ord for BigRat {
    fn cmp(&self, other: &Self) -> Ordering {
        (&self.num * &other.den).cmp(&(&other.num * &self.den))
    }
}

impl PartialOrd for BigRat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for BigRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl fmt::Debug for BigRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for BigRat {
    type Err = ArithError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ArithError::BadLiteral(s.to_string());
        match s.split_once('/') {
            Some((n, d)) => {
                let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
                let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
                rat_canon(n, d)
            }
            None => Ok(BigRat::from_integer(
                BigInt::from_str(s.trim()).map_err(|_| bad())?,
            )),
        }
    }
}
