//! Exact scalars: big rationals and the [`Scalar`] abstraction shared by all formulas.
//!
//! Every identity in the crate is a rational function of its inputs, so the same formula
//! code runs over three scalar domains: plain big rationals (randomized exact checks),
//! truncated power series in the grading variable `t` (formal-power-series identities), and
//! multivariate polynomials (symbolic output). [`Scalar`] captures exactly the operations
//! those formulas need; parameters always stay rational and are embedded on demand.

use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational number, always reduced with positive denominator
/// (both guaranteed by `num-rational`).
pub type Rat = BigRational;

/// Parse a rational from a string such as `"3/7"`, `"-2"` or `"0"`.
pub fn rat_from_str(s: &str) -> Result<Rat> {
    let s = s.trim();
    let parse_int = |p: &str| -> Result<BigInt> {
        p.trim()
            .parse::<BigInt>()
            .map_err(|_| Error::Invalid(format!("bad integer: {p:?}")))
    };
    match s.split_once('/') {
        Some((n, d)) => {
            let den = parse_int(d)?;
            if den.is_zero() {
                return Err(Error::DivisionByZero);
            }
            Ok(Rat::new(parse_int(n)?, den))
        }
        None => Ok(Rat::from_integer(parse_int(s)?)),
    }
}

/// Shorthand for a rational from an integer.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Shorthand for a rational fraction `n/d`.
pub fn ratq(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// An exact commutative-ring element with partial inversion.
///
/// `embed` produces a constant of the same "shape" as `self` (same truncation order for
/// series, same variable count for polynomials), which is how rational parameters enter
/// generic formulas.
pub trait Scalar:
    Clone
    + PartialEq
    + std::fmt::Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    /// Constant `r` with the same shape as `self`.
    fn embed(&self, r: &Rat) -> Self;

    fn is_zero(&self) -> bool;

    /// Multiplicative inverse where one exists (`DivisionByZero` otherwise).
    fn inv(&self) -> Result<Self>;

    fn zero_like(&self) -> Self {
        self.embed(&Rat::zero())
    }

    fn one_like(&self) -> Self {
        self.embed(&Rat::one())
    }

    fn embed_int(&self, n: i64) -> Self {
        self.embed(&rat(n))
    }

    /// Exact division.
    fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.clone() * other.inv()?)
    }

    /// Signed integer power; negative exponents require invertibility.
    fn powi(&self, k: i64) -> Result<Self> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut acc = self.one_like();
        for _ in 0..k.unsigned_abs() {
            acc = acc * base.clone();
        }
        Ok(acc)
    }
}

impl Scalar for Rat {
    fn embed(&self, r: &Rat) -> Self {
        r.clone()
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn inv(&self) -> Result<Self> {
        if Zero::is_zero(self) {
            Err(Error::DivisionByZero)
        } else {
            Ok(self.recip())
        }
    }
}

/// True if `r` is a "small" degenerate value to reject in random draws: 0 or ±1.
pub fn is_degenerate_unit(r: &Rat) -> bool {
    num_traits::Zero::is_zero(r) || r.abs().is_one()
}
