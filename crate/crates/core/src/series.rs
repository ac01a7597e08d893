//! Truncated power series in the grading variable `t`, over big rationals.
//!
//! Arithmetic is closed modulo t^{D+1} for a fixed order `D`. Formal-power-series
//! identities (Cauchy, exchange, q-Gauss) are verified by substituting
//! x → t·x̂, y⁻¹ → t·ŷ, q → t·q̂ and comparing in ℚ[t]/(t^{D+1}).

use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::scalar::{Rat, Scalar};

/// A power series Σ c_k t^k known modulo t^{order+1}.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TruncSeries {
    coeffs: Vec<Rat>, // length order + 1
}

impl TruncSeries {
    /// The constant series `r` at the given order.
    pub fn constant(r: Rat, order: usize) -> Self {
        let mut coeffs = vec![Rat::zero(); order + 1];
        coeffs[0] = r;
        TruncSeries { coeffs }
    }

    /// The zero series at the given order.
    pub fn zero(order: usize) -> Self {
        TruncSeries {
            coeffs: vec![Rat::zero(); order + 1],
        }
    }

    /// The series `r · t` (a grading substitute such as t·x̂).
    pub fn graded(r: Rat, order: usize) -> Self {
        let mut coeffs = vec![Rat::zero(); order + 1];
        if order >= 1 {
            coeffs[1] = r;
        }
        TruncSeries { coeffs }
    }

    pub fn from_coeffs(coeffs: Vec<Rat>) -> Self {
        assert!(!coeffs.is_empty());
        TruncSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &Rat {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// Index of the lowest nonzero coefficient, or `None` for the zero series.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !num_traits::Zero::is_zero(c))
    }

    /// Drop coefficients above `order` (used after guarded internal computations).
    pub fn truncated(&self, order: usize) -> Self {
        assert!(order <= self.order());
        TruncSeries {
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    /// Exact division by a series of positive valuation m = val(g).
    ///
    /// Requires the dividend to vanish to order m (exactly, which holds whenever the
    /// quotient is known to be a power series). The top m coefficients of the result are
    /// computed as if the dividend's unknown tail were zero, so callers must run at a
    /// guarded order and truncate afterwards.
    pub fn div_exact(&self, g: &TruncSeries) -> Result<TruncSeries> {
        let m = g.valuation().ok_or(Error::DivisionByZero)?;
        if m == 0 {
            return self.clone().div(g);
        }
        if self.coeffs[..m].iter().any(|c| !num_traits::Zero::is_zero(c)) {
            return Err(Error::DivisionByZero);
        }
        let order = self.order();
        let shift = |s: &TruncSeries| {
            let mut c = s.coeffs[m..].to_vec();
            c.resize(order + 1, Rat::zero());
            TruncSeries { coeffs: c }
        };
        shift(self).div(&shift(g))
    }

    fn assert_same_order(&self, other: &Self) {
        assert_eq!(
            self.order(),
            other.order(),
            "mixed truncation orders in series arithmetic"
        );
    }
}

impl Add for TruncSeries {
    type Output = TruncSeries;
    fn add(mut self, rhs: TruncSeries) -> TruncSeries {
        self.assert_same_order(&rhs);
        for (a, b) in self.coeffs.iter_mut().zip(rhs.coeffs) {
            *a += b;
        }
        self
    }
}

impl Sub for TruncSeries {
    type Output = TruncSeries;
    fn sub(mut self, rhs: TruncSeries) -> TruncSeries {
        self.assert_same_order(&rhs);
        for (a, b) in self.coeffs.iter_mut().zip(rhs.coeffs) {
            *a -= b;
        }
        self
    }
}

impl Neg for TruncSeries {
    type Output = TruncSeries;
    fn neg(mut self) -> TruncSeries {
        for a in self.coeffs.iter_mut() {
            *a = -std::mem::take(a);
        }
        self
    }
}

impl Mul for TruncSeries {
    type Output = TruncSeries;
    fn mul(self, rhs: TruncSeries) -> TruncSeries {
        self.assert_same_order(&rhs);
        let n = self.coeffs.len();
        let mut out = vec![Rat::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if num_traits::Zero::is_zero(a) {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().take(n - i).enumerate() {
                if !num_traits::Zero::is_zero(b) {
                    out[i + j] += a * b;
                }
            }
        }
        TruncSeries { coeffs: out }
    }
}

impl Scalar for TruncSeries {
    fn embed(&self, r: &Rat) -> Self {
        TruncSeries::constant(r.clone(), self.order())
    }

    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| num_traits::Zero::is_zero(c))
    }

    /// Series inversion: defined iff the constant term is nonzero.
    fn inv(&self) -> Result<Self> {
        if num_traits::Zero::is_zero(&self.coeffs[0]) {
            return Err(Error::NotInvertible);
        }
        let c0inv = self.coeffs[0].recip();
        let mut out = vec![Rat::zero(); self.coeffs.len()];
        out[0] = c0inv.clone();
        for k in 1..self.coeffs.len() {
            let mut acc = Rat::zero();
            for i in 1..=k {
                if !num_traits::Zero::is_zero(&self.coeffs[i]) {
                    acc += &self.coeffs[i] * &out[k - i];
                }
            }
            out[k] = -acc * &c0inv;
        }
        Ok(TruncSeries { coeffs: out })
    }
}

/// Free-function alias for the series inverse.
pub fn series_inv(a: &TruncSeries) -> Result<TruncSeries> {
    a.inv()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;
    use num_traits::One;

    #[test]
    fn inverts_one() {
        let one = TruncSeries::constant(Rat::one(), 4);
        assert_eq!(one.inv().unwrap(), one);
    }

    #[test]
    fn inverts_geometric() {
        // 1/(1-t) = 1 + t + t² + t³ mod t⁴
        let a = TruncSeries::constant(Rat::one(), 3) - TruncSeries::graded(Rat::one(), 3);
        let inv = a.inv().unwrap();
        assert_eq!(inv.coeffs(), &[rat(1), rat(1), rat(1), rat(1)]);
    }

    #[test]
    fn inverts_two_plus_t() {
        // inv(2+t), D=2 → 1/2 − t/4 + t²/8; verified by multiplying back.
        let a = TruncSeries::constant(rat(2), 2) + TruncSeries::graded(Rat::one(), 2);
        let inv = a.clone().inv().unwrap();
        assert_eq!(
            inv.coeffs(),
            &[
                crate::scalar::ratq(1, 2),
                crate::scalar::ratq(-1, 4),
                crate::scalar::ratq(1, 8)
            ]
        );
        assert_eq!(a * inv, TruncSeries::constant(Rat::one(), 2));
    }

    #[test]
    fn rejects_zero_constant_term() {
        assert_eq!(
            TruncSeries::graded(Rat::one(), 3).inv(),
            Err(Error::NotInvertible)
        );
    }

    #[test]
    fn exact_division_by_positive_valuation() {
        // (t² + t³) / (t + t²) = t exactly.
        let order = 5;
        let t = TruncSeries::graded(Rat::one(), order);
        let num = t.clone() * t.clone() + t.clone() * t.clone() * t.clone();
        let den = t.clone() + t.clone() * t.clone();
        let q = num.div_exact(&den).unwrap();
        assert_eq!(q.truncated(order - 1), t.truncated(order - 1));
        // Dividend not divisible → error.
        let one = TruncSeries::constant(Rat::one(), order);
        assert!(one.div_exact(&t).is_err());
    }
}
