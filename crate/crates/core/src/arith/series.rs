use std::fmt;

use num_traits::{One, Zero};

use super::ratpoly::RatPoly;
use super::rational::Rational;
use crate::error::{Error, Result};

/// Power series over `Q` known exactly through `t^trunc`.
///
/// Coefficients past the truncation order are never reported; binary
/// operations truncate to the smaller of the two orders.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatSeries {
    coeffs: Vec<Rational>,
    trunc: usize,
}

impl RatSeries {
    pub fn new(mut coeffs: Vec<Rational>, trunc: usize) -> Self {
        coeffs.resize(trunc + 1, Rational::zero());
        RatSeries { coeffs, trunc }
    }

    pub fn from_poly(p: &RatPoly, trunc: usize) -> Self {
        Self::new(p.coeffs().iter().take(trunc + 1).cloned().collect(), trunc)
    }

    pub fn one(trunc: usize) -> Self {
        Self::from_poly(&RatPoly::one(), trunc)
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `t^k`; `None` past the truncation order.
    pub fn coeff(&self, k: usize) -> Option<&Rational> {
        self.coeffs.get(k)
    }

    /// The known coefficients as a polynomial.
    pub fn to_poly(&self) -> RatPoly {
        RatPoly::new(self.coeffs.clone())
    }

    pub fn add(&self, other: &RatSeries) -> RatSeries {
        let trunc = self.trunc.min(other.trunc);
        Self::new(
            (0..=trunc).map(|k| &self.coeffs[k] + &other.coeffs[k]).collect(),
            trunc,
        )
    }

    pub fn mul(&self, other: &RatSeries) -> RatSeries {
        let trunc = self.trunc.min(other.trunc);
        let mut out = vec![Rational::zero(); trunc + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(trunc + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(trunc + 1 - i) {
                out[i + j] += a * b;
            }
        }
        Self::new(out, trunc)
    }

    pub fn mul_poly(&self, p: &RatPoly) -> RatSeries {
        self.mul(&Self::from_poly(p, self.trunc))
    }

    pub fn scale(&self, c: &Rational) -> RatSeries {
        Self::new(self.coeffs.iter().map(|x| x * c).collect(), self.trunc)
    }

    /// Multiplicative inverse; the constant term must be nonzero.
    pub fn invert(&self) -> Result<RatSeries> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return Err(Error::domain("series with zero constant term is not invertible"));
        }
        let c0_inv = c0.recip();
        let mut out: Vec<Rational> = Vec::with_capacity(self.trunc + 1);
        out.push(c0_inv.clone());
        for k in 1..=self.trunc {
            let mut acc = Rational::zero();
            for j in 1..=k {
                if !self.coeffs[j].is_zero() {
                    acc += &self.coeffs[j] * &out[k - j];
                }
            }
            out.push(-acc * &c0_inv);
        }
        Ok(Self::new(out, self.trunc))
    }

    pub fn divide(&self, denominator: &RatSeries) -> Result<RatSeries> {
        Ok(self.mul(&denominator.invert()?))
    }

    /// True when the known coefficients agree with `1` exactly.
    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }
}

impl fmt::Display for RatSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + O(t^{})", self.to_poly(), self.trunc + 1)
    }
}
