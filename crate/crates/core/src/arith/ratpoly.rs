use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::rational::{format_rational, parse_rational, Rational};
use crate::error::{Error, Result};

/// Dense univariate polynomial over `Q`, coefficients indexed by degree.
///
/// Trailing zeros are always trimmed, so the zero polynomial has no coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatPoly {
    coeffs: Vec<Rational>,
}

impl RatPoly {
    pub fn new(coeffs: Vec<Rational>) -> Self {
        let mut p = RatPoly { coeffs };
        p.trim();
        p
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Rational::from_integer(BigInt::from(c))).collect())
    }

    pub fn zero() -> Self {
        RatPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_ints(&[1])
    }

    /// The monomial `c·t^k`.
    pub fn monomial(k: usize, c: Rational) -> Self {
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    /// `1 + t + … + t^{d−1}`, the Poincaré factor of an invariant of degree `d`.
    pub fn q_integer(d: usize) -> Self {
        Self::from_ints(&vec![1; d])
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * t + c)
    }

    /// Coefficients as machine integers, if they all are.
    pub fn to_integer_coeffs(&self) -> Option<Vec<i64>> {
        self.coeffs
            .iter()
            .map(|c| {
                if c.is_integer() {
                    i64::try_from(c.to_integer()).ok()
                } else {
                    None
                }
            })
            .collect()
    }

    /// True when every coefficient is a non-negative integer.
    pub fn is_nonneg_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer() && !c.is_negative())
    }

    /// Euclidean division; fails when dividing by zero.
    pub fn div_rem(&self, divisor: &RatPoly) -> Result<(RatPoly, RatPoly)> {
        let dd = divisor
            .degree()
            .ok_or_else(|| Error::domain("polynomial division by zero"))?;
        let lead_inv = divisor.coeffs[dd].recip();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((RatPoly::zero(), self.clone()));
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            if rem[k].is_zero() {
                continue;
            }
            let q = &rem[k] * &lead_inv;
            for (j, c) in divisor.coeffs.iter().enumerate() {
                rem[k - dd + j] -= &q * c;
            }
            quot[k - dd] = q;
        }
        Ok((RatPoly::new(quot), RatPoly::new(rem)))
    }

    /// Exact quotient; `None` when the division leaves a remainder.
    pub fn exact_div(&self, divisor: &RatPoly) -> Result<Option<RatPoly>> {
        let (q, r) = self.div_rem(divisor)?;
        Ok(if r.is_zero() { Some(q) } else { None })
    }

    fn zip(&self, other: &RatPoly, f: impl Fn(&Rational, &Rational) -> Rational) -> RatPoly {
        let zero = Rational::zero();
        let len = self.coeffs.len().max(other.coeffs.len());
        RatPoly::new(
            (0..len)
                .map(|k| f(self.coeffs.get(k).unwrap_or(&zero), other.coeffs.get(k).unwrap_or(&zero)))
                .collect(),
        )
    }
}

impl Add for &RatPoly {
    type Output = RatPoly;
    fn add(self, rhs: &RatPoly) -> RatPoly {
        self.zip(rhs, |a, b| a + b)
    }
}

impl Sub for &RatPoly {
    type Output = RatPoly;
    fn sub(self, rhs: &RatPoly) -> RatPoly {
        self.zip(rhs, |a, b| a - b)
    }
}

impl Mul for &RatPoly {
    type Output = RatPoly;
    fn mul(self, rhs: &RatPoly) -> RatPoly {
        if self.is_zero() || rhs.is_zero() {
            return RatPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RatPoly::new(out)
    }
}

impl Neg for &RatPoly {
    type Output = RatPoly;
    fn neg(self) -> RatPoly {
        RatPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for RatPoly {
            type Output = RatPoly;
            fn $method(self, rhs: RatPoly) -> RatPoly {
                (&self).$method(&rhs)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl fmt::Display for RatPoly {
    /// Ascending powers of `t`, e.g. `1 + 2t + t^4`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_in(f, "t")
    }
}

impl RatPoly {
    /// Renders with the given variable name.
    pub fn display_in(&self, var: &str) -> String {
        struct D<'a>(&'a RatPoly, &'a str);
        impl fmt::Display for D<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                self.0.fmt_in(f, self.1)
            }
        }
        D(self, var).to_string()
    }

    fn fmt_in(&self, f: &mut fmt::Formatter<'_>, var: &str) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative();
            if first {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if negative { '-' } else { '+' })?;
            }
            first = false;
            let abs = c.abs();
            let coeff = if abs.is_one() && k > 0 {
                String::new()
            } else {
                format_rational(&abs)
            };
            match k {
                0 => write!(f, "{coeff}")?,
                1 => write!(f, "{coeff}{var}")?,
                _ => write!(f, "{coeff}{var}^{k}")?,
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum CoeffRepr {
    Int(i64),
    Text(String),
}

/// Integral polynomials serialize as plain integer arrays, others as `"p/q"` strings.
impl Serialize for RatPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self.to_integer_coeffs() {
            Some(ints) => ints.serialize(serializer),
            None => self
                .coeffs
                .iter()
                .map(format_rational)
                .collect::<Vec<_>>()
                .serialize(serializer),
        }
    }
}

impl<'de> Deserialize<'de> for RatPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<CoeffRepr>::deserialize(deserializer)?;
        let coeffs = raw
            .into_iter()
            .map(|c| match c {
                CoeffRepr::Int(n) => Ok(Rational::from_integer(BigInt::from(n))),
                CoeffRepr::Text(s) => parse_rational(&s),
            })
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        Ok(RatPoly::new(coeffs))
    }
}

/// The `n`-th cyclotomic polynomial Φ_n, by recursive division
/// Φ_n = (t^n − 1) / ∏_{d|n, d<n} Φ_d.
pub fn cyclotomic_polynomial(n: usize) -> RatPoly {
    assert!(n >= 1, "cyclotomic polynomial of order zero");
    let mut t_n_minus_one = vec![Rational::zero(); n + 1];
    t_n_minus_one[0] = -Rational::one();
    t_n_minus_one[n] = Rational::one();
    let mut poly = RatPoly::new(t_n_minus_one);
    for d in (1..n).filter(|d| n.is_multiple_of(*d)) {
        poly = poly
            .exact_div(&cyclotomic_polynomial(d))
            .expect("nonzero divisor")
            .expect("Φ_d divides t^n − 1");
    }
    poly
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::cyclo::cyclotomic_i64;

    #[test]
    fn small_cyclotomics() {
        assert_eq!(cyclotomic_polynomial(1), RatPoly::from_ints(&[-1, 1]));
        assert_eq!(cyclotomic_polynomial(4), RatPoly::from_ints(&[1, 0, 1]));
        let prod = [1, 2, 4]
            .iter()
            .fold(RatPoly::one(), |acc, &d| &acc * &cyclotomic_polynomial(d));
        assert_eq!(prod, RatPoly::from_ints(&[-1, 0, 0, 0, 1]));
    }

    #[test]
    fn recursive_division_matches_mobius_product() {
        for n in 1..=60u32 {
            let fast = RatPoly::from_ints(&cyclotomic_i64(n));
            assert_eq!(cyclotomic_polynomial(n as usize), fast, "n = {n}");
        }
    }

    #[test]
    fn product_expansion() {
        let p = &RatPoly::from_ints(&[1, 1]) * &RatPoly::from_ints(&[1, 1, 1, 1]);
        assert_eq!(p, RatPoly::from_ints(&[1, 2, 2, 2, 1]));
        assert_eq!(p.to_string(), "1 + 2t + 2t^2 + 2t^3 + t^4");
    }

    #[test]
    fn serde_forms() {
        let p = RatPoly::from_ints(&[1, 0, 2]);
        assert_eq!(serde_json::to_string(&p).unwrap(), "[1,0,2]");
        let half = p.scale(&crate::arith::rational::rat(1, 2));
        let json = serde_json::to_string(&half).unwrap();
        assert_eq!(json, r#"["1/2","0","1"]"#);
        assert_eq!(serde_json::from_str::<RatPoly>(&json).unwrap(), half);
    }

    #[test]
    fn division() {
        let a = RatPoly::from_ints(&[1, 2, 2, 2, 1]);
        let b = RatPoly::from_ints(&[1, 1]);
        assert_eq!(a.exact_div(&b).unwrap(), Some(RatPoly::from_ints(&[1, 1, 1, 1])));
        assert_eq!(RatPoly::from_ints(&[1, 0, 1]).exact_div(&b).unwrap(), None);
        assert!(a.div_rem(&RatPoly::zero()).is_err());
    }
}
