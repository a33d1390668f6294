use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::rational::{format_rational, parse_rational, Rational};
use crate::error::{Error, Result};

/// Euler's totient.
pub fn totient(n: u32) -> usize {
    assert!(n >= 1, "totient of zero");
    let mut n = n;
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result as usize
}

fn mobius(n: u32) -> i32 {
    let mut n = n;
    let mut sign = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

/// Integer coefficients of Φ_n (lowest degree first), via Φ_n = ∏_{d|n} (t^d − 1)^{μ(n/d)}.
///
/// Small and cheap; the reduction step of every multiplication uses it.
pub(crate) fn cyclotomic_i64(n: u32) -> Vec<i64> {
    let divisors: Vec<u32> = (1..=n).filter(|d| n.is_multiple_of(*d)).collect();
    let mut poly = vec![1i64];
    for &d in &divisors {
        if mobius(n / d) == 1 {
            // multiply by t^d - 1
            let mut next = vec![0i64; poly.len() + d as usize];
            for (k, &c) in poly.iter().enumerate() {
                next[k + d as usize] += c;
                next[k] -= c;
            }
            poly = next;
        }
    }
    for &d in &divisors {
        if mobius(n / d) == -1 {
            // divide by t^d - 1: p[k] = q[k-d] - q[k]
            let d = d as usize;
            let qlen = poly.len() - d;
            let mut q = vec![0i64; qlen];
            for k in 0..qlen {
                let prev = if k >= d { q[k - d] } else { 0 };
                q[k] = prev - poly[k];
            }
            poly = q;
        }
    }
    poly
}

/// Reduces a power-basis vector modulo Φ_n, returning exactly φ(n) coefficients.
fn reduce_mod_phi(mut v: Vec<Rational>, n: u32) -> Vec<Rational> {
    let phi = totient(n);
    if v.len() > phi {
        let modulus = cyclotomic_i64(n);
        for k in (phi..v.len()).rev() {
            if v[k].is_zero() {
                continue;
            }
            let lead = std::mem::replace(&mut v[k], Rational::zero());
            for (j, &c) in modulus.iter().enumerate().take(phi) {
                if c != 0 {
                    let delta = &lead * Rational::from_integer(BigInt::from(c));
                    v[k - phi + j] -= delta;
                }
            }
        }
    }
    v.resize(phi, Rational::zero());
    v
}

/// An exact element of the cyclotomic field `Q(ζ_n)`.
///
/// Stored on the power basis `1, ζ, …, ζ^{φ(n)−1}` with `ζ = exp(2πi/n)`.
/// Binary operations embed both operands into `Q(ζ_lcm)` first. Values that
/// turn out to be rational are demoted to order 1, so the `order` of a result
/// is a conductor multiple rather than the minimal conductor.
#[derive(Clone, Debug)]
pub struct CycloScalar {
    order: u32,
    coeffs: Vec<Rational>,
}

impl CycloScalar {
    pub fn zero() -> Self {
        Self::from_rational(Rational::zero())
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(n)))
    }

    pub fn from_rational(q: Rational) -> Self {
        CycloScalar {
            order: 1,
            coeffs: vec![q],
        }
    }

    /// Builds an element from power-basis coefficients; `coeffs` must have length φ(order).
    pub fn from_coeffs(order: u32, coeffs: Vec<Rational>) -> Result<Self> {
        if order == 0 {
            return Err(Error::usage("cyclotomic order must be positive"));
        }
        if coeffs.len() != totient(order) {
            return Err(Error::usage(format!(
                "Q(ζ_{order}) needs {} coefficients, got {}",
                totient(order),
                coeffs.len()
            )));
        }
        Ok(CycloScalar { order, coeffs }.normalized())
    }

    /// The primitive root ζ_n = exp(2πi/n).
    pub fn zeta(n: u32) -> Self {
        Self::zeta_pow(n, 1)
    }

    /// ζ_n^k for any integer k.
    pub fn zeta_pow(n: u32, k: i64) -> Self {
        assert!(n >= 1, "zeta of order zero");
        let k = k.rem_euclid(n as i64) as usize;
        let mut v = vec![Rational::zero(); k.max(totient(n) - 1) + 1];
        v[k] = Rational::one();
        CycloScalar {
            order: n,
            coeffs: reduce_mod_phi(v, n),
        }
        .normalized()
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.as_rational().is_some_and(One::is_one)
    }

    /// The rational value, if this element lies in `Q`.
    pub fn as_rational(&self) -> Option<&Rational> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    fn normalized(mut self) -> Self {
        if self.order > 1 && self.coeffs[1..].iter().all(Zero::is_zero) {
            self.coeffs.truncate(1);
            self.order = 1;
        }
        self
    }

    /// Embeds into `Q(ζ_n)`; `n` must be a multiple of the current order.
    pub fn embed(&self, n: u32) -> Result<Self> {
        if n == 0 || !n.is_multiple_of(self.order) {
            return Err(Error::usage(format!(
                "cannot embed Q(ζ_{}) into Q(ζ_{n})",
                self.order
            )));
        }
        Ok(self.embed_unchecked(n))
    }

    fn embed_unchecked(&self, n: u32) -> Self {
        if n == self.order {
            return self.clone();
        }
        let step = (n / self.order) as usize;
        let mut v = vec![Rational::zero(); ((self.coeffs.len() - 1) * step).max(totient(n) - 1) + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            v[k * step] = c.clone();
        }
        CycloScalar {
            order: n,
            coeffs: reduce_mod_phi(v, n),
        }
    }

    /// Power-basis coefficients after embedding into `Q(ζ_n)`; a canonical key for hashing.
    pub fn key_at(&self, n: u32) -> Vec<Rational> {
        debug_assert!(n.is_multiple_of(self.order));
        self.embed_unchecked(n).coeffs
    }

    fn promote(a: &Self, b: &Self) -> (Self, Self) {
        let n = a.order.lcm(&b.order);
        (a.embed_unchecked(n), b.embed_unchecked(n))
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&Rational, &Rational) -> Rational) -> Self {
        if self.order == other.order {
            let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(x, y)| f(x, y)).collect();
            return CycloScalar {
                order: self.order,
                coeffs,
            }
            .normalized();
        }
        let (a, b) = Self::promote(self, other);
        a.zip_with(&b, f)
    }

    pub fn scale(&self, q: &Rational) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        CycloScalar {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    fn mul_ref(&self, other: &Self) -> Self {
        if let Some(q) = other.as_rational() {
            return self.scale(q);
        }
        if let Some(q) = self.as_rational() {
            return other.scale(q);
        }
        if self.order != other.order {
            let (a, b) = Self::promote(self, other);
            return a.mul_ref(&b);
        }
        let len = self.coeffs.len();
        let mut v = vec![Rational::zero(); 2 * len - 1];
        for (i, x) in self.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in other.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    v[i + j] += x * y;
                }
            }
        }
        CycloScalar {
            order: self.order,
            coeffs: reduce_mod_phi(v, self.order),
        }
        .normalized()
    }

    /// Multiplicative inverse; fails on zero.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::domain("inverse of zero"));
        }
        if let Some(q) = self.as_rational() {
            return Ok(Self::from_rational(q.recip()));
        }
        // Solve (multiplication-by-self) x = 1 on the power basis.
        let n = self.order;
        let phi = self.coeffs.len();
        let columns: Vec<Vec<Rational>> = (0..phi)
            .map(|j| self.mul_ref(&Self::zeta_pow(n, j as i64)).embed_unchecked(n).coeffs)
            .collect();
        let mut aug: Vec<Vec<Rational>> = (0..phi)
            .map(|i| {
                let mut row: Vec<Rational> = (0..phi).map(|j| columns[j][i].clone()).collect();
                row.push(if i == 0 { Rational::one() } else { Rational::zero() });
                row
            })
            .collect();
        for col in 0..phi {
            let pivot = (col..phi)
                .find(|&r| !aug[r][col].is_zero())
                .ok_or_else(|| Error::domain("singular multiplication matrix"))?;
            aug.swap(col, pivot);
            let inv = aug[col][col].recip();
            for x in aug[col].iter_mut() {
                *x *= &inv;
            }
            for r in 0..phi {
                if r != col && !aug[r][col].is_zero() {
                    let factor = aug[r][col].clone();
                    for c in col..=phi {
                        let delta = &factor * &aug[col][c];
                        aug[r][c] -= delta;
                    }
                }
            }
        }
        let coeffs = aug.into_iter().map(|mut row| row.pop().unwrap()).collect();
        Ok(CycloScalar { order: n, coeffs }.normalized())
    }

    /// Complex conjugation, the Galois automorphism ζ ↦ ζ^{−1}.
    pub fn conj(&self) -> Self {
        if self.order <= 2 {
            return self.clone();
        }
        let n = self.order as usize;
        let mut v = vec![Rational::zero(); n];
        for (k, c) in self.coeffs.iter().enumerate() {
            v[(n - k) % n] += c;
        }
        CycloScalar {
            order: self.order,
            coeffs: reduce_mod_phi(v, self.order),
        }
        .normalized()
    }

    /// Integer power; negative exponents invert.
    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Self::one();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_ref(&sq);
            }
            e >>= 1;
            if e > 0 {
                sq = sq.mul_ref(&sq);
            }
        }
        Ok(acc)
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul_ref(&other.inv()?))
    }
}

impl PartialEq for CycloScalar {
    fn eq(&self, other: &Self) -> bool {
        match (self.as_rational(), other.as_rational()) {
            (Some(a), Some(b)) => a == b,
            (Some(_), None) | (None, Some(_)) => false,
            (None, None) => {
                if self.order == other.order {
                    self.coeffs == other.coeffs
                } else {
                    let (a, b) = Self::promote(self, other);
                    a.coeffs == b.coeffs
                }
            }
        }
    }
}

impl Eq for CycloScalar {}

impl From<i64> for CycloScalar {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl From<Rational> for CycloScalar {
    fn from(q: Rational) -> Self {
        Self::from_rational(q)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $body:expr) => {
        impl<'a> $trait<&'a CycloScalar> for &'a CycloScalar {
            type Output = CycloScalar;
            fn $method(self, rhs: &'a CycloScalar) -> CycloScalar {
                let f: fn(&CycloScalar, &CycloScalar) -> CycloScalar = $body;
                f(self, rhs)
            }
        }
        impl $trait<CycloScalar> for CycloScalar {
            type Output = CycloScalar;
            fn $method(self, rhs: CycloScalar) -> CycloScalar {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $trait<&'a CycloScalar> for CycloScalar {
            type Output = CycloScalar;
            fn $method(self, rhs: &'a CycloScalar) -> CycloScalar {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| a.zip_with(b, |x, y| x + y));
forward_binop!(Sub, sub, |a, b| a.zip_with(b, |x, y| x - y));
forward_binop!(Mul, mul, |a, b| a.mul_ref(b));

impl AddAssign<&CycloScalar> for CycloScalar {
    fn add_assign(&mut self, rhs: &CycloScalar) {
        if self.order == rhs.order {
            for (x, y) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
                *x += y;
            }
            let me = std::mem::replace(self, CycloScalar::zero());
            *self = me.normalized();
        } else {
            *self = &*self + rhs;
        }
    }
}

impl SubAssign<&CycloScalar> for CycloScalar {
    fn sub_assign(&mut self, rhs: &CycloScalar) {
        if self.order == rhs.order {
            for (x, y) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
                *x -= y;
            }
            let me = std::mem::replace(self, CycloScalar::zero());
            *self = me.normalized();
        } else {
            *self = &*self - rhs;
        }
    }
}

impl MulAssign<&CycloScalar> for CycloScalar {
    fn mul_assign(&mut self, rhs: &CycloScalar) {
        *self = self.mul_ref(rhs);
    }
}

impl Neg for &CycloScalar {
    type Output = CycloScalar;
    fn neg(self) -> CycloScalar {
        CycloScalar {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for CycloScalar {
    type Output = CycloScalar;
    fn neg(self) -> CycloScalar {
        -&self
    }
}

impl fmt::Display for CycloScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(q) = self.as_rational() {
            return write!(f, "{}", format_rational(q));
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative();
            let abs = c.abs();
            if first {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if negative { '-' } else { '+' })?;
            }
            first = false;
            let zeta = match k {
                0 => String::new(),
                1 => format!("z{}", self.order),
                _ => format!("z{}^{}", self.order, k),
            };
            if k == 0 {
                write!(f, "{}", format_rational(&abs))?;
            } else if abs.is_one() {
                write!(f, "{zeta}")?;
            } else {
                write!(f, "{}*{zeta}", format_rational(&abs))?;
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct CycloRepr {
    order: u32,
    coeffs: Vec<String>,
}

impl Serialize for CycloScalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        CycloRepr {
            order: self.order,
            coeffs: self.coeffs.iter().map(format_rational).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for CycloScalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = CycloRepr::deserialize(deserializer)?;
        let coeffs = repr
            .coeffs
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        CycloScalar::from_coeffs(repr.order, coeffs).map_err(D::Error::custom)
    }
}
