use std::cmp::Ordering;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

/// Exponent vector `(e_1, …, e_ℓ)`.
///
/// Ordered graded-lexicographically: higher total degree first decides, then
/// the exponent of the first variable, then the second, and so on. So
/// `X^2 > XY > Y^2 > X > Y > 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Monomial(Vec<u16>);

impl Monomial {
    pub fn new(exps: Vec<u16>) -> Self {
        Monomial(exps)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exps(&self) -> &[u16] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other` if `other` divides `self`.
    pub fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Monomial)
    }

    /// `∏ e_i!`, the pairing of a monomial with itself.
    pub fn factorial_weight(&self) -> BigInt {
        self.0
            .iter()
            .flat_map(|&e| 1..=u32::from(e))
            .fold(BigInt::from(1), |acc, k| acc * k)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All monomials of degree `d` in `nvars` variables, in decreasing order.
pub fn monomials_of_degree(nvars: usize, d: u32) -> Vec<Monomial> {
    fn rec(nvars: usize, d: u32, prefix: &mut Vec<u16>, out: &mut Vec<Monomial>) {
        if prefix.len() + 1 == nvars {
            prefix.push(d as u16);
            out.push(Monomial(prefix.clone()));
            prefix.pop();
            return;
        }
        for e in (0..=d).rev() {
            prefix.push(e as u16);
            rec(nvars, d - e, prefix, out);
            prefix.pop();
        }
    }
    if nvars == 0 {
        return if d == 0 { vec![Monomial(Vec::new())] } else { Vec::new() };
    }
    let mut out = Vec::new();
    rec(nvars, d, &mut Vec::with_capacity(nvars), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graded_lex_order() {
        let m = |v: &[u16]| Monomial::new(v.to_vec());
        assert!(m(&[2, 0]) > m(&[1, 1]));
        assert!(m(&[1, 1]) > m(&[0, 2]));
        assert!(m(&[0, 2]) > m(&[1, 0]));
        assert!(m(&[1, 0]) > m(&[0, 1]));
        assert!(m(&[0, 1]) > m(&[0, 0]));
    }

    #[test]
    fn enumeration_is_sorted_and_complete() {
        for n in 1..=4 {
            for d in 0..=6 {
                let ms = monomials_of_degree(n, d);
                assert!(ms.windows(2).all(|w| w[0] > w[1]));
                assert!(ms.iter().all(|m| m.degree() == d));
                // stars and bars
                let expected = (1..n as u64).fold(1u64, |acc, k| acc * (d as u64 + k) / k);
                assert_eq!(ms.len() as u64, expected);
            }
        }
    }
}
