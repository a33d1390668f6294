use num_bigint::BigInt;

use super::monomial::Monomial;
use super::mpoly::{MPoly, Space};
use crate::arith::{CycloScalar, Rational};
use crate::error::{Error, Result};

fn falling_factorial(n: u16, k: u16) -> BigInt {
    ((n - k + 1)..=n).fold(BigInt::from(1), |acc, x| acc * BigInt::from(x))
}

fn check_tags(a: &MPoly, p: &MPoly) -> Result<()> {
    if a.space() != Space::Covariant || p.space() != Space::Contravariant {
        return Err(Error::usage(format!(
            "differential operators need an operator in S(V) and an argument in S(V*), got {} and {}",
            a.space().label(),
            p.space().label()
        )));
    }
    if a.nvars() != p.nvars() {
        return Err(Error::usage("variable count mismatch"));
    }
    Ok(())
}

/// `D_a(P)`: the covariant polynomial `a` acting on `P` with `x_i ↦ ∂/∂X_i`.
pub fn diff_apply(a: &MPoly, p: &MPoly) -> Result<MPoly> {
    check_tags(a, p)?;
    let mut out = MPoly::zero(Space::Contravariant, p.nvars());
    for (alpha, ca) in a.terms() {
        for (beta, cp) in p.terms() {
            let Some(rest) = beta.checked_div(alpha) else {
                continue;
            };
            let weight = alpha
                .exps()
                .iter()
                .zip(beta.exps())
                .fold(BigInt::from(1), |acc, (&k, &n)| acc * falling_factorial(n, k));
            let c = &(ca * cp) * &CycloScalar::from_rational(Rational::from_integer(weight));
            out.add_term(rest, &c);
        }
    }
    Ok(out)
}

/// The apolar pairing `[a, P] = D_a(P)(0)`.
///
/// Only equal monomials meet in the constant term, each contributing `∏ e_i!`.
pub fn pairing(a: &MPoly, p: &MPoly) -> Result<CycloScalar> {
    check_tags(a, p)?;
    let mut acc = CycloScalar::zero();
    for (m, ca) in a.map() {
        let cp = p.coeff(m);
        if !cp.is_zero() {
            let w = m.weight_scalar();
            acc += &(&(ca * &cp) * &w);
        }
    }
    Ok(acc)
}

impl Monomial {
    /// The pairing weight as an exact scalar.
    pub(crate) fn weight_scalar(&self) -> CycloScalar {
        CycloScalar::from_rational(Rational::from_integer(self.factorial_weight()))
    }
}
