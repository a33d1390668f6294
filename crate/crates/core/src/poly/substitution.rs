use super::matrix::SquareMatrix;
use super::monomial::Monomial;
use super::mpoly::{MPoly, Space};
use crate::arith::CycloScalar;
use crate::error::{Error, Result};

/// A linear change of variables `v_k ↦ L_k`, applied to whole polynomials.
///
/// This is how group elements act: on `S(V*)` by `(g·P)(v) = P(g⁻¹v)`, which
/// sends `X_k` to the `k`-th row of `g⁻¹`, and on `S(V)` by linear extension of
/// `v ↦ gv`, which sends `x_j` to the `j`-th column of `g`.
#[derive(Clone, Debug)]
pub struct Substitution {
    space: Space,
    forms: Vec<MPoly>,
}

fn linear_form(space: Space, coeffs: &[CycloScalar]) -> MPoly {
    let n = coeffs.len();
    MPoly::from_terms(
        space,
        n,
        coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| (Monomial::var(n, i), c.clone())),
    )
}

impl Substitution {
    /// Contragredient action of `g` on `S(V*)`, given `g⁻¹`.
    pub fn contragredient(g_inv: &SquareMatrix) -> Self {
        Substitution {
            space: Space::Contravariant,
            forms: (0..g_inv.dim())
                .map(|k| linear_form(Space::Contravariant, g_inv.row(k)))
                .collect(),
        }
    }

    /// Natural action of `g` on `S(V)`.
    pub fn covariant(g: &SquareMatrix) -> Self {
        Substitution {
            space: Space::Covariant,
            forms: (0..g.dim())
                .map(|j| linear_form(Space::Covariant, &g.col(j)))
                .collect(),
        }
    }

    /// The action of `g` on `space`, given both `g` and `g⁻¹`.
    pub fn for_element(g: &SquareMatrix, g_inv: &SquareMatrix, space: Space) -> Self {
        match space {
            Space::Contravariant => Self::contragredient(g_inv),
            Space::Covariant => Self::covariant(g),
        }
    }

    pub fn space(&self) -> Space {
        self.space
    }

    pub fn apply(&self, p: &MPoly) -> MPoly {
        assert_eq!(p.space(), self.space, "substitution applied in the wrong space");
        assert_eq!(p.nvars(), self.forms.len(), "substitution arity mismatch");
        let n = self.forms.len();
        if let Some(perm) = self.monomial_map() {
            // each variable goes to a scalar multiple of one variable
            let mut out = MPoly::zero(self.space, n);
            for (m, c) in p.terms() {
                let mut exps = vec![0u16; n];
                let mut coeff = c.clone();
                for (k, &e) in m.exps().iter().enumerate() {
                    if e > 0 {
                        let (target, scalar) = &perm[k];
                        exps[*target] += e;
                        coeff *= &scalar.pow(e as i64).expect("nonnegative power");
                    }
                }
                out.add_term(Monomial::new(exps), &coeff);
            }
            return out;
        }
        let mut powers: Vec<Vec<MPoly>> = self
            .forms
            .iter()
            .map(|_| vec![MPoly::one(self.space, n)])
            .collect();
        let mut out = MPoly::zero(self.space, n);
        for (m, c) in p.terms() {
            let mut acc = MPoly::constant(self.space, n, c.clone());
            for (k, &e) in m.exps().iter().enumerate() {
                let e = e as usize;
                while powers[k].len() <= e {
                    let next = powers[k].last().unwrap() * &self.forms[k];
                    powers[k].push(next);
                }
                if e > 0 {
                    acc = &acc * &powers[k][e];
                }
            }
            for (mm, cc) in acc.map() {
                out.add_term(mm.clone(), cc);
            }
        }
        out
    }

    fn monomial_map(&self) -> Option<Vec<(usize, CycloScalar)>> {
        self.forms
            .iter()
            .map(|f| {
                if f.num_terms() != 1 {
                    return None;
                }
                let (m, c) = f.leading_term()?;
                let target = m.exps().iter().position(|&e| e == 1)?;
                Some((target, c.clone()))
            })
            .collect()
    }
}

/// Applies a group element to a polynomial: contragrediently on `S(V*)`,
/// naturally on `S(V)`. Singular matrices are rejected.
pub fn act(g: &SquareMatrix, p: &MPoly) -> Result<MPoly> {
    if g.dim() != p.nvars() {
        return Err(Error::usage(format!(
            "matrix of size {} cannot act on polynomials in {} variables",
            g.dim(),
            p.nvars()
        )));
    }
    let g_inv = g.inverse()?;
    Ok(Substitution::for_element(g, &g_inv, p.space()).apply(p))
}
