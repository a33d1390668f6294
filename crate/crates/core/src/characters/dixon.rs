//! Character tables by the Dixon–Schneider method.
//!
//! The class sums act on the centre of the group algebra through the
//! structure constants `a_{jik}`; the vectors of central character values
//! `ω(K_k)` are their common eigenvectors. Everything is first done modulo a
//! prime `p ≡ 1 (mod exponent)`, and each character value is then lifted from
//! its eigenvalue multiplicities to an exact cyclotomic number.

use super::classes::{exponent, ClassData};
use crate::arith::CycloScalar;
use crate::error::{Error, Result};
use crate::group::ReflectionGroup;

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// Smallest prime `p ≡ 1 (mod e)` with `p > bound`.
fn choose_prime(e: u64, bound: u64) -> u64 {
    let mut p = (bound / e + 1) * e + 1;
    while !is_prime(p) {
        p += e;
    }
    p
}

/// An element of multiplicative order exactly `e` in `F_p`.
fn root_of_unity(e: u64, p: u64) -> u64 {
    let factors: Vec<u64> = (2..=e).filter(|&q| e.is_multiple_of(q) && is_prime(q)).collect();
    (2..p)
        .map(|g| pow_mod(g, (p - 1) / e, p))
        .find(|&z| factors.iter().all(|&q| pow_mod(z, e / q, p) != 1))
        .expect("p ≡ 1 mod e")
}

/// Reduced row echelon form mod `p`; returns pivot columns.
fn rref_mod(rows: &mut Vec<Vec<u64>>, p: u64) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(piv) = (r..rows.len()).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(r, piv);
        let inv = inv_mod(rows[r][col], p);
        for x in rows[r].iter_mut() {
            *x = *x * inv % p;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && row[col] != 0 {
                let f = row[col];
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x = (*x + p - f * y % p) % p;
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

fn kernel_mod(rows: &[Vec<u64>], ncols: usize, p: u64) -> Vec<Vec<u64>> {
    let mut m = rows.to_vec();
    let pivots = rref_mod(&mut m, p);
    (0..ncols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![0; ncols];
            v[free] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = (p - m[r][free]) % p;
            }
            v
        })
        .collect()
}

/// Characteristic polynomial mod `p` by Faddeev–LeVerrier, lowest degree first.
fn charpoly_mod(a: &[Vec<u64>], p: u64) -> Vec<u64> {
    let n = a.len();
    let mut c = vec![0u64; n + 1];
    c[n] = 1;
    let mut m = vec![vec![0u64; n]; n];
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        let mut next = vec![vec![0u64; n]; n];
        for i in 0..n {
            for l in 0..n {
                if a[i][l] == 0 {
                    continue;
                }
                for j in 0..n {
                    next[i][j] = (next[i][j] + a[i][l] * m[l][j]) % p;
                }
            }
            next[i][i] = (next[i][i] + c[n - k + 1]) % p;
        }
        m = next;
        let mut tr = 0;
        for i in 0..n {
            for l in 0..n {
                tr = (tr + a[i][l] * m[l][i]) % p;
            }
        }
        c[n - k] = (p - tr * inv_mod(k as u64, p) % p) % p;
    }
    c
}

struct Structure<'a> {
    g: &'a ReflectionGroup,
    classes: &'a ClassData,
    p: u64,
}

impl Structure<'_> {
    /// `A_j[i][k] = #{x ∈ K_j : x⁻¹ z_k ∈ K_i}`, so that `A_j ω = ω(K_j) ω`.
    fn class_matrix(&self, j: usize) -> Vec<Vec<u64>> {
        let r = self.classes.len();
        let mut a = vec![vec![0u64; r]; r];
        for &x in &self.classes.classes[j].elements {
            let xi = self.g.inverse_index(x);
            for (k, cls) in self.classes.classes.iter().enumerate() {
                let i = self.classes.class_of[self.g.mul_index(xi, cls.representative)];
                a[i][k] += 1;
            }
        }
        for row in &mut a {
            for x in row.iter_mut() {
                *x %= self.p;
            }
        }
        a
    }
}

/// Splits `F_p^r` into the common eigenlines of all class matrices.
fn eigenlines(s: &Structure<'_>) -> Result<Vec<Vec<u64>>> {
    let r = s.classes.len();
    let p = s.p;
    let identity: Vec<Vec<u64>> = (0..r).map(|i| (0..r).map(|j| u64::from(i == j)).collect()).collect();
    let mut spaces: Vec<Vec<Vec<u64>>> = vec![identity];
    for j in 1..r {
        if spaces.iter().all(|b| b.len() == 1) {
            break;
        }
        let a = s.class_matrix(j);
        let mut next = Vec::new();
        for mut basis in spaces {
            if basis.len() == 1 {
                next.push(basis);
                continue;
            }
            let pivots = rref_mod(&mut basis, p);
            let m = basis.len();
            // restricted[s][t] = (A b_t)[pivot_s]
            let images: Vec<Vec<u64>> = basis
                .iter()
                .map(|b| {
                    (0..r)
                        .map(|i| (0..r).fold(0, |acc, k| (acc + a[i][k] * b[k]) % p))
                        .collect()
                })
                .collect();
            let restricted: Vec<Vec<u64>> = (0..m)
                .map(|si| (0..m).map(|t| images[t][pivots[si]]).collect())
                .collect();
            let cp = charpoly_mod(&restricted, p);
            let mut found = 0;
            for lambda in 0..p {
                let v = cp.iter().rev().fold(0, |acc, &c| (acc * lambda + c) % p);
                if v != 0 {
                    continue;
                }
                let shifted: Vec<Vec<u64>> = (0..m)
                    .map(|si| {
                        (0..m)
                            .map(|t| {
                                let x = restricted[si][t];
                                if si == t {
                                    (x + p - lambda) % p
                                } else {
                                    x
                                }
                            })
                            .collect()
                    })
                    .collect();
                let ker = kernel_mod(&shifted, m, p);
                found += ker.len();
                let sub: Vec<Vec<u64>> = ker
                    .iter()
                    .map(|u| {
                        (0..r)
                            .map(|k| (0..m).fold(0, |acc, t| (acc + u[t] * basis[t][k]) % p))
                            .collect()
                    })
                    .collect();
                next.push(sub);
            }
            if found != m {
                return Err(Error::verification("class matrix is not diagonalisable mod p"));
            }
        }
        spaces = next;
    }
    if spaces.len() != r || spaces.iter().any(|b| b.len() != 1) {
        return Err(Error::verification("class sums do not separate the characters"));
    }
    Ok(spaces.into_iter().map(|mut b| b.pop().unwrap()).collect())
}

/// Rows are irreducible characters, columns are classes, with the trivial character first.
pub(crate) fn dixon_schneider(g: &ReflectionGroup, classes: &ClassData) -> Result<Vec<Vec<CycloScalar>>> {
    let order = g.order() as u64;
    let e = exponent(g, classes) as u64;
    let p = choose_prime(e, 2 * order);
    let z = root_of_unity(e, p);
    let s = Structure { g, classes, p };
    let lines = eigenlines(&s)?;
    let r = classes.len();
    let inv_class: Vec<usize> = classes
        .classes
        .iter()
        .map(|c| classes.class_of[g.inverse_index(c.representative)])
        .collect();
    // power_class[k][j] = class of z_k^j
    let power_class: Vec<Vec<usize>> = classes
        .classes
        .iter()
        .map(|c| {
            let mut out = Vec::with_capacity(e as usize);
            let mut cur = 0;
            for _ in 0..e {
                out.push(classes.class_of[cur]);
                cur = g.mul_index(cur, c.representative);
            }
            out
        })
        .collect();
    let zeta_pows: Vec<CycloScalar> = (0..e).map(|l| CycloScalar::zeta_pow(e as u32, l as i64)).collect();
    let mut table = Vec::with_capacity(r);
    for w in lines {
        let w0 = inv_mod(w[0], p);
        let omega: Vec<u64> = w.iter().map(|x| x * w0 % p).collect();
        let mut sum = 0;
        for k in 0..r {
            let term = omega[k] * omega[inv_class[k]] % p * inv_mod(classes.classes[k].size as u64, p) % p;
            sum = (sum + term) % p;
        }
        let d_sq = order % p * inv_mod(sum, p) % p;
        let degree = (1..=order)
            .take_while(|d| d * d <= order)
            .find(|d| d * d % p == d_sq)
            .ok_or_else(|| Error::verification("no integer character degree mod p"))?;
        let modp: Vec<u64> = (0..r)
            .map(|k| omega[k] * degree % p * inv_mod(classes.classes[k].size as u64, p) % p)
            .collect();
        let inv_e = inv_mod(e, p);
        let mut row = Vec::with_capacity(r);
        for k in 0..r {
            let mut value = CycloScalar::zero();
            for l in 0..e {
                let mut acc = 0;
                for j in 0..e {
                    let chi = modp[power_class[k][j as usize]];
                    let exp = (e - (j * l) % e) % e;
                    acc = (acc + chi * pow_mod(z, exp, p)) % p;
                }
                let mult = acc * inv_e % p;
                if mult > degree {
                    return Err(Error::verification("eigenvalue multiplicity out of range"));
                }
                if mult > 0 {
                    value += &zeta_pows[l as usize].scale(&crate::arith::int(mult as i64));
                }
            }
            row.push(value);
        }
        table.push(row);
    }
    Ok(table)
}
