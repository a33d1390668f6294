use std::fmt;
use std::ops::{Mul, Sub};

use num_integer::Integer;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith::{CycloScalar, Rational};
use crate::error::{Error, Result};

/// Dense `ℓ×ℓ` matrix over cyclotomic scalars, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquareMatrix {
    dim: usize,
    entries: Vec<CycloScalar>,
}

/// Reduced row echelon form in place; returns the pivot columns.
pub(crate) fn rref(rows: &mut [Vec<CycloScalar>]) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][col].inv().expect("nonzero pivot");
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[col].is_zero() {
                let factor = row[col].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row).skip(col) {
                    *x -= &(&factor * y);
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    pivots
}

/// Basis of `{v : A v = 0}` for a (possibly rectangular) matrix given by rows.
pub(crate) fn kernel(rows: &[Vec<CycloScalar>], ncols: usize) -> Vec<Vec<CycloScalar>> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m);
    (0..ncols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![CycloScalar::zero(); ncols];
            v[free] = CycloScalar::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -&m[r][free];
            }
            v
        })
        .collect()
}

/// Solves `A x = b` for square invertible `A` given by rows.
pub(crate) fn solve(a: &[Vec<CycloScalar>], b: &[CycloScalar]) -> Result<Vec<CycloScalar>> {
    let n = a.len();
    let mut aug: Vec<Vec<CycloScalar>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() != n || pivots.iter().enumerate().any(|(i, &p)| i != p) {
        return Err(Error::domain("singular linear system"));
    }
    Ok(aug.into_iter().map(|mut r| r.pop().unwrap()).collect())
}

impl SquareMatrix {
    pub fn identity(dim: usize) -> Self {
        Self::scalar(dim, CycloScalar::one())
    }

    pub fn scalar(dim: usize, c: CycloScalar) -> Self {
        let mut entries = vec![CycloScalar::zero(); dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = c.clone();
        }
        SquareMatrix { dim, entries }
    }

    pub fn diagonal(diag: Vec<CycloScalar>) -> Self {
        let dim = diag.len();
        let mut m = Self::scalar(dim, CycloScalar::zero());
        for (i, c) in diag.into_iter().enumerate() {
            m.entries[i * dim + i] = c;
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<CycloScalar>>) -> Result<Self> {
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return Err(Error::usage("matrix rows must all have length equal to the row count"));
        }
        Ok(SquareMatrix {
            dim,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| CycloScalar::from_int(x)).collect())
                .collect(),
        )
        .expect("square integer matrix")
    }

    pub fn from_rational_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        Self::from_rows(
            rows.into_iter()
                .map(|r| r.into_iter().map(CycloScalar::from_rational).collect())
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &CycloScalar {
        &self.entries[i * self.dim + j]
    }

    pub fn row(&self, i: usize) -> &[CycloScalar] {
        &self.entries[i * self.dim..(i + 1) * self.dim]
    }

    pub fn rows(&self) -> Vec<Vec<CycloScalar>> {
        (0..self.dim).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn col(&self, j: usize) -> Vec<CycloScalar> {
        (0..self.dim).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let rows = (0..self.dim).map(|j| self.col(j)).collect();
        Self::from_rows(rows).expect("square")
    }

    pub fn conj(&self) -> Self {
        SquareMatrix {
            dim: self.dim,
            entries: self.entries.iter().map(CycloScalar::conj).collect(),
        }
    }

    pub fn scale(&self, c: &CycloScalar) -> Self {
        SquareMatrix {
            dim: self.dim,
            entries: self.entries.iter().map(|x| x * c).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.dim)
    }

    pub fn trace(&self) -> CycloScalar {
        (0..self.dim).fold(CycloScalar::zero(), |acc, i| acc + self.get(i, i))
    }

    /// Matrix–vector product `A v`.
    pub fn apply(&self, v: &[CycloScalar]) -> Vec<CycloScalar> {
        assert_eq!(v.len(), self.dim);
        (0..self.dim)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(CycloScalar::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    pub fn rank(&self) -> usize {
        rref(&mut self.rows()).len()
    }

    pub fn det(&self) -> CycloScalar {
        let n = self.dim;
        let mut m = self.rows();
        let mut det = CycloScalar::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&i| !m[i][col].is_zero()) else {
                return CycloScalar::zero();
            };
            if p != col {
                m.swap(p, col);
                det = -det;
            }
            det *= &m[col][col];
            let inv = m[col][col].inv().expect("nonzero pivot");
            for r in col + 1..n {
                if m[r][col].is_zero() {
                    continue;
                }
                let factor = &m[r][col] * &inv;
                for c in col..n {
                    let delta = &factor * &m[col][c];
                    m[r][c] -= &delta;
                }
            }
        }
        det
    }

    /// Inverse by Gauss–Jordan elimination; singular input is a domain error.
    pub fn inverse(&self) -> Result<Self> {
        let n = self.dim;
        let mut aug: Vec<Vec<CycloScalar>> = (0..n)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.extend((0..n).map(|j| if i == j { CycloScalar::one() } else { CycloScalar::zero() }));
                r
            })
            .collect();
        let pivots = rref(&mut aug);
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::domain("singular matrix has no inverse"));
        }
        Self::from_rows(aug.into_iter().map(|r| r[n..].to_vec()).collect())
    }

    /// Basis of the kernel `{v : A v = 0}`.
    pub fn kernel(&self) -> Vec<Vec<CycloScalar>> {
        kernel(&self.rows(), self.dim)
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::identity(self.dim), |acc, _| &acc * self)
    }

    /// Least common multiple of the conductors of the entries.
    pub fn field_order(&self) -> u32 {
        self.entries.iter().fold(1, |acc, x| acc.lcm(&x.order()))
    }

    /// Canonical hash key once all entries are read in `Q(ζ_n)`.
    pub(crate) fn key_at(&self, n: u32) -> Vec<Rational> {
        self.entries.iter().flat_map(|x| x.key_at(n)).collect()
    }
}

impl Mul for &SquareMatrix {
    type Output = SquareMatrix;
    fn mul(self, rhs: &SquareMatrix) -> SquareMatrix {
        assert_eq!(self.dim, rhs.dim, "matrix dimension mismatch");
        let n = self.dim;
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = CycloScalar::zero();
                for k in 0..n {
                    let a = self.get(i, k);
                    let b = rhs.get(k, j);
                    if !a.is_zero() && !b.is_zero() {
                        acc += &(a * b);
                    }
                }
                entries.push(acc);
            }
        }
        SquareMatrix { dim: n, entries }
    }
}

impl Sub for &SquareMatrix {
    type Output = SquareMatrix;
    fn sub(self, rhs: &SquareMatrix) -> SquareMatrix {
        assert_eq!(self.dim, rhs.dim, "matrix dimension mismatch");
        SquareMatrix {
            dim: self.dim,
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a - b).collect(),
        }
    }
}

impl fmt::Display for SquareMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.dim {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            write!(f, "{}", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl Serialize for SquareMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.rows().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for SquareMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<CycloScalar>>::deserialize(deserializer)?;
        SquareMatrix::from_rows(rows).map_err(D::Error::custom)
    }
}
