use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::monomial::Monomial;
use crate::arith::{format_rational, CycloScalar};
use crate::error::{Error, Result};

/// Which symmetric algebra a polynomial lives in.
///
/// `Contravariant` polynomials are functions on `V` (elements of `S(V*)`,
/// variables `X, Y, …`); `Covariant` ones are elements of `S(V)` (variables
/// `x, y, …`) and act on the former as constant-coefficient differential
/// operators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Space {
    Contravariant,
    Covariant,
}

impl Space {
    pub fn dual(self) -> Space {
        match self {
            Space::Contravariant => Space::Covariant,
            Space::Covariant => Space::Contravariant,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Space::Contravariant => "S(V*)",
            Space::Covariant => "S(V)",
        }
    }

    fn var_name(self, nvars: usize, i: usize) -> String {
        const UPPER: [&str; 4] = ["X", "Y", "Z", "W"];
        const LOWER: [&str; 4] = ["x", "y", "z", "w"];
        match (self, nvars <= 4) {
            (Space::Contravariant, true) => UPPER[i].to_string(),
            (Space::Covariant, true) => LOWER[i].to_string(),
            (Space::Contravariant, false) => format!("X{}", i + 1),
            (Space::Covariant, false) => format!("x{}", i + 1),
        }
    }
}

/// Sparse polynomial with cyclotomic coefficients.
///
/// Terms are kept in a map keyed by [`Monomial`], so iteration is in
/// increasing graded-lex order and zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MPoly {
    space: Space,
    nvars: usize,
    terms: BTreeMap<Monomial, CycloScalar>,
}

impl MPoly {
    pub fn zero(space: Space, nvars: usize) -> Self {
        MPoly {
            space,
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(space: Space, nvars: usize, c: CycloScalar) -> Self {
        Self::term(space, Monomial::one(nvars), c)
    }

    pub fn one(space: Space, nvars: usize) -> Self {
        Self::constant(space, nvars, CycloScalar::one())
    }

    /// The `i`-th coordinate variable.
    pub fn var(space: Space, nvars: usize, i: usize) -> Self {
        Self::term(space, Monomial::var(nvars, i), CycloScalar::one())
    }

    pub fn term(space: Space, m: Monomial, c: CycloScalar) -> Self {
        let nvars = m.nvars();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MPoly { space, nvars, terms }
    }

    /// Builds from `(exponents, coefficient)` pairs, merging repeats.
    pub fn from_terms(
        space: Space,
        nvars: usize,
        terms: impl IntoIterator<Item = (Monomial, CycloScalar)>,
    ) -> Self {
        let mut p = Self::zero(space, nvars);
        for (m, c) in terms {
            assert_eq!(m.nvars(), nvars, "monomial arity mismatch");
            p.add_term(m, &c);
        }
        p
    }

    /// Integer-coefficient convenience constructor.
    pub fn from_int_terms(space: Space, nvars: usize, terms: &[(&[u16], i64)]) -> Self {
        Self::from_terms(
            space,
            nvars,
            terms
                .iter()
                .map(|(e, c)| (Monomial::new(e.to_vec()), CycloScalar::from_int(*c))),
        )
    }

    pub(crate) fn from_map(space: Space, nvars: usize, terms: BTreeMap<Monomial, CycloScalar>) -> Self {
        debug_assert!(terms.values().all(|c| !c.is_zero()));
        MPoly { space, nvars, terms }
    }

    pub(crate) fn map(&self) -> &BTreeMap<Monomial, CycloScalar> {
        &self.terms
    }

    pub fn space(&self) -> Space {
        self.space
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in decreasing monomial order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &CycloScalar)> {
        self.terms.iter().rev()
    }

    pub fn coeff(&self, m: &Monomial) -> CycloScalar {
        self.terms.get(m).cloned().unwrap_or_else(CycloScalar::zero)
    }

    /// Largest monomial and its coefficient.
    pub fn leading_term(&self) -> Option<(&Monomial, &CycloScalar)> {
        self.terms.iter().next_back()
    }

    /// The common degree of all terms, if the polynomial is homogeneous and nonzero.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(Monomial::degree);
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    /// Largest total degree, `None` for zero.
    pub fn max_degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    /// Homogeneous component of degree `d`.
    pub fn component(&self, d: u32) -> MPoly {
        MPoly {
            space: self.space,
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: &CycloScalar) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_compatible(&self, other: &MPoly) -> Result<()> {
        if self.space != other.space {
            return Err(Error::usage(format!(
                "cannot combine polynomials from {} and {}",
                self.space.label(),
                other.space.label()
            )));
        }
        if self.nvars != other.nvars {
            return Err(Error::usage(format!(
                "variable count mismatch: {} vs {}",
                self.nvars, other.nvars
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &MPoly) -> Result<MPoly> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &MPoly) -> Result<MPoly> {
        self.try_add(&other.neg_ref())
    }

    pub fn try_mul(&self, other: &MPoly) -> Result<MPoly> {
        self.check_compatible(other)?;
        let mut out = MPoly::zero(self.space, self.nvars);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                out.add_term(a.mul(b), &(x * y));
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &CycloScalar) -> MPoly {
        if c.is_zero() {
            return MPoly::zero(self.space, self.nvars);
        }
        MPoly {
            space: self.space,
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    fn neg_ref(&self) -> MPoly {
        MPoly {
            space: self.space,
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, x)| (m.clone(), -x)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> MPoly {
        let mut acc = MPoly::one(self.space, self.nvars);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Applies complex conjugation to every coefficient.
    pub fn conj(&self) -> MPoly {
        MPoly {
            space: self.space,
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x.conj())).collect(),
        }
    }

    /// The same coefficients read in the dual algebra (`X_i ↔ x_i`).
    pub fn mirror(&self) -> MPoly {
        MPoly {
            space: self.space.dual(),
            nvars: self.nvars,
            terms: self.terms.clone(),
        }
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> MPoly {
        match self.leading_term() {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.inv().expect("nonzero leading coefficient")),
        }
    }

    /// Scalar `c` with `self = c · other`, if the two are proportional and nonzero.
    pub fn ratio_to(&self, other: &MPoly) -> Option<CycloScalar> {
        if self.space != other.space || self.is_zero() || other.is_zero() {
            return None;
        }
        let (m, b) = other.leading_term()?;
        let c = self.coeff(m).checked_div(b).ok()?;
        (other.scale(&c) == *self).then_some(c)
    }

    /// Evaluates at a point of `V` (or `V*` for covariant polynomials).
    pub fn eval(&self, point: &[CycloScalar]) -> CycloScalar {
        assert_eq!(point.len(), self.nvars);
        let mut acc = CycloScalar::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (x, &e) in point.iter().zip(m.exps()) {
                for _ in 0..e {
                    v *= x;
                }
            }
            acc += &v;
        }
        acc
    }
}

macro_rules! mpoly_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        /// Panics on mismatched spaces or arity; use the `try_` form to get an error instead.
        impl<'a> $trait<&'a MPoly> for &'a MPoly {
            type Output = MPoly;
            fn $method(self, rhs: &'a MPoly) -> MPoly {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $trait<MPoly> for MPoly {
            type Output = MPoly;
            fn $method(self, rhs: MPoly) -> MPoly {
                (&self).$method(&rhs)
            }
        }
    };
}

mpoly_binop!(Add, add, try_add);
mpoly_binop!(Sub, sub, try_sub);
mpoly_binop!(Mul, mul, try_mul);

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        self.neg_ref()
    }
}

impl Neg for MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        self.neg_ref()
    }
}

impl fmt::Display for MPoly {
    /// Expanded form in decreasing monomial order, e.g. `X^3Y - XY^3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms().enumerate() {
            let mono: String = m
                .exps()
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(v, &e)| {
                    let name = self.space.var_name(self.nvars, v);
                    let sep = if self.nvars > 4 { "*" } else { "" };
                    if e == 1 {
                        format!("{name}{sep}")
                    } else {
                        format!("{name}^{e}{sep}")
                    }
                })
                .collect::<String>()
                .trim_end_matches('*')
                .to_string();
            let (negative, body) = match c.as_rational() {
                Some(q) => {
                    let abs = q.abs();
                    let coeff = if abs.is_one() && !mono.is_empty() {
                        String::new()
                    } else if abs.is_integer() || mono.is_empty() {
                        format_rational(&abs)
                    } else {
                        format!("({})", format_rational(&abs))
                    };
                    (q.is_negative(), coeff)
                }
                None => (false, format!("({c})")),
            };
            if i == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if negative { '-' } else { '+' })?;
            }
            write!(f, "{body}{mono}")?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    exp: Vec<u16>,
    coeff: CycloScalar,
}

#[derive(Serialize, Deserialize)]
struct MPolyRepr {
    space: String,
    vars: usize,
    terms: Vec<TermRepr>,
}

impl Serialize for MPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        MPolyRepr {
            space: self.space.label().to_string(),
            vars: self.nvars,
            terms: self
                .terms()
                .map(|(m, c)| TermRepr {
                    exp: m.exps().to_vec(),
                    coeff: c.clone(),
                })
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for MPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = MPolyRepr::deserialize(deserializer)?;
        let space = match repr.space.as_str() {
            "S(V*)" => Space::Contravariant,
            "S(V)" => Space::Covariant,
            other => return Err(D::Error::custom(format!("unknown space {other:?}"))),
        };
        if repr.terms.iter().any(|t| t.exp.len() != repr.vars) {
            return Err(D::Error::custom("exponent vector length differs from vars"));
        }
        Ok(MPoly::from_terms(
            space,
            repr.vars,
            repr.terms.into_iter().map(|t| (Monomial::new(t.exp), t.coeff)),
        ))
    }
}
