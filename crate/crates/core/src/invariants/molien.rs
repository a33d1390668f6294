use std::collections::HashMap;

use num_traits::{One, Zero};

use crate::arith::{CycloScalar, RatPoly, RatSeries, Rational};
use crate::error::{Error, Result};
use crate::group::ReflectionGroup;

/// `(1/|G|) Σ_g 1/det(1 - t·g)` through `t^trunc`.
///
/// Each term is expanded from the power traces `p_i = tr(g^i)` through
/// `h_d = (1/d) Σ_{i≤d} p_i h_{d-i}`; elements sharing all power traces are
/// expanded once.
pub fn molien(g: &ReflectionGroup, trunc: usize) -> RatSeries {
    let mut buckets: HashMap<Vec<Vec<Rational>>, (usize, Vec<CycloScalar>)> = HashMap::new();
    for i in 0..g.order() {
        let mut traces = Vec::with_capacity(trunc);
        let mut cur = i;
        for _ in 0..trunc {
            traces.push(g.element(cur).trace());
            cur = g.mul_index(cur, i);
        }
        let key = traces.iter().map(|t| t.key_at(g.field_order())).collect();
        buckets.entry(key).or_insert((0, traces)).0 += 1;
    }
    let mut total = vec![CycloScalar::zero(); trunc + 1];
    let mut keys: Vec<_> = buckets.into_values().collect();
    keys.sort_by_key(|k| std::cmp::Reverse(k.0));
    for (count, p) in keys {
        let mut h = vec![CycloScalar::one()];
        for d in 1..=trunc {
            let mut acc = CycloScalar::zero();
            for i in 1..=d {
                acc += &(&p[i - 1] * &h[d - i]);
            }
            h.push(acc.scale(&Rational::new(1.into(), (d as i64).into())));
        }
        let w = CycloScalar::from_int(count as i64);
        for (t, x) in total.iter_mut().zip(&h) {
            *t += &(x * &w);
        }
    }
    let order = Rational::from_integer((g.order() as i64).into());
    RatSeries::new(
        total
            .into_iter()
            .map(|c| c.as_rational().cloned().expect("Molien coefficients are rational") / &order)
            .collect(),
        trunc,
    )
}

/// Degrees `d_i` with Molien series `∏ 1/(1 - t^{d_i})`, ascending.
///
/// The series is computed through `t^{N+1}` and peeled by multiplying with
/// `(1 - t^k)` at the lowest surviving positive power `k`. Groups not
/// generated by reflections fail the consistency checks.
pub fn invariant_degrees(g: &ReflectionGroup) -> Result<Vec<u32>> {
    let n = g.num_reflections();
    let trunc = n + 1;
    let mut s = molien(g, trunc);
    let mut degrees = Vec::new();
    while degrees.len() < g.dim() {
        let Some(k) = (1..=trunc).find(|&k| !s.coeff(k).unwrap().is_zero()) else {
            break;
        };
        let c = s.coeff(k).unwrap().clone();
        if !c.is_integer() || c < Rational::zero() {
            return Err(Error::domain(format!(
                "Molien series of {} does not factor into (1 - t^d) terms",
                g.name()
            )));
        }
        let mult = c.to_integer().try_into().unwrap_or(usize::MAX);
        for _ in 0..mult.min(g.dim() - degrees.len()) {
            let mut factor = vec![Rational::zero(); k + 1];
            factor[0] = Rational::one();
            factor[k] = -Rational::one();
            s = s.mul_poly(&RatPoly::new(factor));
            degrees.push(k as u32);
        }
    }
    let product: usize = degrees.iter().map(|&d| d as usize).product();
    let shift: usize = degrees.iter().map(|&d| d as usize - 1).sum();
    if degrees.len() != g.dim() || !s.is_one() || product != g.order() || shift != n {
        return Err(Error::domain(format!(
            "{} is not a reflection group: Molien series gives degrees {degrees:?}",
            g.name()
        )));
    }
    Ok(degrees)
}

/// `∏ (1 + t + … + t^{d_i - 1})`.
pub fn poincare_from_degrees(degrees: &[u32]) -> RatPoly {
    degrees
        .iter()
        .fold(RatPoly::one(), |acc, &d| &acc * &RatPoly::q_integer(d as usize))
}
