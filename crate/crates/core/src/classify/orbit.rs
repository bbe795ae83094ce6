//! Forward orbits of critical values, split into preperiodic and wandering.
//!
//! Wandering is certified with a height bound h(A(x)) >= d h(x) - log K,
//! where K comes from the identities a1 F + b1 G = M X^(2d-1) and
//! a2 F + b2 G = M Y^(2d-1) in the homogenized numerator and denominator.
//! Once h(x) > log K / (d - 1) the heights increase forever.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::algebra::field::{ln_abs, Q};
use crate::algebra::linalg::solve;
use crate::algebra::place::{critical_values, image_place, Place};
use crate::algebra::ratmap::RatMap;
use crate::error::{Error, Result};

/// Maximum number of distinct places explored before giving up.
pub const ORBIT_CAP: usize = 64;

#[derive(Clone, Debug, Default)]
pub struct PostcriticalSplit {
    /// Forward-invariant set of preperiodic postcritical places.
    pub preperiodic: BTreeSet<Place>,
    /// Places certified to have infinite forward orbit.
    pub wandering: BTreeSet<Place>,
}

/// log K for the height inequality of a map of degree d >= 2.
pub fn height_constant(a: &RatMap) -> f64 {
    let d = a.degree();
    let (u, v) = (a.num(), a.den());
    // Unknowns: a_0..a_{d-1}, b_0..b_{d-1}; equations on coefficients 0..2d-1.
    let mut m = vec![vec![Q::zero(); 2 * d]; 2 * d];
    for i in 0..d {
        for (j, c) in u.coeffs().iter().enumerate() {
            m[i + j][i] = c.clone();
        }
        for (j, c) in v.coeffs().iter().enumerate() {
            m[i + j][d + i] = c.clone();
        }
    }
    let mut sols = Vec::new();
    for target in [2 * d - 1, 0] {
        let mut rhs = vec![Q::zero(); 2 * d];
        rhs[target] = Q::from_integer(1.into());
        sols.push(solve(&m, &rhs).expect("numerator and denominator are coprime"));
    }
    let denom = sols
        .iter()
        .flatten()
        .fold(BigInt::from(1), |l, c| num_integer::Integer::lcm(&l, c.denom()));
    let k = sols
        .iter()
        .map(|s| s.iter().fold(BigInt::zero(), |acc, c| acc + (c * Q::from_integer(denom.clone())).to_integer().abs()))
        .max()
        .unwrap();
    ln_abs(&k)
}

fn binom_ln(n: usize, k: usize) -> f64 {
    (0..k).map(|i| ((n - i) as f64).ln() - ((i + 1) as f64).ln()).sum()
}

/// Lower bound for the Weil height of the points of a place.
pub fn height_lower(p: &Place) -> f64 {
    let Place::Finite(m) = p else { return 0.0 };
    let k = m.deg();
    let c = m.primitive_int();
    let lc = ln_abs(c.last().unwrap());
    let c0 = if c[0].is_zero() { f64::NEG_INFINITY } else { ln_abs(&c[0]) };
    let top = c.iter().filter(|x| !x.is_zero()).map(ln_abs).fold(f64::NEG_INFINITY, f64::max);
    let mahler = lc.max(c0).max(top - binom_ln(k, k / 2));
    mahler / k as f64
}

/// Preperiodic and wandering critical-value orbits of a map of degree >= 2.
pub fn postcritical_split(a: &RatMap) -> Result<PostcriticalSplit> {
    let d = a.degree();
    assert!(d >= 2, "postcritical analysis needs degree two or more");
    let bound = height_constant(a) / (d - 1) as f64;
    let mut out = PostcriticalSplit::default();
    for v in critical_values(a) {
        let mut path: Vec<Place> = Vec::new();
        let mut cur = v;
        let wandering = loop {
            if out.preperiodic.contains(&cur) || path.contains(&cur) {
                break false;
            }
            if out.wandering.contains(&cur) || height_lower(&cur) > bound + 1e-9 {
                break true;
            }
            if out.preperiodic.len() + out.wandering.len() + path.len() >= ORBIT_CAP {
                return Err(Error::Inconclusive(format!(
                    "postcritical orbit exceeds {} places without a certificate",
                    ORBIT_CAP
                )));
            }
            let next = image_place(a, &cur);
            path.push(cur);
            cur = next;
        };
        if wandering {
            out.wandering.extend(path);
        } else {
            out.preperiodic.extend(path);
        }
    }
    Ok(out)
}

/// Forward closure of one place inside a forward-invariant set.
pub fn forward_closure(a: &RatMap, p: &Place) -> BTreeSet<Place> {
    let mut s = BTreeSet::new();
    let mut cur = p.clone();
    while s.insert(cur.clone()) {
        cur = image_place(a, &cur);
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::q;

    #[test]
    fn quadratic_orbits() {
        // z^2 - 1: 0 -> -1 -> 0, infinity fixed.
        let s = postcritical_split(&RatMap::from_ints(&[-1, 0, 1])).unwrap();
        let want: BTreeSet<Place> =
            [Place::from_i64(-1), Place::from_i64(0), Place::Infinity].into_iter().collect();
        assert_eq!(s.preperiodic, want);
        assert!(s.wandering.is_empty());
        // z^2 + 1: 1 -> 2 -> 5 -> 26 ... wanders.
        let s = postcritical_split(&RatMap::from_ints(&[1, 0, 1])).unwrap();
        assert!(s.wandering.contains(&Place::from_i64(1)));
        assert_eq!(s.preperiodic, [Place::Infinity].into_iter().collect());
    }

    #[test]
    fn height_inequality_holds() {
        // Oracle: naive heights along an orbit of z^2 + 1 respect the bound.
        let a = RatMap::from_ints(&[1, 0, 1]);
        let lk = height_constant(&a);
        let mut x = q(3);
        for _ in 0..4 {
            let y = a.eval_q(&x).unwrap();
            let h = |v: &Q| ln_abs(v.numer()).max(ln_abs(v.denom()));
            assert!(h(&y) >= 2.0 * h(&x) - lk - 1e-9);
            x = y;
        }
    }
}
