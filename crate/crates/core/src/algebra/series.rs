//! Truncated power series around a rational center, Newton lifting of
//! roots and Pade reconstruction. Used for functional left division.

use num_traits::{One, Zero};

use super::field::{q, Q};
use super::poly::{sample_point, Poly};
use super::ratmap::RatMap;

#[derive(Clone, PartialEq, Debug)]
pub struct SeriesApprox {
    pub center: Q,
    pub coeffs: Vec<Q>,
}

impl SeriesApprox {
    pub fn precision(&self) -> usize {
        self.coeffs.len()
    }

    pub fn constant(center: Q, c: Q, prec: usize) -> Self {
        let mut coeffs = vec![Q::zero(); prec];
        coeffs[0] = c;
        SeriesApprox { center, coeffs }
    }

    /// Taylor expansion of a polynomial p at the center.
    pub fn from_poly(p: &Poly<Q>, center: &Q, prec: usize) -> Self {
        let sh = p.compose(&Poly::new(vec![center.clone(), Q::one()]));
        let mut coeffs: Vec<Q> = sh.coeffs().iter().take(prec).cloned().collect();
        coeffs.resize(prec, Q::zero());
        SeriesApprox { center: center.clone(), coeffs }
    }

    /// Expansion of f at the center; None at a pole.
    pub fn from_ratmap(f: &RatMap, center: &Q, prec: usize) -> Option<Self> {
        let n = SeriesApprox::from_poly(f.num(), center, prec);
        let d = SeriesApprox::from_poly(f.den(), center, prec);
        Some(n.mul(&d.inv()?))
    }

    pub fn mul(&self, o: &SeriesApprox) -> SeriesApprox {
        let prec = self.precision().min(o.precision());
        let mut c = vec![Q::zero(); prec];
        for (i, a) in self.coeffs.iter().enumerate().take(prec) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate().take(prec - i) {
                c[i + j] += a * b;
            }
        }
        SeriesApprox { center: self.center.clone(), coeffs: c }
    }

    pub fn add(&self, o: &SeriesApprox) -> SeriesApprox {
        let prec = self.precision().min(o.precision());
        let c = (0..prec).map(|i| &self.coeffs[i] + &o.coeffs[i]).collect();
        SeriesApprox { center: self.center.clone(), coeffs: c }
    }

    pub fn sub(&self, o: &SeriesApprox) -> SeriesApprox {
        let prec = self.precision().min(o.precision());
        let c = (0..prec).map(|i| &self.coeffs[i] - &o.coeffs[i]).collect();
        SeriesApprox { center: self.center.clone(), coeffs: c }
    }

    pub fn inv(&self) -> Option<SeriesApprox> {
        let a0 = self.coeffs.first()?;
        if a0.is_zero() {
            return None;
        }
        let prec = self.precision();
        let i0 = a0.recip();
        let mut inv = vec![Q::zero(); prec];
        inv[0] = i0.clone();
        for k in 1..prec {
            let mut acc = Q::zero();
            for j in 1..=k {
                acc += &self.coeffs[j] * &inv[k - j];
            }
            inv[k] = -acc * &i0;
        }
        Some(SeriesApprox { center: self.center.clone(), coeffs: inv })
    }

    /// p(self)
    pub fn eval_poly(&self, p: &Poly<Q>) -> SeriesApprox {
        let prec = self.precision();
        let mut acc = SeriesApprox::constant(self.center.clone(), Q::zero(), prec);
        for c in p.coeffs().iter().rev() {
            acc = acc.mul(self);
            acc.coeffs[0] += c;
        }
        acc
    }

    /// Rational function of numerator/denominator degree at most `deg`
    /// agreeing with the series, by the extended Euclidean algorithm.
    pub fn pade(&self, deg: usize) -> Option<RatMap> {
        let prec = self.precision();
        let a = Poly::monomial(Q::one(), prec);
        let b = Poly::new(self.coeffs.clone());
        let (mut r0, mut r1) = (a, b);
        let (mut t0, mut t1) = (Poly::<Q>::zero(), Poly::<Q>::one());
        while !r1.is_zero() && r1.deg() > deg {
            let (qt, r) = r0.div_rem(&r1);
            let t = &t0 - &(&qt * &t1);
            r0 = r1;
            r1 = r;
            t0 = t1;
            t1 = t;
        }
        if t1.deg() > deg || t1.coeff(0).is_zero() {
            return None;
        }
        let back = Poly::new(vec![-self.center.clone(), Q::one()]);
        RatMap::new(r1.compose(&back), t1.compose(&back)).ok()
    }
}

/// All R over Q with X o R = F, each verified exactly, sorted canonically.
pub fn ratmap_roots(x: &RatMap, f: &RatMap) -> Vec<RatMap> {
    let (m, n) = (x.degree(), f.degree());
    if m == 0 || n == 0 || n % m != 0 {
        return Vec::new();
    }
    let r = n / m;
    if m == 1 {
        let inv = x.inverse().unwrap();
        return vec![inv.compose(f)];
    }
    let xinf = x.eval_inf();
    // Center: F finite and not equal to X(inf), fiber polynomial squarefree.
    let mut i = 0;
    let (t0, ft0, g0) = loop {
        let t0 = q(sample_point(i));
        i += 1;
        let Some(v) = f.eval_q(&t0) else { continue };
        if xinf.as_ref() == Some(&v) {
            continue;
        }
        let g0 = x.num_minus(&v);
        if g0.deg() == m && g0.is_squarefree() {
            break (t0, v, g0);
        }
    };
    let _ = ft0;
    let mut out: Vec<RatMap> = Vec::new();
    for y0 in g0.rational_roots() {
        let mut prec = 2 * n + 4;
        for _attempt in 0..2 {
            if let Some(cand) = lift_and_reconstruct(x, f, &t0, &y0, prec, r) {
                if x.compose(&cand) == *f && !out.contains(&cand) {
                    out.push(cand);
                }
                break;
            }
            prec *= 2;
        }
    }
    out.sort_by_key(|a| a.to_string());
    out
}

fn lift_and_reconstruct(x: &RatMap, f: &RatMap, t0: &Q, y0: &Q, prec: usize, r: usize) -> Option<RatMap> {
    let fs = SeriesApprox::from_ratmap(f, t0, prec)?;
    let (p, qd) = (x.num(), x.den());
    let (dp, dq) = (p.derivative(), qd.derivative());
    let mut y = SeriesApprox::constant(t0.clone(), y0.clone(), prec);
    let mut good = 1usize;
    while good < prec {
        let g = y.eval_poly(p).sub(&fs.mul(&y.eval_poly(qd)));
        let gy = y.eval_poly(&dp).sub(&fs.mul(&y.eval_poly(&dq)));
        let step = g.mul(&gy.inv()?);
        y = y.sub(&step);
        good *= 2;
    }
    let cand = y.pade(r)?;
    if cand.degree() != r {
        return None;
    }
    Some(cand)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ratmap::chebyshev;

    #[test]
    fn square_roots_of_z6() {
        let rs = ratmap_roots(&RatMap::monomial(2), &RatMap::monomial(6));
        assert_eq!(rs.len(), 2);
        assert!(rs.contains(&RatMap::monomial(3)));
        assert!(rs.contains(&RatMap::monomial(3).neg()));
    }

    #[test]
    fn chebyshev_roots() {
        let rs = ratmap_roots(&chebyshev(2), &chebyshev(6));
        assert_eq!(rs.len(), 2);
        assert!(rs.contains(&chebyshev(3)));
        assert!(rs.contains(&chebyshev(3).neg()));
    }

    #[test]
    fn obstructions() {
        assert!(ratmap_roots(&RatMap::monomial(2), &RatMap::monomial(5)).is_empty());
        // z^2 + z is not a square of anything.
        assert!(ratmap_roots(&RatMap::monomial(2), &RatMap::from_ints(&[0, 1, 1])).is_empty());
    }

    #[test]
    fn rational_inner() {
        // X = z^2, F = (z^2+1)^2 / z^2 => R = +-(z^2+1)/z
        let g = RatMap::new(Poly::from_ints(&[1, 0, 1]), Poly::x()).unwrap();
        let f = RatMap::monomial(2).compose(&g);
        let rs = ratmap_roots(&RatMap::monomial(2), &f);
        assert_eq!(rs.len(), 2);
        assert!(rs.contains(&g));
    }

    #[test]
    fn pade_recovers() {
        let g = RatMap::new(Poly::from_ints(&[1, 2]), Poly::from_ints(&[3, 0, 1])).unwrap();
        let s = SeriesApprox::from_ratmap(&g, &q(1), 8).unwrap();
        assert_eq!(s.pade(2), Some(g));
    }
}
