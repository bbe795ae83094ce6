//! Bivariate polynomials over Q stored as x-rows of y-polynomials.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::field::{content_of, q, RatFunc, Q};
use super::poly::{fmt_q, interpolate, sample_point, Poly};
use crate::error::{Error, Result};

/// F(x, y) = sum_i rows[i](y) x^i.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct BiPoly {
    rows: Vec<Poly<Q>>,
}

impl BiPoly {
    pub fn new(mut rows: Vec<Poly<Q>>) -> Self {
        while matches!(rows.last(), Some(r) if r.is_zero()) {
            rows.pop();
        }
        BiPoly { rows }
    }

    pub fn zero() -> Self {
        BiPoly { rows: Vec::new() }
    }

    pub fn constant(c: Q) -> Self {
        BiPoly::new(vec![Poly::constant(c)])
    }

    pub fn x() -> Self {
        BiPoly::from_x_poly(&Poly::x())
    }

    pub fn y() -> Self {
        BiPoly::from_y_poly(Poly::x())
    }

    pub fn from_x_poly(p: &Poly<Q>) -> Self {
        BiPoly::new(p.coeffs().iter().map(|c| Poly::constant(c.clone())).collect())
    }

    pub fn from_y_poly(p: Poly<Q>) -> Self {
        BiPoly::new(vec![p])
    }

    /// Build from (i, j, c) terms meaning c x^i y^j.
    pub fn from_terms(terms: &[(usize, usize, Q)]) -> Self {
        let dx = terms.iter().map(|t| t.0).max().unwrap_or(0);
        let dy = terms.iter().map(|t| t.1).max().unwrap_or(0);
        let mut grid = vec![vec![Q::zero(); dy + 1]; dx + 1];
        for (i, j, c) in terms {
            grid[*i][*j] += c;
        }
        BiPoly::new(grid.into_iter().map(Poly::new).collect())
    }

    pub fn from_int_terms(terms: &[(usize, usize, i64)]) -> Self {
        let t: Vec<_> = terms.iter().map(|&(i, j, c)| (i, j, q(c))).collect();
        BiPoly::from_terms(&t)
    }

    /// px(x) * py(y)
    pub fn outer(px: &Poly<Q>, py: &Poly<Q>) -> Self {
        BiPoly::new(px.coeffs().iter().map(|c| py.scale(c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn rows(&self) -> &[Poly<Q>] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> Poly<Q> {
        self.rows.get(i).cloned().unwrap_or_else(Poly::zero)
    }

    pub fn deg_x(&self) -> usize {
        self.rows.len().saturating_sub(1)
    }

    pub fn deg_y(&self) -> usize {
        self.rows.iter().map(|r| r.deg()).max().unwrap_or(0)
    }

    pub fn coeff(&self, i: usize, j: usize) -> Q {
        self.rows.get(i).map(|r| r.coeff(j)).unwrap_or_else(Q::zero)
    }

    /// Nonzero terms (i, j, c), sorted by (i, j).
    pub fn terms(&self) -> Vec<(usize, usize, Q)> {
        let mut out = Vec::new();
        for (i, r) in self.rows.iter().enumerate() {
            for (j, c) in r.coeffs().iter().enumerate() {
                if !c.is_zero() {
                    out.push((i, j, c.clone()));
                }
            }
        }
        out
    }

    pub fn lc_x(&self) -> Poly<Q> {
        self.rows.last().cloned().unwrap_or_else(Poly::zero)
    }

    pub fn scale(&self, c: &Q) -> Self {
        BiPoly::new(self.rows.iter().map(|r| r.scale(c)).collect())
    }

    pub fn mul_y(&self, p: &Poly<Q>) -> Self {
        BiPoly::new(self.rows.iter().map(|r| r * p).collect())
    }

    pub fn transpose(&self) -> Self {
        let dy = self.deg_y();
        let mut cols = vec![vec![Q::zero(); self.rows.len()]; dy + 1];
        for (i, r) in self.rows.iter().enumerate() {
            for (j, c) in r.coeffs().iter().enumerate() {
                cols[j][i] = c.clone();
            }
        }
        if self.is_zero() {
            return BiPoly::zero();
        }
        BiPoly::new(cols.into_iter().map(Poly::new).collect())
    }

    pub fn eval_y(&self, y: &Q) -> Poly<Q> {
        Poly::new(self.rows.iter().map(|r| r.eval(y)).collect())
    }

    pub fn eval_x(&self, x: &Q) -> Poly<Q> {
        let mut acc = Poly::zero();
        for r in self.rows.iter().rev() {
            acc = &acc.scale(x) + r;
        }
        acc
    }

    pub fn eval(&self, x: &Q, y: &Q) -> Q {
        self.eval_y(y).eval(x)
    }

    /// F(x, y + c)
    pub fn shift_y(&self, c: &Q) -> Self {
        let sh = Poly::new(vec![c.clone(), Q::one()]);
        BiPoly::new(self.rows.iter().map(|r| r.compose(&sh)).collect())
    }

    pub fn deriv_x(&self) -> Self {
        BiPoly::new(
            self.rows
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, r)| r.scale(&q(i as i64)))
                .collect(),
        )
    }

    pub fn to_rf(&self) -> Poly<RatFunc> {
        Poly::new(self.rows.iter().map(|r| RatFunc::from_poly(r.clone())).collect())
    }

    /// Clear denominators of a polynomial over Q(y) and take the primitive part.
    pub fn from_rf(p: &Poly<RatFunc>) -> Self {
        let mut l = Poly::one();
        for c in p.coeffs() {
            l = lcm(&l, &c.den);
        }
        let rows = p.coeffs().iter().map(|c| &c.num * &l.exact_div(&c.den)).collect();
        BiPoly::new(rows).prim_x()
    }

    /// Monic gcd in Q[y] of the x-coefficients.
    pub fn content_x(&self) -> Poly<Q> {
        let mut g = Poly::zero();
        for r in &self.rows {
            g = g.gcd(r);
            if g.deg() == 0 && !g.is_zero() {
                break;
            }
        }
        g
    }

    pub fn prim_x(&self) -> Self {
        let c = self.content_x();
        if c.deg() == 0 {
            return self.clone();
        }
        BiPoly::new(self.rows.iter().map(|r| r.exact_div(&c)).collect())
    }

    /// Content as a polynomial in x (gcd of y-coefficients).
    pub fn content_y(&self) -> Poly<Q> {
        self.transpose().content_x()
    }

    /// Scalar normalization: integer coefficients with gcd 1, and the term
    /// with the largest (x, y) exponent positive.
    pub fn normalize(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let all: Vec<Q> = self.rows.iter().flat_map(|r| r.coeffs().iter().cloned()).collect();
        let mut c = content_of(&all);
        if self.lc_x().lc().is_negative() {
            c = -c;
        }
        self.scale(&c.recip())
    }

    pub fn is_constant(&self) -> bool {
        self.rows.len() <= 1 && self.deg_y() == 0
    }

    pub fn try_div(&self, d: &BiPoly) -> Option<BiPoly> {
        assert!(!d.is_zero());
        if self.is_zero() {
            return Some(BiPoly::zero());
        }
        if d.deg_x() > self.deg_x() || d.deg_y() > self.deg_y() {
            return None;
        }
        // Long division in x with exact division of leading y-coefficients.
        let dl = d.lc_x();
        let dn = d.deg_x();
        let mut r = self.rows.clone();
        let mut qv = vec![Poly::zero(); r.len() - dn];
        for i in (0..qv.len()).rev() {
            let top = std::mem::replace(&mut r[i + dn], Poly::zero());
            if top.is_zero() {
                continue;
            }
            let c = top.try_div(&dl)?;
            for (j, b) in d.rows.iter().enumerate().take(dn) {
                r[i + j] = &r[i + j] - &(&c * b);
            }
            qv[i] = c;
        }
        if r.iter().any(|x| !x.is_zero()) {
            return None;
        }
        Some(BiPoly::new(qv))
    }

    pub fn divides(&self, f: &BiPoly) -> bool {
        f.try_div(self).is_some()
    }

    /// gcd up to a scalar, normalized.
    pub fn gcd(&self, o: &BiPoly) -> BiPoly {
        if self.is_zero() {
            return o.normalize();
        }
        if o.is_zero() {
            return self.normalize();
        }
        let c = self.content_x().gcd(&o.content_x());
        let a = self.prim_x();
        let b = o.prim_x();
        let g = if a.deg_x() == 0 || b.deg_x() == 0 {
            BiPoly::constant(Q::one())
        } else {
            BiPoly::from_rf(&a.to_rf().gcd(&b.to_rf()))
        };
        g.mul_y(&c).normalize()
    }

    /// Squarefree decomposition: normalized factors S_e with F = c prod S_e^e.
    pub fn squarefree_decomposition(&self) -> Vec<(BiPoly, usize)> {
        let mut parts: Vec<(BiPoly, usize)> = Vec::new();
        let cy = self.content_x();
        for (a, e) in cy.squarefree_decomposition() {
            parts.push((BiPoly::from_y_poly(a), e));
        }
        let f = self.prim_x();
        if f.deg_x() > 0 {
            for (a, e) in f.to_rf().squarefree_decomposition() {
                parts.push((BiPoly::from_rf(&a), e));
            }
        }
        // Merge equal multiplicities.
        let maxe = parts.iter().map(|p| p.1).max().unwrap_or(0);
        let mut out = Vec::new();
        for e in 1..=maxe {
            let mut acc = BiPoly::constant(Q::one());
            let mut any = false;
            for (p, k) in &parts {
                if *k == e {
                    acc = &acc * p;
                    any = true;
                }
            }
            if any {
                out.push((acc.normalize(), e));
            }
        }
        out
    }

    pub fn squarefree_part(&self) -> BiPoly {
        let mut acc = BiPoly::constant(Q::one());
        for (p, _) in self.squarefree_decomposition() {
            acc = &acc * &p;
        }
        acc.normalize()
    }

    pub fn pow(&self, e: u32) -> BiPoly {
        let mut acc = BiPoly::constant(Q::one());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Numerator of F(N1/D1 (x), N2/D2 (y)) after multiplying by D1^dx D2^dy.
    pub fn substitute(&self, n1: &Poly<Q>, d1: &Poly<Q>, n2: &Poly<Q>, d2: &Poly<Q>) -> BiPoly {
        let dx = self.deg_x();
        let dy = self.deg_y();
        let powers = |n: &Poly<Q>, d: &Poly<Q>, k: usize| -> Vec<Poly<Q>> {
            let mut np = vec![Poly::one()];
            let mut dp = vec![Poly::one()];
            for i in 1..=k {
                np.push(&np[i - 1] * n);
                dp.push(&dp[i - 1] * d);
            }
            (0..=k).map(|i| &np[i] * &dp[k - i]).collect()
        };
        let xs = powers(n1, d1, dx);
        let ys = powers(n2, d2, dy);
        // sum_i xs[i](x) * (sum_j c_ij ys[j](y))
        let mut acc = BiPoly::zero();
        for (i, r) in self.rows.iter().enumerate() {
            if r.is_zero() {
                continue;
            }
            let mut yp = Poly::zero();
            for (j, c) in r.coeffs().iter().enumerate() {
                if !c.is_zero() {
                    yp = &yp + &ys[j].scale(c);
                }
            }
            acc = &acc + &BiPoly::outer(&xs[i], &yp);
        }
        acc
    }

    pub fn fmt_vars(&self, xv: &str, yv: &str) -> String {
        let mut terms = self.terms();
        terms.sort_by(|a, b| (b.0 + b.1, b.0).cmp(&(a.0 + a.1, a.0)));
        if terms.is_empty() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (k, (i, j, c)) in terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mut mono = Vec::new();
            match i {
                0 => {}
                1 => mono.push(xv.to_string()),
                _ => mono.push(format!("{}^{}", xv, i)),
            }
            match j {
                0 => {}
                1 => mono.push(yv.to_string()),
                _ => mono.push(format!("{}^{}", yv, j)),
            }
            if mono.is_empty() {
                s.push_str(&fmt_q(&mag));
            } else {
                if !One::is_one(&mag) {
                    s.push_str(&fmt_q(&mag));
                    s.push('*');
                }
                s.push_str(&mono.join("*"));
            }
        }
        s
    }
}

fn lcm(a: &Poly<Q>, b: &Poly<Q>) -> Poly<Q> {
    let g = a.gcd(b);
    (a * &b.exact_div(&g)).monic()
}

impl std::ops::Add for &BiPoly {
    type Output = BiPoly;
    fn add(self, o: &BiPoly) -> BiPoly {
        let n = self.rows.len().max(o.rows.len());
        BiPoly::new((0..n).map(|i| &self.row(i) + &o.row(i)).collect())
    }
}

impl std::ops::Sub for &BiPoly {
    type Output = BiPoly;
    fn sub(self, o: &BiPoly) -> BiPoly {
        let n = self.rows.len().max(o.rows.len());
        BiPoly::new((0..n).map(|i| &self.row(i) - &o.row(i)).collect())
    }
}

impl std::ops::Mul for &BiPoly {
    type Output = BiPoly;
    fn mul(self, o: &BiPoly) -> BiPoly {
        if self.is_zero() || o.is_zero() {
            return BiPoly::zero();
        }
        let mut rows = vec![Poly::zero(); self.rows.len() + o.rows.len() - 1];
        for (i, a) in self.rows.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.rows.iter().enumerate() {
                rows[i + j] = &rows[i + j] + &(a * b);
            }
        }
        BiPoly::new(rows)
    }
}

impl std::ops::Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        BiPoly::new(self.rows.iter().map(|r| -r).collect())
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fmt_vars("x", "y"))
    }
}

/// Res_x(F, G) as a polynomial in y, by evaluation at y-values where both
/// leading coefficients survive, followed by interpolation.
pub fn resultant_x(f: &BiPoly, g: &BiPoly) -> Result<Poly<Q>> {
    if f.is_zero() || g.is_zero() || f.deg_x() == 0 || g.deg_x() == 0 {
        return Err(Error::Precondition("resultant needs positive degree in x".into()));
    }
    let bound = f.deg_x() * g.deg_y() + g.deg_x() * f.deg_y();
    let (lf, lg) = (f.lc_x(), g.lc_x());
    let mut xs = Vec::with_capacity(bound + 1);
    let mut ys = Vec::with_capacity(bound + 1);
    let mut i = 0;
    while xs.len() <= bound {
        let y0 = q(sample_point(i));
        i += 1;
        if lf.eval(&y0).is_zero() || lg.eval(&y0).is_zero() {
            continue;
        }
        ys.push(f.eval_y(&y0).resultant(&g.eval_y(&y0)));
        xs.push(y0);
    }
    Ok(interpolate(&xs, &ys))
}

pub fn resultant_y(f: &BiPoly, g: &BiPoly) -> Result<Poly<Q>> {
    resultant_x(&f.transpose(), &g.transpose())
}

/// Content of a list of big integers.
pub fn int_content(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |g, a| g.gcd(a))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bp(t: &[(usize, usize, i64)]) -> BiPoly {
        BiPoly::from_int_terms(t)
    }

    #[test]
    fn resultant_examples() {
        // Res_x(x - y, x - 2y): Sylvester det of [[1, -y], [1, -2y]] = -y
        let r = resultant_x(&bp(&[(1, 0, 1), (0, 1, -1)]), &bp(&[(1, 0, 1), (0, 1, -2)])).unwrap();
        assert_eq!(r, Poly::from_ints(&[0, -1]));
        // Res_x(x^2 - y, x - 1) = 1 - y
        let r = resultant_x(&bp(&[(2, 0, 1), (0, 1, -1)]), &bp(&[(1, 0, 1), (0, 0, -1)])).unwrap();
        assert_eq!(r, Poly::from_ints(&[1, -1]));
        // Res_x(x - y, x + y) = det [[1, -y], [1, y]] = 2y
        let r = resultant_x(&bp(&[(1, 0, 1), (0, 1, -1)]), &bp(&[(1, 0, 1), (0, 1, 1)])).unwrap();
        assert_eq!(r, Poly::from_ints(&[0, 2]));
        assert!(resultant_x(&bp(&[(0, 1, 1)]), &bp(&[(1, 0, 1)])).is_err());
    }

    #[test]
    fn resultant_multiplicative() {
        let f = bp(&[(1, 0, 1), (0, 2, -1), (0, 0, 3)]);
        let g = bp(&[(2, 0, 1), (1, 1, 1), (0, 0, -2)]);
        let h = bp(&[(1, 0, 2), (0, 1, -5)]);
        let lhs = resultant_x(&(&f * &g), &h).unwrap();
        let rhs = &resultant_x(&f, &h).unwrap() * &resultant_x(&g, &h).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn division_and_gcd() {
        let a = bp(&[(1, 0, 1), (0, 1, -1)]);
        let b = bp(&[(1, 0, 1), (0, 1, 1)]);
        let p = &a * &b;
        assert_eq!(p.try_div(&a), Some(b.clone()));
        assert!(p.try_div(&bp(&[(1, 0, 1), (0, 0, 1)])).is_none());
        let g = (&p * &bp(&[(0, 1, 1), (0, 0, 3)])).gcd(&(&a * &bp(&[(2, 0, 1), (0, 1, 1)])));
        assert_eq!(g, a);
    }

    #[test]
    fn squarefree() {
        let a = bp(&[(1, 0, 1), (0, 1, -1)]);
        let b = bp(&[(0, 1, 1), (0, 0, 1)]);
        let f = &(&a * &a) * &b;
        let d = f.squarefree_decomposition();
        assert_eq!(d, vec![(b.normalize(), 1), (a.normalize(), 2)]);
        assert_eq!(f.squarefree_part(), (&a * &b).normalize());
    }

    #[test]
    fn printing() {
        assert_eq!(bp(&[(3, 0, 1), (0, 2, -1)]).to_string(), "x^3 - y^2");
        assert_eq!(bp(&[(1, 1, 1), (0, 0, -1)]).to_string(), "x*y - 1");
    }
}
