//! Rational self-maps of the projective line over Q.

use std::fmt;

use num_traits::{One, Zero};

use super::field::{q, Q};
use super::poly::{fmt_poly, Poly};
use crate::error::{Error, Result};

/// A point of P^1(Q); `None` is infinity.
pub type Pt = Option<Q>;

/// Coprime numerator and denominator in canonical scaling: monic
/// denominator, or monic numerator when the denominator is constant.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatMap {
    num: Poly<Q>,
    den: Poly<Q>,
}

impl RatMap {
    pub fn new(num: Poly<Q>, den: Poly<Q>) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Precondition("zero denominator".into()));
        }
        let g = num.gcd(&den);
        if g.deg() > 0 {
            Ok(RatMap::canon(num.exact_div(&g), den.exact_div(&g)))
        } else {
            Ok(RatMap::canon(num, den))
        }
    }

    /// Caller guarantees coprimality and a nonzero denominator.
    pub(crate) fn from_coprime(num: Poly<Q>, den: Poly<Q>) -> Self {
        debug_assert!(num.gcd(&den).deg() == 0);
        RatMap::canon(num, den)
    }

    fn canon(num: Poly<Q>, den: Poly<Q>) -> Self {
        if num.is_zero() {
            return RatMap { num, den: Poly::one() };
        }
        let s = if den.deg() >= 1 {
            den.lc()
        } else if num.deg() >= 1 {
            num.lc()
        } else {
            den.lc()
        };
        if One::is_one(&s) {
            return RatMap { num, den };
        }
        let inv = s.recip();
        RatMap { num: num.scale(&inv), den: den.scale(&inv) }
    }

    pub fn from_poly(p: Poly<Q>) -> Self {
        RatMap::canon(p, Poly::one())
    }

    pub fn from_ints(c: &[i64]) -> Self {
        RatMap::from_poly(Poly::from_ints(c))
    }

    pub fn identity() -> Self {
        RatMap::from_poly(Poly::x())
    }

    pub fn constant(c: Q) -> Self {
        RatMap::canon(Poly::constant(c), Poly::one())
    }

    /// (a z + b) / (c z + d)
    pub fn mobius(a: Q, b: Q, c: Q, d: Q) -> Result<Self> {
        if (&a * &d - &b * &c).is_zero() {
            return Err(Error::Precondition("degenerate Mobius transformation".into()));
        }
        RatMap::new(Poly::new(vec![b, a]), Poly::new(vec![d, c]))
    }

    pub fn monomial(n: i64) -> Self {
        if n >= 0 {
            RatMap::from_poly(Poly::monomial(Q::one(), n as usize))
        } else {
            RatMap::canon(Poly::one(), Poly::monomial(Q::one(), (-n) as usize))
        }
    }

    pub fn num(&self) -> &Poly<Q> {
        &self.num
    }

    pub fn den(&self) -> &Poly<Q> {
        &self.den
    }

    pub fn degree(&self) -> usize {
        if self.num.is_zero() {
            return 0;
        }
        self.num.deg().max(self.den.deg())
    }

    pub fn is_constant(&self) -> bool {
        self.degree() == 0
    }

    pub fn is_identity(&self) -> bool {
        *self == RatMap::identity()
    }

    pub fn is_poly(&self) -> bool {
        self.den.deg() == 0
    }

    /// Polynomial form when the denominator is constant.
    pub fn as_poly(&self) -> Option<Poly<Q>> {
        if self.is_poly() {
            Some(self.num.scale(&self.den.lc().recip()))
        } else {
            None
        }
    }

    pub fn eval(&self, x: &Pt) -> Pt {
        match x {
            Some(v) => {
                let d = self.den.eval(v);
                if d.is_zero() {
                    None
                } else {
                    Some(self.num.eval(v) / d)
                }
            }
            None => self.eval_inf(),
        }
    }

    pub fn eval_q(&self, x: &Q) -> Pt {
        self.eval(&Some(x.clone()))
    }

    pub fn eval_inf(&self) -> Pt {
        let (dn, dd) = (self.num.deg(), self.den.deg());
        if self.num.is_zero() || dn < dd {
            Some(Q::zero())
        } else if dn > dd {
            None
        } else {
            Some(self.num.lc() / self.den.lc())
        }
    }

    /// self o g
    pub fn compose(&self, g: &RatMap) -> RatMap {
        let k = self.degree();
        if k == 0 {
            return self.clone();
        }
        let (a, b) = (&g.num, &g.den);
        let mut ap = vec![Poly::one()];
        let mut bp = vec![Poly::one()];
        for i in 1..=k {
            ap.push(&ap[i - 1] * a);
            bp.push(&bp[i - 1] * b);
        }
        let hom = |p: &Poly<Q>| -> Poly<Q> {
            let mut acc = Poly::zero();
            for (i, c) in p.coeffs().iter().enumerate() {
                if !c.is_zero() {
                    acc = &acc + &(&ap[i] * &bp[k - i]).scale(c);
                }
            }
            acc
        };
        let n = hom(&self.num);
        let d = hom(&self.den);
        if g.is_constant() {
            return RatMap::new(n, d).unwrap_or_else(|_| RatMap::constant(Q::zero()));
        }
        RatMap::from_coprime(n, d)
    }

    pub fn iterate(&self, k: usize) -> RatMap {
        assert!(k >= 1, "iterate count must be positive");
        let mut acc = self.clone();
        for _ in 1..k {
            acc = acc.compose(self);
        }
        acc
    }

    /// Inverse of a degree-one map.
    pub fn inverse(&self) -> Option<RatMap> {
        if self.degree() != 1 {
            return None;
        }
        let (b, a) = (self.num.coeff(0), self.num.coeff(1));
        let (d, c) = (self.den.coeff(0), self.den.coeff(1));
        RatMap::mobius(d, -b, -c, a).ok()
    }

    /// Mobius coefficients (a, b, c, d) of a degree-one map.
    pub fn mobius_coeffs(&self) -> Option<(Q, Q, Q, Q)> {
        if self.degree() != 1 {
            return None;
        }
        Some((self.num.coeff(1), self.num.coeff(0), self.den.coeff(1), self.den.coeff(0)))
    }

    /// N' D - N D'
    pub fn wronskian(&self) -> Poly<Q> {
        &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative())
    }

    /// Numerator of self - c, i.e. N - c D.
    pub fn num_minus(&self, c: &Q) -> Poly<Q> {
        &self.num - &self.den.scale(c)
    }

    pub fn add(&self, o: &RatMap) -> RatMap {
        RatMap::new(&(&self.num * &o.den) + &(&o.num * &self.den), &self.den * &o.den).unwrap()
    }

    pub fn sub(&self, o: &RatMap) -> RatMap {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &RatMap) -> RatMap {
        RatMap::new(&self.num * &o.num, &self.den * &o.den).unwrap()
    }

    pub fn div(&self, o: &RatMap) -> Result<RatMap> {
        RatMap::new(&self.num * &o.den, &self.den * &o.num)
    }

    pub fn neg(&self) -> RatMap {
        RatMap::canon(-&self.num, self.den.clone())
    }

    pub fn scale(&self, c: &Q) -> RatMap {
        RatMap::new(self.num.scale(c), self.den.clone()).unwrap()
    }

    pub fn add_const(&self, c: &Q) -> RatMap {
        self.add(&RatMap::constant(c.clone()))
    }

    pub fn recip(&self) -> Result<RatMap> {
        RatMap::new(self.den.clone(), self.num.clone())
    }

    pub fn pow(&self, e: i32) -> RatMap {
        let p = e.unsigned_abs();
        let r = RatMap::canon(self.num.pow(p), self.den.pow(p));
        if e < 0 {
            r.recip().expect("power of zero map")
        } else {
            r
        }
    }

    /// Conjugate mu o self o mu^-1 for a Mobius mu.
    pub fn conjugate(&self, mu: &RatMap) -> RatMap {
        let inv = mu.inverse().expect("conjugator must have degree one");
        mu.compose(self).compose(&inv)
    }

    pub fn fmt_var(&self, var: &str) -> String {
        if let Some(p) = self.as_poly() {
            return fmt_poly(p.coeffs(), var);
        }
        let n = fmt_poly(self.num.coeffs(), var);
        let d = fmt_poly(self.den.coeffs(), var);
        let wrap = |s: String, p: &Poly<Q>| {
            let single = p.coeffs().iter().filter(|c| !c.is_zero()).count() <= 1;
            if single && !s.starts_with('-') && !s.contains('/') {
                s
            } else {
                format!("({})", s)
            }
        };
        format!("{}/{}", wrap(n, &self.num), wrap(d, &self.den))
    }
}

impl fmt::Display for RatMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fmt_var("z"))
    }
}

/// Chebyshev polynomial T_n as a map.
pub fn chebyshev(n: usize) -> RatMap {
    let mut a = Poly::one();
    let mut b = Poly::x();
    if n == 0 {
        return RatMap::from_poly(a);
    }
    let two_z = Poly::new(vec![q(0), q(2)]);
    for _ in 1..n {
        let c = &(&two_z * &b) - &a;
        a = b;
        b = c;
    }
    RatMap::from_poly(b)
}

/// Mobius map sending (p0, p1, p2) to (0, 1, infinity).
pub fn mobius_to_standard(p0: &Pt, p1: &Pt, p2: &Pt) -> Result<RatMap> {
    // (z - p0) / (z - p2), rescaled; a factor at infinity is dropped.
    let z = RatMap::identity();
    let lin = |p: &Pt| -> Option<RatMap> { p.as_ref().map(|v| z.add_const(&-v.clone())) };
    if p0 == p1 || p1 == p2 || p0 == p2 {
        return Err(Error::Precondition("points must be distinct".into()));
    }
    let one = RatMap::constant(Q::one());
    let num = lin(p0).unwrap_or_else(|| one.clone());
    let den = lin(p2).unwrap_or_else(|| one.clone());
    let mut m = num.div(&den)?;
    // Normalize so that p1 goes to 1.
    let v = m.eval(p1).ok_or_else(|| Error::Precondition("bad normalization".into()))?;
    m = m.scale(&v.recip());
    Ok(m)
}

/// Mobius map sending (a0, a1, a2) to (b0, b1, b2).
pub fn mobius_three_point(a: [&Pt; 3], b: [&Pt; 3]) -> Result<RatMap> {
    let ma = mobius_to_standard(a[0], a[1], a[2])?;
    let mb = mobius_to_standard(b[0], b[1], b[2])?;
    Ok(mb.inverse().unwrap().compose(&ma))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::qr;

    #[test]
    fn compose_examples() {
        let z2 = RatMap::monomial(2);
        let z3 = RatMap::monomial(3);
        assert_eq!(z2.compose(&z3), RatMap::monomial(6));
        let t6 = RatMap::from_ints(&[-1, 0, 18, 0, -48, 0, 32]);
        assert_eq!(chebyshev(2).compose(&chebyshev(3)), t6);
        // oracle: T6 = 2 T3^2 - 1
        let t3 = chebyshev(3).as_poly().unwrap();
        let rec = &(&t3 * &t3).scale(&q(2)) - &Poly::one();
        assert_eq!(RatMap::from_poly(rec), t6);
        let inv = RatMap::monomial(-1);
        assert_eq!(inv.compose(&inv), RatMap::identity());
    }

    #[test]
    fn iterate_examples() {
        assert_eq!(RatMap::monomial(2).iterate(3), RatMap::monomial(8));
        assert_eq!(RatMap::from_ints(&[1, 1]).iterate(4), RatMap::from_ints(&[4, 1]));
        assert_eq!(RatMap::from_ints(&[-1, 0, 1]).iterate(2), RatMap::from_ints(&[0, 0, -2, 0, 1]));
    }

    #[test]
    fn canonical_scaling() {
        let t3 = chebyshev(3);
        assert_eq!(t3.num(), &Poly::new(vec![q(0), qr(-3, 4), q(0), q(1)]));
        assert_eq!(t3.den(), &Poly::constant(qr(1, 4)));
        let f = RatMap::new(Poly::from_ints(&[2, 0, 2]), Poly::from_ints(&[0, 4])).unwrap();
        assert_eq!(f.den(), &Poly::x());
        assert_eq!(f.to_string(), "(1/2*z^2 + 1/2)/z");
    }

    #[test]
    fn mobius_helpers() {
        let mu = RatMap::mobius(q(2), q(1), q(1), q(1)).unwrap();
        assert_eq!(mu.compose(&mu.inverse().unwrap()), RatMap::identity());
        let m = mobius_three_point([&Some(q(1)), &Some(q(2)), &None], [&Some(q(0)), &None, &Some(q(5))])
            .unwrap();
        assert_eq!(m.eval_q(&q(1)), Some(q(0)));
        assert_eq!(m.eval_q(&q(2)), None);
        assert_eq!(m.eval_inf(), Some(q(5)));
    }
}
