//! Coefficient fields used throughout: the rationals and the rational
//! function field Q(t).

use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::Poly;

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qr(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn qi(n: BigInt) -> Q {
    Q::from_integer(n)
}

/// Minimal field interface. Method names avoid clashing with `std::ops`.
pub trait Field: Clone + PartialEq + Debug {
    fn fzero() -> Self;
    fn fone() -> Self;
    fn fis_zero(&self) -> bool;
    fn from_i64(n: i64) -> Self;
    fn fadd(&self, o: &Self) -> Self;
    fn fsub(&self, o: &Self) -> Self;
    fn fmul(&self, o: &Self) -> Self;
    fn fneg(&self) -> Self;
    /// Panics on zero.
    fn finv(&self) -> Self;

    fn fis_one(&self) -> bool {
        *self == Self::fone()
    }
    fn fdiv(&self, o: &Self) -> Self {
        self.fmul(&o.finv())
    }
    fn fpow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::fone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.fmul(&base);
            }
            base = base.fmul(&base);
            e >>= 1;
        }
        acc
    }
}

impl Field for Q {
    fn fzero() -> Self {
        <Q as Zero>::zero()
    }
    fn fone() -> Self {
        <Q as One>::one()
    }
    fn fis_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn from_i64(n: i64) -> Self {
        q(n)
    }
    fn fadd(&self, o: &Self) -> Self {
        self + o
    }
    fn fsub(&self, o: &Self) -> Self {
        self - o
    }
    fn fmul(&self, o: &Self) -> Self {
        self * o
    }
    fn fneg(&self) -> Self {
        -self
    }
    fn finv(&self) -> Self {
        self.recip()
    }
}

/// Element of Q(t): reduced fraction with monic denominator.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatFunc {
    pub num: Poly<Q>,
    pub den: Poly<Q>,
}

impl RatFunc {
    pub fn new(num: Poly<Q>, den: Poly<Q>) -> Self {
        assert!(!den.is_zero(), "zero denominator in Q(t)");
        if num.is_zero() {
            return RatFunc { num, den: Poly::one() };
        }
        let g = num.gcd(&den);
        let (mut n, mut d) = if g.deg() > 0 {
            (num.exact_div(&g), den.exact_div(&g))
        } else {
            (num, den)
        };
        let lc = d.lc();
        if !One::is_one(&lc) {
            let inv = lc.recip();
            n = n.scale(&inv);
            d = d.scale(&inv);
        }
        RatFunc { num: n, den: d }
    }

    pub fn from_poly(p: Poly<Q>) -> Self {
        RatFunc { num: p, den: Poly::one() }
    }

    pub fn is_poly(&self) -> bool {
        self.den.deg() == 0
    }
}

impl Field for RatFunc {
    fn fzero() -> Self {
        RatFunc { num: Poly::zero(), den: Poly::one() }
    }
    fn fone() -> Self {
        RatFunc { num: Poly::one(), den: Poly::one() }
    }
    fn fis_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn from_i64(n: i64) -> Self {
        RatFunc::from_poly(Poly::constant(q(n)))
    }
    fn fadd(&self, o: &Self) -> Self {
        if self.den == o.den {
            return RatFunc::new(&self.num + &o.num, self.den.clone());
        }
        RatFunc::new(&(&self.num * &o.den) + &(&o.num * &self.den), &self.den * &o.den)
    }
    fn fsub(&self, o: &Self) -> Self {
        self.fadd(&o.fneg())
    }
    fn fmul(&self, o: &Self) -> Self {
        RatFunc::new(&self.num * &o.num, &self.den * &o.den)
    }
    fn fneg(&self) -> Self {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }
    fn finv(&self) -> Self {
        assert!(!self.fis_zero(), "inverse of zero in Q(t)");
        RatFunc::new(self.den.clone(), self.num.clone())
    }
}

/// Greatest common divisor of the numerators and lcm of the denominators.
pub fn content_of(cs: &[Q]) -> Q {
    let mut g = BigInt::zero();
    let mut l = BigInt::one();
    for c in cs {
        if Zero::is_zero(c) {
            continue;
        }
        g = g.gcd(c.numer());
        l = l.lcm(c.denom());
    }
    if g.is_zero() {
        return <Q as Zero>::zero();
    }
    Q::new(g, l)
}

/// Approximate natural log of |n| for a nonzero big integer.
pub fn ln_abs(n: &BigInt) -> f64 {
    let bits = n.bits();
    if bits <= 1000 {
        let f: f64 = n.abs().to_string().parse().unwrap_or(f64::MAX);
        return f.ln();
    }
    let shift = bits - 60;
    let top: BigInt = n.abs() >> shift;
    let f: f64 = top.to_string().parse().unwrap();
    f.ln() + (shift as f64) * std::f64::consts::LN_2
}
