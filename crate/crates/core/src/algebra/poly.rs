//! Dense univariate polynomials over a field, lowest degree first.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::field::{content_of, Field, Q};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poly<K> {
    c: Vec<K>,
}

pub type UniPoly = Poly<Q>;

impl<K: Field> Poly<K> {
    pub fn new(mut c: Vec<K>) -> Self {
        while matches!(c.last(), Some(x) if x.fis_zero()) {
            c.pop();
        }
        Poly { c }
    }

    pub fn zero() -> Self {
        Poly { c: Vec::new() }
    }

    pub fn one() -> Self {
        Poly { c: vec![K::fone()] }
    }

    pub fn x() -> Self {
        Poly { c: vec![K::fzero(), K::fone()] }
    }

    pub fn constant(k: K) -> Self {
        Poly::new(vec![k])
    }

    pub fn monomial(k: K, n: usize) -> Self {
        if k.fis_zero() {
            return Poly::zero();
        }
        let mut c = vec![K::fzero(); n + 1];
        c[n] = k;
        Poly { c }
    }

    /// x - a
    pub fn linear_root(a: K) -> Self {
        Poly { c: vec![a.fneg(), K::fone()] }
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_const(&self) -> bool {
        self.c.len() <= 1
    }

    /// Degree, with the zero polynomial reported as 0.
    pub fn deg(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    pub fn degree(&self) -> Option<usize> {
        if self.c.is_empty() {
            None
        } else {
            Some(self.c.len() - 1)
        }
    }

    pub fn coeffs(&self) -> &[K] {
        &self.c
    }

    pub fn into_coeffs(self) -> Vec<K> {
        self.c
    }

    pub fn coeff(&self, i: usize) -> K {
        self.c.get(i).cloned().unwrap_or_else(K::fzero)
    }

    pub fn lc(&self) -> K {
        self.c.last().cloned().unwrap_or_else(K::fzero)
    }

    pub fn scale(&self, k: &K) -> Self {
        if k.fis_zero() {
            return Poly::zero();
        }
        Poly::new(self.c.iter().map(|a| a.fmul(k)).collect())
    }

    pub fn shift_up(&self, n: usize) -> Self {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![K::fzero(); n];
        c.extend(self.c.iter().cloned());
        Poly { c }
    }

    pub fn truncate(&self, n: usize) -> Self {
        Poly::new(self.c.iter().take(n).cloned().collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Poly::zero();
        }
        let lc = self.lc();
        if lc.fis_one() {
            return self.clone();
        }
        self.scale(&lc.finv())
    }

    pub fn eval(&self, x: &K) -> K {
        let mut acc = K::fzero();
        for a in self.c.iter().rev() {
            acc = acc.fmul(x).fadd(a);
        }
        acc
    }

    /// self(g)
    pub fn compose(&self, g: &Poly<K>) -> Self {
        let mut acc = Poly::zero();
        for a in self.c.iter().rev() {
            acc = &(&acc * g) + &Poly::constant(a.clone());
        }
        acc
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        if self.c.len() <= 1 {
            return Poly::zero();
        }
        Poly::new(
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, a)| a.fmul(&K::from_i64(i as i64)))
                .collect(),
        )
    }

    /// Coefficient reversal with respect to degree n: x^n p(1/x).
    pub fn reversed(&self, n: usize) -> Self {
        let mut c = vec![K::fzero(); n + 1];
        for (i, a) in self.c.iter().enumerate() {
            assert!(i <= n, "reversal degree too small");
            c[n - i] = a.clone();
        }
        Poly::new(c)
    }

    pub fn div_rem(&self, d: &Poly<K>) -> (Self, Self) {
        assert!(!d.is_zero(), "polynomial division by zero");
        if self.c.len() < d.c.len() {
            return (Poly::zero(), self.clone());
        }
        let dl = d.lc().finv();
        let dn = d.deg();
        let mut r = self.c.clone();
        let mut qv = vec![K::fzero(); r.len() - dn];
        for i in (0..qv.len()).rev() {
            let coef = r[i + dn].fmul(&dl);
            if !coef.fis_zero() {
                for (j, b) in d.c.iter().enumerate() {
                    r[i + j] = r[i + j].fsub(&coef.fmul(b));
                }
            }
            qv[i] = coef;
        }
        r.truncate(dn);
        (Poly::new(qv), Poly::new(r))
    }

    pub fn rem(&self, d: &Poly<K>) -> Self {
        self.div_rem(d).1
    }

    /// Quotient assuming exact divisibility (checked in debug builds).
    pub fn exact_div(&self, d: &Poly<K>) -> Self {
        let (qt, r) = self.div_rem(d);
        debug_assert!(r.is_zero(), "inexact polynomial division");
        qt
    }

    pub fn try_div(&self, d: &Poly<K>) -> Option<Self> {
        let (qt, r) = self.div_rem(d);
        if r.is_zero() {
            Some(qt)
        } else {
            None
        }
    }

    /// Monic gcd; gcd(0, 0) = 0.
    pub fn gcd(&self, o: &Poly<K>) -> Self {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b.monic();
            b = r;
        }
        a.monic()
    }

    /// (g, s, t) with s*self + t*o = g, g monic.
    pub fn xgcd(&self, o: &Poly<K>) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (Poly::one(), Poly::zero());
        let (mut t0, mut t1) = (Poly::zero(), Poly::one());
        while !r1.is_zero() {
            let (qt, r) = r0.div_rem(&r1);
            let s = &s0 - &(&qt * &s1);
            let t = &t0 - &(&qt * &t1);
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
            t0 = t1;
            t1 = t;
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = r0.lc().finv();
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    /// Inverse of self modulo m, if it exists.
    pub fn inv_mod(&self, m: &Poly<K>) -> Option<Self> {
        let (g, s, _) = self.rem(m).xgcd(m);
        if g.deg() == 0 && !g.is_zero() {
            Some(s.rem(m))
        } else {
            None
        }
    }

    /// Yun's squarefree decomposition: monic a_i with self = lc * prod a_i^i.
    pub fn squarefree_decomposition(&self) -> Vec<(Poly<K>, usize)> {
        let mut out = Vec::new();
        if self.deg() == 0 {
            return out;
        }
        let f = self.monic();
        let fp = f.derivative();
        let g = f.gcd(&fp);
        let mut c = f.exact_div(&g);
        let mut d = &fp.exact_div(&g) - &c.derivative();
        let mut i = 1;
        while c.deg() > 0 {
            let a = c.gcd(&d);
            if a.deg() > 0 {
                out.push((a.clone(), i));
            }
            c = c.exact_div(&a);
            d = &d.exact_div(&a) - &c.derivative();
            i += 1;
        }
        out
    }

    pub fn squarefree_part(&self) -> Self {
        let mut acc = Poly::one();
        for (a, _) in self.squarefree_decomposition() {
            acc = &acc * &a;
        }
        acc
    }

    pub fn is_squarefree(&self) -> bool {
        self.deg() == 0 || self.gcd(&self.derivative()).deg() == 0
    }

    /// Resultant by the Euclidean remainder sequence.
    pub fn resultant(&self, o: &Poly<K>) -> K {
        if self.is_zero() || o.is_zero() {
            return K::fzero();
        }
        let mut a = self.clone();
        let mut b = o.clone();
        let mut acc = K::fone();
        loop {
            let (m, n) = (a.deg(), b.deg());
            if n == 0 {
                return acc.fmul(&b.lc().fpow(m as u64));
            }
            let r = a.rem(&b);
            if r.is_zero() {
                return K::fzero();
            }
            if (m * n) % 2 == 1 {
                acc = acc.fneg();
            }
            acc = acc.fmul(&b.lc().fpow((m - r.deg()) as u64));
            a = b;
            b = r;
        }
    }

    /// Multiplicity of d as a factor of self (d of positive degree).
    pub fn multiplicity_of(&self, d: &Poly<K>) -> usize {
        let mut k = 0;
        let mut cur = self.clone();
        if cur.is_zero() {
            return usize::MAX;
        }
        while let Some(qt) = cur.try_div(d) {
            k += 1;
            cur = qt;
        }
        k
    }

    pub fn map<L: Field>(&self, f: impl Fn(&K) -> L) -> Poly<L> {
        Poly::new(self.c.iter().map(f).collect())
    }
}

impl<K: Field> Add for &Poly<K> {
    type Output = Poly<K>;
    fn add(self, o: &Poly<K>) -> Poly<K> {
        let n = self.c.len().max(o.c.len());
        let mut c = Vec::with_capacity(n);
        for i in 0..n {
            c.push(match (self.c.get(i), o.c.get(i)) {
                (Some(a), Some(b)) => a.fadd(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        Poly::new(c)
    }
}

impl<K: Field> Sub for &Poly<K> {
    type Output = Poly<K>;
    fn sub(self, o: &Poly<K>) -> Poly<K> {
        let n = self.c.len().max(o.c.len());
        let mut c = Vec::with_capacity(n);
        for i in 0..n {
            c.push(match (self.c.get(i), o.c.get(i)) {
                (Some(a), Some(b)) => a.fsub(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.fneg(),
                (None, None) => unreachable!(),
            });
        }
        Poly::new(c)
    }
}

impl<K: Field> Mul for &Poly<K> {
    type Output = Poly<K>;
    fn mul(self, o: &Poly<K>) -> Poly<K> {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![K::fzero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.fis_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                if b.fis_zero() {
                    continue;
                }
                c[i + j] = c[i + j].fadd(&a.fmul(b));
            }
        }
        Poly::new(c)
    }
}

impl<K: Field> Neg for &Poly<K> {
    type Output = Poly<K>;
    fn neg(self) -> Poly<K> {
        Poly { c: self.c.iter().map(|a| a.fneg()).collect() }
    }
}

impl<K: Field> Add for Poly<K> {
    type Output = Poly<K>;
    fn add(self, o: Poly<K>) -> Poly<K> {
        &self + &o
    }
}

impl<K: Field> Sub for Poly<K> {
    type Output = Poly<K>;
    fn sub(self, o: Poly<K>) -> Poly<K> {
        &self - &o
    }
}

impl<K: Field> Mul for Poly<K> {
    type Output = Poly<K>;
    fn mul(self, o: Poly<K>) -> Poly<K> {
        &self * &o
    }
}

impl<K: Field> Neg for Poly<K> {
    type Output = Poly<K>;
    fn neg(self) -> Poly<K> {
        -&self
    }
}

impl Poly<Q> {
    pub fn from_ints(c: &[i64]) -> Self {
        Poly::new(c.iter().map(|&n| Q::from_integer(BigInt::from(n))).collect())
    }

    pub fn from_bigints(c: &[BigInt]) -> Self {
        Poly::new(c.iter().map(|n| Q::from_integer(n.clone())).collect())
    }

    /// Rational content: gcd of numerators over lcm of denominators, signed
    /// so that the primitive part has positive leading coefficient.
    pub fn content(&self) -> Q {
        let c = content_of(self.coeffs());
        if self.lc().is_negative() {
            -c
        } else {
            c
        }
    }

    /// Integer primitive part with positive leading coefficient.
    pub fn primitive_int(&self) -> Vec<BigInt> {
        if self.is_zero() {
            return Vec::new();
        }
        let c = self.content();
        self.coeffs()
            .iter()
            .map(|a| {
                let v = a / &c;
                debug_assert!(v.is_integer());
                v.to_integer()
            })
            .collect()
    }

    pub fn primitive(&self) -> Self {
        Poly::from_bigints(&self.primitive_int())
    }

    /// Rational roots (each listed once), sorted.
    pub fn rational_roots(&self) -> Vec<Q> {
        super::factor::rational_roots(self)
    }

    /// Lcm of coefficient denominators.
    pub fn denom_lcm(&self) -> BigInt {
        self.coeffs().iter().fold(BigInt::one(), |l, a| l.lcm(a.denom()))
    }

    pub fn fmt_var(&self, var: &str) -> String {
        fmt_poly(self.coeffs(), var)
    }
}

/// Render coefficients (lowest first) in a form the map parser accepts.
pub fn fmt_poly(c: &[Q], var: &str) -> String {
    let mut s = String::new();
    let mut first = true;
    for i in (0..c.len()).rev() {
        let a = &c[i];
        if Zero::is_zero(a) {
            continue;
        }
        let neg = a.is_negative();
        let mag = a.abs();
        if first {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        first = false;
        let mono = match i {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{}^{}", var, i),
        };
        if i == 0 {
            s.push_str(&fmt_q(&mag));
        } else if One::is_one(&mag) {
            s.push_str(&mono);
        } else if mag.is_integer() {
            s.push_str(&format!("{}*{}", mag, mono));
        } else {
            s.push_str(&format!("{}/{}*{}", mag.numer(), mag.denom(), mono));
        }
    }
    if first {
        s.push('0');
    }
    s
}

pub fn fmt_q(a: &Q) -> String {
    if a.is_integer() {
        a.numer().to_string()
    } else {
        format!("{}/{}", a.numer(), a.denom())
    }
}

impl fmt::Display for Poly<Q> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fmt_var("z"))
    }
}

/// Lagrange interpolation through (x_i, y_i) with distinct x_i.
pub fn interpolate<K: Field>(xs: &[K], ys: &[K]) -> Poly<K> {
    assert_eq!(xs.len(), ys.len());
    // Newton divided differences.
    let n = xs.len();
    let mut coef: Vec<K> = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            let num = coef[i].fsub(&coef[i - 1]);
            let den = xs[i].fsub(&xs[i - j]);
            coef[i] = num.fdiv(&den);
        }
    }
    let mut acc = Poly::zero();
    for i in (0..n).rev() {
        acc = &(&acc * &Poly::linear_root(xs[i].clone())) + &Poly::constant(coef[i].clone());
    }
    acc
}

/// Sample points 0, 1, -1, 2, -2, ...
pub fn sample_point(i: usize) -> i64 {
    let k = i.div_ceil(2) as i64;
    if i % 2 == 1 {
        k
    } else {
        -k
    }
}
