//! Factorization in Q[z]: squarefree split, Berlekamp modulo a small prime,
//! Hensel lifting along a factor tree, and subset recombination.

use std::cmp::Ordering;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::field::Q;
use super::poly::Poly;

/// lc * prod f_i^e_i with monic irreducible f_i in canonical order.
#[derive(Clone, Debug, PartialEq)]
pub struct Factorization {
    pub unit: Q,
    pub factors: Vec<(Poly<Q>, usize)>,
}

impl Factorization {
    pub fn expand(&self) -> Poly<Q> {
        let mut acc = Poly::constant(self.unit.clone());
        for (f, e) in &self.factors {
            acc = &acc * &f.pow(*e as u32);
        }
        acc
    }
}

/// Canonical order on monic polynomials: degree, then root for linear
/// factors, then coefficients from the top.
pub fn poly_cmp(a: &Poly<Q>, b: &Poly<Q>) -> Ordering {
    a.deg().cmp(&b.deg()).then_with(|| {
        if a.deg() == 1 {
            let ra = -a.coeff(0) / a.coeff(1);
            let rb = -b.coeff(0) / b.coeff(1);
            return ra.cmp(&rb);
        }
        for i in (0..=a.deg()).rev() {
            match a.coeff(i).cmp(&b.coeff(i)) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        Ordering::Equal
    })
}

pub fn factor(p: &Poly<Q>) -> Factorization {
    assert!(!p.is_zero(), "factor of zero polynomial");
    let unit = p.lc();
    let mut factors = Vec::new();
    for (a, e) in squarefree_decomposition(p) {
        for g in factor_squarefree(&a) {
            factors.push((g, e));
        }
    }
    factors.sort_by(|x, y| poly_cmp(&x.0, &y.0));
    Factorization { unit, factors }
}

/// Squarefree decomposition, skipping the rational gcds when the
/// polynomial is squarefree modulo a prime not dividing its leading
/// coefficient.
pub fn squarefree_decomposition(p: &Poly<Q>) -> Vec<(Poly<Q>, usize)> {
    if p.deg() == 0 {
        return Vec::new();
    }
    let f = p.primitive_int();
    let n = f.len() - 1;
    let squarefree = PRIMES.iter().take(4).any(|&pr| {
        let fm = to_mp(&f, pr);
        fm.len() == n + 1 && modp::gcd(&fm, &modp::deriv(&fm, pr), pr).len() == 1
    });
    if squarefree {
        return vec![(p.monic(), 1)];
    }
    // Yun's algorithm with modular gcds.
    let mut out = Vec::new();
    let f = p.monic();
    let fp = f.derivative();
    let g = gcd(&f, &fp);
    let mut c = f.exact_div(&g);
    let mut d = &fp.exact_div(&g) - &c.derivative();
    let mut i = 1;
    while c.deg() > 0 {
        let a = gcd(&c, &d);
        if a.deg() > 0 {
            out.push((a.clone(), i));
        }
        c = c.exact_div(&a);
        d = &d.exact_div(&a) - &c.derivative();
        i += 1;
    }
    out
}

/// Primes just below 2^31, for modular gcds.
fn big_primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let is_prime = |n: u64| (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d));
        ((1u64 << 30)..(1u64 << 31)).rev().filter(|&n| is_prime(n)).take(256).collect()
    })
}

/// Monic gcd over Q, from gcds modulo large primes combined by CRT until
/// the primitive candidate stabilizes and divides both inputs.
pub fn gcd(a: &Poly<Q>, b: &Poly<Q>) -> Poly<Q> {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.deg() == 0 || b.deg() == 0 {
        return Poly::one();
    }
    let (fa, fb) = (a.primitive_int(), b.primitive_int());
    let gamma = fa.last().unwrap().gcd(fb.last().unwrap());
    let mut acc: Option<(ZP, BigInt)> = None;
    let mut best_deg = usize::MAX;
    for &pr in big_primes() {
        let (am, bm) = (to_mp(&fa, pr), to_mp(&fb, pr));
        if am.len() != fa.len() || bm.len() != fb.len() {
            continue;
        }
        let gm = modp::gcd(&am, &bm, pr);
        let dg = gm.len() - 1;
        if dg == 0 {
            return Poly::one();
        }
        if dg > best_deg {
            continue;
        }
        let scale = gamma.mod_floor(&BigInt::from(pr)).to_u64().unwrap();
        let gm: ZP = gm.iter().map(|c| BigInt::from(c * scale % pr)).collect();
        if dg < best_deg {
            best_deg = dg;
            acc = Some((gm, BigInt::from(pr)));
            continue;
        }
        let (prev, m) = acc.take().unwrap();
        let pb = BigInt::from(pr);
        let minv = m.mod_floor(&pb).modinv(&pb).unwrap();
        let comb: ZP = prev
            .iter()
            .zip(&gm)
            .map(|(x, y)| x + &m * ((y - x).mod_floor(&pb) * &minv).mod_floor(&pb))
            .collect();
        let m2 = &m * &pb;
        let stable = zsym(&prev, &m) == zsym(&comb, &m2);
        if stable {
            let cand = zprimitive(&zsym(&comb, &m2));
            if cand.len() == dg + 1 && zdiv_exact(&fa, &cand).is_some() && zdiv_exact(&fb, &cand).is_some() {
                return Poly::from_bigints(&cand).monic();
            }
        }
        acc = Some((comb, m2));
    }
    a.gcd(b)
}

pub fn squarefree_part(p: &Poly<Q>) -> Poly<Q> {
    squarefree_decomposition(p).iter().fold(Poly::one(), |acc, (a, _)| &acc * a)
}

/// Monic irreducible factors of a squarefree polynomial of positive degree.
pub fn factor_squarefree(a: &Poly<Q>) -> Vec<Poly<Q>> {
    let mut out = Vec::new();
    let mut f = a.primitive_int();
    // Pull out powers of z first; they confuse nothing but are free.
    if f[0].is_zero() {
        out.push(Poly::x());
        f.remove(0);
    }
    if f.len() > 1 {
        for g in zassenhaus(&f) {
            out.push(Poly::from_bigints(&g).monic());
        }
    }
    out.sort_by(poly_cmp);
    out
}

/// Distinct rational roots of p, sorted.
pub fn rational_roots(p: &Poly<Q>) -> Vec<Q> {
    if p.deg() == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut f = squarefree_part(p).primitive_int();
    if f[0].is_zero() {
        out.push(Q::zero());
        f.remove(0);
    }
    if f.len() > 1 {
        out.extend(integer_poly_roots(&f));
    }
    out.sort();
    out
}

type ZP = Vec<BigInt>;

fn ztrim(v: &mut ZP) {
    while matches!(v.last(), Some(x) if x.is_zero()) {
        v.pop();
    }
}

fn zmul(a: &[BigInt], b: &[BigInt]) -> ZP {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut c = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            c[i + j] += x * y;
        }
    }
    ztrim(&mut c);
    c
}

fn zsub(a: &[BigInt], b: &[BigInt]) -> ZP {
    let n = a.len().max(b.len());
    let mut c: ZP = (0..n)
        .map(|i| {
            a.get(i).cloned().unwrap_or_default() - b.get(i).cloned().unwrap_or_default()
        })
        .collect();
    ztrim(&mut c);
    c
}

fn zsym(a: &[BigInt], m: &BigInt) -> ZP {
    let half: BigInt = m >> 1;
    let mut c: ZP = a
        .iter()
        .map(|x| {
            let r = x.mod_floor(m);
            if r > half {
                r - m
            } else {
                r
            }
        })
        .collect();
    ztrim(&mut c);
    c
}

mod modp {
    //! Polynomials over F_p for small p, lowest degree first.
    pub type MP = Vec<u64>;

    pub fn trim(mut v: MP) -> MP {
        while v.last() == Some(&0) {
            v.pop();
        }
        v
    }

    pub fn pw(mut b: u64, mut e: u64, p: u64) -> u64 {
        let mut acc = 1u64;
        b %= p;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        acc
    }

    pub fn inv(a: u64, p: u64) -> u64 {
        pw(a, p - 2, p)
    }

    pub fn sub(a: &[u64], b: &[u64], p: u64) -> MP {
        let n = a.len().max(b.len());
        trim(
            (0..n)
                .map(|i| (a.get(i).copied().unwrap_or(0) + p - b.get(i).copied().unwrap_or(0)) % p)
                .collect(),
        )
    }

    pub fn mul(a: &[u64], b: &[u64], p: u64) -> MP {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut c = vec![0u64; a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if *x == 0 {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                c[i + j] = (c[i + j] + x * y) % p;
            }
        }
        trim(c)
    }

    pub fn divrem(a: &[u64], b: &[u64], p: u64) -> (MP, MP) {
        let b = trim(b.to_vec());
        assert!(!b.is_empty());
        let mut r = trim(a.to_vec());
        if r.len() < b.len() {
            return (Vec::new(), r);
        }
        let n = b.len() - 1;
        let li = inv(b[n], p);
        let mut q = vec![0u64; r.len() - n];
        for i in (0..q.len()).rev() {
            let c = r[i + n] * li % p;
            if c != 0 {
                for (j, y) in b.iter().enumerate() {
                    r[i + j] = (r[i + j] + p - c * y % p) % p;
                }
            }
            q[i] = c;
        }
        r.truncate(n);
        (trim(q), trim(r))
    }

    pub fn rem(a: &[u64], b: &[u64], p: u64) -> MP {
        divrem(a, b, p).1
    }

    pub fn monic(a: &[u64], p: u64) -> MP {
        let a = trim(a.to_vec());
        match a.last() {
            None => a,
            Some(&l) => {
                let li = inv(l, p);
                a.iter().map(|x| x * li % p).collect()
            }
        }
    }

    pub fn gcd(a: &[u64], b: &[u64], p: u64) -> MP {
        let mut a = trim(a.to_vec());
        let mut b = trim(b.to_vec());
        while !b.is_empty() {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        monic(&a, p)
    }

    /// (g, s, t) with s a + t b = g monic.
    pub fn xgcd(a: &[u64], b: &[u64], p: u64) -> (MP, MP, MP) {
        let (mut r0, mut r1) = (trim(a.to_vec()), trim(b.to_vec()));
        let (mut s0, mut s1): (MP, MP) = (vec![1], vec![]);
        let (mut t0, mut t1): (MP, MP) = (vec![], vec![1]);
        while !r1.is_empty() {
            let (q, r) = divrem(&r0, &r1, p);
            let s = sub(&s0, &mul(&q, &s1, p), p);
            let t = sub(&t0, &mul(&q, &t1, p), p);
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
            t0 = t1;
            t1 = t;
        }
        let li = inv(*r0.last().unwrap(), p);
        let sc = |v: &MP| trim(v.iter().map(|x| x * li % p).collect());
        (sc(&r0), sc(&s0), sc(&t0))
    }

    pub fn deriv(a: &[u64], p: u64) -> MP {
        trim(a.iter().enumerate().skip(1).map(|(i, x)| (i as u64 % p) * x % p).collect())
    }

    fn mulmod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> MP {
        rem(&mul(a, b, p), m, p)
    }

    /// Kernel basis of an n x n matrix over F_p (right null space).
    fn kernel(mut m: Vec<Vec<u64>>, p: u64) -> Vec<Vec<u64>> {
        let rows = m.len();
        let cols = if rows == 0 { 0 } else { m[0].len() };
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            let Some(pr) = (r..rows).find(|&i| m[i][c] != 0) else { continue };
            m.swap(r, pr);
            let li = inv(m[r][c], p);
            for x in m[r].iter_mut() {
                *x = *x * li % p;
            }
            for i in 0..rows {
                if i != r && m[i][c] != 0 {
                    let f = m[i][c];
                    for j in 0..cols {
                        m[i][j] = (m[i][j] + p - f * m[r][j] % p) % p;
                    }
                }
            }
            pivots.push(c);
            r += 1;
            if r == rows {
                break;
            }
        }
        let mut basis = Vec::new();
        for free in (0..cols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![0u64; cols];
            v[free] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = (p - m[i][free]) % p;
            }
            basis.push(v);
        }
        basis
    }

    /// Monic irreducible factors of a monic squarefree f over F_p.
    pub fn berlekamp(f: &[u64], p: u64) -> Vec<MP> {
        let n = f.len() - 1;
        if n <= 1 {
            return vec![f.to_vec()];
        }
        let xp = {
            let mut acc: MP = vec![1];
            let mut base: MP = vec![0, 1];
            let mut e = p;
            while e > 0 {
                if e & 1 == 1 {
                    acc = mulmod(&acc, &base, f, p);
                }
                base = mulmod(&base, &base, f, p);
                e >>= 1;
            }
            acc
        };
        // Row i holds x^{ip} mod f; we need v with sum_i v_i row_i = v.
        let mut qrows: Vec<MP> = Vec::with_capacity(n);
        let mut cur: MP = vec![1];
        for _ in 0..n {
            qrows.push(cur.clone());
            cur = mulmod(&cur, &xp, f, p);
        }
        let mut mt = vec![vec![0u64; n]; n];
        for (i, row) in qrows.iter().enumerate() {
            for j in 0..n {
                let v = row.get(j).copied().unwrap_or(0);
                mt[j][i] = (v + if i == j { p - 1 } else { 0 }) % p;
            }
        }
        let basis = kernel(mt, p);
        let r = basis.len();
        let mut facs: Vec<MP> = vec![f.to_vec()];
        for v in basis.iter() {
            if facs.len() == r {
                break;
            }
            let v = trim(v.clone());
            if v.len() <= 1 {
                continue;
            }
            let mut next = Vec::new();
            for g in facs {
                if g.len() <= 2 {
                    next.push(g);
                    continue;
                }
                let mut g = g;
                for s in 0..p {
                    if g.len() <= 1 {
                        break;
                    }
                    let vs = sub(&v, &[s], p);
                    let h = gcd(&g, &vs, p);
                    if h.len() > 1 && h.len() < g.len() {
                        g = divrem(&g, &h, p).0;
                        next.push(h);
                    } else if h.len() == g.len() {
                        break;
                    }
                }
                if g.len() > 1 {
                    next.push(monic(&g, p));
                }
            }
            facs = next;
        }
        facs
    }
}

use modp::MP;

fn to_mp(f: &[BigInt], p: u64) -> MP {
    let pb = BigInt::from(p);
    modp::trim(f.iter().map(|c| c.mod_floor(&pb).to_u64().unwrap()).collect())
}

fn from_mp(f: &[u64]) -> ZP {
    f.iter().map(|&c| BigInt::from(c)).collect()
}

const PRIMES: [u64; 40] = [
    3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
    101, 103, 107, 109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173, 179,
];

/// Bitset of achievable factor degrees from a list of modular factor degrees.
fn degree_sums(degs: &[usize], n: usize) -> Vec<bool> {
    let mut ok = vec![false; n + 1];
    ok[0] = true;
    for &d in degs {
        for s in (d..=n).rev() {
            if ok[s - d] {
                ok[s] = true;
            }
        }
    }
    ok
}

/// Irreducible factors of a primitive squarefree integer polynomial with
/// nonzero constant term. Modular factors of lc^-1 f are Hensel-lifted past
/// the Mignotte-type bound 2^n |lc| ||f||_2 and recombined by subsets.
fn zassenhaus(f: &[BigInt]) -> Vec<ZP> {
    let n = f.len() - 1;
    if n == 1 {
        return vec![f.to_vec()];
    }
    let mut best: Option<(u64, Vec<MP>)> = None;
    let mut possible = vec![true; n + 1];
    let mut tried = 0;
    for &p in PRIMES.iter() {
        let fm = to_mp(f, p);
        if fm.len() != n + 1 || modp::gcd(&fm, &modp::deriv(&fm, p), p).len() > 1 {
            continue;
        }
        let facs = modp::berlekamp(&modp::monic(&fm, p), p);
        let degs: Vec<usize> = facs.iter().map(|h| h.len() - 1).collect();
        let sums = degree_sums(&degs, n);
        for d in 0..=n {
            possible[d] &= sums[d];
        }
        if best.as_ref().is_none_or(|(_, b)| facs.len() < b.len()) {
            best = Some((p, facs));
        }
        tried += 1;
        if best.as_ref().unwrap().1.len() == 1 || tried >= 6 || (1..n).all(|d| !possible[d]) {
            break;
        }
    }
    let (p, facs) = best.expect("no lucky prime found");
    if facs.len() == 1 || (1..n).all(|d| !possible[d]) {
        return vec![f.to_vec()];
    }

    let lc = f[n].clone();
    let norm2: BigInt = f.iter().map(|c| c * c).sum();
    let mut bound = (num_integer::Roots::sqrt(&norm2) + BigInt::one()) * lc.abs();
    bound <<= n + 1;
    let pb = BigInt::from(p);
    let mut k = 1u32;
    let mut m = pb.clone();
    while m <= bound {
        m *= &pb;
        k += 1;
    }
    let lc_inv = lc.modinv(&m).expect("p does not divide lc");
    let monic: ZP = f.iter().map(|c| (c * &lc_inv).mod_floor(&m)).collect();
    let mut pool: Vec<ZP> = lift_all(&monic, &facs, p, k).iter().map(|h| zsym(h, &m)).collect();

    let mut cur = f.to_vec();
    let mut out = Vec::new();
    let mut size = 1;
    while 2 * size <= pool.len() {
        let mut hit = None;
        let mut idx: Vec<usize> = (0..size).collect();
        let cur_lc = cur.last().unwrap().clone();
        loop {
            let deg: usize = idx.iter().map(|&i| pool[i].len() - 1).sum();
            if possible[deg] {
                let mut prod: ZP = vec![cur_lc.clone()];
                for &i in &idx {
                    prod = zsym(&zmul(&prod, &pool[i]), &m);
                }
                let h = zprimitive(&prod);
                if !h[0].is_zero() && (&cur[0] % &h[0]).is_zero() {
                    if let Some(qt) = zdiv_exact(&cur, &h) {
                        hit = Some((idx.clone(), h, qt));
                        break;
                    }
                }
            }
            if !next_comb(&mut idx, pool.len()) {
                break;
            }
        }
        match hit {
            Some((idx, h, qt)) => {
                out.push(h);
                cur = qt;
                for &i in idx.iter().rev() {
                    pool.remove(i);
                }
            }
            None => size += 1,
        }
    }
    if cur.len() > 1 {
        out.push(zprimitive(&cur));
    }
    out
}

/// Primitive part with positive leading coefficient.
fn zprimitive(a: &[BigInt]) -> ZP {
    let mut cont = a.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    if a.last().is_some_and(|c| c.is_negative()) {
        cont = -cont;
    }
    a.iter().map(|c| c / &cont).collect()
}

/// a / b over Z when b divides a exactly.
fn zdiv_exact(a: &[BigInt], b: &[BigInt]) -> Option<ZP> {
    if a.len() < b.len() {
        return None;
    }
    let n = b.len() - 1;
    let blc = &b[n];
    let mut r = a.to_vec();
    let mut qv = vec![BigInt::zero(); a.len() - n];
    for i in (0..qv.len()).rev() {
        let (c, rem) = r[i + n].div_rem(blc);
        if !rem.is_zero() {
            return None;
        }
        if !c.is_zero() {
            for (j, y) in b.iter().enumerate() {
                r[i + j] -= &c * y;
            }
        }
        qv[i] = c;
    }
    if r.iter().any(|x| !x.is_zero()) {
        return None;
    }
    ztrim(&mut qv);
    Some(qv)
}

fn zeval_mod(f: &[BigInt], a: &BigInt, m: &BigInt) -> BigInt {
    f.iter().rev().fold(BigInt::zero(), |acc, c| (acc * a + c).mod_floor(m))
}

/// Rational roots of a squarefree integer polynomial: simple roots mod p
/// are Newton-lifted until lc * root, an integer bounded by
/// |lc| + max |f_i|, is determined, then checked exactly.
fn integer_poly_roots(f: &[BigInt]) -> Vec<Q> {
    let n = f.len() - 1;
    let lc = &f[n];
    let p = PRIMES
        .iter()
        .copied()
        .find(|&p| {
            let fm = to_mp(f, p);
            fm.len() == n + 1 && modp::gcd(&fm, &modp::deriv(&fm, p), p).len() == 1
        })
        .expect("no lucky prime found");
    let fm = modp::monic(&to_mp(f, p), p);
    let bound = f.iter().map(|c| c.abs()).max().unwrap_or_default() + lc.abs();
    let df: ZP = f.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect();
    let mut out = Vec::new();
    for h in modp::berlekamp(&fm, p).iter().filter(|h| h.len() == 2) {
        let mut m = BigInt::from(p);
        let mut a = BigInt::from((p - h[0]) % p);
        while m <= &bound * 2 {
            m = &m * &m;
            let Some(inv) = zeval_mod(&df, &a, &m).modinv(&m) else { break };
            a = (&a - zeval_mod(f, &a, &m) * inv).mod_floor(&m);
        }
        let mut c = (lc * &a).mod_floor(&m);
        if &c * 2 > m {
            c -= &m;
        }
        let r = Q::new(c, lc.clone());
        // f(r) * den^n as an integer.
        let (num, den) = (r.numer(), r.denom());
        let mut acc = BigInt::zero();
        let mut dpow = BigInt::one();
        for i in (0..=n).rev() {
            acc = acc * num + &f[i] * &dpow;
            if i > 0 {
                dpow *= den;
            }
        }
        if acc.is_zero() {
            out.push(r);
        }
    }
    out
}

fn next_comb(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Lift f = prod facs (mod p) to a factorization modulo p^k, f monic.
fn lift_all(f: &ZP, facs: &[MP], p: u64, k: u32) -> Vec<ZP> {
    if facs.len() == 1 {
        let m = BigInt::from(p).pow(k);
        return vec![f.iter().map(|c| c.mod_floor(&m)).collect()];
    }
    let mid = facs.len() / 2;
    let prod = |fs: &[MP]| fs.iter().fold(vec![1u64], |a, b| modp::mul(&a, b, p));
    let g0 = prod(&facs[..mid]);
    let h0 = prod(&facs[mid..]);
    let (g, h) = lift_pair(f, &g0, &h0, p, k);
    let mut out = lift_all(&g, &facs[..mid], p, k);
    out.extend(lift_all(&h, &facs[mid..], p, k));
    out
}

fn lift_pair(f: &ZP, g0: &MP, h0: &MP, p: u64, k: u32) -> (ZP, ZP) {
    let (_, _, t) = modp::xgcd(g0, h0, p);
    let mut g = from_mp(g0);
    let mut h = from_mp(h0);
    let pb = BigInt::from(p);
    let mut pj = pb.clone();
    for _ in 1..k {
        let diff = zsub(f, &zmul(&g, &h));
        let e: ZP = diff.iter().map(|c| c / &pj).collect();
        let e = to_mp(&e, p);
        let dg = modp::rem(&modp::mul(&e, &t, p), g0, p);
        let dh = modp::divrem(&modp::sub(&e, &modp::mul(h0, &dg, p), p), g0, p).0;
        for (i, c) in dg.iter().enumerate() {
            g[i] += &pj * BigInt::from(*c);
        }
        for (i, c) in dh.iter().enumerate() {
            h[i] += &pj * BigInt::from(*c);
        }
        pj *= &pb;
    }
    (g, h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::{q, qr};

    fn check(p: &Poly<Q>) -> Factorization {
        let f = factor(p);
        assert_eq!(f.expand(), *p);
        f
    }

    #[test]
    fn z4_minus_1() {
        let f = check(&Poly::from_ints(&[-1, 0, 0, 0, 1]));
        let fs: Vec<_> = f.factors.iter().map(|(g, _)| g.clone()).collect();
        assert_eq!(
            fs,
            vec![
                Poly::from_ints(&[1, 1]),
                Poly::from_ints(&[-1, 1]),
                Poly::from_ints(&[1, 0, 1])
            ]
        );
    }

    #[test]
    fn repeated_factor() {
        // 4z^3 - 3z - 1 = (z - 1)(2z + 1)^2
        let f = check(&Poly::from_ints(&[-1, -3, 0, 4]));
        assert_eq!(f.unit, q(4));
        assert_eq!(
            f.factors,
            vec![(Poly::new(vec![qr(1, 2), q(1)]), 2), (Poly::from_ints(&[-1, 1]), 1)]
        );
    }

    #[test]
    fn irreducibles() {
        for c in [&[1i64, 0, 1][..], &[-2, 0, 1], &[1, 1, 1, 1, 1], &[-1, -1, 0, 0, 0, 1]] {
            let f = check(&Poly::from_ints(c));
            assert_eq!(f.factors.len(), 1, "{:?}", c);
        }
    }

    #[test]
    fn swinnerton_dyer_like() {
        // z^4 - 10 z^2 + 1 is irreducible but splits modulo every prime.
        let f = check(&Poly::from_ints(&[1, 0, -10, 0, 1]));
        assert_eq!(f.factors.len(), 1);
    }

    #[test]
    fn large_product() {
        let a = Poly::from_ints(&[3, -7, 0, 5]);
        let b = Poly::from_ints(&[-13, 0, 2, 0, 0, 9]);
        let c = Poly::from_ints(&[1, 1]);
        let f = check(&(&(&a * &b) * &c));
        assert_eq!(f.factors.len(), 3);
    }

    #[test]
    fn roots() {
        let p = &(&Poly::from_ints(&[-1, 2]) * &Poly::from_ints(&[3, 1])) * &Poly::from_ints(&[2, 0, 1]);
        assert_eq!(rational_roots(&p), vec![q(-3), qr(1, 2)]);
        assert_eq!(rational_roots(&Poly::from_ints(&[0, 0, 1])), vec![q(0)]);
    }
}
