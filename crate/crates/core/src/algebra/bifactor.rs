//! Factorization in Q[x, y]: specialize y, factor in Q[x], lift the
//! factorization in Q[[y - y0]][x], then recombine by exact division.

use std::cmp::Ordering;

use num_traits::{One, Zero};

use super::bipoly::BiPoly;
use super::factor::{factor, poly_cmp};
use super::field::{q, Q};
use super::poly::Poly;

/// Canonical order for normalized bivariate factors.
pub fn bipoly_cmp(a: &BiPoly, b: &BiPoly) -> Ordering {
    (a.deg_x() + a.deg_y(), a.deg_x(), a.deg_y()).cmp(&(b.deg_x() + b.deg_y(), b.deg_x(), b.deg_y())).then_with(
        || {
            let ta = a.terms();
            let tb = b.terms();
            for (x, y) in ta.iter().rev().zip(tb.iter().rev()) {
                let o = (x.0, x.1).cmp(&(y.0, y.1)).then_with(|| x.2.cmp(&y.2));
                if o != Ordering::Equal {
                    return o;
                }
            }
            ta.len().cmp(&tb.len())
        },
    )
}

/// Irreducible factors with multiplicities, normalized and sorted.
/// Constant factors are dropped.
pub fn factor_bivariate(f: &BiPoly) -> Vec<(BiPoly, usize)> {
    assert!(!f.is_zero(), "factor of zero polynomial");
    let mut out: Vec<(BiPoly, usize)> = Vec::new();
    let cy = f.content_x();
    if cy.deg() > 0 {
        for (g, e) in factor(&cy).factors {
            out.push((BiPoly::from_y_poly(g).normalize(), e));
        }
    }
    let f1 = f.prim_x();
    let cx = f1.content_y();
    let f2 = if cx.deg() > 0 {
        for (g, e) in factor(&cx).factors {
            out.push((BiPoly::from_x_poly(&g).normalize(), e));
        }
        f1.try_div(&BiPoly::from_x_poly(&cx)).expect("content division")
    } else {
        f1
    };
    if f2.deg_x() > 0 {
        for (s, e) in f2.squarefree_decomposition() {
            if s.is_constant() {
                continue;
            }
            for g in factor_squarefree_primitive(&s) {
                out.push((g, e));
            }
        }
    }
    out.sort_by(|a, b| bipoly_cmp(&a.0, &b.0));
    out
}

pub fn is_irreducible(f: &BiPoly) -> bool {
    let fs = factor_bivariate(f);
    fs.len() == 1 && fs[0].1 == 1
}

type Series = Vec<Poly<Q>>;

fn series_mul(a: &Series, b: &Series, prec: usize) -> Series {
    let mut c = vec![Poly::zero(); prec];
    for (i, x) in a.iter().enumerate().take(prec) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(prec - i) {
            if y.is_zero() {
                continue;
            }
            c[i + j] = &c[i + j] + &(x * y);
        }
    }
    c
}

/// Factor a squarefree F, primitive in x, with no pure-x factor.
fn factor_squarefree_primitive(f: &BiPoly) -> Vec<BiPoly> {
    let f = f.normalize();
    if f.deg_x() <= 1 || f.deg_y() == 0 {
        if f.deg_y() == 0 {
            return factor(&f.eval_y(&Q::zero()))
                .factors
                .into_iter()
                .map(|(g, _)| BiPoly::from_x_poly(&g).normalize())
                .collect();
        }
        return vec![f];
    }
    let n = f.deg_x();
    let lc = f.lc_x();
    let mut y0 = 0i64;
    let at_y0 = loop {
        let c = q(y0);
        if !lc.eval(&c).is_zero() {
            let s = f.eval_y(&c);
            if s.is_squarefree() {
                break s;
            }
        }
        y0 += 1;
    };
    let uf = factor(&at_y0);
    let mut locals: Vec<Poly<Q>> = uf.factors.into_iter().map(|(g, _)| g).collect();
    if locals.len() == 1 {
        return vec![f];
    }
    locals.sort_by(poly_cmp);
    let r = locals.len();
    let prec = 2 * f.deg_y() + 1;

    // F(x, s + y0) as a series in s with x-polynomial coefficients.
    let fs = f.shift_y(&q(y0));
    let coeffs_s: Series = fs.transpose().rows().to_vec();
    let lcs = fs.lc_x();
    // 1 / lc(s) to precision prec.
    let inv_lc = {
        let l0 = lcs.coeff(0);
        let mut inv = vec![Q::zero(); prec];
        inv[0] = l0.recip();
        for k in 1..prec {
            let mut acc = Q::zero();
            for j in 1..=k {
                acc += lcs.coeff(j) * &inv[k - j];
            }
            inv[k] = -acc * &inv[0];
        }
        inv
    };
    let inv_series: Series = inv_lc.iter().map(|c| Poly::constant(c.clone())).collect();
    let monic_f = series_mul(&coeffs_s, &inv_series, prec);

    // Partial-fraction Bezout coefficients a_i with sum a_i prod_{j != i} f_j = 1.
    let full: Poly<Q> = locals.iter().fold(Poly::one(), |a, b| &a * b);
    let bez: Vec<Poly<Q>> = locals
        .iter()
        .map(|fi| {
            let cof = full.exact_div(fi);
            cof.inv_mod(fi).expect("coprime local factors")
        })
        .collect();

    let mut lifted: Vec<Series> = locals
        .iter()
        .map(|g| {
            let mut s = vec![Poly::zero(); prec];
            s[0] = g.clone();
            s
        })
        .collect();
    for k in 1..prec {
        let mut prod: Series = lifted[0][..=k].to_vec();
        for l in lifted.iter().skip(1) {
            prod = series_mul(&prod, &l[..=k].to_vec(), k + 1);
        }
        let e = &monic_f.get(k).cloned().unwrap_or_else(Poly::zero) - &prod[k];
        if e.is_zero() {
            continue;
        }
        for i in 0..r {
            lifted[i][k] = (&e * &bez[i]).rem(&locals[i]);
        }
    }

    // Recombination.
    let to_bipoly = |s: &Series| -> BiPoly {
        // rows indexed by s-power, transpose to x-rows, then undo the shift.
        BiPoly::new(s.clone()).transpose().shift_y(&q(-y0))
    };
    let lc_series = |p: &Poly<Q>| -> Series {
        let sh = p.compose(&Poly::new(vec![q(y0), Q::one()]));
        let mut s: Series = sh.coeffs().iter().map(|c| Poly::constant(c.clone())).collect();
        s.resize(prec, Poly::zero());
        s
    };
    let mut pool: Vec<Series> = lifted;
    let mut cur = f.clone();
    let mut out = Vec::new();
    let mut size = 1;
    while 2 * size <= pool.len() {
        let mut hit = None;
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            let mut prod = lc_series(&cur.lc_x());
            for &i in &idx {
                prod = series_mul(&prod, &pool[i], prec);
            }
            let cand = to_bipoly(&prod).prim_x();
            if cand.deg_x() > 0 && cand.deg_y() <= cur.deg_y() {
                if let Some(qt) = cur.try_div(&cand) {
                    hit = Some((idx.clone(), cand, qt));
                    break;
                }
            }
            if !next_comb(&mut idx, pool.len()) {
                break;
            }
        }
        match hit {
            Some((idx, cand, qt)) => {
                out.push(cand.normalize());
                cur = qt;
                for &i in idx.iter().rev() {
                    pool.remove(i);
                }
            }
            None => size += 1,
        }
    }
    if !cur.is_constant() {
        out.push(cur.normalize());
    }
    debug_assert!(n == out.iter().map(|g| g.deg_x()).sum::<usize>());
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

/// Product of factors with multiplicity, for recombination checks.
pub fn expand_factors(fs: &[(BiPoly, usize)]) -> BiPoly {
    let mut acc = BiPoly::constant(Q::one());
    for (g, e) in fs {
        acc = &acc * &g.pow(*e as u32);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bp(t: &[(usize, usize, i64)]) -> BiPoly {
        BiPoly::from_int_terms(t)
    }

    fn check(f: &BiPoly) -> Vec<(BiPoly, usize)> {
        let fs = factor_bivariate(f);
        assert_eq!(expand_factors(&fs).normalize(), f.normalize());
        fs
    }

    #[test]
    fn difference_of_squares() {
        let fs = check(&bp(&[(2, 0, 1), (0, 2, -1)]));
        assert_eq!(fs.len(), 2);
    }

    #[test]
    fn cusp_and_circle_irreducible() {
        assert_eq!(check(&bp(&[(3, 0, 1), (0, 2, -1)])).len(), 1);
        assert_eq!(check(&bp(&[(2, 0, 1), (0, 2, 1)])).len(), 1);
    }

    #[test]
    fn brute_cusp_oracle() {
        // No factor of x^3 - y^2 with x-degree 1 exists: such a factor would
        // give a root x = r(y) rational in y with r^3 = y^2, forcing deg r = 2/3.
        let f = bp(&[(3, 0, 1), (0, 2, -1)]);
        for a in -3i64..=3 {
            for b in -3i64..=3 {
                let lin = bp(&[(1, 0, 1), (0, 1, a), (0, 0, b)]);
                assert!(f.try_div(&lin).is_none());
            }
        }
    }

    #[test]
    fn mixed_contents_and_powers() {
        let a = bp(&[(2, 0, 1), (0, 1, 1), (1, 1, 3)]);
        let b = bp(&[(1, 0, 1), (0, 0, -2)]);
        let c = bp(&[(0, 2, 1), (0, 0, 1)]);
        let d = bp(&[(1, 1, 1), (0, 0, -1)]);
        let f = &(&(&a * &b) * &(&c * &d)) * &d;
        let fs = check(&f);
        assert_eq!(fs.len(), 4);
        assert!(fs.iter().any(|(g, e)| *g == d.normalize() && *e == 2));
    }

    #[test]
    fn chebyshev_difference() {
        // T4(x) - T4(y) splits into x - y, x + y and an irreducible quadratic.
        let t4 = Poly::from_ints(&[1, 0, -8, 0, 8]);
        let f = &BiPoly::from_x_poly(&t4) - &BiPoly::from_y_poly(t4.clone());
        let fs = check(&f);
        assert_eq!(fs.len(), 3);
    }
}
