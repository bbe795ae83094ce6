//! Functional decomposition over Q: common right factors, left and right
//! division, left factors of iterates and elementary transformations.

mod bounds;
mod chain;

pub use bounds::*;
pub use chain::*;


use crate::algebra::bifactor::{factor_bivariate, is_irreducible};
use crate::algebra::bipoly::BiPoly;
use crate::algebra::field::{q, Q};
use crate::algebra::linalg::nullspace;
use crate::algebra::poly::Poly;
use crate::algebra::ratmap::{mobius_three_point, Pt, RatMap};
use crate::algebra::series::ratmap_roots;
use crate::classify::mobius::find_conjugacy;
use crate::error::{pre, Error, Result};

/// Subset enumeration cap for `all_left_factors`.
pub const SUBSET_CAP: u64 = 1 << 16;

/// A = outer o inner.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub outer: RatMap,
    pub inner: RatMap,
}

impl Decomposition {
    pub fn new(outer: RatMap, inner: RatMap) -> Self {
        Decomposition { outer, inner }
    }

    pub fn compose(&self) -> RatMap {
        self.outer.compose(&self.inner)
    }

    /// inner o outer
    pub fn swapped(&self) -> RatMap {
        self.inner.compose(&self.outer)
    }
}

/// num(f(x) - f(y)) = N(x) D(y) - D(x) N(y).
pub fn fiber_poly(f: &RatMap) -> BiPoly {
    &BiPoly::outer(f.num(), f.den()) - &BiPoly::outer(f.den(), f.num())
}

/// num(f(x) - g(y)) = Nf(x) Dg(y) - Df(x) Ng(y).
pub fn separated_numerator(f: &RatMap, g: &RatMap) -> BiPoly {
    &BiPoly::outer(f.num(), g.den()) - &BiPoly::outer(f.den(), g.num())
}

fn proportional(a: &Poly<Q>, b: &Poly<Q>) -> bool {
    a.scale(&b.lc()) == b.scale(&a.lc())
}

/// w with num(w(x) - w(y)) proportional to `g`, if `g` has that shape.
/// Every row of such a g lies in span{N_w(y), D_w(y)}.
fn map_from_fiber(g: &BiPoly) -> Option<RatMap> {
    let rows: Vec<&Poly<Q>> = g.rows().iter().filter(|r| !r.is_zero()).collect();
    let a = *rows.first()?;
    let b = rows.iter().find(|r| !proportional(a, r))?;
    let w = RatMap::new(a.clone(), (*b).clone()).ok()?;
    (w.degree() == g.deg_x() && fiber_poly(&w).normalize() == g.normalize()).then_some(w)
}

/// Representative of {lambda o w}: the first sample points with distinct
/// values (in the order inf, 0, 1, -1, 2, ...) go to inf, 0, 1.
pub fn canonical_left(w: &RatMap) -> RatMap {
    let mut vals: Vec<Pt> = Vec::new();
    let seq = [None, Some(q(0))].into_iter().chain((1..).flat_map(|i| [Some(q(i)), Some(q(-i))]));
    for p in seq {
        let v = w.eval(&p);
        if !vals.contains(&v) {
            vals.push(v);
            if vals.len() == 3 {
                break;
            }
        }
    }
    let lam = mobius_three_point([&vals[0], &vals[1], &vals[2]], [&None, &Some(q(0)), &Some(q(1))])
        .expect("distinct values");
    lam.compose(w)
}

/// (w, f1, g1) with f = f1 o w, g = g1 o w and deg w maximal; w is in
/// canonical left form. Computed from the gcd of num(f(x) - f(y)) and
/// num(g(x) - g(y)), which is num(w(x) - w(y)) up to a unit.
pub fn max_common_right_factor(f: &RatMap, g: &RatMap) -> (RatMap, RatMap, RatMap) {
    assert!(f.degree() >= 1 && g.degree() >= 1, "common right factor of a constant");
    let gcd = fiber_poly(f).gcd(&fiber_poly(g));
    let w = canonical_left(&map_from_fiber(&gcd).expect("gcd of fiber polynomials has fiber shape"));
    let f1 = right_divide(f, &w).expect("f factors through the common factor");
    let g1 = right_divide(g, &w).expect("g factors through the common factor");
    (w, f1, g1)
}

/// Whether Q(f, g) = Q(z).
pub fn generates_field(f: &RatMap, g: &RatMap) -> bool {
    max_common_right_factor(f, g).0.degree() == 1
}

/// All R with X o R = F.
pub fn left_divide(f: &RatMap, x: &RatMap) -> Vec<RatMap> {
    ratmap_roots(x, f)
}

/// X with X o W = F. Solves D_F P(W) = N_F Q(W) for X = P/Q of degree
/// deg F / deg W as a linear system in the coefficients of P and Q.
pub fn right_divide(f: &RatMap, w: &RatMap) -> Option<RatMap> {
    let (n, m) = (f.degree(), w.degree());
    if n == 0 {
        return Some(f.clone());
    }
    if m == 0 || n % m != 0 {
        return None;
    }
    let k = n / m;
    let mut npow = vec![Poly::one()];
    let mut dpow = vec![Poly::one()];
    for i in 1..=k {
        npow.push(&npow[i - 1] * w.num());
        dpow.push(&dpow[i - 1] * w.den());
    }
    let basis: Vec<Poly<Q>> = (0..=k).map(|i| &npow[i] * &dpow[k - i]).collect();
    let mut cols: Vec<Poly<Q>> = basis.iter().map(|b| b * f.den()).collect();
    cols.extend(basis.iter().map(|b| -&(b * f.num())));
    let len = cols.iter().map(|c| c.coeffs().len()).max().unwrap_or(0);
    let rows: Vec<Vec<Q>> = (0..len).map(|r| cols.iter().map(|c| c.coeff(r)).collect()).collect();
    for v in nullspace(&rows, cols.len()) {
        let (p, qd) = (Poly::new(v[..=k].to_vec()), Poly::new(v[k + 1..].to_vec()));
        if let Ok(x) = RatMap::new(p, qd) {
            if x.compose(w) == *f {
                return Some(x);
            }
        }
    }
    None
}

/// Decompositions F = X o w with deg X = n, one per class X ~ X o mu.
/// Right factors w are assembled from subsets of the irreducible factors
/// of num(F(x) - F(y)) that contain x - y.
pub fn all_decompositions(f: &RatMap, n: usize) -> Result<Vec<Decomposition>> {
    let d = f.degree();
    if n == 0 || d == 0 || !d.is_multiple_of(n) {
        return pre(format!("degree {} does not divide deg F = {}", n, d));
    }
    let m = d / n;
    if m == 1 {
        return Ok(vec![Decomposition::new(f.clone(), RatMap::identity())]);
    }
    if n == 1 {
        let w = canonical_left(f);
        let x = right_divide(f, &w).expect("degree-one quotient");
        return Ok(vec![Decomposition::new(x, w)]);
    }
    let diag = fiber_poly(&RatMap::identity()).normalize();
    let mut rest: Vec<BiPoly> = Vec::new();
    let mut seen_diag = false;
    for (g, e) in factor_bivariate(&fiber_poly(f)) {
        for _ in 0..e {
            if g == diag && !seen_diag {
                seen_diag = true;
            } else {
                rest.push(g.clone());
            }
        }
    }
    if !seen_diag {
        return Err(Error::TheoremViolation("x - y does not divide the fiber polynomial".into()));
    }
    if rest.len() as u64 >= 64 || (1u64 << rest.len()) > SUBSET_CAP {
        return Err(Error::Inconclusive(format!("{} factors exceed the subset cap {}", rest.len(), SUBSET_CAP)));
    }
    let mut out: Vec<Decomposition> = Vec::new();
    for mask in 0u64..(1u64 << rest.len()) {
        let chosen: Vec<&BiPoly> = (0..rest.len()).filter(|i| mask >> i & 1 == 1).map(|i| &rest[i]).collect();
        let dx: usize = 1 + chosen.iter().map(|g| g.deg_x()).sum::<usize>();
        let dy: usize = 1 + chosen.iter().map(|g| g.deg_y()).sum::<usize>();
        if dx != m || dy != m {
            continue;
        }
        let prod = chosen.iter().fold(diag.clone(), |acc, g| &acc * g);
        let Some(w) = map_from_fiber(&prod) else { continue };
        let w = canonical_left(&w);
        if out.iter().any(|dec| dec.inner == w) {
            continue;
        }
        if let Some(x) = right_divide(f, &w) {
            out.push(Decomposition::new(x, w));
        }
    }
    out.sort_by_key(|dec| (dec.outer.to_string(), dec.inner.to_string()));
    Ok(out)
}

/// Representatives of the classes X ~ X o mu of degree-n left factors of F.
pub fn all_left_factors(f: &RatMap, n: usize) -> Result<Vec<RatMap>> {
    Ok(all_decompositions(f, n)?.into_iter().map(|d| d.outer).collect())
}

/// U o V for a verified split A = V o U.
pub fn elementary_transform(a: &RatMap, split: &Decomposition) -> Result<RatMap> {
    if split.compose() != *a {
        return pre(format!("{} o {} is not {}", split.outer, split.inner, a));
    }
    Ok(split.swapped())
}

#[derive(Clone, Debug)]
pub struct WalkEdge {
    pub from: usize,
    pub split: Decomposition,
    /// inner o outer, before collapsing to a representative.
    pub image: RatMap,
    pub to: usize,
}

#[derive(Clone, Debug)]
pub struct EquivalenceWalk {
    /// Pairwise non-conjugate maps; the first is the starting map.
    pub representatives: Vec<RatMap>,
    pub edges: Vec<WalkEdge>,
    /// False when some conjugacy test was inconclusive, so two
    /// representatives may still be conjugate.
    pub collapsed: bool,
}

/// Breadth-first closure under elementary transformations with
/// 1 < deg U < deg A, collapsing Mobius conjugates.
pub fn equivalence_walk(a: &RatMap, depth: usize) -> Result<EquivalenceWalk> {
    if a.degree() < 2 {
        return pre("equivalence walk needs degree two or more");
    }
    let mut walk = EquivalenceWalk { representatives: vec![a.clone()], edges: Vec::new(), collapsed: true };
    let mut frontier = vec![0usize];
    for _ in 0..depth {
        let mut next = Vec::new();
        for from in frontier {
            let b = walk.representatives[from].clone();
            let d = b.degree();
            for k in (2..d).filter(|k| d.is_multiple_of(*k)) {
                for split in all_decompositions(&b, k)? {
                    let image = split.swapped();
                    let mut to = None;
                    for (i, r) in walk.representatives.iter().enumerate() {
                        match find_conjugacy(r, &image) {
                            Ok(Some(_)) => {
                                to = Some(i);
                                break;
                            }
                            Ok(None) => {}
                            Err(_) => walk.collapsed = false,
                        }
                    }
                    let to = to.unwrap_or_else(|| {
                        walk.representatives.push(image.clone());
                        next.push(walk.representatives.len() - 1);
                        walk.representatives.len() - 1
                    });
                    walk.edges.push(WalkEdge { from, split, image, to });
                }
            }
        }
        frontier = next;
    }
    Ok(walk)
}

/// Whether num(f(x) - g(y)) is irreducible.
fn separated_irreducible(f: &RatMap, g: &RatMap) -> bool {
    is_irreducible(&separated_numerator(f, g))
}

/// For f o p = g o q: at least two of (i) num(f(x) - g(y)) irreducible,
/// (ii) Q(p, q) = Q(z), (iii) deg f = deg q and deg g = deg p. Any two
/// force the third; a split count is reported as a violation.
pub fn is_good_solution(f: &RatMap, p: &RatMap, g: &RatMap, q_: &RatMap) -> Result<bool> {
    if f.compose(p) != g.compose(q_) {
        return pre("f o p differs from g o q");
    }
    let conds = [
        separated_irreducible(f, g),
        generates_field(p, q_),
        f.degree() == q_.degree() && g.degree() == p.degree(),
    ];
    match conds.iter().filter(|c| **c).count() {
        3 => Ok(true),
        2 => Err(Error::TheoremViolation(format!("exactly two good-solution conditions hold: {:?}", conds))),
        _ => Ok(false),
    }
}
