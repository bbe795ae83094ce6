//! Curves in P^1 x P^1: separated-variable curves, implicitization,
//! images under (A1, A2), orbit scans and genus of separated curves.

use std::fmt;
use std::sync::OnceLock;

use num_integer::Integer;

use crate::algebra::bifactor::factor_bivariate;
use crate::algebra::bipoly::{resultant_x, BiPoly};
use crate::algebra::field::{q, Q};
use crate::algebra::place::{critical_values, fiber_partition, Place};
use crate::algebra::poly::{interpolate, sample_point, Poly};
use crate::algebra::ratmap::RatMap;
use crate::decompose::separated_numerator;
use crate::error::{pre, Error, Result};

/// A squarefree, primitive curve equation F(x, y) = 0, sign-normalized.
#[derive(Clone, Debug)]
pub struct BiCurve {
    poly: BiPoly,
    factors: OnceLock<Vec<(BiPoly, usize)>>,
}

impl PartialEq for BiCurve {
    fn eq(&self, o: &Self) -> bool {
        self.poly == o.poly
    }
}

impl Eq for BiCurve {}

impl fmt::Display for BiCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.poly)
    }
}

impl BiCurve {
    pub fn new(p: &BiPoly) -> Result<Self> {
        if p.is_zero() || p.is_constant() {
            return pre("curve equation is constant");
        }
        Ok(BiCurve { poly: p.squarefree_part(), factors: OnceLock::new() })
    }

    /// The line x = a.
    pub fn vertical(a: Q) -> Self {
        BiCurve::new(&BiPoly::from_x_poly(&Poly::new(vec![-a, q(1)]))).unwrap()
    }

    /// The line y = b.
    pub fn horizontal(b: Q) -> Self {
        BiCurve::new(&BiPoly::from_y_poly(Poly::new(vec![-b, q(1)]))).unwrap()
    }

    pub fn poly(&self) -> &BiPoly {
        &self.poly
    }

    /// (degree in x, degree in y).
    pub fn bidegree(&self) -> (usize, usize) {
        (self.poly.deg_x(), self.poly.deg_y())
    }

    /// Irreducible factors over Q, computed once.
    pub fn factors(&self) -> &[(BiPoly, usize)] {
        self.factors.get_or_init(|| factor_bivariate(&self.poly))
    }

    pub fn is_irreducible(&self) -> bool {
        self.factors().len() == 1
    }

    pub fn components(&self) -> Vec<BiCurve> {
        self.factors().iter().map(|(f, _)| BiCurve::new(f).unwrap()).collect()
    }

    pub fn transpose(&self) -> BiCurve {
        BiCurve::new(&self.poly.transpose()).unwrap()
    }

    pub fn contains_component(&self, c: &BiCurve) -> bool {
        c.poly.divides(&self.poly)
    }
}

/// Y1(x) - Y2(y) = 0.
pub fn separated_curve(y1: &RatMap, y2: &RatMap) -> Result<BiCurve> {
    if y1.is_constant() || y2.is_constant() {
        return pre("separated curve needs nonconstant maps");
    }
    BiCurve::new(&separated_numerator(y1, y2))
}

/// Res_x(f(x, y), s D(x) - N(x)) as a polynomial in (y, s).
fn eliminate_linear(f: &BiPoly, n: &Poly<Q>, d: &Poly<Q>) -> BiPoly {
    if f.deg_x() == 0 {
        return BiPoly::from_x_poly(&f.row(0));
    }
    let k = n.deg().max(d.deg());
    let need = f.deg_x() + 1;
    let mut ss = Vec::with_capacity(need);
    let mut vals: Vec<Poly<Q>> = Vec::with_capacity(need);
    let mut i = 0;
    while ss.len() < need {
        let s = q(sample_point(i));
        i += 1;
        let g = &d.scale(&s) - n;
        if g.deg() != k || g.is_zero() {
            continue;
        }
        vals.push(resultant_x(f, &BiPoly::from_x_poly(&g)).expect("positive degrees"));
        ss.push(s);
    }
    let top = vals.iter().map(|v| v.coeffs().len()).max().unwrap_or(0);
    let rows = (0..top)
        .map(|j| {
            let ys: Vec<Q> = vals.iter().map(|v| v.coeff(j)).collect();
            interpolate(&ss, &ys)
        })
        .collect();
    BiPoly::new(rows)
}

/// Closure of the image of t -> (X1(t), X2(t)).
pub fn implicitize(x1: &RatMap, x2: &RatMap) -> Result<BiCurve> {
    if x1.is_constant() || x2.is_constant() {
        return pre("parametrization has a constant coordinate");
    }
    // N2(t) - y D2(t), with t in the x slot.
    let f = &BiPoly::outer(x2.num(), &Poly::one()) - &BiPoly::outer(x2.den(), &Poly::x());
    BiCurve::new(&eliminate_linear(&f, x1.num(), x1.den()).transpose())
}

fn image_component(c: &BiPoly, a1: &RatMap, a2: &RatMap) -> Result<BiPoly> {
    let r1 = eliminate_linear(c, a1.num(), a1.den());
    let p = eliminate_linear(&r1, a2.num(), a2.den());
    if p.is_zero() || p.is_constant() {
        return pre("image lies on a line at infinity");
    }
    // Certificate: the image factor F has C | F(A1(x), A2(y)).
    let mut found = Vec::new();
    for (g, _) in factor_bivariate(&p.squarefree_part()) {
        if c.divides(&g.substitute(a1.num(), a1.den(), a2.num(), a2.den())) {
            found.push(g);
        }
    }
    match found.len() {
        1 => Ok(found.pop().unwrap()),
        k => Err(Error::TheoremViolation(format!("{} factors pass the image certificate", k))),
    }
}

/// (A1, A2)(C), componentwise.
pub fn image_curve(c: &BiCurve, a1: &RatMap, a2: &RatMap) -> Result<BiCurve> {
    if a1.is_constant() || a2.is_constant() {
        return pre("image under a constant map");
    }
    let mut acc = BiPoly::constant(q(1));
    for comp in c.components() {
        acc = &acc * &image_component(comp.poly(), a1, a2)?;
    }
    BiCurve::new(&acc)
}

pub fn is_invariant(c: &BiCurve, a1: &RatMap, a2: &RatMap) -> Result<bool> {
    Ok(image_curve(c, a1, a2)? == *c)
}

/// Least n <= max_n with (A1, A2)^n (C) = C.
pub fn periodicity(c: &BiCurve, a1: &RatMap, a2: &RatMap, max_n: usize) -> Result<Option<usize>> {
    let mut cur = c.clone();
    for n in 1..=max_n {
        cur = image_curve(&cur, a1, a2)?;
        if cur == *c {
            return Ok(Some(n));
        }
    }
    Ok(None)
}

/// Least (l, n) with l <= max_l, n <= max_n and C_{l+n} = C_l.
pub fn preperiodicity(
    c: &BiCurve,
    a1: &RatMap,
    a2: &RatMap,
    max_l: usize,
    max_n: usize,
) -> Result<Option<(usize, usize)>> {
    let mut orbit = vec![c.clone()];
    for _ in 0..max_l + max_n {
        let next = image_curve(orbit.last().unwrap(), a1, a2)?;
        orbit.push(next);
    }
    for l in 0..=max_l {
        if let Some(n) = (1..=max_n).find(|n| orbit[l + n] == orbit[l]) {
            return Ok(Some((l, n)));
        }
    }
    Ok(None)
}

/// Genus of the smooth model of Y1(x) = Y2(y), assumed irreducible:
/// 2 - 2g = 2pq - sum over points c of sum over pairs (a, b) of local
/// degrees above c of (ab - gcd(a, b)).
pub fn genus_separated(y1: &RatMap, y2: &RatMap) -> Result<usize> {
    let curve = separated_curve(y1, y2)?;
    if !curve.is_irreducible() {
        return Err(Error::ReducibleCurve(curve.components().iter().map(|c| c.to_string()).collect()));
    }
    let (p, qd) = (y1.degree() as i64, y2.degree() as i64);
    let mut places: Vec<Place> = critical_values(y1);
    places.extend(critical_values(y2));
    places.push(Place::Infinity);
    places.sort();
    places.dedup();
    let mut sum = 0i64;
    for c in &places {
        let (f1, f2) = (fiber_partition(y1, c), fiber_partition(y2, c));
        let mut per_point = 0i64;
        for (a, na) in &f1 {
            for (b, nb) in &f2 {
                per_point += (*na * *nb) as i64 * ((a * b) as i64 - a.gcd(b) as i64);
            }
        }
        sum += per_point * c.degree() as i64;
    }
    let twice = sum - 2 * p * qd + 2;
    debug_assert!(twice >= 0 && twice % 2 == 0);
    Ok((twice / 2) as usize)
}

/// Outcome of checking X_i o Y_i = A_i^n and Y_1 o X_1 = Y_2 o X_2.
#[derive(Clone, Debug)]
pub struct Theorem2Report {
    /// Y1 o X1, the map B of the commuting square.
    pub b: RatMap,
    /// Identities that fail, one line each.
    pub failures: Vec<String>,
    /// Image of t -> (X1(t), X2(t)).
    pub curve: BiCurve,
    /// Whether that curve is a component of Y1(x) = Y2(y).
    pub is_component: bool,
}

impl Theorem2Report {
    pub fn ok(&self) -> bool {
        self.failures.is_empty() && self.is_component
    }
}

pub fn curve_from_theorem2(
    x: [&RatMap; 2],
    y: [&RatMap; 2],
    a: [&RatMap; 2],
    n: usize,
) -> Result<Theorem2Report> {
    if x.iter().chain(y.iter()).any(|m| m.is_constant()) || n == 0 {
        return pre("nonconstant X_i, Y_i and n >= 1 required");
    }
    let mut failures = Vec::new();
    for i in 0..2 {
        let an = a[i].iterate(n);
        if x[i].compose(y[i]) != an {
            failures.push(format!("X{0} o Y{0} != A{0}^{1}", i + 1, n));
        }
    }
    let b = y[0].compose(x[0]);
    if y[1].compose(x[1]) != b {
        failures.push("Y1 o X1 != Y2 o X2".to_string());
    }
    for i in 0..2 {
        if x[i].compose(&b) != a[i].iterate(n).compose(x[i]) {
            failures.push(format!("X{0} o B != A{0}^{1} o X{0}", i + 1, n));
        }
    }
    let curve = implicitize(x[0], x[1])?;
    let is_component = separated_curve(y[0], y[1])?.contains_component(&curve);
    Ok(Theorem2Report { b, failures, curve, is_component })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ratmap::chebyshev;

    fn z(n: i64) -> RatMap {
        RatMap::monomial(n)
    }

    fn p(c: &[i64]) -> RatMap {
        RatMap::from_ints(c)
    }

    fn curve(terms: &[(usize, usize, i64)]) -> BiCurve {
        BiCurve::new(&BiPoly::from_int_terms(terms)).unwrap()
    }

    fn diagonal() -> BiCurve {
        curve(&[(1, 0, 1), (0, 1, -1)])
    }

    #[test]
    fn separated() {
        assert_eq!(separated_curve(&z(3), &z(2)).unwrap(), curve(&[(3, 0, 1), (0, 2, -1)]));
        let c = separated_curve(&z(2), &z(2)).unwrap();
        assert_eq!(c, curve(&[(2, 0, 1), (0, 2, -1)]));
        assert_eq!(c.components().len(), 2);
        assert_eq!(separated_curve(&z(-1), &z(1)).unwrap(), curve(&[(1, 1, 1), (0, 0, -1)]));
    }

    #[test]
    fn implicitization() {
        assert_eq!(implicitize(&z(2), &z(3)).unwrap(), curve(&[(3, 0, 1), (0, 2, -1)]));
        assert_eq!(implicitize(&z(1), &z(1)).unwrap(), diagonal());
        assert_eq!(implicitize(&z(2), &z(2)).unwrap(), diagonal());
        let f = p(&[1, 0, 3]);
        assert_eq!(implicitize(&z(1), &f).unwrap().bidegree(), (2, 1));
        assert!(implicitize(&RatMap::constant(q(1)), &z(1)).is_err());
    }

    #[test]
    fn images() {
        let a = p(&[-1, 0, 1]);
        assert_eq!(image_curve(&diagonal(), &a, &a).unwrap(), diagonal());
        // Graph x = y^2 maps to itself under (z^2, z^2).
        let graph = curve(&[(1, 0, 1), (0, 2, -1)]);
        assert_eq!(image_curve(&graph, &z(2), &z(2)).unwrap(), graph);
        let hyper = curve(&[(1, 1, 1), (0, 0, -1)]);
        assert_eq!(image_curve(&hyper, &z(2), &z(2)).unwrap(), hyper);
        let anti = curve(&[(1, 0, 1), (0, 1, 1)]);
        assert_eq!(image_curve(&anti, &z(2), &z(2)).unwrap(), diagonal());
    }

    #[test]
    fn orbits() {
        let a = p(&[1, 2, 1]);
        assert_eq!(is_invariant(&diagonal(), &a, &a), Ok(true));
        let anti = curve(&[(1, 0, 1), (0, 1, 1)]);
        assert_eq!(is_invariant(&anti, &z(2), &z(2)), Ok(false));
        assert_eq!(periodicity(&anti, &z(2), &z(2), 3), Ok(None));
        assert_eq!(preperiodicity(&anti, &z(2), &z(2), 2, 3), Ok(Some((1, 1))));
        assert_eq!(is_invariant(&BiCurve::vertical(q(0)), &z(2), &p(&[1, 1, 1])), Ok(true));
        assert_eq!(is_invariant(&BiCurve::vertical(q(2)), &z(2), &z(2)), Ok(false));
    }

    #[test]
    fn genus() {
        assert_eq!(genus_separated(&z(3), &z(2)), Ok(0));
        assert_eq!(genus_separated(&p(&[0, -1, 0, 1]), &z(2)), Ok(1));
        assert!(matches!(genus_separated(&z(2), &z(2)), Err(Error::ReducibleCurve(v)) if v.len() == 2));
        assert_eq!(genus_separated(&chebyshev(3), &chebyshev(2)), Ok(0));
    }

    #[test]
    fn theorem2_reports() {
        let (a, x, y) = (p(&[1, 2, 1]), z(2), p(&[1, 1]));
        let r = curve_from_theorem2([&x, &x], [&y, &y], [&a, &a], 1).unwrap();
        assert!(r.ok());
        assert_eq!(r.b, p(&[1, 0, 1]));
        assert_eq!(r.curve, diagonal());
        let r = curve_from_theorem2([&x, &x], [&y, &z(1)], [&a, &a], 1).unwrap();
        assert!(!r.failures.is_empty());
        assert!(curve_from_theorem2([&x, &RatMap::constant(q(0))], [&y, &y], [&a, &a], 1).is_err());
    }
}
