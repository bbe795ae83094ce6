//! Invariant, periodic and preperiodic curves of (A1, A2) of bounded
//! bidegree, found from decompositions of iterates.
//!
//! Bidegree is (degree in x, degree in y). A faithful parametrization
//! t -> (X1(t), X2(t)) has bidegree (deg X2, deg X1).

use crate::algebra::field::Q;
use crate::algebra::poly::Poly;
use crate::algebra::ratmap::RatMap;
use crate::classify::mobius::{find_conjugacy, mobius_commutant};
use crate::classify::theta::theta;
use crate::classify::{classify, maximal_orbifold, SpecialClass};
use crate::curves::{implicitize, is_invariant, periodicity, preperiodicity, separated_curve, BiCurve};
use crate::decompose::{all_left_factors, left_divide, right_divide};
use crate::error::{pre, Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    /// (d1, d2): degree in x and degree in y.
    pub bidegree: (usize, usize),
    /// Largest iterate A^N whose left factors are enumerated.
    pub iterate_cap: usize,
    pub include_lines: bool,
    /// Keep one certificate per curve instead of every parametrization.
    pub dedup_by_symmetry: bool,
}

impl SearchConfig {
    pub fn new(d1: usize, d2: usize, iterate_cap: usize) -> Self {
        SearchConfig { bidegree: (d1, d2), iterate_cap, include_lines: true, dedup_by_symmetry: true }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Completeness {
    Complete,
    CompleteUpToCap(usize),
    Inconclusive(String),
}

impl Completeness {
    fn downgrade(&mut self, why: String) {
        if !matches!(self, Completeness::Inconclusive(_)) {
            *self = Completeness::Inconclusive(why);
        }
    }
}

/// X1 o B = A1^n o X1 and X2 o B = A2^n o X2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub x1: RatMap,
    pub x2: RatMap,
    pub b: RatMap,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FoundCurve {
    pub curve: BiCurve,
    pub certificate: Certificate,
    /// Least n with (A1, A2)^n (C) = C.
    pub period: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchReport {
    pub curves: Vec<FoundCurve>,
    /// x = a and y = b for rational fixed points a of A1 and b of A2.
    pub lines: Vec<BiCurve>,
    pub completeness: Completeness,
}

impl SearchReport {
    pub fn curve_set(&self) -> Vec<BiCurve> {
        let mut v: Vec<BiCurve> = self.curves.iter().map(|c| c.curve.clone()).collect();
        v.sort_by_key(|c| c.to_string());
        v.dedup();
        v
    }

    fn push(&mut self, found: FoundCurve, dedup: bool) {
        if !dedup || !self.curves.iter().any(|c| c.curve == found.curve) {
            self.curves.push(found);
        }
    }

    fn finish(mut self) -> Self {
        self.curves.sort_by_key(|c| (c.period, c.curve.to_string()));
        self.lines.sort_by_key(|c| c.to_string());
        self.lines.dedup();
        self
    }
}

fn rational_fixed_points(a: &RatMap) -> Vec<Q> {
    (a.num() - &(a.den() * &Poly::x())).rational_roots()
}

fn fixed_lines(a1: &RatMap, a2: &RatMap) -> Vec<BiCurve> {
    let mut out: Vec<BiCurve> = rational_fixed_points(a1).into_iter().map(BiCurve::vertical).collect();
    out.extend(rational_fixed_points(a2).into_iter().map(BiCurve::horizontal));
    out
}

/// CompleteUpToCap(n) for non-special, non-generalized-Lattes inputs.
fn completeness_for(maps: &[&RatMap], n: usize) -> Completeness {
    for a in maps {
        match classify(a) {
            Ok(SpecialClass::NonSpecialNonGL) => {}
            Ok(c) => return Completeness::Inconclusive(format!("{} is {}; only verified curves are listed", a, c.tag())),
            Err(e) => return Completeness::Inconclusive(format!("classification of {} failed: {}", a, e)),
        }
    }
    Completeness::CompleteUpToCap(n)
}

/// Every U with U o B = A o U among mu-twists X o mu of X.
fn twists_into(x: &RatMap, b: &RatMap, a: &RatMap, report: &mut Completeness) -> Vec<RatMap> {
    // X o mu o B = A o X o mu iff mu o B o mu^-1 = B' with X o B' = A o X.
    let mut out = Vec::new();
    for b2 in left_divide(&a.compose(x), x) {
        let mu = match find_conjugacy(&b2, b) {
            Ok(Some(mu)) => mu,
            Ok(None) => continue,
            Err(e) => {
                report.downgrade(format!("conjugacy test: {}", e));
                continue;
            }
        };
        let g = mobius_commutant(b);
        if !g.complete {
            report.downgrade(format!("commutant of {} is partial", b));
        }
        for gm in g.elements {
            let u = x.compose(&mu).compose(&gm);
            if !out.contains(&u) {
                out.push(u);
            }
        }
    }
    out
}

/// Curves C with (A1, A2)(C) = C built from left factors of A_i^N. Only
/// curves of exactly the configured bidegree are kept: a pair that is not
/// generically one-to-one collapses to a curve of smaller bidegree.
pub fn find_invariant_curves(a1: &RatMap, a2: &RatMap, cfg: &SearchConfig) -> Result<SearchReport> {
    let (d1, d2) = cfg.bidegree;
    if a1.degree() < 2 || a2.degree() < 2 || d1 == 0 || d2 == 0 || cfg.iterate_cap == 0 {
        return pre("search needs degrees >= 2, positive bidegree and iterate cap");
    }
    let mut report = SearchReport {
        curves: Vec::new(),
        lines: if cfg.include_lines { fixed_lines(a1, a2) } else { Vec::new() },
        completeness: completeness_for(&[a1, a2], cfg.iterate_cap),
    };
    if a1.degree() != a2.degree() {
        return Ok(report.finish());
    }
    let n = cfg.iterate_cap;
    let (f1, f2) = (a1.iterate(n), a2.iterate(n));
    if f1.degree() % d2 != 0 || f2.degree() % d1 != 0 {
        return Ok(report.finish());
    }
    let cap = |e: Error, rep: &mut SearchReport| match e {
        Error::Inconclusive(m) => {
            rep.completeness.downgrade(m);
            Ok(Vec::new())
        }
        e => Err(e),
    };
    let xs1 = all_left_factors(&f1, d2).or_else(|e| cap(e, &mut report))?;
    let xs2 = all_left_factors(&f2, d1).or_else(|e| cap(e, &mut report))?;
    for x1 in &xs1 {
        for b in left_divide(&a1.compose(x1), x1) {
            for x2 in &xs2 {
                for u2 in twists_into(x2, &b, a2, &mut report.completeness) {
                    let curve = implicitize(x1, &u2)?;
                    if curve.bidegree() != cfg.bidegree {
                        continue;
                    }
                    if !is_invariant(&curve, a1, a2)? {
                        return Err(Error::TheoremViolation(format!("{} fails invariance", curve)));
                    }
                    let certificate = Certificate { x1: x1.clone(), x2: u2, b: b.clone() };
                    report.push(FoundCurve { curve, certificate, period: 1 }, cfg.dedup_by_symmetry);
                }
            }
        }
    }
    Ok(report.finish())
}

/// Curves with (A1, A2)^n (C) = C for some n <= period_cap, each labelled
/// with its least period.
pub fn find_periodic_curves(a1: &RatMap, a2: &RatMap, cfg: &SearchConfig, period_cap: usize) -> Result<SearchReport> {
    if period_cap == 0 {
        return pre("period cap must be positive");
    }
    let mut out = SearchReport {
        curves: Vec::new(),
        lines: Vec::new(),
        completeness: Completeness::CompleteUpToCap(cfg.iterate_cap),
    };
    for n in 1..=period_cap {
        let sub = SearchConfig { iterate_cap: cfg.iterate_cap.div_ceil(n), ..cfg.clone() };
        let r = find_invariant_curves(&a1.iterate(n), &a2.iterate(n), &sub)?;
        if let Completeness::Inconclusive(m) = r.completeness {
            out.completeness.downgrade(m);
        }
        out.lines.extend(r.lines);
        for mut found in r.curves {
            if out.curves.iter().any(|c| c.curve == found.curve) {
                continue;
            }
            found.period = periodicity(&found.curve, a1, a2, n)?
                .ok_or_else(|| Error::TheoremViolation(format!("{} is not periodic", found.curve)))?;
            out.curves.push(found);
        }
    }
    Ok(out.finish())
}

/// Component of Y1(x) = Y2(y) with its (tail, period), if found in caps.
pub type ComponentOrbit = (BiCurve, Option<(usize, usize)>);

/// Components of Y1(x) = Y2(y), after checking that X_i o Y_i = A_i^n and
/// Y1 o X1 = Y2 o X2 for some n <= iterate_cap.
pub fn find_preperiodic_components(
    a1: &RatMap,
    a2: &RatMap,
    y1: &RatMap,
    y2: &RatMap,
    iterate_cap: usize,
    orbit_caps: (usize, usize),
) -> Result<Vec<ComponentOrbit>> {
    let ok = (1..=iterate_cap).any(|n| {
        match (right_divide(&a1.iterate(n), y1), right_divide(&a2.iterate(n), y2)) {
            (Some(x1), Some(x2)) => x1.compose(y1) == a1.iterate(n) && y1.compose(&x1) == y2.compose(&x2),
            _ => false,
        }
    });
    if !ok {
        return pre(format!("no n <= {} with X_i o Y_i = A_i^n and Y1 o X1 = Y2 o X2", iterate_cap));
    }
    let mut out = Vec::new();
    for c in separated_curve(y1, y2)?.components() {
        let orbit = preperiodicity(&c, a1, a2, orbit_caps.0, orbit_caps.1)?;
        out.push((c, orbit));
    }
    Ok(out)
}

/// X = theta of the maximal orbifold of A and B with X o B = A o X and
/// trivial maximal orbifold.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaloisLift {
    pub x: RatMap,
    pub b: RatMap,
}

pub fn galois_lift(a: &RatMap) -> Result<GaloisLift> {
    let o = maximal_orbifold(a)?;
    if o.is_trivial() {
        return Err(Error::NotDefined(format!("{} is not a generalized Lattes map", a)));
    }
    let x = theta(&o)?;
    for b in left_divide(&a.compose(&x), &x) {
        match maximal_orbifold(&b) {
            Ok(ob) if ob.is_trivial() => return Ok(GaloisLift { x, b }),
            _ => continue,
        }
    }
    Err(Error::TheoremViolation(format!("no lift of {} through {} has trivial maximal orbifold", a, x)))
}

/// Lifts of both maps; curves for (A1, A2) are (X1, X2)-images of curves
/// for (B1, B2).
pub fn reduce_via_theorem3(a1: &RatMap, a2: &RatMap) -> Result<[GaloisLift; 2]> {
    Ok([galois_lift(a1)?, galois_lift(a2)?])
}

/// U with U o A = A o U and A^n = V o U = U o V for some V commuting with A.
fn commuting_factors(a: &RatMap, an: &RatMap, k: usize, report: &mut Completeness) -> Result<Vec<RatMap>> {
    if !an.degree().is_multiple_of(k) {
        return Ok(Vec::new());
    }
    let xs = match all_left_factors(an, k) {
        Ok(xs) => xs,
        Err(Error::Inconclusive(m)) => {
            report.downgrade(m);
            return Ok(Vec::new());
        }
        Err(e) => return Err(e),
    };
    let mut out = Vec::new();
    for x in xs {
        for u in twists_into(&x, a, a, report) {
            let keep = left_divide(an, &u)
                .iter()
                .any(|v| v.compose(&u) == *an && v.compose(a) == a.compose(v));
            if keep && !out.contains(&u) {
                out.push(u);
            }
        }
    }
    Ok(out)
}

/// Invariant curves of (A, A) parametrized by (U1, U2) with U_i commuting
/// with A and U_i o V_i = V_i o U_i = A^n, n <= iterate cap.
pub fn commuting_route(a: &RatMap, cfg: &SearchConfig) -> Result<SearchReport> {
    let (d1, d2) = cfg.bidegree;
    if a.degree() < 2 || d1 == 0 || d2 == 0 || cfg.iterate_cap == 0 {
        return pre("search needs degree >= 2, positive bidegree and iterate cap");
    }
    let mut report = SearchReport {
        curves: Vec::new(),
        lines: if cfg.include_lines { fixed_lines(a, a) } else { Vec::new() },
        completeness: completeness_for(&[a], cfg.iterate_cap),
    };
    for n in 1..=cfg.iterate_cap {
        let an = a.iterate(n);
        let us1 = commuting_factors(a, &an, d2, &mut report.completeness)?;
        let us2 = commuting_factors(a, &an, d1, &mut report.completeness)?;
        for u1 in &us1 {
            for u2 in &us2 {
                let curve = implicitize(u1, u2)?;
                if curve.bidegree() != cfg.bidegree {
                    continue;
                }
                if !is_invariant(&curve, a, a)? {
                    return Err(Error::TheoremViolation(format!("{} fails invariance", curve)));
                }
                let certificate = Certificate { x1: u1.clone(), x2: u2.clone(), b: a.clone() };
                report.push(FoundCurve { curve, certificate, period: 1 }, cfg.dedup_by_symmetry);
            }
        }
    }
    Ok(report.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::bipoly::BiPoly;
    use crate::algebra::field::q;

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
    fn invariant_graphs() {
        let a = p(&[1, 2, 1]);
        let r = find_invariant_curves(&a, &a, &SearchConfig::new(1, 1, 2)).unwrap();
        assert_eq!(r.curve_set(), vec![diagonal()]);
        assert_eq!(r.completeness, Completeness::CompleteUpToCap(2));
        let r = find_invariant_curves(&a, &a, &SearchConfig::new(1, 2, 2)).unwrap();
        // x - (y + 1)^2
        assert_eq!(r.curve_set(), vec![curve(&[(1, 0, 1), (0, 2, -1), (0, 1, -2), (0, 0, -1)])]);
        let c = &r.curves[0].certificate;
        assert_eq!(c.x1.compose(&c.b), a.compose(&c.x1));
    }

    #[test]
    fn special_stress() {
        let r = find_invariant_curves(&z(2), &z(2), &SearchConfig::new(1, 1, 1)).unwrap();
        assert_eq!(r.curve_set(), {
            let mut v = vec![diagonal(), curve(&[(1, 1, 1), (0, 0, -1)])];
            v.sort_by_key(|c| c.to_string());
            v
        });
        assert!(matches!(r.completeness, Completeness::Inconclusive(_)));
        assert!(r.lines.contains(&BiCurve::vertical(q(0))) && r.lines.contains(&BiCurve::horizontal(q(1))));
    }

    #[test]
    fn unequal_degrees_give_lines_only() {
        let r = find_invariant_curves(&p(&[1, 2, 1]), &p(&[0, 3, 0, 1]), &SearchConfig::new(1, 1, 1)).unwrap();
        assert!(r.curves.is_empty());
        assert_eq!(r.lines, vec![BiCurve::horizontal(q(0))]);
    }

    #[test]
    fn period_two_curves() {
        // A odd, so (A, -A) swaps the diagonal and the antidiagonal graphs.
        let a = p(&[0, 2, 0, 1]);
        let r = find_periodic_curves(&a, &a.neg(), &SearchConfig::new(1, 1, 1), 2).unwrap();
        let anti = curve(&[(1, 0, 1), (0, 1, 1)]);
        let got: Vec<(BiCurve, usize)> = r.curves.iter().map(|c| (c.curve.clone(), c.period)).collect();
        assert!(got.contains(&(diagonal(), 2)) && got.contains(&(anti, 2)));
        assert!(got.iter().all(|(_, n)| *n == 2));
    }

    #[test]
    fn preperiodic_components() {
        let a = p(&[1, 2, 1]);
        let comps = find_preperiodic_components(&a, &a, &p(&[1, 1]), &p(&[1, 1]), 2, (2, 2)).unwrap();
        assert_eq!(comps, vec![(diagonal(), Some((0, 1)))]);
        let comps = find_preperiodic_components(&a, &a, &a, &a, 2, (2, 2)).unwrap();
        assert_eq!(comps.len(), 2);
        assert!(comps.contains(&(diagonal(), Some((0, 1)))));
        assert!(comps.contains(&(curve(&[(1, 0, 1), (0, 1, 1), (0, 0, 2)]), Some((1, 1)))));
        assert!(find_preperiodic_components(&a, &a, &p(&[1, 1]), &p(&[2, 1]), 2, (2, 2)).is_err());
    }

    #[test]
    fn lifts_through_galois_coverings() {
        // A(w) = w (w + 1)^2 lifts through z^2 to B = z^3 + z.
        let a = p(&[0, 1, 2, 1]);
        let [l1, l2] = reduce_via_theorem3(&a, &a).unwrap();
        assert_eq!(l1, l2);
        assert_eq!(l1.x, z(2));
        assert_eq!(l1.x.compose(&l1.b), a.compose(&l1.x));
        assert!(maximal_orbifold(&l1.b).unwrap().is_trivial());
        assert!(matches!(galois_lift(&p(&[1, 2, 1])), Err(Error::NotDefined(_))));
    }

    #[test]
    fn routes_agree() {
        let a = p(&[1, 2, 1]);
        for (d1, d2) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
            let cfg = SearchConfig::new(d1, d2, 2);
            let direct = find_invariant_curves(&a, &a, &cfg).unwrap();
            let commuting = commuting_route(&a, &cfg).unwrap();
            assert_eq!(direct.curve_set(), commuting.curve_set(), "bidegree ({}, {})", d1, d2);
        }
    }
}
