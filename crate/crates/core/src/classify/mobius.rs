//! Finite groups of Mobius transformations attached to a rational map:
//! G1(B) = {mu : B o mu = B} and G2(B) = {mu : mu^-1 o B o mu = B}.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::algebra::bipoly::BiPoly;
use crate::algebra::field::{q, Q};
use crate::algebra::place::{critical_points, critical_values, fiber_decomposition, image_set, local_degree, Place, PointSet};
use crate::algebra::poly::{sample_point, Poly};
use crate::algebra::ratmap::{mobius_three_point, mobius_to_standard, Pt, RatMap};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MobiusGroup {
    /// Sorted by printed form; always contains the identity.
    pub elements: Vec<RatMap>,
    /// False when the search could not pin down every element.
    pub complete: bool,
}

impl MobiusGroup {
    fn from_elements(mut elements: Vec<RatMap>, complete: bool) -> Self {
        if !elements.contains(&RatMap::identity()) {
            elements.push(RatMap::identity());
        }
        elements.sort_by_key(|m| m.to_string());
        elements.dedup();
        MobiusGroup { elements, complete }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, m: &RatMap) -> bool {
        self.elements.contains(m)
    }

    /// Closure under composition and inverse.
    pub fn is_group(&self) -> bool {
        self.contains(&RatMap::identity())
            && self.elements.iter().all(|a| a.inverse().is_some_and(|i| self.contains(&i)))
            && self.elements.iter().all(|a| self.elements.iter().all(|b| self.contains(&a.compose(b))))
    }
}

fn rational_points(s: &PointSet) -> Vec<Pt> {
    let mut v: Vec<Pt> = s.fin.rational_roots().into_iter().map(Some).collect();
    if s.inf {
        v.push(None);
    }
    v
}

/// Images of three points, each chosen from its candidate list.
fn triples(points: &[Pt; 3], cands: &[Vec<Pt>; 3]) -> Vec<RatMap> {
    let mut out = Vec::new();
    for w0 in &cands[0] {
        for w1 in cands[1].iter().filter(|w| *w != w0) {
            for w2 in cands[2].iter().filter(|w| *w != w0 && *w != w1) {
                if let Ok(m) = mobius_three_point([&points[0], &points[1], &points[2]], [w0, w1, w2]) {
                    out.push(m);
                }
            }
        }
    }
    out
}

/// G1(B): mu maps each point to a rational point of its fiber with the
/// same local degree.
pub fn mobius_left_stabilizer(b: &RatMap) -> MobiusGroup {
    if b.degree() <= 1 {
        return MobiusGroup::from_elements(vec![], true);
    }
    let mut scored: Vec<(usize, Pt, Vec<Pt>)> = (0..8)
        .map(|i| {
            let z: Pt = Some(q(sample_point(i)));
            let v = Place::from_pt(&b.eval(&z));
            let e = local_degree(b, &Place::from_pt(&z)).0;
            let cands: Vec<Pt> = fiber_decomposition(b, &v)
                .into_iter()
                .filter(|(_, k)| *k == e)
                .flat_map(|(s, _)| rational_points(&s))
                .collect();
            (cands.len(), z, cands)
        })
        .collect();
    scored.sort_by_key(|s| s.0);
    let points = [scored[0].1.clone(), scored[1].1.clone(), scored[2].1.clone()];
    let cands = [scored[0].2.clone(), scored[1].2.clone(), scored[2].2.clone()];
    let found: Vec<RatMap> = triples(&points, &cands).into_iter().filter(|m| b.compose(m) == *b).collect();
    MobiusGroup::from_elements(found, true)
}

/// Invariants preserved by every mu in G2(B).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
struct Label {
    fixed: bool,
    period_two: bool,
    local_degree: usize,
    critical_value: bool,
    maps_to_critical_value: bool,
    image_of_critical_value: bool,
}

fn fixed_points(b: &RatMap) -> PointSet {
    let mut s = PointSet::from_poly(&(b.num() - &(b.den() * &Poly::x())));
    s.inf = b.eval_inf().is_none();
    s
}

/// Rational points that any conjugacy must permute, with their labels.
fn labelled_points(b: &RatMap) -> Vec<(Pt, Label)> {
    let cv = point_set_of(&critical_values(b));
    let cv_image = image_set(b, &cv);
    let crit = critical_points(b);
    let b2 = b.compose(b);
    let mut pts: Vec<Pt> = Vec::new();
    for s in [fixed_points(b), fixed_points(&b2), crit, cv.clone(), cv_image.clone()] {
        pts.extend(rational_points(&s));
    }
    for v in rational_points(&cv) {
        for (s, _) in fiber_decomposition(b, &Place::from_pt(&v)) {
            pts.extend(rational_points(&s));
        }
    }
    pts.sort();
    pts.dedup();
    let label = |p: &Pt| {
        let pl = Place::from_pt(p);
        let bp = Place::from_pt(&b.eval(p));
        Label {
            fixed: b.eval(p) == *p,
            period_two: b2.eval(p) == *p,
            local_degree: local_degree(b, &pl).0,
            critical_value: cv.contains(&pl),
            maps_to_critical_value: cv.contains(&bp),
            image_of_critical_value: cv_image.contains(&pl),
        }
    };
    pts.iter().map(|p| (p.clone(), label(p))).collect()
}

fn label_classes(labels: &[(Pt, Label)]) -> BTreeMap<Label, Vec<Pt>> {
    let mut classes: BTreeMap<Label, Vec<Pt>> = BTreeMap::new();
    for (p, l) in labels {
        classes.entry(l.clone()).or_default().push(p.clone());
    }
    classes
}

/// G2(B) from labelled rational points. With only two labelled points the
/// conjugation is solved in normal form; with fewer the group is partial.
pub fn mobius_commutant(b: &RatMap) -> MobiusGroup {
    assert!(b.degree() >= 2, "commutant needs degree two or more");
    let labels = labelled_points(b);
    let classes = label_classes(&labels);
    let commutes = |m: &RatMap| m.compose(b) == b.compose(m);
    match labels.len() {
        0 | 1 => MobiusGroup::from_elements(vec![], false),
        2 => {
            let (p1, p2) = (&labels[0].0, &labels[1].0);
            let c = spare_point(&[p1, p2]);
            let nu = mobius_to_standard(p1, &c, p2).unwrap();
            let nb = b.conjugate(&nu);
            let nu_inv = nu.inverse().unwrap();
            let mut found = Vec::new();
            let mut forms: Vec<(bool, Vec<Q>)> = vec![(false, scalings(&nb, false))];
            if labels[0].1 == labels[1].1 {
                forms.push((true, scalings(&nb, true)));
            }
            for (swap, ks) in forms {
                for k in ks {
                    let m = if swap {
                        RatMap::mobius(Q::zero(), k, q(1), Q::zero())
                    } else {
                        RatMap::mobius(k, Q::zero(), Q::zero(), q(1))
                    };
                    let mu = nu_inv.compose(&m.unwrap()).compose(&nu);
                    if commutes(&mu) {
                        found.push(mu);
                    }
                }
            }
            MobiusGroup::from_elements(found, true)
        }
        _ => {
            // Three points from the smallest classes keep the product small.
            let mut order: Vec<&(Pt, Label)> = labels.iter().collect();
            order.sort_by_key(|(_, l)| classes[l].len());
            let points = [order[0].0.clone(), order[1].0.clone(), order[2].0.clone()];
            let cands = [classes[&order[0].1].clone(), classes[&order[1].1].clone(), classes[&order[2].1].clone()];
            let found = triples(&points, &cands).into_iter().filter(commutes).collect();
            MobiusGroup::from_elements(found, true)
        }
    }
}

/// Some Mobius mu with mu o C o mu^-1 = B, found by matching labelled
/// rational points. `Ok(None)` means no conjugacy over Q; Inconclusive when
/// fewer than three labelled points are available and the maps differ.
pub fn find_conjugacy(b: &RatMap, c: &RatMap) -> Result<Option<RatMap>> {
    if b == c {
        return Ok(Some(RatMap::identity()));
    }
    if b.degree() != c.degree() || b.degree() < 2 {
        return Ok(None);
    }
    let (lb, lc) = (labelled_points(b), labelled_points(c));
    let (cb, cc) = (label_classes(&lb), label_classes(&lc));
    let shape = |m: &BTreeMap<Label, Vec<Pt>>| m.iter().map(|(l, v)| (l.clone(), v.len())).collect::<Vec<_>>();
    if shape(&cb) != shape(&cc) {
        return Ok(None);
    }
    if lc.len() < 3 {
        return Err(Error::Inconclusive(format!("only {} labelled rational points", lc.len())));
    }
    let mut order: Vec<&(Pt, Label)> = lc.iter().collect();
    order.sort_by_key(|(_, l)| cc[l].len());
    let points = [order[0].0.clone(), order[1].0.clone(), order[2].0.clone()];
    let cands = [cb[&order[0].1].clone(), cb[&order[1].1].clone(), cb[&order[2].1].clone()];
    Ok(triples(&points, &cands).into_iter().find(|mu| c.conjugate(mu) == *b))
}

fn point_set_of(places: &[Place]) -> PointSet {
    places.iter().fold(PointSet::empty(), |s, p| s.union(&PointSet::from_place(p)))
}

fn spare_point(avoid: &[&Pt]) -> Pt {
    (0..).map(|i| Some(q(sample_point(i)))).find(|p| !avoid.contains(&p)).unwrap()
}

/// Nonzero k with B(k z) = k B(z), or with B(k/z) = k / B(z) when `swap`.
fn scalings(b: &RatMap, swap: bool) -> Vec<Q> {
    let (n, d) = (b.num(), b.den());
    let deg = b.degree();
    // x is z, y is k.
    let scaled = |p: &Poly<Q>| -> BiPoly {
        let terms: Vec<(usize, usize, Q)> = p
            .coeffs()
            .iter()
            .enumerate()
            .map(|(i, c)| if swap { (deg - i, i, c.clone()) } else { (i, i, c.clone()) })
            .collect();
        BiPoly::from_terms(&terms)
    };
    let (nx, dx) = (BiPoly::from_x_poly(n), BiPoly::from_x_poly(d));
    let e = if swap {
        &(&scaled(n) * &nx) - &(&BiPoly::y() * &(&scaled(d) * &dx))
    } else {
        &(&scaled(n) * &dx) - &(&BiPoly::y() * &(&nx * &scaled(d)))
    };
    let g = e.rows().iter().fold(Poly::zero(), |g, r| g.gcd(r));
    if g.is_zero() {
        return Vec::new();
    }
    g.rational_roots().into_iter().filter(|k| !k.is_zero()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn neg_z() -> RatMap {
        RatMap::from_ints(&[0, -1])
    }

    fn inv_z() -> RatMap {
        RatMap::monomial(-1)
    }

    #[test]
    fn left_stabilizers() {
        let g = mobius_left_stabilizer(&RatMap::monomial(2));
        assert_eq!(g.elements, {
            let mut v = vec![RatMap::identity(), neg_z()];
            v.sort_by_key(|m| m.to_string());
            v
        });
        assert_eq!(mobius_left_stabilizer(&RatMap::monomial(3)).order(), 1);
        assert_eq!(mobius_left_stabilizer(&RatMap::from_ints(&[1, 1])).order(), 1);
        let half = RatMap::new(Poly::from_ints(&[1, 0, 0, 0, 1]), Poly::from_ints(&[0, 0, 2])).unwrap();
        let g = mobius_left_stabilizer(&half);
        for m in [neg_z(), inv_z(), inv_z().neg()] {
            assert!(g.contains(&m));
        }
        assert!(g.is_group());
        assert!(g.elements.iter().all(|m| half.compose(m) == half));
    }

    #[test]
    fn commutants() {
        let g = mobius_commutant(&RatMap::monomial(2));
        assert!(g.contains(&inv_z()) && g.is_group());
        let g = mobius_commutant(&RatMap::from_ints(&[-1, 0, 1]));
        assert_eq!(g.elements, vec![RatMap::identity()]);
        let g = mobius_commutant(&RatMap::monomial(3));
        for m in [neg_z(), inv_z(), inv_z().neg()] {
            assert!(g.contains(&m));
        }
        assert!(g.is_group());
        let l = crate::classify::tests::lattes4();
        let g = mobius_commutant(&l);
        assert!(g.is_group() && g.complete);
        assert!(g.contains(&neg_z()));
    }
}
