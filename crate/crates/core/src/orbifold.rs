//! Orbifolds on the sphere encoded over places, and the maps between them.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_integer::Integer;
use num_traits::One;

use crate::algebra::field::Q;
use crate::algebra::place::{critical_values, fiber_decomposition, image_place, Place, PointSet};
use crate::algebra::ratmap::RatMap;
use crate::error::{Error, Result};

/// Ramification function: places with nu >= 2; nu = 1 elsewhere.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default, PartialOrd, Ord)]
pub struct Orbifold {
    ram: BTreeMap<Place, u64>,
}

impl Orbifold {
    pub fn trivial() -> Self {
        Orbifold::default()
    }

    pub fn from_pairs(pairs: &[(Place, u64)]) -> Self {
        let mut o = Orbifold::trivial();
        for (p, v) in pairs {
            o.set(p.clone(), *v);
        }
        o
    }

    pub fn set(&mut self, p: Place, v: u64) {
        assert!(v >= 1, "ramification must be positive");
        if v == 1 {
            self.ram.remove(&p);
        } else {
            self.ram.insert(p, v);
        }
    }

    pub fn nu(&self, p: &Place) -> u64 {
        self.ram.get(p).copied().unwrap_or(1)
    }

    pub fn support(&self) -> Vec<Place> {
        self.ram.keys().cloned().collect()
    }

    pub fn support_set(&self) -> PointSet {
        self.ram.keys().fold(PointSet::empty(), |s, p| s.union(&PointSet::from_place(p)))
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Place, &u64)> {
        self.ram.iter()
    }

    pub fn is_trivial(&self) -> bool {
        self.ram.is_empty()
    }

    /// Number of singular geometric points.
    pub fn geometric_count(&self) -> usize {
        self.ram.keys().map(|p| p.degree()).sum()
    }

    /// Signature as sorted (nu, number of geometric points carrying it).
    pub fn signature(&self) -> Vec<(u64, usize)> {
        let mut m: BTreeMap<u64, usize> = BTreeMap::new();
        for (p, v) in &self.ram {
            *m.entry(*v).or_default() += p.degree();
        }
        m.into_iter().collect()
    }

    /// Signature expanded into a sorted list of values.
    pub fn signature_list(&self) -> Vec<u64> {
        let mut v = Vec::new();
        for (nu, c) in self.signature() {
            v.extend(std::iter::repeat_n(nu, c));
        }
        v
    }

    pub fn chi(&self) -> Q {
        chi_of_signature(&self.signature_list())
    }

    pub fn preceq(&self, o: &Orbifold) -> bool {
        self.ram.iter().all(|(p, v)| o.nu(p).is_multiple_of(*v))
    }

    pub fn lcm_join(&self, o: &Orbifold) -> Orbifold {
        let mut r = self.clone();
        for (p, v) in &o.ram {
            let cur = r.nu(p);
            r.set(p.clone(), cur.lcm(v));
        }
        r
    }

    /// Not one singular point, and not two with distinct values.
    pub fn is_good(&self) -> bool {
        let s = self.signature_list();
        match s.len() {
            1 => false,
            2 => s[0] == s[1],
            _ => true,
        }
    }
}

impl fmt::Display for Orbifold {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.ram.iter().map(|(p, v)| format!("{}:{}", p, v)).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

pub fn chi_of_signature(sig: &[u64]) -> Q {
    let mut c = Q::from_integer(2.into());
    for &v in sig {
        c += Q::new(1.into(), (v as i64).into()) - Q::one();
    }
    c
}

/// nu_2^f: lcm of local degrees over each critical value.
pub fn o2_of(f: &RatMap) -> Orbifold {
    let mut o = Orbifold::trivial();
    for qp in critical_values(f) {
        let l = fiber_decomposition(f, &qp).iter().fold(1u64, |a, (_, e)| a.lcm(&(*e as u64)));
        o.set(qp, l);
    }
    o
}

/// nu_1^f(z) = nu_2^f(f(z)) / deg_z f.
pub fn o1_of(f: &RatMap) -> Orbifold {
    let o2 = o2_of(f);
    let mut o = Orbifold::trivial();
    for (qp, v) in o2.entries() {
        for (s, e) in fiber_decomposition(f, qp) {
            let nu1 = v / e as u64;
            if nu1 > 1 {
                for p in s.places() {
                    o.set(p, nu1);
                }
            }
        }
    }
    o
}

/// f^* o: nu_1(z) = nu(f(z)) / gcd(deg_z f, nu(f(z))).
pub fn pullback(f: &RatMap, o: &Orbifold) -> Orbifold {
    let mut r = Orbifold::trivial();
    for (qp, v) in o.entries() {
        for (s, e) in fiber_decomposition(f, qp) {
            let nu1 = v / (e as u64).gcd(v);
            if nu1 > 1 {
                for p in s.places() {
                    r.set(p, nu1);
                }
            }
        }
    }
    r
}

/// Places over which pointwise conditions can fail.
/// Fibers over o2's support, the critical values and the images of o1's
/// support. Images are only computed for o1 places not already seen.
fn check_fibers(f: &RatMap, o1: &Orbifold, o2: &Orbifold) -> Vec<(Place, Vec<(PointSet, usize)>)> {
    let mut qs: BTreeSet<Place> = o2.support().into_iter().collect();
    if f.degree() >= 2 {
        qs.extend(critical_values(f));
    }
    let mut out: Vec<(Place, Vec<(PointSet, usize)>)> =
        qs.iter().map(|q| (q.clone(), fiber_decomposition(f, q))).collect();
    for p in o1.support() {
        let seen = out.iter().any(|(_, fd)| fd.iter().any(|(s, _)| s.contains(&p)));
        if !seen {
            let q = image_place(f, &p);
            if qs.insert(q.clone()) {
                let fd = fiber_decomposition(f, &q);
                out.push((q, fd));
            }
        }
    }
    out
}

/// Places of o1 lying in s, with their values.
fn o1_within(o1: &Orbifold, s: &PointSet) -> Vec<(Place, u64)> {
    o1.entries().filter(|(p, _)| s.contains(p)).map(|(p, v)| (p.clone(), *v)).collect()
}

/// nu_2(f(z)) = nu_1(z) deg_z f everywhere.
pub fn is_covering(f: &RatMap, o1: &Orbifold, o2: &Orbifold) -> bool {
    for (qp, fd) in check_fibers(f, o1, o2) {
        let v = o2.nu(&qp);
        for (s, e) in fd {
            let e = e as u64;
            if !v.is_multiple_of(e) {
                return false;
            }
            let want = v / e;
            let inside = o1_within(o1, &s);
            if inside.iter().any(|(_, n)| *n != want) {
                return false;
            }
            if want > 1 {
                let covered: usize = inside.iter().map(|(p, _)| p.degree()).sum();
                if covered != s.count() {
                    return false;
                }
            }
        }
    }
    true
}

/// nu_2(f(z)) divides nu_1(z) deg_z f everywhere.
pub fn is_holomorphic(f: &RatMap, o1: &Orbifold, o2: &Orbifold) -> bool {
    for (qp, v) in o2.entries() {
        for (s, e) in fiber_decomposition(f, qp) {
            let req = v / v.gcd(&(e as u64));
            if req == 1 {
                continue;
            }
            let inside = o1_within(o1, &s);
            if inside.iter().any(|(_, n)| n % req != 0) {
                return false;
            }
            let covered: usize = inside.iter().map(|(p, _)| p.degree()).sum();
            if covered != s.count() {
                return false;
            }
        }
    }
    true
}

pub fn is_min_holomorphic(f: &RatMap, o1: &Orbifold, o2: &Orbifold) -> bool {
    *o1 == pullback(f, o2)
}

/// chi(o1) = deg f * chi(o2) for a covering map.
pub fn rh_identity_check(f: &RatMap, o1: &Orbifold, o2: &Orbifold) -> Result<bool> {
    if !is_covering(f, o1, o2) {
        return Err(Error::Precondition("map is not a covering between the orbifolds".into()));
    }
    Ok(o1.chi() == o2.chi() * Q::from_integer((f.degree() as i64).into()))
}

/// chi(o1) <= deg f * chi(o2) for a holomorphic map, with equality exactly
/// for coverings.
pub fn chi_inequality_check(f: &RatMap, o1: &Orbifold, o2: &Orbifold) -> Result<bool> {
    if !is_holomorphic(f, o1, o2) {
        return Err(Error::Precondition("map is not holomorphic between the orbifolds".into()));
    }
    let rhs = o2.chi() * Q::from_integer((f.degree() as i64).into());
    let lhs = o1.chi();
    Ok(lhs <= rhs && ((lhs == rhs) == is_covering(f, o1, o2)))
}

/// (g o f)^* o = f^*(g^* o)
pub fn functoriality_check(f: &RatMap, g: &RatMap, o: &Orbifold) -> bool {
    pullback(&g.compose(f), o) == pullback(f, &pullback(g, o))
}

/// Support of o2 lies among the critical values of A, for a minimal
/// holomorphic A: o1 -> o2 of degree at least five with chi(o1) >= 0.
pub fn toch_predicate(a: &RatMap, o1: &Orbifold, o2: &Orbifold) -> Result<bool> {
    if a.degree() < 5 {
        return Err(Error::Precondition("degree must be at least five".into()));
    }
    if o1.is_trivial() || o2.is_trivial() {
        return Err(Error::Precondition("orbifolds must be nontrivial".into()));
    }
    if o1.chi() < Q::from_integer(0.into()) {
        return Err(Error::Precondition("chi(o1) must be nonnegative".into()));
    }
    if !is_min_holomorphic(a, o1, o2) {
        return Err(Error::Precondition("map is not minimal holomorphic".into()));
    }
    let cv: BTreeSet<Place> = critical_values(a).into_iter().collect();
    Ok(o2.support().iter().all(|p| cv.contains(p)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::{q, qr};
    use crate::algebra::poly::Poly;
    use crate::algebra::ratmap::chebyshev;

    fn pt(a: i64) -> Place {
        Place::from_i64(a)
    }

    fn orb(v: &[(Place, u64)]) -> Orbifold {
        Orbifold::from_pairs(v)
    }

    pub(crate) fn lattes4() -> RatMap {
        let n = Poly::from_ints(&[1, 0, 1]).pow(2);
        let d = Poly::from_ints(&[0, -4, 0, 4]);
        RatMap::new(n, d).unwrap()
    }

    #[test]
    fn euler_characteristic() {
        assert_eq!(Orbifold::trivial().chi(), q(2));
        assert_eq!(chi_of_signature(&[2, 2, 2, 2]), q(0));
        assert_eq!(chi_of_signature(&[2, 3, 7]), qr(-1, 42));
    }

    #[test]
    fn partial_order() {
        let a = orb(&[(pt(0), 2), (Place::Infinity, 2)]);
        let b = orb(&[(pt(0), 4), (Place::Infinity, 4)]);
        assert!(Orbifold::trivial().preceq(&a));
        assert!(a.preceq(&b));
        assert!(!orb(&[(pt(0), 3)]).preceq(&orb(&[(pt(0), 2)])));
    }

    #[test]
    fn induced_orbifolds() {
        for n in 2..6 {
            assert_eq!(
                o2_of(&RatMap::monomial(n)),
                orb(&[(pt(0), n as u64), (Place::Infinity, n as u64)])
            );
        }
        assert_eq!(o2_of(&chebyshev(3)), orb(&[(pt(-1), 2), (pt(1), 2), (Place::Infinity, 3)]));
        assert_eq!(o2_of(&chebyshev(2)), orb(&[(pt(-1), 2), (Place::Infinity, 2)]));
        let f = chebyshev(3);
        assert!(is_covering(&f, &o1_of(&f), &o2_of(&f)));
    }

    #[test]
    fn pullbacks() {
        let z2 = RatMap::monomial(2);
        let o = orb(&[(pt(0), 2), (Place::Infinity, 2)]);
        assert_eq!(pullback(&z2, &o), Orbifold::trivial());
        assert_eq!(pullback(&RatMap::monomial(3), &o), o);
        assert_eq!(pullback(&z2, &orb(&[(pt(1), 2)])), orb(&[(pt(-1), 2), (pt(1), 2)]));
    }

    #[test]
    fn coverings() {
        let z2 = RatMap::monomial(2);
        let o = orb(&[(pt(0), 3), (Place::Infinity, 3)]);
        assert!(!is_covering(&z2, &o, &o));
        assert!(!is_covering(&z2, &orb(&[(pt(-1), 2), (pt(1), 2)]), &orb(&[(pt(1), 2)])));
        let target = orb(&[(pt(0), 2), (pt(1), 2), (Place::Infinity, 2)]);
        assert!(is_covering(&z2, &orb(&[(pt(-1), 2), (pt(1), 2)]), &target));
        let l = orb(&[(pt(-1), 2), (pt(0), 2), (pt(1), 2), (Place::Infinity, 2)]);
        assert!(is_covering(&lattes4(), &l, &l));
        assert_eq!(rh_identity_check(&lattes4(), &l, &l), Ok(true));
    }

    #[test]
    fn minimal_holomorphic() {
        let o = orb(&[(pt(0), 3), (Place::Infinity, 3)]);
        assert!(is_min_holomorphic(&RatMap::monomial(2), &o, &o));
        let t = orb(&[(pt(-1), 2), (pt(1), 2), (Place::Infinity, 5)]);
        assert!(is_min_holomorphic(&chebyshev(3), &t, &t));
        let o2 = orb(&[(pt(0), 2), (Place::Infinity, 2)]);
        assert!(!is_min_holomorphic(&RatMap::monomial(2), &o2, &o2));
    }

    #[test]
    fn toch() {
        let o = orb(&[(pt(0), 2), (Place::Infinity, 2)]);
        assert_eq!(toch_predicate(&RatMap::monomial(5), &o, &o), Ok(true));
        assert_eq!(toch_predicate(&RatMap::monomial(9), &o, &o), Ok(true));
        assert!(toch_predicate(&RatMap::monomial(2), &o, &o).is_err());
    }

    #[test]
    fn functoriality() {
        let z2 = RatMap::monomial(2);
        assert!(functoriality_check(&z2, &z2, &orb(&[(pt(1), 4)])));
        assert!(functoriality_check(
            &RatMap::monomial(3),
            &z2,
            &orb(&[(pt(0), 5), (Place::Infinity, 5)])
        ));
    }
}
