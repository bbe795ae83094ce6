//! Classification of rational maps: power and Chebyshev conjugacy, Lattès
//! maps and the maximal orbifold of a generalized Lattès map.

pub mod mobius;
pub mod orbit;
pub mod theta;

use std::collections::{BTreeMap, BTreeSet};

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::algebra::field::{q, Q};
use crate::algebra::place::{critical_values, fiber_decomposition, image_place, preimage_places, Place, PointSet};
use crate::algebra::poly::{sample_point, Poly};
use crate::algebra::ratmap::{chebyshev, mobius_to_standard, Pt, RatMap};
use crate::error::{Error, Result};
use crate::orbifold::{is_covering, Orbifold};

pub use mobius::{mobius_commutant, mobius_left_stabilizer, MobiusGroup};
pub use orbit::{postcritical_split, PostcriticalSplit};
pub use theta::theta;

/// Outcome of a conjugacy detector. `sign` is +1 or -1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Conjugacy {
    /// mu o A o mu^-1 equals the normal form exactly.
    Rational { mu: RatMap, n: usize, sign: i8 },
    /// Conjugate over C, but the normalization needs irrational points.
    ExtensionNeeded { n: usize, sign: i8 },
}

impl Conjugacy {
    pub fn degree(&self) -> usize {
        match self {
            Conjugacy::Rational { n, .. } | Conjugacy::ExtensionNeeded { n, .. } => *n,
        }
    }

    pub fn sign(&self) -> i8 {
        match self {
            Conjugacy::Rational { sign, .. } | Conjugacy::ExtensionNeeded { sign, .. } => *sign,
        }
    }

    pub fn mu(&self) -> Option<&RatMap> {
        match self {
            Conjugacy::Rational { mu, .. } => Some(mu),
            Conjugacy::ExtensionNeeded { .. } => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpecialClass {
    PowerConjugate(Conjugacy),
    ChebyshevConjugate(Conjugacy),
    Lattes(Orbifold),
    GeneralizedLattes(Orbifold),
    NonSpecialNonGL,
}

impl SpecialClass {
    pub fn tag(&self) -> &'static str {
        match self {
            SpecialClass::PowerConjugate(_) => "PowerConjugate",
            SpecialClass::ChebyshevConjugate(_) => "ChebyshevConjugate",
            SpecialClass::Lattes(_) => "Lattes",
            SpecialClass::GeneralizedLattes(_) => "GeneralizedLattes",
            SpecialClass::NonSpecialNonGL => "NonSpecialNonGL",
        }
    }

    pub fn is_special(&self) -> bool {
        matches!(
            self,
            SpecialClass::PowerConjugate(_) | SpecialClass::ChebyshevConjugate(_) | SpecialClass::Lattes(_)
        )
    }
}

fn point_set(places: &[Place]) -> PointSet {
    places.iter().fold(PointSet::empty(), |s, p| s.union(&PointSet::from_place(p)))
}

/// A rational point different from all of `avoid`.
fn spare_point(avoid: &[&Pt]) -> Pt {
    (0..)
        .map(|i| Some(q(sample_point(i))))
        .find(|p| !avoid.contains(&p))
        .unwrap()
}

/// sign * z^n as a map; n may be negated by `sign`.
fn power_form(n: usize, sign: i8) -> RatMap {
    RatMap::monomial(sign as i64 * n as i64)
}

/// Detects mu o A o mu^-1 = z^(+-n).
pub fn detect_power_conjugacy(a: &RatMap) -> Option<Conjugacy> {
    let n = a.degree();
    if n < 2 {
        return None;
    }
    let cv = critical_values(a);
    if cv.iter().map(Place::degree).sum::<usize>() != 2 {
        return None;
    }
    let set = point_set(&cv);
    for qp in &cv {
        let fd = fiber_decomposition(a, qp);
        if fd.len() != 1 || fd[0].1 != n || !fd[0].0.minus(&set).is_empty() {
            return None;
        }
    }
    if cv.len() == 1 {
        // One quadratic place: A fixes its roots iff m divides N - z D.
        let m = cv[0].minpoly()?;
        let fix = a.num() - &(a.den() * &Poly::x());
        let sign = if fix.rem(m).is_zero() { 1 } else { -1 };
        return Some(Conjugacy::ExtensionNeeded { n, sign });
    }
    let (pa, pb) = (cv[0].as_pt()?, cv[1].as_pt()?);
    let sign: i8 = if image_place(a, &cv[0]) == cv[0] { 1 } else { -1 };
    for (x0, xi) in [(&pa, &pb), (&pb, &pa)] {
        let c = spare_point(&[x0, xi]);
        let mu0 = mobius_to_standard(x0, &c, xi).ok()?;
        let b = a.conjugate(&mu0);
        // b = c0 z^(+-n); rescale by s z with s^(n-1) = c0 or s^(n+1) = 1/c0.
        let c0 = if sign > 0 {
            b.as_poly()?.lc()
        } else {
            b.num().coeff(0) / b.den().lc()
        };
        let (k, t) = if sign > 0 { (n - 1, c0) } else { (n + 1, c0.recip()) };
        let eq = &Poly::monomial(Q::one(), k) - &Poly::constant(t);
        let mut roots = eq.rational_roots();
        roots.sort_by_key(|s| (s.abs(), s.is_negative()));
        for s in roots {
            let mu = RatMap::mobius(s, Q::zero(), Q::zero(), Q::one()).ok()?.compose(&mu0);
            if a.conjugate(&mu) == power_form(n, sign) {
                return Some(Conjugacy::Rational { mu, n, sign });
            }
        }
    }
    Some(Conjugacy::ExtensionNeeded { n, sign })
}

/// Detects mu o A o mu^-1 = +-T_n.
pub fn detect_chebyshev_conjugacy(a: &RatMap) -> Option<Conjugacy> {
    let n = a.degree();
    if n < 2 {
        return None;
    }
    let cv = critical_values(a);
    for t in cv.iter().filter(|p| p.degree() == 1) {
        let fd = fiber_decomposition(a, t);
        if fd.len() != 1 || fd[0].1 != n || fd[0].0.count() != 1 || !fd[0].0.contains(t) {
            continue;
        }
        let mu1 = match t.as_pt().unwrap() {
            None => RatMap::identity(),
            Some(v) => RatMap::mobius(Q::zero(), Q::one(), Q::one(), -v).unwrap(),
        };
        let p = a.conjugate(&mu1);
        let fin: Vec<Place> = critical_values(&p).into_iter().filter(|x| !x.is_infinity()).collect();
        let special: Vec<Q> = if n == 2 {
            let Some(Some(c)) = fin.first().and_then(Place::as_pt) else { continue };
            match p.eval_q(&c) {
                Some(pc) if pc != c => vec![c, pc],
                _ => continue,
            }
        } else {
            if fin.iter().map(Place::degree).sum::<usize>() != 2 {
                continue;
            }
            let v = point_set(&fin);
            let mut simple = PointSet::empty();
            let mut ok = true;
            for x in &fin {
                for (s, e) in fiber_decomposition(&p, x) {
                    ok &= e <= 2;
                    if e == 1 {
                        simple = simple.union(&s);
                    }
                }
            }
            if !ok || simple != v {
                continue;
            }
            match fin.as_slice() {
                [x, y] => vec![x.as_pt().unwrap().unwrap(), y.as_pt().unwrap().unwrap()],
                _ => return Some(Conjugacy::ExtensionNeeded { n, sign: 1 }),
            }
        };
        let tn = chebyshev(n);
        let mut found: Option<Conjugacy> = None;
        for (u, v) in [(&special[0], &special[1]), (&special[1], &special[0])] {
            // u -> -1, v -> 1
            let d = v - u;
            let mu2 = RatMap::mobius(q(2) / &d, -(u + v) / &d, Q::zero(), Q::one()).unwrap();
            let mu = mu2.compose(&mu1);
            let b = a.conjugate(&mu);
            if b == tn {
                return Some(Conjugacy::Rational { mu, n, sign: 1 });
            }
            if b == tn.neg() && found.is_none() {
                found = Some(Conjugacy::Rational { mu, n, sign: -1 });
            }
        }
        if found.is_some() {
            return found;
        }
    }
    None
}

/// Signatures with chi = 0.
const FLAT: [&[u64]; 4] = [&[2, 2, 2, 2], &[3, 3, 3], &[2, 4, 4], &[2, 3, 6]];

/// Good signatures with chi >= 0 on `points` geometric points, with the
/// value n in the {n,n} and {2,2,n} series at most `cap`.
fn admissible_signatures(points: usize, cap: u64) -> Vec<Vec<u64>> {
    let mut out: Vec<Vec<u64>> = FLAT.iter().filter(|s| s.len() == points).map(|s| s.to_vec()).collect();
    match points {
        2 => out.extend((2..=cap).map(|n| vec![n, n])),
        3 => {
            out.extend((2..=cap).map(|n| vec![2, 2, n]));
            out.extend([vec![2, 3, 3], vec![2, 3, 4], vec![2, 3, 5]]);
        }
        _ => {}
    }
    out
}

/// Orbifolds on `places` realizing one of `sigs`, constant on each place.
fn assignments(places: &[Place], sigs: &[Vec<u64>]) -> Vec<Orbifold> {
    fn perms(rest: &mut Vec<u64>, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if rest.is_empty() {
            out.push(cur.clone());
            return;
        }
        let mut tried = Vec::new();
        for i in 0..rest.len() {
            if tried.contains(&rest[i]) {
                continue;
            }
            tried.push(rest[i]);
            let v = rest.remove(i);
            cur.push(v);
            perms(rest, cur, out);
            cur.pop();
            rest.insert(i, v);
        }
    }
    let slots: Vec<usize> = places.iter().enumerate().flat_map(|(i, p)| std::iter::repeat_n(i, p.degree())).collect();
    let mut out = Vec::new();
    for sig in sigs.iter().filter(|s| s.len() == slots.len()) {
        let mut all = Vec::new();
        perms(&mut sig.clone(), &mut Vec::new(), &mut all);
        for perm in all {
            let mut vals = vec![0u64; places.len()];
            let consistent = slots.iter().zip(&perm).all(|(&i, &v)| {
                let ok = vals[i] == 0 || vals[i] == v;
                vals[i] = v;
                ok
            });
            if consistent {
                let pairs: Vec<(Place, u64)> = places.iter().cloned().zip(vals).collect();
                out.push(Orbifold::from_pairs(&pairs));
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// The orbifold O with A: O -> O a covering, if any.
pub fn is_lattes(a: &RatMap) -> Result<Option<Orbifold>> {
    if a.degree() < 2 {
        return Err(Error::Precondition("degree must be at least two".into()));
    }
    // The support of such an orbifold is exactly the postcritical set.
    let split = postcritical_split(a)?;
    if !split.wandering.is_empty() {
        return Ok(None);
    }
    let places: Vec<Place> = split.preperiodic.into_iter().collect();
    let count: usize = places.iter().map(Place::degree).sum();
    if !(3..=4).contains(&count) {
        return Ok(None);
    }
    let flat: Vec<Vec<u64>> = FLAT.iter().map(|s| s.to_vec()).collect();
    for o in assignments(&places, &flat) {
        if is_covering(a, &o, &o) {
            return Ok(Some(o));
        }
    }
    Ok(None)
}

/// Default cap on values in the {n,n} and {2,2,n} series.
pub const NU_CAP: u64 = 60;

/// Preimages of each support place, factored once.
struct PreimageCache<'a> {
    a: &'a RatMap,
    map: BTreeMap<Place, Vec<(Place, usize)>>,
}

impl<'a> PreimageCache<'a> {
    fn get(&mut self, p: &Place) -> &Vec<(Place, usize)> {
        let a = self.a;
        self.map.entry(p.clone()).or_insert_with(|| preimage_places(a, p))
    }

    fn pullback(&mut self, o: &Orbifold) -> Orbifold {
        let mut r = Orbifold::trivial();
        for (qp, v) in o.entries() {
            for (p, e) in self.get(qp) {
                let nu1 = v / (*e as u64).gcd(v);
                if nu1 > 1 {
                    r.set(p.clone(), nu1);
                }
            }
        }
        r
    }
}

/// Forward-invariant unions of closures with at most four geometric points.
fn invariant_supports(closures: &[BTreeSet<Place>]) -> Vec<BTreeSet<Place>> {
    fn go(
        closures: &[BTreeSet<Place>],
        start: usize,
        cur: &BTreeSet<Place>,
        seen: &mut BTreeSet<Vec<Place>>,
        out: &mut Vec<BTreeSet<Place>>,
    ) {
        for (i, c) in closures.iter().enumerate().skip(start) {
            let next: BTreeSet<Place> = cur.union(c).cloned().collect();
            if next.iter().map(Place::degree).sum::<usize>() > 4 {
                continue;
            }
            if seen.insert(next.iter().cloned().collect()) {
                out.push(next.clone());
                go(closures, i + 1, &next, seen, out);
            }
        }
    }
    let mut out = Vec::new();
    go(closures, 0, &BTreeSet::new(), &mut BTreeSet::new(), &mut out);
    out
}

/// All good orbifolds O with A: O -> O minimal holomorphic and values in
/// the series bounded by `cap`.
pub fn self_orbifolds(a: &RatMap, cap: u64) -> Result<Vec<Orbifold>> {
    let split = postcritical_split(a)?;
    let closures: Vec<BTreeSet<Place>> =
        split.preperiodic.iter().map(|p| orbit::forward_closure(a, p)).collect();
    let mut cache = PreimageCache { a, map: BTreeMap::new() };
    let mut out = Vec::new();
    for supp in invariant_supports(&closures) {
        let places: Vec<Place> = supp.into_iter().collect();
        let points = places.iter().map(Place::degree).sum();
        for o in assignments(&places, &admissible_signatures(points, cap)) {
            if cache.pullback(&o) == o {
                out.push(o);
            }
        }
    }
    Ok(out)
}

/// The maximal orbifold O with A: O -> O minimal holomorphic; trivial when A
/// is not a generalized Lattès map.
pub fn maximal_orbifold(a: &RatMap) -> Result<Orbifold> {
    if a.degree() < 2 {
        return Err(Error::Precondition("degree must be at least two".into()));
    }
    if detect_power_conjugacy(a).is_some() || detect_chebyshev_conjugacy(a).is_some() {
        return Err(Error::NotDefined("map is conjugate to a power or Chebyshev map".into()));
    }
    let cap = NU_CAP.max(a.degree() as u64);
    let sols = self_orbifolds(a, cap)?;
    let join = sols.iter().fold(Orbifold::trivial(), |j, o| j.lcm_join(o));
    if !join.is_trivial() && !sols.contains(&join) {
        return Err(Error::Inconclusive(format!("join {} of solutions is not a solution", join)));
    }
    Ok(join)
}

/// Detectors in order: power, Chebyshev, Lattès, maximal orbifold.
pub fn classify(a: &RatMap) -> Result<SpecialClass> {
    if a.degree() < 2 {
        return Err(Error::Precondition("degree must be at least two".into()));
    }
    if let Some(c) = detect_power_conjugacy(a) {
        return Ok(SpecialClass::PowerConjugate(c));
    }
    if let Some(c) = detect_chebyshev_conjugacy(a) {
        return Ok(SpecialClass::ChebyshevConjugate(c));
    }
    if let Some(o) = is_lattes(a)? {
        return Ok(SpecialClass::Lattes(o));
    }
    let o = maximal_orbifold(a)?;
    if o.is_trivial() {
        Ok(SpecialClass::NonSpecialNonGL)
    } else if o.chi().is_zero() {
        Ok(SpecialClass::Lattes(o))
    } else {
        Ok(SpecialClass::GeneralizedLattes(o))
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::algebra::field::qr;

    pub(crate) fn lattes4() -> RatMap {
        let n = Poly::from_ints(&[1, 0, 1]).pow(2);
        let d = Poly::from_ints(&[0, -4, 0, 4]);
        RatMap::new(n, d).unwrap()
    }

    fn lattes_orbifold() -> Orbifold {
        let pairs: Vec<(Place, u64)> =
            [-1, 0, 1].iter().map(|&v| (Place::from_i64(v), 2)).chain([(Place::Infinity, 2)]).collect();
        Orbifold::from_pairs(&pairs)
    }

    #[test]
    fn power_detection() {
        let c = detect_power_conjugacy(&RatMap::monomial(3)).unwrap();
        assert_eq!(c, Conjugacy::Rational { mu: RatMap::identity(), n: 3, sign: 1 });
        let c = detect_power_conjugacy(&RatMap::monomial(-2)).unwrap();
        assert_eq!(c, Conjugacy::Rational { mu: RatMap::identity(), n: 2, sign: -1 });
        let a = RatMap::from_ints(&[0, 2, 1]);
        let c = detect_power_conjugacy(&a).unwrap();
        assert_eq!(c.mu(), Some(&RatMap::from_ints(&[1, 1])));
        assert_eq!(a.conjugate(c.mu().unwrap()), RatMap::monomial(2));
        assert!(detect_power_conjugacy(&chebyshev(2)).is_none());
        assert!(detect_power_conjugacy(&RatMap::from_ints(&[-1, 0, 1])).is_none());
    }

    #[test]
    fn power_over_extension() {
        // Conjugating z^2 by (z - r)/(z + r), r = sqrt 2, gives a map over Q
        // with singular points +-sqrt 2.
        let a = RatMap::new(Poly::from_ints(&[2, 0, 1]), Poly::from_ints(&[0, 2])).unwrap();
        assert_eq!(detect_power_conjugacy(&a), Some(Conjugacy::ExtensionNeeded { n: 2, sign: 1 }));
    }

    #[test]
    fn chebyshev_detection() {
        for n in 2..5 {
            let c = detect_chebyshev_conjugacy(&chebyshev(n)).unwrap();
            assert_eq!(c, Conjugacy::Rational { mu: RatMap::identity(), n, sign: 1 });
        }
        let a = RatMap::from_ints(&[-2, 0, 1]);
        let c = detect_chebyshev_conjugacy(&a).unwrap();
        // Oracle: (2 (z/2)^2 - 1) * 2 = z^2 - 2.
        assert_eq!(c.mu(), Some(&RatMap::mobius(qr(1, 2), q(0), q(0), q(1)).unwrap()));
        assert!(detect_chebyshev_conjugacy(&RatMap::monomial(3)).is_none());
        let shifted = chebyshev(3).conjugate(&RatMap::from_ints(&[3, 2]));
        let c = detect_chebyshev_conjugacy(&shifted).unwrap();
        assert_eq!(shifted.conjugate(c.mu().unwrap()), chebyshev(3));
        assert!(detect_chebyshev_conjugacy(&RatMap::from_ints(&[0, 1, 1, 1])).is_none());
    }

    #[test]
    fn lattes_detection() {
        assert_eq!(is_lattes(&lattes4()), Ok(Some(lattes_orbifold())));
        assert_eq!(is_lattes(&RatMap::monomial(2)), Ok(None));
        assert_eq!(is_lattes(&chebyshev(2)), Ok(None));
    }

    #[test]
    fn maximal_orbifolds() {
        assert_eq!(maximal_orbifold(&RatMap::from_ints(&[-1, 0, 1])), Ok(Orbifold::trivial()));
        assert_eq!(maximal_orbifold(&lattes4()), Ok(lattes_orbifold()));
        assert!(matches!(maximal_orbifold(&RatMap::monomial(3)), Err(Error::NotDefined(_))));
        assert!(matches!(maximal_orbifold(&chebyshev(4)), Err(Error::NotDefined(_))));
    }

    #[test]
    fn generalized_lattes() {
        // z (z - 1)^2 pulls {0:2, inf:2} back to itself; 4/27 wanders.
        let a = RatMap::from_ints(&[0, 1, -2, 1]);
        let o = Orbifold::from_pairs(&[(Place::from_i64(0), 2), (Place::Infinity, 2)]);
        assert_eq!(classify(&a), Ok(SpecialClass::GeneralizedLattes(o.clone())));
        assert!(crate::orbifold::is_min_holomorphic(&a, &o, &o));
        // Oracle: every self-orbifold found lies below the maximal one.
        for s in self_orbifolds(&a, NU_CAP).unwrap() {
            assert!(s.preceq(&o));
        }
        // Both finite critical values of z^2 + z^-2 wander.
        let b = RatMap::new(Poly::from_ints(&[1, 0, 0, 0, 1]), Poly::from_ints(&[0, 0, 1])).unwrap();
        assert_eq!(maximal_orbifold(&b), Ok(Orbifold::trivial()));
    }

    #[test]
    fn stable_under_iteration() {
        let quad = RatMap::from_ints(&[-1, 0, 1]);
        let cubic = RatMap::from_ints(&[0, 1, -2, 1]);
        for (a, ls) in [(&quad, &[2usize, 3][..]), (&cubic, &[2][..]), (&lattes4(), &[2][..])] {
            let base = maximal_orbifold(a).unwrap();
            for &l in ls {
                assert_eq!(maximal_orbifold(&a.iterate(l)), Ok(base.clone()));
            }
        }
    }

    #[test]
    fn classification() {
        assert!(matches!(classify(&RatMap::monomial(5)), Ok(SpecialClass::PowerConjugate(c)) if c.degree() == 5));
        assert_eq!(classify(&lattes4()), Ok(SpecialClass::Lattes(lattes_orbifold())));
        assert_eq!(classify(&RatMap::from_ints(&[-1, 0, 1])), Ok(SpecialClass::NonSpecialNonGL));
    }
}
