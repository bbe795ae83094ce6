//! Galois coverings theta_O for orbifolds of positive Euler characteristic.

use crate::algebra::field::{q, Q};
use crate::algebra::place::Place;
use crate::algebra::poly::Poly;
use crate::algebra::ratmap::{mobius_three_point, Pt, RatMap};
use crate::error::{Error, Result};
use crate::orbifold::Orbifold;

/// 1/2 (z^n + z^-n), with orbifold {-1:2, 1:2, inf:n}.
pub fn dihedral(n: usize) -> RatMap {
    let mut num = vec![q(0); 2 * n + 1];
    num[0] = q(1);
    num[2 * n] = q(1);
    RatMap::new(Poly::new(num), Poly::monomial(q(2), n)).unwrap()
}

/// Degree 12, orbifold {0:3, 1:2, inf:3}.
pub fn tetrahedral() -> RatMap {
    let z3 = Poly::from_ints(&[0, 0, 0, 1]);
    let num = &z3 * &Poly::from_ints(&[8, 0, 0, 1]).pow(3);
    let den = Poly::from_ints(&[-1, 0, 0, 1]).pow(3).scale(&q(64));
    RatMap::new(num, den).unwrap()
}

/// Degree 24, orbifold {0:3, 1:2, inf:4}.
pub fn octahedral() -> RatMap {
    let num = Poly::from_ints(&[1, 0, 0, 0, 14, 0, 0, 0, 1]).pow(3);
    let z4 = Poly::from_ints(&[0, 0, 0, 0, 1]);
    let den = (&z4 * &Poly::from_ints(&[-1, 0, 0, 0, 1]).pow(4)).scale(&q(108));
    RatMap::new(num, den).unwrap()
}

/// Degree 60, orbifold {0:3, 1:2, inf:5}.
pub fn icosahedral() -> RatMap {
    let mut f = vec![0i64; 12];
    f[1] = -1;
    f[6] = 11;
    f[11] = 1;
    let mut h = vec![0i64; 21];
    h[0] = -1;
    h[5] = -228;
    h[10] = -494;
    h[15] = 228;
    h[20] = -1;
    let num = Poly::from_ints(&h).pow(3);
    let den = Poly::from_ints(&f).pow(5).scale(&q(1728));
    RatMap::new(num, den).unwrap()
}

fn rational(p: &Place) -> Result<Pt> {
    p.as_pt().ok_or_else(|| Error::NonRationalPosition(p.to_string()))
}

/// Places of `o` grouped as the normal form expects, in signature order.
fn ordered(o: &Orbifold) -> Vec<(Place, u64)> {
    let mut v: Vec<(Place, u64)> = o.entries().map(|(p, n)| (p.clone(), *n)).collect();
    v.sort_by(|a, b| a.1.cmp(&b.1).then(a.0.cmp(&b.0)));
    v
}

/// A Galois covering theta with o2_of(theta) = o.
pub fn theta(o: &Orbifold) -> Result<RatMap> {
    let sig = o.signature_list();
    if !o.is_good() || o.chi() <= q(0) {
        return Err(Error::Precondition(format!("no finite Galois covering for signature {:?}", sig)));
    }
    if o.entries().any(|(p, _)| p.degree() > 1) {
        let bad: Vec<String> = o.entries().filter(|(p, _)| p.degree() > 1).map(|(p, _)| p.to_string()).collect();
        return Err(Error::NonRationalPosition(bad.join(", ")));
    }
    let pl = ordered(o);
    let pts: Vec<Pt> = pl.iter().map(|(p, _)| rational(p)).collect::<Result<_>>()?;
    let zero: Pt = Some(Q::from_integer(0.into()));
    let one: Pt = Some(Q::from_integer(1.into()));
    let m1: Pt = Some(Q::from_integer((-1).into()));
    // Normal form and the positions of its singular values, matched to pts.
    let (base, from): (RatMap, [Pt; 3]) = match sig.as_slice() {
        [n, _] => {
            let third = (0..).map(|i| Some(q(i))).find(|p| !pts.contains(p)).unwrap();
            let lam = mobius_three_point([&zero, &one, &None], [&pts[0], &third, &pts[1]])?;
            return Ok(lam.compose(&RatMap::monomial(*n as i64)));
        }
        [2, 2, n] => (dihedral(*n as usize), [m1, one, None]),
        [2, 3, 3] => (tetrahedral(), [one, zero, None]),
        [2, 3, 4] => (octahedral(), [one, zero, None]),
        [2, 3, 5] => (icosahedral(), [one, zero, None]),
        _ => unreachable!("good orbifolds with positive chi"),
    };
    let lam = mobius_three_point([&from[0], &from[1], &from[2]], [&pts[0], &pts[1], &pts[2]])?;
    Ok(lam.compose(&base))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orbifold::o2_of;

    fn orb(v: &[(Pt, u64)]) -> Orbifold {
        let pairs: Vec<(Place, u64)> = v.iter().map(|(p, n)| (Place::from_pt(p), *n)).collect();
        Orbifold::from_pairs(&pairs)
    }

    #[test]
    fn normal_forms() {
        let c = |v: i64| Some(q(v));
        for n in 2..7 {
            let o = orb(&[(c(0), n), (None, n)]);
            assert_eq!(theta(&o), Ok(RatMap::monomial(n as i64)));
            let o = orb(&[(c(-1), 2), (c(1), 2), (None, n)]);
            assert_eq!(theta(&o), Ok(dihedral(n as usize)));
            assert_eq!(o2_of(&dihedral(n as usize)), o);
        }
        assert_eq!(o2_of(&tetrahedral()), orb(&[(c(0), 3), (c(1), 2), (None, 3)]));
        assert_eq!(o2_of(&octahedral()), orb(&[(c(0), 3), (c(1), 2), (None, 4)]));
    }

    #[test]
    fn icosahedral_signature() {
        let c = |v: i64| Some(q(v));
        assert_eq!(o2_of(&icosahedral()), orb(&[(c(0), 3), (c(1), 2), (None, 5)]));
    }

    #[test]
    fn moved_positions() {
        let c = |v: i64| Some(q(v));
        let o = orb(&[(c(2), 3), (c(5), 3)]);
        assert_eq!(o2_of(&theta(&o).unwrap()), o);
        let o = orb(&[(c(0), 2), (c(3), 3), (None, 4)]);
        assert_eq!(o2_of(&theta(&o).unwrap()), o);
        let o = orb(&[(c(7), 2), (c(-1), 3), (c(1), 3)]);
        assert_eq!(o2_of(&theta(&o).unwrap()), o);
    }

    #[test]
    fn rejected() {
        let c = |v: i64| Some(q(v));
        let flat = orb(&[(c(0), 2), (c(1), 2), (c(-1), 2), (None, 2)]);
        assert!(matches!(theta(&flat), Err(Error::Precondition(_))));
        let bad = orb(&[(c(0), 2), (None, 3)]);
        assert!(matches!(theta(&bad), Err(Error::Precondition(_))));
        let irr = Orbifold::from_pairs(&[(Place::finite(Poly::from_ints(&[-2, 0, 1])), 3)]);
        assert!(matches!(theta(&irr), Err(Error::NonRationalPosition(_))));
    }
}
