//! Closed points of P^1 over Q and the fiber structure of rational maps.

use std::cmp::Ordering;
use std::fmt;

use num_traits::Zero;

use super::factor::{factor, poly_cmp, squarefree_decomposition, squarefree_part};
use super::field::Q;
use super::linalg::DependencyFinder;
use super::poly::{fmt_q, Poly};
use super::ratmap::{Pt, RatMap};

/// Infinity, or a Galois orbit given by its monic irreducible polynomial.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Place {
    Finite(Poly<Q>),
    Infinity,
}

impl Ord for Place {
    fn cmp(&self, o: &Self) -> Ordering {
        match (self, o) {
            (Place::Infinity, Place::Infinity) => Ordering::Equal,
            (Place::Infinity, _) => Ordering::Greater,
            (_, Place::Infinity) => Ordering::Less,
            (Place::Finite(a), Place::Finite(b)) => poly_cmp(a, b),
        }
    }
}

impl PartialOrd for Place {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Place {
    pub fn rational(a: Q) -> Place {
        Place::Finite(Poly::linear_root(a))
    }

    pub fn from_i64(a: i64) -> Place {
        Place::rational(Q::from_integer(a.into()))
    }

    pub fn from_pt(p: &Pt) -> Place {
        match p {
            Some(a) => Place::rational(a.clone()),
            None => Place::Infinity,
        }
    }

    /// The caller guarantees irreducibility; the polynomial is made monic.
    pub fn finite(m: Poly<Q>) -> Place {
        assert!(m.deg() >= 1, "place needs positive degree");
        Place::Finite(m.monic())
    }

    pub fn degree(&self) -> usize {
        match self {
            Place::Infinity => 1,
            Place::Finite(m) => m.deg(),
        }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, Place::Infinity)
    }

    /// The point, when the place is Q-rational.
    pub fn as_pt(&self) -> Option<Pt> {
        match self {
            Place::Infinity => Some(None),
            Place::Finite(m) if m.deg() == 1 => Some(Some(-m.coeff(0))),
            _ => None,
        }
    }

    pub fn minpoly(&self) -> Option<&Poly<Q>> {
        match self {
            Place::Finite(m) => Some(m),
            Place::Infinity => None,
        }
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_pt() {
            Some(None) => write!(f, "inf"),
            Some(Some(a)) => write!(f, "{}", fmt_q(&a)),
            None => write!(f, "root({})", self.minpoly().unwrap().fmt_var("z")),
        }
    }
}

/// A Galois-stable finite set of points: squarefree monic polynomial plus
/// an infinity flag.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PointSet {
    pub fin: Poly<Q>,
    pub inf: bool,
}

impl PointSet {
    pub fn empty() -> Self {
        PointSet { fin: Poly::one(), inf: false }
    }

    pub fn from_poly(p: &Poly<Q>) -> Self {
        let fin = if p.deg() == 0 { Poly::one() } else { squarefree_part(p) };
        PointSet { fin, inf: false }
    }

    pub fn from_place(p: &Place) -> Self {
        match p {
            Place::Infinity => PointSet { fin: Poly::one(), inf: true },
            Place::Finite(m) => PointSet { fin: m.clone(), inf: false },
        }
    }

    pub fn is_empty(&self) -> bool {
        self.fin.deg() == 0 && !self.inf
    }

    pub fn count(&self) -> usize {
        self.fin.deg() + usize::from(self.inf)
    }

    pub fn contains(&self, p: &Place) -> bool {
        match p {
            Place::Infinity => self.inf,
            Place::Finite(m) => self.fin.rem(m).is_zero(),
        }
    }

    pub fn union(&self, o: &PointSet) -> PointSet {
        let g = self.fin.gcd(&o.fin);
        PointSet { fin: (&self.fin * &o.fin.exact_div(&g)).monic(), inf: self.inf || o.inf }
    }

    pub fn intersect(&self, o: &PointSet) -> PointSet {
        PointSet { fin: self.fin.gcd(&o.fin), inf: self.inf && o.inf }
    }

    pub fn minus(&self, o: &PointSet) -> PointSet {
        let g = self.fin.gcd(&o.fin);
        PointSet { fin: self.fin.exact_div(&g).monic(), inf: self.inf && !o.inf }
    }

    pub fn places(&self) -> Vec<Place> {
        let mut out: Vec<Place> = if self.fin.deg() > 0 {
            factor(&self.fin).factors.into_iter().map(|(g, _)| Place::Finite(g)).collect()
        } else {
            Vec::new()
        };
        if self.inf {
            out.push(Place::Infinity);
        }
        out.sort();
        out
    }
}

/// Numerator of m o f for a finite place with minimal polynomial m, or the
/// denominator of f for infinity.
pub fn fiber_num(f: &RatMap, q: &Place) -> Poly<Q> {
    match q {
        Place::Infinity => f.den().clone(),
        Place::Finite(m) => {
            let k = m.deg();
            let (n, d) = (f.num(), f.den());
            let mut np = vec![Poly::one()];
            let mut dp = vec![Poly::one()];
            for i in 1..=k {
                np.push(&np[i - 1] * n);
                dp.push(&dp[i - 1] * d);
            }
            let mut acc = Poly::zero();
            for (i, c) in m.coeffs().iter().enumerate() {
                if !c.is_zero() {
                    acc = &acc + &(&np[i] * &dp[k - i]).scale(c);
                }
            }
            acc
        }
    }
}

/// Multiplicity of infinity in the fiber over q (0 when not in the fiber).
pub fn fiber_inf_mult(f: &RatMap, q: &Place) -> usize {
    let h = fiber_num(f, q);
    q.degree() * f.degree() - h.deg()
}

/// Fiber over q split by multiplicity: (points, multiplicity), ascending.
pub fn fiber_decomposition(f: &RatMap, q: &Place) -> Vec<(PointSet, usize)> {
    let h = fiber_num(f, q);
    let mut parts: Vec<(PointSet, usize)> = squarefree_decomposition(&h)
        .into_iter()
        .map(|(s, e)| (PointSet { fin: s, inf: false }, e))
        .collect();
    let ei = q.degree() * f.degree() - h.deg();
    if ei > 0 {
        match parts.iter_mut().find(|p| p.1 == ei) {
            Some(p) => p.0.inf = true,
            None => parts.push((PointSet { fin: Poly::one(), inf: true }, ei)),
        }
    }
    parts.sort_by_key(|p| p.1);
    parts
}

/// Multiplicity profile over one geometric point of q: (multiplicity, count).
pub fn fiber_partition(f: &RatMap, q: &Place) -> Vec<(usize, usize)> {
    let k = q.degree();
    fiber_decomposition(f, q)
        .into_iter()
        .map(|(s, e)| {
            debug_assert!(s.fin.deg() % k == 0);
            (e, s.fin.deg() / k + usize::from(s.inf))
        })
        .collect()
}

/// Preimage places of q with their local degrees.
pub fn preimage_places(f: &RatMap, q: &Place) -> Vec<(Place, usize)> {
    let mut out = Vec::new();
    for (s, e) in fiber_decomposition(f, q) {
        for p in s.places() {
            out.push((p, e));
        }
    }
    out.sort();
    out
}

/// Minimal polynomial of N/D modulo a squarefree s coprime to D.
fn image_poly(f: &RatMap, s: &Poly<Q>) -> Poly<Q> {
    let k = s.deg();
    let dinv = f.den().inv_mod(s).expect("denominator invertible modulo fiber");
    let e = (f.num() * &dinv).rem(s);
    let mut finder = DependencyFinder::new(k);
    let mut pw = Poly::one();
    loop {
        let v: Vec<Q> = (0..k).map(|i| pw.coeff(i)).collect();
        if let Some(c) = finder.push(v) {
            return Poly::new(c);
        }
        pw = (&pw * &e).rem(s);
    }
}

pub fn image_set(f: &RatMap, s: &PointSet) -> PointSet {
    let mut out = PointSet::empty();
    if s.fin.deg() > 0 {
        let g = s.fin.gcd(f.den());
        if g.deg() > 0 {
            out.inf = true;
        }
        let rest = s.fin.exact_div(&g);
        if rest.deg() > 0 {
            out.fin = image_poly(f, &rest).monic();
        }
    }
    if s.inf {
        out = out.union(&PointSet::from_place(&Place::from_pt(&f.eval_inf())));
    }
    out
}

/// The image of a single place is a single place; its minimal polynomial
/// comes out irreducible, so no factoring is needed.
pub fn image_place(f: &RatMap, p: &Place) -> Place {
    let s = image_set(f, &PointSet::from_place(p));
    if s.inf {
        debug_assert_eq!(s.fin.deg(), 0);
        Place::Infinity
    } else {
        Place::Finite(s.fin)
    }
}

/// Local degree at each point of the place p, with the number of points.
pub fn local_degree(f: &RatMap, p: &Place) -> (usize, usize) {
    let qp = image_place(f, p);
    let e = match p {
        Place::Infinity => fiber_inf_mult(f, &qp),
        Place::Finite(m) => fiber_num(f, &qp).multiplicity_of(m),
    };
    (e, p.degree())
}

/// Critical points: roots of the Wronskian, plus infinity when ramified.
pub fn critical_points(f: &RatMap) -> PointSet {
    let mut s = PointSet::from_poly(&f.wronskian());
    if f.degree() >= 2 && local_degree(f, &Place::Infinity).0 > 1 {
        s.inf = true;
    }
    s
}

pub fn critical_values(f: &RatMap) -> Vec<Place> {
    image_set(f, &critical_points(f)).places()
}
