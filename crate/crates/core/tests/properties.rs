use proptest::prelude::*;

use ratdyn::algebra::bifactor::{expand_factors, factor_bivariate};
use ratdyn::algebra::place::{critical_points, fiber_partition, local_degree};
use ratdyn::algebra::{q, BiPoly, Place, Poly, RatMap};
use ratdyn::classify::{classify, mobius_left_stabilizer, SpecialClass};
use ratdyn::curves::{genus_separated, image_curve, implicitize, periodicity, BiCurve};
use ratdyn::decompose::{all_decompositions, complete_semiconjugacy, elementary_transform, left_divide};
use ratdyn::orbifold::{chi_of_signature, pullback, Orbifold};
use ratdyn::Error;

fn map_upto(max_deg: usize) -> impl Strategy<Value = RatMap> {
    (prop::collection::vec(-3i64..=3, 1..=max_deg + 1), prop::collection::vec(-3i64..=3, 1..=max_deg + 1))
        .prop_filter_map("constant or zero denominator", |(n, d)| {
            let f = RatMap::new(Poly::from_ints(&n), Poly::from_ints(&d)).ok()?;
            (f.degree() >= 1).then_some(f)
        })
}

fn poly_map(min_deg: usize, max_deg: usize) -> impl Strategy<Value = RatMap> {
    prop::collection::vec(-3i64..=3, min_deg + 1..=max_deg + 1).prop_filter_map("degree too low", move |c| {
        let f = RatMap::from_ints(&c);
        (f.degree() >= min_deg).then_some(f)
    })
}

fn places() -> Vec<Place> {
    vec![
        Place::from_i64(0),
        Place::from_i64(1),
        Place::from_i64(-2),
        Place::Infinity,
        Place::finite(Poly::from_ints(&[1, 0, 1])),
        Place::finite(Poly::from_ints(&[-2, 0, 0, 1])),
    ]
}

fn small_bipoly() -> impl Strategy<Value = BiPoly> {
    prop::collection::vec(((0usize..=2), (0usize..=2), -3i64..=3), 1..5).prop_filter_map("constant", |ts| {
        let p = BiPoly::from_int_terms(&ts);
        (!p.is_zero() && !p.is_constant()).then_some(p)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn compose_is_associative(f in map_upto(3), g in map_upto(3), h in map_upto(3)) {
        prop_assert_eq!(f.compose(&g.compose(&h)), f.compose(&g).compose(&h));
    }

    #[test]
    fn compose_multiplies_degrees(f in map_upto(3), g in map_upto(3)) {
        prop_assert_eq!(f.compose(&g).degree(), f.degree() * g.degree());
    }

    #[test]
    fn fibers_account_for_degree(f in map_upto(4), i in 0usize..6) {
        let p = &places()[i];
        let total: usize = fiber_partition(&f, p).iter().map(|(m, c)| m * c).sum();
        prop_assert_eq!(total, f.degree());
    }

    #[test]
    fn critical_points_satisfy_riemann_hurwitz(f in map_upto(5)) {
        prop_assume!(f.degree() >= 2);
        let sum: usize = critical_points(&f)
            .places()
            .iter()
            .map(|p| (local_degree(&f, p).0 - 1) * p.degree())
            .sum();
        prop_assert_eq!(sum, 2 * f.degree() - 2);
    }

    #[test]
    fn bivariate_factors_recombine(a in small_bipoly(), b in small_bipoly(), c in small_bipoly()) {
        let f = &(&a * &b) * &c;
        let fs = factor_bivariate(&f);
        prop_assert_eq!(expand_factors(&fs).normalize(), f.normalize());
    }

    #[test]
    fn left_divide_is_sound_and_complete(x in map_upto(2), r in map_upto(2)) {
        let f = x.compose(&r);
        let roots = left_divide(&f, &x);
        prop_assert!(roots.contains(&r));
        for rr in &roots {
            prop_assert_eq!(&x.compose(rr), &f);
        }
    }

    #[test]
    fn pullback_of_trivial_is_trivial(f in map_upto(4)) {
        prop_assert_eq!(pullback(&f, &Orbifold::trivial()), Orbifold::trivial());
    }

    #[test]
    fn left_stabilizer_fixes_map(g in map_upto(2), k in 2i64..=3) {
        let b = g.compose(&RatMap::monomial(k));
        let grp = mobius_left_stabilizer(&b);
        prop_assert!(grp.is_group());
        let least = if k == 2 { 2 } else { 1 };
        prop_assert!(grp.order() >= least);
        for mu in &grp.elements {
            prop_assert_eq!(&b.compose(mu), &b);
        }
    }

    #[test]
    fn semiconjugacy_completion(v in poly_map(2, 2), u in map_upto(2)) {
        prop_assume!(u.degree() >= 2);
        let (a, b) = (v.compose(&u), u.compose(&v));
        match complete_semiconjugacy(&a, &v, &b) {
            Ok((y, d)) => {
                prop_assert_eq!(v.compose(&y), a.iterate(d));
                prop_assert_eq!(y.compose(&v), b.iterate(d));
                let xy = v.compose(&y);
                prop_assert_eq!(xy.compose(&a), a.compose(&xy));
            }
            Err(Error::TheoremViolation(m)) => prop_assert!(false, "{}", m),
            Err(_) => {}
        }
    }

    #[test]
    fn implicitized_graph(f in map_upto(3)) {
        let den = BiPoly::from_x_poly(f.den());
        let num = BiPoly::from_x_poly(f.num());
        let want = BiCurve::new(&(&(&BiPoly::y() * &den) - &num)).unwrap();
        prop_assert_eq!(implicitize(&RatMap::identity(), &f).unwrap(), want);
    }

    #[test]
    fn genus_is_symmetric(y1 in poly_map(2, 4), y2 in poly_map(2, 3)) {
        match (genus_separated(&y1, &y2), genus_separated(&y2, &y1)) {
            (Ok(a), Ok(b)) => prop_assert_eq!(a, b),
            (Err(Error::ReducibleCurve(_)), Err(Error::ReducibleCurve(_))) => {}
            (a, b) => prop_assert!(false, "{:?} vs {:?}", a, b),
        }
    }

    #[test]
    fn graphs_have_genus_zero(y in map_upto(4)) {
        prop_assert_eq!(genus_separated(&y, &RatMap::identity()), Ok(0));
    }

    #[test]
    fn periodic_orbit_returns(a in -3i64..=3) {
        // A odd: the antidiagonal and the diagonal swap under (A, -A).
        let a1 = RatMap::from_ints(&[0, a, 0, 1]);
        let a2 = a1.neg();
        let c = BiCurve::new(&BiPoly::from_int_terms(&[(1, 0, 1), (0, 1, 1)])).unwrap();
        let n = periodicity(&c, &a1, &a2, 3).unwrap();
        prop_assert_eq!(n, Some(2));
        let mut cur = c.clone();
        for _ in 0..2 {
            cur = image_curve(&cur, &a1, &a2).unwrap();
        }
        prop_assert_eq!(cur, c);
    }
}

/// Euclidean and spherical signatures of size at least three.
const EUCLIDEAN: [&[u64]; 4] = [&[2, 3, 6], &[2, 4, 4], &[3, 3, 3], &[2, 2, 2, 2]];

fn spherical(s: &[u64]) -> bool {
    matches!(s, [2, 2, _] | [2, 3, 3] | [2, 3, 4] | [2, 3, 5])
}

#[test]
fn euler_characteristic_sign_by_enumeration() {
    fn walk(prefix: &mut Vec<u64>, left: usize) {
        if prefix.len() >= 3 {
            let chi = chi_of_signature(prefix);
            let zero = EUCLIDEAN.contains(&prefix.as_slice());
            assert_eq!(chi == q(0), zero, "{:?}", prefix);
            assert_eq!(chi > q(0), spherical(prefix), "{:?}", prefix);
        }
        if left == 0 {
            return;
        }
        let lo = prefix.last().copied().unwrap_or(2);
        for v in lo..=12 {
            prefix.push(v);
            walk(prefix, left - 1);
            prefix.pop();
        }
    }
    walk(&mut Vec::new(), 5);
}

#[test]
fn coprime_power_curves_are_rational() {
    for m in 1..=6i64 {
        for n in 1..=6i64 {
            if num_integer::gcd(m, n) == 1 {
                assert_eq!(genus_separated(&RatMap::monomial(m), &RatMap::monomial(n)), Ok(0), "({}, {})", m, n);
            }
        }
    }
}

#[test]
fn elementary_transforms_stay_generalized_lattes() {
    // z (z - 1)^2 is minimal holomorphic from {0:2, inf:2} to itself, and so
    // is -z; the composites below are generalized Lattes maps of degree 9.
    let c = RatMap::from_ints(&[0, 1, -2, 1]);
    let fixtures = [c.compose(&c), c.compose(&c.neg())];
    for a in fixtures {
        assert!(matches!(classify(&a), Ok(SpecialClass::GeneralizedLattes(_))), "{}", a);
        let splits = all_decompositions(&a, 3).unwrap();
        assert!(!splits.is_empty());
        for s in &splits {
            let t = elementary_transform(&a, s).unwrap();
            assert!(matches!(classify(&t), Ok(SpecialClass::GeneralizedLattes(_))), "{} from {}", t, a);
        }
    }
}
