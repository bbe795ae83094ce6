use proptest::prelude::*;

use ratdyn::algebra::ratmap::chebyshev;
use ratdyn::algebra::{q, Place, Poly, RatMap};
use ratdyn::orbifold::*;

fn small_map() -> impl Strategy<Value = RatMap> {
    let general = (prop::collection::vec(-3i64..=3, 1..4), prop::collection::vec(-3i64..=3, 1..4))
        .prop_filter_map("constant or zero denominator", |(n, d)| {
            let f = RatMap::new(Poly::from_ints(&n), Poly::from_ints(&d)).ok()?;
            (f.degree() >= 1).then_some(f)
        });
    let special = (1usize..=3, prop::bool::ANY, -2i64..=2, 1i64..=2).prop_map(|(n, cheb, b, a)| {
        let core = if cheb { chebyshev(n) } else { RatMap::monomial(n as i64) };
        let mu = RatMap::mobius(q(a), q(b), q(0), q(1)).unwrap();
        mu.compose(&core)
    });
    prop_oneof![general, special]
}

fn small_orbifold() -> impl Strategy<Value = Orbifold> {
    let places = [Place::from_i64(0),
        Place::from_i64(1),
        Place::from_i64(-1),
        Place::from_i64(2),
        Place::finite(Poly::from_ints(&[-2, 0, 1])),
        Place::Infinity];
    prop::collection::vec(1u64..=4, places.len()).prop_map(move |nus| {
        let pairs: Vec<(Place, u64)> = places.iter().cloned().zip(nus).collect();
        Orbifold::from_pairs(&pairs)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn pullback_is_functorial(f in small_map(), g in small_map(), o in small_orbifold()) {
        prop_assert!(functoriality_check(&f, &g, &o));
    }

    #[test]
    fn induced_pair_satisfies_riemann_hurwitz(f in small_map()) {
        let (o1, o2) = (o1_of(&f), o2_of(&f));
        prop_assert!(is_covering(&f, &o1, &o2));
        prop_assert_eq!(rh_identity_check(&f, &o1, &o2), Ok(true));
        prop_assert!(is_min_holomorphic(&f, &o1, &o2));
    }

    #[test]
    fn pullback_gives_minimal_holomorphic(f in small_map(), o in small_orbifold()) {
        let o1 = pullback(&f, &o);
        prop_assert!(is_holomorphic(&f, &o1, &o));
        prop_assert!(is_min_holomorphic(&f, &o1, &o));
        prop_assert_eq!(chi_inequality_check(&f, &o1, &o), Ok(true));
    }

    #[test]
    fn join_is_upper_bound(a in small_orbifold(), b in small_orbifold()) {
        let j = a.lcm_join(&b);
        prop_assert!(a.preceq(&j) && b.preceq(&j));
        prop_assert_eq!(j.clone(), b.lcm_join(&a));
    }
}
