use proptest::prelude::*;

use polarlab::rational::{frac, Rational};
use polarlab::roots::{isolate_roots, RootInterval};
use polarlab::{mobius_pushforward, polar_derivative, ExtendedPoint, FormalPolynomial, MobiusMap};

fn rational() -> impl Strategy<Value = Rational> {
    (-40i64..=40, 1i64..=6).prop_map(|(n, d)| frac(n, d))
}

fn point() -> impl Strategy<Value = ExtendedPoint> {
    prop_oneof![1 => Just(ExtendedPoint::Infinity), 4 => rational().prop_map(ExtendedPoint::Finite)]
}

fn polynomial() -> impl Strategy<Value = FormalPolynomial> {
    (prop::collection::vec(rational(), 3..9), 0usize..3).prop_map(|(mut c, extra)| {
        if c.last().is_some_and(|x| *x == frac(0, 1)) {
            *c.last_mut().unwrap() = frac(1, 1);
        }
        let n = c.len() - 1 + extra;
        FormalPolynomial::with_degree(&c, n).unwrap()
    })
}

fn real_rooted() -> impl Strategy<Value = (Vec<Rational>, usize)> {
    (prop::collection::vec(rational(), 1..9), 0usize..3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn polar_derivatives_commute(p in polynomial(), a in point(), b in point()) {
        let ab = polar_derivative(&polar_derivative(&p, &b).unwrap(), &a).unwrap();
        let ba = polar_derivative(&polar_derivative(&p, &a).unwrap(), &b).unwrap();
        prop_assert_eq!(ab, ba);
    }

    #[test]
    fn mobius_intertwines(p in polynomial(), a in point(), e in prop::collection::vec(rational(), 4)) {
        let Ok(t) = MobiusMap::new(e[0].clone(), e[1].clone(), e[2].clone(), e[3].clone()) else {
            return Ok(());
        };
        let lhs = mobius_pushforward(&polar_derivative(&p, &a).unwrap(), &t).unwrap();
        let rhs = polar_derivative(&mobius_pushforward(&p, &t).unwrap(), &t.apply(&a)).unwrap();
        prop_assert!(lhs.is_proportional_to(&rhs));
    }

    #[test]
    fn refined_intervals_nest((roots, extra) in real_rooted()) {
        let p = FormalPolynomial::from_roots(&roots, roots.len() + extra).unwrap();
        let coarse = isolate_roots(&p, &frac(1, 1 << 6)).unwrap();
        let fine = isolate_roots(&p, &frac(1, 1 << 24)).unwrap();
        prop_assert_eq!(coarse.infinity_count(), extra);
        prop_assert_eq!(fine.roots().len(), coarse.roots().len());
        for (f, c) in fine.roots().iter().zip(coarse.roots()) {
            prop_assert!(c.contains(f), "{:?} not inside {:?}", f, c);
            prop_assert_eq!(f.multiplicity, c.multiplicity);
            prop_assert!(f.width() <= frac(1, 1 << 24));
        }
        // every true root lies in exactly one fine interval
        for r in &roots {
            let hits = fine.roots().iter().filter(|i| i.contains(&RootInterval::exact(r.clone(), 1))).count();
            prop_assert_eq!(hits, 1);
        }
    }
}
