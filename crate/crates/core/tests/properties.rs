use proptest::prelude::*;
use quivstrat::crystal::affine_cartan;
use quivstrat::levelrank::{gyd_to_weight, unique_mu_lift, DualityContext, Gyd};
use quivstrat::mult::{reflect, in_weyl_orbit};
use quivstrat::{dominant_conjugate, enumerate_strata_levi, freudenthal, AffineWeight, DimVector};

fn gyd(l: usize, r: usize) -> impl Strategy<Value = Gyd> {
    (-4i64..=4, proptest::collection::vec(0..=r as i64, l - 1)).prop_filter_map("spread exceeds level", move |(top, drops)| {
        let mut parts = vec![top];
        for d in drops {
            parts.push(parts.last().unwrap() - d);
        }
        Gyd::new(parts, r).ok()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn weight_is_shift_invariant_and_lift_inverts_it(lam in gyd(3, 2), k in -3i64..=3) {
        let shifted = Gyd::new(lam.parts.iter().map(|p| p + k).collect(), lam.level).unwrap();
        prop_assert_eq!(gyd_to_weight(&shifted), gyd_to_weight(&lam));
        prop_assert_eq!(unique_mu_lift(&lam, &gyd_to_weight(&shifted)).unwrap(), Some(lam.parts.clone()));
    }

    #[test]
    fn incongruent_sizes_give_zero_on_both_sides(lam in gyd(2, 2), other in gyd(2, 2), x0 in 0i64..3, x1 in 0i64..3) {
        prop_assume!((lam.size() - other.size()).rem_euclid(2) != 0);
        let mu = AffineWeight::new(gyd_to_weight(&other).framing, vec![x0, x1]);
        let rep = DualityContext::new(8).duality_dims(&lam, &mu).unwrap();
        prop_assert!(!rep.congruent);
        prop_assert_eq!((rep.lhs_dim, rep.rhs_dim), (0, 0));
    }

    #[test]
    fn degree_relation_and_duality_on_random_pairs(lam in gyd(2, 3), x0 in 0i64..3, x1 in 0i64..4) {
        let mu = AffineWeight::new(gyd_to_weight(&lam).framing, vec![x0, x1]);
        let rep = DualityContext::new(8).duality_dims(&lam, &mu).unwrap();
        prop_assert!(rep.degree_relation_holds);
        prop_assert_eq!(rep.lhs_dim, rep.rhs_dim);
    }

    #[test]
    fn dominant_conjugate_is_constant_on_orbits(a in 0i64..3, x in 0i64..4, y in 0i64..4, i in 0usize..2) {
        let c = affine_cartan(2);
        let w = DimVector::new(vec![a, 2 - a]).unwrap();
        let wv = AffineWeight::new(w.clone(), vec![x, y]);
        let (d1, _) = dominant_conjugate(&wv, &c).unwrap();
        let (d2, _) = dominant_conjugate(&reflect(&wv, i, &c), &c).unwrap();
        prop_assert_eq!(&d1, &d2);
        let (d3, _) = dominant_conjugate(&d1, &c).unwrap();
        prop_assert_eq!(&d3, &d1);
        prop_assert_eq!(in_weyl_orbit(&w, &[x, y], &c).unwrap(), d1.framing == w && d1.content.iter().all(|&t| t == 0));
    }

    #[test]
    fn weights_persist_down_delta_strings(a in 0i64..3, x in 0i64..3, y in 0i64..3) {
        let c = affine_cartan(2);
        let table = freudenthal(&DimVector::new(vec![a, 2 - a]).unwrap(), &c, 8).unwrap();
        prop_assert!(table.get(&[x + 1, y + 1]).unwrap() >= table.get(&[x, y]).unwrap());
    }

    #[test]
    fn levi_face_on_everything_at_level_one_has_only_the_empty_framed_part(x in 0i64..4, y in 0i64..4, j in 0usize..2) {
        let c = affine_cartan(2);
        let w = DimVector::unit(2, j);
        let strata = enumerate_strata_levi(&c, &DimVector::new(vec![x, y]).unwrap(), &w, &[0, 1]).unwrap();
        prop_assert!(strata.iter().all(|s| s.v0.is_zero()));
    }
}
