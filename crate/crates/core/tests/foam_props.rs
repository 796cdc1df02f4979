use foamhom::arith::{Coefficient, GaussianPolynomial};
use foamhom::foamval::{evaluate_foam, evaluate_foam_by_surgery, ClosedFoam, Facet, Seam};
use proptest::prelude::*;

fn foam_strategy() -> impl Strategy<Value = ClosedFoam> {
    (1usize..5).prop_flat_map(|nf| {
        let facets = prop::collection::vec((0u32..3, 0u32..4), nf);
        let seams = prop::collection::vec((0..nf, 0..nf), 0..6);
        (facets, seams).prop_map(|(facets, seams)| {
            let facets = facets.into_iter().map(|(genus, dots)| Facet { genus, dots }).collect();
            let seams = seams.into_iter().map(|(preferred, other)| Seam { preferred, other }).collect();
            ClosedFoam::from_seams(facets, seams).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn fast_path_matches_surgery_in_any_order(foam in foam_strategy(), seed in any::<u64>()) {
        let mut order: Vec<usize> = (0..foam.seams().len()).collect();
        let mut s = seed;
        for i in (1..order.len()).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            order.swap(i, (s >> 33) as usize % (i + 1));
        }
        prop_assert_eq!(evaluate_foam(&foam), evaluate_foam_by_surgery(&foam, &order));
    }

    #[test]
    fn reversing_a_seam_negates(foam in foam_strategy()) {
        prop_assume!(!foam.seams().is_empty());
        let v = evaluate_foam(&foam);
        prop_assert_eq!(evaluate_foam(&foam.reversed(0)), v.neg());
    }

    #[test]
    fn disjoint_union_multiplies(f in foam_strategy(), g in foam_strategy()) {
        let u = f.disjoint_union(&g);
        prop_assert_eq!(evaluate_foam(&u), evaluate_foam(&f).mul(&evaluate_foam(&g)));
    }

    #[test]
    fn nonzero_values_are_homogeneous(foam in foam_strategy()) {
        let v = evaluate_foam(&foam);
        if !v.is_zero() {
            let exp = v.monomial_exponent().expect("single monomial");
            prop_assert_eq!(foam.degree(), 4 * exp as i64);
        }
    }

    #[test]
    fn dot_squared_is_a(foam in foam_strategy()) {
        let mut two = foam.clone();
        two.add_dot(0);
        two.add_dot(0);
        let lhs = evaluate_foam(&two);
        let rhs = evaluate_foam(&foam).mul(&GaussianPolynomial::a());
        prop_assert_eq!(lhs, rhs);
    }
}
