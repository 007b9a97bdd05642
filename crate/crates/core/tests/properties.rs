use proptest::prelude::*;

use kmalg::io::named_km;
use kmalg::kmext::KmAlgebra;
use kmalg::osaka::build_catalog_a1;
use kmalg::random::{random_extended, random_loop, trial_rng, Reality};

fn algebra(pick: u8) -> KmAlgebra {
    let (name, twist) = [
        ("su2", 1),
        ("su2", 2),
        ("sl2", 1),
        ("sl2", 2),
        ("su2xsu2", 1),
    ][usize::from(pick % 5)];
    named_km(name, twist).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn jacobi_holds(pick in 0u8..5, seed in any::<u64>()) {
        let km = algebra(pick);
        let mut rng = trial_rng(seed, 0);
        let [x, y, z] = [0; 3].map(|_| random_extended(km.loops(), &mut rng, 3, Reality::Complex));
        prop_assert!(km.jacobi_residual(&x, &y, &z).unwrap().is_zero());
    }

    #[test]
    fn cocycle_is_antisymmetric(pick in 0u8..5, seed in any::<u64>()) {
        let km = algebra(pick);
        let mut rng = trial_rng(seed, 1);
        let f = random_loop(km.loops(), &mut rng, 4, Reality::Complex);
        let g = random_loop(km.loops(), &mut rng, 4, Reality::Complex);
        prop_assert_eq!(km.cocycle(&f, &g).unwrap(), -km.cocycle(&g, &f).unwrap());
    }

    #[test]
    fn derivative_is_a_derivation(pick in 0u8..5, seed in any::<u64>()) {
        let km = algebra(pick);
        let la = km.loops();
        let mut rng = trial_rng(seed, 2);
        let f = random_loop(la, &mut rng, 3, Reality::Complex);
        let g = random_loop(la, &mut rng, 3, Reality::Complex);
        let lhs = la.derivative(&la.bracket(&f, &g).unwrap());
        let rhs = la.bracket(&la.derivative(&f), &g).unwrap().add(&la.bracket(&f, &la.derivative(&g)).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn loop_killing_form_is_invariant(pick in 0u8..5, seed in any::<u64>()) {
        let km = algebra(pick);
        let la = km.loops();
        let mut rng = trial_rng(seed, 3);
        let [f, g, h] = [0; 3].map(|_| random_loop(la, &mut rng, 3, Reality::Complex));
        let lhs = la.killing(&la.bracket(&f, &g).unwrap(), &h).unwrap();
        let rhs = la.killing(&f, &la.bracket(&g, &h).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn catalog_involutions_are_involutive_homomorphisms(idx in 0usize..8, seed in any::<u64>()) {
        let rec = &build_catalog_a1()[idx];
        let theta = rec.involution.to_map();
        let km = &rec.km;
        let mut rng = trial_rng(seed, 4);
        let x = random_extended(km.loops(), &mut rng, 3, Reality::Complex);
        let y = random_extended(km.loops(), &mut rng, 3, Reality::Complex);
        prop_assert_eq!(theta.apply(&theta.apply(&x)), x.clone());
        let lhs = theta.apply(&km.hat_bracket(&x, &y).unwrap());
        let rhs = km.hat_bracket(&theta.apply(&x), &theta.apply(&y)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn composition_matches_sequential_application(i in 0usize..8, j in 0usize..8, seed in any::<u64>()) {
        let cat = build_catalog_a1();
        prop_assume!(cat[i].km.dim() == cat[j].km.dim() && cat[i].km.twist_order() == cat[j].km.twist_order());
        let a = cat[i].involution.to_map();
        let b = cat[j].involution.to_map();
        let mut rng = trial_rng(seed, 5);
        let x = random_extended(cat[i].km.loops(), &mut rng, 3, Reality::Complex);
        prop_assert_eq!(a.compose(&b).apply(&x), a.apply(&b.apply(&x)));
    }
}
