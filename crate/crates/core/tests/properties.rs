use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use treeconj_core::conjugacy::{elementwise_witnesses, kernel_conjugate};
use treeconj_core::f2::{fix_subspace, permute_coordinates};
use treeconj_core::subgroup::{kernel_centralizer_space, random_subgroup};
use treeconj_core::{
    is_elementwise_conjugate, is_globally_conjugate, property_p, Depth, KnVector, TreeAutomorphism,
};

fn d(n: u8) -> Depth {
    Depth::new(n).unwrap()
}

fn element(n: u8, seed: u64) -> TreeAutomorphism {
    TreeAutomorphism::random(d(n), &mut ChaCha8Rng::seed_from_u64(seed))
}

fn kernel_vector(n: u8, seed: u64) -> KnVector {
    let bits = element(n, seed).semidirect().0;
    KnVector::new(d(n), bits).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn semidirect_product_matches_composition(n in 1u8..=5, a in any::<u64>(), b in any::<u64>()) {
        let (x, y) = (element(n, a), element(n, b));
        let (v, s) = x.semidirect();
        let (w, t) = y.semidirect();
        let expected = TreeAutomorphism::from_semidirect(
            &(v + permute_coordinates(&s, &w).unwrap()),
            &s.compose(&t),
        )
        .unwrap();
        prop_assert_eq!(x.compose(&y), expected);
    }

    #[test]
    fn projection_is_a_homomorphism(n in 2u8..=5, a in any::<u64>(), b in any::<u64>()) {
        let (x, y) = (element(n, a), element(n, b));
        prop_assert_eq!(x.compose(&y).project(), x.project().compose(&y.project()));
        prop_assert_eq!(x.inverse().project(), x.project().inverse());
    }

    #[test]
    fn conjugation_composes(n in 1u8..=5, a in any::<u64>(), b in any::<u64>(), c in any::<u64>()) {
        let (x, g, h) = (element(n, a), element(n, b), element(n, c));
        let twice = x.conjugate_by(&g).unwrap().conjugate_by(&h).unwrap();
        prop_assert_eq!(twice, x.conjugate_by(&h.compose(&g)).unwrap());
        prop_assert_eq!(x.conjugate_by(&g).unwrap(), g.compose(&x).compose(&g.inverse()));
    }

    #[test]
    fn kernel_centralizer_matches_brute_force(n in 1u8..=4, seed in any::<u64>()) {
        let h = random_subgroup(d(n), 3, seed).unwrap();
        let space = kernel_centralizer_space(d(n), h.generators()).unwrap();
        for u in KnVector::all(d(n)) {
            let a = u.to_automorphism();
            let commutes = h.generators().iter().all(|x| x.compose(&a) == a.compose(x));
            prop_assert_eq!(commutes, space.contains(u.bits()));
        }
    }

    #[test]
    fn frattini_quotient_is_elementary_abelian(n in 1u8..=4, seed in any::<u64>()) {
        let h = random_subgroup(d(n), 4, seed).unwrap();
        let f = h.frattini();
        prop_assert_eq!(h.order(), f.phi.order() << f.quotient_rank);
        prop_assert!(f.phi.is_subgroup_of(&h));
        let q = h.frattini_quotient();
        prop_assert_eq!(q.basis.len() as u32, f.quotient_rank);
        let mut gens = q.basis.clone();
        gens.extend_from_slice(f.phi.generators());
        let regenerated = treeconj_core::Subgroup::generate(d(n), &gens).unwrap();
        prop_assert_eq!(regenerated.order(), h.order());
        prop_assert!(f.quotient_rank as usize <= h.generators().len());
    }

    #[test]
    fn witness_sets_are_unions_of_fix_cosets(n in 2u8..=4, a in any::<u64>(), seed in any::<u64>()) {
        let g = random_subgroup(d(n), 3, seed).unwrap();
        let h = element(n, a);
        let fix = fix_subspace(&h.semidirect().1);
        let witnesses: BTreeSet<_> = elementwise_witnesses(&h, &g)
            .unwrap()
            .iter()
            .flat_map(|c| c.elements())
            .collect();
        for u in &witnesses {
            prop_assert!(g.contains(&kernel_conjugate(&h, &KnVector::new(d(n), *u).unwrap())));
            for f in fix.elements() {
                prop_assert!(witnesses.contains(&(*u + f)));
            }
        }
    }

    #[test]
    fn global_implies_elementwise(n in 2u8..=4, a in any::<u64>(), b in any::<u64>()) {
        let h = random_subgroup(d(n), 2, a).unwrap();
        let g = random_subgroup(d(n), 3, b).unwrap();
        let global = is_globally_conjugate(&h, &g).unwrap();
        let elementwise = is_elementwise_conjugate(&h, &g).unwrap();
        prop_assert!(global.verify(&h, &g));
        prop_assert!(elementwise.verify(&h, &g));
        if global.verdict {
            prop_assert!(elementwise.verdict);
        }
    }

    #[test]
    fn verdicts_are_kernel_conjugation_invariant(n in 2u8..=4, a in any::<u64>(), b in any::<u64>(), c in any::<u64>()) {
        let h = random_subgroup(d(n), 2, a).unwrap();
        let g = random_subgroup(d(n), 3, b).unwrap();
        let u = kernel_vector(n, c);
        let moved = h.conjugate_by(&u.to_automorphism()).unwrap();
        let before = property_p(&h, &g).unwrap();
        let after = property_p(&moved, &g).unwrap();
        prop_assert_eq!(before.is_elementwise(), after.is_elementwise());
        prop_assert_eq!(before.is_global(), after.is_global());
    }
}
