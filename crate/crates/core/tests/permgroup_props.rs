mod common;

use cayley_census::permgroup::brute::{normalizer_brute_force, transporter_brute_force};
use cayley_census::permgroup::{normalizer, subgroup_transporter, PermutationGroup};
use common::{closure, perm, random_perm, random_small_group};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn order_matches_closure(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (gens, elts) = random_small_group(&mut rng, 8, 5000);
        let g = PermutationGroup::new(gens).unwrap();
        prop_assert_eq!(g.order(), elts.len() as u128);
    }

    #[test]
    fn sifting_matches_closure(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (gens, elts) = random_small_group(&mut rng, 7, 5000);
        let n = gens[0].degree();
        let g = PermutationGroup::new(gens).unwrap();
        for _ in 0..30 {
            let x = random_perm(&mut rng, n);
            prop_assert_eq!(g.contains(&x), elts.contains(x.images()));
        }
        for v in elts.iter().take(30) {
            prop_assert!(g.contains(&perm(v)));
        }
    }

    #[test]
    fn orbits_partition_points(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (gens, _) = random_small_group(&mut rng, 10, 5000);
        let n = gens[0].degree();
        let g = PermutationGroup::new(gens).unwrap();
        let orbits = g.orbits();
        let mut all: Vec<u32> = orbits.iter().flatten().copied().collect();
        all.sort_unstable();
        prop_assert_eq!(all, (0..n as u32).collect::<Vec<_>>());
        for o in &orbits {
            for s in g.generators() {
                for &p in o {
                    prop_assert!(o.contains(&s.image(p)));
                }
            }
        }
    }

    #[test]
    fn construction_is_deterministic(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (gens, _) = random_small_group(&mut rng, 9, 5000);
        let a = PermutationGroup::new(gens.clone()).unwrap();
        let b = PermutationGroup::new(gens).unwrap();
        prop_assert_eq!(a.base(), b.base());
        prop_assert_eq!(a.strong_generators(), b.strong_generators());
        prop_assert_eq!(a.orbits(), b.orbits());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn normalizer_matches_brute_force(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (gens, elts) = random_small_group(&mut rng, 7, 5000);
        let g = PermutationGroup::new(gens).unwrap();
        let elems: Vec<_> = elts.iter().collect();
        let hgens: Vec<_> = (0..2).map(|_| perm(elems.choose(&mut rng).unwrap())).collect();
        let h = g.subgroup(hgens).unwrap();
        let n = normalizer(&g, &h);
        for x in n.generators() {
            prop_assert!(h.generators().iter().all(|k| h.contains(&k.conjugate_by(x))));
        }
        prop_assert!(g.contains_group(&n));
        prop_assert_eq!(n.order(), normalizer_brute_force(&g, &h).unwrap().order());
    }

    #[test]
    fn transporter_matches_brute_force(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (gens, elts) = random_small_group(&mut rng, 7, 5000);
        let g = PermutationGroup::new(gens).unwrap();
        let elems: Vec<_> = elts.iter().collect();
        let h1 = g.subgroup(vec![perm(elems.choose(&mut rng).unwrap())]).unwrap();
        // Half the time a genuine conjugate, otherwise an unrelated cyclic subgroup.
        let h2 = if rng.gen_bool(0.5) {
            h1.conjugate_by(&perm(elems.choose(&mut rng).unwrap()))
        } else {
            g.subgroup(vec![perm(elems.choose(&mut rng).unwrap())]).unwrap()
        };
        let fast = subgroup_transporter(&g, &h1, &h2);
        let slow = transporter_brute_force(&g, &h1, &h2).unwrap();
        prop_assert_eq!(fast.is_some(), slow.is_some());
        if let Some(x) = fast {
            prop_assert!(g.contains(&x));
            let img = h1.conjugate_by(&x);
            prop_assert!(img.contains_group(&h2) && h2.contains_group(&img));
        }
    }
}

#[test]
fn closure_oracle_on_s5() {
    let s5 = [perm(&[1, 2, 3, 4, 0]), perm(&[1, 0, 2, 3, 4])];
    assert_eq!(closure(5, &s5, 1000).unwrap().len(), 120);
    assert!(closure(5, &s5, 100).is_none());
}
