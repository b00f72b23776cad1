mod common;

use cayley_census::autiso::{are_isomorphic, automorphism_group, canonical_form, invariant_signature, is_isomorphism};
use cayley_census::graphs::{complete_graph, cycle_graph, petersen_graph, Graph};
use common::{aut_count_brute, random_graph, random_perm};
use num_bigint::BigUint;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn relabeled(g: &Graph, rng: &mut ChaCha8Rng) -> (Graph, Vec<u32>) {
    let p = random_perm(rng, g.vertex_count()).into_images();
    (g.relabel(&p), p)
}

/// Tries every bijection.
fn brute_isomorphic(g: &Graph, h: &Graph) -> bool {
    fn go(g: &Graph, h: &Graph, map: &mut Vec<u32>, used: &mut [bool]) -> bool {
        let i = map.len();
        if i == g.vertex_count() {
            return is_isomorphism(g, h, map);
        }
        for t in 0..g.vertex_count() as u32 {
            if !used[t as usize] {
                used[t as usize] = true;
                map.push(t);
                let found = go(g, h, map, used);
                map.pop();
                used[t as usize] = false;
                if found {
                    return true;
                }
            }
        }
        false
    }
    go(g, h, &mut Vec::new(), &mut vec![false; g.vertex_count()])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn aut_order_matches_brute_force(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(0..=10);
        let p = rng.gen_range(0.1..0.9);
        let g = random_graph(&mut rng, n, p);
        let aut = automorphism_group(&g).unwrap();
        prop_assert_eq!(aut.order.clone(), BigUint::from(aut_count_brute(&g)));
        prop_assert_eq!(aut.group.order_big(), aut.order);
        for a in &aut.generators {
            prop_assert!(is_isomorphism(&g, &g, a.images()));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn canonical_form_ignores_labels(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(1..=40);
        let p = rng.gen_range(0.05..0.5);
        let g = random_graph(&mut rng, n, p);
        let (h, _) = relabeled(&g, &mut rng);
        let cg = canonical_form(&g);
        let ch = canonical_form(&h);
        prop_assert_eq!(&cg.canonical_edge_list, &ch.canonical_edge_list);
        prop_assert_eq!(&cg.certificate_hash, &ch.certificate_hash);
        if n <= 16 {
            prop_assert_eq!(invariant_signature(&g), invariant_signature(&h));
        }
        let map = are_isomorphic(&g, &h).expect("relabeling is an isomorphism");
        prop_assert!(is_isomorphism(&g, &h, &map));
        prop_assert_eq!(cg.canonical_graph(n).edges(), g.relabel(cg.relabeling.images()).edges());
    }

    #[test]
    fn canonical_forms_separate_non_isomorphic_graphs(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(1..=7);
        let g = random_graph(&mut rng, n, 0.5);
        let h = random_graph(&mut rng, n, 0.5);
        let iso = brute_isomorphic(&g, &h);
        let same = canonical_form(&g).canonical_edge_list == canonical_form(&h).canonical_edge_list;
        prop_assert_eq!(same, iso);
        prop_assert_eq!(are_isomorphic(&g, &h).is_some(), iso);
    }
}

#[test]
fn small_families() {
    assert_eq!(automorphism_group(&complete_graph(4)).unwrap().order, 24u32.into());
    assert_eq!(automorphism_group(&cycle_graph(6)).unwrap().order, 12u32.into());
    assert_eq!(automorphism_group(&petersen_graph()).unwrap().order, 120u32.into());
    assert_eq!(invariant_signature(&complete_graph(4)).girth, Some(3));
    let c6 = invariant_signature(&cycle_graph(6));
    assert_eq!(c6.girth, Some(6));
    assert_eq!(c6.degree_sequence, vec![2; 6]);
    assert_eq!(invariant_signature(&petersen_graph()).girth, Some(5));
}
