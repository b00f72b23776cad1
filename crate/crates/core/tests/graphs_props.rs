mod common;

use std::collections::{BTreeSet, HashMap};

use cayley_census::graphs::{cayley_graph, coset_graph, CosetSpace, Graph};
use cayley_census::permgroup::Permutation;
use common::{all_arcs, coset_graph_oracle, coset_instance, random_graph};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn instance(seed: u64) -> (CosetSpace, Permutation, Vec<Permutation>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        if let Some((g, k, x, elems)) = coset_instance(&mut rng, 7, 2000) {
            return (CosetSpace::new(&g, &k).unwrap(), x, elems);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn coset_graph_matches_definition(seed in any::<u64>()) {
        let (space, g, elems) = instance(seed);
        let k_elems = space.subgroup().elements(1 << 20).unwrap();
        let oracle = coset_graph_oracle(&elems, &k_elems, &g);
        let built = coset_graph(&space, &g).unwrap().graph;
        prop_assert_eq!(built.vertex_count(), oracle.len());
        let keys: Vec<Vec<u32>> = space.representatives().iter().map(|r| space.key(r)).collect();
        for (i, key) in keys.iter().enumerate() {
            let got: BTreeSet<Vec<u32>> = built.neighbors(i as u32).iter().map(|&j| keys[j as usize].clone()).collect();
            prop_assert_eq!(&got, &oracle[key]);
        }
    }

    #[test]
    fn neighborhood_depends_on_double_coset(seed in any::<u64>()) {
        let (space, g, _) = instance(seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xabcd);
        let k_elems = space.subgroup().elements(1 << 20).unwrap();
        let a = k_elems.choose(&mut rng).unwrap();
        let b = k_elems.choose(&mut rng).unwrap();
        let h = a.compose(&g).compose(b);
        // kgk' need not square into K, so compare neighborhoods by definition.
        let nb = |x: &Permutation| -> BTreeSet<u32> {
            k_elems.iter().flat_map(|p| k_elems.iter().map(move |q| (p, q)))
                .map(|(p, q)| space.index_of(&p.compose(x).compose(q)).unwrap())
                .collect()
        };
        prop_assert_eq!(nb(&g), nb(&h));
        let built: BTreeSet<u32> = coset_graph(&space, &g).unwrap().graph.neighbors(0).iter().copied().collect();
        prop_assert_eq!(built, nb(&g));
    }

    #[test]
    fn base_vertex_stabilizer_is_k(seed in any::<u64>()) {
        let (space, _, elems) = instance(seed);
        let fixing = elems.iter().filter(|x| space.act(0, x) == 0).count();
        prop_assert_eq!(fixing as u128, space.subgroup().order());
        prop_assert_eq!(space.index() as u128 * space.subgroup().order(), space.group().order());
    }

    #[test]
    fn arc_counts_follow_formula(seed in any::<u64>()) {
        let (space, g, _) = instance(seed);
        let graph = coset_graph(&space, &g).unwrap().graph;
        let d = graph.valency().expect("coset graphs are regular") as u64;
        let n = graph.vertex_count() as u64;
        for s in 1..=3u32 {
            prop_assert_eq!(all_arcs(&graph, s as usize).len() as u64, n * d * (d - 1).pow(s - 1));
        }
    }

    #[test]
    fn edge_list_round_trip(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(0..30);
        let g = random_graph(&mut rng, n, 0.3);
        let text = g.to_edge_list();
        let back = Graph::parse_edge_list(&text).unwrap();
        prop_assert_eq!(back.to_edge_list(), text);
        prop_assert_eq!(back.edges(), g.edges());
    }

    #[test]
    fn cayley_graph_right_translations_are_automorphisms(seed in any::<u64>()) {
        let (space, _, elems) = instance(seed);
        let group = space.group();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = elems.iter().find(|x| !x.is_identity()).unwrap().clone();
        let mut conn = vec![s.clone()];
        if s.inverse() != s {
            conn.push(s.inverse());
        }
        let cay = cayley_graph(group, &conn).unwrap();
        let index: HashMap<&Permutation, u32> = cay.elements.iter().enumerate().map(|(i, x)| (x, i as u32)).collect();
        for _ in 0..5 {
            let t = elems.choose(&mut rng).unwrap();
            let map: Vec<u32> = cay.elements.iter().map(|x| index[&x.compose(t)]).collect();
            for (u, v) in cay.graph.edges() {
                prop_assert!(cay.graph.has_edge(map[u as usize], map[v as usize]));
            }
        }
    }
}

#[test]
fn malformed_edge_lists_are_rejected() {
    for text in ["graph 3 1\n0 3\n", "graph 3 2\n0 1\n", "graph 2 1\n1 1\n", "grph 2 1\n0 1\n", "graph 3 1\n0 x\n"] {
        assert!(Graph::parse_edge_list(text).is_err(), "{text:?}");
    }
}
