mod common;

use cayley_census::arctrans::{arc_orbit_count, burnside_orbit_count, local_action, s_transitivity};
use cayley_census::autiso::automorphism_group;
use cayley_census::graphs::{coset_graph, petersen_graph, CosetSpace, Graph, GroupAction};
use cayley_census::permgroup::{Permutation, PermutationGroup};
use common::{arc_orbits_brute, coset_instance, random_graph, random_small_group};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A coset graph on at most 200 vertices with the coset action, and the
/// action images of every group element.
fn coset_case(seed: u64) -> (Graph, GroupAction, Vec<Permutation>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let Some((g, k, x, elems)) = coset_instance(&mut rng, 7, 2000) else { continue };
        let space = CosetSpace::new(&g, &k).unwrap();
        if space.index() > 200 {
            continue;
        }
        let graph = coset_graph(&space, &x).unwrap().graph;
        let images = elems.iter().map(|e| space.action_of(e)).collect();
        return (graph, space.action(), images);
    }
}

/// A random graph with its full automorphism group.
fn aut_case(seed: u64) -> (Graph, GroupAction, Vec<Permutation>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(2..=9);
    let p = rng.gen_range(0.2..0.8);
    let graph = random_graph(&mut rng, n, p);
    let aut = automorphism_group(&graph).unwrap();
    let elems = aut.group.elements(1 << 20).unwrap();
    (graph, GroupAction::natural(aut.group), elems)
}

fn check_against_brute(graph: &Graph, act: &GroupAction, elems: &[Permutation]) -> Result<(), TestCaseError> {
    for s in 0..=3 {
        let fast = arc_orbit_count(graph, act, s).unwrap();
        prop_assert_eq!(fast.orbit_count as usize, arc_orbits_brute(graph, elems, s), "s = {}", s);
    }
    Ok(())
}

fn bridge(graph: &Graph, act: &GroupAction) -> Result<(), TestCaseError> {
    if graph.valency().is_none_or(|d| d < 2) {
        return Ok(());
    }
    let two_arc = arc_orbit_count(graph, act, 2).unwrap().orbit_count == 1;
    let vertex = act.group().orbit(0).len() == graph.vertex_count()
        || arc_orbit_count(graph, act, 0).unwrap().orbit_count == 1;
    let local = local_action(graph, act, 0).unwrap().is_two_transitive();
    prop_assert_eq!(two_arc, vertex && local);
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn coset_graph_arc_orbits_match_brute_force(seed in any::<u64>()) {
        let (graph, act, elems) = coset_case(seed);
        check_against_brute(&graph, &act, &elems)?;
        bridge(&graph, &act)?;
    }

    #[test]
    fn automorphism_arc_orbits_match_brute_force(seed in any::<u64>()) {
        let (graph, act, elems) = aut_case(seed);
        check_against_brute(&graph, &act, &elems)?;
    }

    #[test]
    fn burnside_equals_orbit_count(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (gens, _) = random_small_group(&mut rng, 9, 5000);
        let g = PermutationGroup::new(gens).unwrap();
        prop_assert_eq!(burnside_orbit_count(&g, 5000).unwrap(), g.orbits().len() as u64);
    }
}

#[test]
fn petersen_is_three_arc_transitive() {
    let g = petersen_graph();
    let aut = automorphism_group(&g).unwrap();
    assert_eq!(aut.order, 120u32.into());
    let act = GroupAction::natural(aut.group.clone());
    assert_eq!(s_transitivity(&g, &act).unwrap(), 3);
    let elems = aut.group.elements(1000).unwrap();
    for s in 0..=3 {
        assert_eq!(arc_orbit_count(&g, &act, s).unwrap().orbit_count, 1);
        assert_eq!(arc_orbits_brute(&g, &elems, s), 1);
    }
    let local = local_action(&g, &act, 0).unwrap();
    assert_eq!(local.stabilizer_order, 12);
    assert_eq!(local.group.order(), 6);
}
