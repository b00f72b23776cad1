//! Brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use cayley_census::graphs::Graph;
use cayley_census::permgroup::{Permutation, PermutationGroup};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn random_perm<R: Rng>(rng: &mut R, n: usize) -> Permutation {
    let mut v: Vec<u32> = (0..n as u32).collect();
    v.shuffle(rng);
    Permutation::new(v).unwrap()
}

/// All elements reachable from the identity by right multiplication with
/// generators, or `None` once more than `cap` have been seen.
pub fn closure(degree: usize, gens: &[Permutation], cap: usize) -> Option<HashSet<Vec<u32>>> {
    let id: Vec<u32> = (0..degree as u32).collect();
    let mut seen = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y: Vec<u32> = x.iter().map(|&i| g.image(i)).collect();
            if seen.insert(y.clone()) {
                if seen.len() > cap {
                    return None;
                }
                queue.push_back(y);
            }
        }
    }
    Some(seen)
}

/// Random generators on at most `max_degree` points whose group has order at most `cap`.
pub fn random_small_group<R: Rng>(rng: &mut R, max_degree: usize, cap: usize) -> (Vec<Permutation>, HashSet<Vec<u32>>) {
    loop {
        let n = rng.gen_range(1..=max_degree);
        let k = rng.gen_range(1..=3);
        let mut gens: Vec<Permutation> = (0..k).map(|_| random_perm(rng, n)).collect();
        // Sparse generators keep many of the groups small.
        if rng.gen_bool(0.5) {
            for g in gens.iter_mut() {
                let mut v: Vec<u32> = (0..n as u32).collect();
                let a = rng.gen_range(0..n);
                let b = rng.gen_range(0..n);
                v.swap(a, b);
                if rng.gen_bool(0.5) && n >= 3 {
                    let c = rng.gen_range(0..n);
                    v.swap(b, c);
                }
                *g = Permutation::new(v).unwrap();
            }
        }
        if let Some(elts) = closure(n, &gens, cap) {
            return (gens, elts);
        }
    }
}

pub fn perm(v: &[u32]) -> Permutation {
    Permutation::new(v.to_vec()).unwrap()
}

/// `Γ(G, K, g)` straight from the definition: vertices are the right cosets
/// `Kx` as element sets, `Kx ~ Ky` iff `xy⁻¹ ∈ KgK`.
/// Returns, for each coset (keyed by its least element), the set of keys of its neighbors.
pub fn coset_graph_oracle(
    g_elems: &[Permutation],
    k_elems: &[Permutation],
    g: &Permutation,
) -> HashMap<Vec<u32>, BTreeSet<Vec<u32>>> {
    let key = |x: &Permutation| -> Vec<u32> {
        k_elems.iter().map(|k| k.compose(x).images().to_vec()).min().unwrap()
    };
    let double: HashSet<Vec<u32>> = k_elems
        .iter()
        .flat_map(|a| k_elems.iter().map(move |b| a.compose(g).compose(b).images().to_vec()))
        .collect();
    let mut reps: HashMap<Vec<u32>, Permutation> = HashMap::new();
    for x in g_elems {
        reps.entry(key(x)).or_insert_with(|| x.clone());
    }
    let mut out = HashMap::new();
    for (kx, x) in &reps {
        let mut nb = BTreeSet::new();
        for (ky, y) in &reps {
            if double.contains(x.compose(&y.inverse()).images()) {
                nb.insert(ky.clone());
            }
        }
        out.insert(kx.clone(), nb);
    }
    out
}

/// All `s`-arcs of a graph, as vertex tuples.
pub fn all_arcs(g: &Graph, s: usize) -> Vec<Vec<u32>> {
    let mut arcs: Vec<Vec<u32>> = (0..g.vertex_count() as u32).map(|v| vec![v]).collect();
    for _ in 0..s {
        let mut next = Vec::new();
        for a in &arcs {
            let last = *a.last().unwrap();
            for &w in g.neighbors(last) {
                if a.len() >= 2 && a[a.len() - 2] == w {
                    continue;
                }
                let mut b = a.clone();
                b.push(w);
                next.push(b);
            }
        }
        arcs = next;
    }
    arcs
}

/// Orbits of a set of vertex permutations (a whole group) on `s`-arcs,
/// counted by taking each arc's full image set.
pub fn arc_orbits_brute(g: &Graph, elements: &[Permutation], s: usize) -> usize {
    let arcs = all_arcs(g, s);
    let mut seen: HashSet<Vec<u32>> = HashSet::new();
    let mut orbits = 0;
    for a in &arcs {
        if seen.contains(a) {
            continue;
        }
        orbits += 1;
        for x in elements {
            seen.insert(a.iter().map(|&v| x.image(v)).collect());
        }
    }
    orbits
}

/// Number of automorphisms by exhaustive extension of partial maps.
pub fn aut_count_brute(g: &Graph) -> u64 {
    fn extend(g: &Graph, map: &mut Vec<u32>, used: &mut [bool]) -> u64 {
        let i = map.len();
        if i == g.vertex_count() {
            return 1;
        }
        let mut total = 0;
        for t in 0..g.vertex_count() as u32 {
            if used[t as usize] {
                continue;
            }
            if (0..i).all(|j| g.has_edge(i as u32, j as u32) == g.has_edge(t, map[j])) {
                used[t as usize] = true;
                map.push(t);
                total += extend(g, map, used);
                map.pop();
                used[t as usize] = false;
            }
        }
        total
    }
    extend(g, &mut Vec::new(), &mut vec![false; g.vertex_count()])
}

pub fn random_graph<R: Rng>(rng: &mut R, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n as u32 {
        for v in u + 1..n as u32 {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

/// Coset-graph instances: `(G, K, g)` with `g² ∈ K` and `g ∉ N_G(K)`.
pub fn coset_instance<R: Rng>(
    rng: &mut R,
    max_degree: usize,
    cap: usize,
) -> Option<(PermutationGroup, PermutationGroup, Permutation, Vec<Permutation>)> {
    let (gens, elts) = random_small_group(rng, max_degree, cap);
    if elts.len() < 4 {
        return None;
    }
    let group = PermutationGroup::new(gens).unwrap();
    let elems: Vec<Permutation> = elts.iter().map(|v| perm(v)).collect();
    let kgens: Vec<Permutation> = (0..rng.gen_range(1..=2)).map(|_| elems.choose(rng).unwrap().clone()).collect();
    let k = group.subgroup(kgens).ok()?;
    let candidates: Vec<&Permutation> = elems
        .iter()
        .filter(|x| k.contains(&x.compose(x)) && !k.generators().iter().all(|h| k.contains(&h.conjugate_by(x))))
        .collect();
    let g = (*candidates.choose(rng)?).clone();
    Some((group, k, g, elems))
}

/// 1-based cycles for tests written in the usual notation.
pub fn cyc(n: usize, cycles: &[&[u32]]) -> Permutation {
    Permutation::from_cycles(n, cycles).unwrap()
}
