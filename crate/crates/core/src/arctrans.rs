//! s-arc orbits of a group acting on a graph, and local actions on
//! neighborhoods.

use std::collections::{BTreeSet, VecDeque};

use thiserror::Error;

use crate::graphs::{Graph, GroupAction};
use crate::permgroup::{GroupError, Permutation, PermutationGroup};

/// Largest arc length measured.
pub const MAX_S: usize = 3;

#[derive(Debug, Error)]
pub enum ArcError {
    #[error("action has {action} points but the graph has {graph} vertices")]
    PointCount { action: usize, graph: usize },
    #[error("generator {generator} does not preserve adjacency: edge {{{u}, {v}}} is not mapped to an edge")]
    NotAnAutomorphism { generator: usize, u: u32, v: u32 },
    #[error("arc length {0} is out of range (0..={MAX_S})")]
    ArcLength(usize),
    #[error("group of order {order} exceeds the enumeration cap {cap}")]
    TooLarge { cap: u128, order: u128 },
    #[error("vertex {0} is out of range")]
    Vertex(u32),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// Number of s-arcs and number of orbits on them.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct ArcOrbits {
    pub s: usize,
    pub arc_count: u64,
    pub orbit_count: u64,
}

/// Arc and orbit counts for `s = 0..=3`.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct ArcOrbitProfile {
    pub levels: Vec<ArcOrbits>,
}

impl ArcOrbitProfile {
    /// Largest `s` such that the group is transitive on `t`-arcs for all `t <= s`.
    pub fn transitivity(&self) -> usize {
        let mut s = 0;
        for level in &self.levels {
            if level.orbit_count != 1 {
                break;
            }
            s = level.s;
        }
        s
    }
}

/// Checks that every generator of `act` is an automorphism of `g`.
pub fn check_action(g: &Graph, act: &GroupAction) -> Result<(), ArcError> {
    if act.point_count() != g.vertex_count() {
        return Err(ArcError::PointCount { action: act.point_count(), graph: g.vertex_count() });
    }
    for (i, imgs) in act.generator_images().iter().enumerate() {
        for (u, v) in g.edges() {
            if !g.has_edge(imgs[u as usize], imgs[v as usize]) {
                return Err(ArcError::NotAnAutomorphism { generator: i, u, v });
            }
        }
    }
    Ok(())
}

/// All s-arcs in lexicographic order, flattened with stride `s + 1`.
fn arcs(g: &Graph, s: usize) -> Vec<u32> {
    let mut out = Vec::new();
    let mut walk = Vec::with_capacity(s + 1);
    fn extend(g: &Graph, s: usize, walk: &mut Vec<u32>, out: &mut Vec<u32>) {
        if walk.len() == s + 1 {
            out.extend_from_slice(walk);
            return;
        }
        let last = *walk.last().expect("walk starts at a vertex");
        let back = if walk.len() >= 2 { Some(walk[walk.len() - 2]) } else { None };
        for &w in g.neighbors(last) {
            if Some(w) != back {
                walk.push(w);
                extend(g, s, walk, out);
                walk.pop();
            }
        }
    }
    for v in 0..g.vertex_count() as u32 {
        walk.push(v);
        extend(g, s, &mut walk, &mut out);
        walk.pop();
    }
    out
}

fn find(parent: &mut [u32], mut x: u32) -> u32 {
    while parent[x as usize] != x {
        parent[x as usize] = parent[parent[x as usize] as usize];
        x = parent[x as usize];
    }
    x
}

/// Number of s-arcs of `g` and the number of orbits of `act` on them.
pub fn arc_orbit_count(g: &Graph, act: &GroupAction, s: usize) -> Result<ArcOrbits, ArcError> {
    if s > MAX_S {
        return Err(ArcError::ArcLength(s));
    }
    check_action(g, act)?;
    Ok(count_orbits(g, act, s))
}

fn count_orbits(g: &Graph, act: &GroupAction, s: usize) -> ArcOrbits {
    let stride = s + 1;
    let list = arcs(g, s);
    let n = list.len() / stride;
    let mut parent: Vec<u32> = (0..n as u32).collect();
    let mut orbit_count = n as u64;
    let mut image = vec![0u32; stride];
    for imgs in act.generator_images() {
        for i in 0..n {
            for (j, &v) in list[i * stride..(i + 1) * stride].iter().enumerate() {
                image[j] = imgs[v as usize];
            }
            let j = lookup(&list, stride, &image).expect("automorphisms map arcs to arcs");
            let (a, b) = (find(&mut parent, i as u32), find(&mut parent, j as u32));
            if a != b {
                parent[a.max(b) as usize] = a.min(b);
                orbit_count -= 1;
            }
        }
    }
    ArcOrbits { s, arc_count: n as u64, orbit_count }
}

fn lookup(list: &[u32], stride: usize, arc: &[u32]) -> Option<usize> {
    let n = list.len() / stride;
    let (mut lo, mut hi) = (0, n);
    while lo < hi {
        let mid = (lo + hi) / 2;
        match list[mid * stride..(mid + 1) * stride].cmp(arc) {
            std::cmp::Ordering::Less => lo = mid + 1,
            std::cmp::Ordering::Greater => hi = mid,
            std::cmp::Ordering::Equal => return Some(mid),
        }
    }
    None
}

/// Arc and orbit counts for every `s` in `0..=3`.
pub fn arc_orbit_profile(g: &Graph, act: &GroupAction) -> Result<ArcOrbitProfile, ArcError> {
    check_action(g, act)?;
    let levels = (0..=MAX_S).map(|s| count_orbits(g, act, s)).collect();
    Ok(ArcOrbitProfile { levels })
}

/// The `(G, s)`-transitivity level of `g`, capped at 3.
pub fn s_transitivity(g: &Graph, act: &GroupAction) -> Result<usize, ArcError> {
    check_action(g, act)?;
    let mut s = 0;
    for t in 0..=MAX_S {
        if count_orbits(g, act, t).orbit_count != 1 {
            break;
        }
        s = t;
    }
    Ok(s)
}

/// Group induced on the neighbors of a vertex by its stabilizer.
#[derive(Clone, Debug)]
pub struct LocalAction {
    pub vertex: u32,
    /// Neighbors in increasing order; point `i` of `group` is `neighbors[i]`.
    pub neighbors: Vec<u32>,
    pub group: PermutationGroup,
    /// Order of the vertex stabilizer in the acting group, `|G| / |v^G|`.
    pub stabilizer_order: u128,
}

impl LocalAction {
    pub fn is_two_transitive(&self) -> bool {
        is_two_transitive(&self.group)
    }
}

/// True if `g` is transitive and a point stabilizer is transitive on the rest.
pub fn is_two_transitive(g: &PermutationGroup) -> bool {
    let n = g.degree();
    if !g.is_transitive() {
        return false;
    }
    n <= 1 || g.point_stabilizer(0).orbit(1).len() == n - 1
}

/// Schreier tree of a vertex orbit: for each reached vertex, the generator
/// and parent that first reached it.
struct Tree {
    parent: Vec<Option<(u32, usize)>>,
    order: Vec<u32>,
}

fn schreier_tree(act: &GroupAction, root: u32) -> Tree {
    let mut parent = vec![None; act.point_count()];
    let mut reached = vec![false; act.point_count()];
    reached[root as usize] = true;
    let mut order = vec![root];
    let mut queue = VecDeque::from([root]);
    while let Some(x) = queue.pop_front() {
        for s in 0..act.generator_count() {
            let y = act.image(s, x);
            if !reached[y as usize] {
                reached[y as usize] = true;
                parent[y as usize] = Some((x, s));
                order.push(y);
                queue.push_back(y);
            }
        }
    }
    Tree { parent, order }
}

impl Tree {
    /// Generator word taking the root to `x`.
    fn word(&self, mut x: u32) -> Vec<usize> {
        let mut w = Vec::new();
        while let Some((p, s)) = self.parent[x as usize] {
            w.push(s);
            x = p;
        }
        w.reverse();
        w
    }
}

/// Stabilizer of vertex `v` in the acting group, with the induced group on
/// the neighbors of `v`.
pub fn local_action(g: &Graph, act: &GroupAction, v: u32) -> Result<LocalAction, ArcError> {
    check_action(g, act)?;
    if v as usize >= g.vertex_count() {
        return Err(ArcError::Vertex(v));
    }
    let inverse_images: Vec<Vec<u32>> = act
        .generator_images()
        .iter()
        .map(|imgs| {
            let mut inv = vec![0u32; imgs.len()];
            for (i, &j) in imgs.iter().enumerate() {
                inv[j as usize] = i as u32;
            }
            inv
        })
        .collect();
    let neighbors = g.neighbors(v).to_vec();
    let tree = schreier_tree(act, v);
    let mut words: Vec<Option<Vec<usize>>> = vec![None; g.vertex_count()];
    for &x in &tree.order {
        words[x as usize] = Some(tree.word(x));
    }

    // The Schreier generators u_x s u_{xs}^-1 generate the stabilizer; only
    // their action on the neighborhood is needed.
    let mut local: BTreeSet<Vec<u32>> = BTreeSet::new();
    for &x in &tree.order {
        let wx = words[x as usize].as_ref().expect("x in orbit");
        for s in 0..act.generator_count() {
            let y = act.image(s, x);
            let wy = words[y as usize].as_ref().expect("y in orbit");
            let images: Vec<u32> = neighbors
                .iter()
                .map(|&w| {
                    let mut p = act.image(s, act.apply_word(wx, w));
                    for &t in wy.iter().rev() {
                        p = inverse_images[t][p as usize];
                    }
                    neighbors.binary_search(&p).expect("stabilizer preserves the neighborhood") as u32
                })
                .collect();
            local.insert(images);
        }
    }
    let stabilizer_order = act.group().order() / tree.order.len() as u128;
    let local_gens = local.into_iter().map(|i| Permutation::new(i).expect("bijection on neighbors")).collect();
    let group = if neighbors.is_empty() { PermutationGroup::trivial(0) } else { PermutationGroup::new(local_gens)? };
    Ok(LocalAction { vertex: v, neighbors, group, stabilizer_order })
}

/// Number of orbits of `k` on its points by Burnside's lemma.
pub fn burnside_orbit_count(k: &PermutationGroup, cap: u128) -> Result<u64, ArcError> {
    let order = k.order();
    if order > cap {
        return Err(ArcError::TooLarge { cap, order });
    }
    let mut fixed: u128 = 0;
    k.for_each_element(|x| {
        fixed += x.fixed_point_count() as u128;
        true
    });
    debug_assert_eq!(fixed % order, 0);
    Ok((fixed / order) as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{complete_graph, cycle_graph};
    use crate::permgroup::group_from_cycles;

    fn natural(gens: &[&[&[u32]]], n: usize) -> GroupAction {
        GroupAction::natural(group_from_cycles(n, gens).unwrap())
    }

    #[test]
    fn k4_under_s4() {
        let act = natural(&[&[&[1, 2]], &[&[1, 2, 3, 4]]], 4);
        let g = complete_graph(4);
        let p = arc_orbit_profile(&g, &act).unwrap();
        let counts: Vec<(u64, u64)> = p.levels.iter().map(|l| (l.arc_count, l.orbit_count)).collect();
        assert_eq!(counts, vec![(4, 1), (12, 1), (24, 1), (48, 2)]);
        assert_eq!(p.transitivity(), 2);
        assert_eq!(s_transitivity(&g, &act).unwrap(), 2);
    }

    #[test]
    fn cycles() {
        let c5 = natural(&[&[&[1, 2, 3, 4, 5]], &[&[2, 5], &[3, 4]]], 5);
        let l = local_action(&cycle_graph(5), &c5, 0).unwrap();
        assert_eq!(l.group.order(), 2);
        assert_eq!(l.stabilizer_order, 2);
        let c6 = natural(&[&[&[1, 2, 3, 4, 5, 6]], &[&[2, 6], &[3, 5]]], 6);
        assert_eq!(s_transitivity(&cycle_graph(6), &c6).unwrap(), 3);
    }

    #[test]
    fn rejects_non_automorphism() {
        let act = natural(&[&[&[1, 2]]], 4);
        let err = arc_orbit_count(&cycle_graph(4), &act, 1).unwrap_err();
        assert!(matches!(err, ArcError::NotAnAutomorphism { generator: 0, .. }));
    }

    #[test]
    fn burnside() {
        assert_eq!(burnside_orbit_count(&PermutationGroup::trivial(5), 10).unwrap(), 5);
        let g = group_from_cycles(2, &[&[&[1, 2]]]).unwrap();
        assert_eq!(burnside_orbit_count(&g, 10).unwrap(), 1);
        let s4 = group_from_cycles(6, &[&[&[1, 2]], &[&[1, 2, 3, 4]]]).unwrap();
        assert_eq!(burnside_orbit_count(&s4, 100).unwrap(), 3);
    }
}
