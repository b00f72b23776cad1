use std::collections::HashMap;

use rayon::prelude::*;

use crate::graphs::{Graph, GraphError};
use crate::permgroup::{Permutation, PermutationGroup};

/// Subgroups up to this order are enumerated when checking faithfulness.
const KERNEL_ENUMERATION_CAP: u128 = 100_000;

/// The right cosets `Kx` of `K` in `G`, indexed by breadth-first search from
/// `K` over the generators of `G` in order.
#[derive(Clone, Debug)]
pub struct CosetSpace {
    group: PermutationGroup,
    subgroup: PermutationGroup,
    /// `K` with base `0, 1, ..., n-1`, used to find the least element of a coset.
    keyer: PermutationGroup,
    representatives: Vec<Permutation>,
    index: HashMap<Vec<u32>, u32>,
    faithful: bool,
}

/// A group acting on `0..point_count` through images of its generators.
#[derive(Clone, Debug)]
pub struct GroupAction {
    group: PermutationGroup,
    images: Vec<Vec<u32>>,
}

impl GroupAction {
    /// Action given by the image of each generator; images must be bijections.
    pub fn new(group: PermutationGroup, images: Vec<Vec<u32>>) -> Result<Self, GraphError> {
        for imgs in &images {
            Permutation::new(imgs.clone()).map_err(|e| GraphError::Group(e.into()))?;
        }
        Ok(GroupAction { group, images })
    }

    /// The natural action of a permutation group on its points.
    pub fn natural(group: PermutationGroup) -> Self {
        let images = group.generators().iter().map(|g| g.images().to_vec()).collect();
        GroupAction { group, images }
    }

    pub fn group(&self) -> &PermutationGroup {
        &self.group
    }

    pub fn point_count(&self) -> usize {
        self.images.first().map(Vec::len).unwrap_or(0)
    }

    pub fn generator_count(&self) -> usize {
        self.images.len()
    }

    pub fn image(&self, generator: usize, point: u32) -> u32 {
        self.images[generator][point as usize]
    }

    pub fn generator_images(&self) -> &[Vec<u32>] {
        &self.images
    }

    /// Generator images as permutations of the points.
    pub fn permutations(&self) -> Vec<Permutation> {
        self.images.iter().map(|i| Permutation::new(i.clone()).expect("validated bijection")).collect()
    }

    /// Image of a word in the generators, applied left to right.
    pub fn apply_word(&self, word: &[usize], point: u32) -> u32 {
        word.iter().fold(point, |p, &g| self.image(g, p))
    }
}

impl CosetSpace {
    /// Enumerates the right cosets of `K` in `G`.
    pub fn new(group: &PermutationGroup, subgroup: &PermutationGroup) -> Result<Self, GraphError> {
        for (i, k) in subgroup.generators().iter().enumerate() {
            if !group.contains(k) {
                return Err(GraphError::NotASubgroup(i));
            }
        }
        let n = group.degree();
        let prefix: Vec<u32> = (0..n as u32).collect();
        let keyer = subgroup.with_base_prefix(&prefix);
        let mut space = CosetSpace {
            group: group.clone(),
            subgroup: subgroup.clone(),
            keyer,
            representatives: Vec::new(),
            index: HashMap::new(),
            faithful: false,
        };
        let identity = Permutation::identity(n);
        space.index.insert(space.key(&identity), 0);
        space.representatives.push(identity);
        let mut i = 0;
        while i < space.representatives.len() {
            for s in group.generators() {
                let x = space.representatives[i].compose(s);
                let key = space.key(&x);
                if !space.index.contains_key(&key) {
                    space.index.insert(key, space.representatives.len() as u32);
                    space.representatives.push(x);
                }
            }
            i += 1;
        }
        space.faithful = space.compute_faithful();
        Ok(space)
    }

    /// The least element of `Kx` (lexicographic on images), identifying the coset.
    pub fn key(&self, x: &Permutation) -> Vec<u32> {
        let mut cur = x.clone();
        for lv in self.keyer.levels() {
            if lv.orbit.len() == 1 {
                continue;
            }
            let q = *lv.orbit.iter().min_by_key(|&&q| cur.image(q)).expect("nonempty orbit");
            if q != lv.base {
                cur = lv.rep(q).compose(&cur);
            }
        }
        cur.into_images()
    }

    pub fn index_of(&self, x: &Permutation) -> Option<u32> {
        self.index.get(&self.key(x)).copied()
    }

    pub fn index(&self) -> usize {
        self.representatives.len()
    }

    pub fn representatives(&self) -> &[Permutation] {
        &self.representatives
    }

    pub fn group(&self) -> &PermutationGroup {
        &self.group
    }

    pub fn subgroup(&self) -> &PermutationGroup {
        &self.subgroup
    }

    /// True when `K` is core-free, so `G` acts faithfully on the cosets.
    pub fn is_faithful(&self) -> bool {
        self.faithful
    }

    /// Image of coset `i` under right multiplication by `x`.
    pub fn act(&self, i: u32, x: &Permutation) -> u32 {
        self.index_of(&self.representatives[i as usize].compose(x)).expect("x lies in G")
    }

    /// Permutation of the cosets induced by `x`.
    pub fn action_of(&self, x: &Permutation) -> Permutation {
        let imgs: Vec<u32> = (0..self.index() as u32).into_par_iter().map(|i| self.act(i, x)).collect();
        Permutation::new(imgs).expect("right multiplication permutes cosets")
    }

    /// The action of `G` on the cosets.
    pub fn action(&self) -> GroupAction {
        let images = self.group.generators().iter().map(|s| self.action_of(s).into_images()).collect();
        GroupAction { group: self.group.clone(), images }
    }

    fn compute_faithful(&self) -> bool {
        if self.subgroup.is_trivial() {
            return true;
        }
        if self.subgroup.try_order().is_some_and(|o| o <= KERNEL_ENUMERATION_CAP) {
            let mut faithful = true;
            self.subgroup.for_each_element(|k| {
                if k.is_identity() {
                    return true;
                }
                let fixes_all = (0..self.index() as u32).all(|i| self.act(i, k) == i);
                if fixes_all {
                    faithful = false;
                }
                faithful
            });
            return faithful;
        }
        let perms = self.action().permutations();
        let image = PermutationGroup::new(perms).expect("nonempty generators");
        image.order_big() == self.group.order_big()
    }
}

/// The action of `G` on the right cosets of `K`, indexed from the coset `K` (index 0).
pub fn coset_action(
    group: &PermutationGroup,
    subgroup: &PermutationGroup,
) -> Result<(CosetSpace, GroupAction), GraphError> {
    let space = CosetSpace::new(group, subgroup)?;
    let action = space.action();
    Ok((space, action))
}

/// A coset graph together with the data used to build it.
#[derive(Clone, Debug)]
pub struct CosetGraph {
    pub graph: Graph,
    pub element: Permutation,
    /// Representatives `t` of the cosets `Kt` adjacent to `K`.
    pub base_neighbors: Vec<Permutation>,
    pub connected: bool,
}

/// Coset graph `Γ(G, K, g)`: `Kx ~ Ky` iff `xy⁻¹ ∈ KgK`, built inside `space`.
pub fn coset_graph(space: &CosetSpace, g: &Permutation) -> Result<CosetGraph, GraphError> {
    let k = space.subgroup();
    if !space.group().contains(g) {
        return Err(GraphError::ElementNotInGroup);
    }
    if !k.contains(&g.compose(g)) {
        return Err(GraphError::SquareNotInSubgroup);
    }
    if k.generators().iter().all(|h| k.contains(&h.conjugate_by(g))) {
        return Err(GraphError::NormalizesSubgroup);
    }
    let mut seen: HashMap<u32, ()> = HashMap::new();
    let mut base = vec![g.clone()];
    seen.insert(space.index_of(g).expect("g in G"), ());
    let mut i = 0;
    while i < base.len() {
        for h in k.generators() {
            let t = base[i].compose(h);
            let idx = space.index_of(&t).expect("in G");
            if seen.insert(idx, ()).is_none() {
                base.push(t);
            }
        }
        i += 1;
    }
    let adjacency: Vec<Vec<u32>> = space
        .representatives()
        .par_iter()
        .map(|r| base.iter().map(|t| space.index_of(&t.compose(r)).expect("in G")).collect())
        .collect();
    let graph = Graph::from_adjacency(adjacency)?;
    let connected = graph.is_connected();
    Ok(CosetGraph { graph, element: g.clone(), base_neighbors: base, connected })
}
