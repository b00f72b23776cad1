//! The coset inclusion `Jx ↦ Kx` between coset graphs of `B ≤ A` with
//! stabilizers `J = K ∩ B`.

use serde::Serialize;

use crate::autiso::is_isomorphism;
use crate::classify::ClassifyError;
use crate::graphs::{coset_graph, CosetSpace, Graph};
use crate::permgroup::{Permutation, PermutationGroup};

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct SigmaReport {
    pub small_stabilizer_order: u128,
    pub large_stabilizer_order: u128,
    pub small_vertex_count: usize,
    pub large_vertex_count: usize,
    /// Every generator of `J` lies in `K`, so `Jx ↦ Kx` is well defined.
    pub well_defined: bool,
    pub bijection: bool,
    pub base_vertex_fixed: bool,
    pub edges_checked: usize,
    pub isomorphism: bool,
}

impl SigmaReport {
    pub fn verified(&self) -> bool {
        self.well_defined && self.bijection && self.base_vertex_fixed && self.isomorphism
    }
}

/// The map `σ` on vertex indices, with the two graphs.
#[derive(Clone, Debug)]
pub struct SigmaMap {
    pub small_graph: Graph,
    pub large_graph: Graph,
    pub map: Vec<u32>,
    pub report: SigmaReport,
}

/// Builds `Γ(B, J, g)` and `Γ(A, K, g)` and checks that `Jx ↦ Kx` (for
/// `x ∈ B`) is a graph isomorphism.
pub fn sigma_isomorphism(
    small_space: &CosetSpace,
    large_space: &CosetSpace,
    g: &Permutation,
) -> Result<SigmaMap, ClassifyError> {
    let j: &PermutationGroup = small_space.subgroup();
    let k: &PermutationGroup = large_space.subgroup();
    let well_defined = k.contains_group(j);
    let small_graph = coset_graph(small_space, g)?.graph;
    let large_graph = coset_graph(large_space, g)?.graph;
    let map: Vec<u32> = small_space
        .representatives()
        .iter()
        .map(|x| large_space.index_of(x).expect("B ≤ A"))
        .collect();
    let mut hit = vec![false; large_space.index()];
    for &m in &map {
        hit[m as usize] = true;
    }
    let bijection = map.len() == large_space.index() && hit.iter().all(|&h| h);
    let isomorphism = bijection && is_isomorphism(&small_graph, &large_graph, &map);
    let report = SigmaReport {
        small_stabilizer_order: j.order(),
        large_stabilizer_order: k.order(),
        small_vertex_count: small_space.index(),
        large_vertex_count: large_space.index(),
        well_defined,
        bijection,
        base_vertex_fixed: map.first() == Some(&0),
        edges_checked: small_graph.edge_count(),
        isomorphism,
    };
    Ok(SigmaMap { small_graph, large_graph, map, report })
}
