use std::collections::HashMap;

use crate::graphs::{Graph, GraphError};
use crate::permgroup::{Permutation, PermutationGroup};

const CAYLEY_ELEMENT_CAP: u128 = 2_000_000;

/// `Cay(G, S)` with the group elements that label its vertices.
#[derive(Clone, Debug)]
pub struct CayleyGraph {
    pub graph: Graph,
    pub elements: Vec<Permutation>,
    pub connected: bool,
}

/// Cayley graph on the elements of `G` (in chain enumeration order), with `x ~ s·x` for `s ∈ S`.
pub fn cayley_graph(group: &PermutationGroup, connection: &[Permutation]) -> Result<CayleyGraph, GraphError> {
    for (i, s) in connection.iter().enumerate() {
        if s.is_identity() {
            return Err(GraphError::IdentityInConnectionSet);
        }
        if !group.contains(s) {
            return Err(GraphError::ConnectionElementNotInGroup(i));
        }
        if !connection.contains(&s.inverse()) {
            return Err(GraphError::NotInverseClosed);
        }
    }
    let elements = group.elements(CAYLEY_ELEMENT_CAP).map_err(|e| GraphError::TooLarge(e.to_string()))?;
    let index: HashMap<&Permutation, u32> = elements.iter().enumerate().map(|(i, x)| (x, i as u32)).collect();
    let mut distinct: Vec<&Permutation> = connection.iter().collect();
    distinct.sort();
    distinct.dedup();
    let adjacency: Vec<Vec<u32>> =
        elements.iter().map(|x| distinct.iter().map(|s| index[&s.compose(x)]).collect()).collect();
    let graph = Graph::from_adjacency(adjacency)?;
    let connected = graph.is_connected();
    Ok(CayleyGraph { graph, elements, connected })
}
