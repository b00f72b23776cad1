//! Canonical labeling, isomorphism testing and automorphism groups of graphs
//! by individualization–refinement.

mod partition;
mod search;

use std::collections::BTreeMap;

use num_bigint::BigUint;
use serde::Serialize;
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::graphs::Graph;
use crate::permgroup::{GroupError, Permutation, PermutationGroup};

use partition::{Csr, Partition, Scratch};

/// Largest graph accepted by `automorphism_group`.
pub const DEFAULT_VERTEX_CAP: usize = 20_000;

/// Seed for the known-order chain built from automorphism generators.
const AUT_CHAIN_SEED: u64 = 0x0a07_15e5;

#[derive(Debug, Error)]
pub enum AutError {
    #[error("graph has {count} vertices, above the cap of {cap}")]
    TooLarge { count: usize, cap: usize },
    #[error("color array has length {colors}, graph has {vertices} vertices")]
    ColorLength { colors: usize, vertices: usize },
    #[error("automorphism check failed: {0}")]
    Unsound(String),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// A graph with a vertex coloring.
#[derive(Clone, Debug)]
pub struct ColoredGraph {
    pub graph: Graph,
    pub colors: Vec<u32>,
}

impl ColoredGraph {
    pub fn uniform(graph: Graph) -> Self {
        let colors = vec![0; graph.vertex_count()];
        ColoredGraph { graph, colors }
    }

    pub fn new(graph: Graph, colors: Vec<u32>) -> Result<Self, AutError> {
        if colors.len() != graph.vertex_count() {
            return Err(AutError::ColorLength { colors: colors.len(), vertices: graph.vertex_count() });
        }
        Ok(ColoredGraph { graph, colors })
    }
}

/// Coarsest equitable refinement of the coloring; colors are cell indices in
/// the refined ordered partition.
pub fn refine(cg: &ColoredGraph) -> Vec<u32> {
    let n = cg.graph.vertex_count();
    if n == 0 {
        return Vec::new();
    }
    let csr = Csr::new(&cg.graph);
    let mut scratch = Scratch::new(n);
    let (mut p, starts) = Partition::from_colors(&cg.colors);
    p.refine(&csr, &starts, &mut scratch);
    let starts = p.cell_starts();
    let mut colors = vec![0u32; n];
    for v in 0..n as u32 {
        colors[v as usize] = starts.binary_search(&p.cell_of(v)).expect("cell start") as u32;
    }
    colors
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalForm {
    /// Vertex `v` of the input becomes vertex `relabeling.image(v)`.
    pub relabeling: Permutation,
    pub canonical_edge_list: Vec<(u32, u32)>,
    /// SHA-256 of the canonical graph in edge-list export format, hex encoded.
    pub certificate_hash: String,
}

impl CanonicalForm {
    pub fn canonical_graph(&self, n: usize) -> Graph {
        Graph::from_edges(n, &self.canonical_edge_list).expect("relabeled simple graph")
    }
}

fn run(g: &Graph) -> search::SearchResult {
    let csr = Csr::new(g);
    search::search(&csr, &vec![0; g.vertex_count()])
}

fn form_from(g: &Graph, labels: Vec<u32>) -> CanonicalForm {
    let canonical = g.relabel(&labels);
    let certificate_hash = hex::encode(Sha256::digest(canonical.to_edge_list().as_bytes()));
    CanonicalForm {
        relabeling: Permutation::new(labels).expect("leaf labeling is a bijection"),
        canonical_edge_list: canonical.edges(),
        certificate_hash,
    }
}

pub fn canonical_form(g: &Graph) -> CanonicalForm {
    if g.vertex_count() == 0 {
        return form_from(g, Vec::new());
    }
    let r = run(g);
    form_from(g, r.best_labels)
}

/// An explicit isomorphism `v -> map[v]` from `g1` to `g2`, if one exists.
pub fn are_isomorphic(g1: &Graph, g2: &Graph) -> Option<Vec<u32>> {
    if g1.vertex_count() != g2.vertex_count() || g1.edge_count() != g2.edge_count() {
        return None;
    }
    let mut d1: Vec<usize> = (0..g1.vertex_count() as u32).map(|v| g1.degree(v)).collect();
    let mut d2: Vec<usize> = (0..g2.vertex_count() as u32).map(|v| g2.degree(v)).collect();
    d1.sort_unstable();
    d2.sort_unstable();
    if d1 != d2 {
        return None;
    }
    let c1 = canonical_form(g1);
    let c2 = canonical_form(g2);
    if c1.canonical_edge_list != c2.canonical_edge_list {
        return None;
    }
    let inv2 = c2.relabeling.inverse();
    let map: Vec<u32> = (0..g1.vertex_count() as u32).map(|v| inv2.image(c1.relabeling.image(v))).collect();
    is_isomorphism(g1, g2, &map).then_some(map)
}

/// Whether `map` is an isomorphism from `g1` onto `g2`.
pub fn is_isomorphism(g1: &Graph, g2: &Graph, map: &[u32]) -> bool {
    if g1.vertex_count() != g2.vertex_count() || g1.edge_count() != g2.edge_count() || map.len() != g1.vertex_count() {
        return false;
    }
    if Permutation::new(map.to_vec()).is_err() {
        return false;
    }
    g1.edges().iter().all(|&(u, v)| g2.has_edge(map[u as usize], map[v as usize]))
}

/// Full automorphism group of a graph.
#[derive(Clone, Debug)]
pub struct AutomorphismGroup {
    pub generators: Vec<Permutation>,
    pub order: BigUint,
    pub group: PermutationGroup,
    pub search_nodes: u64,
}

pub fn automorphism_group(g: &Graph) -> Result<AutomorphismGroup, AutError> {
    automorphism_group_with_cap(g, DEFAULT_VERTEX_CAP)
}

pub fn automorphism_group_with_cap(g: &Graph, cap: usize) -> Result<AutomorphismGroup, AutError> {
    let n = g.vertex_count();
    if n > cap {
        return Err(AutError::TooLarge { count: n, cap });
    }
    if n == 0 {
        return Ok(AutomorphismGroup {
            generators: Vec::new(),
            order: BigUint::from(1u32),
            group: PermutationGroup::trivial(0),
            search_nodes: 0,
        });
    }
    let r = run(g);
    let order = r.orbit_lengths.iter().fold(BigUint::from(1u32), |acc, &l| acc * BigUint::from(l));
    let generators: Vec<Permutation> =
        r.generators.into_iter().map(|x| Permutation::new(x).expect("automorphism is a bijection")).collect();
    for (i, a) in generators.iter().enumerate() {
        if !is_isomorphism(g, g, a.images()) {
            return Err(AutError::Unsound(format!("generator {i} does not preserve edges")));
        }
    }
    let group = if generators.is_empty() {
        PermutationGroup::trivial(n)
    } else {
        PermutationGroup::with_known_order(generators.clone(), &order, AUT_CHAIN_SEED)?
    };
    Ok(AutomorphismGroup { generators, order, group, search_nodes: r.nodes })
}

/// Isomorphism invariants used as a cheap pre-filter.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantSignature {
    pub degree_sequence: Vec<usize>,
    /// `None` for forests.
    pub girth: Option<usize>,
    /// Number of cycles of each length 3..=8.
    pub cycle_counts: BTreeMap<usize, u64>,
    /// Cell size -> number of cells of that size in the refined uniform coloring.
    pub refinement_histogram: BTreeMap<usize, usize>,
}

pub const MAX_CYCLE_LENGTH: usize = 8;

pub fn invariant_signature(g: &Graph) -> InvariantSignature {
    let n = g.vertex_count();
    let mut degree_sequence: Vec<usize> = (0..n as u32).map(|v| g.degree(v)).collect();
    degree_sequence.sort_unstable();
    let colors = refine(&ColoredGraph::uniform(g.clone()));
    let mut sizes: BTreeMap<u32, usize> = BTreeMap::new();
    for c in colors {
        *sizes.entry(c).or_default() += 1;
    }
    let mut refinement_histogram = BTreeMap::new();
    for s in sizes.values() {
        *refinement_histogram.entry(*s).or_default() += 1;
    }
    InvariantSignature { degree_sequence, girth: girth(g), cycle_counts: cycle_counts(g, MAX_CYCLE_LENGTH), refinement_histogram }
}

/// Length of a shortest cycle, by breadth-first search from every vertex.
pub fn girth(g: &Graph) -> Option<usize> {
    let n = g.vertex_count();
    let mut best: Option<usize> = None;
    let mut dist = vec![u32::MAX; n];
    let mut parent = vec![u32::MAX; n];
    let mut queue = std::collections::VecDeque::new();
    let mut seen = Vec::new();
    for s in 0..n as u32 {
        for &v in &seen {
            dist[v as usize] = u32::MAX;
        }
        seen.clear();
        dist[s as usize] = 0;
        seen.push(s);
        queue.clear();
        queue.push_back(s);
        'bfs: while let Some(v) = queue.pop_front() {
            if let Some(b) = best {
                if 2 * dist[v as usize] as usize + 1 >= b {
                    break;
                }
            }
            for &u in g.neighbors(v) {
                if dist[u as usize] == u32::MAX {
                    dist[u as usize] = dist[v as usize] + 1;
                    parent[u as usize] = v;
                    seen.push(u);
                    queue.push_back(u);
                } else if parent[v as usize] != u {
                    let len = (dist[u as usize] + dist[v as usize] + 1) as usize;
                    if best.is_none_or(|b| len < b) {
                        best = Some(len);
                    }
                    if dist[u as usize] == dist[v as usize] {
                        break 'bfs;
                    }
                }
            }
        }
    }
    best
}

/// Number of cycles of each length `3..=max_len`.
///
/// Enumerates paths, so the cost grows like `n·d^(max_len-1)`; intended for sparse graphs.
pub fn cycle_counts(g: &Graph, max_len: usize) -> BTreeMap<usize, u64> {
    let n = g.vertex_count();
    let mut counts: BTreeMap<usize, u64> = (3..=max_len).map(|l| (l, 0)).collect();
    let mut on_path = vec![false; n];
    fn walk(
        g: &Graph,
        start: u32,
        v: u32,
        len: usize,
        max_len: usize,
        on_path: &mut [bool],
        counts: &mut BTreeMap<usize, u64>,
    ) {
        for &u in g.neighbors(v) {
            if u == start && len >= 3 {
                *counts.get_mut(&len).expect("length in range") += 1;
            } else if u > start && !on_path[u as usize] && len < max_len {
                on_path[u as usize] = true;
                walk(g, start, u, len + 1, max_len, on_path, counts);
                on_path[u as usize] = false;
            }
        }
    }
    for s in 0..n as u32 {
        on_path[s as usize] = true;
        walk(g, s, s, 1, max_len, &mut on_path, &mut counts);
        on_path[s as usize] = false;
    }
    for c in counts.values_mut() {
        *c /= 2;
    }
    counts
}
