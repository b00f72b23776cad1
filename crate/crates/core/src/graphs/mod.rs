//! Finite simple graphs, coset graphs, Cayley graphs and quotients.

mod cayley;
mod coset;

use std::collections::VecDeque;
use std::fmt::Write as _;

use thiserror::Error;

use crate::permgroup::GroupError;

pub use cayley::{cayley_graph, CayleyGraph};
pub use coset::{coset_action, coset_graph, CosetGraph, CosetSpace, GroupAction};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for {count} vertices")]
    VertexOutOfRange { vertex: u32, count: usize },
    #[error("loop at vertex {0}")]
    Loop(u32),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(u32, u32),
    #[error("adjacency is not symmetric at {{{0}, {1}}}")]
    NotSymmetric(u32, u32),
    #[error("blocks do not partition the vertex set")]
    NotAPartition,
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("subgroup generator {0} is not in the group")]
    NotASubgroup(usize),
    #[error("element is not in the group")]
    ElementNotInGroup,
    #[error("g normalizes K")]
    NormalizesSubgroup,
    #[error("g^2 is not in K")]
    SquareNotInSubgroup,
    #[error("connection set contains the identity")]
    IdentityInConnectionSet,
    #[error("connection set is not closed under inverses")]
    NotInverseClosed,
    #[error("connection set element {0} is not in the group")]
    ConnectionElementNotInGroup(usize),
    #[error("group too large to enumerate: {0}")]
    TooLarge(String),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// A finite simple undirected graph with sorted adjacency lists.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    adjacency: Vec<Vec<u32>>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph { adjacency: vec![Vec::new(); n] }
    }

    /// Builds a graph from adjacency lists, checking simplicity and symmetry.
    pub fn from_adjacency(mut adjacency: Vec<Vec<u32>>) -> Result<Self, GraphError> {
        let n = adjacency.len();
        for (v, list) in adjacency.iter_mut().enumerate() {
            list.sort_unstable();
            for w in list.windows(2) {
                if w[0] == w[1] {
                    return Err(GraphError::DuplicateEdge(v as u32, w[0]));
                }
            }
            for &u in list.iter() {
                if u as usize >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: u, count: n });
                }
                if u as usize == v {
                    return Err(GraphError::Loop(u));
                }
            }
        }
        for (v, list) in adjacency.iter().enumerate() {
            for &u in list {
                if adjacency[u as usize].binary_search(&(v as u32)).is_err() {
                    return Err(GraphError::NotSymmetric(v as u32, u));
                }
            }
        }
        Ok(Graph { adjacency })
    }

    pub fn from_edges(n: usize, edges: &[(u32, u32)]) -> Result<Self, GraphError> {
        let mut adjacency = vec![Vec::new(); n];
        for &(u, v) in edges {
            for x in [u, v] {
                if x as usize >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: x, count: n });
                }
            }
            if u == v {
                return Err(GraphError::Loop(u));
            }
            adjacency[u as usize].push(v);
            adjacency[v as usize].push(u);
        }
        Self::from_adjacency(adjacency)
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: u32) -> &[u32] {
        &self.adjacency[v as usize]
    }

    /// Neighbors of `v`, or an error when `v` is out of range.
    pub fn neighborhood(&self, v: u32) -> Result<Vec<u32>, GraphError> {
        self.adjacency
            .get(v as usize)
            .cloned()
            .ok_or(GraphError::VertexOutOfRange { vertex: v, count: self.vertex_count() })
    }

    pub fn adjacency(&self) -> &[Vec<u32>] {
        &self.adjacency
    }

    pub fn degree(&self, v: u32) -> usize {
        self.adjacency[v as usize].len()
    }

    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        self.adjacency[u as usize].binary_search(&v).is_ok()
    }

    /// The common valency, if the graph is regular and nonempty.
    pub fn valency(&self) -> Option<usize> {
        let d = self.adjacency.first()?.len();
        self.adjacency.iter().all(|a| a.len() == d).then_some(d)
    }

    /// Sorted edge list with `u < v`.
    pub fn edges(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (u, list) in self.adjacency.iter().enumerate() {
            for &v in list {
                if (u as u32) < v {
                    out.push((u as u32, v));
                }
            }
        }
        out
    }

    /// Connectivity by breadth-first search from vertex 0; the empty graph counts as connected.
    pub fn is_connected(&self) -> bool {
        let n = self.vertex_count();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut queue = VecDeque::from([0u32]);
        let mut count = 1;
        while let Some(v) = queue.pop_front() {
            for &u in self.neighbors(v) {
                if !seen[u as usize] {
                    seen[u as usize] = true;
                    count += 1;
                    queue.push_back(u);
                }
            }
        }
        count == n
    }

    /// Graph with vertex `v` renamed to `perm[v]`.
    pub fn relabel(&self, perm: &[u32]) -> Graph {
        let mut adjacency = vec![Vec::new(); self.vertex_count()];
        for (v, list) in self.adjacency.iter().enumerate() {
            let mut mapped: Vec<u32> = list.iter().map(|&u| perm[u as usize]).collect();
            mapped.sort_unstable();
            adjacency[perm[v] as usize] = mapped;
        }
        Graph { adjacency }
    }

    /// Quotient by a partition: one vertex per block, adjacent when some edge crosses.
    pub fn quotient(&self, blocks: &[Vec<u32>]) -> Result<Graph, GraphError> {
        let n = self.vertex_count();
        let mut block_of = vec![u32::MAX; n];
        for (b, block) in blocks.iter().enumerate() {
            for &v in block {
                if v as usize >= n || block_of[v as usize] != u32::MAX {
                    return Err(GraphError::NotAPartition);
                }
                block_of[v as usize] = b as u32;
            }
        }
        if block_of.contains(&u32::MAX) {
            return Err(GraphError::NotAPartition);
        }
        let mut adjacency = vec![Vec::new(); blocks.len()];
        for (u, v) in self.edges() {
            let (a, b) = (block_of[u as usize], block_of[v as usize]);
            if a != b {
                adjacency[a as usize].push(b);
                adjacency[b as usize].push(a);
            }
        }
        for list in &mut adjacency {
            list.sort_unstable();
            list.dedup();
        }
        Ok(Graph { adjacency })
    }

    /// The edge-list export format: a `graph <n> <m>` header, then sorted `u v` lines with `u < v`.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::with_capacity(12 * self.edge_count() + 32);
        let _ = writeln!(out, "graph {} {}", self.vertex_count(), self.edge_count());
        for (u, v) in self.edges() {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }

    /// Parses the edge-list format. Errors carry 1-based line numbers.
    pub fn parse_edge_list(text: &str) -> Result<Graph, GraphError> {
        let err = |line: usize, message: &str| GraphError::Parse { line, message: message.to_string() };
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim_end_matches('\r').trim()));
        let (hline, header) = lines.by_ref().find(|(_, l)| !l.is_empty()).ok_or_else(|| err(1, "missing header"))?;
        let parts: Vec<&str> = header.split_whitespace().collect();
        let (n, m) = match parts.as_slice() {
            ["graph", n, m] => (
                n.parse::<usize>().map_err(|_| err(hline, "bad vertex count"))?,
                m.parse::<usize>().map_err(|_| err(hline, "bad edge count"))?,
            ),
            _ => return Err(err(hline, "expected `graph <vertices> <edges>`")),
        };
        let mut adjacency: Vec<Vec<u32>> = vec![Vec::new(); n];
        let mut count = 0usize;
        let mut last = hline;
        for (lineno, line) in lines {
            last = lineno;
            if line.is_empty() {
                continue;
            }
            let nums: Vec<&str> = line.split_whitespace().collect();
            let (u, v) = match nums.as_slice() {
                [u, v] => (
                    u.parse::<u32>().map_err(|_| err(lineno, "bad vertex"))?,
                    v.parse::<u32>().map_err(|_| err(lineno, "bad vertex"))?,
                ),
                _ => return Err(err(lineno, "expected `u v`")),
            };
            if u as usize >= n || v as usize >= n {
                return Err(err(lineno, "vertex out of range"));
            }
            if u == v {
                return Err(err(lineno, "loop"));
            }
            if adjacency[u as usize].contains(&v) {
                return Err(err(lineno, "duplicate edge"));
            }
            adjacency[u as usize].push(v);
            adjacency[v as usize].push(u);
            count += 1;
        }
        if count != m {
            return Err(err(last, &format!("header announces {m} edges, found {count}")));
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Ok(Graph { adjacency })
    }
}

/// Complete graph on `n` vertices.
pub fn complete_graph(n: usize) -> Graph {
    let adjacency = (0..n as u32).map(|v| (0..n as u32).filter(|&u| u != v).collect()).collect();
    Graph { adjacency }
}

/// Cycle on `n >= 3` vertices.
pub fn cycle_graph(n: usize) -> Graph {
    let n32 = n as u32;
    let adjacency = (0..n32)
        .map(|v| {
            let mut a = vec![(v + 1) % n32, (v + n32 - 1) % n32];
            a.sort_unstable();
            a
        })
        .collect();
    Graph { adjacency }
}

/// The Petersen graph: outer 5-cycle, inner pentagram, spokes.
pub fn petersen_graph() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5u32 {
        edges.push((i, (i + 1) % 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
        edges.push((i, 5 + i));
    }
    Graph::from_edges(10, &edges).expect("valid edges")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complete_and_cycle() {
        let k4 = complete_graph(4);
        assert_eq!(k4.neighborhood(0).unwrap(), vec![1, 2, 3]);
        assert_eq!(k4.edge_count(), 6);
        assert!(cycle_graph(5).is_connected());
        assert_eq!(petersen_graph().valency(), Some(3));
    }

    #[test]
    fn disjoint_edges_disconnected() {
        let g = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert!(!g.is_connected());
        assert!(Graph::empty(0).is_connected());
    }

    #[test]
    fn quotient_examples() {
        let c6 = cycle_graph(6);
        let singles: Vec<Vec<u32>> = (0..6).map(|v| vec![v]).collect();
        assert_eq!(c6.quotient(&singles).unwrap(), c6);
        let antipodal = vec![vec![0, 3], vec![1, 4], vec![2, 5]];
        assert_eq!(c6.quotient(&antipodal).unwrap(), complete_graph(3));
        let one = c6.quotient(&[(0..6).collect()]).unwrap();
        assert_eq!((one.vertex_count(), one.edge_count()), (1, 0));
        assert_eq!(c6.quotient(&[vec![0, 1]]), Err(GraphError::NotAPartition));
    }

    #[test]
    fn edge_list_round_trip_and_errors() {
        let p = petersen_graph();
        let text = p.to_edge_list();
        assert!(text.starts_with("graph 10 15\n"));
        assert_eq!(Graph::parse_edge_list(&text).unwrap(), p);
        let crlf = text.replace('\n', "\r\n");
        assert_eq!(Graph::parse_edge_list(&crlf).unwrap(), p);
        let bad = "graph 3 2\n0 1\n1 x\n";
        assert_eq!(Graph::parse_edge_list(bad), Err(GraphError::Parse { line: 3, message: "bad vertex".into() }));
        assert!(matches!(Graph::parse_edge_list("graph 3 1\n0 0\n"), Err(GraphError::Parse { line: 2, .. })));
    }

    #[test]
    fn rejects_asymmetric() {
        assert_eq!(Graph::from_adjacency(vec![vec![1], vec![]]), Err(GraphError::NotSymmetric(0, 1)));
    }
}
