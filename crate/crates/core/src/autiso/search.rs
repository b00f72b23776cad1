//! Individualization–refinement search tree.
//!
//! The first path is processed bottom-up. At each first-path node, children
//! in the same orbit (under automorphisms found so far, all of which fix the
//! path above that node) as an explored child are skipped. A non-first
//! subtree is abandoned as soon as it yields an automorphism, since the whole
//! subtree is then the image of one already explored.
//!
//! The canonical leaf is the least by (trace sequence, certificate); a
//! subtree whose trace already exceeds the best one and differs from the
//! first path cannot contain the canonical leaf or an automorphism to the
//! first leaf.

use std::cmp::Ordering;

use crate::autiso::partition::{Csr, Partition, Scratch};

pub(crate) struct SearchResult {
    pub generators: Vec<Vec<u32>>,
    /// Orbit length of the first-path vertex at each level.
    pub orbit_lengths: Vec<usize>,
    /// Vertex to label for the canonical leaf.
    pub best_labels: Vec<u32>,
    pub nodes: u64,
}

struct UnionFind {
    parent: Vec<u32>,
    size: Vec<u32>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n as u32).collect(), size: vec![1; n] }
    }

    fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let p = self.parent[x as usize];
            self.parent[x as usize] = self.parent[p as usize];
            x = p;
        }
        x
    }

    fn union(&mut self, a: u32, b: u32) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        let (big, small) = if self.size[ra as usize] >= self.size[rb as usize] { (ra, rb) } else { (rb, ra) };
        self.parent[small as usize] = big;
        self.size[big as usize] += self.size[small as usize];
    }

    fn orbit_len(&mut self, x: u32) -> usize {
        let r = self.find(x);
        self.size[r as usize] as usize
    }
}

/// Flattened relabeled adjacency: for each label, degree then sorted neighbor labels.
pub(crate) fn certificate(g: &Csr, labels: &[u32]) -> Vec<u32> {
    let n = g.vertex_count();
    let mut inv = vec![0u32; n];
    for (v, &l) in labels.iter().enumerate() {
        inv[l as usize] = v as u32;
    }
    let mut out = Vec::with_capacity(n + g_edges(g));
    let mut buf: Vec<u32> = Vec::new();
    for &v in &inv {
        buf.clear();
        buf.extend(g.neighbors(v).iter().map(|&u| labels[u as usize]));
        buf.sort_unstable();
        out.push(buf.len() as u32);
        out.extend_from_slice(&buf);
    }
    out
}

fn g_edges(g: &Csr) -> usize {
    (0..g.vertex_count() as u32).map(|v| g.neighbors(v).len()).sum()
}

enum Flow {
    Continue,
    /// Abandon the current non-first subtree.
    Jump,
}

struct Leaf {
    traces: Vec<u64>,
    labels: Vec<u32>,
    certificate: Vec<u32>,
}

struct Search<'a> {
    g: &'a Csr,
    scratch: Scratch,
    first: Leaf,
    best: Leaf,
    best_in_subtree: bool,
    uf: UnionFind,
    generators: Vec<Vec<u32>>,
    nodes: u64,
}

impl Search<'_> {
    fn child(&mut self, node: &Partition, v: u32) -> (Partition, u64) {
        let mut p = node.clone();
        let s = p.individualize(v);
        let t = p.refine(self.g, &[s], &mut self.scratch);
        self.nodes += 1;
        (p, t)
    }

    fn record(&mut self, from: &[u32], to: &[u32]) {
        // automorphism v -> from⁻¹(to(v))
        let n = from.len();
        let mut inv = vec![0u32; n];
        for (v, &l) in from.iter().enumerate() {
            inv[l as usize] = v as u32;
        }
        let gamma: Vec<u32> = to.iter().map(|&l| inv[l as usize]).collect();
        if gamma.iter().enumerate().all(|(i, &x)| i as u32 == x) {
            return;
        }
        for (v, &w) in gamma.iter().enumerate() {
            self.uf.union(v as u32, w);
        }
        self.generators.push(gamma);
    }

    fn dfs(&mut self, node: &Partition, traces: &mut Vec<u64>) -> Flow {
        let depth = traces.len() - 1;
        let eq_first = self.first.traces.get(depth) == traces.last();
        let best_cmp = compare_prefix(traces, &self.best.traces);
        if !eq_first && best_cmp == Ordering::Greater {
            return Flow::Continue;
        }
        if node.is_discrete() {
            let labels = node.labels().to_vec();
            let cert = certificate(self.g, &labels);
            if *traces == self.first.traces && cert == self.first.certificate {
                let first = self.first.labels.clone();
                self.record(&first, &labels);
                return Flow::Jump;
            }
            match compare_leaf(traces, &cert, &self.best) {
                Ordering::Equal => {
                    let best = self.best.labels.clone();
                    self.record(&best, &labels);
                    if !self.best_in_subtree {
                        return Flow::Jump;
                    }
                }
                Ordering::Less => {
                    self.best = Leaf { traces: traces.clone(), labels, certificate: cert };
                    self.best_in_subtree = true;
                }
                Ordering::Greater => {}
            }
            return Flow::Continue;
        }
        let target = node.target_cell().expect("non-discrete partition has a target");
        let mut cell: Vec<u32> = node.cell(target).to_vec();
        cell.sort_unstable();
        for w in cell {
            let (child, t) = self.child(node, w);
            traces.push(t);
            let flow = self.dfs(&child, traces);
            traces.pop();
            if let Flow::Jump = flow {
                return Flow::Jump;
            }
        }
        Flow::Continue
    }
}

fn compare_prefix(a: &[u64], b: &[u64]) -> Ordering {
    let k = a.len().min(b.len());
    a[..k].cmp(&b[..k])
}

fn compare_leaf(traces: &[u64], cert: &[u32], best: &Leaf) -> Ordering {
    traces.cmp(&best.traces).then_with(|| cert.cmp(&best.certificate))
}

/// Runs the search from the given vertex colors.
pub(crate) fn search(g: &Csr, colors: &[u32]) -> SearchResult {
    let n = g.vertex_count();
    let mut scratch = Scratch::new(n);
    let (mut root, starts) = Partition::from_colors(colors);
    let t0 = root.refine(g, &starts, &mut scratch);
    // first path
    let mut nodes = vec![root];
    let mut traces = vec![t0];
    let mut targets: Vec<Vec<u32>> = Vec::new();
    let mut search = Search {
        g,
        scratch,
        first: Leaf { traces: Vec::new(), labels: Vec::new(), certificate: Vec::new() },
        best: Leaf { traces: Vec::new(), labels: Vec::new(), certificate: Vec::new() },
        best_in_subtree: false,
        uf: UnionFind::new(n),
        generators: Vec::new(),
        nodes: 1,
    };
    loop {
        let node = nodes.last().expect("root");
        let Some(target) = node.target_cell() else { break };
        let mut cell = node.cell(target).to_vec();
        cell.sort_unstable();
        let (child, t) = search.child(node, cell[0]);
        targets.push(cell);
        nodes.push(child);
        traces.push(t);
    }
    let leaf_labels = nodes.last().expect("leaf").labels().to_vec();
    let cert = certificate(g, &leaf_labels);
    search.first = Leaf { traces: traces.clone(), labels: leaf_labels.clone(), certificate: cert.clone() };
    search.best = Leaf { traces: traces.clone(), labels: leaf_labels, certificate: cert };

    let depth = targets.len();
    let mut orbit_lengths = vec![1usize; depth];
    for level in (0..depth).rev() {
        let cell = targets[level].clone();
        let mut explored: Vec<u32> = vec![cell[0]];
        for &w in &cell[1..] {
            let rw = search.uf.find(w);
            if explored.iter().any(|&x| search.uf.find(x) == rw) {
                continue;
            }
            search.best_in_subtree = false;
            let (child, t) = search.child(&nodes[level], w);
            let mut path: Vec<u64> = traces[..=level].to_vec();
            path.push(t);
            search.dfs(&child, &mut path);
            explored.push(w);
        }
        orbit_lengths[level] = search.uf.orbit_len(cell[0]);
    }
    SearchResult {
        generators: search.generators,
        orbit_lengths,
        best_labels: search.best.labels,
        nodes: search.nodes,
    }
}
