//! Ordered partitions of the vertex set and equitable refinement.

use std::collections::VecDeque;

use crate::graphs::Graph;

/// Compressed adjacency.
pub(crate) struct Csr {
    offsets: Vec<u32>,
    targets: Vec<u32>,
}

impl Csr {
    pub(crate) fn new(g: &Graph) -> Self {
        let mut offsets = Vec::with_capacity(g.vertex_count() + 1);
        let mut targets = Vec::with_capacity(2 * g.edge_count());
        offsets.push(0);
        for v in 0..g.vertex_count() as u32 {
            targets.extend_from_slice(g.neighbors(v));
            offsets.push(targets.len() as u32);
        }
        Csr { offsets, targets }
    }

    #[inline]
    pub(crate) fn neighbors(&self, v: u32) -> &[u32] {
        &self.targets[self.offsets[v as usize] as usize..self.offsets[v as usize + 1] as usize]
    }

    pub(crate) fn vertex_count(&self) -> usize {
        self.offsets.len() - 1
    }
}

#[inline]
pub(crate) fn mix(h: u64, x: u64) -> u64 {
    let mut z = h ^ x.wrapping_add(0x9e37_79b9_7f4a_7c15).wrapping_add(h << 6).wrapping_add(h >> 2);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// An ordered partition. Cells are contiguous ranges of `elems`, named by
/// their start index.
#[derive(Clone, Debug)]
pub(crate) struct Partition {
    elems: Vec<u32>,
    pos: Vec<u32>,
    cell_start: Vec<u32>,
    /// Indexed by cell start.
    cell_len: Vec<u32>,
    cells: usize,
}

/// Scratch buffers reused across refinements.
pub(crate) struct Scratch {
    counts: Vec<u32>,
    touched: Vec<u32>,
    in_queue: Vec<bool>,
}

impl Scratch {
    pub(crate) fn new(n: usize) -> Self {
        Scratch { counts: vec![0; n], touched: Vec::new(), in_queue: vec![false; n] }
    }
}

impl Partition {
    /// Cells ordered by color value; returns the partition and the starts of all cells.
    pub(crate) fn from_colors(colors: &[u32]) -> (Self, Vec<u32>) {
        let n = colors.len();
        let mut elems: Vec<u32> = (0..n as u32).collect();
        elems.sort_by_key(|&v| (colors[v as usize], v));
        let mut pos = vec![0u32; n];
        let mut cell_start = vec![0u32; n];
        let mut cell_len = vec![0u32; n];
        let mut starts = Vec::new();
        let mut i = 0;
        while i < n {
            let c = colors[elems[i] as usize];
            let mut j = i;
            while j < n && colors[elems[j] as usize] == c {
                pos[elems[j] as usize] = j as u32;
                cell_start[elems[j] as usize] = i as u32;
                j += 1;
            }
            cell_len[i] = (j - i) as u32;
            starts.push(i as u32);
            i = j;
        }
        let cells = starts.len();
        (Partition { elems, pos, cell_start, cell_len, cells }, starts)
    }

    pub(crate) fn is_discrete(&self) -> bool {
        self.cells == self.elems.len()
    }

    /// Cell starts in order.
    pub(crate) fn cell_starts(&self) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.cells);
        let mut i = 0;
        while i < self.elems.len() {
            out.push(i as u32);
            i += self.cell_len[i] as usize;
        }
        out
    }

    pub(crate) fn cell(&self, start: u32) -> &[u32] {
        let s = start as usize;
        &self.elems[s..s + self.cell_len[s] as usize]
    }

    pub(crate) fn cell_of(&self, v: u32) -> u32 {
        self.cell_start[v as usize]
    }

    /// First smallest cell with more than one vertex.
    pub(crate) fn target_cell(&self) -> Option<u32> {
        let mut best: Option<(u32, u32)> = None;
        let mut i = 0;
        while i < self.elems.len() {
            let len = self.cell_len[i];
            if len > 1 && best.is_none_or(|(_, l)| len < l) {
                best = Some((i as u32, len));
            }
            i += len as usize;
        }
        best.map(|(s, _)| s)
    }

    /// Label of each vertex in a discrete partition.
    pub(crate) fn labels(&self) -> &[u32] {
        &self.pos
    }

    /// Splits `v` off the front of its cell; returns the new singleton cell start.
    pub(crate) fn individualize(&mut self, v: u32) -> u32 {
        let s = self.cell_start[v as usize];
        let p = self.pos[v as usize];
        let first = self.elems[s as usize];
        self.elems.swap(s as usize, p as usize);
        self.pos[first as usize] = p;
        self.pos[v as usize] = s;
        let len = self.cell_len[s as usize];
        self.cell_len[s as usize] = 1;
        self.cell_len[s as usize + 1] = len - 1;
        for i in s + 1..s + len {
            self.cell_start[self.elems[i as usize] as usize] = s + 1;
        }
        self.cells += 1;
        s
    }

    /// Equitable refinement starting from the splitter cells in `initial`.
    /// Returns a hash of the refinement steps, which is invariant under
    /// relabeling the graph.
    pub(crate) fn refine(&mut self, g: &Csr, initial: &[u32], scratch: &mut Scratch) -> u64 {
        let mut trace: u64 = 0x243f_6a88_85a3_08d3;
        let mut queue: VecDeque<u32> = VecDeque::new();
        for &s in initial {
            if !scratch.in_queue[s as usize] {
                scratch.in_queue[s as usize] = true;
                queue.push_back(s);
            }
        }
        let mut touched_cells: Vec<u32> = Vec::new();
        let mut members: Vec<u32> = Vec::new();
        while let Some(ws) = queue.pop_front() {
            scratch.in_queue[ws as usize] = false;
            if self.is_discrete() {
                continue;
            }
            let wl = self.cell_len[ws as usize];
            for i in ws..ws + wl {
                let w = self.elems[i as usize];
                for &u in g.neighbors(w) {
                    if scratch.counts[u as usize] == 0 {
                        scratch.touched.push(u);
                    }
                    scratch.counts[u as usize] += 1;
                }
            }
            touched_cells.clear();
            for &u in &scratch.touched {
                touched_cells.push(self.cell_start[u as usize]);
            }
            touched_cells.sort_unstable();
            touched_cells.dedup();
            trace = mix(trace, ((ws as u64) << 32) | scratch.touched.len() as u64);
            for &c in &touched_cells {
                let len = self.cell_len[c as usize];
                if len == 1 {
                    continue;
                }
                members.clear();
                members.extend(scratch.touched.iter().copied().filter(|&u| self.cell_start[u as usize] == c));
                let k0 = scratch.counts[members[0] as usize];
                if members.len() as u32 == len && members.iter().all(|&u| scratch.counts[u as usize] == k0) {
                    trace = mix(trace, ((c as u64) << 32) | k0 as u64);
                    continue;
                }
                self.split(c, &members, scratch, &mut queue, &mut trace);
            }
            for &u in &scratch.touched {
                scratch.counts[u as usize] = 0;
            }
            scratch.touched.clear();
        }
        for &u in &scratch.touched {
            scratch.counts[u as usize] = 0;
        }
        scratch.touched.clear();
        mix(trace, self.cells as u64)
    }

    fn split(&mut self, c: u32, members: &[u32], scratch: &mut Scratch, queue: &mut VecDeque<u32>, trace: &mut u64) {
        let len = self.cell_len[c as usize];
        let end = c + len;
        let mut tail = end;
        for &u in members {
            let p = self.pos[u as usize];
            tail -= 1;
            let other = self.elems[tail as usize];
            self.elems.swap(p as usize, tail as usize);
            self.pos[other as usize] = p;
            self.pos[u as usize] = tail;
        }
        let counts = &scratch.counts;
        self.elems[tail as usize..end as usize].sort_unstable_by_key(|&u| (counts[u as usize], u));
        for i in tail..end {
            self.pos[self.elems[i as usize] as usize] = i;
        }
        // fragments as (start, len, count)
        let mut frags: Vec<(u32, u32, u32)> = Vec::new();
        if tail > c {
            frags.push((c, tail - c, 0));
        }
        let mut i = tail;
        while i < end {
            let k = counts[self.elems[i as usize] as usize];
            let mut j = i;
            while j < end && counts[self.elems[j as usize] as usize] == k {
                j += 1;
            }
            frags.push((i, j - i, k));
            i = j;
        }
        *trace = mix(*trace, ((c as u64) << 32) | frags.len() as u64);
        for &(s, l, k) in &frags {
            *trace = mix(*trace, ((l as u64) << 32) | k as u64);
            self.cell_len[s as usize] = l;
            if s != c {
                for q in s..s + l {
                    self.cell_start[self.elems[q as usize] as usize] = s;
                }
            }
        }
        self.cells += frags.len() - 1;
        let was_queued = scratch.in_queue[c as usize];
        let largest = frags.iter().enumerate().max_by(|a, b| a.1 .1.cmp(&b.1 .1).then(b.0.cmp(&a.0))).map(|x| x.0);
        for (fi, &(s, _, _)) in frags.iter().enumerate() {
            let push = if was_queued { s != c } else { Some(fi) != largest };
            if push && !scratch.in_queue[s as usize] {
                scratch.in_queue[s as usize] = true;
                queue.push_back(s);
            }
        }
    }
}
