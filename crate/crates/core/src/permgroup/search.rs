//! Backtrack searches over a stabilizer chain for elements conjugating a
//! tuple of permutations onto another tuple.
//!
//! The chain is rebased so that its first levels are the points moved by the
//! source tuple. A partial bijection `phi` on those points is grown one base
//! image at a time, and each choice is propagated through the relation
//! `phi(h(p)) = a(phi(p))`.

use std::collections::HashMap;

use crate::permgroup::{CycleType, Level, Permutation, PermutationGroup};

const UNSET: u32 = u32::MAX;

/// Cap for enumerating subgroup elements when choosing target tuples.
const SUBGROUP_ELEMENT_CAP: u128 = 1 << 20;

struct Search<'a> {
    levels: &'a [Level],
    depth: usize,
    sources: &'a [Permutation],
}

struct State {
    phi: Vec<u32>,
    used: Vec<bool>,
    trail: Vec<u32>,
}

impl State {
    fn new(degree: usize) -> Self {
        State { phi: vec![UNSET; degree], used: vec![false; degree], trail: Vec::new() }
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let p = self.trail.pop().expect("trail entry") as usize;
            self.used[self.phi[p] as usize] = false;
            self.phi[p] = UNSET;
        }
    }

    /// Assigns `p -> x` and closes under the source/target relation.
    fn assign(&mut self, p: u32, x: u32, sources: &[Permutation], targets: &[Permutation]) -> bool {
        if self.used[x as usize] {
            return false;
        }
        self.phi[p as usize] = x;
        self.used[x as usize] = true;
        self.trail.push(p);
        let mut queue = vec![(p, x)];
        while let Some((p, x)) = queue.pop() {
            for (h, a) in sources.iter().zip(targets) {
                let (p2, x2) = (h.image(p), a.image(x));
                let cur = self.phi[p2 as usize];
                if cur == UNSET {
                    if self.used[x2 as usize] {
                        return false;
                    }
                    self.phi[p2 as usize] = x2;
                    self.used[x2 as usize] = true;
                    self.trail.push(p2);
                    queue.push((p2, x2));
                } else if cur != x2 {
                    return false;
                }
            }
        }
        true
    }
}

impl<'a> Search<'a> {
    /// Visits leaves `w` with `h_j^w = a_j`; `visit` returns false to stop.
    fn run(&self, targets: &[Permutation], visit: &mut dyn FnMut(&Permutation) -> bool) -> bool {
        let degree = self.sources[0].degree();
        let mut st = State::new(degree);
        self.rec(0, &Permutation::identity(degree), targets, &mut st, visit)
    }

    fn rec(
        &self,
        k: usize,
        w: &Permutation,
        targets: &[Permutation],
        st: &mut State,
        visit: &mut dyn FnMut(&Permutation) -> bool,
    ) -> bool {
        if k == self.depth {
            let ok = self.sources.iter().zip(targets).all(|(h, a)| &h.conjugate_by(w) == a);
            return if ok { visit(w) } else { true };
        }
        let lv = &self.levels[k];
        let b = lv.base;
        let forced = st.phi[b as usize];
        if forced != UNSET {
            let w_inv = w.inverse();
            let q = w_inv.image(forced);
            if !lv.in_orbit(q) {
                return true;
            }
            let next = lv.rep(q).compose(w);
            return self.rec(k + 1, &next, targets, st, visit);
        }
        for &q in &lv.orbit {
            let c = w.image(q);
            if st.used[c as usize] {
                continue;
            }
            let mark = st.trail.len();
            if st.assign(b, c, self.sources, targets) {
                let next = lv.rep(q).compose(w);
                if !self.rec(k + 1, &next, targets, st, visit) {
                    st.undo(mark);
                    return false;
                }
            }
            st.undo(mark);
        }
        true
    }
}

/// Support of a tuple ordered by breadth-first search through its orbits.
fn support_order(sources: &[Permutation]) -> Vec<u32> {
    let degree = sources[0].degree();
    let mut moved = vec![false; degree];
    for h in sources {
        for p in h.support() {
            moved[p as usize] = true;
        }
    }
    let mut seen = vec![false; degree];
    let mut out = Vec::new();
    for start in 0..degree {
        if !moved[start] || seen[start] {
            continue;
        }
        seen[start] = true;
        let from = out.len();
        out.push(start as u32);
        let mut k = from;
        while k < out.len() {
            let p = out[k];
            for h in sources {
                let q = h.image(p);
                if !seen[q as usize] {
                    seen[q as usize] = true;
                    out.push(q);
                }
            }
            k += 1;
        }
    }
    out
}

/// A group rebased for searching, with the pointwise stabilizer of the support.
struct Prepared {
    group: PermutationGroup,
    depth: usize,
}

impl Prepared {
    fn new(g: &PermutationGroup, sources: &[Permutation]) -> Self {
        let prefix = support_order(sources);
        let group = g.with_base_prefix(&prefix);
        Prepared { group, depth: prefix.len() }
    }

    fn search<'a>(&'a self, sources: &'a [Permutation]) -> Search<'a> {
        Search { levels: self.group.levels(), depth: self.depth, sources }
    }

    fn support_stabilizer_gens(&self) -> Vec<Permutation> {
        self.group.levels().get(self.depth).map(|l| l.gens.clone()).unwrap_or_default()
    }
}

fn grow(group: &mut PermutationGroup, gens: &mut Vec<Permutation>, g: &Permutation) {
    if !group.contains(g) {
        gens.push(g.clone());
        *group = PermutationGroup::new(gens.clone()).expect("nonempty generators");
    }
}

/// Some `g` in `G` with `x^g = y`, if one exists.
pub fn element_transporter(g: &PermutationGroup, x: &Permutation, y: &Permutation) -> Option<Permutation> {
    if x.cycle_type() != y.cycle_type() {
        return None;
    }
    if x.is_identity() {
        return Some(Permutation::identity(g.degree()));
    }
    let sources = [x.clone()];
    let prep = Prepared::new(g, &sources);
    let mut found = None;
    prep.search(&sources).run(std::slice::from_ref(y), &mut |w| {
        found = Some(w.clone());
        false
    });
    found
}

pub fn are_conjugate_elements(g: &PermutationGroup, x: &Permutation, y: &Permutation) -> bool {
    element_transporter(g, x, y).is_some()
}

/// Centralizer `C_G(x)`.
pub fn centralizer(g: &PermutationGroup, x: &Permutation) -> PermutationGroup {
    if x.is_identity() {
        return g.clone();
    }
    let sources = [x.clone()];
    let prep = Prepared::new(g, &sources);
    let mut gens: Vec<Permutation> = vec![x.clone()];
    gens.extend(prep.support_stabilizer_gens());
    let mut group = PermutationGroup::new(gens.clone()).expect("nonempty generators");
    prep.search(&sources).run(std::slice::from_ref(x), &mut |w| {
        grow(&mut group, &mut gens, w);
        true
    });
    group
}

/// A generating pair for `H`, if one exists among its elements.
pub fn two_generators(h: &PermutationGroup) -> Option<(Permutation, Permutation)> {
    let gens: Vec<Permutation> = h.generators().iter().filter(|g| !g.is_identity()).cloned().collect();
    match gens.len() {
        0 => return Some((h.generators()[0].clone(), h.generators()[0].clone())),
        1 => return Some((gens[0].clone(), gens[0].clone())),
        2 => return Some((gens[0].clone(), gens[1].clone())),
        _ => {}
    }
    let order = h.order();
    let mut elems = h.elements(SUBGROUP_ELEMENT_CAP).ok()?;
    elems.sort_by(|a, b| b.order().cmp(&a.order()).then(a.cmp(b)));
    if let Some(a) = elems.iter().find(|a| a.order() == order) {
        return Some((a.clone(), a.clone()));
    }
    for (i, a) in elems.iter().enumerate() {
        for b in &elems[i + 1..] {
            if a.order() == 1 || b.order() == 1 {
                continue;
            }
            let k = PermutationGroup::new(vec![a.clone(), b.clone()]).expect("nonempty");
            if k.order() == order {
                return Some((a.clone(), b.clone()));
            }
        }
    }
    None
}

/// Representatives of the `H`-classes among `elems` with the given cycle type.
fn class_representatives(elems: &[Permutation], gens: &[Permutation], ct: &CycleType) -> Vec<Permutation> {
    let index: HashMap<&Permutation, usize> = elems.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let mut seen = vec![false; elems.len()];
    let mut reps = Vec::new();
    for (i, e) in elems.iter().enumerate() {
        if seen[i] || &e.cycle_type() != ct {
            continue;
        }
        reps.push(e.clone());
        seen[i] = true;
        let mut stack = vec![e.clone()];
        while let Some(x) = stack.pop() {
            for g in gens {
                let y = x.conjugate_by(g);
                let j = index[&y];
                if !seen[j] {
                    seen[j] = true;
                    stack.push(y);
                }
            }
        }
    }
    reps
}

/// Target tuples for mapping the generating pair of `from` into `to`.
fn target_pairs(
    h1: &Permutation,
    h2: &Permutation,
    to: &PermutationGroup,
) -> Option<Vec<[Permutation; 2]>> {
    let elems = to.elements(SUBGROUP_ELEMENT_CAP).ok()?;
    let ct1 = h1.cycle_type();
    let ct2 = h2.cycle_type();
    let ct12 = h1.compose(h2).cycle_type();
    let reps = class_representatives(&elems, to.generators(), &ct1);
    let seconds: Vec<&Permutation> = elems.iter().filter(|e| e.cycle_type() == ct2).collect();
    let mut out = Vec::new();
    for a1 in &reps {
        for a2 in &seconds {
            if a1.compose(a2).cycle_type() == ct12 {
                out.push([a1.clone(), (*a2).clone()]);
            }
        }
    }
    Some(out)
}

/// Normalizer `N_G(H)`, for `H` small enough to enumerate.
pub fn normalizer(g: &PermutationGroup, h: &PermutationGroup) -> PermutationGroup {
    if h.is_trivial() {
        return g.clone();
    }
    let (h1, h2) = two_generators(h).expect("subgroup has a generating pair");
    let sources = [h1.clone(), h2.clone()];
    let pairs = target_pairs(&h1, &h2, h).expect("subgroup small enough to enumerate");
    let prep = Prepared::new(g, &sources);
    let mut gens: Vec<Permutation> = h.generators().to_vec();
    gens.extend(prep.support_stabilizer_gens());
    let mut group = PermutationGroup::new(gens.clone()).expect("nonempty generators");
    let search = prep.search(&sources);
    for t in &pairs {
        search.run(t, &mut |w| {
            grow(&mut group, &mut gens, w);
            true
        });
    }
    group
}

/// Some `g` in `G` with `H1^g = H2`, if one exists.
pub fn subgroup_transporter(
    g: &PermutationGroup,
    h1: &PermutationGroup,
    h2: &PermutationGroup,
) -> Option<Permutation> {
    if h1.order_big() != h2.order_big() {
        return None;
    }
    if h1.is_trivial() {
        return Some(Permutation::identity(g.degree()));
    }
    let (a, b) = two_generators(h1)?;
    let sources = [a.clone(), b.clone()];
    let pairs = target_pairs(&a, &b, h2)?;
    let prep = Prepared::new(g, &sources);
    let search = prep.search(&sources);
    let mut found = None;
    for t in &pairs {
        search.run(t, &mut |w| {
            found = Some(w.clone());
            false
        });
        if found.is_some() {
            break;
        }
    }
    found
}
