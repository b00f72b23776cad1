//! Enumeration of elements of prime order, and their conjugacy classes.
//!
//! Elements are found by a backtrack over the stabilizer chain that keeps a
//! partial map of images. Every cycle of an element of prime order `p` has
//! length 1 or `p`, so a path of `p - 1` known arrows forces its closing
//! arrow. Each forced arrow `x -> y` is checked against the orbits of the
//! remaining stabilizer.

use std::collections::BTreeMap;

use crate::permgroup::{centralizer, element_transporter, CycleType, Level, Permutation, PermutationGroup};

const UNSET: u32 = u32::MAX;

struct State {
    p: usize,
    phi: Vec<u32>,
    pred: Vec<u32>,
    trail: Vec<u32>,
}

impl State {
    fn set(&mut self, x: u32, y: u32) {
        self.phi[x as usize] = y;
        self.pred[y as usize] = x;
        self.trail.push(x);
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let x = self.trail.pop().expect("trail entry") as usize;
            let y = self.phi[x] as usize;
            self.pred[y] = UNSET;
            self.phi[x] = UNSET;
        }
    }

    fn assign(&mut self, x: u32, y: u32) -> bool {
        if self.pred[y as usize] != UNSET || self.phi[x as usize] != UNSET {
            return false;
        }
        self.set(x, y);
        let mut arrows = 1usize;
        let mut cur = y;
        while cur != x && self.phi[cur as usize] != UNSET {
            cur = self.phi[cur as usize];
            arrows += 1;
        }
        if cur == x {
            return arrows == 1 || arrows == self.p;
        }
        let end = cur;
        let mut start = x;
        while self.pred[start as usize] != UNSET {
            start = self.pred[start as usize];
            arrows += 1;
        }
        if arrows >= self.p {
            return false;
        }
        if arrows == self.p - 1 {
            self.set(end, start);
        }
        true
    }

    /// Every assigned arrow must remain reachable by the stabilizer `levels[k..]`.
    fn feasible(&self, labels: &[u32], w_inv: &Permutation) -> bool {
        self.trail.iter().all(|&x| labels[x as usize] == labels[w_inv.image(self.phi[x as usize]) as usize])
    }
}

struct PrimeSearch<'a> {
    levels: &'a [Level],
    labels: Vec<Vec<u32>>,
    p: usize,
}

impl PrimeSearch<'_> {
    fn rec(&self, k: usize, w: &Permutation, st: &mut State, visit: &mut dyn FnMut(&Permutation) -> bool) -> bool {
        if k == self.levels.len() {
            if !w.is_identity() && w.pow(self.p as u64).is_identity() {
                return visit(w);
            }
            return true;
        }
        let lv = &self.levels[k];
        let b = lv.base;
        let forced = st.phi[b as usize];
        if forced != UNSET {
            let q = w.inverse().image(forced);
            if !lv.in_orbit(q) {
                return true;
            }
            let next = lv.rep(q).compose(w);
            if !st.feasible(&self.labels[k + 1], &next.inverse()) {
                return true;
            }
            return self.rec(k + 1, &next, st, visit);
        }
        for &q in &lv.orbit {
            let c = w.image(q);
            if st.pred[c as usize] != UNSET {
                continue;
            }
            let mark = st.trail.len();
            if st.assign(b, c) {
                let next = lv.rep(q).compose(w);
                if st.feasible(&self.labels[k + 1], &next.inverse()) && !self.rec(k + 1, &next, st, visit) {
                    st.undo(mark);
                    return false;
                }
            }
            st.undo(mark);
        }
        true
    }
}

/// Calls `visit` on each element of order `p` (prime) until it returns false.
pub fn for_each_element_of_prime_order(g: &PermutationGroup, p: usize, mut visit: impl FnMut(&Permutation) -> bool) {
    assert!(p >= 2, "order must be prime");
    let n = g.degree();
    let levels = g.levels();
    let mut labels: Vec<Vec<u32>> = levels.iter().map(|l| l.orbit_labels()).collect();
    labels.push((0..n as u32).collect());
    let search = PrimeSearch { levels, labels, p };
    let mut st = State { p, phi: vec![UNSET; n], pred: vec![UNSET; n], trail: Vec::new() };
    search.rec(0, &Permutation::identity(n), &mut st, &mut visit);
}

/// All elements of order `p` (prime), in a fixed order.
pub fn elements_of_prime_order(g: &PermutationGroup, p: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    for_each_element_of_prime_order(g, p, |x| {
        out.push(x.clone());
        true
    });
    out
}

/// A conjugacy class of `G`, given by a representative and its centralizer.
#[derive(Clone, Debug)]
pub struct ElementClass {
    pub representative: Permutation,
    pub centralizer: PermutationGroup,
    pub size: u128,
}

/// Conjugacy classes of elements of order `p`, in order of first appearance
/// in the element enumeration.
pub fn conjugacy_classes_of_prime_order(g: &PermutationGroup, p: usize) -> Vec<ElementClass> {
    let mut counts: BTreeMap<CycleType, u128> = BTreeMap::new();
    for_each_element_of_prime_order(g, p, |x| {
        *counts.entry(x.cycle_type()).or_default() += 1;
        true
    });
    let order = g.order();
    let mut covered: BTreeMap<CycleType, u128> = BTreeMap::new();
    let mut classes: Vec<ElementClass> = Vec::new();
    let mut open = counts.len();
    for_each_element_of_prime_order(g, p, |x| {
        let ct = x.cycle_type();
        let done = covered.entry(ct.clone()).or_default();
        if *done == counts[&ct] {
            return true;
        }
        let known = classes
            .iter()
            .filter(|c| c.representative.cycle_type() == ct)
            .any(|c| element_transporter(g, &c.representative, x).is_some());
        if known {
            return true;
        }
        let cent = centralizer(g, x);
        let size = order / cent.order();
        *done += size;
        if *done == counts[&ct] {
            open -= 1;
        }
        classes.push(ElementClass { representative: x.clone(), centralizer: cent, size });
        open > 0
    });
    classes
}
