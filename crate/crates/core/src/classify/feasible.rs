//! Search for the elements `g` that turn a stabilizer `K` into a
//! tetravalent 2-arc-transitive coset graph `Γ(A, K, g)`.
//!
//! A feasible `g` has `g² ∈ K`, so `K^g = K^{g⁻¹}` and `L = K ∩ K^g`
//! satisfies `L^g = K^g ∩ K^{g²} = L`. Hence `g ∈ N_A(L)` for one of the
//! index-4 subgroups `L ≤ K`, and scanning these normalizers is exhaustive.

use std::collections::HashSet;

use serde::Serialize;

use crate::classify::ClassifyError;
use crate::permgroup::{normalizer, Permutation, PermutationGroup};

const NORMALIZER_ENUMERATION_CAP: u128 = 50_000_000;

/// Index of `K ∩ K^g` in `K`: the valency of the coset graph.
pub const VALENCY: u128 = 4;

/// Counts of candidates surviving each filter, for one subgroup `L`.
#[derive(Clone, Debug, Default, Serialize, PartialEq, Eq)]
pub struct FilterStats {
    pub normalizer_order: u128,
    pub two_elements: u64,
    pub square_in_k: u64,
    pub not_normalizing: u64,
    pub meet_is_l: u64,
    pub generating: u64,
}

#[derive(Clone, Debug)]
pub struct FeasibleSearch {
    /// Index-4 subgroups of `K` with a 2-transitive coset action.
    pub local_subgroups: Vec<PermutationGroup>,
    pub stats: Vec<FilterStats>,
    /// Feasible elements, sorted by image array.
    pub elements: Vec<Permutation>,
}

fn is_two_power(n: u128) -> bool {
    n.is_power_of_two()
}

/// Index-`VALENCY` subgroups `L ≤ K` such that `K` is 2-transitive on `K/L`.
pub fn local_subgroups(k: &PermutationGroup) -> Vec<PermutationGroup> {
    let order = k.order();
    let target = order / VALENCY;
    let elems = k.elements(1 << 12).expect("small subgroup");
    let mut found: Vec<(Vec<Permutation>, PermutationGroup)> = Vec::new();
    for a in &elems {
        for b in &elems {
            let l = PermutationGroup::new(vec![a.clone(), b.clone()]).expect("nonempty");
            if l.order() != target {
                continue;
            }
            let mut set = l.elements(1 << 12).expect("small");
            set.sort();
            if found.iter().any(|(s, _)| *s == set) {
                continue;
            }
            if two_transitive_on_cosets(&l, &elems) {
                found.push((set, l));
            }
        }
    }
    found.sort_by(|x, y| x.0.cmp(&y.0));
    found.into_iter().map(|(_, l)| l).collect()
}

/// Whether `K` acts 2-transitively on the right cosets of `L`.
fn two_transitive_on_cosets(l: &PermutationGroup, elems: &[Permutation]) -> bool {
    let lelems = l.elements(1 << 12).expect("small");
    let mut cosets: Vec<Vec<Permutation>> = Vec::new();
    for x in elems {
        let mut c: Vec<Permutation> = lelems.iter().map(|h| h.compose(x)).collect();
        c.sort();
        if !cosets.contains(&c) {
            cosets.push(c);
        }
    }
    let n = cosets.len();
    if n < 2 {
        return false;
    }
    let locate = |x: &Permutation| cosets.iter().position(|c| c.binary_search(x).is_ok()).expect("coset");
    let (r0, r1) = (&cosets[0][0], &cosets[1][0]);
    let pairs: HashSet<(usize, usize)> = elems.iter().map(|y| (locate(&r0.compose(y)), locate(&r1.compose(y)))).collect();
    pairs.len() == n * (n - 1)
}

/// All feasible elements for `K` in `A`.
pub fn feasible_elements(a: &PermutationGroup, k: &PermutationGroup) -> Result<FeasibleSearch, ClassifyError> {
    let korder = k.order();
    if korder != 12 && korder != 24 {
        return Err(ClassifyError::BadStabilizerOrder(korder));
    }
    if !a.contains_group(k) {
        return Err(ClassifyError::NotASubgroup("stabilizer".into()));
    }
    let aorder = a.order_big();
    let kelems = k.elements(1 << 12).expect("small");
    let locals = local_subgroups(k);
    let mut stats = Vec::new();
    let mut out: Vec<Permutation> = Vec::new();
    for l in &locals {
        let mut lset = l.elements(1 << 12).expect("small");
        lset.sort();
        let n = normalizer(a, l);
        let mut st = FilterStats { normalizer_order: n.order(), ..FilterStats::default() };
        if n.order() > NORMALIZER_ENUMERATION_CAP {
            return Err(ClassifyError::Internal(format!("normalizer of order {} too large to scan", n.order())));
        }
        n.for_each_element(|g| {
            if g.is_identity() || !is_two_power(g.order()) {
                return true;
            }
            st.two_elements += 1;
            if !k.contains(&g.compose(g)) {
                return true;
            }
            st.square_in_k += 1;
            let mut meet: Vec<Permutation> = kelems.iter().map(|x| x.conjugate_by(g)).filter(|y| k.contains(y)).collect();
            if meet.len() as u128 == korder {
                return true;
            }
            st.not_normalizing += 1;
            // meet = K^g ∩ K; we need K ∩ K^g = L
            meet.sort();
            if meet != lset {
                return true;
            }
            st.meet_is_l += 1;
            let mut gens = k.generators().to_vec();
            gens.push(g.clone());
            let h = PermutationGroup::new(gens).expect("nonempty");
            if h.order_big() != aorder {
                return true;
            }
            st.generating += 1;
            out.push(g.clone());
            true
        });
        stats.push(st);
    }
    out.sort();
    out.dedup();
    Ok(FeasibleSearch { local_subgroups: locals, stats, elements: out })
}

/// Orbits of `K` acting on `delta` by conjugation, largest first, ties by least element.
pub fn delta_orbits(k: &PermutationGroup, delta: &[Permutation]) -> Vec<Vec<Permutation>> {
    let mut remaining: Vec<Permutation> = delta.to_vec();
    remaining.sort();
    let mut orbits: Vec<Vec<Permutation>> = Vec::new();
    let mut assigned: HashSet<Permutation> = HashSet::new();
    for x in &remaining {
        if assigned.contains(x) {
            continue;
        }
        let mut orbit = vec![x.clone()];
        assigned.insert(x.clone());
        let mut i = 0;
        while i < orbit.len() {
            for h in k.generators() {
                let y = orbit[i].conjugate_by(h);
                if assigned.insert(y.clone()) {
                    orbit.push(y);
                }
            }
            i += 1;
        }
        orbit.sort();
        orbits.push(orbit);
    }
    orbits.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a[0].cmp(&b[0])));
    orbits
}
