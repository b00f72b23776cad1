//! The classification searches against exhaustive scans on small groups.
mod common;

use std::collections::{BTreeSet, HashMap};

use cayley_census::classify::{
    extract_connection_set, feasible_elements, find_subgroup_classes, inverse_closed, local_subgroups,
    normality_check, SubgroupType,
};
use cayley_census::graphs::complete_graph;
use cayley_census::groupdata::load_group;
use cayley_census::permgroup::{group_from_cycles, Permutation, PermutationGroup};

type ElemSet = BTreeSet<Vec<u32>>;

fn small_groups() -> Vec<(&'static str, PermutationGroup)> {
    vec![
        ("S5", group_from_cycles(5, &[&[&[1, 2, 3, 4, 5]], &[&[1, 2]]]).unwrap()),
        ("S6", group_from_cycles(6, &[&[&[1, 2, 3, 4, 5, 6]], &[&[1, 2]]]).unwrap()),
        ("A6", group_from_cycles(6, &[&[&[1, 2, 3]], &[&[2, 3, 4, 5, 6]]]).unwrap()),
        ("A7", group_from_cycles(7, &[&[&[1, 2, 3]], &[&[3, 4, 5, 6, 7]]]).unwrap()),
        ("M11", load_group("M11.deg11").unwrap().group),
    ]
}

fn set_of(elems: &[Permutation]) -> ElemSet {
    elems.iter().map(|x| x.images().to_vec()).collect()
}

/// Every subgroup `⟨y, z⟩` with `y² = z³ = (yz)^m = 1` of order `|K|`, as element sets.
fn all_subgroups_of_type(a: &PermutationGroup, ty: SubgroupType) -> Vec<ElemSet> {
    let elems = a.elements(1 << 20).unwrap();
    let ys: Vec<&Permutation> = elems.iter().filter(|x| x.order() == 2).collect();
    let zs: Vec<&Permutation> = elems.iter().filter(|x| x.order() == 3).collect();
    let mut found: BTreeSet<ElemSet> = BTreeSet::new();
    for y in &ys {
        for z in &zs {
            if y.compose(z).order() != ty.product_order() {
                continue;
            }
            let h = PermutationGroup::new(vec![(*y).clone(), (*z).clone()]).unwrap();
            if h.order() == ty.order() {
                found.insert(set_of(&h.elements(64).unwrap()));
            }
        }
    }
    found.into_iter().collect()
}

/// Conjugacy classes of a list of subgroups, as sizes.
fn class_sizes(a: &PermutationGroup, subs: &[ElemSet]) -> Vec<usize> {
    let index: HashMap<&ElemSet, usize> = subs.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let mut class = vec![usize::MAX; subs.len()];
    let mut sizes = Vec::new();
    for start in 0..subs.len() {
        if class[start] != usize::MAX {
            continue;
        }
        let c = sizes.len();
        let mut stack = vec![start];
        class[start] = c;
        let mut size = 0;
        while let Some(i) = stack.pop() {
            size += 1;
            for g in a.generators() {
                let img: ElemSet = subs[i]
                    .iter()
                    .map(|v| Permutation::new(v.clone()).unwrap().conjugate_by(g).images().to_vec())
                    .collect();
                let j = index[&img];
                if class[j] == usize::MAX {
                    class[j] = c;
                    stack.push(j);
                }
            }
        }
        sizes.push(size);
    }
    sizes.sort_unstable();
    sizes
}

#[test]
fn subgroup_classes_match_exhaustive_enumeration() {
    for (name, a) in small_groups() {
        for ty in [SubgroupType::S4, SubgroupType::A4] {
            let search = find_subgroup_classes(&a, ty).unwrap();
            assert!(search.certified(), "{name} {ty:?}");
            let subs = all_subgroups_of_type(&a, ty);
            let expected = class_sizes(&a, &subs);
            let mut got: Vec<usize> = search.classes.iter().map(|c| c.class_size as usize).collect();
            got.sort_unstable();
            assert_eq!(got, expected, "{name} {ty:?}");
            for c in &search.classes {
                assert_eq!(c.subgroup.order(), ty.order());
                assert_eq!(c.normalizer.order() * c.class_size, a.order());
                assert!(subs.contains(&set_of(&c.subgroup.elements(64).unwrap())));
            }
        }
    }
}

/// Number of double cosets `LxL` in `K`: the rank of `K` on `K/L`.
fn rank(k: &[Permutation], l: &ElemSet) -> usize {
    let lp: Vec<Permutation> = l.iter().map(|v| Permutation::new(v.clone()).unwrap()).collect();
    let mut seen: BTreeSet<ElemSet> = BTreeSet::new();
    for x in k {
        let dc: ElemSet = lp
            .iter()
            .flat_map(|a| lp.iter().map(move |b| a.compose(x).compose(b).images().to_vec()))
            .collect();
        seen.insert(dc);
    }
    seen.len()
}

/// Feasible elements straight from their defining conditions.
fn feasible_brute(a: &PermutationGroup, k: &PermutationGroup) -> ElemSet {
    let kelems = k.elements(64).unwrap();
    let kset = set_of(&kelems);
    let mut out = ElemSet::new();
    for g in a.elements(1 << 20).unwrap() {
        if g.is_identity() || !g.order().is_power_of_two() {
            continue;
        }
        if !kset.contains(g.compose(&g).images()) {
            continue;
        }
        let conj: ElemSet = kelems.iter().map(|x| x.conjugate_by(&g).images().to_vec()).collect();
        if conj == kset {
            continue;
        }
        let l: ElemSet = conj.intersection(&kset).cloned().collect();
        if l.len() * 4 != kset.len() || rank(&kelems, &l) != 2 {
            continue;
        }
        let mut gens = k.generators().to_vec();
        gens.push(g.clone());
        if PermutationGroup::new(gens).unwrap().order() == a.order() {
            out.insert(g.images().to_vec());
        }
    }
    out
}

#[test]
fn feasible_elements_match_brute_force() {
    let mut nonempty = 0;
    for (name, a) in small_groups() {
        for ty in [SubgroupType::S4, SubgroupType::A4] {
            for c in find_subgroup_classes(&a, ty).unwrap().classes {
                let fast = feasible_elements(&a, &c.subgroup).unwrap();
                let slow = feasible_brute(&a, &c.subgroup);
                assert_eq!(set_of(&fast.elements), slow, "{name} {ty:?}");
                assert_eq!(fast.local_subgroups.len(), 4, "{name} {ty:?}");
                for st in &fast.stats {
                    assert!(st.generating <= st.meet_is_l && st.meet_is_l <= st.not_normalizing);
                    assert!(st.not_normalizing <= st.square_in_k && st.square_in_k <= st.two_elements);
                }
                nonempty += usize::from(!slow.is_empty());
            }
        }
    }
    // The comparison must not be vacuous.
    assert!(nonempty >= 2, "only {nonempty} nonempty cases");
}

#[test]
fn local_subgroups_of_s4_and_a4() {
    let s4 = group_from_cycles(4, &[&[&[1, 2]], &[&[1, 2, 3, 4]]]).unwrap();
    let a4 = group_from_cycles(4, &[&[&[1, 2, 3]], &[&[1, 2], &[3, 4]]]).unwrap();
    let ls = local_subgroups(&s4);
    assert_eq!(ls.len(), 4);
    assert!(ls.iter().all(|l| l.order() == 6 && l.orbits().iter().any(|o| o.len() == 1)));
    let la = local_subgroups(&a4);
    assert_eq!(la.len(), 4);
    assert!(la.iter().all(|l| l.order() == 3));
}

#[test]
fn k4_cayley_structure() {
    // K4 is a Cayley graph of both C4 and V4; V4 is normal in S4, C4 is not.
    let k4 = complete_graph(4);
    let aut = cayley_census::autiso::automorphism_group(&k4).unwrap().group;
    let c4 = group_from_cycles(4, &[&[&[1, 2, 3, 4]]]).unwrap();
    let v4 = group_from_cycles(4, &[&[&[1, 2], &[3, 4]], &[&[1, 3], &[2, 4]]]).unwrap();
    for r in [&c4, &v4] {
        let s = extract_connection_set(&k4, r).unwrap();
        assert_eq!(s.len(), 3);
        assert!(inverse_closed(&s));
        assert_eq!(r.subgroup(s).unwrap().order(), 4);
    }
    assert!(normality_check(&aut, &v4).unwrap().normal);
    let check = normality_check(&aut, &c4).unwrap();
    assert!(!check.normal);
    let w = check.witness.unwrap();
    let expected = c4.generators()[w.subgroup_generator].conjugate_by(&aut.generators()[w.overgroup_generator]);
    assert_eq!(w.conjugate, expected);
    assert!(!c4.contains(&w.conjugate));
}
