//! Conjugacy classes of subgroups isomorphic to A4 or S4.
//!
//! Both groups are quotients of a triangle group: S4 = ⟨y, z⟩ with
//! |y| = 2, |z| = 3, |yz| = 4, and A4 the same with |yz| = 3. Conversely any
//! such pair generates a copy of the group. So subgroup classes are read off
//! from classes of generating pairs: fix a representative `z` of each class
//! of elements of order 3, and take the orbits of `C_G(z)` on the involutions
//! `y` with the right product order.
//!
//! Completeness is certified by counting: every pair lies in exactly one
//! class, so summing (pairs inside K) · |G : N_G(K)| over the classes found
//! must give the total number of pairs, which is Σ_z |z^G| · |Y_z|.

use std::collections::HashMap;

use serde::Serialize;

use crate::classify::ClassifyError;
use crate::permgroup::{
    conjugacy_classes_of_prime_order, elements_of_prime_order, normalizer, subgroup_transporter, CycleType,
    Permutation, PermutationGroup,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum SubgroupType {
    A4,
    S4,
}

impl SubgroupType {
    pub fn order(self) -> u128 {
        match self {
            SubgroupType::A4 => 12,
            SubgroupType::S4 => 24,
        }
    }

    /// Order of `yz` for the standard generating pair.
    pub fn product_order(self) -> u128 {
        match self {
            SubgroupType::A4 => 3,
            SubgroupType::S4 => 4,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            SubgroupType::A4 => "A4",
            SubgroupType::S4 => "S4",
        }
    }
}

impl std::fmt::Display for SubgroupType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for SubgroupType {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "A4" | "a4" => Ok(SubgroupType::A4),
            "S4" | "s4" => Ok(SubgroupType::S4),
            other => Err(format!("unknown subgroup type `{other}`")),
        }
    }
}

/// One conjugacy class of subgroups.
#[derive(Clone, Debug)]
pub struct SubgroupClass {
    /// `(y, z)` with `K = ⟨y, z⟩`.
    pub pair: (Permutation, Permutation),
    pub subgroup: PermutationGroup,
    pub normalizer: PermutationGroup,
    /// `|G : N_G(K)|`, the number of subgroups in the class.
    pub class_size: u128,
    /// Generating pairs of the standard shape inside `K`.
    pub pairs_in_subgroup: u128,
}

/// Result of a class search, with its counting certificate.
#[derive(Clone, Debug)]
pub struct ClassSearch {
    pub subgroup_type: SubgroupType,
    pub classes: Vec<SubgroupClass>,
    pub pairs_total: u128,
    pub pairs_accounted: u128,
    pub involutions: usize,
    pub order3_classes: usize,
}

impl ClassSearch {
    pub fn certified(&self) -> bool {
        self.pairs_total == self.pairs_accounted
    }
}

fn standard_pairs(k: &PermutationGroup, ty: SubgroupType) -> u128 {
    let elems = k.elements(1 << 12).expect("small subgroup");
    let ys: Vec<&Permutation> = elems.iter().filter(|x| x.order() == 2).collect();
    let zs: Vec<&Permutation> = elems.iter().filter(|x| x.order() == 3).collect();
    let mut n = 0;
    for y in &ys {
        for z in &zs {
            if y.compose(z).order() == ty.product_order() {
                n += 1;
            }
        }
    }
    n
}

/// Cheap conjugacy invariant: orbit lengths and cycle types of all elements.
fn invariant(k: &PermutationGroup) -> (Vec<usize>, Vec<CycleType>) {
    let mut lens: Vec<usize> = k.orbits().iter().map(Vec::len).collect();
    lens.sort_unstable();
    let mut cts: Vec<CycleType> = k.elements(1 << 12).expect("small subgroup").iter().map(|x| x.cycle_type()).collect();
    cts.sort();
    (lens, cts)
}

/// Representatives of the conjugacy classes of subgroups of type `ty` in `G`.
pub fn find_subgroup_classes(g: &PermutationGroup, ty: SubgroupType) -> Result<ClassSearch, ClassifyError> {
    let involutions = elements_of_prime_order(g, 2);
    let zclasses = conjugacy_classes_of_prime_order(g, 3);
    let group_order = g.order();
    let mut classes: Vec<SubgroupClass> = Vec::new();
    let mut invariants: Vec<(Vec<usize>, Vec<CycleType>)> = Vec::new();
    let mut pairs_total = 0u128;
    for zc in &zclasses {
        let z = &zc.representative;
        let ys: Vec<&Permutation> = involutions.iter().filter(|y| y.compose(z).order() == ty.product_order()).collect();
        pairs_total += zc.size * ys.len() as u128;
        let index: HashMap<&Permutation, usize> = ys.iter().enumerate().map(|(i, y)| (*y, i)).collect();
        let mut seen = vec![false; ys.len()];
        let cgens = zc.centralizer.generators();
        for start in 0..ys.len() {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut stack = vec![ys[start].clone()];
            while let Some(y) = stack.pop() {
                for c in cgens {
                    let y2 = y.conjugate_by(c);
                    let j = index[&y2];
                    if !seen[j] {
                        seen[j] = true;
                        stack.push(y2);
                    }
                }
            }
            let y = ys[start].clone();
            let k = PermutationGroup::new(vec![y.clone(), z.clone()]).map_err(ClassifyError::Group)?;
            if k.order() != ty.order() {
                return Err(ClassifyError::Internal(format!("pair generated a group of order {}", k.order())));
            }
            let inv = invariant(&k);
            let known = classes.iter().zip(&invariants).any(|(c, ci)| {
                *ci == inv && subgroup_transporter(g, &k, &c.subgroup).is_some()
            });
            if known {
                continue;
            }
            let n = normalizer(g, &k);
            let class_size = group_order / n.order();
            let pairs_in_subgroup = standard_pairs(&k, ty);
            classes.push(SubgroupClass { pair: (y, z.clone()), subgroup: k, normalizer: n, class_size, pairs_in_subgroup });
            invariants.push(inv);
        }
    }
    let pairs_accounted = classes.iter().map(|c| c.class_size * c.pairs_in_subgroup).sum();
    let search = ClassSearch {
        subgroup_type: ty,
        classes,
        pairs_total,
        pairs_accounted,
        involutions: involutions.len(),
        order3_classes: zclasses.len(),
    };
    if !search.certified() {
        return Err(ClassifyError::CertificateFailed { total: pairs_total, accounted: search.pairs_accounted });
    }
    Ok(search)
}

/// Classes whose members meet `H` trivially. With `|K| = |A : H|` this says
/// `K` is regular on the cosets of `H`, which is a property of the whole class.
pub fn complement_classes(
    a: &PermutationGroup,
    h: &PermutationGroup,
    search: &ClassSearch,
) -> Result<Vec<SubgroupClass>, ClassifyError> {
    if !a.contains_group(h) {
        return Err(ClassifyError::NotASubgroup("simple subgroup".into()));
    }
    Ok(search.classes.iter().filter(|c| meets_trivially(&c.subgroup, h)).cloned().collect())
}

/// True when `K ∩ H = 1`, by enumerating `K`.
pub fn meets_trivially(k: &PermutationGroup, h: &PermutationGroup) -> bool {
    let mut trivial = true;
    k.for_each_element(|x| {
        if !x.is_identity() && h.contains(x) {
            trivial = false;
        }
        trivial
    });
    trivial
}
