//! Cayley structure of a graph: regular subgroups, connection sets and
//! normality in the automorphism group.

use num_bigint::BigUint;

use crate::classify::ClassifyError;
use crate::graphs::{CosetSpace, Graph};
use crate::permgroup::{Permutation, PermutationGroup};

const REGULAR_IMAGE_SEED: u64 = 0x5eed_0011;

/// True if `r` acts regularly on its points.
pub fn is_regular(r: &PermutationGroup) -> bool {
    r.is_transitive() && r.try_order() == Some(r.degree() as u128)
}

/// Image of `H ≤ G` in the action of `G` on `space`, required to be regular.
pub fn regular_image(space: &CosetSpace, h: &PermutationGroup) -> Result<PermutationGroup, ClassifyError> {
    let gens: Vec<Permutation> = h.generators().iter().map(|x| space.action_of(x)).collect();
    let order = BigUint::from(h.order());
    let image = PermutationGroup::with_known_order(gens, &order, REGULAR_IMAGE_SEED)
        .map_err(|_| ClassifyError::NotRegular("subgroup does not act faithfully on the cosets".into()))?;
    if !is_regular(&image) {
        return Err(ClassifyError::NotRegular("subgroup image is not regular".into()));
    }
    Ok(image)
}

/// Connection set `S = {r ∈ R : 0^r ∈ Γ(0)}` of a graph with a regular group `R`
/// of automorphisms, as permutations of the vertices.
pub fn extract_connection_set(g: &Graph, r: &PermutationGroup) -> Result<Vec<Permutation>, ClassifyError> {
    if r.degree() != g.vertex_count() || !is_regular(r) {
        return Err(ClassifyError::NotRegular("group is not regular on the vertices".into()));
    }
    let mut out = Vec::new();
    for &w in g.neighbors(0) {
        out.push(r.element_mapping(0, w).expect("transitive"));
    }
    out.sort();
    Ok(out)
}

/// Elements of `H ≤ G` in the cosets adjacent to the base coset: the
/// connection set of the graph as a Cayley graph of `H`, when `H` is regular.
pub fn connection_set_in_group(
    space: &CosetSpace,
    g: &Graph,
    h: &PermutationGroup,
) -> Result<Vec<Permutation>, ClassifyError> {
    let kelems = space.subgroup().elements(1 << 16)?;
    let mut out = Vec::new();
    for &w in g.neighbors(0) {
        let t = &space.representatives()[w as usize];
        let hits: Vec<Permutation> = kelems.iter().map(|k| k.compose(t)).filter(|x| h.contains(x)).collect();
        match hits.as_slice() {
            [x] => out.push(x.clone()),
            _ => {
                return Err(ClassifyError::NotRegular(format!(
                    "coset {w} meets the subgroup in {} elements",
                    hits.len()
                )))
            }
        }
    }
    out.sort();
    Ok(out)
}

/// True if `s` is closed under inverses.
pub fn inverse_closed(s: &[Permutation]) -> bool {
    s.iter().all(|x| s.contains(&x.inverse()))
}

/// A generator `a` of the overgroup and a generator `r` of `R` with `r^a ∉ R`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalityWitness {
    pub overgroup_generator: usize,
    pub subgroup_generator: usize,
    pub conjugate: Permutation,
}

#[derive(Clone, Debug)]
pub struct NormalityCheck {
    pub normal: bool,
    pub witness: Option<NormalityWitness>,
}

/// Whether `R` is normal in `X`, with a witness when it is not.
pub fn normality_check(x: &PermutationGroup, r: &PermutationGroup) -> Result<NormalityCheck, ClassifyError> {
    if !x.contains_group(r) {
        return Err(ClassifyError::NotASubgroup("regular subgroup".into()));
    }
    for (i, a) in x.generators().iter().enumerate() {
        for (j, s) in r.generators().iter().enumerate() {
            let c = s.conjugate_by(a);
            if !r.contains(&c) {
                let witness = NormalityWitness { overgroup_generator: i, subgroup_generator: j, conjugate: c };
                return Ok(NormalityCheck { normal: false, witness: Some(witness) });
            }
        }
    }
    Ok(NormalityCheck { normal: true, witness: None })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::cycle_graph;
    use crate::permgroup::group_from_cycles;

    #[test]
    fn cycle_connection_set() {
        let c5 = group_from_cycles(5, &[&[&[1, 2, 3, 4, 5]]]).unwrap();
        let s = extract_connection_set(&cycle_graph(5), &c5).unwrap();
        let c = Permutation::from_cycles(5, &[&[1, 2, 3, 4, 5]]).unwrap();
        assert_eq!(s.len(), 2);
        assert!(s.contains(&c) && s.contains(&c.inverse()));
        assert!(inverse_closed(&s));
    }

    #[test]
    fn normality() {
        let d5 = group_from_cycles(5, &[&[&[1, 2, 3, 4, 5]], &[&[2, 5], &[3, 4]]]).unwrap();
        let c5 = group_from_cycles(5, &[&[&[1, 2, 3, 4, 5]]]).unwrap();
        assert!(normality_check(&d5, &c5).unwrap().normal);
        assert!(normality_check(&d5, &d5).unwrap().normal);
        let s3 = group_from_cycles(3, &[&[&[1, 2]], &[&[1, 2, 3]]]).unwrap();
        let t = group_from_cycles(3, &[&[&[1, 2]]]).unwrap();
        let check = normality_check(&s3, &t).unwrap();
        assert!(!check.normal);
        let w = check.witness.unwrap();
        assert!(!t.contains(&w.conjugate));
    }
}
