//! Exhaustive versions of the backtrack searches, for small groups.
//!
//! These enumerate every element of `G` and serve as cross-checks.

use crate::permgroup::{GroupError, Permutation, PermutationGroup};

/// Largest group these routines will enumerate.
pub const BRUTE_FORCE_CAP: u128 = 2_000_000;

fn collect_group(degree: usize, gens: Vec<Permutation>) -> PermutationGroup {
    if gens.is_empty() {
        PermutationGroup::trivial(degree)
    } else {
        PermutationGroup::new(gens).expect("nonempty generators")
    }
}

fn filtered_group(g: &PermutationGroup, pred: impl Fn(&Permutation) -> bool) -> Result<PermutationGroup, GroupError> {
    let mut gens = Vec::new();
    let mut cur = PermutationGroup::trivial(g.degree());
    for x in g.elements(BRUTE_FORCE_CAP)? {
        if pred(&x) && !cur.contains(&x) {
            gens.push(x);
            cur = collect_group(g.degree(), gens.clone());
        }
    }
    Ok(cur)
}

pub fn normalizer_brute_force(g: &PermutationGroup, h: &PermutationGroup) -> Result<PermutationGroup, GroupError> {
    filtered_group(g, |x| h.generators().iter().all(|k| h.contains(&k.conjugate_by(x))))
}

pub fn centralizer_brute_force(g: &PermutationGroup, z: &Permutation) -> Result<PermutationGroup, GroupError> {
    filtered_group(g, |x| &z.conjugate_by(x) == z)
}

pub fn transporter_brute_force(
    g: &PermutationGroup,
    h1: &PermutationGroup,
    h2: &PermutationGroup,
) -> Result<Option<Permutation>, GroupError> {
    if h1.order_big() != h2.order_big() {
        return Ok(None);
    }
    Ok(g
        .elements(BRUTE_FORCE_CAP)?
        .into_iter()
        .find(|x| h1.generators().iter().all(|k| h2.contains(&k.conjugate_by(x)))))
}

pub fn elements_of_order_brute_force(g: &PermutationGroup, order: u128) -> Result<Vec<Permutation>, GroupError> {
    Ok(g.elements(BRUTE_FORCE_CAP)?.into_iter().filter(|x| x.order() == order).collect())
}
