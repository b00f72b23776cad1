//! Permutation groups: permutations, stabilizer chains and backtrack searches.

mod chain;
mod perm;
mod primes;
mod search;

pub mod brute;

use std::collections::BTreeMap;

use num_bigint::BigUint;
use rand::Rng;
use thiserror::Error;

pub use perm::{CycleType, Permutation};
pub use primes::{conjugacy_classes_of_prime_order, elements_of_prime_order, ElementClass};
pub use search::{
    are_conjugate_elements, centralizer, element_transporter, normalizer, subgroup_transporter,
    two_generators,
};

pub(crate) use chain::{orbit_labels, Level};

use chain::{chain_order, schreier_sims, schreier_sims_known_order, sift, ProductReplacement};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PermError {
    #[error("image list is not a bijection (repeat or gap at position {position})")]
    NotABijection { position: usize },
    #[error("point {point} out of range for degree {degree}")]
    PointOutOfRange { point: u32, degree: usize },
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("no generators given and no degree to infer")]
    EmptyGenerators,
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error("random Schreier-Sims stalled at order {reached}, expected {target}")]
    OrderNotReached { reached: String, target: String },
    #[error("generated group has order at least {reached}, expected {target}")]
    OrderExceeded { reached: String, target: String },
    #[error("element enumeration capped at {cap}, group order is {order}")]
    TooLarge { cap: u128, order: String },
}

/// A permutation group with a complete stabilizer chain.
#[derive(Clone, Debug)]
pub struct PermutationGroup {
    degree: usize,
    generators: Vec<Permutation>,
    levels: Vec<Level>,
}

fn check_degrees(gens: &[Permutation]) -> Result<usize, GroupError> {
    let first = gens.first().ok_or(GroupError::EmptyGenerators)?;
    let degree = first.degree();
    for g in gens {
        if g.degree() != degree {
            return Err(PermError::DegreeMismatch { left: degree, right: g.degree() }.into());
        }
    }
    Ok(degree)
}

impl PermutationGroup {
    /// Builds the group generated by `gens` with deterministic Schreier–Sims.
    pub fn new(gens: Vec<Permutation>) -> Result<Self, GroupError> {
        let degree = check_degrees(&gens)?;
        Ok(Self::from_chain(degree, gens.clone(), schreier_sims(degree, &gens, &[])))
    }

    /// Builds the group with base points beginning with `prefix`.
    pub fn with_base(gens: Vec<Permutation>, prefix: &[u32]) -> Result<Self, GroupError> {
        let degree = check_degrees(&gens)?;
        for &p in prefix {
            if p as usize >= degree {
                return Err(PermError::PointOutOfRange { point: p, degree }.into());
            }
        }
        Ok(Self::from_chain(degree, gens.clone(), schreier_sims(degree, &gens, prefix)))
    }

    /// Builds a group whose order is known in advance, using seeded random
    /// Schreier–Sims. The result is exact: construction fails unless the
    /// chain reaches exactly `order`.
    pub fn with_known_order(gens: Vec<Permutation>, order: &BigUint, seed: u64) -> Result<Self, GroupError> {
        let degree = check_degrees(&gens)?;
        let mut pr = ProductReplacement::new(degree, &gens, seed);
        let levels = schreier_sims_known_order(degree, &gens, &[], order, || pr.next_element())?;
        Ok(Self::from_chain(degree, gens, levels))
    }

    pub fn trivial(degree: usize) -> Self {
        PermutationGroup { degree, generators: vec![Permutation::identity(degree)], levels: Vec::new() }
    }

    fn from_chain(degree: usize, mut generators: Vec<Permutation>, levels: Vec<Level>) -> Self {
        if generators.is_empty() {
            generators.push(Permutation::identity(degree));
        }
        PermutationGroup { degree, generators, levels }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn base(&self) -> Vec<u32> {
        self.levels.iter().map(|l| l.base).collect()
    }

    pub(crate) fn levels(&self) -> &[Level] {
        &self.levels
    }

    /// Orbit lengths of the stabilizer chain (basic orbit sizes).
    pub fn basic_orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    /// All strong generators, without duplicates.
    pub fn strong_generators(&self) -> Vec<Permutation> {
        let mut out: Vec<Permutation> = Vec::new();
        for lv in &self.levels {
            for g in &lv.gens {
                if !out.contains(g) {
                    out.push(g.clone());
                }
            }
        }
        out
    }

    /// Group order; panics if it does not fit in a u128.
    pub fn order(&self) -> u128 {
        self.try_order().expect("group order overflows u128")
    }

    pub fn try_order(&self) -> Option<u128> {
        self.levels.iter().try_fold(1u128, |acc, l| acc.checked_mul(l.orbit.len() as u128))
    }

    pub fn order_big(&self) -> BigUint {
        chain_order(&self.levels)
    }

    pub fn is_trivial(&self) -> bool {
        self.levels.is_empty()
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        let (h, j) = sift(&self.levels, g.clone(), 0);
        j == self.levels.len() && h.is_identity()
    }

    /// True when every generator of `other` lies in `self`.
    pub fn contains_group(&self, other: &PermutationGroup) -> bool {
        other.generators.iter().all(|g| self.contains(g))
    }

    pub fn is_transitive(&self) -> bool {
        self.orbit(0).len() == self.degree
    }

    pub fn orbit(&self, point: u32) -> Vec<u32> {
        let mut seen = vec![false; self.degree];
        seen[point as usize] = true;
        let mut out = vec![point];
        let mut k = 0;
        while k < out.len() {
            let p = out[k];
            for g in &self.generators {
                let q = g.image(p);
                if !seen[q as usize] {
                    seen[q as usize] = true;
                    out.push(q);
                }
            }
            k += 1;
        }
        out.sort_unstable();
        out
    }

    /// Orbits on points, each sorted, listed by smallest point.
    pub fn orbits(&self) -> Vec<Vec<u32>> {
        let labels = orbit_labels(self.degree, &self.generators);
        let mut map: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
        for (p, &l) in labels.iter().enumerate() {
            map.entry(l).or_default().push(p as u32);
        }
        map.into_values().collect()
    }

    /// Same group, with a chain whose base begins with `prefix`.
    pub fn with_base_prefix(&self, prefix: &[u32]) -> PermutationGroup {
        if self.base().starts_with(prefix) {
            return self.clone();
        }
        let order = self.order_big();
        let mut rng = rand_chacha::ChaCha8Rng::from_seed_u64(chain::random_seed());
        let strong = self.strong_generators();
        let levels = schreier_sims_known_order(self.degree, &strong, prefix, &order, || self.random_element(&mut rng))
            .expect("rebasing preserves the order");
        PermutationGroup { degree: self.degree, generators: self.generators.clone(), levels }
    }

    /// Some element mapping `from` to `to`, if they share an orbit.
    pub fn element_mapping(&self, from: u32, to: u32) -> Option<Permutation> {
        if from == to {
            return Some(Permutation::identity(self.degree));
        }
        let g = self.with_base_prefix(&[from]);
        let level = g.levels.first().filter(|l| l.base == from)?;
        level.in_orbit(to).then(|| level.rep(to))
    }

    /// Pointwise stabilizer of `points`.
    pub fn pointwise_stabilizer(&self, points: &[u32]) -> PermutationGroup {
        let rebased = self.with_base_prefix(points);
        rebased.tail(points.len())
    }

    pub fn point_stabilizer(&self, point: u32) -> PermutationGroup {
        self.pointwise_stabilizer(&[point])
    }

    /// The subgroup `G^(k)` described by `levels[k..]`.
    pub(crate) fn tail(&self, k: usize) -> PermutationGroup {
        let levels: Vec<Level> = self.levels.iter().skip(k).cloned().collect();
        let mut gens: Vec<Permutation> = levels.first().map(|l| l.gens.clone()).unwrap_or_default();
        gens.dedup();
        Self::from_chain(self.degree, gens, levels)
    }

    /// Uniformly random element: a product of random transversal elements.
    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> Permutation {
        let mut g = Permutation::identity(self.degree);
        for lv in self.levels.iter().rev() {
            let q = lv.orbit[rng.gen_range(0..lv.orbit.len())];
            g.compose_assign(&lv.rep(q));
        }
        g
    }

    /// Calls `visit` on every element, in a fixed order, until it returns false.
    pub fn for_each_element(&self, mut visit: impl FnMut(&Permutation) -> bool) {
        fn rec(levels: &[Level], k: usize, w: &Permutation, visit: &mut dyn FnMut(&Permutation) -> bool) -> bool {
            if k == levels.len() {
                return visit(w);
            }
            let lv = &levels[k];
            for &q in &lv.orbit {
                let next = match lv.rep_ref(q) {
                    Some(r) => r.compose(w),
                    None => lv.rep(q).compose(w),
                };
                if !rec(levels, k + 1, &next, visit) {
                    return false;
                }
            }
            true
        }
        // g = u_{k-1} ... u_0 with u_i drawn from the i-th transversal
        rec(&self.levels, 0, &Permutation::identity(self.degree), &mut visit);
    }

    /// All elements, refusing groups larger than `cap`.
    pub fn elements(&self, cap: u128) -> Result<Vec<Permutation>, GroupError> {
        match self.try_order() {
            Some(n) if n <= cap => {
                let mut out = Vec::with_capacity(n as usize);
                self.for_each_element(|g| {
                    out.push(g.clone());
                    true
                });
                Ok(out)
            }
            _ => Err(GroupError::TooLarge { cap, order: self.order_big().to_string() }),
        }
    }

    /// The subgroup generated by `gens`, which must lie in `self`.
    pub fn subgroup(&self, gens: Vec<Permutation>) -> Result<PermutationGroup, GroupError> {
        if gens.is_empty() {
            return Ok(Self::trivial(self.degree));
        }
        PermutationGroup::new(gens)
    }

    /// Conjugate subgroup `H^g = g⁻¹ H g`.
    pub fn conjugate_by(&self, g: &Permutation) -> PermutationGroup {
        let gens: Vec<Permutation> = self.generators.iter().map(|h| h.conjugate_by(g)).collect();
        PermutationGroup::new(gens).expect("nonempty generators")
    }

    /// Intersection with another group, by enumerating the smaller one.
    pub fn intersection(&self, other: &PermutationGroup, cap: u128) -> Result<PermutationGroup, GroupError> {
        let (small, big) = if self.order_big() <= other.order_big() { (self, other) } else { (other, self) };
        let elems = small.elements(cap)?;
        let mut gens: Vec<Permutation> = Vec::new();
        let mut current = PermutationGroup::trivial(self.degree);
        for g in elems {
            if big.contains(&g) && !current.contains(&g) {
                gens.push(g);
                current = PermutationGroup::new(gens.clone())?;
            }
        }
        Ok(current)
    }

    /// The action of the group on `subset` (which must be invariant), as a
    /// group of degree `subset.len()` with points renumbered in order.
    pub fn restrict_to(&self, subset: &[u32]) -> Result<PermutationGroup, GroupError> {
        let mut index = vec![u32::MAX; self.degree];
        for (i, &p) in subset.iter().enumerate() {
            index[p as usize] = i as u32;
        }
        let gens = self
            .generators
            .iter()
            .map(|g| {
                let imgs: Vec<u32> = subset.iter().map(|&p| index[g.image(p) as usize]).collect();
                Permutation::new(imgs).map_err(GroupError::from)
            })
            .collect::<Result<Vec<_>, _>>()?;
        PermutationGroup::new(gens)
    }

    /// True when `self` is normalized by every generator of `by`.
    pub fn is_normalized_by(&self, by: &PermutationGroup) -> bool {
        by.generators.iter().all(|g| self.generators.iter().all(|h| self.contains(&h.conjugate_by(g))))
    }
}

trait SeedU64 {
    fn from_seed_u64(seed: u64) -> Self;
}

impl SeedU64 for rand_chacha::ChaCha8Rng {
    fn from_seed_u64(seed: u64) -> Self {
        rand::SeedableRng::seed_from_u64(seed)
    }
}

/// Convenience for building a group from cycle notation with 1-based points.
pub fn group_from_cycles(degree: usize, gens: &[&[&[u32]]]) -> Result<PermutationGroup, GroupError> {
    let perms = gens
        .iter()
        .map(|c| Permutation::from_cycles(degree, c))
        .collect::<Result<Vec<_>, _>>()?;
    PermutationGroup::new(perms)
}
