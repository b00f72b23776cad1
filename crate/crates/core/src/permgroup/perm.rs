use std::fmt;

use crate::permgroup::PermError;

/// A bijection on `{0, .., degree-1}`.
///
/// Composition is left-to-right everywhere in this crate: `p.compose(&q)`
/// maps `i` to `q(p(i))`, and conjugation is `h^g = g⁻¹ h g`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

/// Sorted cycle lengths (longest first, fixed points included as 1-cycles).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycleType {
    pub lengths: Vec<u32>,
    pub fixed_points: u32,
}

impl Permutation {
    pub fn new(images: Vec<u32>) -> Result<Self, PermError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for (i, &x) in images.iter().enumerate() {
            let x = x as usize;
            if x >= n || seen[x] {
                return Err(PermError::NotABijection { position: i });
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    /// Builds a permutation from 1-based images, as used in generator files.
    pub fn from_one_based(images: &[u32]) -> Result<Self, PermError> {
        let mut v = Vec::with_capacity(images.len());
        for (i, &x) in images.iter().enumerate() {
            if x == 0 {
                return Err(PermError::NotABijection { position: i });
            }
            v.push(x - 1);
        }
        Self::new(v)
    }

    /// Builds a permutation of the given degree from 1-based cycles.
    pub fn from_cycles(degree: usize, cycles: &[&[u32]]) -> Result<Self, PermError> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (i, &p) in cycle.iter().enumerate() {
                let q = cycle[(i + 1) % cycle.len()];
                if p == 0 || p as usize > degree || q == 0 || q as usize > degree {
                    return Err(PermError::PointOutOfRange { point: p.max(q), degree });
                }
                if touched[p as usize - 1] {
                    return Err(PermError::NotABijection { position: p as usize - 1 });
                }
                touched[p as usize - 1] = true;
                images[p as usize - 1] = q - 1;
            }
        }
        Self::new(images)
    }

    pub fn identity(degree: usize) -> Self {
        Permutation { images: (0..degree as u32).collect() }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn image(&self, point: u32) -> u32 {
        self.images[point as usize]
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn into_images(self) -> Vec<u32> {
        self.images
    }

    pub fn one_based(&self) -> Vec<u32> {
        self.images.iter().map(|&x| x + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// `self` then `other`.
    pub fn try_compose(&self, other: &Permutation) -> Result<Permutation, PermError> {
        if self.degree() != other.degree() {
            return Err(PermError::DegreeMismatch { left: self.degree(), right: other.degree() });
        }
        Ok(self.compose(other))
    }

    /// `self` then `other`; panics on degree mismatch.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree(), "degree mismatch in composition");
        Permutation { images: self.images.iter().map(|&x| other.images[x as usize]).collect() }
    }

    /// In-place `self := self * other`.
    pub(crate) fn compose_assign(&mut self, other: &Permutation) {
        for x in self.images.iter_mut() {
            *x = other.images[*x as usize];
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Permutation { images: inv }
    }

    /// `g⁻¹ self g`.
    pub fn conjugate_by(&self, g: &Permutation) -> Permutation {
        let mut out = vec![0u32; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            out[g.images[i] as usize] = g.images[x as usize];
        }
        Permutation { images: out }
    }

    pub fn pow(&self, mut e: u64) -> Permutation {
        let mut base = self.clone();
        let mut acc = Permutation::identity(self.degree());
        while e > 0 {
            if e & 1 == 1 {
                acc.compose_assign(&base);
            }
            base = base.compose(&base);
            e >>= 1;
        }
        acc
    }

    /// Disjoint cycles (length ≥ 2), each starting at its smallest point, sorted by that point.
    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let mut seen = vec![false; self.images.len()];
        let mut out = Vec::new();
        for start in 0..self.images.len() {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start as u32];
            seen[start] = true;
            let mut x = self.images[start];
            while x as usize != start {
                seen[x as usize] = true;
                cycle.push(x);
                x = self.images[x as usize];
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    pub fn cycle_type(&self) -> CycleType {
        let mut seen = vec![false; self.images.len()];
        let mut lengths = Vec::new();
        let mut fixed = 0;
        for start in 0..self.images.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0u32;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                len += 1;
                x = self.images[x] as usize;
            }
            if len == 1 {
                fixed += 1;
            }
            lengths.push(len);
        }
        lengths.sort_unstable_by(|a, b| b.cmp(a));
        CycleType { lengths, fixed_points: fixed }
    }

    pub fn fixed_point_count(&self) -> usize {
        self.images.iter().enumerate().filter(|&(i, &x)| i as u32 == x).count()
    }

    /// Points moved by the permutation, in increasing order.
    pub fn support(&self) -> Vec<u32> {
        (0..self.images.len() as u32).filter(|&i| self.images[i as usize] != i).collect()
    }

    pub fn smallest_moved_point(&self) -> Option<u32> {
        self.images.iter().enumerate().find(|&(i, &x)| i as u32 != x).map(|(i, _)| i as u32)
    }

    /// Element order as the lcm of the cycle lengths.
    pub fn order(&self) -> u128 {
        let mut acc: u128 = 1;
        for &len in &self.cycle_type().lengths {
            let len = len as u128;
            let g = gcd(acc, len);
            acc = (acc / g).checked_mul(len).expect("element order overflows u128");
        }
        acc
    }

    pub fn is_two_element(&self) -> bool {
        self.order().is_power_of_two()
    }

    pub fn is_even(&self) -> bool {
        let transpositions: usize = self.cycles().iter().map(|c| c.len() - 1).sum();
        transpositions.is_multiple_of(2)
    }
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl CycleType {
    /// Cycle lengths of at least 2, longest first.
    pub fn nontrivial(&self) -> Vec<u32> {
        self.lengths.iter().copied().filter(|&l| l > 1).collect()
    }
}

impl fmt::Display for Permutation {
    /// Cycle notation with 1-based points; the identity prints as `()`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            write!(f, "(")?;
            for (i, p) in c.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", p + 1)?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl std::ops::Mul for &Permutation {
    type Output = Permutation;
    fn mul(self, rhs: &Permutation) -> Permutation {
        self.compose(rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(n: usize, cycles: &[&[u32]]) -> Permutation {
        Permutation::from_cycles(n, cycles).unwrap()
    }

    #[test]
    fn transposition_squares_to_identity() {
        let t = c(3, &[&[1, 2]]);
        assert!(t.compose(&t).is_identity());
    }

    #[test]
    fn left_to_right_composition() {
        // (1 2 3) then (1 2): 1→2→1, 2→3→3, 3→1→2
        let p = c(3, &[&[1, 2, 3]]);
        let q = c(3, &[&[1, 2]]);
        assert_eq!(p.compose(&q), c(3, &[&[2, 3]]));
        assert_eq!(q.compose(&p), c(3, &[&[1, 3]]));
    }

    #[test]
    fn three_cycle_inverse() {
        assert_eq!(c(3, &[&[1, 2, 3]]).inverse(), c(3, &[&[1, 3, 2]]));
        assert!(Permutation::identity(5).inverse().is_identity());
    }

    #[test]
    fn degree_mismatch_is_an_error() {
        let p = Permutation::identity(3);
        let q = Permutation::identity(4);
        assert!(matches!(p.try_compose(&q), Err(PermError::DegreeMismatch { .. })));
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::new(vec![0, 0, 1]).is_err());
        assert!(Permutation::new(vec![0, 3, 1]).is_err());
        assert!(Permutation::from_cycles(4, &[&[1, 2], &[2, 3]]).is_err());
    }

    #[test]
    fn cycle_types() {
        let id = Permutation::identity(12);
        assert_eq!(id.cycle_type().lengths, vec![1; 12]);
        assert_eq!(id.cycle_type().fixed_points, 12);
        let p = c(4, &[&[1, 2], &[3, 4]]);
        assert_eq!(p.cycle_type().nontrivial(), vec![2, 2]);
        assert_eq!(p.cycle_type().fixed_points, 0);
    }

    #[test]
    fn conjugation_matches_definition() {
        let h = c(5, &[&[1, 2, 3]]);
        let g = c(5, &[&[1, 4], &[2, 5]]);
        let expect = g.inverse().compose(&h).compose(&g);
        assert_eq!(h.conjugate_by(&g), expect);
        assert_eq!(format!("{}", h.conjugate_by(&g)), "(3,4,5)");
    }

    #[test]
    fn orders_and_powers() {
        let p = c(7, &[&[1, 2, 3, 4], &[5, 6]]);
        assert_eq!(p.order(), 4);
        assert!(p.pow(4).is_identity());
        assert!(!p.pow(2).is_identity());
        assert!(p.is_two_element());
        assert!(!c(3, &[&[1, 2, 3]]).is_two_element());
    }
}
