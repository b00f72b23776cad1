use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::permgroup::{GroupError, Permutation};

const NOT_IN_ORBIT: u32 = u32::MAX;
const ROOT: u32 = u32::MAX - 1;

/// Degrees up to this bound keep explicit transversal elements; larger
/// degrees fall back to Schreier trees.
const EXPLICIT_TRANSVERSAL_DEGREE: usize = 128;

/// Seed for the product-replacement generator used by known-order builds.
const REBASE_SEED: u64 = 0x5eed_c0de_2024;

/// One level of a stabilizer chain: the group `G^(i)` fixing the earlier
/// base points, its generators, and the orbit of the base point.
#[derive(Clone, Debug)]
pub(crate) struct Level {
    pub(crate) base: u32,
    pub(crate) gens: Vec<Permutation>,
    gens_inv: Vec<Permutation>,
    pub(crate) orbit: Vec<u32>,
    /// Per point: NOT_IN_ORBIT, ROOT, or the generator index of the tree edge into it.
    edge: Vec<u32>,
    /// Explicit `(rep, rep⁻¹)` per point, for small degrees.
    reps: Option<Vec<Option<(Permutation, Permutation)>>>,
    /// Rectangle of Schreier generators already verified: (orbit prefix, generator prefix).
    checked: (usize, usize),
}

impl Level {
    fn new(base: u32, degree: usize) -> Self {
        let mut edge = vec![NOT_IN_ORBIT; degree];
        edge[base as usize] = ROOT;
        let reps = (degree <= EXPLICIT_TRANSVERSAL_DEGREE).then(|| {
            let mut v = vec![None; degree];
            v[base as usize] = Some((Permutation::identity(degree), Permutation::identity(degree)));
            v
        });
        Level {
            base,
            gens: Vec::new(),
            gens_inv: Vec::new(),
            orbit: vec![base],
            edge,
            reps,
            checked: (0, 0),
        }
    }

    fn add_gen(&mut self, g: Permutation) {
        let old_len = self.orbit.len();
        let old_gens = self.gens.len();
        self.gens_inv.push(g.inverse());
        self.gens.push(g);
        let mut k = 0;
        while k < self.orbit.len() {
            let p = self.orbit[k];
            let start = if k < old_len { old_gens } else { 0 };
            for s in start..self.gens.len() {
                let q = self.gens[s].image(p);
                if self.edge[q as usize] == NOT_IN_ORBIT {
                    self.edge[q as usize] = s as u32;
                    self.orbit.push(q);
                    if let Some(reps) = self.reps.as_mut() {
                        let (rp, _) = reps[p as usize].as_ref().expect("orbit point has a rep");
                        let rq = rp.compose(&self.gens[s]);
                        let rq_inv = rq.inverse();
                        reps[q as usize] = Some((rq, rq_inv));
                    }
                }
            }
            k += 1;
        }
    }

    #[inline]
    pub(crate) fn in_orbit(&self, p: u32) -> bool {
        self.edge[p as usize] != NOT_IN_ORBIT
    }

    /// The transversal element mapping the base point to `p`.
    pub(crate) fn rep(&self, p: u32) -> Permutation {
        if let Some(reps) = &self.reps {
            return reps[p as usize].as_ref().expect("point not in orbit").0.clone();
        }
        let mut word = Vec::new();
        let mut q = p;
        while self.edge[q as usize] != ROOT {
            let s = self.edge[q as usize] as usize;
            word.push(s);
            q = self.gens_inv[s].image(q);
        }
        let mut out = Permutation::identity(self.edge.len());
        for &s in word.iter().rev() {
            out.compose_assign(&self.gens[s]);
        }
        out
    }

    pub(crate) fn rep_ref(&self, p: u32) -> Option<&Permutation> {
        self.reps.as_ref().and_then(|r| r[p as usize].as_ref().map(|x| &x.0))
    }

    /// `g := g · rep(p)⁻¹`.
    pub(crate) fn strip(&self, g: &mut Permutation, p: u32) {
        if let Some(reps) = &self.reps {
            g.compose_assign(&reps[p as usize].as_ref().expect("point not in orbit").1);
            return;
        }
        let mut q = p;
        while self.edge[q as usize] != ROOT {
            let s = self.edge[q as usize] as usize;
            g.compose_assign(&self.gens_inv[s]);
            q = self.gens_inv[s].image(q);
        }
    }

    /// Orbit labels of `G^(i)` on all points (smallest point of each orbit).
    pub(crate) fn orbit_labels(&self) -> Vec<u32> {
        orbit_labels(self.edge.len(), &self.gens)
    }
}

pub(crate) fn orbit_labels(degree: usize, gens: &[Permutation]) -> Vec<u32> {
    let mut label = vec![u32::MAX; degree];
    let mut stack = Vec::new();
    for start in 0..degree {
        if label[start] != u32::MAX {
            continue;
        }
        label[start] = start as u32;
        stack.push(start as u32);
        while let Some(p) = stack.pop() {
            for g in gens {
                let q = g.image(p);
                if label[q as usize] == u32::MAX {
                    label[q as usize] = start as u32;
                    stack.push(q);
                }
            }
        }
    }
    label
}

/// Sifts `g` through `levels[from..]`. Returns the residue and the level at
/// which sifting stopped (`levels.len()` if it passed every level).
pub(crate) fn sift(levels: &[Level], mut g: Permutation, from: usize) -> (Permutation, usize) {
    for (i, lv) in levels.iter().enumerate().skip(from) {
        let p = g.image(lv.base);
        if !lv.in_orbit(p) {
            return (g, i);
        }
        lv.strip(&mut g, p);
    }
    (g, levels.len())
}

fn initial_levels(degree: usize, gens: &[Permutation], prefix: &[u32]) -> Vec<Level> {
    let mut base: Vec<u32> = prefix.to_vec();
    for s in gens {
        if base.iter().all(|&b| s.image(b) == b) {
            if let Some(b) = s.smallest_moved_point() {
                base.push(b);
            }
        }
    }
    let mut levels: Vec<Level> = base.iter().map(|&b| Level::new(b, degree)).collect();
    for s in gens {
        for level in levels.iter_mut() {
            level.add_gen(s.clone());
            if s.image(level.base) != level.base {
                break;
            }
        }
    }
    levels
}

/// Deterministic Schreier–Sims.
///
/// Base points start with `prefix` (redundant points allowed); further base
/// points are the smallest point moved by the strong generator that forced
/// the extension.
pub(crate) fn schreier_sims(degree: usize, gens: &[Permutation], prefix: &[u32]) -> Vec<Level> {
    let gens: Vec<Permutation> = gens.iter().filter(|g| !g.is_identity()).cloned().collect();
    let mut levels = initial_levels(degree, &gens, prefix);
    let mut i = levels.len() as isize - 1;
    while i >= 0 {
        let li = i as usize;
        let (done_orbit, done_gens) = levels[li].checked;
        let mut restart = None;
        'scan: for oi in 0..levels[li].orbit.len() {
            let p = levels[li].orbit[oi];
            let gstart = if oi < done_orbit { done_gens } else { 0 };
            for si in gstart..levels[li].gens.len() {
                let lv = &levels[li];
                let q = lv.gens[si].image(p);
                let mut sg = lv.rep(p);
                sg.compose_assign(&lv.gens[si]);
                lv.strip(&mut sg, q);
                if sg.is_identity() {
                    continue;
                }
                let (h, j) = sift(&levels, sg, li + 1);
                if j < levels.len() || !h.is_identity() {
                    let j = if j == levels.len() {
                        let b = h.smallest_moved_point().expect("nontrivial residue");
                        levels.push(Level::new(b, degree));
                        levels.len() - 1
                    } else {
                        j
                    };
                    for lv in &mut levels[li + 1..=j] {
                        lv.add_gen(h.clone());
                    }
                    restart = Some(j);
                    break 'scan;
                }
            }
        }
        match restart {
            Some(j) => i = j as isize,
            None => {
                levels[li].checked = (levels[li].orbit.len(), levels[li].gens.len());
                i -= 1;
            }
        }
    }
    levels
}

/// Product-replacement random elements, seeded for reproducibility.
pub(crate) struct ProductReplacement {
    state: Vec<Permutation>,
    acc: Permutation,
    rng: ChaCha8Rng,
}

impl ProductReplacement {
    pub(crate) fn new(degree: usize, gens: &[Permutation], seed: u64) -> Self {
        let mut state: Vec<Permutation> = Vec::new();
        let base: Vec<Permutation> = if gens.is_empty() { vec![Permutation::identity(degree)] } else { gens.to_vec() };
        while state.len() < 10.max(2 * base.len()) {
            state.extend(base.iter().cloned());
        }
        let mut pr = ProductReplacement { state, acc: Permutation::identity(degree), rng: ChaCha8Rng::seed_from_u64(seed) };
        for _ in 0..60 {
            pr.next_element();
        }
        pr
    }

    pub(crate) fn next_element(&mut self) -> Permutation {
        let n = self.state.len();
        let i = self.rng.gen_range(0..n);
        let mut j = self.rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let rhs = if self.rng.gen_bool(0.5) { self.state[j].clone() } else { self.state[j].inverse() };
        if self.rng.gen_bool(0.5) {
            self.state[i] = self.state[i].compose(&rhs);
        } else {
            self.state[i] = rhs.compose(&self.state[i]);
        }
        self.acc = self.acc.compose(&self.state[i]);
        self.acc.clone()
    }
}

pub(crate) fn chain_order(levels: &[Level]) -> BigUint {
    levels.iter().fold(BigUint::from(1u32), |acc, lv| acc * BigUint::from(lv.orbit.len()))
}

/// Randomized Schreier–Sims terminated by a known group order.
///
/// The product of orbit lengths of a partial chain never exceeds the order of
/// the group generated, so reaching `target` certifies a complete chain.
pub(crate) fn schreier_sims_known_order(
    degree: usize,
    gens: &[Permutation],
    prefix: &[u32],
    target: &BigUint,
    mut random: impl FnMut() -> Permutation,
) -> Result<Vec<Level>, GroupError> {
    let gens: Vec<Permutation> = gens.iter().filter(|g| !g.is_identity()).cloned().collect();
    let mut levels = initial_levels(degree, &gens, prefix);
    let mut order = chain_order(&levels);
    let mut idle = 0usize;
    while &order < target {
        let r = random();
        let (h, j) = sift(&levels, r, 0);
        if j == levels.len() && h.is_identity() {
            idle += 1;
            if idle > 2000 {
                return Err(GroupError::OrderNotReached { reached: order.to_string(), target: target.to_string() });
            }
            continue;
        }
        idle = 0;
        let j = if j == levels.len() {
            let b = h.smallest_moved_point().expect("nontrivial residue");
            levels.push(Level::new(b, degree));
            levels.len() - 1
        } else {
            j
        };
        for lv in &mut levels[..=j] {
            lv.add_gen(h.clone());
        }
        order = chain_order(&levels);
    }
    if &order > target {
        return Err(GroupError::OrderExceeded { reached: order.to_string(), target: target.to_string() });
    }
    Ok(levels)
}

pub(crate) fn random_seed() -> u64 {
    REBASE_SEED
}
