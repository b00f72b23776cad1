//! Orbit counting rules out a regular A4 on 12 points.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::arctrans::burnside_orbit_count;
use crate::classify::{find_subgroup_classes, ClassifyError, SubgroupType};
use crate::permgroup::PermutationGroup;

/// Orbit data for one class of A4 subgroups.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct A4Orbits {
    /// 1-based images of the generators of the representative.
    pub generators: Vec<Vec<u32>>,
    pub orbit_count: usize,
    pub burnside_count: u64,
    /// Distinct fixed-point counts of involutions.
    pub involution_fixed_points: Vec<usize>,
    /// Distinct fixed-point counts of elements of order 3.
    pub order3_fixed_points: Vec<usize>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ObstructionReport {
    pub degree: usize,
    pub classes: Vec<A4Orbits>,
    /// No class acts regularly, so no A4 complement exists.
    pub obstructed: bool,
}

/// Orbit counts of every class of A4 subgroups of `g`. A regular A4 would have
/// exactly one orbit on 12 points.
pub fn regular_complement_obstruction(g: &PermutationGroup) -> Result<ObstructionReport, ClassifyError> {
    let search = find_subgroup_classes(g, SubgroupType::A4)?;
    let mut classes = Vec::new();
    for c in &search.classes {
        let k = &c.subgroup;
        let burnside_count = burnside_orbit_count(k, 1 << 12).map_err(|e| ClassifyError::Internal(e.to_string()))?;
        let mut inv = BTreeSet::new();
        let mut ord3 = BTreeSet::new();
        k.for_each_element(|x| {
            match x.order() {
                2 => {
                    inv.insert(x.fixed_point_count());
                }
                3 => {
                    ord3.insert(x.fixed_point_count());
                }
                _ => {}
            }
            true
        });
        classes.push(A4Orbits {
            generators: k.generators().iter().map(|x| x.one_based()).collect(),
            orbit_count: k.orbits().len(),
            burnside_count,
            involution_fixed_points: inv.into_iter().collect(),
            order3_fixed_points: ord3.into_iter().collect(),
        });
    }
    let obstructed = classes.iter().all(|c| c.orbit_count != 1);
    Ok(ObstructionReport { degree: g.degree(), classes, obstructed })
}
