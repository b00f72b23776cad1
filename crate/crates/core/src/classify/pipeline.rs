//! The fixed list of cases, the per-case searches and their reports.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::arctrans::{arc_orbit_profile, local_action, ArcOrbitProfile};
use crate::autiso::{are_isomorphic, automorphism_group, canonical_form, invariant_signature, InvariantSignature};
use crate::classify::obstruction::{regular_complement_obstruction, ObstructionReport};
use crate::classify::sigma::{sigma_isomorphism, SigmaReport};
use crate::classify::structure::{connection_set_in_group, inverse_closed, normality_check, regular_image};
use crate::classify::{
    delta_orbits, feasible_elements, find_subgroup_classes, meets_trivially, ClassSearch, ClassifyError, FilterStats,
    SubgroupType,
};
use crate::graphs::{cayley_graph, coset_graph, CosetSpace, GroupAction};
use crate::groupdata::load_group;
use crate::permgroup::{subgroup_transporter, Permutation, PermutationGroup};

pub const SCHEMA_VERSION: u32 = 1;

/// Same-orbit isomorphism checks per Δ-orbit.
const SAME_ORBIT_SAMPLES: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    /// Stabilizers meeting a simple subgroup trivially, then feasible elements.
    ComplementSearch,
    /// Every class of stabilizers, no intersection condition.
    QuotientSearch,
    /// Orbit counting on A4 classes rules out a regular complement.
    Obstruction,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CaseSpec {
    pub id: String,
    pub ambient: String,
    pub simple_subgroup: Option<String>,
    pub stabilizer_type: SubgroupType,
    pub require_trivial_intersection: bool,
    pub mode: Mode,
    /// Take the stabilizer inside the stabilizer found by this case, so that
    /// the two searches share elements.
    pub inside_case: Option<String>,
}

/// Values the run is expected to reproduce.
#[derive(Clone, Debug, Default)]
struct Expected {
    classes: Option<usize>,
    complements: Option<usize>,
    delta_size: Option<usize>,
    orbit_sizes: Option<Vec<usize>>,
    normalizer_order: Option<u128>,
    graph_stabilizer: Option<u128>,
    aut_order: Option<u128>,
}

fn case(
    id: &str,
    ambient: &str,
    simple: Option<&str>,
    ty: SubgroupType,
    mode: Mode,
    inside: Option<&str>,
) -> CaseSpec {
    CaseSpec {
        id: id.to_string(),
        ambient: ambient.to_string(),
        simple_subgroup: simple.map(str::to_string),
        stabilizer_type: ty,
        require_trivial_intersection: mode == Mode::ComplementSearch,
        mode,
        inside_case: inside.map(str::to_string),
    }
}

/// All cases, in run order.
pub fn cases() -> Vec<CaseSpec> {
    use Mode::*;
    use SubgroupType::*;
    vec![
        case("m11-psl2-11", "M11.deg12", None, A4, Obstruction, None),
        case("m12-2-m11", "M12.2.deg24", Some("M11.deg24"), S4, ComplementSearch, None),
        case("m12-m11", "M12.deg24", Some("M11.deg24"), A4, ComplementSearch, Some("m12-2-m11")),
        case("m24-m23", "M24.deg24", Some("M23.deg24"), S4, ComplementSearch, None),
        case("a12-a11", "A12.deg12", Some("A11.deg12"), A4, ComplementSearch, None),
        case("s12-a11", "S12.deg12", Some("A11.deg12"), S4, ComplementSearch, None),
        case("quotient-m11", "M11.deg11", None, S4, QuotientSearch, None),
        case("quotient-m12", "M12.deg12", None, S4, QuotientSearch, None),
        case("quotient-a12", "A12.deg12", None, S4, QuotientSearch, None),
    ]
}

pub fn case_by_id(id: &str) -> Result<CaseSpec, ClassifyError> {
    cases().into_iter().find(|c| c.id == id).ok_or_else(|| ClassifyError::UnknownCase(id.to_string()))
}

fn expected(id: &str) -> Expected {
    match id {
        "m12-2-m11" => Expected {
            complements: Some(1),
            delta_size: Some(16),
            orbit_sizes: Some(vec![12, 4]),
            normalizer_order: Some(24),
            graph_stabilizer: Some(24),
            aut_order: Some(190080),
            ..Expected::default()
        },
        "m12-m11" => Expected {
            complements: Some(1),
            delta_size: Some(12),
            orbit_sizes: Some(vec![12]),
            graph_stabilizer: Some(12),
            ..Expected::default()
        },
        "m24-m23" | "a12-a11" | "s12-a11" => Expected { delta_size: Some(0), ..Expected::default() },
        "quotient-m11" => Expected { classes: Some(1), delta_size: Some(0), ..Expected::default() },
        "quotient-m12" => Expected { classes: Some(4), delta_size: Some(0), ..Expected::default() },
        "quotient-a12" => Expected { classes: Some(24), delta_size: Some(0), ..Expected::default() },
        _ => Expected::default(),
    }
}

/// A value the run was meant to reproduce, and what it found.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Claim {
    pub label: String,
    pub expected: Value,
    pub observed: Value,
    pub holds: bool,
}

fn claim(label: impl Into<String>, expected: Value, observed: Value) -> Claim {
    let holds = expected == observed;
    Claim { label: label.into(), expected, observed, holds }
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassSearchRecord {
    pub subgroup_type: SubgroupType,
    pub classes: usize,
    pub involutions: usize,
    pub order3_classes: usize,
    pub pairs_total: u128,
    pub pairs_accounted: u128,
    pub certified: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassRecord {
    pub index: usize,
    /// 1-based generator images.
    pub generators: Vec<Vec<u32>>,
    pub order: u128,
    pub class_size: u128,
    pub normalizer_order: u128,
    pub meets_simple_trivially: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FeasibleRecord {
    pub class_index: usize,
    /// Generators of the stabilizer `K` used, possibly a conjugate of the
    /// class representative.
    pub stabilizer: Vec<Vec<u32>>,
    pub normalizer_order: u128,
    pub local_subgroups: usize,
    pub filter_stats: Vec<FilterStats>,
    /// Δ, sorted by image array.
    pub elements: Vec<Vec<u32>>,
    /// Orbits of `K` on Δ by conjugation, as indices into `elements`.
    pub orbits: Vec<Vec<usize>>,
    pub orbit_sizes: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct AutRecord {
    pub order: String,
    pub generators: usize,
    pub search_nodes: u64,
    pub contains_action: bool,
    pub vertex_stabilizer_order: u128,
    pub local_action_order: u128,
    pub local_two_transitive: bool,
    pub arc_profile: ArcOrbitProfile,
    pub s_transitivity: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct CayleyRecord {
    pub group: String,
    pub regular: bool,
    /// Connection set as 1-based elements of the regular group.
    pub connection_set: Vec<Vec<u32>>,
    pub inverse_closed: bool,
    pub generated_order: u128,
    pub group_order: u128,
    /// `x ↦ Kx` maps the Cayley graph onto the coset graph.
    pub cayley_isomorphism: bool,
    pub normal_in_aut: bool,
    /// Automorphism generator and regular-group generator whose conjugate leaves the group.
    pub non_normality_witness: Option<(usize, usize)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SignatureRecord {
    pub girth: Option<usize>,
    pub cycle_counts: std::collections::BTreeMap<usize, u64>,
    pub refinement_histogram: std::collections::BTreeMap<usize, usize>,
}

impl From<&InvariantSignature> for SignatureRecord {
    fn from(s: &InvariantSignature) -> Self {
        SignatureRecord {
            girth: s.girth,
            cycle_counts: s.cycle_counts.clone(),
            refinement_histogram: s.refinement_histogram.clone(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GraphCertificate {
    pub label: String,
    /// The element `g`, 1-based.
    pub element: Vec<u32>,
    pub vertex_count: usize,
    pub edge_count: usize,
    pub valency: Option<usize>,
    pub connected: bool,
    pub faithful: bool,
    pub vertex0_neighbors: Vec<u32>,
    /// Arc orbits of the ambient group.
    pub arc_profile: ArcOrbitProfile,
    pub s_transitivity: usize,
    pub stabilizer_order: u128,
    pub local_action_order: u128,
    pub local_two_transitive: bool,
    pub aut: AutRecord,
    pub cayley: Option<CayleyRecord>,
    pub signature: SignatureRecord,
    pub certificate_hash: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct OrbitIsomorphism {
    pub orbit: usize,
    pub element_index: usize,
    pub isomorphic: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Comparison {
    pub left: String,
    pub right: String,
    pub neighborhoods_equal: bool,
    pub canonical_forms_equal: bool,
    pub isomorphism_found: bool,
    pub signatures_equal: bool,
    /// `Γ(g)` against `Γ(g')` for `g` the least element of an orbit and `g'` another member.
    pub same_orbit: Vec<OrbitIsomorphism>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CrossCheck {
    pub overgroup_case: String,
    /// The stabilizer used here is conjugate to the class representative.
    pub conjugate_to_class: bool,
    /// Every element of Δ here lies in the first Δ-orbit of the overgroup case.
    pub delta_in_first_orbit: bool,
    pub delta_equals_first_orbit: bool,
    pub sigma: SigmaReport,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Empty,
    Graphs,
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchReport {
    pub schema: u32,
    pub case: CaseSpec,
    pub ambient_order: u128,
    pub class_search: Option<ClassSearchRecord>,
    pub k_classes: Vec<ClassRecord>,
    pub feasible: Vec<FeasibleRecord>,
    pub graphs_built: Vec<GraphCertificate>,
    pub comparison: Option<Comparison>,
    pub cross_check: Option<CrossCheck>,
    pub obstruction: Option<ObstructionReport>,
    pub claims: Vec<Claim>,
    pub verdict: Verdict,
}

impl SearchReport {
    pub fn all_claims_hold(&self) -> bool {
        self.claims.iter().all(|c| c.holds)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Summary {
    pub graphs_built: usize,
    /// Isomorphism classes among the graphs of the complement searches with
    /// an `S4` stabilizer.
    pub distinct_graphs: usize,
    pub non_normal: usize,
    pub regular_groups: Vec<String>,
    pub aut_orders: Vec<String>,
    pub aut_vertex_stabilizer_orders: Vec<u128>,
    pub failed_claims: Vec<String>,
    pub all_claims_hold: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassificationReport {
    pub schema: u32,
    pub cases: Vec<SearchReport>,
    pub summary: Summary,
}

fn one_based(gens: &[Permutation]) -> Vec<Vec<u32>> {
    gens.iter().map(Permutation::one_based).collect()
}

fn load(name: &str) -> Result<PermutationGroup, ClassifyError> {
    Ok(load_group(name)?.group)
}

/// Stabilizer and Δ of a complement case, for reuse by a dependent case.
struct ComplementData {
    ambient: PermutationGroup,
    stabilizer: PermutationGroup,
    orbits: Vec<Vec<Permutation>>,
}

fn class_records(search: &ClassSearch, simple: Option<&PermutationGroup>) -> Vec<ClassRecord> {
    search
        .classes
        .iter()
        .enumerate()
        .map(|(i, c)| ClassRecord {
            index: i,
            generators: one_based(c.subgroup.generators()),
            order: c.subgroup.order(),
            class_size: c.class_size,
            normalizer_order: c.normalizer.order(),
            meets_simple_trivially: simple.map(|h| meets_trivially(&c.subgroup, h)),
        })
        .collect()
}

fn feasible_record(
    a: &PermutationGroup,
    class_index: usize,
    k: &PermutationGroup,
    normalizer_order: u128,
) -> Result<(FeasibleRecord, Vec<Vec<Permutation>>), ClassifyError> {
    let search = feasible_elements(a, k)?;
    let orbits = delta_orbits(k, &search.elements);
    let position = |x: &Permutation| search.elements.binary_search(x).expect("orbit member lies in Δ");
    let record = FeasibleRecord {
        class_index,
        stabilizer: one_based(k.generators()),
        normalizer_order,
        local_subgroups: search.local_subgroups.len(),
        filter_stats: search.stats.clone(),
        elements: one_based(&search.elements),
        orbits: orbits.iter().map(|o| o.iter().map(position).collect()).collect(),
        orbit_sizes: orbits.iter().map(Vec::len).collect(),
    };
    Ok((record, orbits))
}

fn certify_graph(
    label: &str,
    space: &CosetSpace,
    action: &GroupAction,
    g: &Permutation,
    regular: Option<(&str, &PermutationGroup)>,
) -> Result<(GraphCertificate, crate::graphs::Graph), ClassifyError> {
    let built = coset_graph(space, g)?;
    let graph = built.graph;
    let profile = arc_orbit_profile(&graph, action)?;
    let local = local_action(&graph, action, 0)?;
    let aut = automorphism_group(&graph)?;
    let aut_action = GroupAction::natural(aut.group.clone());
    let aut_profile = arc_orbit_profile(&graph, &aut_action)?;
    let aut_local = local_action(&graph, &aut_action, 0)?;
    let aut_record = AutRecord {
        order: aut.order.to_string(),
        generators: aut.generators.len(),
        search_nodes: aut.search_nodes,
        contains_action: action.permutations().iter().all(|p| aut.group.contains(p)),
        vertex_stabilizer_order: aut_local.stabilizer_order,
        local_action_order: aut_local.group.order(),
        local_two_transitive: aut_local.is_two_transitive(),
        s_transitivity: aut_profile.transitivity(),
        arc_profile: aut_profile,
    };
    let cayley = match regular {
        Some((name, h)) => {
            let r = regular_image(space, h)?;
            let s = connection_set_in_group(space, &graph, h)?;
            let generated = PermutationGroup::new(s.clone())?.order();
            let cay = cayley_graph(h, &s)?;
            let map: Vec<u32> =
                cay.elements.iter().map(|x| space.index_of(x).expect("element of the ambient group")).collect();
            let check = normality_check(&aut.group, &r)?;
            Some(CayleyRecord {
                group: name.to_string(),
                regular: true,
                connection_set: one_based(&s),
                inverse_closed: inverse_closed(&s),
                generated_order: generated,
                group_order: h.order(),
                cayley_isomorphism: crate::autiso::is_isomorphism(&cay.graph, &graph, &map),
                normal_in_aut: check.normal,
                non_normality_witness: check.witness.map(|w| (w.overgroup_generator, w.subgroup_generator)),
            })
        }
        None => None,
    };
    let signature = invariant_signature(&graph);
    let cert = GraphCertificate {
        label: label.to_string(),
        element: g.one_based(),
        vertex_count: graph.vertex_count(),
        edge_count: graph.edge_count(),
        valency: graph.valency(),
        connected: built.connected,
        faithful: space.is_faithful(),
        vertex0_neighbors: graph.neighbors(0).to_vec(),
        s_transitivity: profile.transitivity(),
        arc_profile: profile,
        stabilizer_order: local.stabilizer_order,
        local_action_order: local.group.order(),
        local_two_transitive: local.is_two_transitive(),
        aut: aut_record,
        cayley,
        signature: SignatureRecord::from(&signature),
        certificate_hash: canonical_form(&graph).certificate_hash,
    };
    Ok((cert, graph))
}

fn graph_claims(cert: &GraphCertificate, ex: &Expected, claims: &mut Vec<Claim>) {
    let l = &cert.label;
    claims.push(claim(format!("{l}.vertex_count"), json!(7920), json!(cert.vertex_count)));
    claims.push(claim(format!("{l}.valency"), json!(4), json!(cert.valency)));
    claims.push(claim(format!("{l}.connected"), json!(true), json!(cert.connected)));
    claims.push(claim(format!("{l}.ambient_two_arc_transitive"), json!(1), json!(cert.arc_profile.levels[2].orbit_count)));
    claims.push(claim(
        format!("{l}.ambient_not_three_arc_transitive"),
        json!(true),
        json!(cert.arc_profile.levels[3].orbit_count > 1),
    ));
    if let Some(st) = ex.graph_stabilizer {
        claims.push(claim(format!("{l}.ambient_vertex_stabilizer_order"), json!(st), json!(cert.stabilizer_order)));
        claims.push(claim(format!("{l}.ambient_local_action_order"), json!(st), json!(cert.local_action_order)));
    }
    claims.push(claim(format!("{l}.ambient_local_two_transitive"), json!(true), json!(cert.local_two_transitive)));
    claims.push(claim(format!("{l}.aut_contains_ambient_action"), json!(true), json!(cert.aut.contains_action)));
    if let Some(order) = ex.aut_order {
        claims.push(claim(format!("{l}.aut_order"), json!(order.to_string()), json!(cert.aut.order)));
        claims.push(claim(format!("{l}.aut_vertex_stabilizer_order"), json!(24), json!(cert.aut.vertex_stabilizer_order)));
        claims.push(claim(format!("{l}.aut_local_action_order"), json!(24), json!(cert.aut.local_action_order)));
        claims.push(claim(format!("{l}.aut_s_transitivity"), json!(2), json!(cert.aut.s_transitivity)));
    }
    if let Some(c) = &cert.cayley {
        claims.push(claim(format!("{l}.connection_set_size"), json!(4), json!(c.connection_set.len())));
        claims.push(claim(format!("{l}.connection_set_inverse_closed"), json!(true), json!(c.inverse_closed)));
        claims.push(claim(format!("{l}.connection_set_generates"), json!(c.group_order), json!(c.generated_order)));
        claims.push(claim(format!("{l}.cayley_isomorphism"), json!(true), json!(c.cayley_isomorphism)));
        claims.push(claim(format!("{l}.non_normal"), json!(true), json!(!c.normal_in_aut)));
    }
}

fn compare(
    labels: (&str, &str),
    graphs: (&crate::graphs::Graph, &crate::graphs::Graph),
    certs: (&GraphCertificate, &GraphCertificate),
    space: &CosetSpace,
    orbits: &[Vec<Permutation>],
) -> Result<Comparison, ClassifyError> {
    let (g1, g2) = graphs;
    let mut same_orbit = Vec::new();
    for (oi, orbit) in orbits.iter().enumerate() {
        let base = coset_graph(space, &orbit[0])?.graph;
        for (j, g) in orbit.iter().enumerate().skip(1).take(SAME_ORBIT_SAMPLES) {
            let other = coset_graph(space, g)?.graph;
            same_orbit.push(OrbitIsomorphism { orbit: oi, element_index: j, isomorphic: are_isomorphic(&base, &other).is_some() });
        }
    }
    Ok(Comparison {
        left: labels.0.to_string(),
        right: labels.1.to_string(),
        neighborhoods_equal: g1.neighbors(0) == g2.neighbors(0),
        canonical_forms_equal: certs.0.certificate_hash == certs.1.certificate_hash,
        isomorphism_found: are_isomorphic(g1, g2).is_some(),
        signatures_equal: invariant_signature(g1) == invariant_signature(g2),
        same_orbit,
    })
}

fn run_complement(case: &CaseSpec, ex: &Expected) -> Result<SearchReport, ClassifyError> {
    let a = load(&case.ambient)?;
    let simple_name = case.simple_subgroup.as_deref().ok_or_else(|| ClassifyError::Internal("missing simple subgroup".into()))?;
    let h = load(simple_name)?;
    if !a.contains_group(&h) {
        return Err(ClassifyError::NotASubgroup(simple_name.to_string()));
    }
    let search = find_subgroup_classes(&a, case.stabilizer_type)?;
    let k_classes = class_records(&search, Some(&h));
    let selected: Vec<usize> =
        k_classes.iter().filter(|c| c.meets_simple_trivially == Some(true)).map(|c| c.index).collect();
    let mut claims = vec![claim("stabilizer_class_search_certified", json!(true), json!(search.certified()))];
    if let Some(n) = ex.complements {
        claims.push(claim("complement_class_count", json!(n), json!(selected.len())));
    }

    let overgroup = match &case.inside_case {
        Some(id) => Some((id.clone(), complement_data(&case_by_id(id)?)?)),
        None => None,
    };

    let mut feasible = Vec::new();
    let mut data = None;
    let mut cross_check = None;
    for &ci in &selected {
        let class = &search.classes[ci];
        let mut k = class.subgroup.clone();
        let mut conjugate_to_class = true;
        if let Some((_, over)) = &overgroup {
            // K ∩ B for the overgroup's stabilizer K and B = this ambient group.
            let inner = over.stabilizer.intersection(&a, 1 << 12)?;
            conjugate_to_class = subgroup_transporter(&a, &inner, &class.subgroup).is_some();
            k = inner;
        }
        let (record, orbits) = feasible_record(&a, ci, &k, class.normalizer.order())?;
        if let Some(n) = ex.normalizer_order {
            claims.push(claim("stabilizer_normalizer_order", json!(n), json!(record.normalizer_order)));
        }
        if let Some((id, over)) = &overgroup {
            let first: BTreeSet<&Permutation> = over.orbits.first().map(|o| o.iter().collect()).unwrap_or_default();
            let here: BTreeSet<&Permutation> = orbits.iter().flatten().collect();
            let g1 = orbits.first().and_then(|o| o.first());
            let sigma = match g1 {
                Some(g1) => {
                    let small = CosetSpace::new(&a, &k)?;
                    let large = CosetSpace::new(&over.ambient, &over.stabilizer)?;
                    Some(sigma_isomorphism(&small, &large, g1)?.report)
                }
                None => None,
            };
            if let Some(sigma) = sigma {
                claims.push(claim("stabilizer_conjugate_to_class", json!(true), json!(conjugate_to_class)));
                claims.push(claim("delta_inside_overgroup_first_orbit", json!(true), json!(here.is_subset(&first))));
                claims.push(claim("sigma_isomorphism", json!(true), json!(sigma.verified())));
                cross_check = Some(CrossCheck {
                    overgroup_case: id.clone(),
                    conjugate_to_class,
                    delta_in_first_orbit: here.is_subset(&first),
                    delta_equals_first_orbit: here == first,
                    sigma,
                });
            }
        }
        data = Some(ComplementData { ambient: a.clone(), stabilizer: k, orbits });
        feasible.push(record);
    }

    if let Some(n) = ex.delta_size {
        let sizes: Vec<usize> = feasible.iter().map(|f| f.elements.len()).collect();
        if n == 0 {
            claims.push(claim("feasible_sets_empty", json!(true), json!(sizes.iter().all(|&s| s == 0))));
        } else {
            claims.push(claim("feasible_set_sizes", json!([n]), json!(sizes)));
        }
    }
    if let Some(sizes) = &ex.orbit_sizes {
        let observed: Vec<Vec<usize>> = feasible.iter().map(|f| f.orbit_sizes.clone()).collect();
        claims.push(claim("delta_orbit_sizes", json!([sizes]), json!(observed)));
    }

    let mut graphs_built = Vec::new();
    let mut comparison = None;
    if let Some(d) = &data {
        if !d.orbits.is_empty() {
            let (space, action) = crate::graphs::coset_action(&a, &d.stabilizer)?;
            let results: Vec<(GraphCertificate, crate::graphs::Graph)> = d
                .orbits
                .par_iter()
                .enumerate()
                .map(|(i, o)| certify_graph(&format!("delta{}", i + 1), &space, &action, &o[0], Some((simple_name, &h))))
                .collect::<Result<_, _>>()?;
            for (cert, _) in &results {
                graph_claims(cert, ex, &mut claims);
            }
            if results.len() >= 2 {
                let c = compare(
                    (&results[0].0.label, &results[1].0.label),
                    (&results[0].1, &results[1].1),
                    (&results[0].0, &results[1].0),
                    &space,
                    &d.orbits,
                )?;
                claims.push(claim("vertex0_neighborhoods_differ", json!(true), json!(!c.neighborhoods_equal)));
                claims.push(claim("canonical_forms_differ", json!(true), json!(!c.canonical_forms_equal)));
                claims.push(claim("no_isomorphism_found", json!(true), json!(!c.isomorphism_found)));
                claims.push(claim(
                    "same_orbit_graphs_isomorphic",
                    json!(true),
                    json!(c.same_orbit.iter().all(|s| s.isomorphic)),
                ));
                comparison = Some(c);
            }
            graphs_built = results.into_iter().map(|(c, _)| c).collect();
        }
    }

    let verdict = if graphs_built.is_empty() { Verdict::Empty } else { Verdict::Graphs };
    let report = SearchReport {
        schema: SCHEMA_VERSION,
        case: case.clone(),
        ambient_order: a.order(),
        class_search: Some(class_search_record(&search)),
        k_classes,
        feasible,
        graphs_built,
        comparison,
        cross_check,
        obstruction: None,
        claims,
        verdict,
    };
    Ok(report)
}

/// Stabilizer and Δ-orbits of a complement case with a single complement class.
fn complement_data(case: &CaseSpec) -> Result<ComplementData, ClassifyError> {
    let a = load(&case.ambient)?;
    let h = load(case.simple_subgroup.as_deref().ok_or_else(|| ClassifyError::Internal("missing simple subgroup".into()))?)?;
    let search = find_subgroup_classes(&a, case.stabilizer_type)?;
    let mut selected = search.classes.iter().filter(|c| meets_trivially(&c.subgroup, &h));
    let k = match (selected.next(), selected.next()) {
        (Some(c), None) => c.subgroup.clone(),
        _ => return Err(ClassifyError::Internal(format!("case {} has no unique complement class", case.id))),
    };
    let orbits = delta_orbits(&k, &feasible_elements(&a, &k)?.elements);
    Ok(ComplementData { ambient: a, stabilizer: k, orbits })
}

fn class_search_record(search: &ClassSearch) -> ClassSearchRecord {
    ClassSearchRecord {
        subgroup_type: search.subgroup_type,
        classes: search.classes.len(),
        involutions: search.involutions,
        order3_classes: search.order3_classes,
        pairs_total: search.pairs_total,
        pairs_accounted: search.pairs_accounted,
        certified: search.certified(),
    }
}

fn run_quotient(case: &CaseSpec, ex: &Expected) -> Result<SearchReport, ClassifyError> {
    let a = load(&case.ambient)?;
    let search = find_subgroup_classes(&a, case.stabilizer_type)?;
    let k_classes = class_records(&search, None);
    let feasible: Vec<FeasibleRecord> = search
        .classes
        .par_iter()
        .enumerate()
        .map(|(i, c)| feasible_record(&a, i, &c.subgroup, c.normalizer.order()).map(|r| r.0))
        .collect::<Result<_, _>>()?;
    let mut claims = vec![claim("stabilizer_class_search_certified", json!(true), json!(search.certified()))];
    if let Some(n) = ex.classes {
        claims.push(claim("stabilizer_class_count", json!(n), json!(search.classes.len())));
    }
    claims.push(claim("feasible_sets_empty", json!(true), json!(feasible.iter().all(|f| f.elements.is_empty()))));
    let verdict = if feasible.iter().all(|f| f.elements.is_empty()) { Verdict::Empty } else { Verdict::Graphs };
    Ok(SearchReport {
        schema: SCHEMA_VERSION,
        case: case.clone(),
        ambient_order: a.order(),
        class_search: Some(class_search_record(&search)),
        k_classes,
        feasible,
        graphs_built: Vec::new(),
        comparison: None,
        cross_check: None,
        obstruction: None,
        claims,
        verdict,
    })
}

fn run_obstruction(case: &CaseSpec) -> Result<SearchReport, ClassifyError> {
    let a = load(&case.ambient)?;
    let report = regular_complement_obstruction(&a)?;
    let counts: Vec<usize> = report.classes.iter().map(|c| c.orbit_count).collect();
    let burnside: Vec<usize> = report.classes.iter().map(|c| c.burnside_count as usize).collect();
    let claims = vec![
        claim("a4_orbit_counts", json!(vec![4; counts.len()]), json!(counts)),
        claim("burnside_matches_orbit_count", json!(counts), json!(burnside)),
        claim(
            "involution_fixed_points",
            json!(vec![vec![4]; counts.len()]),
            json!(report.classes.iter().map(|c| c.involution_fixed_points.clone()).collect::<Vec<_>>()),
        ),
        claim(
            "order3_fixed_points",
            json!(vec![vec![3]; counts.len()]),
            json!(report.classes.iter().map(|c| c.order3_fixed_points.clone()).collect::<Vec<_>>()),
        ),
        claim("no_regular_a4", json!(true), json!(report.obstructed)),
    ];
    Ok(SearchReport {
        schema: SCHEMA_VERSION,
        case: case.clone(),
        ambient_order: a.order(),
        class_search: None,
        k_classes: Vec::new(),
        feasible: Vec::new(),
        graphs_built: Vec::new(),
        comparison: None,
        cross_check: None,
        obstruction: Some(report),
        claims,
        verdict: Verdict::Empty,
    })
}

/// The coset graph `Γ(M12:2, K, g_i)` for `g_i` the least element of the
/// `i`-th Δ-orbit (1-based), in the shared coset indexing.
pub fn build_delta_graph(index: usize) -> Result<crate::graphs::Graph, ClassifyError> {
    let data = complement_data(&case_by_id("m12-2-m11")?)?;
    let orbit = index
        .checked_sub(1)
        .and_then(|i| data.orbits.get(i))
        .ok_or_else(|| ClassifyError::Internal(format!("no Δ-orbit with index {index}")))?;
    let space = CosetSpace::new(&data.ambient, &data.stabilizer)?;
    Ok(coset_graph(&space, &orbit[0])?.graph)
}

/// Runs one case.
pub fn run_case(case: &CaseSpec) -> Result<SearchReport, ClassifyError> {
    let ex = expected(&case.id);
    let result = match case.mode {
        Mode::ComplementSearch => run_complement(case, &ex),
        Mode::QuotientSearch => run_quotient(case, &ex),
        Mode::Obstruction => run_obstruction(case),
    };
    result.map_err(|e| ClassifyError::Case { case: case.id.clone(), source: Box::new(e) })
}

/// Runs every case and summarizes.
pub fn run_all() -> Result<ClassificationReport, ClassifyError> {
    let reports: Vec<SearchReport> = cases().par_iter().map(run_case).collect::<Result<_, _>>()?;
    let s4_graphs: Vec<&GraphCertificate> = reports
        .iter()
        .filter(|r| r.case.mode == Mode::ComplementSearch && r.case.stabilizer_type == SubgroupType::S4)
        .flat_map(|r| &r.graphs_built)
        .collect();
    let hashes: BTreeSet<&str> = s4_graphs.iter().map(|g| g.certificate_hash.as_str()).collect();
    let failed_claims: Vec<String> = reports
        .iter()
        .flat_map(|r| r.claims.iter().filter(|c| !c.holds).map(move |c| format!("{}: {}", r.case.id, c.label)))
        .collect();
    let summary = Summary {
        graphs_built: s4_graphs.len(),
        distinct_graphs: hashes.len(),
        non_normal: s4_graphs.iter().filter(|g| g.cayley.as_ref().is_some_and(|c| !c.normal_in_aut)).count(),
        regular_groups: s4_graphs.iter().filter_map(|g| g.cayley.as_ref().map(|c| c.group.clone())).collect(),
        aut_orders: s4_graphs.iter().map(|g| g.aut.order.clone()).collect(),
        aut_vertex_stabilizer_orders: s4_graphs.iter().map(|g| g.aut.vertex_stabilizer_order).collect(),
        all_claims_hold: failed_claims.is_empty(),
        failed_claims,
    };
    Ok(ClassificationReport { schema: SCHEMA_VERSION, cases: reports, summary })
}

/// Re-verifies the stored witnesses of a report with group arithmetic only.
/// Returns the list of problems found.
pub fn recheck(report: &SearchReport) -> Result<Vec<String>, ClassifyError> {
    let mut problems = Vec::new();
    let a = load(&report.case.ambient)?;
    if a.order() != report.ambient_order {
        problems.push(format!("ambient order {} != {}", a.order(), report.ambient_order));
    }
    let h = match &report.case.simple_subgroup {
        Some(name) => Some(load(name)?),
        None => None,
    };
    let group_of = |gens: &[Vec<u32>]| -> Result<PermutationGroup, ClassifyError> {
        let perms = gens.iter().map(|g| Permutation::from_one_based(g)).collect::<Result<Vec<_>, _>>();
        Ok(PermutationGroup::new(perms.map_err(|e| ClassifyError::Group(e.into()))?)?)
    };
    let to_perm = |g: &[u32]| Permutation::from_one_based(g).map_err(|e| ClassifyError::Group(e.into()));

    for c in &report.k_classes {
        let k = group_of(&c.generators)?;
        if !a.contains_group(&k) || k.order() != c.order || c.order != report.case.stabilizer_type.order() {
            problems.push(format!("class {}: representative is not a subgroup of the recorded order", c.index));
        }
        if let (Some(h), Some(flag)) = (&h, c.meets_simple_trivially) {
            if meets_trivially(&k, h) != flag {
                problems.push(format!("class {}: intersection flag is wrong", c.index));
            }
        }
    }

    for f in &report.feasible {
        let k = group_of(&f.stabilizer)?;
        let kelems = k.elements(1 << 12)?;
        let korder = k.order();
        let mut elements = Vec::new();
        for (i, g) in f.elements.iter().enumerate() {
            let g = to_perm(g)?;
            let meet = kelems.iter().filter(|x| k.contains(&x.conjugate_by(&g))).count() as u128;
            let mut gens = k.generators().to_vec();
            gens.push(g.clone());
            let ok = a.contains(&g)
                && !g.is_identity()
                && g.order().is_power_of_two()
                && k.contains(&g.compose(&g))
                && meet * 4 == korder
                && PermutationGroup::new(gens)?.order_big() == a.order_big();
            if !ok {
                problems.push(format!("class {}: element {i} fails the feasibility conditions", f.class_index));
            }
            elements.push(g);
        }
        let mut covered = vec![false; elements.len()];
        for orbit in &f.orbits {
            let set: BTreeSet<&Permutation> = orbit.iter().map(|&i| &elements[i]).collect();
            for &i in orbit {
                covered[i] = true;
                for s in k.generators() {
                    if !set.contains(&elements[i].conjugate_by(s)) {
                        problems.push(format!("class {}: orbit is not closed under conjugation", f.class_index));
                    }
                }
            }
        }
        if covered.iter().any(|c| !c) {
            problems.push(format!("class {}: orbits do not cover Δ", f.class_index));
        }
    }

    for cert in &report.graphs_built {
        if let (Some(c), Some(h)) = (&cert.cayley, &h) {
            let s: Vec<Permutation> = c.connection_set.iter().map(|x| to_perm(x)).collect::<Result<_, _>>()?;
            let in_h = s.iter().all(|x| h.contains(x) && !x.is_identity());
            if !in_h || !inverse_closed(&s) || PermutationGroup::new(s)?.order() != c.generated_order {
                problems.push(format!("{}: connection set check failed", cert.label));
            }
        }
        if let Some(f) = report.feasible.first() {
            let k = group_of(&f.stabilizer)?;
            if a.order() / k.order() != cert.vertex_count as u128 {
                problems.push(format!("{}: vertex count is not the index of the stabilizer", cert.label));
            }
        }
    }

    if let Some(ob) = &report.obstruction {
        for (i, c) in ob.classes.iter().enumerate() {
            let k = group_of(&c.generators)?;
            let burnside = crate::arctrans::burnside_orbit_count(&k, 1 << 12).map_err(|e| ClassifyError::Internal(e.to_string()))?;
            if k.orbits().len() != c.orbit_count || burnside != c.burnside_count || !a.contains_group(&k) {
                problems.push(format!("obstruction class {i}: orbit data does not match"));
            }
        }
    }
    Ok(problems)
}
