//! The classification pipeline.

mod feasible;
mod obstruction;
mod pipeline;
mod sigma;
mod structure;
mod subgroups;

use thiserror::Error;

use crate::arctrans::ArcError;
use crate::autiso::AutError;
use crate::graphs::GraphError;
use crate::groupdata::DataError;
use crate::permgroup::GroupError;

pub use feasible::{delta_orbits, feasible_elements, local_subgroups, FeasibleSearch, FilterStats};
pub use obstruction::{regular_complement_obstruction, A4Orbits, ObstructionReport};
pub use pipeline::{
    build_delta_graph, case_by_id, cases, recheck, run_all, run_case, AutRecord, CaseSpec, CayleyRecord, Claim, ClassRecord,
    ClassSearchRecord, ClassificationReport, Comparison, CrossCheck, FeasibleRecord, GraphCertificate, Mode,
    OrbitIsomorphism, SearchReport, SignatureRecord, Summary, Verdict, SCHEMA_VERSION,
};
pub use sigma::{sigma_isomorphism, SigmaMap, SigmaReport};
pub use structure::{
    connection_set_in_group, extract_connection_set, inverse_closed, is_regular, normality_check, regular_image,
    NormalityCheck, NormalityWitness,
};
pub use subgroups::{
    complement_classes, find_subgroup_classes, meets_trivially, ClassSearch, SubgroupClass, SubgroupType,
};

#[derive(Debug, Error)]
pub enum ClassifyError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Data(#[from] DataError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Aut(#[from] AutError),
    #[error(transparent)]
    Arc(#[from] ArcError),
    #[error("{0} is not a subgroup of the ambient group")]
    NotASubgroup(String),
    #[error("stabilizer must have order 12 or 24, got {0}")]
    BadStabilizerOrder(u128),
    #[error("class search certificate failed: {accounted} of {total} generating pairs accounted for")]
    CertificateFailed { total: u128, accounted: u128 },
    #[error("not regular: {0}")]
    NotRegular(String),
    #[error("unknown case `{0}`")]
    UnknownCase(String),
    #[error("case {case}: {source}")]
    Case { case: String, source: Box<ClassifyError> },
    #[error("internal: {0}")]
    Internal(String),
}
