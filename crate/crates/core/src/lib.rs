//! Computational census of tetravalent 2-arc-transitive Cayley graphs on
//! finite simple groups, via coset graphs of overgroups.

pub mod arctrans;
pub mod autiso;
pub mod classify;
pub mod cli;
pub mod graphs;
pub mod groupdata;
pub mod permgroup;
