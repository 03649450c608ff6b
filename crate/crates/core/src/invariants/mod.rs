//! Homology, fundamental groups and Euler characteristics of truncated
//! (bi)simplicial sets, and the nerves of degreewise constructions.

mod chain;
mod field;
mod models;
mod pi;
mod snf;
mod total;
mod wnerve;

pub use chain::{
    euler_characteristic, homology, mapping_cone, mapping_cone_acyclic, normalized_chains, ChainComplex, ConeReport,
    HomologyGroup, HomologyResult,
};
pub use field::{induced_on_homology, InducedHomology};
pub use models::{check_tau_alpha, tau_diagonal, TauAlphaReport};
pub use pi::{describe_group, pi0, pi1_presentation, Components, GroupPresentation, Letter};
pub use snf::{smith_normal_form, SmithForm, SparseMatrix};
pub use total::{compare_stability, diagonal, total_complex, total_homology, StabilityReport};
pub use wnerve::{diagonal_map, nerve_bisimplicial, nerve_bisimplicial_map, NerveBisimplicial, WeqLevel};
