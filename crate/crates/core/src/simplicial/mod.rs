//! Ordinal maps, truncated simplicial sets, edgewise subdivision and the
//! last-vertex map.

mod bisimplicial;
mod identities;
mod ordinal;
mod sset;
mod subdivision;

pub use bisimplicial::BisimplicialSetTruncated;
pub use identities::{check_simplicial_identities, IdentityReport, IdentityViolation};
pub use ordinal::OrdinalMap;
pub use sset::{
    simplex_boundary, simplex_map, standard_simplex, SimplicialMap, TruncatedSimplicialSet,
};
pub use subdivision::{
    edgewise_subdivision, edgewise_subdivision_to, last_vertex_map, subdivide_map,
    subdivision_depth,
};
