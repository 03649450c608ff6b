//! Fixtures shared by the benchmarks.

use wcob_core::constructions::{ConstructionKind, DegreewiseCategoryObject, DEFAULT_DIAGRAM_LIMIT};
use wcob_core::invariants::nerve_bisimplicial;
use wcob_core::simplicial::TruncatedSimplicialSet;
use wcob_core::wald::WaldhausenInstance;

pub fn build(kind: ConstructionKind, w: &WaldhausenInstance, depth: usize) -> DegreewiseCategoryObject<'_> {
    DegreewiseCategoryObject::build(kind, w, depth, DEFAULT_DIAGRAM_LIMIT).expect("fixture enumerates")
}

/// `diag N_• w X_•` through level `depth`.
pub fn diagonal(kind: ConstructionKind, w: &WaldhausenInstance, depth: usize) -> TruncatedSimplicialSet {
    let x = build(kind, w, depth);
    nerve_bisimplicial(&x, depth, depth)
        .and_then(|b| b.diagonal())
        .expect("fixture nerve")
}
