//! Finite categories, shape posets, functors, nerves and equivalences.

mod category;
mod equivalence;
mod functor;
mod nerve;
mod poset;
mod twisted;

pub use category::{cyclic_two, group_category, Category, FiniteCategory, MorId, ObjId};
pub use equivalence::{is_equivalence, isomorphic, EquivalenceReport, HomFailure};
pub use functor::{
    enumerate_functors, enumerate_natural_transformations, EnumerationLimit, Functor,
    NaturalTransformation,
};
pub use nerve::{check_subdivision_bridge, nerve, nerve_map, subdivision_to_twisted, BridgeReport, Nerve};
pub use poset::{
    arrow_poset, ordinal_poset, poset_category, tilde_arrow_poset, twisted_poset, Poset,
};
pub use twisted::{twisted_arrow_category, TwistedArrowCategory, TwistedMorphism};
