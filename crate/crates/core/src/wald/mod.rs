//! Unpointed Waldhausen structures on skeletal finite sets, the pushout
//! oracle, the axiom checker and relative isomorphisms.

mod axioms;
mod instance;
mod relative;

pub use axioms::{
    check_axioms, AxiomReport, ClauseResult, GluingResult, DEFAULT_GLUING_BUDGET, GLUING_FORMULATION,
};
pub use instance::{Cocone, InstanceDescriptor, InstanceKind, WaldhausenInstance};
pub use relative::{
    constant_functor, inclusion_functor, shift_functor, shift_transformation, to_point_transformation,
    verify_relative_iso, RelativeIsoWitness,
};
