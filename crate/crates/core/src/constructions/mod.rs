//! The degreewise categories of cospans and of the S-construction, and the
//! functors and homotopies comparing them.

mod comparison;
mod degreewise;
mod diagram;
mod relative;
mod replacement;
mod segal;
mod shape;

pub use degreewise::{ClosureReport, DegreewiseCategoryObject, DEFAULT_DIAGRAM_LIMIT};
pub use diagram::{
    enumerate_diagrams, enumerate_extensions, validate, Components, Constraint, Diagram, DiagramCategory,
    Restriction, Seed,
};
pub use shape::{arrow_in_tilde, label_map, tilde_in_arrow, twisted_in_tilde, ConstructionKind};
pub use comparison::{
    alpha, alpha_sd_tau_image, check_four_block_homotopy, check_layer_homotopy, delta, four_block_homotopy,
    four_block_map, last_vertex_image, layer, layer_homotopy, layer_homotopy_closed_form, layer_inclusion,
    layer_projection, restrict_big_to_cob, tau, FourBlockReport, HomotopyReport,
};
pub use relative::{check_induced_lands, induced_layer_diagram, InducedReport};
pub use replacement::{
    check_cospan_replacement, check_symmetric_cofibrations, replace_cospan, CospanReplacement, ReplacementReport,
    SymmetricCofibrationReport,
};
pub use segal::{check_segal, filtered_category, s_to_filtered, SegalReport, SpineCategory, SpineFunctor};
