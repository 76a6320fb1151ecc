//! Fibrations over a finite category, quasifibered diagrams over its
//! simplex category, limits and homotopy limits.

mod fibered;
mod holim;
mod json;
mod lim;
mod quasi;
mod simplex;

pub use fibered::{cartesian_witness, is_cartesian, is_fibered, CatDiagram, FiberedFailure, FiberedReport, Fibration};
pub use simplex::{simplex_category, SimplexCategory, SimplexMorphism, SimplexOverB};
pub use quasi::{cartesian_liftings, qf_from_fibered, FiberedQf, ForgetfulReport, Liftings, QfReport, QuasifiberedDiagram};
pub use lim::{compare_lim, lim_cartesian_sections, lim_diagram, LimComparison, Limit, Sections};
pub use holim::{
    holim_sset, holim_sset_bounded, lim_sset, lim_to_holim, string_height, strings, BString, CosimplicialReplacement, Holim, SDiagram,
    DEFAULT_MAX_ELEMENTS,
};
pub use json::{
    cat_diagram_from_json_at, cat_diagram_to_json, sdiagram_from_json_at, sdiagram_to_json,
};
