//! Gröbner bases for ideals and submodules of free modules.
//!
//! Ideals use degrevlex by default. Submodules use position-over-term with
//! degrevlex inside each position; syzygies and lifts are computed from a
//! Gröbner basis of an augmented module whose extra positions record how
//! each element was combined from the inputs.

mod dimension;
pub(crate) mod engine;
mod ideal;
mod module;

pub use dimension::Length;
pub use ideal::{groebner, normal_form, GroebnerBasis, Ideal};
pub use module::{
    syzygies, Base, FreeModuleElement, Lifter, ModuleGb, ModulePresentation, Submodule,
};
