//! Seifert modules, morphisms, duality and Seifert forms.

mod form;
mod module;

pub use form::{induced_form_on_subquotient, SeifertForm, Subquotient};
pub use module::{
    find_isomorphism, hom_space, is_morphism, IsoSearch, Quotient, Ring, SeifertModule, SeifertMorphism,
    Submodule, Violation,
};
