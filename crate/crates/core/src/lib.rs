//! Cobordism invariants of boundary links from Seifert forms, and the
//! covering construction to free-group-ring presentations.

pub mod arith;
pub mod covering;
pub mod devissage;
pub mod endo;
pub mod error;
pub mod fixtures;
pub mod io;
pub mod primitives;
pub mod seifert;
pub mod witt;

pub use arith::{QMatrix, QPoly, Rat};
pub use error::{ArithError, SeifertError};
pub use seifert::{SeifertForm, SeifertModule};
