//! Free-group covering: group-ring presentations, Magnus series and the
//! passage between F-link presentations and Seifert modules.

pub mod oracle;
pub mod pairing;
pub mod presentation;
pub mod series;
pub mod word;

pub use presentation::{cover_presentation, linearize_presentation, seifert_from_flk, FlkPresentation, Move};
pub use series::{NCRationalSeries, TruncSeries, XWord};
pub use word::{FreeWord, GroupRingElem};
