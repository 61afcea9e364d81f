//! Invariants of hermitian forms over number fields with involution.

pub mod hilbert;
pub mod invariants;
