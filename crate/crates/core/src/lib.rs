pub mod algebra;
pub mod complex;
pub mod diagram;
pub mod homology;
pub mod invariants;
