//! Independent oracles and consistency checks.

pub mod catalog;
mod checks;
mod goeritz;

use thiserror::Error;

pub use checks::{
    check_base_points, check_black_white, check_d_squared, check_euler, check_mirror,
    check_reidemeister_pair, check_thin, check_tree_count, complex_of, homology_of,
    skein_consistency, verify_diagram, CheckOutcome, Status,
};
pub use goeritz::{determinant_goeritz, integer_determinant, spanning_tree_count};

use crate::complex::ComplexError;
use crate::diagram::DiagramError;
use crate::homology::HomologyError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantError {
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Homology(#[from] HomologyError),
}
