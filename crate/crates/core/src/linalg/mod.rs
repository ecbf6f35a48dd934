//! Exact integer and rational linear algebra. Nothing here touches floating
//! point.

mod feasibility;
mod inertia;
mod lattice;
mod matrix;
mod rref;
mod smith;

use thiserror::Error;

pub use feasibility::{
    linear_feasibility, Constraint, Feasibility, LinearSystem, DEFAULT_VARIABLE_CAP,
};
pub use inertia::{inertia, Inertia};
pub use lattice::{integer_kernel, lattice_quotient, solve_integral, LatticeQuotient};
pub use matrix::{
    dot, int_matrix, int_to_rat, ints_to_rats, rat_matrix, rats_to_ints, IntMatrix, Matrix,
    RatMatrix,
};
pub use rref::{kernel_basis, rank, rref, solve_rational, span_dim, Echelon};
pub use smith::{smith_normal_form, SmithForm};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("generator {0} of the sublattice is not in the ambient lattice")]
    NotContained(usize),
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),
}
