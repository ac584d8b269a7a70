//! Dense complex linear algebra: matrices, eigensolvers, norms, solves.

mod eigen;
mod matrix;
mod solve;

pub use eigen::{eig_hermitian, eig_normal, normal_matrix_function, operator_norm, singular_values, Eigen, HermitianEigen};
pub use matrix::{CMatrix, RMatrix};
pub use solve::{inverse, solve};
