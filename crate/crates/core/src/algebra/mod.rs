//! Concrete JB*-algebra models and their elements.

pub mod albert;
mod clifford;
mod element;
mod model;
mod octonion;
mod traits;

pub use albert::{albert_cubic_invariants, AlbertMatrix, CubicInvariants};
pub use clifford::clifford_generators;
pub use element::Element;
pub use model::{
    build_albert_model, build_direct_sum, build_matrix_model, build_spin_model, AlgebraModel, ModelSpec, NormStrategy,
    Summand,
};
pub use octonion::{Octonion, OCTONION_TABLE};
pub use traits::JordanStar;
