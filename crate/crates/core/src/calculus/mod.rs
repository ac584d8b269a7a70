//! U-operators, Peirce projections, predicates, exponentials and the
//! spectral calculus of normal elements.

mod center;
mod derivation;
mod exp;
mod operator;
mod ops;
mod spectral;

pub use center::{center_basis, compute_central_projections, minimal_central_projections};
pub use derivation::{leibniz_defect, triple_derivation_check, DerivationCheck};
pub use exp::exp_element;
pub use operator::{LinearOperator, Linearity};
pub use ops::{
    centrality_residual, commutator_residual, ensure_unitary, inverse, invertibility_ratio, is_central, is_invertible,
    is_tripotent, is_unitary, l_op, mult_op, operator_commute, peirce_projections, projection_residual, q_op,
    times_i, tripotent_residual, u_op, u_op_ab, unitary_residual, PeirceProjections,
};
pub use spectral::{
    functional_calculus, log_unitary, spectral_decompose, sqrt_unitary, SpectralData, CLUSTER_TOL, CONFLUENT_GAP,
};
