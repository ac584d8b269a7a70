//! Surjective isometries between unitary sets: structured constructions,
//! the preservation and doubling checks, and reconstruction of `(ω, p, Φ)`
//! from a black-box isometry.

mod checks;
mod decomposition;
mod equivalence;
mod jstar;
mod reconstruct;
mod structured;

pub use checks::{
    chain_hypothesis_residual, chain_subdivide, check_condition_b, doubling_check, minimal_chain_depth,
    sample_condition_b_candidates, scalar_condition_b_enumeration, verify_inverted_triple_preservation, Chain,
    ConditionBReport, DoublingReport, CONDITION_B_SLACK, MEMBERSHIP_WINDOW, NONTRIVIAL_GAP,
};
pub use decomposition::{triple_decomposition, TripleDecomposition, TripleResiduals};
pub use equivalence::{equivalence_witness, EquivalenceMode, EquivalenceWitness, WITNESS_TOLERANCE};
pub use jstar::{isomorphism_residuals, random_jordan_star_isomorphism, IsomorphismResiduals, JordanStarIsomorphism, Recipe};
pub use reconstruct::{reconstruct, ModelPair, ReconstructConfig, ReconstructionReport, MAX_HALVINGS, STAGE_TOLERANCES};
pub use structured::{apply_structured, random_structured_isometry, Oracle, StructuredIsometry};
