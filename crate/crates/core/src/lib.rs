//! Numerical engine for finite-dimensional JB*-algebras.
//!
//! The crate models the concrete algebras `M_n(C)`, spin factors, the
//! complexified Albert algebra and finite direct sums of these, and builds a
//! Jordan operator calculus on top of them: U-operators, Peirce projections,
//! spectral and functional calculus, isotopes, one-parameter unitary groups.
//!
//! The centerpiece is [`isometry::reconstruct`], which takes a surjective
//! isometry between unitary sets (as a black box) and recovers a unitary `ω`,
//! a central projection `p` and a Jordan *-isomorphism `Φ` with
//!
//! ```text
//! Δ(u) = U_{ω*}( p∘Φ(u) + (1-p)∘Φ(u)* )
//! ```
//!
//! together with the real-linear extension `Ψ` of `Δ`.
//!
//! ```
//! use jbstar::{AlgebraModel, JordanStar};
//!
//! let m = AlgebraModel::matrix(2).unwrap();
//! let one = m.one();
//! assert!((m.norm(&one) - 1.0).abs() < 1e-12);
//! ```

pub mod algebra;
pub mod calculus;
pub mod error;
pub mod harness;
pub mod io;
pub mod isometry;
pub mod isotope;
pub mod linalg;
pub mod random;
pub mod report;
pub mod stone;

pub use algebra::{AlgebraModel, Element, JordanStar, ModelSpec, Octonion};
pub use calculus::{LinearOperator, Linearity, SpectralData};
pub use error::{Error, Result};
pub use isotope::IsotopeModel;
pub use report::{Tolerances, Verdict};
pub use num_complex::Complex64 as C64;
