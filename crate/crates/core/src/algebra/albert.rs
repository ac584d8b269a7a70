//! The complexified Albert algebra `H_3(O) ⊗ C`.
//!
//! An element is a Hermitian octonion matrix
//!
//! ```text
//!   [ α1   x3   x̄2 ]
//!   [ x̄3   α2   x1 ]
//!   [ x2   x̄1   α3 ]
//! ```
//!
//! with complex `αi` and bioctonions `xk`, multiplied by `A∘B = ½(AB + BA)`.
//! Coordinates are `(α1, α2, α3, √2·x1, √2·x2, √2·x3)`, 27 in total, which is
//! orthonormal for the trace form `tr(A∘B*)`. The involution conjugates the
//! complex coefficients; on the matrix this is the octonion conjugate
//! transpose composed with complex conjugation, so Hermitian shape is kept.

use std::f64::consts::SQRT_2;

use num_complex::Complex64 as C64;

use super::element::Element;
use super::octonion::Octonion;
use super::traits::JordanStar;

pub const ALBERT_DIM: usize = 27;

/// Diagonal entries and the three off-diagonal octonions of an Albert element.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AlbertMatrix {
    pub alpha: [C64; 3],
    pub x: [Octonion; 3],
}

impl AlbertMatrix {
    pub fn from_coords(c: &[C64]) -> Self {
        assert_eq!(c.len(), ALBERT_DIM, "Albert element needs 27 coordinates");
        let oct = |k: usize| Octonion(std::array::from_fn(|j| c[3 + 8 * k + j] / SQRT_2));
        AlbertMatrix { alpha: [c[0], c[1], c[2]], x: [oct(0), oct(1), oct(2)] }
    }

    pub fn to_coords(&self) -> Vec<C64> {
        let mut out = Vec::with_capacity(ALBERT_DIM);
        out.extend_from_slice(&self.alpha);
        for x in &self.x {
            out.extend(x.0.iter().map(|z| z * SQRT_2));
        }
        out
    }

    /// Full 3×3 octonion matrix.
    pub fn to_full(&self) -> [[Octonion; 3]; 3] {
        let [x1, x2, x3] = self.x;
        let d = |i: usize| Octonion::scalar(self.alpha[i]);
        [[d(0), x3, x2.bar()], [x3.bar(), d(1), x1], [x2, x1.bar(), d(2)]]
    }

    /// Reads back the Hermitian-shaped part of a full matrix.
    pub fn from_full(m: &[[Octonion; 3]; 3]) -> Self {
        AlbertMatrix { alpha: [m[0][0].0[0], m[1][1].0[0], m[2][2].0[0]], x: [m[1][2], m[2][0], m[0][1]] }
    }

    /// `½(AB + BA)` on full octonion matrices.
    pub fn jordan(&self, other: &AlbertMatrix) -> AlbertMatrix {
        let a = self.to_full();
        let b = other.to_full();
        let mut c = [[Octonion::ZERO; 3]; 3];
        for (i, row) in c.iter_mut().enumerate() {
            for (j, cij) in row.iter_mut().enumerate() {
                let mut s = Octonion::ZERO;
                for l in 0..3 {
                    s = s + a[i][l] * b[l][j] + b[i][l] * a[l][j];
                }
                *cij = s.scale(C64::new(0.5, 0.0));
            }
        }
        AlbertMatrix::from_full(&c)
    }
}

/// Trace, quadratic trace and determinant of the generic minimum polynomial.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CubicInvariants {
    pub trace: C64,
    pub quadratic: C64,
    pub norm: C64,
}

/// Freudenthal invariants `(T, S, N)` of an Albert element.
///
/// `a³ − T a² + S a − N 1 = 0` holds for every element.
pub fn albert_cubic_invariants(a: &Element) -> CubicInvariants {
    let m = AlbertMatrix::from_coords(a.coords());
    let [a1, a2, a3] = m.alpha;
    let [x1, x2, x3] = m.x;
    let (n1, n2, n3) = (x1.quad_norm(), x2.quad_norm(), x3.quad_norm());
    let t123 = ((x1 * x2) * x3).trace();
    CubicInvariants {
        trace: a1 + a2 + a3,
        quadratic: a1 * a2 + a2 * a3 + a3 * a1 - n1 - n2 - n3,
        norm: a1 * a2 * a3 - a1 * n1 - a2 * n2 - a3 * n3 + t123,
    }
}

/// `a³ − T a² + S a − N 1`, which vanishes identically.
pub fn cayley_hamilton_defect<A: JordanStar + ?Sized>(alg: &A, a: &Element) -> Element {
    let inv = albert_cubic_invariants(a);
    let a2 = alg.square(a);
    let a3 = alg.jordan(&a2, a);
    let mut out = a3;
    out.axpy(-inv.trace, &a2);
    out.axpy(inv.quadratic, a);
    out.axpy(-inv.norm, &alg.one());
    out
}

/// Result of the odd-power norm iteration.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TripleNormEstimate {
    pub value: f64,
    pub iterations: usize,
    /// Estimated multiplicity of the top singular value.
    pub multiplicity: usize,
}

const TRIPLE_POWER_MAX_STEPS: usize = 12;

/// Norm from the odd triple powers `a^[3^k]`, `a^[3] = {a, a, a}`.
///
/// `‖a^[3^k]‖₂ ≈ √m · ‖a‖^(3^k)` where `m` is the multiplicity of the top
/// singular value; `m` is read off from consecutive ratios and divided out,
/// which removes the slow `log(m)/3^k` bias of the plain root.
pub fn triple_power_norm<A: JordanStar + ?Sized>(alg: &A, a: &Element) -> TripleNormEstimate {
    let r0 = a.coord_norm();
    if r0 == 0.0 || !r0.is_finite() {
        return TripleNormEstimate { value: if r0 == 0.0 { 0.0 } else { f64::NAN }, iterations: 0, multiplicity: 1 };
    }
    let mut x = a.scale_re(1.0 / r0);
    let mut log_r = r0.ln();
    let mut power = 1.0_f64;
    let mut prev: Option<f64> = None;
    let mut last = TripleNormEstimate { value: r0, iterations: 0, multiplicity: 1 };
    for k in 1..=TRIPLE_POWER_MAX_STEPS {
        let y = alg.triple(&x, &x, &x);
        let n = y.coord_norm();
        if n == 0.0 || !n.is_finite() {
            break;
        }
        // 1/n = r_{k-1}^3 / r_k → m
        let m = (1.0 / n).round().max(1.0);
        let est = ((log_r - 0.5 * m.ln()) / power).exp();
        last = TripleNormEstimate { value: est, iterations: k, multiplicity: m as usize };
        if let Some(p) = prev {
            if (est - p).abs() <= 1e-13 * est {
                break;
            }
        }
        prev = Some(est);
        log_r = 3.0 * log_r + n.ln();
        power *= 3.0;
        x = y.scale_re(1.0 / n);
    }
    last
}
