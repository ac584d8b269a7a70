use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::algebra::Element;
use crate::error::{Error, Result};
use crate::linalg::{CMatrix, RMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Linearity {
    ComplexLinear,
    ConjugateLinear,
    RealLinear,
}

#[derive(Clone, Debug, PartialEq)]
enum Repr {
    Complex(CMatrix),
    /// Acts on interleaved `[re0, im0, re1, im1, ...]` coordinates.
    Real(RMatrix),
}

/// A map between coordinate spaces together with its linearity type.
///
/// Complex-linear maps are stored as complex matrices; conjugate-linear and
/// real-linear maps as real matrices of doubled size.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(into = "OperatorProxy", try_from = "OperatorProxy")]
pub struct LinearOperator {
    linearity: Linearity,
    dim_in: usize,
    dim_out: usize,
    repr: Repr,
}

/// Wire form: `{"linearity", "matrix": {"field", "rows", "cols", "entries"}}`
/// with row-major entries.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub(crate) struct OperatorProxy {
    linearity: Linearity,
    matrix: MatrixProxy,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "field", rename_all = "lowercase")]
enum MatrixProxy {
    Complex { rows: usize, cols: usize, entries: Vec<C64> },
    Real { rows: usize, cols: usize, entries: Vec<f64> },
}

impl From<LinearOperator> for OperatorProxy {
    fn from(op: LinearOperator) -> Self {
        let matrix = match op.repr {
            Repr::Complex(m) => MatrixProxy::Complex { rows: m.rows(), cols: m.cols(), entries: m.into_data() },
            Repr::Real(m) => MatrixProxy::Real { rows: m.rows(), cols: m.cols(), entries: m.data().to_vec() },
        };
        OperatorProxy { linearity: op.linearity, matrix }
    }
}

impl TryFrom<OperatorProxy> for LinearOperator {
    type Error = Error;

    fn try_from(p: OperatorProxy) -> Result<Self> {
        match p.matrix {
            MatrixProxy::Complex { rows, cols, entries } => {
                if p.linearity != Linearity::ComplexLinear {
                    return Err(Error::Parse("complex matrices encode complex-linear maps only".into()));
                }
                Ok(Self::from_complex_matrix(CMatrix::from_vec(rows, cols, entries)?))
            }
            MatrixProxy::Real { rows, cols, entries } => {
                let m = RMatrix::from_vec(rows, cols, entries)?;
                if rows % 2 != 0 || cols % 2 != 0 {
                    return Err(Error::Parse("real operator matrix must have even shape".into()));
                }
                Ok(LinearOperator { linearity: p.linearity, dim_in: cols / 2, dim_out: rows / 2, repr: Repr::Real(m) })
            }
        }
    }
}

impl LinearOperator {
    pub fn from_complex_matrix(m: CMatrix) -> Self {
        LinearOperator { linearity: Linearity::ComplexLinear, dim_in: m.cols(), dim_out: m.rows(), repr: Repr::Complex(m) }
    }

    /// Wraps a real matrix of shape `2·dim_out × 2·dim_in`.
    pub fn from_real_matrix(m: RMatrix, linearity: Linearity) -> Result<Self> {
        if !m.rows().is_multiple_of(2) || !m.cols().is_multiple_of(2) {
            return Err(Error::InvalidParameter("real operator matrix must have even shape".into()));
        }
        let op = LinearOperator { linearity: Linearity::RealLinear, dim_in: m.cols() / 2, dim_out: m.rows() / 2, repr: Repr::Real(m) };
        Ok(op.with_linearity(linearity))
    }

    /// Complex-linear operator from its action on basis vectors.
    pub fn complex_from_fn(dim_in: usize, dim_out: usize, f: impl Fn(&Element) -> Element) -> Self {
        let cols: Vec<Vec<C64>> = (0..dim_in).map(|k| f(&Element::basis(dim_in, k)).into_coords()).collect();
        Self::from_complex_matrix(CMatrix::from_columns(dim_out, &cols))
    }

    /// Real-linear operator from its action on `e_k` and `i·e_k`.
    pub fn real_from_fn(dim_in: usize, dim_out: usize, linearity: Linearity, f: impl Fn(&Element) -> Element) -> Self {
        let mut m = RMatrix::zeros(2 * dim_out, 2 * dim_in);
        for k in 0..dim_in {
            let e = Element::basis(dim_in, k);
            let re = f(&e).to_real_vec();
            let im = f(&e.scale(C64::new(0.0, 1.0))).to_real_vec();
            for r in 0..2 * dim_out {
                m[(r, 2 * k)] = re[r];
                m[(r, 2 * k + 1)] = im[r];
            }
        }
        LinearOperator { linearity: Linearity::RealLinear, dim_in, dim_out, repr: Repr::Real(m) }.with_linearity(linearity)
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_complex_matrix(CMatrix::identity(dim))
    }

    pub fn zero(dim_in: usize, dim_out: usize) -> Self {
        Self::from_complex_matrix(CMatrix::zeros(dim_out, dim_in))
    }

    /// Coordinatewise complex conjugation.
    pub fn conjugation(dim: usize) -> Self {
        let mut m = RMatrix::identity(2 * dim);
        for k in 0..dim {
            m[(2 * k + 1, 2 * k + 1)] = -1.0;
        }
        LinearOperator { linearity: Linearity::ConjugateLinear, dim_in: dim, dim_out: dim, repr: Repr::Real(m) }
    }

    /// Re-labels the linearity, converting to a complex matrix when the label
    /// is complex-linear.
    fn with_linearity(self, linearity: Linearity) -> Self {
        match (linearity, &self.repr) {
            (Linearity::ComplexLinear, Repr::Real(r)) => {
                let m = CMatrix::from_fn(self.dim_out, self.dim_in, |i, j| C64::new(r[(2 * i, 2 * j)], r[(2 * i + 1, 2 * j)]));
                Self::from_complex_matrix(m)
            }
            _ => LinearOperator { linearity, ..self },
        }
    }

    pub fn linearity(&self) -> Linearity {
        self.linearity
    }

    pub fn dim_in(&self) -> usize {
        self.dim_in
    }

    pub fn dim_out(&self) -> usize {
        self.dim_out
    }

    pub fn complex_matrix(&self) -> Option<&CMatrix> {
        match &self.repr {
            Repr::Complex(m) => Some(m),
            Repr::Real(_) => None,
        }
    }

    pub fn apply(&self, x: &Element) -> Element {
        assert_eq!(x.dim(), self.dim_in, "operator applied to element of wrong dimension");
        match &self.repr {
            Repr::Complex(m) => Element::new(m.mul_vec(x.coords())),
            Repr::Real(m) => Element::from_real_vec(&m.mul_vec(&x.to_real_vec())),
        }
    }

    pub fn try_apply(&self, x: &Element) -> Result<Element> {
        if x.dim() != self.dim_in {
            return Err(Error::ModelMismatch { expected: self.dim_in, found: x.dim() });
        }
        Ok(self.apply(x))
    }

    /// Real matrix acting on interleaved coordinates.
    pub fn to_real(&self) -> RMatrix {
        match &self.repr {
            Repr::Real(m) => m.clone(),
            Repr::Complex(c) => {
                let mut m = RMatrix::zeros(2 * c.rows(), 2 * c.cols());
                for i in 0..c.rows() {
                    for j in 0..c.cols() {
                        let z = c[(i, j)];
                        m[(2 * i, 2 * j)] = z.re;
                        m[(2 * i, 2 * j + 1)] = -z.im;
                        m[(2 * i + 1, 2 * j)] = z.im;
                        m[(2 * i + 1, 2 * j + 1)] = z.re;
                    }
                }
                m
            }
        }
    }

    /// `self ∘ rhs`.
    pub fn compose(&self, rhs: &LinearOperator) -> LinearOperator {
        assert_eq!(self.dim_in, rhs.dim_out, "compose shape mismatch");
        use Linearity::*;
        if let (Repr::Complex(a), Repr::Complex(b)) = (&self.repr, &rhs.repr) {
            return Self::from_complex_matrix(a.matmul(b));
        }
        let lin = match (self.linearity, rhs.linearity) {
            (ComplexLinear, ComplexLinear) | (ConjugateLinear, ConjugateLinear) => ComplexLinear,
            (ComplexLinear, ConjugateLinear) | (ConjugateLinear, ComplexLinear) => ConjugateLinear,
            _ => RealLinear,
        };
        let m = self.to_real().matmul(&rhs.to_real());
        LinearOperator { linearity: RealLinear, dim_in: rhs.dim_in, dim_out: self.dim_out, repr: Repr::Real(m) }.with_linearity(lin)
    }

    fn combine(&self, rhs: &LinearOperator, sign: f64) -> LinearOperator {
        assert_eq!((self.dim_in, self.dim_out), (rhs.dim_in, rhs.dim_out), "operator shape mismatch");
        if let (Repr::Complex(a), Repr::Complex(b)) = (&self.repr, &rhs.repr) {
            return Self::from_complex_matrix(a + &b.scale(C64::new(sign, 0.0)));
        }
        let lin = if self.linearity == rhs.linearity { self.linearity } else { Linearity::RealLinear };
        let b = rhs.to_real();
        let a = self.to_real();
        let m = if sign > 0.0 { a.add(&b) } else { a.sub(&b) };
        LinearOperator { linearity: Linearity::RealLinear, dim_in: self.dim_in, dim_out: self.dim_out, repr: Repr::Real(m) }
            .with_linearity(lin)
    }

    pub fn add(&self, rhs: &LinearOperator) -> LinearOperator {
        self.combine(rhs, 1.0)
    }

    pub fn sub(&self, rhs: &LinearOperator) -> LinearOperator {
        self.combine(rhs, -1.0)
    }

    /// Multiplies by a real scalar.
    pub fn scale_re(&self, s: f64) -> LinearOperator {
        match &self.repr {
            Repr::Complex(m) => Self::from_complex_matrix(m.scale(C64::new(s, 0.0))),
            Repr::Real(m) => {
                let data = m.data().iter().map(|x| x * s).collect();
                let m = RMatrix::from_vec(m.rows(), m.cols(), data).expect("same shape");
                LinearOperator { repr: Repr::Real(m), ..self.clone() }
            }
        }
    }

    /// Frobenius norm of the real form, divided by `√2` so that complex
    /// matrices report their usual Frobenius norm.
    pub fn frobenius_norm(&self) -> f64 {
        match &self.repr {
            Repr::Complex(m) => m.frobenius_norm(),
            Repr::Real(m) => m.frobenius_norm() / std::f64::consts::SQRT_2,
        }
    }

    pub fn distance(&self, rhs: &LinearOperator) -> f64 {
        self.sub(rhs).frobenius_norm()
    }

    /// `(‖T∘J − J∘T‖, ‖T∘J + J∘T‖)` where `J` is multiplication by `i`;
    /// the first vanishes for complex-linear maps, the second for
    /// conjugate-linear ones.
    pub fn linearity_defects(&self) -> (f64, f64) {
        let t = self.to_real();
        let j_in = multiplication_by_i(self.dim_in);
        let j_out = multiplication_by_i(self.dim_out);
        let tj = t.matmul(&j_in);
        let jt = j_out.matmul(&t);
        let s = std::f64::consts::SQRT_2;
        (tj.sub(&jt).frobenius_norm() / s, tj.add(&jt).frobenius_norm() / s)
    }

    /// Relabels a real-linear operator as `linearity` when its defect for
    /// that type is within `tol·max(1, ‖T‖)`; otherwise returns it unchanged.
    pub fn relabel_if(self, linearity: Linearity, tol: f64) -> LinearOperator {
        if self.linearity != Linearity::RealLinear {
            return self;
        }
        let (c, a) = self.linearity_defects();
        let defect = match linearity {
            Linearity::ComplexLinear => c,
            Linearity::ConjugateLinear => a,
            Linearity::RealLinear => 0.0,
        };
        if defect <= tol * self.frobenius_norm().max(1.0) {
            self.with_linearity(linearity)
        } else {
            self
        }
    }

    /// Whether the stored matrix behaves as the flag claims.
    pub fn linearity_consistent(&self, tol: f64) -> bool {
        let (c, a) = self.linearity_defects();
        let scale = self.frobenius_norm().max(1.0);
        match self.linearity {
            Linearity::ComplexLinear => c <= tol * scale,
            Linearity::ConjugateLinear => a <= tol * scale,
            Linearity::RealLinear => true,
        }
    }

    /// Inverse of a square operator.
    pub fn inverse(&self) -> Result<LinearOperator> {
        if self.dim_in != self.dim_out {
            return Err(Error::InvalidParameter("inverse of a non-square operator".into()));
        }
        match &self.repr {
            Repr::Complex(m) => Ok(Self::from_complex_matrix(crate::linalg::inverse(m)?)),
            Repr::Real(_) => {
                let r = self.to_real();
                let c = CMatrix::from_fn(r.rows(), r.cols(), |i, j| C64::new(r[(i, j)], 0.0));
                let inv = crate::linalg::inverse(&c)?;
                let data = inv.data().iter().map(|z| z.re).collect();
                let m = RMatrix::from_vec(r.rows(), r.cols(), data)?;
                Ok(LinearOperator { repr: Repr::Real(m), ..self.clone() })
            }
        }
    }
}

fn multiplication_by_i(dim: usize) -> RMatrix {
    let mut j = RMatrix::zeros(2 * dim, 2 * dim);
    for k in 0..dim {
        j[(2 * k + 1, 2 * k)] = 1.0;
        j[(2 * k, 2 * k + 1)] = -1.0;
    }
    j
}
