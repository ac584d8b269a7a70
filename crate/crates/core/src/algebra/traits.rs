use num_complex::Complex64 as C64;

use super::element::Element;
use crate::error::{Error, Result};

/// A finite-dimensional JB*-algebra given in coordinates.
///
/// Implementors supply the Jordan product, the involution, the unit and the
/// norm; everything else (triple product, U-operators, powers) is derived.
pub trait JordanStar {
    fn dim(&self) -> usize;

    /// Commutative Jordan product `a∘b`.
    fn jordan(&self, a: &Element, b: &Element) -> Element;

    /// Conjugate-linear involution.
    fn star(&self, a: &Element) -> Element;

    /// Unit element.
    fn one(&self) -> Element;

    /// JB*-norm.
    fn norm(&self, a: &Element) -> f64;

    fn zero(&self) -> Element {
        Element::zeros(self.dim())
    }

    /// Returns `ModelMismatch` unless `a` has this model's dimension.
    fn check(&self, a: &Element) -> Result<()> {
        if a.dim() == self.dim() {
            Ok(())
        } else {
            Err(Error::ModelMismatch { expected: self.dim(), found: a.dim() })
        }
    }

    fn try_jordan(&self, a: &Element, b: &Element) -> Result<Element> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.jordan(a, b))
    }

    fn try_star(&self, a: &Element) -> Result<Element> {
        self.check(a)?;
        Ok(self.star(a))
    }

    fn try_norm(&self, a: &Element) -> Result<f64> {
        self.check(a)?;
        Ok(self.norm(a))
    }

    fn square(&self, a: &Element) -> Element {
        self.jordan(a, a)
    }

    /// `a^n`, with `a^0 = 1`.
    fn power(&self, a: &Element, n: u32) -> Element {
        let mut acc = self.one();
        for _ in 0..n {
            acc = self.jordan(&acc, a);
        }
        acc
    }

    /// `{x, y, z} = (x∘y*)∘z + (z∘y*)∘x − (x∘z)∘y*`.
    fn triple(&self, x: &Element, y: &Element, z: &Element) -> Element {
        let ys = self.star(y);
        let mut out = self.jordan(&self.jordan(x, &ys), z);
        out += &self.jordan(&self.jordan(z, &ys), x);
        out -= &self.jordan(&self.jordan(x, z), &ys);
        out
    }

    fn try_triple(&self, x: &Element, y: &Element, z: &Element) -> Result<Element> {
        self.check(x)?;
        self.check(y)?;
        self.check(z)?;
        Ok(self.triple(x, y, z))
    }

    /// `U_{a,b}(x) = (a∘x)∘b + (b∘x)∘a − (a∘b)∘x`.
    fn u_ab(&self, a: &Element, b: &Element, x: &Element) -> Element {
        let mut out = self.jordan(&self.jordan(a, x), b);
        out += &self.jordan(&self.jordan(b, x), a);
        out -= &self.jordan(&self.jordan(a, b), x);
        out
    }

    /// `U_a(x) = 2(a∘x)∘a − a²∘x`.
    fn u(&self, a: &Element, x: &Element) -> Element {
        let ax = self.jordan(a, x);
        let mut out = self.jordan(&ax, a).scale_re(2.0);
        out -= &self.jordan(&self.square(a), x);
        out
    }

    fn try_u(&self, a: &Element, x: &Element) -> Result<Element> {
        self.check(a)?;
        self.check(x)?;
        Ok(self.u(a, x))
    }

    fn distance(&self, a: &Element, b: &Element) -> f64 {
        self.norm(&(a - b))
    }

    /// `(a + a*)/2`.
    fn real_part(&self, a: &Element) -> Element {
        (a + &self.star(a)).scale_re(0.5)
    }

    /// `(a − a*)/(2i)`.
    fn imag_part(&self, a: &Element) -> Element {
        (a - &self.star(a)).scale(C64::new(0.0, -0.5))
    }
}
