use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

/// Coordinate vector of an algebra element.
///
/// Coordinates are taken in an orthonormal basis for the trace form of the
/// owning model. The element does not carry a reference to its model; model
/// operations check the dimension instead.
/// Serializes as a list of `[re, im]` pairs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Element {
    coords: Vec<C64>,
}

impl Element {
    pub fn new(coords: Vec<C64>) -> Self {
        Element { coords }
    }

    pub fn from_real(coords: &[f64]) -> Self {
        Element { coords: coords.iter().map(|&x| C64::new(x, 0.0)).collect() }
    }

    pub fn zeros(dim: usize) -> Self {
        Element { coords: vec![C64::new(0.0, 0.0); dim] }
    }

    pub fn basis(dim: usize, k: usize) -> Self {
        let mut e = Self::zeros(dim);
        e.coords[k] = C64::new(1.0, 0.0);
        e
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[C64] {
        &self.coords
    }

    pub fn coords_mut(&mut self) -> &mut [C64] {
        &mut self.coords
    }

    pub fn into_coords(self) -> Vec<C64> {
        self.coords
    }

    pub fn scale(&self, s: C64) -> Element {
        Element { coords: self.coords.iter().map(|z| z * s).collect() }
    }

    pub fn scale_re(&self, s: f64) -> Element {
        Element { coords: self.coords.iter().map(|z| z * s).collect() }
    }

    /// `self += alpha * x`.
    pub fn axpy(&mut self, alpha: C64, x: &Element) {
        assert_eq!(self.dim(), x.dim(), "axpy dimension mismatch");
        for (a, b) in self.coords.iter_mut().zip(&x.coords) {
            *a += alpha * b;
        }
    }

    /// Euclidean norm of the coordinate vector (the trace-form 2-norm).
    pub fn coord_norm(&self) -> f64 {
        self.coords.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `Σ conj(self_i) other_i`.
    pub fn dot(&self, other: &Element) -> C64 {
        assert_eq!(self.dim(), other.dim(), "dot dimension mismatch");
        self.coords.iter().zip(&other.coords).map(|(a, b)| a.conj() * b).sum()
    }

    pub fn is_finite(&self) -> bool {
        self.coords.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// Interleaved real coordinates `[re0, im0, re1, im1, ...]`.
    pub fn to_real_vec(&self) -> Vec<f64> {
        self.coords.iter().flat_map(|z| [z.re, z.im]).collect()
    }

    pub fn from_real_vec(v: &[f64]) -> Element {
        assert!(v.len().is_multiple_of(2), "odd length real vector");
        Element { coords: v.chunks(2).map(|c| C64::new(c[0], c[1])).collect() }
    }
}

impl Add for &Element {
    type Output = Element;
    fn add(self, rhs: &Element) -> Element {
        assert_eq!(self.dim(), rhs.dim(), "add dimension mismatch");
        Element { coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        assert_eq!(self.dim(), rhs.dim(), "sub dimension mismatch");
        Element { coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a - b).collect() }
    }
}

impl Add for Element {
    type Output = Element;
    fn add(self, rhs: Element) -> Element {
        &self + &rhs
    }
}

impl Sub for Element {
    type Output = Element;
    fn sub(self, rhs: Element) -> Element {
        &self - &rhs
    }
}

impl AddAssign<&Element> for Element {
    fn add_assign(&mut self, rhs: &Element) {
        self.axpy(C64::new(1.0, 0.0), rhs);
    }
}

impl SubAssign<&Element> for Element {
    fn sub_assign(&mut self, rhs: &Element) {
        self.axpy(C64::new(-1.0, 0.0), rhs);
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        self.scale_re(-1.0)
    }
}

impl Neg for Element {
    type Output = Element;
    fn neg(self) -> Element {
        self.scale_re(-1.0)
    }
}

impl Mul<C64> for &Element {
    type Output = Element;
    fn mul(self, s: C64) -> Element {
        self.scale(s)
    }
}

impl Mul<f64> for &Element {
    type Output = Element;
    fn mul(self, s: f64) -> Element {
        self.scale_re(s)
    }
}

impl Mul<C64> for Element {
    type Output = Element;
    fn mul(self, s: C64) -> Element {
        self.scale(s)
    }
}

impl Mul<f64> for Element {
    type Output = Element;
    fn mul(self, s: f64) -> Element {
        self.scale_re(s)
    }
}
