//! Complexified octonions (bioctonions).
//!
//! Basis `e0 = 1, e1, ..., e7`. The multiplication table below is the one
//! produced by Cayley–Dickson doubling of the quaternions `(e0, e1, e2, e3)`
//! with `e4` as the new unit, using `(a, b)(c, d) = (ac − d̄b, da + bc̄)`.
//! Entry `(i, j)` gives `e_i e_j`:
//!
//! ```text
//!        e0   e1   e2   e3   e4   e5   e6   e7
//!   e0  +e0  +e1  +e2  +e3  +e4  +e5  +e6  +e7
//!   e1  +e1  -e0  +e3  -e2  +e5  -e4  -e7  +e6
//!   e2  +e2  -e3  -e0  +e1  +e6  +e7  -e4  -e5
//!   e3  +e3  +e2  -e1  -e0  +e7  -e6  +e5  -e4
//!   e4  +e4  -e5  -e6  -e7  -e0  +e1  +e2  +e3
//!   e5  +e5  +e4  -e7  +e6  -e1  -e0  -e3  +e2
//!   e6  +e6  +e7  +e4  -e5  -e2  +e3  -e0  -e1
//!   e7  +e7  -e6  +e5  +e4  -e3  -e2  +e1  -e0
//! ```
//!
//! Coefficients are complex; the octonion conjugation `x̄` negates the
//! imaginary units and does not touch the complex coefficients.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64 as C64;

/// `(sign, index)` of `e_i e_j`.
pub const OCTONION_TABLE: [[(i8, u8); 8]; 8] = [
    [(1, 0), (1, 1), (1, 2), (1, 3), (1, 4), (1, 5), (1, 6), (1, 7)],
    [(1, 1), (-1, 0), (1, 3), (-1, 2), (1, 5), (-1, 4), (-1, 7), (1, 6)],
    [(1, 2), (-1, 3), (-1, 0), (1, 1), (1, 6), (1, 7), (-1, 4), (-1, 5)],
    [(1, 3), (1, 2), (-1, 1), (-1, 0), (1, 7), (-1, 6), (1, 5), (-1, 4)],
    [(1, 4), (-1, 5), (-1, 6), (-1, 7), (-1, 0), (1, 1), (1, 2), (1, 3)],
    [(1, 5), (1, 4), (-1, 7), (1, 6), (-1, 1), (-1, 0), (-1, 3), (1, 2)],
    [(1, 6), (1, 7), (1, 4), (-1, 5), (-1, 2), (1, 3), (-1, 0), (-1, 1)],
    [(1, 7), (-1, 6), (1, 5), (1, 4), (-1, 3), (-1, 2), (1, 1), (-1, 0)],
];

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Octonion(pub [C64; 8]);

impl Octonion {
    pub const ZERO: Octonion = Octonion([C64::new(0.0, 0.0); 8]);

    pub fn one() -> Self {
        Self::unit(0)
    }

    pub fn unit(i: usize) -> Self {
        let mut o = Self::ZERO;
        o.0[i] = C64::new(1.0, 0.0);
        o
    }

    pub fn scalar(c: C64) -> Self {
        let mut o = Self::ZERO;
        o.0[0] = c;
        o
    }

    /// Octonion conjugate (complex coefficients untouched).
    pub fn bar(&self) -> Self {
        let mut o = *self;
        for c in &mut o.0[1..] {
            *c = -*c;
        }
        o
    }

    /// Complex conjugate of the coefficients.
    pub fn conj_coeffs(&self) -> Self {
        Octonion(self.0.map(|c| c.conj()))
    }

    /// Quadratic form `n(x) = x x̄ = Σ x_j²` (complex-bilinear).
    pub fn quad_norm(&self) -> C64 {
        self.0.iter().map(|c| c * c).sum()
    }

    /// `t(x) = x + x̄ = 2 x_0`.
    pub fn trace(&self) -> C64 {
        self.0[0] * 2.0
    }

    pub fn scale(&self, s: C64) -> Self {
        Octonion(self.0.map(|c| c * s))
    }
}

impl Mul for Octonion {
    type Output = Octonion;
    fn mul(self, rhs: Octonion) -> Octonion {
        let mut out = Octonion::ZERO;
        for (i, &a) in self.0.iter().enumerate() {
            if a == C64::new(0.0, 0.0) {
                continue;
            }
            for (j, &b) in rhs.0.iter().enumerate() {
                let (s, k) = OCTONION_TABLE[i][j];
                out.0[k as usize] += a * b * f64::from(s);
            }
        }
        out
    }
}

impl Add for Octonion {
    type Output = Octonion;
    fn add(self, rhs: Octonion) -> Octonion {
        let mut o = self;
        for (a, b) in o.0.iter_mut().zip(rhs.0) {
            *a += b;
        }
        o
    }
}

impl Sub for Octonion {
    type Output = Octonion;
    fn sub(self, rhs: Octonion) -> Octonion {
        self + (-rhs)
    }
}

impl Neg for Octonion {
    type Output = Octonion;
    fn neg(self) -> Octonion {
        Octonion(self.0.map(|c| -c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type Quat = [f64; 4];

    fn qmul(a: Quat, b: Quat) -> Quat {
        [
            a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3],
            a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2],
            a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1],
            a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0],
        ]
    }

    fn qconj(a: Quat) -> Quat {
        [a[0], -a[1], -a[2], -a[3]]
    }

    fn qadd(a: Quat, b: Quat, sign: f64) -> Quat {
        [a[0] + sign * b[0], a[1] + sign * b[1], a[2] + sign * b[2], a[3] + sign * b[3]]
    }

    // independent oracle: Cayley–Dickson doubling on pairs of quaternions
    fn cd_mul(x: [f64; 8], y: [f64; 8]) -> [f64; 8] {
        let (a, b) = ([x[0], x[1], x[2], x[3]], [x[4], x[5], x[6], x[7]]);
        let (c, d) = ([y[0], y[1], y[2], y[3]], [y[4], y[5], y[6], y[7]]);
        let first = qadd(qmul(a, c), qmul(qconj(d), b), -1.0);
        let second = qadd(qmul(d, a), qmul(b, qconj(c)), 1.0);
        [first[0], first[1], first[2], first[3], second[0], second[1], second[2], second[3]]
    }

    #[test]
    fn table_matches_doubling() {
        for i in 0..8 {
            for j in 0..8 {
                let mut x = [0.0; 8];
                let mut y = [0.0; 8];
                x[i] = 1.0;
                y[j] = 1.0;
                let z = cd_mul(x, y);
                let (s, k) = OCTONION_TABLE[i][j];
                for (m, &zm) in z.iter().enumerate() {
                    let expected = if m == k as usize { f64::from(s) } else { 0.0 };
                    assert_eq!(zm, expected, "e{i} e{j} coordinate {m}");
                }
            }
        }
    }

    #[test]
    fn composition_and_alternativity() {
        let x = Octonion(std::array::from_fn(|i| C64::new(0.3 * i as f64 - 1.0, 0.1 * i as f64)));
        let y = Octonion(std::array::from_fn(|i| C64::new((i as f64).sin(), (i as f64).cos())));
        // n(xy) = n(x) n(y)
        assert!(((x * y).quad_norm() - x.quad_norm() * y.quad_norm()).norm() < 1e-12);
        // (xx)y = x(xy)
        let lhs = (x * x) * y;
        let rhs = x * (x * y);
        assert!(lhs.0.iter().zip(rhs.0.iter()).all(|(a, b)| (a - b).norm() < 1e-12));
        // x x̄ = n(x)
        let p = x * x.bar();
        assert!((p.0[0] - x.quad_norm()).norm() < 1e-12);
        assert!(p.0[1..].iter().all(|c| c.norm() < 1e-12));
        // not associative
        let e = |i| Octonion::unit(i);
        assert_ne!((e(1) * e(2)) * e(4), e(1) * (e(2) * e(4)));
    }
}
