use num_complex::Complex64 as C64;

use super::matrix::CMatrix;
use crate::error::{Error, Result};

/// Solves `A x = b` by LU with partial pivoting.
pub fn solve(a: &CMatrix, b: &[C64]) -> Result<Vec<C64>> {
    let n = a.rows();
    if !a.is_square() || b.len() != n {
        return Err(Error::InvalidParameter("solve: shape mismatch".into()));
    }
    let mut m = a.clone();
    let mut x = b.to_vec();
    let tiny = 1e-14 * a.max_abs().max(f64::MIN_POSITIVE);
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&i, &j| m[(i, col)].norm().total_cmp(&m[(j, col)].norm()))
            .unwrap();
        if m[(piv, col)].norm() <= tiny {
            return Err(Error::Singular);
        }
        if piv != col {
            for k in 0..n {
                let t = m[(col, k)];
                m[(col, k)] = m[(piv, k)];
                m[(piv, k)] = t;
            }
            x.swap(col, piv);
        }
        let d = m[(col, col)];
        for r in col + 1..n {
            let f = m[(r, col)] / d;
            if f == C64::new(0.0, 0.0) {
                continue;
            }
            for k in col..n {
                let v = m[(col, k)];
                m[(r, k)] -= f * v;
            }
            let xc = x[col];
            x[r] -= f * xc;
        }
    }
    for col in (0..n).rev() {
        let mut s = x[col];
        for k in col + 1..n {
            s -= m[(col, k)] * x[k];
        }
        x[col] = s / m[(col, col)];
    }
    Ok(x)
}

/// Inverse matrix via column-wise solves.
pub fn inverse(a: &CMatrix) -> Result<CMatrix> {
    let n = a.rows();
    let mut cols = Vec::with_capacity(n);
    for j in 0..n {
        let mut e = vec![C64::new(0.0, 0.0); n];
        e[j] = C64::new(1.0, 0.0);
        cols.push(solve(a, &e)?);
    }
    Ok(CMatrix::from_columns(n, &cols))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solves_small_system() {
        let a = CMatrix::from_real_rows(&[&[0.0, 2.0], &[1.0, 1.0]]).unwrap();
        let x = solve(&a, &[C64::new(4.0, 0.0), C64::new(3.0, 0.0)]).unwrap();
        assert!((x[0] - C64::new(1.0, 0.0)).norm() < 1e-14);
        assert!((x[1] - C64::new(2.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn detects_singular() {
        let a = CMatrix::from_real_rows(&[&[1.0, 2.0], &[2.0, 4.0]]).unwrap();
        assert_eq!(solve(&a, &[C64::new(1.0, 0.0); 2]), Err(Error::Singular));
    }

    #[test]
    fn inverse_roundtrip() {
        let a = CMatrix::from_vec(
            2,
            2,
            vec![C64::new(1.0, 1.0), C64::new(0.5, 0.0), C64::new(0.0, -2.0), C64::new(3.0, 0.0)],
        )
        .unwrap();
        let inv = inverse(&a).unwrap();
        assert!((&a.matmul(&inv) - &CMatrix::identity(2)).frobenius_norm() < 1e-13);
    }
}
