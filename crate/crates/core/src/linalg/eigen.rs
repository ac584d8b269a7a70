use num_complex::Complex64 as C64;

use super::matrix::CMatrix;
use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 80;
/// Irrational mixing weight for `H1 + γ H2`; makes accidental coincidences unlikely.
const MIX: f64 = 0.618_033_988_749_894_9;

/// Eigenvalues with a unitary matrix of eigenvectors (as columns).
#[derive(Clone, Debug)]
pub struct Eigen {
    pub values: Vec<C64>,
    pub vectors: CMatrix,
    pub residual: f64,
}

/// Hermitian eigenvalues (ascending) and orthonormal eigenvectors.
#[derive(Clone, Debug)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    pub vectors: CMatrix,
    pub residual: f64,
}

/// Cyclic complex Jacobi eigensolver.
pub fn eig_hermitian(a: &CMatrix) -> Result<HermitianEigen> {
    if !a.is_square() {
        return Err(Error::InvalidParameter("eig_hermitian needs a square matrix".into()));
    }
    let n = a.rows();
    let scale = a.frobenius_norm();
    let defect = a.hermitian_defect();
    if defect > 1e-10 * scale.max(1.0) {
        return Err(Error::NotHermitian(defect));
    }
    // symmetrize so that round-off in the input does not leak into the sweeps
    let mut m = CMatrix::from_fn(n, n, |i, j| 0.5 * (a[(i, j)] + a[(j, i)].conj()));
    for i in 0..n {
        m[(i, i)] = C64::new(m[(i, i)].re, 0.0);
    }
    let mut v = CMatrix::identity(n);

    let target = 1e-15 * scale.max(f64::MIN_POSITIVE);
    for _ in 0..MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| m[(i, j)].norm_sqr())
            .sum::<f64>()
            .sqrt();
        if off <= target {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut m, &mut v, p, q);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[(i, i)].re.total_cmp(&m[(j, j)].re));
    let values: Vec<f64> = order.iter().map(|&i| m[(i, i)].re).collect();
    let vectors = CMatrix::from_fn(n, n, |i, j| v[(i, order[j])]);

    let av = a.matmul(&vectors);
    let mut res = 0.0;
    for j in 0..n {
        for i in 0..n {
            res += (av[(i, j)] - vectors[(i, j)] * values[j]).norm_sqr();
        }
    }
    let residual = res.sqrt();
    if residual > 1e-10 * scale.max(1.0) || !residual.is_finite() {
        return Err(Error::NoConvergence(residual));
    }
    Ok(HermitianEigen { values, vectors, residual })
}

fn rotate(m: &mut CMatrix, v: &mut CMatrix, p: usize, q: usize) {
    let beta = m[(p, q)];
    let g = beta.norm();
    if g == 0.0 {
        return;
    }
    let alpha = m[(p, p)].re;
    let gamma = m[(q, q)].re;
    let phase = beta / g;
    let tau = (gamma - alpha) / (2.0 * g);
    let t = if tau.abs() > 1e150 {
        0.5 / tau
    } else {
        let sign = if tau >= 0.0 { 1.0 } else { -1.0 };
        sign / (tau.abs() + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    // G = diag(1, e^{-iφ}) · [[c, s], [-s, c]]
    let ph = phase.conj();
    let g_pp = C64::new(c, 0.0);
    let g_pq = C64::new(s, 0.0);
    let g_qp = -ph * s;
    let g_qq = ph * c;
    let n = m.rows();
    // columns: A <- A G
    for k in 0..n {
        let akp = m[(k, p)];
        let akq = m[(k, q)];
        m[(k, p)] = akp * g_pp + akq * g_qp;
        m[(k, q)] = akp * g_pq + akq * g_qq;
    }
    // rows: A <- G* A
    for k in 0..n {
        let apk = m[(p, k)];
        let aqk = m[(q, k)];
        m[(p, k)] = g_pp.conj() * apk + g_qp.conj() * aqk;
        m[(q, k)] = g_pq.conj() * apk + g_qq.conj() * aqk;
    }
    m[(p, q)] = C64::new(0.0, 0.0);
    m[(q, p)] = C64::new(0.0, 0.0);
    m[(p, p)] = C64::new(m[(p, p)].re, 0.0);
    m[(q, q)] = C64::new(m[(q, q)].re, 0.0);
    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * g_pp + vkq * g_qp;
        v[(k, q)] = vkp * g_pq + vkq * g_qq;
    }
}

/// Eigen-decomposition of a normal matrix.
///
/// Diagonalizes `H1 + γ H2` where `A = H1 + i H2`, then resolves clusters by
/// diagonalizing the restrictions of `H1` and `H2`.
pub fn eig_normal(a: &CMatrix) -> Result<Eigen> {
    if !a.is_square() {
        return Err(Error::InvalidParameter("eig_normal needs a square matrix".into()));
    }
    let n = a.rows();
    let scale = a.frobenius_norm();
    let adj = a.adjoint();
    let comm = (&a.matmul(&adj) - &adj.matmul(a)).frobenius_norm();
    if comm > 1e-10 * scale.max(1.0).powi(2) {
        return Err(Error::NotNormal(comm));
    }
    let h1 = CMatrix::from_fn(n, n, |i, j| 0.5 * (a[(i, j)] + adj[(i, j)]));
    let h2 = CMatrix::from_fn(n, n, |i, j| C64::new(0.0, -0.5) * (a[(i, j)] - adj[(i, j)]));
    let mixed = &h1 + &h2.scale(C64::new(MIX, 0.0));
    let e = eig_hermitian(&mixed)?;
    let mut vectors = e.vectors;

    let group_tol = 1e-6 * scale.max(1.0);
    for group in clusters(&e.values, group_tol) {
        if group.len() > 1 {
            refine_group(&mut vectors, &group, &h1, &h2, 1e-8 * scale.max(1.0))?;
        }
    }

    let av = a.matmul(&vectors);
    let values: Vec<C64> = (0..n)
        .map(|j| (0..n).map(|i| vectors[(i, j)].conj() * av[(i, j)]).sum())
        .collect();
    let mut res = 0.0;
    for j in 0..n {
        for i in 0..n {
            res += (av[(i, j)] - vectors[(i, j)] * values[j]).norm_sqr();
        }
    }
    let residual = res.sqrt();
    if residual > 1e-9 * scale.max(1.0) || !residual.is_finite() {
        return Err(Error::NoConvergence(residual));
    }
    Ok(Eigen { values, vectors, residual })
}

/// Groups consecutive sorted values whose gaps are at most `tol`.
pub(crate) fn clusters(values: &[f64], tol: f64) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = Vec::new();
    for (i, &x) in values.iter().enumerate() {
        match out.last_mut() {
            Some(g) if x - values[*g.last().unwrap()] <= tol => g.push(i),
            _ => out.push(vec![i]),
        }
    }
    out
}

fn refine_group(vectors: &mut CMatrix, group: &[usize], h1: &CMatrix, h2: &CMatrix, tol: f64) -> Result<()> {
    let n = vectors.rows();
    let basis: Vec<Vec<C64>> = group.iter().map(|&j| vectors.column(j)).collect();
    let q = CMatrix::from_columns(n, &basis);
    let qa = q.adjoint();
    let r1 = qa.matmul(&h1.matmul(&q));
    let e1 = eig_hermitian(&r1)?;
    let mut w = e1.vectors;
    // inside clusters of H1, separate by H2
    let r2 = w.adjoint().matmul(&qa.matmul(&h2.matmul(&q)).matmul(&w));
    for sub in clusters(&e1.values, tol) {
        if sub.len() > 1 {
            let k = sub.len();
            let block = CMatrix::from_fn(k, k, |i, j| r2[(sub[i], sub[j])]);
            let e2 = eig_hermitian(&block)?;
            let cols: Vec<Vec<C64>> = sub.iter().map(|&j| w.column(j)).collect();
            let wsub = CMatrix::from_columns(group.len(), &cols).matmul(&e2.vectors);
            for (t, &j) in sub.iter().enumerate() {
                w.set_column(j, &wsub.column(t));
            }
        }
    }
    let refined = q.matmul(&w);
    for (t, &j) in group.iter().enumerate() {
        vectors.set_column(j, &refined.column(t));
    }
    Ok(())
}

/// Spectral (largest singular value) norm.
pub fn operator_norm(a: &CMatrix) -> f64 {
    if a.rows() == 0 || a.cols() == 0 {
        return 0.0;
    }
    let adj = a.adjoint();
    let g = if a.rows() <= a.cols() { a.matmul(&adj) } else { adj.matmul(a) };
    match eig_hermitian(&g) {
        Ok(e) => e.values.last().copied().unwrap_or(0.0).max(0.0).sqrt(),
        Err(_) => f64::NAN,
    }
}

/// Singular values in descending order, computed from the Hermitian dilation
/// `[[0, A], [A*, 0]]` so that small values keep full absolute accuracy.
pub fn singular_values(a: &CMatrix) -> Result<Vec<f64>> {
    let (r, c) = (a.rows(), a.cols());
    let n = r + c;
    let mut d = CMatrix::zeros(n, n);
    for i in 0..r {
        for j in 0..c {
            d[(i, r + j)] = a[(i, j)];
            d[(r + j, i)] = a[(i, j)].conj();
        }
    }
    let e = eig_hermitian(&d)?;
    let k = r.min(c);
    Ok(e.values.iter().rev().take(k).map(|&x| x.max(0.0)).collect())
}

/// Applies `f` to the spectrum of a normal matrix: `V f(Λ) V*`.
pub fn normal_matrix_function(a: &CMatrix, f: impl Fn(C64) -> C64) -> Result<CMatrix> {
    let e = eig_normal(a)?;
    let fv: Vec<C64> = e.values.iter().map(|&z| f(z)).collect();
    let n = a.rows();
    let vd = CMatrix::from_fn(n, n, |i, j| e.vectors[(i, j)] * fv[j]);
    Ok(vd.matmul(&e.vectors.adjoint()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn diagonal_matrix() {
        let a = CMatrix::from_real_rows(&[&[3.0, 0.0, 0.0], &[0.0, 1.0, 0.0], &[0.0, 0.0, 2.0]]).unwrap();
        let e = eig_hermitian(&a).unwrap();
        assert_eq!(e.values, vec![1.0, 2.0, 3.0]);
    }

    #[test]
    fn swap_matrix() {
        let a = CMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]).unwrap();
        let e = eig_hermitian(&a).unwrap();
        assert!((e.values[0] + 1.0).abs() < 1e-14);
        assert!((e.values[1] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn complex_hermitian() {
        // [[2, i], [-i, 2]] has eigenvalues 1 and 3
        let a = CMatrix::from_vec(
            2,
            2,
            vec![C64::new(2.0, 0.0), C64::new(0.0, 1.0), C64::new(0.0, -1.0), C64::new(2.0, 0.0)],
        )
        .unwrap();
        let e = eig_hermitian(&a).unwrap();
        assert!((e.values[0] - 1.0).abs() < 1e-14);
        assert!((e.values[1] - 3.0).abs() < 1e-14);
        let vv = e.vectors.adjoint().matmul(&e.vectors);
        assert!((&vv - &CMatrix::identity(2)).frobenius_norm() < 1e-14);
    }

    #[test]
    fn rejects_non_hermitian() {
        let a = CMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]).unwrap();
        assert!(matches!(eig_hermitian(&a), Err(Error::NotHermitian(_))));
    }

    #[test]
    fn rotation_is_normal() {
        let th = PI / 3.0;
        let a = CMatrix::from_real_rows(&[&[th.cos(), -th.sin()], &[th.sin(), th.cos()]]).unwrap();
        let e = eig_normal(&a).unwrap();
        let mut args: Vec<f64> = e.values.iter().map(|z| z.arg()).collect();
        args.sort_by(f64::total_cmp);
        assert!((args[0] + th).abs() < 1e-12);
        assert!((args[1] - th).abs() < 1e-12);
        assert!(e.values.iter().all(|z| (z.norm() - 1.0).abs() < 1e-12));
    }

    #[test]
    fn degenerate_normal_matrix() {
        // diag(i, i, 1) conjugated by a permutation
        let a = CMatrix::from_diag(&[C64::new(0.0, 1.0), C64::new(1.0, 0.0), C64::new(0.0, 1.0)]);
        let e = eig_normal(&a).unwrap();
        assert!(e.residual < 1e-12);
        let ones = e.values.iter().filter(|z| (*z - C64::new(0.0, 1.0)).norm() < 1e-12).count();
        assert_eq!(ones, 2);
    }

    #[test]
    fn rejects_non_normal() {
        let a = CMatrix::from_real_rows(&[&[0.0, 3.0], &[0.0, 0.0]]).unwrap();
        assert!(matches!(eig_normal(&a), Err(Error::NotNormal(_))));
    }

    #[test]
    fn nilpotent_norm() {
        let a = CMatrix::from_real_rows(&[&[0.0, 3.0], &[0.0, 0.0]]).unwrap();
        assert!((operator_norm(&a) - 3.0).abs() < 1e-12);
    }

    #[test]
    fn singular_values_of_rank_one() {
        let a = CMatrix::from_real_rows(&[&[1.0, 1.0], &[1.0, 1.0]]).unwrap();
        let s = singular_values(&a).unwrap();
        assert!((s[0] - 2.0).abs() < 1e-13);
        assert!(s[1].abs() < 1e-13);
    }

    #[test]
    fn matrix_function_log_of_rotation() {
        let th: f64 = 0.7;
        let a = CMatrix::from_real_rows(&[&[th.cos(), -th.sin()], &[th.sin(), th.cos()]]).unwrap();
        let l = normal_matrix_function(&a, |z| z.ln()).unwrap();
        // log of a rotation is th * [[0,-1],[1,0]]
        assert!((l[(0, 1)].re + th).abs() < 1e-12);
        assert!((l[(1, 0)].re - th).abs() < 1e-12);
        assert!(l[(0, 0)].norm() < 1e-12);
    }
}
