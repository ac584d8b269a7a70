use num_complex::Complex64 as C64;

use crate::linalg::CMatrix;

fn pauli() -> [CMatrix; 4] {
    let z = C64::new(0.0, 0.0);
    let o = C64::new(1.0, 0.0);
    let i = C64::new(0.0, 1.0);
    [
        CMatrix::identity(2),
        CMatrix::from_vec(2, 2, vec![z, o, o, z]).unwrap(),
        CMatrix::from_vec(2, 2, vec![z, -i, i, z]).unwrap(),
        CMatrix::from_vec(2, 2, vec![o, z, z, -o]).unwrap(),
    ]
}

fn kron_all(factors: &[&CMatrix]) -> CMatrix {
    factors.iter().fold(CMatrix::identity(1), |acc, f| acc.kron(f))
}

/// `k` pairwise anticommuting Hermitian unitaries (Jordan–Wigner).
///
/// Uses `max(1, ⌊k/2⌋)` qubits: generators `Z⊗…⊗Z⊗X⊗I…` and `Z⊗…⊗Z⊗Y⊗I…`,
/// plus `Z⊗…⊗Z` when `k` is odd.
pub fn clifford_generators(k: usize) -> Vec<CMatrix> {
    let [id, x, y, z] = pauli();
    let qubits = (k / 2).max(1);
    let mut out = Vec::with_capacity(k);
    for j in 0..qubits {
        for p in [&x, &y] {
            if out.len() == k {
                break;
            }
            let factors: Vec<&CMatrix> =
                (0..qubits).map(|q| if q < j { &z } else if q == j { p } else { &id }).collect();
            out.push(kron_all(&factors));
        }
    }
    if out.len() < k {
        let factors: Vec<&CMatrix> = (0..qubits).map(|_| &z).collect();
        out.push(kron_all(&factors));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn anticommutation_relations() {
        for k in 2..=6 {
            let g = clifford_generators(k);
            assert_eq!(g.len(), k);
            let n = g[0].rows();
            for a in 0..k {
                assert!(g[a].hermitian_defect() < 1e-15);
                for b in 0..k {
                    let ac = &g[a].matmul(&g[b]) + &g[b].matmul(&g[a]);
                    let expected = if a == b { CMatrix::identity(n).scale(C64::new(2.0, 0.0)) } else { CMatrix::zeros(n, n) };
                    assert!((&ac - &expected).frobenius_norm() < 1e-15, "k={k} a={a} b={b}");
                }
            }
        }
    }
}
