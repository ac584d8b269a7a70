use crate::algebra::{Element, JordanStar};

/// `e^a = Σ aⁿ/n!` with scaling and squaring.
///
/// The series is summed until a term falls below `1e-16` of the partial sum.
/// Powers of a single element associate, so `e^a = (e^{a/2^s})^{2^s}`.
pub fn exp_element<A: JordanStar + ?Sized>(alg: &A, a: &Element) -> Element {
    let n = a.coord_norm();
    let squarings = if n > 0.5 { (n / 0.5).log2().ceil() as u32 } else { 0 };
    let b = a.scale_re(0.5f64.powi(squarings as i32));
    let mut sum = alg.one();
    let mut term = alg.one();
    for k in 1..200 {
        term = alg.jordan(&term, &b).scale_re(1.0 / k as f64);
        sum += &term;
        if term.coord_norm() < 1e-16 * sum.coord_norm() {
            break;
        }
    }
    for _ in 0..squarings {
        sum = alg.square(&sum);
    }
    sum
}
