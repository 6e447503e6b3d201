//! Small dense-matrix helpers shared across the crate.

use nalgebra::DMatrix;
use num_complex::Complex64;

pub(crate) fn operator_norm(m: &DMatrix<Complex64>) -> f64 {
    m.clone()
        .svd(false, false)
        .singular_values
        .iter()
        .fold(0.0f64, |a, &s| a.max(s))
}

pub(crate) fn frobenius_norm(m: &DMatrix<Complex64>) -> f64 {
    m.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
}

pub(crate) fn max_column_norm(m: &DMatrix<Complex64>) -> f64 {
    (0..m.ncols())
        .map(|j| m.column(j).iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt())
        .fold(0.0f64, f64::max)
}

pub(crate) fn hermitian_deviation(m: &DMatrix<Complex64>) -> f64 {
    frobenius_norm(&(m - m.adjoint()))
}

/// QR sweeps on highly structured matrices can stall at machine precision;
/// each retry loosens the tolerance while staying orders of magnitude below
/// every comparison gate in the crate.
const EIGEN_TOLERANCES: [f64; 4] = [f64::EPSILON, 1e-14, 1e-12, 1e-10];

/// Eigenvalues of a general complex matrix, sorted by real then imaginary
/// part. `None` if the Schur iteration fails to converge.
pub(crate) fn eigenvalues(m: &DMatrix<Complex64>) -> Option<Vec<Complex64>> {
    if m.nrows() == 0 {
        return Some(Vec::new());
    }
    let eigs = EIGEN_TOLERANCES
        .iter()
        .find_map(|&eps| m.clone().try_schur(eps, 4_000).and_then(|s| s.eigenvalues()))?;
    let mut out: Vec<Complex64> = eigs.iter().copied().collect();
    sort_complex(&mut out);
    Some(out)
}

/// Eigen-decomposition of a Hermitian matrix after symmetrization, returning
/// `(eigenvalues ascending, eigenvectors as columns)`.
pub(crate) fn hermitian_eigen(m: &DMatrix<Complex64>) -> Option<(Vec<f64>, DMatrix<Complex64>)> {
    let n = m.nrows();
    let h = (m + m.adjoint()).scale(0.5);
    let se = EIGEN_TOLERANCES
        .iter()
        .find_map(|&eps| h.clone().try_symmetric_eigen(eps, 4_000))?;
    let mut order: Vec<usize> = (0..se.eigenvalues.len()).collect();
    order.sort_by(|&i, &j| se.eigenvalues[i].total_cmp(&se.eigenvalues[j]));
    let vals: Vec<f64> = order.iter().map(|&i| se.eigenvalues[i]).collect();
    let vecs = DMatrix::from_fn(n, n, |r, c| se.eigenvectors[(r, order[c])]);
    Some((vals, vecs))
}

/// `V · diag(f(λ)) · V^H` for a Hermitian matrix.
pub(crate) fn hermitian_function(
    m: &DMatrix<Complex64>,
    f: impl Fn(f64) -> f64,
) -> Option<DMatrix<Complex64>> {
    let (vals, vecs) = hermitian_eigen(m)?;
    let d = DMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
        vals.len(),
        vals.iter().map(|&l| Complex64::new(f(l), 0.0)),
    ));
    Some(&vecs * d * vecs.adjoint())
}

/// Numerical rank: the number of singular values above
/// `max(dims) · ε · max σ`, with a floor that treats exact-zero matrices as
/// rank zero.
pub(crate) fn numerical_rank(m: &DMatrix<Complex64>) -> usize {
    let sv = m.clone().svd(false, false).singular_values;
    let smax = sv.iter().fold(0.0f64, |a, &s| a.max(s));
    if smax == 0.0 {
        return 0;
    }
    let tol = smax * (m.nrows().max(m.ncols()) as f64) * f64::EPSILON * 16.0;
    sv.iter().filter(|&&s| s > tol).count()
}

pub(crate) fn sort_complex(v: &mut [Complex64]) {
    v.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
}

/// Directed-then-symmetrized Hausdorff distance between two finite sets.
pub(crate) fn hausdorff_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    let one_way = |p: &[Complex64], q: &[Complex64]| {
        p.iter()
            .map(|x| {
                q.iter()
                    .map(|y| (x - y).norm())
                    .fold(f64::INFINITY, f64::min)
            })
            .fold(0.0f64, f64::max)
    };
    if a.is_empty() && b.is_empty() {
        return 0.0;
    }
    if a.is_empty() || b.is_empty() {
        return f64::INFINITY;
    }
    one_way(a, b).max(one_way(b, a))
}

/// Collapses a sorted-by-(re, im) list into representatives no closer than
/// `tol` to each other.
pub(crate) fn dedup_complex(values: &[Complex64], tol: f64) -> Vec<Complex64> {
    let mut out: Vec<Complex64> = Vec::new();
    for &v in values {
        if out.iter().all(|&u| (u - v).norm() > tol) {
            out.push(v);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eigenvalues_of_a_rotation_block() {
        let m = DMatrix::from_row_slice(
            2,
            2,
            &[
                Complex64::new(0.0, 0.0),
                Complex64::new(-1.0, 0.0),
                Complex64::new(1.0, 0.0),
                Complex64::new(0.0, 0.0),
            ],
        );
        let eigs = eigenvalues(&m).unwrap();
        assert!((eigs[0] - Complex64::new(0.0, -1.0)).norm() < 1e-12);
        assert!((eigs[1] - Complex64::new(0.0, 1.0)).norm() < 1e-12);
    }

    #[test]
    fn hermitian_function_recovers_square_root() {
        let m = DMatrix::from_row_slice(
            2,
            2,
            &[
                Complex64::new(2.0, 0.0),
                Complex64::new(0.0, -1.0),
                Complex64::new(0.0, 1.0),
                Complex64::new(2.0, 0.0),
            ],
        );
        let r = hermitian_function(&m, f64::sqrt).unwrap();
        assert!(frobenius_norm(&(&r * &r - &m)) < 1e-12);
    }

    #[test]
    fn hausdorff_and_dedup() {
        let a = vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)];
        let b = vec![
            Complex64::new(0.0, 0.0),
            Complex64::new(1.0, 1e-12),
            Complex64::new(1.0, 0.0),
        ];
        assert!(hausdorff_distance(&a, &b) < 1e-11);
        assert_eq!(dedup_complex(&b, 1e-9).len(), 2);
    }

    #[test]
    fn rank_of_an_outer_product_is_one() {
        let v = nalgebra::DVector::from_vec(vec![
            Complex64::new(1.0, 0.5),
            Complex64::new(-2.0, 0.0),
            Complex64::new(0.0, 3.0),
        ]);
        let m = &v * v.adjoint();
        assert_eq!(numerical_rank(&m), 1);
    }
}
